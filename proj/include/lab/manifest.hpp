#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace lab::io {
class Toml;

// Run manifest: resolved config echo, seed, tool version, kernel variant and
// declared outputs. Written atomically before any data file so a partial run
// directory is always detectable. Identical manifests imply byte-identical
// outputs on the same machine.
struct Manifest {
  std::string subcommand;
  std::string config_canonical;
  std::uint64_t seed = 0;
  std::string kernel_variant;
  std::vector<std::string> outputs;
  std::string to_json() const;
};

void write_manifest(const std::string& out_dir, const Manifest& m);

// Machine-readable error object (also printed to stdout by the CLI).
std::string error_json(const std::string& kind, const std::string& message, const std::string& where);

} // namespace lab::io
