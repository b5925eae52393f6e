#include "lab/manifest.hpp"
#include "lab/table.hpp"
#include <json.hpp>

namespace lab::io {

std::string Manifest::to_json() const {
  nlohmann::json j;
  j["tool"] = "lqlab";
  j["version"] = "1.0.0";
  j["subcommand"] = subcommand;
  j["seed"] = seed;
  j["kernel_variant"] = kernel_variant;
  j["config"] = config_canonical;
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

void write_manifest(const std::string& out_dir, const Manifest& m) {
  write_file_atomic(out_dir + "/manifest.json", m.to_json());
}

std::string error_json(const std::string& kind, const std::string& message, const std::string& where) {
  nlohmann::json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  j["error"]["where"] = where;
  return j.dump(2) + "\n";
}

} // namespace lab::io
