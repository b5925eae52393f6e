#pragma once
#include <stdexcept>
#include <string>

namespace lab {

// Error taxonomy shared by the library and the CLI exit-code mapping.
enum class ErrKind {
  config,              // bad input file / parameter set
  domain,              // argument outside the mathematical domain
  degenerate_triangle, // flattened triangle angle below threshold
  mesh,                // mesh construction or validity failure
  fit,                 // per-vertex regression failed on too many vertices
  tail_fit,            // eigenvalue tail fit rejected
  numdiff,             // numerical differentiation unstable
  budget,              // work or memory budget exceeded
  seiberg,             // Seiberg bound violated
  pipeline,            // internal stage failure
  io,                  // filesystem failure
};

const char* to_string(ErrKind k);

// 0 ok, 2 config, 3 pipeline, 4 budget (CLI contract).
int exit_code(ErrKind k);

class Error : public std::runtime_error {
public:
  Error(ErrKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrKind kind() const { return kind_; }

private:
  ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg) { throw Error(k, msg); }

inline void require(bool ok, ErrKind k, const std::string& msg) {
  if (!ok) fail(k, msg);
}

} // namespace lab
