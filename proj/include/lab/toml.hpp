#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lab::io {

// Minimal TOML subset reader: comments, [table] headers (flattened into
// dotted key prefixes), and key = value with string / integer / float / bool
// / homogeneous array values. Arrays may span lines. Covers the full config
// surface of the CLI; anything else is a config error.
class Toml {
public:
  struct Value {
    enum class Kind { Str, Int, Float, Bool, Arr } kind;
    std::string s;
    std::int64_t i = 0;
    double f = 0.0;
    bool b = false;
    std::vector<Value> arr;
  };

  static Toml parse(const std::string& text);
  static Toml parse_file(const std::string& path);

  bool has(const std::string& key) const;
  // Typed getters; each throws ErrKind::config on absence or wrong type.
  double num(const std::string& key) const;              // int or float
  double num_or(const std::string& key, double d) const;
  std::int64_t integer(const std::string& key) const;
  std::int64_t integer_or(const std::string& key, std::int64_t d) const;
  std::string str(const std::string& key) const;
  std::string str_or(const std::string& key, const std::string& d) const;
  bool boolean_or(const std::string& key, bool d) const;
  std::vector<double> nums(const std::string& key) const;
  std::vector<double> nums_or(const std::string& key, const std::vector<double>& d) const;
  std::vector<std::string> keys() const;
  // Canonical serialization (sorted keys) used for manifests.
  std::string canonical() const;

  void set_num(const std::string& key, double v);
  void set_str(const std::string& key, const std::string& v);

private:
  const Value* find(const std::string& key) const;
  std::map<std::string, Value> kv_;
};

} // namespace lab::io
