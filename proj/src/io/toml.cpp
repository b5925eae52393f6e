#include "lab/toml.hpp"
#include "lab/errors.hpp"
#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lab::io {

namespace {

void strip_comment(std::string& line) {
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_str = !in_str;
    if (line[i] == '#' && !in_str) {
      line.erase(i);
      return;
    }
  }
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Parses one scalar token (no arrays).
Toml::Value parse_scalar(const std::string& tok) {
  Toml::Value v;
  if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"') {
    v.kind = Toml::Value::Kind::Str;
    std::string out;
    for (std::size_t i = 1; i + 1 < tok.size(); ++i) {
      char c = tok[i];
      if (c == '\\' && i + 2 < tok.size()) {
        char n = tok[++i];
        out += (n == 'n') ? '\n' : (n == 't') ? '\t' : n;
      } else {
        out += c;
      }
    }
    v.s = out;
    return v;
  }
  if (tok == "true" || tok == "false") {
    v.kind = Toml::Value::Kind::Bool;
    v.b = (tok == "true");
    return v;
  }
  // Number: integer if no '.', 'e', 'E', inf, nan.
  bool is_float = tok.find_first_of(".eE") != std::string::npos || tok == "inf" || tok == "-inf";
  std::string t = tok;
  t.erase(std::remove(t.begin(), t.end(), '_'), t.end());
  if (!is_float) {
    std::int64_t iv = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), iv);
    if (ec == std::errc() && p == t.data() + t.size()) {
      v.kind = Toml::Value::Kind::Int;
      v.i = iv;
      v.f = double(iv);
      return v;
    }
  }
  try {
    std::size_t used = 0;
    double fv = std::stod(t, &used);
    if (used == t.size()) {
      v.kind = Toml::Value::Kind::Float;
      v.f = fv;
      return v;
    }
  } catch (...) {
  }
  fail(ErrKind::config, "toml: cannot parse value '" + tok + "'");
}

// Splits a [...] array body at top-level commas.
Toml::Value parse_value(const std::string& raw) {
  std::string s = trim(raw);
  require(!s.empty(), ErrKind::config, "toml: empty value");
  if (s.front() != '[') return parse_scalar(s);
  require(s.back() == ']', ErrKind::config, "toml: unterminated array");
  Toml::Value v;
  v.kind = Toml::Value::Kind::Arr;
  std::string body = s.substr(1, s.size() - 2);
  int depth = 0;
  bool in_str = false;
  std::string cur;
  auto flush = [&] {
    std::string t = trim(cur);
    if (!t.empty()) v.arr.push_back(parse_value(t));
    cur.clear();
  };
  for (char c : body) {
    if (c == '"') in_str = !in_str;
    if (!in_str) {
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (c == ',' && depth == 0) {
        flush();
        continue;
      }
    }
    cur += c;
  }
  flush();
  return v;
}

} // namespace

Toml Toml::parse(const std::string& text) {
  Toml t;
  std::istringstream in(text);
  std::string line, prefix;
  std::string pending_key, pending_val;
  int pending_depth = 0;
  while (std::getline(in, line)) {
    strip_comment(line);
    std::string s = trim(line);
    if (!pending_key.empty()) {
      pending_val += " " + s;
      for (char c : s) {
        if (c == '[') ++pending_depth;
        if (c == ']') --pending_depth;
      }
      if (pending_depth <= 0) {
        t.kv_[pending_key] = parse_value(pending_val);
        pending_key.clear();
        pending_val.clear();
      }
      continue;
    }
    if (s.empty()) continue;
    if (s.front() == '[') {
      require(s.back() == ']', ErrKind::config, "toml: bad table header: " + s);
      prefix = trim(s.substr(1, s.size() - 2));
      require(!prefix.empty(), ErrKind::config, "toml: empty table name");
      prefix += ".";
      continue;
    }
    std::size_t eq = s.find('=');
    require(eq != std::string::npos, ErrKind::config, "toml: expected key = value: " + s);
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    require(!key.empty(), ErrKind::config, "toml: empty key");
    if (!val.empty() && val.front() == '[') {
      int depth = 0;
      for (char c : val) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
      }
      if (depth > 0) {
        pending_key = prefix + key;
        pending_val = val;
        pending_depth = depth;
        continue;
      }
    }
    t.kv_[prefix + key] = parse_value(val);
  }
  require(pending_key.empty(), ErrKind::config, "toml: unterminated multiline array");
  return t;
}

Toml Toml::parse_file(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), ErrKind::config, "cannot open config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

const Toml::Value* Toml::find(const std::string& key) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? nullptr : &it->second;
}

bool Toml::has(const std::string& key) const { return find(key) != nullptr; }

double Toml::num(const std::string& key) const {
  const Value* v = find(key);
  require(v != nullptr, ErrKind::config, "missing config key: " + key);
  require(v->kind == Value::Kind::Int || v->kind == Value::Kind::Float, ErrKind::config,
          "config key is not a number: " + key);
  return v->kind == Value::Kind::Int ? double(v->i) : v->f;
}

double Toml::num_or(const std::string& key, double d) const { return has(key) ? num(key) : d; }

std::int64_t Toml::integer(const std::string& key) const {
  const Value* v = find(key);
  require(v != nullptr, ErrKind::config, "missing config key: " + key);
  require(v->kind == Value::Kind::Int, ErrKind::config, "config key is not an integer: " + key);
  return v->i;
}

std::int64_t Toml::integer_or(const std::string& key, std::int64_t d) const {
  return has(key) ? integer(key) : d;
}

std::string Toml::str(const std::string& key) const {
  const Value* v = find(key);
  require(v != nullptr, ErrKind::config, "missing config key: " + key);
  require(v->kind == Value::Kind::Str, ErrKind::config, "config key is not a string: " + key);
  return v->s;
}

std::string Toml::str_or(const std::string& key, const std::string& d) const {
  return has(key) ? str(key) : d;
}

bool Toml::boolean_or(const std::string& key, bool d) const {
  const Value* v = find(key);
  if (!v) return d;
  require(v->kind == Value::Kind::Bool, ErrKind::config, "config key is not a bool: " + key);
  return v->b;
}

std::vector<double> Toml::nums(const std::string& key) const {
  const Value* v = find(key);
  require(v != nullptr, ErrKind::config, "missing config key: " + key);
  require(v->kind == Value::Kind::Arr, ErrKind::config, "config key is not an array: " + key);
  std::vector<double> out;
  for (const auto& e : v->arr) {
    require(e.kind == Value::Kind::Int || e.kind == Value::Kind::Float, ErrKind::config,
            "array element is not a number: " + key);
    out.push_back(e.kind == Value::Kind::Int ? double(e.i) : e.f);
  }
  return out;
}

std::vector<double> Toml::nums_or(const std::string& key, const std::vector<double>& d) const {
  return has(key) ? nums(key) : d;
}

std::vector<std::string> Toml::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : kv_) out.push_back(k);
  return out;
}

namespace {
void write_value(std::string& out, const Toml::Value& v) {
  char buf[64];
  switch (v.kind) {
    case Toml::Value::Kind::Str:
      out += '"';
      out += v.s;
      out += '"';
      break;
    case Toml::Value::Kind::Int:
      std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v.i));
      out += buf;
      break;
    case Toml::Value::Kind::Float:
      std::snprintf(buf, sizeof buf, "%.17g", v.f);
      out += buf;
      break;
    case Toml::Value::Kind::Bool:
      out += v.b ? "true" : "false";
      break;
    case Toml::Value::Kind::Arr:
      out += '[';
      for (std::size_t i = 0; i < v.arr.size(); ++i) {
        if (i) out += ", ";
        write_value(out, v.arr[i]);
      }
      out += ']';
      break;
  }
}
} // namespace

std::string Toml::canonical() const {
  std::string out;
  for (const auto& [k, v] : kv_) { // std::map iterates sorted
    out += k;
    out += " = ";
    write_value(out, v);
    out += '\n';
  }
  return out;
}

void Toml::set_num(const std::string& key, double v) {
  Value val;
  val.kind = Value::Kind::Float;
  val.f = v;
  kv_[key] = val;
}

void Toml::set_str(const std::string& key, const std::string& v) {
  Value val;
  val.kind = Value::Kind::Str;
  val.s = v;
  kv_[key] = val;
}

} // namespace lab::io
