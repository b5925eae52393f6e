#include "lab/table.hpp"
#include "lab/errors.hpp"
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace lab::io {

Table::Table(std::vector<std::string> columns) : cols_(std::move(columns)) {}

void Table::add_row(const std::vector<double>& row) {
  require(row.size() == cols_.size(), ErrKind::pipeline, "table row width mismatch");
  data_.push_back(row);
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < cols_.size(); ++c) {
    if (c) out += ',';
    out += cols_[c];
  }
  out += '\n';
  for (const auto& row : data_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_g17(row[c]);
    }
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    require(f.good(), ErrKind::io, "cannot open for writing: " + tmp.string());
    f << content;
    f.flush();
    require(f.good(), ErrKind::io, "write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  require(!ec, ErrKind::io, "rename failed: " + p.string());
}

} // namespace lab::io
