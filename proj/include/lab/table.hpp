#pragma once
#include <string>
#include <vector>

namespace lab::io {

// Column-oriented table serialized as CSV with 17-significant-digit floats,
// so a re-run with the same manifest reproduces byte-identical files.
class Table {
public:
  explicit Table(std::vector<std::string> columns);
  void add_row(const std::vector<double>& row);
  std::size_t rows() const { return data_.size(); }
  std::string to_csv() const;
  const std::vector<std::string>& columns() const { return cols_; }
  const std::vector<std::vector<double>>& raw() const { return data_; }

private:
  std::vector<std::string> cols_;
  std::vector<std::vector<double>> data_;
};

std::string format_g17(double v);

// Atomic write: temp file in the target directory, fsync-free rename.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace lab::io
