#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fujita {

/// Shortest round-trip decimal representation; "inf"/"-inf"/"nan" otherwise.
std::string format_number(double value);

/// Comma-separated, LF-terminated CSV with a leading "# ..." comment line.
class CsvWriter {
public:
  CsvWriter(std::string comment, std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  void add_row(const std::vector<double>& values);

  std::size_t rows() const { return rows_.size(); }
  std::string str() const;
  void write(std::ostream& out) const;
  /// Throws Error(ConfigError) if the file cannot be opened.
  void write_file(const std::string& path) const;

private:
  std::string comment_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace fujita
