#include "fujita/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fujita/errors.hpp"

namespace fujita {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

CsvWriter::CsvWriter(std::string comment, std::vector<std::string> header)
    : comment_(std::move(comment)), header_(std::move(header)) {}

void CsvWriter::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw Error(ErrorCode::ConfigError, "csv row width does not match header");
  rows_.push_back(std::move(cells));
}

void CsvWriter::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  add_row(std::move(cells));
}

namespace {
void write_line(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}
}  // namespace

void CsvWriter::write(std::ostream& out) const {
  out << "# " << comment_ << '\n';
  write_line(out, header_);
  for (const auto& row : rows_) write_line(out, row);
}

std::string CsvWriter::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

void CsvWriter::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot open output file " + path);
  write(out);
}

}  // namespace fujita
