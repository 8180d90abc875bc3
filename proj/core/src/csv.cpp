#include "bjpa/csv.hpp"

#include <charconv>
#include <cmath>

namespace bjpa {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void CsvWriter::sep() {
  if (row_started_) out_ << ',';
  row_started_ = true;
}

void CsvWriter::header(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << names[i];
  }
  out_ << '\n';
}

CsvWriter& CsvWriter::cell(double value) {
  sep();
  out_ << format_double(value);
  return *this;
}

CsvWriter& CsvWriter::cell(int value) {
  sep();
  out_ << value;
  return *this;
}

CsvWriter& CsvWriter::cell(bool value) {
  sep();
  out_ << (value ? '1' : '0');
  return *this;
}

CsvWriter& CsvWriter::cell(const std::string& text) {
  sep();
  out_ << text;
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_started_ = false;
}

}  // namespace bjpa
