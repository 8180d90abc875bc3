#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bjpa {

/// Locale-independent float formatting: up to 17 significant digits via
/// std::to_chars, '.' decimal separator, round-trip exact.
std::string format_double(double value);

/// Minimal deterministic CSV writer: '\n' line endings, no quoting needed
/// for the numeric/flag columns this tool emits. Booleans are 1/0.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& names);
  CsvWriter& cell(double value);
  CsvWriter& cell(int value);
  CsvWriter& cell(bool value);
  CsvWriter& cell(const std::string& text);
  void end_row();

 private:
  std::ostream& out_;
  bool row_started_ = false;
  void sep();
};

}  // namespace bjpa
