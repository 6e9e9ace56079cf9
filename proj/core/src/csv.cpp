#include "tikflow/csv.hpp"

#include <array>
#include <charconv>
#include <ostream>

namespace tikflow {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), end);
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (const auto& c : columns) field(std::string_view(c));
  end_row();
}

void CsvWriter::separator() {
  if (row_started_) os_ << ',';
  row_started_ = true;
}

CsvWriter& CsvWriter::field(double value) {
  separator();
  os_ << format_double(value);
  return *this;
}

CsvWriter& CsvWriter::field(long long value) {
  separator();
  os_ << value;
  return *this;
}

CsvWriter& CsvWriter::field(std::string_view text) {
  separator();
  os_ << text;
  return *this;
}

CsvWriter& CsvWriter::fields(const Vector& values) {
  for (Index i = 0; i < values.size(); ++i) field(values[i]);
  return *this;
}

void CsvWriter::end_row() {
  os_ << '\n';
  row_started_ = false;
}

std::vector<std::string> coordinate_columns(Index n, std::string_view prefix) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

}  // namespace tikflow
