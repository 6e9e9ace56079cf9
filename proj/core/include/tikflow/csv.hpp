#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tikflow/vector.hpp"

namespace tikflow {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

/// Comma-separated rows with a header, full-precision floats, '\n' endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void header(const std::vector<std::string>& columns);

  CsvWriter& field(double value);
  CsvWriter& field(long long value);
  CsvWriter& field(std::string_view text);
  CsvWriter& fields(const Vector& values);
  void end_row();

 private:
  void separator();

  std::ostream& os_;
  bool row_started_ = false;
};

/// "x0", "x1", ... for a state of dimension n.
std::vector<std::string> coordinate_columns(Index n, std::string_view prefix = "x");

}  // namespace tikflow
