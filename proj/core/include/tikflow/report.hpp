#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tikflow/vector.hpp"

namespace tikflow {

/// Outcome of one sampled or closed-form check.
///
/// `measured` is the worst observed value of the checked quantity and
/// `threshold` the largest value that still passes.
struct CheckReport {
  struct Witness {
    Vector x;
    Vector y;
  };

  std::string id;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::size_t samples = 0;
  std::optional<Witness> witness;
  std::string note;
};

/// Makes a report that passes iff measured <= threshold.
CheckReport make_check(std::string id, double measured, double threshold,
                       std::size_t samples = 1, std::string note = {});

/// Ordered list of checks with a one-line-per-check text encoding:
///
///   id=<id> status=<pass|fail> measured=<v> threshold=<v> samples=<n>
///     [witness_x=<a;b;..> witness_y=<..>] [note="..."]
class Report {
 public:
  void add(CheckReport check);
  void append(const Report& other);

  bool all_passed() const;
  std::size_t failures() const;
  const std::vector<CheckReport>& entries() const noexcept { return entries_; }

  void write(std::ostream& os) const;
  std::string str() const;

 private:
  std::vector<CheckReport> entries_;
};

void write_line(std::ostream& os, const CheckReport& check);

}  // namespace tikflow
