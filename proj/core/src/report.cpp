#include "tikflow/report.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "tikflow/csv.hpp"

namespace tikflow {
namespace {

std::string join(const Vector& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += format_double(v[i]);
  }
  return out;
}

}  // namespace

CheckReport make_check(std::string id, double measured, double threshold,
                       std::size_t samples, std::string note) {
  CheckReport r;
  r.id = std::move(id);
  r.measured = measured;
  r.threshold = threshold;
  r.passed = measured <= threshold;
  r.samples = samples;
  r.note = std::move(note);
  return r;
}

void Report::add(CheckReport check) { entries_.push_back(std::move(check)); }

void Report::append(const Report& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

bool Report::all_passed() const { return failures() == 0; }

std::size_t Report::failures() const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [](const auto& c) { return !c.passed; }));
}

void write_line(std::ostream& os, const CheckReport& c) {
  os << "id=" << c.id << " status=" << (c.passed ? "pass" : "fail")
     << " measured=" << format_double(c.measured)
     << " threshold=" << format_double(c.threshold) << " samples=" << c.samples;
  if (c.witness) {
    os << " witness_x=" << join(c.witness->x) << " witness_y=" << join(c.witness->y);
  }
  if (!c.note.empty()) os << " note=\"" << c.note << '"';
  os << '\n';
}

void Report::write(std::ostream& os) const {
  for (const auto& c : entries_) write_line(os, c);
  os << "summary checks=" << entries_.size() << " failures=" << failures()
     << " status=" << (all_passed() ? "pass" : "fail") << '\n';
}

std::string Report::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace tikflow
