#include "tikflow/vector.hpp"

#include <cmath>
#include <string>

#include "tikflow/error.hpp"

namespace tikflow {

Vector vec(std::initializer_list<double> coords) {
  Vector v(static_cast<Index>(coords.size()));
  Index i = 0;
  for (double c : coords) v[i++] = c;
  return v;
}

bool all_finite(const Vector& x) {
  for (Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) return false;
  }
  return true;
}

void require_finite(const Vector& x, std::string_view what) {
  if (x.size() == 0) {
    throw ParameterError(std::string(what) + ": empty vector");
  }
  if (!all_finite(x)) {
    throw ParameterError(std::string(what) + ": non-finite coordinate");
  }
}

void require_same_dim(const Vector& a, const Vector& b, std::string_view what) {
  if (a.size() != b.size()) {
    throw ParameterError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
}

}  // namespace tikflow
