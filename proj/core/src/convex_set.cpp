#include "tikflow/convex_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tikflow/error.hpp"

namespace tikflow {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_nonzero_normal(const Vector& normal, std::string_view what) {
  require_finite(normal, what);
  if (normal.squaredNorm() == 0.0) {
    throw ParameterError(std::string(what) + ": normal vector is zero");
  }
}

// Unit normal and offset of {<a,x> = b}, so the set is {<n,x> = o}.
std::pair<Vector, double> unit_form(const Vector& a, double b) {
  const double n = a.norm();
  return {a / n, b / n};
}

bool parallel(const Vector& n1, const Vector& n2, double& sign) {
  const double c = n1.dot(n2);
  if (std::abs(std::abs(c) - 1.0) > 1e-12) return false;
  sign = c > 0 ? 1.0 : -1.0;
  return true;
}

// sup_{x in set} <dir, x> for a bounded primitive (box, ball, point).
double support(const ConvexSet& set, const Vector& dir) {
  return std::visit(
      overloaded{
          [&](const ConvexSet::Box& b) {
            double s = 0.0;
            for (Index i = 0; i < dir.size(); ++i) {
              s += std::max(dir[i] * b.lo[i], dir[i] * b.hi[i]);
            }
            return s;
          },
          [&](const ConvexSet::Ball& b) {
            return dir.dot(b.center) + b.radius * dir.norm();
          },
          [&](const ConvexSet::AffineSubspace& a) -> double {
            if (a.directions.cols() != 0) {
              throw CapabilityError("support: affine subspace is unbounded");
            }
            return dir.dot(a.base);
          },
          [&](const auto&) -> double {
            throw CapabilityError("support: set kind '" + set.kind_name() +
                                  "' is not a bounded primitive");
          },
      },
      set.kind());
}

}  // namespace

ConvexSet ConvexSet::whole_space(Index dim) {
  if (dim < 1) throw ParameterError("whole_space: dimension must be >= 1");
  return ConvexSet(WholeSpace{dim});
}

ConvexSet ConvexSet::box(Vector lo, Vector hi) {
  require_finite(lo, "box lower corner");
  require_finite(hi, "box upper corner");
  require_same_dim(lo, hi, "box");
  if ((lo.array() > hi.array()).any()) {
    throw ParameterError("box: lower corner exceeds upper corner");
  }
  return ConvexSet(Box{std::move(lo), std::move(hi)});
}

ConvexSet ConvexSet::ball(Vector center, double radius) {
  require_finite(center, "ball center");
  if (!std::isfinite(radius) || radius < 0.0) {
    throw ParameterError("ball: radius must be finite and nonnegative");
  }
  return ConvexSet(Ball{std::move(center), radius});
}

ConvexSet ConvexSet::halfspace(Vector normal, double offset) {
  require_nonzero_normal(normal, "halfspace");
  if (!std::isfinite(offset)) throw ParameterError("halfspace: offset");
  return ConvexSet(Halfspace{std::move(normal), offset});
}

ConvexSet ConvexSet::hyperplane(Vector normal, double offset) {
  require_nonzero_normal(normal, "hyperplane");
  if (!std::isfinite(offset)) throw ParameterError("hyperplane: offset");
  return ConvexSet(Hyperplane{std::move(normal), offset});
}

ConvexSet ConvexSet::affine_subspace(Vector base, Matrix directions) {
  require_finite(base, "affine subspace base point");
  if (directions.rows() != base.size()) {
    throw ParameterError("affine subspace: direction rows must match dim");
  }
  if (!directions.allFinite()) {
    throw ParameterError("affine subspace: non-finite direction");
  }
  const Index k = directions.cols();
  const Matrix gram = directions.transpose() * directions;
  if (k > 0 && (gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-10) {
    throw ParameterError("affine subspace: directions are not orthonormal");
  }
  return ConvexSet(AffineSubspace{std::move(base), std::move(directions)});
}

ConvexSet ConvexSet::translate_dilate(const ConvexSet& base, Vector shift,
                                      double scale) {
  require_finite(shift, "translate-dilate shift");
  if (shift.size() != base.dim()) {
    throw ParameterError("translate-dilate: shift dimension mismatch");
  }
  if (!std::isfinite(scale) || scale <= 0.0) {
    throw ParameterError("translate-dilate: scale must be positive");
  }
  return ConvexSet(TranslateDilate{std::make_shared<const ConvexSet>(base),
                                   std::move(shift), scale});
}

Index ConvexSet::dim() const {
  return std::visit(
      overloaded{
          [](const WholeSpace& w) { return w.dim; },
          [](const Box& b) { return b.lo.size(); },
          [](const Ball& b) { return b.center.size(); },
          [](const Halfspace& h) { return h.normal.size(); },
          [](const Hyperplane& h) { return h.normal.size(); },
          [](const AffineSubspace& a) { return a.base.size(); },
          [](const TranslateDilate& t) { return t.shift.size(); },
      },
      kind_);
}

std::string ConvexSet::kind_name() const {
  return std::visit(
      overloaded{
          [](const WholeSpace&) { return std::string("whole-space"); },
          [](const Box&) { return std::string("box"); },
          [](const Ball&) { return std::string("ball"); },
          [](const Halfspace&) { return std::string("halfspace"); },
          [](const Hyperplane&) { return std::string("hyperplane"); },
          [](const AffineSubspace&) { return std::string("affine-subspace"); },
          [](const TranslateDilate&) { return std::string("translate-dilate"); },
      },
      kind_);
}

Vector ConvexSet::project(const Vector& x) const {
  if (x.size() != dim()) {
    throw ParameterError("project: point dimension " +
                         std::to_string(x.size()) + " does not match set " +
                         std::to_string(dim()));
  }
  return std::visit(
      overloaded{
          [&](const WholeSpace&) -> Vector { return x; },
          [&](const Box& b) -> Vector {
            return x.cwiseMax(b.lo).cwiseMin(b.hi);
          },
          [&](const Ball& b) -> Vector {
            const Vector d = x - b.center;
            const double n = d.norm();
            if (n <= b.radius) return x;
            return b.center + (b.radius / n) * d;
          },
          [&](const Halfspace& h) -> Vector {
            const double excess = h.normal.dot(x) - h.offset;
            if (excess <= 0.0) return x;
            return x - (excess / h.normal.squaredNorm()) * h.normal;
          },
          [&](const Hyperplane& h) -> Vector {
            const double excess = h.normal.dot(x) - h.offset;
            return x - (excess / h.normal.squaredNorm()) * h.normal;
          },
          [&](const AffineSubspace& a) -> Vector {
            return a.base +
                   a.directions * (a.directions.transpose() * (x - a.base));
          },
          [&](const TranslateDilate& t) -> Vector {
            return t.shift + t.scale * t.base->project((x - t.shift) / t.scale);
          },
      },
      kind_);
}

double ConvexSet::distance(const Vector& x) const {
  return (x - project(x)).norm();
}

bool ConvexSet::contains(const Vector& x, double tol) const {
  return distance(x) <= tol;
}

bool ConvexSet::bounded() const {
  return std::visit(
      overloaded{
          [](const Box&) { return true; },
          [](const Ball&) { return true; },
          [](const AffineSubspace& a) { return a.directions.cols() == 0; },
          [](const TranslateDilate& t) { return t.base->bounded(); },
          [](const auto&) { return false; },
      },
      kind_);
}

std::optional<ConvexSet::Box> ConvexSet::bounding_box() const {
  if (!bounded()) return std::nullopt;
  const ConvexSet n = normalized();
  return std::visit(
      overloaded{
          [](const Box& b) -> std::optional<Box> { return b; },
          [](const Ball& b) -> std::optional<Box> {
            const Vector r = Vector::Constant(b.center.size(), b.radius);
            return Box{b.center - r, b.center + r};
          },
          [](const AffineSubspace& a) -> std::optional<Box> {
            return Box{a.base, a.base};
          },
          [](const auto&) -> std::optional<Box> { return std::nullopt; },
      },
      n.kind_);
}

ConvexSet ConvexSet::normalized() const {
  const auto* td = std::get_if<TranslateDilate>(&kind_);
  if (td == nullptr) return *this;
  const ConvexSet inner = td->base->normalized();
  const Vector& c = td->shift;
  const double s = td->scale;
  return std::visit(
      overloaded{
          [&](const WholeSpace& w) { return ConvexSet(w); },
          [&](const Box& b) {
            return ConvexSet(Box{c + s * b.lo, c + s * b.hi});
          },
          [&](const Ball& b) {
            return ConvexSet(Ball{c + s * b.center, s * b.radius});
          },
          [&](const Halfspace& h) {
            return ConvexSet(Halfspace{h.normal, s * h.offset + h.normal.dot(c)});
          },
          [&](const Hyperplane& h) {
            return ConvexSet(
                Hyperplane{h.normal, s * h.offset + h.normal.dot(c)});
          },
          [&](const AffineSubspace& a) {
            return ConvexSet(AffineSubspace{c + s * a.base, a.directions});
          },
          [&](const TranslateDilate&) -> ConvexSet {
            // normalized() never returns a wrapper
            throw std::logic_error("nested translate-dilate after normalize");
          },
      },
      inner.kind_);
}

bool operator==(const ConvexSet& lhs, const ConvexSet& rhs) {
  const ConvexSet a = lhs.normalized();
  const ConvexSet b = rhs.normalized();
  if (a.kind_.index() != b.kind_.index() || a.dim() != b.dim()) return false;
  return std::visit(
      overloaded{
          [&](const ConvexSet::WholeSpace&) { return true; },
          [&](const ConvexSet::Box& x) {
            const auto& y = std::get<ConvexSet::Box>(b.kind_);
            return x.lo == y.lo && x.hi == y.hi;
          },
          [&](const ConvexSet::Ball& x) {
            const auto& y = std::get<ConvexSet::Ball>(b.kind_);
            return x.center == y.center && x.radius == y.radius;
          },
          [&](const ConvexSet::Halfspace& x) {
            const auto& y = std::get<ConvexSet::Halfspace>(b.kind_);
            return x.normal == y.normal && x.offset == y.offset;
          },
          [&](const ConvexSet::Hyperplane& x) {
            const auto& y = std::get<ConvexSet::Hyperplane>(b.kind_);
            return x.normal == y.normal && x.offset == y.offset;
          },
          [&](const ConvexSet::AffineSubspace& x) {
            const auto& y = std::get<ConvexSet::AffineSubspace>(b.kind_);
            return x.base == y.base && x.directions == y.directions;
          },
          [&](const ConvexSet::TranslateDilate&) { return false; },
      },
      a.kind_);
}

double hausdorff(const ConvexSet& lhs, const ConvexSet& rhs) {
  if (lhs.dim() != rhs.dim()) {
    throw ParameterError("hausdorff: dimension mismatch");
  }
  if (lhs == rhs) return 0.0;
  const ConvexSet a = lhs.normalized();
  const ConvexSet b = rhs.normalized();

  using Box = ConvexSet::Box;
  using Ball = ConvexSet::Ball;
  using Hyperplane = ConvexSet::Hyperplane;
  using Halfspace = ConvexSet::Halfspace;

  if (std::holds_alternative<ConvexSet::WholeSpace>(a.kind()) &&
      std::holds_alternative<ConvexSet::WholeSpace>(b.kind())) {
    return 0.0;
  }
  if (const auto* p = std::get_if<Ball>(&a.kind())) {
    if (const auto* q = std::get_if<Ball>(&b.kind())) {
      return (p->center - q->center).norm() + std::abs(p->radius - q->radius);
    }
  }
  if (const auto* p = std::get_if<Box>(&a.kind())) {
    if (const auto* q = std::get_if<Box>(&b.kind())) {
      // d(., box) is convex and separable in squared form, so each one-sided
      // sup is attained at a vertex and can be maximized per coordinate.
      auto one_sided = [](const Box& from, const Box& to) {
        double acc = 0.0;
        for (Index i = 0; i < from.lo.size(); ++i) {
          auto gap = [&](double v) {
            return std::max({to.lo[i] - v, 0.0, v - to.hi[i]});
          };
          const double g = std::max(gap(from.lo[i]), gap(from.hi[i]));
          acc += g * g;
        }
        return std::sqrt(acc);
      };
      return std::max(one_sided(*p, *q), one_sided(*q, *p));
    }
  }
  auto parallel_offsets = [](const Vector& na, double oa, const Vector& nb,
                             double ob, bool allow_flip,
                             double& out) -> bool {
    auto [ua, va] = unit_form(na, oa);
    auto [ub, vb] = unit_form(nb, ob);
    double sign = 1.0;
    if (!parallel(ua, ub, sign)) return false;
    if (sign < 0 && !allow_flip) return false;
    out = std::abs(va - sign * vb);
    return true;
  };
  if (const auto* p = std::get_if<Hyperplane>(&a.kind())) {
    if (const auto* q = std::get_if<Hyperplane>(&b.kind())) {
      double d = 0.0;
      if (parallel_offsets(p->normal, p->offset, q->normal, q->offset, true, d)) {
        return d;
      }
    }
  }
  if (const auto* p = std::get_if<Halfspace>(&a.kind())) {
    if (const auto* q = std::get_if<Halfspace>(&b.kind())) {
      double d = 0.0;
      if (parallel_offsets(p->normal, p->offset, q->normal, q->offset, false,
                           d)) {
        return d;
      }
    }
  }
  throw CapabilityError("hausdorff: no closed form for pair (" + a.kind_name() +
                        ", " + b.kind_name() + ")");
}

bool includes(const ConvexSet& outer_in, const ConvexSet& inner_in,
              double tol) {
  if (outer_in.dim() != inner_in.dim()) {
    throw ParameterError("includes: dimension mismatch");
  }
  const ConvexSet outer = outer_in.normalized();
  const ConvexSet inner = inner_in.normalized();
  if (std::holds_alternative<ConvexSet::WholeSpace>(outer.kind())) return true;
  if (outer == inner) return true;

  if (inner.bounded()) {
    return std::visit(
        overloaded{
            [&](const ConvexSet::Box& o) {
              const auto bb = inner.bounding_box();
              return (bb->lo.array() >= o.lo.array() - tol).all() &&
                     (bb->hi.array() <= o.hi.array() + tol).all();
            },
            [&](const ConvexSet::Ball& o) {
              if (const auto* b = std::get_if<ConvexSet::Ball>(&inner.kind())) {
                return (b->center - o.center).norm() + b->radius <=
                       o.radius + tol;
              }
              const auto bb = inner.bounding_box();
              double acc = 0.0;
              for (Index i = 0; i < o.center.size(); ++i) {
                const double far = std::max(std::abs(bb->lo[i] - o.center[i]),
                                            std::abs(bb->hi[i] - o.center[i]));
                acc += far * far;
              }
              return std::sqrt(acc) <= o.radius + tol;
            },
            [&](const ConvexSet::Halfspace& o) {
              return support(inner, o.normal) <=
                     o.offset + tol * o.normal.norm();
            },
            [&](const ConvexSet::Hyperplane& o) {
              const double slack = tol * o.normal.norm();
              return support(inner, o.normal) <= o.offset + slack &&
                     -support(inner, -o.normal) >= o.offset - slack;
            },
            [&](const ConvexSet::AffineSubspace& o) {
              // Bounded inner sets here are boxes, balls or points; check the
              // distance of the farthest extreme point.
              const auto bb = inner.bounding_box();
              if (const auto* b = std::get_if<ConvexSet::Ball>(&inner.kind())) {
                const Vector c = b->center;
                const bool center_in = outer.contains(c, tol);
                const bool flat = o.directions.cols() == c.size();
                return center_in && (b->radius <= tol || flat);
              }
              const Index n = bb->lo.size();
              if (n > 20) {
                throw CapabilityError("includes: box vertex scan too large");
              }
              for (long mask = 0; mask < (1L << n); ++mask) {
                Vector v(n);
                for (Index i = 0; i < n; ++i) {
                  v[i] = (mask >> i) & 1 ? bb->hi[i] : bb->lo[i];
                }
                if (!outer.contains(v, tol)) return false;
              }
              return true;
            },
            [&](const auto&) -> bool {
              throw CapabilityError("includes: unsupported outer set '" +
                                    outer.kind_name() + "'");
            },
        },
        outer.kind());
  }
  if (outer.bounded()) return false;

  if (const auto* o = std::get_if<ConvexSet::Halfspace>(&outer.kind())) {
    if (const auto* i = std::get_if<ConvexSet::Halfspace>(&inner.kind())) {
      auto [uo, vo] = unit_form(o->normal, o->offset);
      auto [ui, vi] = unit_form(i->normal, i->offset);
      double sign = 1.0;
      if (parallel(uo, ui, sign) && sign > 0) return vi <= vo + tol;
      return false;
    }
  }
  throw CapabilityError("includes: no closed form for (" + outer.kind_name() +
                        " contains " + inner.kind_name() + ")");
}

}  // namespace tikflow
