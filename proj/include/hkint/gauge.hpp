#pragma once

// Gauges: strictly positive functions on a compact interval, kept as a small
// closed expression algebra so that the pointwise order between two of them
// can usually be decided from their structure instead of by sampling.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hkint/errors.hpp"
#include "hkint/nets.hpp"

namespace hkint {

/// Compact domain [a, b] with a < b, both finite.
class Interval {
 public:
  Interval(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw ParameterError("interval endpoints must be finite");
    if (!(a < b)) throw ParameterError("interval requires a < b");
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double width() const noexcept { return b_ - a_; }
  bool contains(double x) const noexcept { return a_ <= x && x <= b_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_;
  double b_;
};

namespace gauge_nodes {
struct Uniform;
struct DistanceScaled;
struct Min;
struct Scaled;
struct Custom;
struct Node;
using Variant = std::variant<Uniform, DistanceScaled, Min, Scaled, Custom>;
}  // namespace gauge_nodes

class Gauge {
 public:
  using Uniform = gauge_nodes::Uniform;
  using DistanceScaled = gauge_nodes::DistanceScaled;
  using Min = gauge_nodes::Min;
  using Scaled = gauge_nodes::Scaled;
  using Custom = gauge_nodes::Custom;

  static Gauge uniform(double h);
  static Gauge distance_scaled(std::vector<double> points, double kappa, double cap, double at_point,
                               double exponent = 1.0);
  static Gauge min(Gauge lhs, Gauge rhs);
  static Gauge scaled(const Gauge& g, double lambda);
  static Gauge custom(std::function<double(double)> fn, std::string label = "custom");

  const gauge_nodes::Variant& node() const noexcept;
  bool same_object(const Gauge& other) const noexcept { return node_ == other.node_; }

  /// Raw evaluation. Positive for every primitive except when a scale or a
  /// distance product underflows, which callers treat as schedule exhaustion.
  double operator()(double x) const;

  /// Scale factor applied at the root, and the unscaled base.
  std::pair<double, const Gauge*> split_scale() const noexcept;

  std::string describe() const;

 private:
  explicit Gauge(std::shared_ptr<const gauge_nodes::Node> n) : node_(std::move(n)) {}
  template <class T>
  static Gauge make(T n);

  std::shared_ptr<const gauge_nodes::Node> node_;
};

namespace gauge_nodes {

struct Uniform {
  double h;
};

/// delta(x) = min(cap, kappa * dist(x, points)^exponent) off the anchor points,
/// at_point on them. exponent 1 is the classical distance gauge.
struct DistanceScaled {
  std::vector<double> points;  // sorted, unique
  double kappa;
  double cap;
  double at_point;
  double exponent;
};

struct Min {
  Gauge lhs;
  Gauge rhs;
};

/// lambda * inner, lambda in (0, 1]. Nested scalings are folded into one node.
struct Scaled {
  Gauge inner;
  double lambda;
};

/// Caller-supplied positive function. The order on such gauges is only ever
/// established by probing.
struct Custom {
  std::function<double(double)> fn;
  std::string label;
};

struct Node : Variant {
  using Variant::Variant;
};

inline double eval(const Uniform& n, double) noexcept { return n.h; }

inline double eval(const DistanceScaled& n, double x) noexcept {
  if (n.points.empty()) return n.cap;
  const auto it = std::lower_bound(n.points.begin(), n.points.end(), x);
  double d = std::numeric_limits<double>::infinity();
  if (it != n.points.end()) {
    if (*it == x) return n.at_point;
    d = *it - x;
  }
  if (it != n.points.begin()) d = std::min(d, x - *(it - 1));
  const double r = n.exponent == 1.0   ? n.kappa * d
                   : n.exponent == 2.0 ? n.kappa * d * d
                                       : n.kappa * std::pow(d, n.exponent);
  return std::min(n.cap, r);
}

inline double eval(const Min& n, double x) { return std::min(n.lhs(x), n.rhs(x)); }
inline double eval(const Scaled& n, double x) { return n.lambda * n.inner(x); }
inline double eval(const Custom& n, double x) { return n.fn(x); }

}  // namespace gauge_nodes

template <class T>
Gauge Gauge::make(T n) {
  return Gauge(std::make_shared<const gauge_nodes::Node>(std::move(n)));
}

inline Gauge Gauge::uniform(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("uniform gauge needs finite h > 0");
  return make(Uniform{h});
}

inline Gauge Gauge::distance_scaled(std::vector<double> points, double kappa, double cap, double at_point,
                                    double exponent) {
  for (double p : points) {
    if (!std::isfinite(p)) throw ParameterError("anchor points must be finite");
  }
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ParameterError("kappa must be finite and > 0");
  if (!(cap > 0.0) || !std::isfinite(cap)) throw ParameterError("cap must be finite and > 0");
  if (!(at_point > 0.0) || !std::isfinite(at_point)) throw ParameterError("at_point must be finite and > 0");
  if (!(exponent >= 1.0) || !std::isfinite(exponent)) throw ParameterError("exponent must be finite and >= 1");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return make(DistanceScaled{std::move(points), kappa, cap, at_point, exponent});
}

inline Gauge Gauge::min(Gauge lhs, Gauge rhs) { return make(Min{std::move(lhs), std::move(rhs)}); }

inline Gauge Gauge::scaled(const Gauge& g, double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw ParameterError("scale factor must lie in (0, 1]");
  if (const auto* s = std::get_if<Scaled>(&g.node())) return make(Scaled{s->inner, s->lambda * lambda});
  return make(Scaled{g, lambda});
}

inline Gauge Gauge::custom(std::function<double(double)> fn, std::string label) {
  if (!fn) throw ParameterError("custom gauge needs a callable");
  return make(Custom{std::move(fn), std::move(label)});
}

inline const gauge_nodes::Variant& Gauge::node() const noexcept { return *node_; }

inline double Gauge::operator()(double x) const {
  return std::visit([x](const auto& n) { return gauge_nodes::eval(n, x); }, node());
}

inline std::pair<double, const Gauge*> Gauge::split_scale() const noexcept {
  if (const auto* s = std::get_if<Scaled>(&node())) return {s->lambda, &s->inner};
  return {1.0, this};
}

inline std::string Gauge::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&os](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          os << "Uniform(" << n.h << ")";
        } else if constexpr (std::is_same_v<T, DistanceScaled>) {
          os << "DistanceScaled({";
          for (std::size_t i = 0; i < n.points.size(); ++i) os << (i ? "," : "") << n.points[i];
          os << "}, kappa=" << n.kappa << ", cap=" << n.cap << ", at_point=" << n.at_point;
          if (n.exponent != 1.0) os << ", exponent=" << n.exponent;
          os << ")";
        } else if constexpr (std::is_same_v<T, Min>) {
          os << "Min(" << n.lhs.describe() << ", " << n.rhs.describe() << ")";
        } else if constexpr (std::is_same_v<T, Scaled>) {
          os << "Scaled(" << n.inner.describe() << ", " << n.lambda << ")";
        } else {
          os << "Custom(" << n.label << ")";
        }
      },
      node());
  return os.str();
}

/// delta(x) with a domain check.
inline double gauge_eval(const Gauge& g, const Interval& iv, double x) {
  if (!iv.contains(x)) throw DomainError("gauge evaluated outside its interval");
  return g(x);
}

/// Result of comparing two gauges pointwise. `proven` separates a structural
/// argument from evidence gathered on the probe grid.
struct OrderEvidence {
  bool leq{};
  bool proven{};

  /// yes/no when decided from structure, unknown when only probed.
  Ternary ternary() const noexcept { return proven ? (leq ? Ternary::yes : Ternary::no) : Ternary::unknown; }
};

namespace detail {

struct Bounds {
  double lo;
  double hi;
  bool known;
};

inline double max_distance(const std::vector<double>& pts, const Interval& iv) {
  // sup over x in [a,b] of dist(x, pts); attained at an endpoint or between two anchors
  auto dist = [&](double x) {
    double d = std::numeric_limits<double>::infinity();
    for (double p : pts) d = std::min(d, std::abs(x - p));
    return d;
  };
  double m = std::max(dist(iv.a()), dist(iv.b()));
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double mid = 0.5 * (pts[i - 1] + pts[i]);
    if (iv.contains(mid)) m = std::max(m, dist(mid));
  }
  return m;
}

/// Conservative [inf, sup] of a gauge over the interval.
inline Bounds bounds(const Gauge& g, const Interval& iv) {
  return std::visit(
      [&iv](const auto& n) -> Bounds {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Gauge::Uniform>) {
          return {n.h, n.h, true};
        } else if constexpr (std::is_same_v<T, Gauge::DistanceScaled>) {
          if (n.points.empty()) return {n.cap, n.cap, true};
          const double far = std::min(n.cap, n.kappa * std::pow(max_distance(n.points, iv), n.exponent));
          bool anchor_inside = false;
          double near = std::numeric_limits<double>::infinity();
          for (double p : n.points) {
            if (iv.contains(p)) anchor_inside = true;
            near = std::min(near, p < iv.a() ? iv.a() - p : p > iv.b() ? p - iv.b() : 0.0);
          }
          const double off_lo = std::min(n.cap, n.kappa * std::pow(near, n.exponent));
          const double lo = anchor_inside ? std::min(0.0, n.at_point) : off_lo;
          const double hi = anchor_inside ? std::max(far, n.at_point) : far;
          return {lo, hi, true};
        } else if constexpr (std::is_same_v<T, Gauge::Min>) {
          const Bounds l = bounds(n.lhs, iv);
          const Bounds r = bounds(n.rhs, iv);
          if (!l.known || !r.known) return {0, 0, false};
          return {std::min(l.lo, r.lo), std::min(l.hi, r.hi), true};
        } else if constexpr (std::is_same_v<T, Gauge::Scaled>) {
          const Bounds b = bounds(n.inner, iv);
          return {b.lo * n.lambda, b.hi * n.lambda, b.known};
        } else {
          return {0, 0, false};
        }
      },
      g.node());
}

inline bool same_structure(const Gauge& x, const Gauge& y) {
  if (x.same_object(y)) return true;
  if (x.node().index() != y.node().index()) return false;
  return std::visit(
      [&y](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        const auto& m = std::get<T>(y.node());
        if constexpr (std::is_same_v<T, Gauge::Uniform>) {
          return n.h == m.h;
        } else if constexpr (std::is_same_v<T, Gauge::DistanceScaled>) {
          return n.points == m.points && n.kappa == m.kappa && n.cap == m.cap && n.at_point == m.at_point &&
                 n.exponent == m.exponent;
        } else if constexpr (std::is_same_v<T, Gauge::Min>) {
          return same_structure(n.lhs, m.lhs) && same_structure(n.rhs, m.rhs);
        } else if constexpr (std::is_same_v<T, Gauge::Scaled>) {
          return n.lambda == m.lambda && same_structure(n.inner, m.inner);
        } else {
          return false;  // distinct callables are never assumed equal
        }
      },
      x.node());
}

inline bool has_custom(const Gauge& g) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Gauge::Min>) {
          return has_custom(n.lhs) || has_custom(n.rhs);
        } else if constexpr (std::is_same_v<T, Gauge::Scaled>) {
          return has_custom(n.inner);
        } else {
          return std::is_same_v<T, Gauge::Custom>;
        }
      },
      g.node());
}

inline void collect_anchors(const Gauge& g, std::vector<double>& out) {
  std::visit(
      [&out](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Gauge::DistanceScaled>) {
          out.insert(out.end(), n.points.begin(), n.points.end());
        } else if constexpr (std::is_same_v<T, Gauge::Min>) {
          collect_anchors(n.lhs, out);
          collect_anchors(n.rhs, out);
        } else if constexpr (std::is_same_v<T, Gauge::Scaled>) {
          collect_anchors(n.inner, out);
        }
      },
      g.node());
}

/// Structural decision of "lhs <= rhs everywhere on iv"; Ternary::unknown if silent.
inline Ternary structural_leq(const Gauge& lhs, const Gauge& rhs, const Interval& iv) {
  if (same_structure(lhs, rhs)) return Ternary::yes;

  // c1 * base <= c2 * base  iff  c1 <= c2 (base is strictly positive)
  const auto [c1, b1] = lhs.split_scale();
  const auto [c2, b2] = rhs.split_scale();
  if (same_structure(*b1, *b2)) return c1 <= c2 ? Ternary::yes : Ternary::no;

  using DS = Gauge::DistanceScaled;
  if (const auto* l = std::get_if<DS>(&lhs.node())) {
    if (const auto* r = std::get_if<DS>(&rhs.node())) {
      if (l->points == r->points && l->exponent == r->exponent && l->kappa <= r->kappa && l->cap <= r->cap &&
          l->at_point <= r->at_point) {
        return Ternary::yes;
      }
    }
  }

  // Min(a, b) <= r  if either side already is
  if (const auto* m = std::get_if<Gauge::Min>(&lhs.node())) {
    if (structural_leq(m->lhs, rhs, iv) == Ternary::yes || structural_leq(m->rhs, rhs, iv) == Ternary::yes) {
      return Ternary::yes;
    }
  }
  // l <= Min(a, b)  iff  l <= a and l <= b
  if (const auto* m = std::get_if<Gauge::Min>(&rhs.node())) {
    const Ternary x = structural_leq(lhs, m->lhs, iv);
    const Ternary y = structural_leq(lhs, m->rhs, iv);
    if (x == Ternary::yes && y == Ternary::yes) return Ternary::yes;
    if (x == Ternary::no || y == Ternary::no) return Ternary::no;
  }
  // Scaled(h, c) <= r  if h <= r
  if (const auto* s = std::get_if<Gauge::Scaled>(&lhs.node())) {
    if (structural_leq(s->inner, rhs, iv) == Ternary::yes) return Ternary::yes;
  }

  const Bounds bl = bounds(lhs, iv);
  const Bounds br = bounds(rhs, iv);
  if (bl.known && br.known) {
    if (bl.hi <= br.lo) return Ternary::yes;
    if (bl.lo > br.hi) return Ternary::no;
  }
  return Ternary::unknown;
}

}  // namespace detail

/// Deterministic probe grid: `n` evenly spaced points including both endpoints,
/// plus every anchor point of either gauge that lies in the interval.
inline std::vector<double> probe_grid(const Interval& iv, std::size_t n, const std::vector<double>& anchors = {}) {
  std::vector<double> xs;
  xs.reserve(n + anchors.size());
  if (n >= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(n - 1);
      xs.push_back(i + 1 == n ? iv.b() : iv.a() + t * iv.width());
    }
  } else {
    xs.push_back(iv.a());
    xs.push_back(iv.b());
  }
  for (double p : anchors) {
    if (iv.contains(p)) xs.push_back(p);
  }
  return xs;
}

/// Is lhs(x) <= rhs(x) for every x in iv? Structure first, then the probe grid.
inline OrderEvidence gauge_leq(const Gauge& lhs, const Gauge& rhs, const Interval& iv, std::size_t probes = 1024) {
  if (!detail::has_custom(lhs) && !detail::has_custom(rhs)) {
    const Ternary t = detail::structural_leq(lhs, rhs, iv);
    if (t != Ternary::unknown) return {t == Ternary::yes, true};
  } else if (lhs.same_object(rhs)) {
    return {true, true};
  }
  std::vector<double> anchors;
  detail::collect_anchors(lhs, anchors);
  detail::collect_anchors(rhs, anchors);
  for (double x : probe_grid(iv, probes, anchors)) {
    if (!(lhs(x) <= rhs(x))) return {false, false};
  }
  return {true, false};
}

/// Scaled(g, lambda) for lambda in (0, 1): one step down a cofinal chain.
inline Gauge refine_gauge(const Gauge& g, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw ParameterError("refinement ratio must lie in (0, 1)");
  return Gauge::scaled(g, lambda);
}

inline Gauge uniform_gauge(double h) { return Gauge::uniform(h); }

inline Gauge singularity_gauge(std::vector<double> points, double kappa, double cap, double at_point) {
  return Gauge::distance_scaled(std::move(points), kappa, cap, at_point);
}

}  // namespace hkint
