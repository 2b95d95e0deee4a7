#pragma once

// Tagged partitions, delta-fineness, and the direction on the set of
// (partition, gauge) pairs: (P, g) follows (Q, h) when g <= h on the interval.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hkint/compensated.hpp"
#include "hkint/errors.hpp"
#include "hkint/gauge.hpp"

namespace hkint {

/// Cut points x_0 < ... < x_n with one tag c_i in each [x_{i-1}, x_i].
struct TaggedPartition {
  std::vector<double> cuts;
  std::vector<double> tags;

  std::size_t cells() const noexcept { return tags.size(); }
  double width(std::size_t i) const noexcept { return cuts[i + 1] - cuts[i]; }
  /// Largest cell width.
  double mesh() const noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) m = std::max(m, width(i));
    return m;
  }

  friend bool operator==(const TaggedPartition&, const TaggedPartition&) = default;
};

/// |sum of widths - (b - a)| in units of ulp(b - a).
inline double telescoping_error_ulps(const TaggedPartition& p, const Interval& iv) {
  CompensatedSum<double> s;
  for (std::size_t i = 0; i + 1 < p.cuts.size(); ++i) s += p.width(i);
  const double span = iv.width();
  const double ulp = std::nextafter(span, std::numeric_limits<double>::infinity()) - span;
  return std::abs(s.value() - span) / ulp;
}

inline bool is_partition(const TaggedPartition& p, const Interval& iv) {
  if (p.cuts.size() < 2 || p.tags.size() + 1 != p.cuts.size()) return false;
  if (p.cuts.front() != iv.a() || p.cuts.back() != iv.b()) return false;
  for (std::size_t i = 0; i < p.tags.size(); ++i) {
    const double u = p.cuts[i];
    const double v = p.cuts[i + 1];
    if (!(u < v)) return false;
    if (!(u <= p.tags[i] && p.tags[i] <= v)) return false;
  }
  return telescoping_error_ulps(p, iv) <= 4.0;
}

namespace detail {

/// [u, v] inside the open interval (c - d, c + d), with the offsets formed as
/// differences so that a tag sitting on an endpoint is judged exactly.
inline bool cell_fits(double u, double v, double c, double d) noexcept { return (c - u) < d && (v - c) < d; }

}  // namespace detail

/// Every cell lies in the open gauge ball around its tag.
inline bool is_delta_fine(const TaggedPartition& p, const Gauge& g) {
  if (p.tags.size() + 1 != p.cuts.size()) return false;
  for (std::size_t i = 0; i < p.tags.size(); ++i) {
    if (!detail::cell_fits(p.cuts[i], p.cuts[i + 1], p.tags[i], g(p.tags[i]))) return false;
  }
  return true;
}

inline constexpr int kDefaultMaxDepth = 60;
/// Depth limit for the randomized builder. Splits in the middle third shrink a
/// cell by at worst 2/3, so it needs about log(2)/log(3/2) times as many levels.
inline constexpr int kDefaultRandomMaxDepth = 200;

namespace detail {

struct Cell {
  double u;
  double v;
  int depth;
};

inline std::string describe_cell(double u, double v) {
  std::ostringstream os;
  os.precision(17);
  os << "[" << u << ", " << v << "]";
  return os.str();
}

/// Shared skeleton of the Cousin construction. `order(u, v)` yields the three
/// candidate tags in trial order, `split(u, v)` the bisection point.
template <class TagOrder, class Split>
TaggedPartition cousin_skeleton(const Gauge& g, const Interval& iv, int max_depth, TagOrder&& order,
                                Split&& split) {
  if (max_depth < 1) throw ParameterError("max_depth must be >= 1");
  std::vector<double> anchors;
  collect_anchors(g, anchors);
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());

  TaggedPartition out;
  out.cuts.push_back(iv.a());
  std::vector<Cell> stack{{iv.a(), iv.b(), 0}};
  auto try_tag = [&](const Cell& c, double tag) {
    const double d = g(tag);
    if (!(d > 0.0)) {
      throw ScheduleExhausted("gauge is not positive at " + describe_cell(tag, tag) + " inside " +
                                  describe_cell(c.u, c.v),
                              c.u, c.v);
    }
    if (!cell_fits(c.u, c.v, tag, d)) return false;
    out.tags.push_back(tag);
    out.cuts.push_back(c.v);
    return true;
  };
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    bool accepted = false;
    for (double tag : order(c.u, c.v)) {
      if ((accepted = try_tag(c, tag))) break;
    }
    // An anchor strictly inside the cell can never be covered by a tag on one
    // side of it (the gauge vanishes towards it), so it is offered as a tag
    // itself, as the point the nested cells would otherwise close in on.
    for (auto it = std::upper_bound(anchors.begin(), anchors.end(), c.u);
         !accepted && it != anchors.end() && *it < c.v; ++it) {
      accepted = try_tag(c, *it);
    }
    if (accepted) continue;
    if (c.depth >= max_depth) {
      throw ConstructionError("depth limit " + std::to_string(max_depth) + " exceeded on " + describe_cell(c.u, c.v),
                              c.u, c.v);
    }
    const double m = split(c.u, c.v);
    if (!(c.u < m && m < c.v)) {
      throw ConstructionError("floating-point resolution exhausted on " + describe_cell(c.u, c.v), c.u, c.v);
    }
    stack.push_back({m, c.v, c.depth + 1});
    stack.push_back({c.u, m, c.depth + 1});
  }
  return out;
}

/// Bits to a double in [0, 1) without relying on a library distribution, so
/// partitions are reproducible across standard library implementations.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

/// Constructive Cousin's lemma: returns a g-fine tagged partition of iv.
/// Tags are tried midpoint first, then the left and right endpoints, then any
/// anchor point of the gauge inside the cell, so the anchors of a distance
/// gauge become tags of their own small cells.
inline TaggedPartition cousin_build(const Gauge& g, const Interval& iv, int max_depth = kDefaultMaxDepth) {
  return detail::cousin_skeleton(
      g, iv, max_depth, [](double u, double v) { return std::array<double, 3>{std::midpoint(u, v), u, v}; },
      [](double u, double v) { return std::midpoint(u, v); });
}

/// Seeded random g-fine partition: the Cousin skeleton with the tag trial order
/// shuffled per cell and split points drawn from the middle third of each cell.
inline TaggedPartition random_delta_fine(const Gauge& g, const Interval& iv, std::uint64_t seed,
                                         int max_depth = kDefaultRandomMaxDepth) {
  std::mt19937_64 rng(seed);
  auto order = [&rng](double u, double v) {
    std::array<double, 3> t{std::midpoint(u, v), u, v};
    // Fisher-Yates on three slots
    for (std::size_t i = 2; i > 0; --i) {
      const auto j = static_cast<std::size_t>(((rng() >> 32) * (i + 1)) >> 32);
      std::swap(t[i], t[j]);
    }
    return t;
  };
  auto split = [&rng](double u, double v) {
    const double w = v - u;
    return u + w * (1.0 + detail::unit_uniform(rng)) / 3.0;
  };
  return detail::cousin_skeleton(g, iv, max_depth, order, split);
}

/// An element (P, g) of the directed set: P is a g-fine partition of iv.
class DirectedElement {
 public:
  DirectedElement(TaggedPartition p, Gauge g, Interval iv)
      : partition_(std::move(p)), gauge_(std::move(g)), interval_(iv) {
    if (!is_partition(partition_, interval_)) throw DomainError("not a tagged partition of the interval");
    if (!is_delta_fine(partition_, gauge_)) throw DomainError("partition is not fine for the gauge");
  }

  /// (cousin_build(g), g)
  static DirectedElement from_gauge(const Gauge& g, const Interval& iv, int max_depth = kDefaultMaxDepth) {
    return DirectedElement(cousin_build(g, iv, max_depth), g, iv);
  }

  const TaggedPartition& partition() const noexcept { return partition_; }
  const Gauge& gauge() const noexcept { return gauge_; }
  const Interval& interval() const noexcept { return interval_; }

 private:
  TaggedPartition partition_;
  Gauge gauge_;
  Interval interval_;
};

/// Does `later` follow `earlier`? Only the gauges matter, so this is a
/// preorder: distinct partitions with equal gauges follow each other.
inline OrderEvidence follows(const DirectedElement& later, const DirectedElement& earlier) {
  if (!(later.interval() == earlier.interval())) throw DomainError("elements live on different intervals");
  return gauge_leq(later.gauge(), earlier.gauge(), later.interval());
}

/// Common successor: the pointwise minimum gauge with a Cousin partition for it.
inline DirectedElement direction_upper_bound(const DirectedElement& x, const DirectedElement& y,
                                             int max_depth = kDefaultMaxDepth) {
  if (!(x.interval() == y.interval())) throw DomainError("elements live on different intervals");
  return DirectedElement::from_gauge(Gauge::min(x.gauge(), y.gauge()), x.interval(), max_depth);
}

/// {"cuts":[...],"tags":[...]}; doubles are written in shortest round-trip form.
inline nlohmann::json to_json(const TaggedPartition& p) { return {{"cuts", p.cuts}, {"tags", p.tags}}; }

inline TaggedPartition partition_from_json(const nlohmann::json& j) {
  return {j.at("cuts").get<std::vector<double>>(), j.at("tags").get<std::vector<double>>()};
}

}  // namespace hkint
