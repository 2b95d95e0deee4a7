#pragma once

// Random generators shared by the property tests and the acceptance binary.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hkint/hkint.hpp"

namespace hkint::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

/// Width log-uniform in [1e-3, 100], left end in [-10, 10] but within 64
/// widths of 0, so that 2^-40 (b - a) is still about 64 ulp of the endpoints.
inline Interval random_interval(Rng& rng) {
  const double w = log_uniform(rng, 1e-3, 100.0);
  const double reach = std::min(10.0, 64.0 * w);
  const double a = uniform(rng, -reach, reach);
  return {a, a + w};
}

/// Structured gauge on iv whose smallest value (at anchors, after scaling) is
/// at least 2^-36.6 (b - a), which leaves room for one further refinement by
/// 0.1 or two by 0.35 before reaching 2^-40 (b - a). Anchor points lie inside
/// the interval.
inline Gauge random_gauge(Rng& rng, const Interval& iv, int depth = 0) {
  const double w = iv.width();
  const int pick = depth >= 2 ? static_cast<int>(rng() % 2) : static_cast<int>(rng() % 4);
  switch (pick) {
    case 0:
      return Gauge::uniform(log_uniform(rng, 0x1.0p-12, 1.0) * w);
    case 1: {
      std::vector<double> pts(1 + rng() % 3);
      for (double& p : pts) p = uniform(rng, iv.a(), iv.b());
      if (rng() % 4 == 0) pts.front() = iv.a();
      return Gauge::distance_scaled(pts, uniform(rng, 0.25, 1.0), log_uniform(rng, 0x1.0p-10, 1.0) * w,
                                    log_uniform(rng, 0x1.0p-30, 0x1.0p-8) * w);
    }
    case 2:
      return Gauge::min(random_gauge(rng, iv, depth + 1), random_gauge(rng, iv, depth + 1));
    default:
      return Gauge::scaled(random_gauge(rng, iv, depth + 1), uniform(rng, 0.1, 1.0));
  }
}

/// Arbitrary tagged partition with n cells: sorted random cuts, random tags.
inline TaggedPartition random_partition(Rng& rng, const Interval& iv, std::size_t n) {
  std::vector<double> cuts(n + 1);
  cuts.front() = iv.a();
  cuts.back() = iv.b();
  for (std::size_t i = 1; i < n; ++i) cuts[i] = uniform(rng, iv.a(), iv.b());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  TaggedPartition p{cuts, {}};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const int r = static_cast<int>(rng() % 4);
    p.tags.push_back(r == 0 ? cuts[i] : r == 1 ? cuts[i + 1] : uniform(rng, cuts[i], cuts[i + 1]));
  }
  return p;
}

/// Random polynomial (degree <= 4) or trigonometric combination.
inline std::function<double(double)> random_function(Rng& rng) {
  if (rng() % 2 == 0) {
    std::vector<double> c(1 + rng() % 5);
    for (double& v : c) v = uniform(rng, -3.0, 3.0);
    return [c](double x) {
      double r = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
      return r;
    };
  }
  const double a = uniform(rng, -3.0, 3.0);
  const double b = uniform(rng, -3.0, 3.0);
  const double k = uniform(rng, 0.1, 5.0);
  const double phase = uniform(rng, 0.0, 6.0);
  return [=](double x) { return a * std::sin(k * x + phase) + b * std::cos(x); };
}

inline Integrand integrand(std::function<double(double)> f, std::string label = "f") {
  return Integrand{std::move(f), {}, std::move(label)};
}

/// Distance in ulps of `scale` (the spacing of doubles at |scale|).
inline double ulps(double diff, double scale) {
  const double s = std::abs(scale);
  const double ulp = s == 0.0 ? std::numeric_limits<double>::denorm_min()
                              : std::nextafter(s, std::numeric_limits<double>::infinity()) - s;
  return std::abs(diff) / ulp;
}

/// Random expression tree over the full grammar.
inline Expression random_expression(Rng& rng, int depth = 0) {
  using K = Expression::Kind;
  const int leaf_bias = depth >= 4 ? 100 : 35;
  if (static_cast<int>(rng() % 100) < leaf_bias) {
    switch (rng() % 4) {
      case 0:
        return Expression::var();
      case 1:
        return Expression::pi();
      case 2:
        return Expression::number(static_cast<double>(rng() % 100));
      default:
        return Expression::number(log_uniform(rng, 1e-6, 1e6));
    }
  }
  switch (rng() % 8) {
    case 0:
      return Expression::neg(random_expression(rng, depth + 1));
    case 1:
      return Expression::call(kFunctions[rng() % kFunctions.size()].second, random_expression(rng, depth + 1));
    default: {
      static constexpr K ops[] = {K::add, K::sub, K::mul, K::div, K::pow};
      return Expression::binary(ops[rng() % 5], random_expression(rng, depth + 1), random_expression(rng, depth + 1));
    }
  }
}

}  // namespace hkint::testing
