#pragma once

// Riemann sums over tagged partitions and the gauge-refinement estimator for
// the Henstock-Kurzweil integral: the net I(P, g) = S(P, f) is sampled along
// a descending chain of gauges g_n = ratio^n * g_0, one random g_n-fine
// partition per step.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hkint/compensated.hpp"
#include "hkint/errors.hpp"
#include "hkint/gauge.hpp"
#include "hkint/nets.hpp"
#include "hkint/partition.hpp"

namespace hkint {

/// f : [a, b] -> R. Must return a finite value at every point the engine
/// asks about, including the declared singular points (where the caller
/// supplies a redefinition such as f(s) = 0).
struct Integrand {
  std::function<double(double)> eval;
  std::vector<double> singular_points;
  std::string label;

  double operator()(double x) const { return eval(x); }
};

/// Wrap a formula so that it returns 0 at the listed points and is never
/// evaluated there.
inline Integrand with_singular_points(std::function<double(double)> f, std::vector<double> points,
                                      std::string label) {
  std::sort(points.begin(), points.end());
  auto fn = [f = std::move(f), pts = points](double x) {
    return std::binary_search(pts.begin(), pts.end(), x) ? 0.0 : f(x);
  };
  return {std::move(fn), std::move(points), std::move(label)};
}

/// The chain g_n = ratio^n * initial.
class GaugeSchedule {
 public:
  GaugeSchedule(Gauge initial, double ratio) : initial_(std::move(initial)), ratio_(ratio) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw ParameterError("schedule ratio must lie in (0, 1)");
  }

  const Gauge& initial() const noexcept { return initial_; }
  double ratio() const noexcept { return ratio_; }

  /// ratio^n accumulated by repeated multiplication, matching n applications
  /// of refine_gauge.
  double scale(std::size_t n) const noexcept {
    double s = 1.0;
    for (std::size_t i = 0; i < n; ++i) s *= ratio_;
    return s;
  }

  Gauge at(std::size_t n) const {
    const double s = scale(n);
    if (n == 0) return initial_;
    if (!(s > 0.0)) {
      throw ScheduleExhausted("schedule scale underflowed at step " + std::to_string(n), 0.0, 0.0);
    }
    return Gauge::scaled(initial_, s);
  }

 private:
  Gauge initial_;
  double ratio_;
};

/// Anchor cap used by the default schedule for declared singular points.
inline constexpr double kSingularAtPoint = 0x1.0p-40;

/// Uniform((b-a)/4) refined by halves; with singular points, the minimum of
/// that and a unit-slope distance gauge anchored at them.
inline GaugeSchedule default_schedule(const Interval& iv, const std::vector<double>& singular_points = {},
                                      double ratio = 0.5) {
  const double h = iv.width() / 4.0;
  if (singular_points.empty()) return {Gauge::uniform(h), ratio};
  return {Gauge::min(Gauge::uniform(h), Gauge::distance_scaled(singular_points, 1.0, h, kSingularAtPoint)), ratio};
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

namespace detail {

/// Accumulates v * (hi - lo) with the width and the product split into a
/// rounded part and its exact error, so that sums over a partition telescope:
/// a constant integrand yields c * (b - a) rounded once, whatever the cuts.
class ProductSum {
 public:
  void add(double v, double lo, double hi) noexcept {
    // TwoSum: hi - lo = w + ew exactly
    const double w = hi - lo;
    const double bb = w - hi;
    const double ew = (hi - (w - bb)) - (lo + bb);
    const double p = v * w;
    const double ep = std::fma(v, w, -p);
    main_ += p;
    tail_ += ep + v * ew;
  }

  double value() const noexcept {
    CompensatedSum<double> s = main_;
    s += tail_.value();
    return s.value();
  }

 private:
  CompensatedSum<double> main_;
  CompensatedSum<double> tail_;
};

inline double checked_value(const Integrand& f, double c) {
  const double v = f(c);
  if (!std::isfinite(v)) throw EvaluationError("integrand is not finite at tag " + format_double(c), c);
  return v;
}

}  // namespace detail

/// S(P, f) = sum f(c_i) (x_i - x_{i-1}), compensated.
inline double riemann_sum(const Integrand& f, const TaggedPartition& p) {
  detail::ProductSum s;
  for (std::size_t i = 0; i < p.tags.size(); ++i) {
    s.add(detail::checked_value(f, p.tags[i]), p.cuts[i], p.cuts[i + 1]);
  }
  return s.value();
}

/// Riemann sums of f and |f| over one partition, sharing the evaluations.
inline std::pair<double, double> riemann_sum_pair(const Integrand& f, const TaggedPartition& p) {
  detail::ProductSum s;
  detail::ProductSum a;
  for (std::size_t i = 0; i < p.tags.size(); ++i) {
    const double v = detail::checked_value(f, p.tags[i]);
    s.add(v, p.cuts[i], p.cuts[i + 1]);
    a.add(std::abs(v), p.cuts[i], p.cuts[i + 1]);
  }
  return {s.value(), a.value()};
}

/// I(gamma) = S(P, f) for gamma = (P, g). The gauge takes no part in the value.
inline double net_sample(const Integrand& f, const DirectedElement& gamma) {
  return riemann_sum(f, gamma.partition());
}

struct EstimateOptions {
  double tol{1e-6};
  std::size_t window{3};
  std::size_t max_steps{40};
  std::uint64_t seed{0};
  int max_depth{kDefaultRandomMaxDepth};
  std::optional<double> growth_cap;
};

/// One refinement step of an estimator run.
struct StepRecord {
  std::size_t step{};
  /// ratio^step: the gauge used was gauge_scale * initial.
  double gauge_scale{};
  std::size_t n_cells{};
  double sum{};
};

struct EstimateReport {
  ConvergenceReport net;
  std::vector<StepRecord> steps;
  /// Gauge of the last step taken.
  Gauge final_gauge;
};

inline NetOptions net_options(const EstimateOptions& o) {
  NetOptions n;
  n.tol = o.tol;
  n.window = o.window;
  n.max_steps = o.max_steps;
  n.growth_cap = o.growth_cap;
  return n;
}

/// Sample I along the schedule until the net limit detector decides.
inline EstimateReport henstock_estimate(const Integrand& f, const Interval& iv, const GaugeSchedule& sched,
                                        const EstimateOptions& opts) {
  NetLimit net(net_options(opts));
  std::vector<StepRecord> steps;
  Gauge current = sched.initial();
  for (std::size_t n = 0; !net.decided(); ++n) {
    current = sched.at(n);
    TaggedPartition p;
    try {
      p = random_delta_fine(current, iv, opts.seed + n, opts.max_depth);
    } catch (ConstructionError& e) {
      e.set_step(n);
      throw;
    }
    const double s = riemann_sum(f, p);
    steps.push_back({n, sched.scale(n), p.cells(), s});
    net.push(s);
  }
  return {net.report(), std::move(steps), current};
}

/// max - min of S(P_k, f) over `samples` random g-fine partitions. A lower
/// bound on the oscillation of the net above g.
inline double oscillation_estimate(const Integrand& f, const Gauge& g, const Interval& iv, std::size_t samples,
                                   std::uint64_t seed, int max_depth = kDefaultRandomMaxDepth) {
  if (samples < 2) throw ParameterError("oscillation needs at least 2 samples");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t k = 0; k < samples; ++k) {
    const double s = riemann_sum(f, random_delta_fine(g, iv, seed + k, max_depth));
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return hi - lo;
}

/// CSV trace: header `step,gauge_scale,n_cells,sum`, shortest round-trip doubles.
inline std::string trace_csv(const std::vector<StepRecord>& steps) {
  std::string out = "step,gauge_scale,n_cells,sum\n";
  for (const auto& s : steps) {
    out += std::to_string(s.step);
    out += ',';
    out += detail::format_double(s.gauge_scale);
    out += ',';
    out += std::to_string(s.n_cells);
    out += ',';
    out += detail::format_double(s.sum);
    out += '\n';
  }
  return out;
}

inline nlohmann::json trace_json(const std::vector<StepRecord>& steps) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : steps) {
    arr.push_back({{"step", s.step}, {"gauge_scale", s.gauge_scale}, {"n_cells", s.n_cells}, {"sum", s.sum}});
  }
  return arr;
}

/// Non-finite numbers have no JSON spelling; they are written as null.
inline nlohmann::json json_number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

inline nlohmann::json to_json(const EstimateReport& r) {
  return {{"status", std::string(to_string(r.net.status))},
          {"estimate", json_number(r.net.estimate)},
          {"residual", json_number(r.net.residual)},
          {"steps", r.net.steps_used},
          {"trace", trace_json(r.steps)}};
}

}  // namespace hkint
