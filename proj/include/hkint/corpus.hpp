#pragma once

// Built-in integrands with closed-form reference values.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hkint/classify.hpp"
#include "hkint/gauge.hpp"
#include "hkint/integrate.hpp"

namespace hkint {

enum class Integrability { lebesgue, hk_only };

constexpr std::string_view to_string(Integrability c) noexcept {
  return c == Integrability::lebesgue ? "lebesgue" : "hk_only";
}

struct CorpusEntry {
  std::string id;
  Integrand integrand;
  Interval interval;
  double exact_value;
  /// Integral of |f|; empty when it diverges.
  std::optional<double> exact_abs_value;
  Integrability classification;
  GaugeSchedule recommended_schedule;
  /// Estimator options for the recommended schedule (tol is the net tolerance).
  EstimateOptions options;
  /// Acceptance bound on |estimate - exact_value|.
  double accuracy;
  /// Twin-net run used to reproduce the classification.
  GaugeSchedule classify_schedule;
  ClassifyOptions classify_options;
  std::string provenance;
};

namespace corpus_detail {

inline EstimateOptions estimate_options(double tol, std::size_t max_steps) {
  EstimateOptions o;
  o.tol = tol;
  o.max_steps = max_steps;
  return o;
}

inline ClassifyOptions classify_options(double tol, std::size_t max_steps) {
  ClassifyOptions o;
  o.tol = tol;
  o.max_steps = max_steps;
  return o;
}

/// F'(x) for F(x) = x^2 sin(1/x^2), x != 0.
inline double hk_derivative(double x) {
  const double r = 1.0 / (x * x);
  return 2.0 * x * std::sin(r) - (2.0 / x) * std::cos(r);
}

}  // namespace corpus_detail

inline std::vector<CorpusEntry> corpus_entries() {
  using corpus_detail::classify_options;
  using corpus_detail::estimate_options;
  std::vector<CorpusEntry> out;

  {
    const Interval iv(0.0, 1.0);
    GaugeSchedule s(Gauge::uniform(0x1.0p-12), 0.5);
    out.push_back({"poly2", Integrand{[](double x) { return x * x; }, {}, "x^2"}, iv, 1.0 / 3.0, 1.0 / 3.0,
                   Integrability::lebesgue, s, estimate_options(2e-9, 40), 1e-8, s, classify_options(2e-9, 40),
                   "antiderivative x^3/3"});
  }
  {
    const Interval iv(0.0, std::numbers::pi);
    GaugeSchedule s(Gauge::uniform(0x1.0p-12), 0.5);
    out.push_back({"sin", Integrand{[](double x) { return std::sin(x); }, {}, "sin(x)"}, iv, 2.0, 2.0,
                   Integrability::lebesgue, s, estimate_options(2e-9, 40), 1e-8, s, classify_options(2e-9, 40),
                   "antiderivative -cos(x)"});
  }
  {
    const Interval iv(0.0, 1.0);
    GaugeSchedule s(Gauge::min(Gauge::uniform(0x1.0p-6), Gauge::distance_scaled({0.0}, 0.25, 0x1.0p-6, 1e-8)),
                    0.5);
    out.push_back({"inv-sqrt",
                   with_singular_points([](double x) { return 1.0 / std::sqrt(x); }, {0.0}, "x^(-1/2), f(0)=0"), iv,
                   2.0, 2.0, Integrability::lebesgue, s, estimate_options(2e-4, 40), 1e-3, s,
                   classify_options(2e-4, 40), "antiderivative 2 sqrt(x); f(0) := 0"});
  }
  {
    const Interval iv(0.0, 1.0);
    // cells of width ~ kappa x^2 resolve the oscillation of cos(1/x^2), whose
    // period near x is ~ pi x^3, down to the anchor cell
    GaugeSchedule s(Gauge::distance_scaled({0.0}, 2e-4, 0.0625, 0.005, 2.0), 0.9);
    out.push_back({"hk-derivative",
                   with_singular_points(corpus_detail::hk_derivative, {0.0}, "F'(x), F(x) = x^2 sin(1/x^2), F'(0)=0"),
                   iv, std::sin(1.0), std::nullopt, Integrability::hk_only, s, estimate_options(1e-4, 40), 1e-4,
                   classify_schedule(iv, {0.0}), classify_options(5e-2, 48),
                   "F(1) - F(0) = sin(1); |F'| integrates like (4/pi) log(1/t) down to t"});
  }
  {
    const Interval iv(0.0, 1.0);
    const std::vector<double> pts{1.0 / 3.0, 0.5, 2.0 / 3.0};
    auto f = [pts](double x) { return (x == pts[0] || x == pts[1] || x == pts[2]) ? 1.0 : 0.0; };
    GaugeSchedule s(Gauge::min(Gauge::uniform(0.25), Gauge::distance_scaled(pts, 1.0, 0.25, 0x1.0p-40)), 0.5);
    out.push_back({"finite-indicator", Integrand{f, pts, "indicator of {1/3, 1/2, 2/3}"}, iv, 0.0, 0.0,
                   Integrability::lebesgue, s, estimate_options(1e-9, 40), 1e-8, s, classify_options(1e-9, 40),
                   "zero outside a finite set"});
  }
  {
    const Interval iv(0.0, 1.0);
    GaugeSchedule s(Gauge::min(Gauge::uniform(0.25), Gauge::distance_scaled({0.5}, 1.0, 0.25, 0x1.0p-40)), 0.5);
    out.push_back({"step", Integrand{[](double x) { return x < 0.5 ? 1.0 : 5.0; }, {0.5}, "1 on [0,1/2), 5 on [1/2,1]"},
                   iv, 3.0, 3.0, Integrability::lebesgue, s, estimate_options(1e-11, 40), 1e-10, s,
                   classify_options(1e-11, 40), "1 * 1/2 + 5 * 1/2"});
  }
  return out;
}

inline std::optional<CorpusEntry> find_corpus_entry(std::string_view id) {
  for (auto& e : corpus_entries()) {
    if (e.id == id) return e;
  }
  return std::nullopt;
}

}  // namespace hkint
