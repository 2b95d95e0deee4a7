#pragma once

// Twin nets I(P, g) = S(P, f) and J(P, g) = S(P, |f|) over one partition
// stream. f is Lebesgue integrable iff both converge; f Henstock integrable
// with J running away is the non-absolute case.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hkint/errors.hpp"
#include "hkint/gauge.hpp"
#include "hkint/integrate.hpp"
#include "hkint/nets.hpp"
#include "hkint/partition.hpp"

namespace hkint {

enum class Verdict { lebesgue_evidence, hk_only_evidence, no_convergence_evidence, inconclusive };

constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::lebesgue_evidence:
      return "lebesgue_evidence";
    case Verdict::hk_only_evidence:
      return "hk_only_evidence";
    case Verdict::no_convergence_evidence:
      return "no_convergence_evidence";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

/// The truth table: I diverging wins over everything else.
constexpr Verdict decide_verdict(NetStatus i, NetStatus j) noexcept {
  if (i == NetStatus::diverging) return Verdict::no_convergence_evidence;
  if (i == NetStatus::converged && j == NetStatus::converged) return Verdict::lebesgue_evidence;
  if (i == NetStatus::converged && j == NetStatus::diverging) return Verdict::hk_only_evidence;
  return Verdict::inconclusive;
}

struct ClassifyOptions {
  double tol{5e-2};
  std::size_t window{3};
  std::size_t max_steps{48};
  std::uint64_t seed{0};
  int max_depth{kDefaultRandomMaxDepth};
  /// Divergence cap for I; defaults to the nets default.
  std::optional<double> growth_cap;
  /// J diverges once it exceeds abs_cap_factor * (1 + |I|), I taken at the
  /// latest step, after a strictly increasing run of abs_monotone_run steps.
  double abs_cap_factor{10.0};
  std::size_t abs_monotone_run{10};
};

struct Classification {
  ConvergenceReport f_report;
  ConvergenceReport abs_report;
  Verdict verdict{Verdict::inconclusive};
  std::vector<StepRecord> steps;
};

/// Anchor cap of the classifier's default gauge, as a fraction of b - a.
inline constexpr double kClassifyAtPointFraction = 1.0 / 20.0;

/// Default classifier schedule. Same shape as default_schedule but with a
/// coarse anchor cap and ratio 1/4: the J sum near a singular point grows
/// with log(1/cutoff), so the cutoff must start moderate and shrink fast.
inline GaugeSchedule classify_schedule(const Interval& iv, const std::vector<double>& singular_points = {},
                                       double ratio = 0.25) {
  const double h = iv.width() / 4.0;
  if (singular_points.empty()) return {Gauge::uniform(h), ratio};
  return {Gauge::min(Gauge::uniform(h), Gauge::distance_scaled(singular_points, 1.0, h,
                                                               iv.width() * kClassifyAtPointFraction)),
          ratio};
}

inline Classification lebesgue_test(const Integrand& f, const Interval& iv, const GaugeSchedule& sched,
                                    const ClassifyOptions& opts) {
  if (!(opts.abs_cap_factor > 0.0)) throw ParameterError("abs_cap_factor must be > 0");
  NetOptions io;
  io.tol = opts.tol;
  io.window = opts.window;
  io.max_steps = opts.max_steps;
  io.growth_cap = opts.growth_cap;
  NetOptions jo = io;
  jo.growth_cap = opts.abs_cap_factor;
  jo.monotone_run = opts.abs_monotone_run;
  NetLimit inet(io);
  NetLimit jnet(jo);

  std::vector<StepRecord> steps;
  for (std::size_t n = 0; !(inet.decided() && jnet.decided()); ++n) {
    // I diverging settles the verdict whatever J does
    if (inet.decided() && inet.status() == NetStatus::diverging) break;
    TaggedPartition p;
    try {
      p = random_delta_fine(sched.at(n), iv, opts.seed + n, opts.max_depth);
    } catch (ConstructionError& e) {
      e.set_step(n);
      throw;
    }
    const auto [i, j] = riemann_sum_pair(f, p);
    steps.push_back({n, sched.scale(n), p.cells(), i});
    inet.push(i);
    if (!jnet.decided()) {
      const double ref = inet.status() == NetStatus::converged ? inet.report().estimate : i;
      jnet.set_growth_cap(opts.abs_cap_factor * (1.0 + std::abs(ref)));
      jnet.push(j);
    }
  }
  Classification out{inet.report(), jnet.report(), Verdict::inconclusive, std::move(steps)};
  out.verdict = decide_verdict(out.f_report.status, out.abs_report.status);
  return out;
}

inline nlohmann::json net_json(const ConvergenceReport& r) {
  return {{"status", std::string(to_string(r.status))},
          {"estimate", json_number(r.estimate)},
          {"residual", json_number(r.residual)}};
}

/// {verdict, I:{status,estimate,residual}, J:{...}, steps}
inline nlohmann::json to_json(const Classification& c) {
  return {{"verdict", std::string(to_string(c.verdict))},
          {"I", net_json(c.f_report)},
          {"J", net_json(c.abs_report)},
          {"steps", c.steps.size()}};
}

}  // namespace hkint
