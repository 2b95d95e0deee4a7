#pragma once

// Command-line front end. run_cli takes the arguments after the program name
// and writes to the given streams, so tests can drive it without a process.
//
// exit codes: 0 converged / lebesgue_evidence / corpus all pass
//             1 usage or parse error
//             2 inconclusive
//             3 diverging / no_convergence_evidence
//             4 hk_only_evidence
//             5 run aborted (partition construction or evaluation failure)
//             6 corpus run with a failing entry

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hkint/hkint.hpp"

namespace hkint::cli {

inline int exit_code(NetStatus s) noexcept {
  switch (s) {
    case NetStatus::converged:
      return 0;
    case NetStatus::inconclusive:
      return 2;
    case NetStatus::diverging:
      return 3;
  }
  return 2;
}

inline int exit_code(Verdict v) noexcept {
  switch (v) {
    case Verdict::lebesgue_evidence:
      return 0;
    case Verdict::hk_only_evidence:
      return 4;
    case Verdict::no_convergence_evidence:
      return 3;
    case Verdict::inconclusive:
      return 2;
  }
  return 2;
}

inline constexpr int kUsageError = 1;
inline constexpr int kRunError = 5;
inline constexpr int kCorpusFailure = 6;

/// 12 significant digits.
inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void row(std::ostream& out, const std::string& key, const std::string& value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%-12s", key.c_str());
  out << buf << value << '\n';
}

struct Common {
  std::string expr;
  double a{};
  double b{};
  std::vector<double> singular;
  std::optional<double> tol;
  std::optional<double> ratio;
  std::optional<std::size_t> max_steps;
  std::uint64_t seed{0};
  std::string trace;
  bool json{false};
};

inline void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--expr", c.expr, "integrand in x, e.g. \"x^2*sin(1/x)\"")->required();
  sub->add_option("--a", c.a, "left endpoint")->required();
  sub->add_option("--b", c.b, "right endpoint")->required();
  sub->add_option("--singular", c.singular, "points where f is forced to 0, comma separated")->delimiter(',');
  sub->add_option("--tol", c.tol, "net tolerance");
  sub->add_option("--ratio", c.ratio, "gauge refinement ratio in (0,1)");
  sub->add_option("--max-steps", c.max_steps, "refinement steps before giving up");
  sub->add_option("--seed", c.seed, "partition seed");
  sub->add_option("--trace", c.trace, "write the per-step trace as CSV");
  sub->add_flag("--json", c.json, "machine-readable output");
}

inline void write_trace(const std::string& path, const std::vector<StepRecord>& steps) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open trace file " + path);
  f << trace_csv(steps);
}

inline int run_integrate(const Common& c, std::ostream& out) {
  const Interval iv(c.a, c.b);
  const Integrand f = make_integrand(parse_expression(c.expr), c.singular, c.expr);
  const GaugeSchedule sched = default_schedule(iv, c.singular, c.ratio.value_or(0.5));
  EstimateOptions o;
  if (c.tol) o.tol = *c.tol;
  if (c.max_steps) o.max_steps = *c.max_steps;
  o.seed = c.seed;
  const EstimateReport r = henstock_estimate(f, iv, sched, o);
  write_trace(c.trace, r.steps);
  if (c.json) {
    out << to_json(r).dump() << '\n';
  } else {
    row(out, "status", std::string(to_string(r.net.status)));
    row(out, "estimate", fmt(r.net.estimate));
    row(out, "residual", fmt(r.net.residual));
    row(out, "steps", std::to_string(r.net.steps_used));
  }
  return exit_code(r.net.status);
}

inline int run_classify(const Common& c, std::ostream& out) {
  const Interval iv(c.a, c.b);
  const Integrand f = make_integrand(parse_expression(c.expr), c.singular, c.expr);
  const GaugeSchedule sched = classify_schedule(iv, c.singular, c.ratio.value_or(0.25));
  ClassifyOptions o;
  if (c.tol) o.tol = *c.tol;
  if (c.max_steps) o.max_steps = *c.max_steps;
  o.seed = c.seed;
  const Classification r = lebesgue_test(f, iv, sched, o);
  write_trace(c.trace, r.steps);
  if (c.json) {
    out << to_json(r).dump() << '\n';
  } else {
    auto last = [](const ConvergenceReport& n) {
      return n.status == NetStatus::converged ? fmt(n.estimate)
                                              : (n.trace.empty() ? "-" : fmt(n.trace.back().value) + " (last)");
    };
    row(out, "verdict", std::string(to_string(r.verdict)));
    row(out, "I status", std::string(to_string(r.f_report.status)));
    row(out, "I", last(r.f_report));
    row(out, "J status", std::string(to_string(r.abs_report.status)));
    row(out, "J", last(r.abs_report));
    row(out, "steps", std::to_string(r.steps.size()));
  }
  return exit_code(r.verdict);
}

inline int run_oscillate(const Common& c, double scale, std::size_t samples, std::ostream& out) {
  const Interval iv(c.a, c.b);
  const Integrand f = make_integrand(parse_expression(c.expr), c.singular, c.expr);
  Gauge g = Gauge::uniform(scale);
  if (!c.singular.empty()) g = Gauge::min(g, Gauge::distance_scaled(c.singular, 1.0, scale, kSingularAtPoint));
  const double w = oscillation_estimate(f, g, iv, samples, c.seed);
  if (c.json) {
    out << nlohmann::json{{"oscillation", json_number(w)}, {"samples", samples}, {"scale", scale}}.dump() << '\n';
  } else {
    row(out, "oscillation", fmt(w));
    row(out, "samples", std::to_string(samples));
  }
  return 0;
}

struct CorpusOutcome {
  std::string id;
  EstimateReport estimate;
  Classification classification;
  double exact{};
  double accuracy{};
  bool estimate_ok{};
  bool verdict_ok{};
};

inline CorpusOutcome run_corpus_entry(const CorpusEntry& e) {
  CorpusOutcome o{e.id, henstock_estimate(e.integrand, e.interval, e.recommended_schedule, e.options),
                  lebesgue_test(e.integrand, e.interval, e.classify_schedule, e.classify_options),
                  e.exact_value, e.accuracy};
  o.estimate_ok = o.estimate.net.status == NetStatus::converged &&
                  std::abs(o.estimate.net.estimate - e.exact_value) <= e.accuracy;
  const Verdict want =
      e.classification == Integrability::lebesgue ? Verdict::lebesgue_evidence : Verdict::hk_only_evidence;
  o.verdict_ok = o.classification.verdict == want;
  return o;
}

inline int run_corpus(const std::string& id, bool json, std::ostream& out, std::ostream& err) {
  std::vector<CorpusEntry> entries;
  if (id.empty()) {
    entries = corpus_entries();
  } else if (auto e = find_corpus_entry(id)) {
    entries.push_back(*e);
  } else {
    err << "unknown corpus id '" << id << "'; known:";
    for (const auto& k : corpus_entries()) err << ' ' << k.id;
    err << '\n';
    return kUsageError;
  }

  bool all = true;
  nlohmann::json arr = nlohmann::json::array();
  if (!json) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-18s %-13s %-20s %-20s %-11s %-24s %s\n", "id", "status", "estimate", "exact",
                  "error", "verdict", "result");
    out << buf;
  }
  for (const auto& e : entries) {
    const CorpusOutcome o = run_corpus_entry(e);
    const bool pass = o.estimate_ok && o.verdict_ok;
    all = all && pass;
    const double error = o.estimate.net.estimate - o.exact;
    if (json) {
      arr.push_back({{"id", o.id},
                     {"estimate", to_json(o.estimate)},
                     {"exact", o.exact},
                     {"error", json_number(error)},
                     {"accuracy", o.accuracy},
                     {"classification", to_json(o.classification)},
                     {"pass", pass}});
    } else {
      char buf[200];
      std::snprintf(buf, sizeof buf, "%-18s %-13s %-20s %-20s %-11.3g %-24s %s\n", o.id.c_str(),
                    std::string(to_string(o.estimate.net.status)).c_str(), fmt(o.estimate.net.estimate).c_str(),
                    fmt(o.exact).c_str(), error, std::string(to_string(o.classification.verdict)).c_str(),
                    pass ? "pass" : "FAIL");
      out << buf;
    }
  }
  if (json) out << nlohmann::json{{"entries", arr}, {"all_pass", all}}.dump() << '\n';
  return all ? 0 : kCorpusFailure;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Gauge (Henstock-Kurzweil) integration and the absolute-integrability test", "hkint"};
  app.require_subcommand(1);

  Common ic;
  auto* integrate = app.add_subcommand("integrate", "estimate the integral of a formula");
  add_common(integrate, ic);

  Common cc;
  auto* classify = app.add_subcommand("classify", "run the twin nets for f and |f|");
  add_common(classify, cc);

  Common oc;
  double scale = 0.0;
  std::size_t samples = 32;
  auto* oscillate = app.add_subcommand("oscillate", "spread of Riemann sums over random fine partitions");
  add_common(oscillate, oc);
  oscillate->add_option("--scale", scale, "uniform gauge value h")->required()->check(CLI::PositiveNumber);
  oscillate->add_option("--samples", samples, "number of random partitions")->check(CLI::Range(2, 1 << 20));

  auto* corpus = app.add_subcommand("corpus", "built-in integrands");
  corpus->require_subcommand(1);
  std::string corpus_id;
  bool corpus_json = false;
  auto* corpus_run = corpus->add_subcommand("run", "check every entry against its exact value");
  corpus_run->add_option("--id", corpus_id, "run a single entry");
  corpus_run->add_flag("--json", corpus_json, "machine-readable output");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*integrate) return run_integrate(ic, out);
    if (*classify) return run_classify(cc, out);
    if (*oscillate) return run_oscillate(oc, scale, samples, out);
    if (*corpus_run) return run_corpus(corpus_id, corpus_json, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParameterError& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConstructionError& e) {
    err << "partition construction failed";
    if (e.step()) err << " at step " << *e.step();
    err << ": " << e.what() << '\n';
    return kRunError;
  } catch (const EvaluationError& e) {
    err << "evaluation failed: " << e.what() << '\n';
    return kRunError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRunError;
  }
  return kUsageError;
}

}  // namespace hkint::cli
