// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "cli_checks.hpp"
#include "properties.hpp"

using namespace hkint;
using namespace hkint::testing;

namespace {

int failed = 0;

void report(int n, bool pass, const std::string& what, const std::string& detail) {
  if (!pass) ++failed;
  std::printf("criterion %2d: %s  %s  [%s]\n", n, pass ? "PASS" : "FAIL", what.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string summary(const PropertyResult& r) {
  std::string s = std::to_string(r.trials - std::min(r.trials, r.failures)) + "/" + std::to_string(r.trials) + " ok";
  if (r.failures) s += "; first: " + r.first_failure;
  return s;
}

struct Run {
  EstimateReport report;
  double seconds{};
};

Run timed_estimate(const CorpusEntry& e, std::uint64_t seed) {
  EstimateOptions o = e.options;
  o.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  EstimateReport r = henstock_estimate(e.integrand, e.interval, e.recommended_schedule, o);
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  return {std::move(r), dt.count()};
}

}  // namespace

int main() {
  const auto entries = corpus_entries();
  std::vector<Run> first;

  {
    bool ok = true;
    std::ostringstream d;
    for (const auto& e : entries) {
      first.push_back(timed_estimate(e, 0));
      const auto& r = first.back();
      const double err = std::abs(r.report.net.estimate - e.exact_value);
      const bool pass = r.report.net.status == NetStatus::converged && err <= e.accuracy && r.seconds <= 10.0;
      ok = ok && pass;
      d << e.id << " err " << num(err) << "/" << num(e.accuracy) << " " << num(r.seconds) << "s"
        << (pass ? "" : " FAIL") << "; ";
    }
    report(1, ok, "corpus estimates within tolerance, each run <= 10 s", d.str());
  }

  {
    bool ok = true;
    std::ostringstream d;
    for (const auto& e : entries) {
      const auto c = lebesgue_test(e.integrand, e.interval, e.classify_schedule, e.classify_options);
      const Verdict want =
          e.classification == Integrability::lebesgue ? Verdict::lebesgue_evidence : Verdict::hk_only_evidence;
      bool pass = c.verdict == want;
      d << e.id << " " << to_string(c.verdict);
      if (e.classification == Integrability::hk_only) {
        const auto& t = c.abs_report.trace;
        bool mono = t.size() >= 10;
        for (std::size_t k = t.size() >= 10 ? t.size() - 9 : 1; mono && k < t.size(); ++k) {
          mono = t[k].value > t[k - 1].value;
        }
        pass = pass && mono;
        d << " (J " << (mono ? "increasing" : "NOT increasing") << " over last 10 of " << t.size() << ", last "
          << num(t.empty() ? 0.0 : t.back().value) << ")";
      }
      ok = ok && pass;
      d << "; ";
    }
    report(2, ok, "classifier verdicts and monotone J trace for the derivative entry", d.str());
  }

  {
    const auto r = cousin_soundness(3001, 1000);
    report(3, r.failures == 0 && r.trials == 1000, "cousin_build partitions are partitions and fine (max depth 60)",
           summary(r));
  }

  {
    std::size_t decided = 0;
    const auto r = direction_laws(3002, 1000, &decided);
    report(4, r.failures == 0 && r.trials == 1000, "direction laws over random gauge triples",
           summary(r) + ", " + std::to_string(decided) + " decided chains");
  }

  {
    const auto r = fineness_monotone(3003, 500);
    report(5, r.failures == 0 && r.trials == 500, "refined-gauge-fine partitions are fine", summary(r));
  }

  {
    const auto r = sum_level(3004, 1000);
    const bool ok = r.linearity.failures == 0 && r.monotonicity.failures == 0 && r.triangle.failures == 0;
    report(6, ok, "Riemann sum linearity (8 ulp), monotonicity and triangle inequality (4 ulp)",
           "linearity " + summary(r.linearity) + "; monotonicity " + summary(r.monotonicity) + "; triangle " +
               summary(r.triangle));
  }

  {
    bool ok = true;
    std::ostringstream d;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = entries[i];
      const auto& r = first[i].report;
      if (r.net.status != NetStatus::converged) continue;
      const double w = oscillation_estimate(e.integrand, r.final_gauge, e.interval, 32, 77);
      const bool pass = w <= 4 * e.options.tol;
      ok = ok && pass;
      d << e.id << " " << num(w) << "/" << num(4 * e.options.tol) << (pass ? "" : " FAIL") << "; ";
    }
    report(7, ok, "oscillation at the final gauge (32 samples) <= 4 tol", d.str());
  }

  {
    bool ok = true;
    std::ostringstream d;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = entries[i];
      double lo = first[i].report.net.estimate, hi = lo;
      bool conv = first[i].report.net.status == NetStatus::converged;
      for (std::uint64_t s = 1000; s <= 4000; s += 1000) {
        const auto r = timed_estimate(e, s).report;
        conv = conv && r.net.status == NetStatus::converged;
        lo = std::min(lo, r.net.estimate);
        hi = std::max(hi, r.net.estimate);
      }
      const bool pass = conv && hi - lo <= 2 * e.options.tol;
      ok = ok && pass;
      d << e.id << " spread " << num(hi - lo) << "/" << num(2 * e.options.tol) << (pass ? "" : " FAIL") << "; ";
    }
    report(8, ok, "estimates over 5 seeds agree within 2 tol", d.str());
  }

  {
    auto r = parser_round_trip(3009, 1000);
    auto example = [&](const std::string& name, bool pass) {
      ++r.trials;
      if (!pass) r.fail(name);
    };
    try {
      example("\"3\" is the literal 3", parse_expression("3") == Expression::number(3.0));
      const Expression x2 = Expression::binary(Expression::Kind::pow, Expression::var(), Expression::number(2));
      const Expression tree = Expression::binary(
          Expression::Kind::mul, x2,
          Expression::call(Func::sin, Expression::binary(Expression::Kind::div, Expression::number(1), x2)));
      const Expression e = parse_expression("x^2*sin(1/x^2)");
      example("x^2*sin(1/x^2) tree", e == tree);
      example("x^2*sin(1/x^2) at 0.5", std::abs(e(0.5) - 0.25 * -0.7568024953079282) <= 1e-15);
      example("2^3^2 = 512", parse_expression("2^3^2")(0.0) == 512.0);
    } catch (const std::exception& ex) {
      r.fail(ex.what());
    }
    report(9, r.failures == 0, "parser round trip (1000 trees) and the three parse examples", summary(r));
  }

  {
    const auto r = cli_examples();
    report(10, r.failures == 0, "command-line examples: output and exit codes", summary(r));
  }

  std::printf("%s\n", failed ? "acceptance: FAIL" : "acceptance: PASS");
  return failed ? 1 : 0;
}
