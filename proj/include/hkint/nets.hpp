#pragma once

// Directed sets and generalized sequences (nets).
//
// A net is consumed along a single cofinal chain: the caller feeds the values
// of the net at successively "later" elements and NetLimit decides, with a
// finite Cauchy-window surrogate, whether the stream has settled, is running
// away, or neither.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "hkint/compensated.hpp"
#include "hkint/errors.hpp"

namespace hkint {

/// Three-valued answer for questions that are only sometimes decidable.
enum class Ternary { no, yes, unknown };

constexpr std::string_view to_string(Ternary t) noexcept {
  switch (t) {
    case Ternary::no:
      return "false";
    case Ternary::yes:
      return "true";
    case Ternary::unknown:
      return "unknown";
  }
  return "unknown";
}

enum class NetStatus { converged, diverging, inconclusive };

constexpr std::string_view to_string(NetStatus s) noexcept {
  switch (s) {
    case NetStatus::converged:
      return "converged";
    case NetStatus::diverging:
      return "diverging";
    case NetStatus::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

/// Value of the net at one element of the chain. `index` is the position of
/// the element along the chain; the element itself stays with the producer.
struct NetSample {
  std::size_t index{};
  double value{};
};

struct ConvergenceReport {
  NetStatus status{NetStatus::inconclusive};
  /// Window mean; meaningful only when status == converged.
  double estimate{std::numeric_limits<double>::quiet_NaN()};
  std::vector<NetSample> trace;
  std::size_t steps_used{};
  /// Band width of the most recent complete window (+inf before one exists).
  double residual{std::numeric_limits<double>::infinity()};
  /// Non-finite values offered to the net. They never enter the trace.
  std::size_t evaluation_failures{};
};

struct NetOptions {
  double tol{1e-6};
  std::size_t window{3};
  std::size_t max_steps{64};
  /// Magnitude a monotone run must exceed to count as divergence.
  /// Defaults to 1e6 * (1 + |first sample|).
  std::optional<double> growth_cap;
  /// Length of the strictly-increasing magnitude run required for divergence;
  /// 0 means "same as window".
  std::size_t monotone_run{0};
  /// Keep only the most recent samples in the trace; 0 keeps everything.
  std::size_t trace_capacity{0};
};

inline void validate(const NetOptions& o) {
  if (!(o.tol > 0.0) || !std::isfinite(o.tol)) throw ParameterError("net tolerance must be finite and > 0");
  if (o.window < 2) throw ParameterError("net window must be >= 2");
  if (o.max_steps == 0) throw ParameterError("net max_steps must be > 0");
  if (o.growth_cap && !(*o.growth_cap > 0.0)) throw ParameterError("net growth_cap must be > 0");
  if (o.monotone_run == 1) throw ParameterError("net monotone_run must be 0 or >= 2");
}

/// Incremental limit detector. Push samples in chain order until decided().
class NetLimit {
 public:
  explicit NetLimit(NetOptions opts) : opts_(std::move(opts)) {
    validate(opts_);
    run_ = opts_.monotone_run == 0 ? opts_.window : opts_.monotone_run;
    keep_ = std::max(opts_.window, run_);
  }

  bool decided() const noexcept { return decided_; }
  NetStatus status() const noexcept { return report_.status; }
  const NetOptions& options() const noexcept { return opts_; }

  /// Replace the divergence cap mid-stream (the classifier ties the |f| cap to
  /// the current estimate for f).
  void set_growth_cap(double cap) {
    if (!(cap > 0.0)) throw ParameterError("net growth_cap must be > 0");
    opts_.growth_cap = cap;
  }

  double growth_cap() const noexcept { return opts_.growth_cap.value_or(default_cap_); }

  /// Offer the next sample. Returns the status after it; once decided, further
  /// samples are ignored.
  NetStatus push(double value) {
    if (decided_) return report_.status;
    const std::size_t index = report_.steps_used++;

    if (!std::isfinite(value)) {
      ++report_.evaluation_failures;
      finish(NetStatus::diverging);
      return report_.status;
    }

    if (recent_.empty() && report_.trace.empty() && !opts_.growth_cap) {
      default_cap_ = 1e6 * (1.0 + std::abs(value));
    }
    record(index, value);

    if (recent_.size() >= opts_.window) {
      const auto first = recent_.end() - static_cast<std::ptrdiff_t>(opts_.window);
      const auto [lo, hi] = std::minmax_element(first, recent_.end());
      report_.residual = *hi - *lo;
      if (report_.residual <= opts_.tol) {
        CompensatedSum<double> mean;
        for (auto it = first; it != recent_.end(); ++it) mean += *it;
        report_.estimate = mean.value() / static_cast<double>(opts_.window);
        finish(NetStatus::converged);
        return report_.status;
      }
    }

    if (recent_.size() >= run_ && std::abs(recent_.back()) > growth_cap()) {
      bool increasing = true;
      for (std::size_t i = recent_.size() - run_ + 1; i < recent_.size(); ++i) {
        if (!(std::abs(recent_[i]) > std::abs(recent_[i - 1]))) {
          increasing = false;
          break;
        }
      }
      if (increasing) {
        finish(NetStatus::diverging);
        return report_.status;
      }
    }

    if (report_.steps_used >= opts_.max_steps) finish(NetStatus::inconclusive);
    return report_.status;
  }

  /// Snapshot of the computation so far (inconclusive while undecided).
  const ConvergenceReport& report() const noexcept { return report_; }

 private:
  void record(std::size_t index, double value) {
    recent_.push_back(value);
    if (recent_.size() > keep_) recent_.pop_front();
    report_.trace.push_back({index, value});
    if (opts_.trace_capacity != 0 && report_.trace.size() > 2 * opts_.trace_capacity) {
      // amortised trim so long streams do not pay an O(n) erase per sample
      report_.trace.erase(report_.trace.begin(),
                          report_.trace.end() - static_cast<std::ptrdiff_t>(opts_.trace_capacity));
    }
  }

  void finish(NetStatus s) {
    decided_ = true;
    report_.status = s;
    if (opts_.trace_capacity != 0 && report_.trace.size() > opts_.trace_capacity) {
      report_.trace.erase(report_.trace.begin(),
                          report_.trace.end() - static_cast<std::ptrdiff_t>(opts_.trace_capacity));
    }
  }

  NetOptions opts_;
  std::size_t run_{};
  std::size_t keep_{};
  double default_cap_{std::numeric_limits<double>::infinity()};
  std::deque<double> recent_;
  ConvergenceReport report_;
  bool decided_{false};
};

/// Drive a NetLimit from a generator. `next()` returns the next sample along
/// the chain; it is called at most max_steps times.
template <class Source>
  requires std::invocable<Source&> && std::convertible_to<std::invoke_result_t<Source&>, double>
ConvergenceReport net_limit(Source&& next, const NetOptions& opts) {
  NetLimit net(opts);
  while (!net.decided()) net.push(static_cast<double>(next()));
  return net.report();
}

/// Outcome of checking the directed-set laws on one triple of elements.
struct DirectionLaws {
  bool reflexive{};
  bool transitive{};
  bool upper_bound_follows{};

  bool all() const noexcept { return reflexive && transitive && upper_bound_follows; }
};

/// Check the laws of a direction on elements c, d, e. `follows(x, y)` answers
/// "x follows y" and may return bool or Ternary (unknown counts as not shown);
/// `upper(x, y)` must build an element following both. Transitivity is only
/// checked when both premises hold.
template <class Elem, class Follows, class Upper>
DirectionLaws check_direction_laws(const Follows& follows, const Upper& upper, const Elem& c,
                                   const Elem& d, const Elem& e) {
  auto holds = [&](const Elem& x, const Elem& y) {
    const auto r = follows(x, y);
    if constexpr (std::same_as<std::remove_cvref_t<decltype(r)>, Ternary>) {
      return r == Ternary::yes;
    } else {
      return static_cast<bool>(r);
    }
  };
  DirectionLaws out;
  out.reflexive = holds(c, c) && holds(d, d) && holds(e, e);
  out.transitive = !(holds(e, d) && holds(d, c)) || holds(e, c);
  const Elem u = upper(c, d);
  out.upper_bound_follows = holds(u, c) && holds(u, d);
  return out;
}

}  // namespace hkint
