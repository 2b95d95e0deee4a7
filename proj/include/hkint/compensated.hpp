#pragma once

#ifdef __FAST_MATH__
#error "hkint requires IEEE semantics; -ffast-math would remove the compensation terms"
#endif

#include <cmath>
#include <concepts>

namespace hkint {

/// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays exact when
/// an addend is larger in magnitude than the running sum, which happens
/// constantly in Riemann sums whose cells span many orders of magnitude.
template <std::floating_point T>
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;

  constexpr void add(T v) noexcept {
    const T t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  constexpr CompensatedSum& operator+=(T v) noexcept {
    add(v);
    return *this;
  }

  constexpr T value() const noexcept { return sum_ + comp_; }

 private:
  T sum_{0};
  T comp_{0};
};

}  // namespace hkint
