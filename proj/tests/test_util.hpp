#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qsplit/state.hpp"

namespace qsplit::test {

inline constexpr double kPi = std::numbers::pi;
inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// max_i |s.amp(i) - want[i]|
inline double max_amp_diff(const StateVector& s, const std::vector<Amp>& want) {
  double worst = 0.0;
  for (std::size_t i = 0; i < want.size(); ++i) worst = std::max(worst, std::abs(s.amp(i) - want[i]));
  if (s.dim() != want.size()) return 1.0;
  return worst;
}

inline double max_amp_diff(const StateVector& a, const StateVector& b) {
  return max_amp_diff(a, b.amps());
}

// Distance after removing the global phase: min over λ of max_i |a_i - λ b_i|,
// realized by aligning the largest-magnitude component.
inline double phase_aligned_diff(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) return 1.0;
  std::size_t pivot = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < b.dim(); ++i)
    if (std::abs(b.amp(i)) > best) {
      best = std::abs(b.amp(i));
      pivot = i;
    }
  if (best == 0.0) return 1.0;
  const Amp lambda = a.amp(pivot) / b.amp(pivot);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    worst = std::max(worst, std::abs(a.amp(i) - lambda * b.amp(i)));
  return std::max(worst, std::abs(std::abs(lambda) - 1.0));
}

}  // namespace qsplit::test
