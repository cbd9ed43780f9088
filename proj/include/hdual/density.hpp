#pragma once

// Window counts of one-dimensional Γ sets and lower estimates of the
// fractional upper Beurling density
//   D_alpha^+(Λ) = limsup_h sup_x #(Λ ∩ (x + h[-1,1])) / h^alpha,
// restricted to x = center and an explicit h sequence.

#include <cstddef>
#include <vector>

#include "hdual/algebra.hpp"
#include "hdual/fourier.hpp"

namespace hdual {

/// Smallest level m such that no point of levels > m lies in
/// [center - h, center + h]: S^{m+1} min_{d > 0} d > center + h.
/// Needs d = 1, a scalar scale > 1 and nonnegative digits.
int required_level(const DigitSet& digits, const RMatrix& scale, const Rational& center, const Rational& h);

/// Exact #(Γ ∩ [center - h, center + h]).
/// Throws std::invalid_argument for h < 0 or unsupported data, and
/// LevelInsufficient when the window reaches points beyond gamma.level.
std::size_t count_in_window(const GammaLevel& gamma, const RVector& center, const Rational& h);

struct DensitySample {
  Rational h;
  std::size_t count = 0;
  double ratio = 0.0;  ///< count / h^alpha
};

struct DensityEstimate {
  double alpha = 0.0;
  std::vector<DensitySample> samples;  ///< in the order of the h sequence
  double lower_bound = 0.0;            ///< max ratio
};

/// Counts around 0 for each h > 0, building the smallest Γ level that covers
/// the largest window. Throws std::invalid_argument unless 0 < alpha <= 1
/// and every h is positive.
DensityEstimate beurling_lower_estimate(const DigitSet& digits, const RMatrix& scale, double alpha,
                                        const std::vector<Rational>& h_sequence);

/// (r^n - 1)/(r - 1) * q for n = 1..n_max: the windows on which Γ({0, q}, r)
/// level n - 1 is exactly covered.
std::vector<Rational> geometric_windows(long r, long q, int n_max);

}  // namespace hdual
