#include "hdual/density.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "hdual/errors.hpp"

namespace hdual {

namespace {

Rational scalar_scale(const RMatrix& scale) {
  if (scale.dim() != 1) throw std::invalid_argument("density: only dimension one is supported");
  const Rational r = scale(0, 0);
  if (r <= Rational(1)) throw std::invalid_argument("density: scale must be > 1");
  return r;
}

Rational min_positive_digit(const DigitSet& digits) {
  std::optional<Rational> best;
  for (const auto& d : digits) {
    if (d.dim() != 1) throw std::invalid_argument("density: only dimension one is supported");
    if (d[0].sign() < 0) throw std::invalid_argument("density: digits must be nonnegative");
    if (d[0].sign() > 0 && (!best || d[0] < *best)) best = d[0];
  }
  if (!best) throw std::invalid_argument("density: no positive digit");
  return *best;
}

}  // namespace

int required_level(const DigitSet& digits, const RMatrix& scale, const Rational& center, const Rational& h) {
  const Rational r = scalar_scale(scale);
  const Rational top = center + h;
  Rational next = min_positive_digit(digits) * r;  // smallest point first added at level 1
  int m = 0;
  while (next <= top) {
    next *= r;
    ++m;
  }
  return m;
}

std::size_t count_in_window(const GammaLevel& gamma, const RVector& center, const Rational& h) {
  if (h.sign() < 0) throw std::invalid_argument("count_in_window: h must be >= 0");
  if (center.dim() != 1) throw std::invalid_argument("count_in_window: only dimension one is supported");
  const int need = required_level(gamma.digits, gamma.scale, center[0], h);
  if (gamma.level < need)
    throw LevelInsufficient("count_in_window: window needs level " + std::to_string(need) + ", have " +
                                std::to_string(gamma.level),
                            need);
  const Rational lo = center[0] - h, hi = center[0] + h;
  return static_cast<std::size_t>(std::count_if(gamma.points.begin(), gamma.points.end(), [&](const RVector& x) {
    return lo <= x[0] && x[0] <= hi;
  }));
}

DensityEstimate beurling_lower_estimate(const DigitSet& digits, const RMatrix& scale, double alpha,
                                        const std::vector<Rational>& h_sequence) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  DensityEstimate est;
  est.alpha = alpha;
  if (h_sequence.empty()) return est;

  const RVector origin{Rational(0)};
  int level = 0;
  for (const auto& h : h_sequence) {
    if (h.sign() <= 0) throw std::invalid_argument("beurling_lower_estimate: h must be positive");
    level = std::max(level, required_level(digits, scale, Rational(0), h));
  }
  const GammaLevel gamma = gamma_level(digits, scale, level);
  for (const auto& h : h_sequence) {
    DensitySample s{h, count_in_window(gamma, origin, h), 0.0};
    s.ratio = static_cast<double>(s.count) / std::pow(h.to_double(), alpha);
    est.lower_bound = std::max(est.lower_bound, s.ratio);
    est.samples.push_back(std::move(s));
  }
  return est;
}

std::vector<Rational> geometric_windows(long r, long q, int n_max) {
  if (r <= 1) throw std::invalid_argument("geometric_windows: r must be > 1");
  std::vector<Rational> out;
  BigInt power = r;
  for (int n = 1; n <= n_max; ++n) {
    out.emplace_back(BigInt((power - 1) / (r - 1) * q));
    power *= r;
  }
  return out;
}

}  // namespace hdual
