#include "hdual/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "hdual/errors.hpp"
#include "hdual/phase.hpp"

namespace hdual {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

double round_up(const Rational& r) {
  double d = r.to_double();
  if (Rational::from_double(d) < r) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}
}  // namespace

std::complex<double> chi(const DigitSet& digits, const RVector& t) {
  std::complex<double> s = 0.0;
  for (const auto& d : digits) s += exp_2pi_i(dot(d, t));
  return s / static_cast<double>(digits.size());
}

std::complex<double> chi(const DigitSet& digits, const std::vector<double>& t) {
  std::complex<double> s = 0.0;
  for (const auto& d : digits) {
    if (d.dim() != t.size()) throw std::invalid_argument("chi: dimension mismatch");
    double a = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) a += d[i].to_double() * t[i];
    s += exp_2pi_i(a);
  }
  return s / static_cast<double>(digits.size());
}

bool chi_is_extreme(const DigitSet& digits, const RVector& x) {
  return std::all_of(digits.begin(), digits.end(), [&](const RVector& d) { return dot(d, x).is_integer(); });
}

// ---------------------------------------------------------------- mu_hat

MuHatEvaluator::MuHatEvaluator(DigitSet digits, const RMatrix& scale, int max_K)
    : digits_(std::move(digits)), inv_(scale.inverse()) {
  TailBoundTable table(scale);
  tail_.reserve(static_cast<std::size_t>(max_K) + 1);
  for (int K = 0; K <= max_K; ++K) tail_.push_back(round_up(table.bound(K)));
  Rational l1;
  for (const auto& d : digits_) l1 = std::max(l1, d.l1());
  digit_l1_ = round_up(l1);
}

MuHatResult MuHatEvaluator::operator()(const RVector& t, double tol) const {
  if (!(tol > 0.0)) throw std::invalid_argument("mu_hat: tol must be positive");
  // Inflated slightly so floating-point products never understate the bound.
  const double coeff = 2.0 * std::numbers::pi * digit_l1_ * round_up(t.max_abs()) * (1.0 + 1e-12);

  int K = 0;
  while (coeff * tail_[static_cast<std::size_t>(K)] >= tol) {
    if (++K >= static_cast<int>(tail_.size()))
      throw CapExceeded("mu_hat: tolerance cannot be certified within " + std::to_string(tail_.size() - 1) +
                        " factors");
  }

  std::complex<double> v = 1.0;
  RVector s = t;
  for (int k = 1; k <= K; ++k) {
    s = inv_ * s;
    v *= chi(digits_, s);
  }
  const double rounding = K * (static_cast<double>(digits_.size()) + 8.0) * kEps;
  return {v, K, coeff * tail_[static_cast<std::size_t>(K)] + rounding};
}

MuHatEvaluator make_mu_hat(const HadamardSystem& sys, Side side) {
  const SideView v = sys.view(side);
  return MuHatEvaluator(v.measure_digits, v.scale);
}

MuHatResult mu_hat(const HadamardSystem& sys, Side side, const RVector& t, double tol) {
  return make_mu_hat(sys, side)(t, tol);
}

bool mu_hat_functional_check(const HadamardSystem& sys, Side side, const RVector& t, double tol) {
  const MuHatEvaluator mu = make_mu_hat(sys, side);
  const RVector s = mu.scale_inverse() * t;
  const MuHatResult lhs = mu(t, tol);
  const MuHatResult tail = mu(s, tol);
  const std::complex<double> rhs = chi(mu.digits(), s) * tail.value;
  const double allowance = lhs.error_bound + tail.error_bound + 16.0 * kEps;
  return std::abs(lhs.value - rhs) <= allowance;
}

// ---------------------------------------------------------------- Γ levels

GammaLevel gamma_level(const DigitSet& digits, const RMatrix& scale, int n, std::size_t cap) {
  if (n < 0) throw std::invalid_argument("gamma_level: n must be >= 0");
  if (digits.empty()) throw std::invalid_argument("gamma_level: empty digit set");
  const std::size_t N = digits.size();
  double total = std::pow(static_cast<double>(N), n + 1);
  if (total > static_cast<double>(cap))
    throw CapExceeded("gamma_level: " + std::to_string(N) + "^" + std::to_string(n + 1) + " points exceed cap " +
                      std::to_string(cap));

  GammaLevel g{digits, scale, n, {}};
  g.points.reserve(static_cast<std::size_t>(total));
  g.points = digits;
  RMatrix power = RMatrix::identity(scale.dim());
  for (int m = 1; m <= n; ++m) {
    power = power * scale;
    const std::size_t prev = g.points.size();
    for (std::size_t i = 1; i < N; ++i) {
      const RVector shift = power * digits[i];
      for (std::size_t j = 0; j < prev; ++j) g.points.push_back(g.points[j] + shift);
    }
    // digit index 0 contributes S^m d_0; with d_0 != 0 every earlier point moves
    if (!digits[0].is_zero()) {
      const RVector shift = power * digits[0];
      for (std::size_t j = 0; j < prev; ++j) g.points[j] += shift;
    }
  }

  std::unordered_map<RVector, std::size_t, RVectorHash> seen;
  seen.reserve(g.points.size());
  for (std::size_t idx = 0; idx < g.points.size(); ++idx) {
    auto [it, fresh] = seen.emplace(g.points[idx], idx);
    if (!fresh) {
      auto word = [&](std::size_t k) {
        std::string w;
        for (int m = n; m >= 0; --m) {
          std::size_t p = 1;
          for (int e = 0; e < m; ++e) p *= N;
          w += (m == n ? "" : ",") + digits[(k / p) % N].str();
        }
        return "(" + w + ")";
      };
      throw DuplicatePointError("gamma_level: words " + word(it->second) + " and " + word(idx) +
                                " (most significant first) both give " + g.points[idx].str());
    }
  }
  return g;
}

GammaLevel gamma_level(const HadamardSystem& sys, Side side, int n, std::size_t cap) {
  const SideView v = sys.view(side);
  return gamma_level(v.frequency_digits, v.scale, n, cap);
}

// ---------------------------------------------------------------- spectral functions

SigmaSample sigma_partial(const MuHatEvaluator& mu, const GammaLevel& gamma, const RVector& t, double tol) {
  SigmaSample s{t, gamma.level, 0.0, 0.0};
  for (const auto& g : gamma.points) {
    const MuHatResult r = mu(t + g, tol);
    const double a = std::abs(r.value);
    s.value += a * a;
    s.muhat_error_budget += (2.0 * a + r.error_bound) * r.error_bound;
  }
  s.muhat_error_budget += static_cast<double>(gamma.points.size()) * kEps * std::max(1.0, s.value);
  return s;
}

SigmaSample sigma_partial(const HadamardSystem& sys, Side side, const RVector& t, int n, double tol) {
  return sigma_partial(make_mu_hat(sys, side), gamma_level(sys, side, n), t, tol);
}

bool maps_onto(const RMatrix& G, const std::vector<RVector>& from, const std::vector<RVector>& to) {
  std::set<RVector> image;
  for (const auto& x : from) image.insert(G * x);
  return image == std::set<RVector>(to.begin(), to.end());
}

DualityReport duality_check(const HadamardSystem& sys, const RMatrix& G, const RVector& t, int n, double tol) {
  DualityReport rep;
  const RMatrix& R = sys.R();
  if (G.dim() != R.dim()) throw std::invalid_argument("duality_check: G has the wrong dimension");
  if (!R.is_symmetric()) rep.violations.emplace_back("R is not symmetric");
  if (!G.is_symmetric()) rep.violations.emplace_back("G is not symmetric");
  if (G.determinant().is_zero()) rep.violations.emplace_back("G is singular");
  if (!(G * R == R * G)) rep.violations.emplace_back("G does not commute with R");
  if (!maps_onto(G, sys.B(), sys.L())) rep.violations.emplace_back("G(B) differs from L");
  if (!rep.violations.empty()) return rep;

  const GammaLevel gb = gamma_level(sys, Side::L, n);  // Γ_n(B)
  const GammaLevel gl = gamma_level(sys, Side::B, n);  // Γ_n(L)
  rep.gamma_sets_equal = maps_onto(G, gb.points, gl.points);

  rep.sigma_L_side = sigma_partial(make_mu_hat(sys, Side::L), gb, t, tol);
  rep.sigma_B_side = sigma_partial(make_mu_hat(sys, Side::B), gl, G * t, tol);
  rep.difference = std::abs(rep.sigma_L_side.value - rep.sigma_B_side.value);
  rep.ok = rep.gamma_sets_equal &&
           rep.difference <= rep.sigma_L_side.muhat_error_budget + rep.sigma_B_side.muhat_error_budget;
  return rep;
}

// ---------------------------------------------------------------- transfer operators

double transfer_apply(const HadamardSystem& sys, Side side, const std::function<double(const RVector&)>& f,
                      const RVector& t) {
  const SideView v = sys.view(side);
  double acc = 0.0;
  for (const auto& o : v.frequency_digits) {
    const RVector s = v.scale_inverse * (t + o);
    const double w = std::norm(chi(v.measure_digits, s));
    if (w != 0.0) acc += w * f(s);
  }
  return acc;
}

}  // namespace hdual
