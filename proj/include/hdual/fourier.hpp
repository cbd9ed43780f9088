#pragma once

// Fourier data of the two dual measures: the digit characters chi, the
// infinite-product transform mu_hat with a certified truncation error, finite
// levels of the frequency sets Γ, partial sums of the spectral functions, the
// duality transform and the transfer operators.

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hdual/algebra.hpp"
#include "hdual/system.hpp"

namespace hdual {

/// (1/N) sum_d exp(2 pi i d.t). For exact t the angle is reduced mod 1 first.
std::complex<double> chi(const DigitSet& digits, const RVector& t);
std::complex<double> chi(const DigitSet& digits, const std::vector<double>& t);

/// |chi(x)| = 1, decided exactly: with 0 among the digits this holds iff
/// d.x is an integer for every digit d.
bool chi_is_extreme(const DigitSet& digits, const RVector& x);

struct MuHatResult {
  std::complex<double> value;
  int truncation_K = 0;
  double error_bound = 0.0;  ///< certified bound on |value - mu_hat(t)|
};

/// Evaluates prod_{k>=1} chi(S^{-k} t) for a fixed digit set and scale S.
///
/// Truncation after K factors. Each dropped factor satisfies
///   |chi(s) - 1| <= 2 pi max_d |d.s| <= 2 pi max_d ||d||_1 ||s||_inf,
/// and ||S^{-k} t||_inf <= ||S^{-k}||_inf ||t||_inf. Because every factor has
/// modulus <= 1, |prod a_k - prod_{k<=K} a_k| <= sum_{k>K} |a_k - 1|, giving
///   error <= 2 pi max_d ||d||_1 ||t||_inf sum_{k>K} ||S^{-k}||_inf,
/// with the sum bounded by TailBoundTable. The reported bound adds
/// K (N + 8) eps for floating-point rounding in the kept factors.
class MuHatEvaluator {
 public:
  MuHatEvaluator(DigitSet digits, const RMatrix& scale, int max_K = 200);

  /// Throws CapExceeded if no K <= max_K certifies `tol`.
  [[nodiscard]] MuHatResult operator()(const RVector& t, double tol) const;

  [[nodiscard]] const DigitSet& digits() const { return digits_; }
  [[nodiscard]] const RMatrix& scale_inverse() const { return inv_; }

 private:
  DigitSet digits_;
  RMatrix inv_;
  std::vector<double> tail_;  // tail_[K] >= sum_{k>K} ||S^{-k}||, rounded up
  double digit_l1_ = 0.0;
};

/// mu_hat_B(t) = prod chi_B((R^T)^{-k} t) for Side::B,
/// mu_hat_L(t) = prod chi_L(R^{-k} t) for Side::L.
MuHatResult mu_hat(const HadamardSystem& sys, Side side, const RVector& t, double tol = 1e-12);
MuHatEvaluator make_mu_hat(const HadamardSystem& sys, Side side);

/// mu_hat(t) = chi(S^{-1} t) mu_hat(S^{-1} t), checked within the two
/// certified error bounds.
bool mu_hat_functional_check(const HadamardSystem& sys, Side side, const RVector& t, double tol = 1e-12);

/// { sum_{k=0..n} S^k d_k : d_k in digits }, listed in lexicographic order of
/// the digit-index word (d_n, ..., d_0). Level n-1 is therefore a prefix of
/// level n.
struct GammaLevel {
  DigitSet digits;
  RMatrix scale;
  int level = 0;
  std::vector<RVector> points;
};

/// Throws CapExceeded when N^{n+1} > cap and DuplicatePointError, naming both
/// digit words, if two words give the same point.
GammaLevel gamma_level(const DigitSet& digits, const RMatrix& scale, int n, std::size_t cap = 10'000'000);
/// Γ_n(L) (scale R^T) for Side::B, Γ_n(B) (scale R) for Side::L.
GammaLevel gamma_level(const HadamardSystem& sys, Side side, int n, std::size_t cap = 10'000'000);

struct SigmaSample {
  RVector t;
  int level = 0;
  double value = 0.0;
  double muhat_error_budget = 0.0;  ///< bound on |value - exact level-n partial sum|
};

/// sum_{γ in Γ_n} |mu_hat(t + γ)|^2 on the given side, in Γ-level order.
SigmaSample sigma_partial(const HadamardSystem& sys, Side side, const RVector& t, int n, double tol = 1e-13);

/// Same, reusing a precomputed level and evaluator.
SigmaSample sigma_partial(const MuHatEvaluator& mu, const GammaLevel& gamma, const RVector& t, double tol = 1e-13);

struct DualityReport {
  std::vector<std::string> violations;  ///< failed hypotheses, one entry each
  bool gamma_sets_equal = false;        ///< G Γ_n(B) == Γ_n(L) exactly
  SigmaSample sigma_B_side;             ///< σ^{(B)}_{Γ(L)}(G t)
  SigmaSample sigma_L_side;             ///< σ^{(L)}_{Γ(B)}(t)
  double difference = 0.0;
  bool ok = false;
};

/// Checks R = R^T, G = G^T, G invertible, GR = RG and G(B) = L exactly, then
/// compares the two level-n partial sums. `ok` requires every hypothesis, the
/// exact Γ identity, and agreement within the summed error budgets.
DualityReport duality_check(const HadamardSystem& sys, const RMatrix& G, const RVector& t, int n,
                            double tol = 1e-13);

/// True iff { G γ : γ in from } equals `to` as a set.
bool maps_onto(const RMatrix& G, const std::vector<RVector>& from, const std::vector<RVector>& to);

/// One application of the transfer operator of `side`:
///   (T f)(t) = sum_{o} |chi_M(tau_o t)|^2 f(tau_o t),  tau_o t = S^{-1}(t + o),
/// with M the measure digits and o running over the frequency digits.
double transfer_apply(const HadamardSystem& sys, Side side, const std::function<double(const RVector&)>& f,
                      const RVector& t);

}  // namespace hdual
