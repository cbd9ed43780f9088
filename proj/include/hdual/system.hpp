#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdual/algebra.hpp"

namespace hdual {

/// Ordered digit set; the order fixes row and column indexing of the
/// Hadamard matrix.
using DigitSet = std::vector<RVector>;

/// Which of the two dual measures a computation is about.
///
/// Side::B is the measure mu_B. Its candidate spectrum Γ(L) is built from L
/// with scale R^T, its Fourier transform uses chi_B((R^T)^{-k} t), and the
/// obstructions are B-extreme cycles of x -> (R^T)^{-1}(x + l) in X(L).
/// Side::L is the mirror image with B and L swapped and R in place of R^T.
enum class Side { B, L };

const char* to_string(Side s);
Side side_from_string(const std::string& s);

/// Dense N x N complex matrix. Display and unitarity checks only.
class ComplexMatrix {
 public:
  using value_type = std::complex<double>;

  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), a_(n * n) {}
  explicit ComplexMatrix(const std::vector<std::vector<value_type>>& rows);

  [[nodiscard]] std::size_t size() const { return n_; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  value_type& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  /// max_{jk} |(M* M - I)_{jk}|
  [[nodiscard]] double unitarity_error() const;
  /// max_{jk} | |M_{jk}| - 1/sqrt(N) |
  [[nodiscard]] double modulus_error() const;
  [[nodiscard]] bool is_hadamard(double unitary_tol = 1e-10, double modulus_tol = 1e-12) const;
  [[nodiscard]] double max_abs_diff(const ComplexMatrix& o) const;

 private:
  std::size_t n_ = 0;
  std::vector<value_type> a_;
};

/// The Fourier matrix of Z_N, (1/sqrt N)(zeta^{jk}).
ComplexMatrix fourier_matrix(std::size_t n);

/// The three views of a system seen from one side.
struct SideView {
  const DigitSet& measure_digits;    ///< digits of the measure (B for Side::B)
  const DigitSet& frequency_digits;  ///< digits of Γ and of the dual IFS (L for Side::B)
  const RMatrix& scale;              ///< R^T for Side::B, R for Side::L
  const RMatrix& scale_inverse;
};

struct ValidationReport;

/// A validated Hadamard triple (R, B, L). Only `validate` and `create` make one.
class HadamardSystem {
 public:
  /// Throws std::invalid_argument listing the failed checks.
  static HadamardSystem create(const RMatrix& R, DigitSet B, DigitSet L);

  [[nodiscard]] const RMatrix& R() const { return R_; }
  [[nodiscard]] const RMatrix& RT() const { return RT_; }
  [[nodiscard]] const DigitSet& B() const { return B_; }
  [[nodiscard]] const DigitSet& L() const { return L_; }
  [[nodiscard]] std::size_t N() const { return B_.size(); }
  [[nodiscard]] std::size_t dim() const { return R_.dim(); }
  [[nodiscard]] SideView view(Side s) const;

 private:
  friend ValidationReport validate(const RMatrix& R, const DigitSet& B, const DigitSet& L);
  HadamardSystem(RMatrix R, DigitSet B, DigitSet L);

  RMatrix R_, RT_, R_inv_, RT_inv_;
  DigitSet B_, L_;
};

struct ValidationFailure {
  std::string check;   ///< "R-integer", "unitarity", ...
  std::string detail;
  std::optional<std::pair<std::size_t, std::size_t>> pair;  ///< (b index, l index)
};

struct ValidationReport {
  std::vector<ValidationFailure> failures;
  std::vector<std::string> notes;  ///< informational, never affect ok()
  std::optional<HadamardSystem> system;

  [[nodiscard]] bool ok() const { return failures.empty(); }
  [[nodiscard]] bool has_failure(const std::string& check) const;
};

/// Runs every Hadamard-system check and builds the system when all pass.
/// Failed checks are reported, not thrown; inconsistent dimensions or empty
/// digit sets throw std::invalid_argument.
ValidationReport validate(const RMatrix& R, const DigitSet& B, const DigitSet& L);

/// (1/sqrt N)(exp(2 pi i R^{-1} b . l))_{b in B, l in L}; angles are reduced
/// mod 1 exactly before exponentiation.
ComplexMatrix hadamard_matrix(const HadamardSystem& sys);

/// Tensor product with the first factor's index varying fastest:
/// W(iu + N iv, ju + N jv) = U(iu, ju) V(iv, jv) for U of size N.
ComplexMatrix tensor(const ComplexMatrix& U, const ComplexMatrix& V);

/// Row i of the result is row perm[i] of the input. Throws std::invalid_argument
/// if `perm` is not a permutation of 0..N-1.
ComplexMatrix permute_rows(const ComplexMatrix& M, const std::vector<std::size_t>& perm);
/// Column j of the result is column perm[j] of the input.
ComplexMatrix permute_cols(const ComplexMatrix& M, const std::vector<std::size_t>& perm);
/// Multiplies one row by a unimodular phase.
ComplexMatrix phase_row(const ComplexMatrix& M, std::size_t row, std::complex<double> phase);

/// R = qN, B = {0, q, ..., (N-1)q}, L = {0, ..., N-1} in dimension one.
/// Throws std::invalid_argument for q <= 1 or N < 1.
HadamardSystem standard_system(int N, int q);

/// Convenience for one-dimensional data.
DigitSet digits_1d(const std::vector<Rational>& values);

}  // namespace hdual
