#include "hdual/system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "hdual/errors.hpp"
#include "hdual/phase.hpp"

namespace hdual {

const char* to_string(Side s) { return s == Side::B ? "B" : "L"; }

Side side_from_string(const std::string& s) {
  if (s == "B" || s == "b") return Side::B;
  if (s == "L" || s == "l") return Side::L;
  throw std::invalid_argument("side must be B or L, got '" + s + "'");
}

// ---------------------------------------------------------------- ComplexMatrix

ComplexMatrix::ComplexMatrix(const std::vector<std::vector<value_type>>& rows) : n_(rows.size()), a_() {
  a_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw std::invalid_argument("complex matrix must be square");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

double ComplexMatrix::unitarity_error() const {
  double worst = 0.0;
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t k = 0; k < n_; ++k) {
      value_type s = 0.0;
      for (std::size_t i = 0; i < n_; ++i) s += std::conj((*this)(i, j)) * (*this)(i, k);
      if (j == k) s -= 1.0;
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

double ComplexMatrix::modulus_error() const {
  if (n_ == 0) return 0.0;
  const double target = 1.0 / std::sqrt(static_cast<double>(n_));
  double worst = 0.0;
  for (const auto& z : a_) worst = std::max(worst, std::abs(std::abs(z) - target));
  return worst;
}

bool ComplexMatrix::is_hadamard(double unitary_tol, double modulus_tol) const {
  return modulus_error() < modulus_tol && unitarity_error() < unitary_tol;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& o) const {
  if (o.n_ != n_) throw std::invalid_argument("matrix size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i) worst = std::max(worst, std::abs(a_[i] - o.a_[i]));
  return worst;
}

ComplexMatrix fourier_matrix(std::size_t n) {
  ComplexMatrix F(n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      F(j, k) = s * exp_2pi_i(Rational(static_cast<long>((j * k) % n), static_cast<long>(n)));
  return F;
}

// ---------------------------------------------------------------- HadamardSystem

HadamardSystem::HadamardSystem(RMatrix R, DigitSet B, DigitSet L)
    : R_(std::move(R)), B_(std::move(B)), L_(std::move(L)) {
  RT_ = R_.transpose();
  R_inv_ = R_.inverse();
  RT_inv_ = RT_.inverse();
}

SideView HadamardSystem::view(Side s) const {
  if (s == Side::B) return {B_, L_, RT_, RT_inv_};
  return {L_, B_, R_, R_inv_};
}

HadamardSystem HadamardSystem::create(const RMatrix& R, DigitSet B, DigitSet L) {
  ValidationReport rep = validate(R, B, L);
  if (!rep.ok()) {
    std::string msg = "not a Hadamard system:";
    for (const auto& f : rep.failures) msg += " [" + f.check + "] " + f.detail + ";";
    throw std::invalid_argument(msg);
  }
  return std::move(*rep.system);
}

bool ValidationReport::has_failure(const std::string& check) const {
  return std::any_of(failures.begin(), failures.end(), [&](const auto& f) { return f.check == check; });
}

namespace {

void check_digits(const char* name, const DigitSet& D, std::size_t d, ValidationReport& rep) {
  if (std::none_of(D.begin(), D.end(), [](const RVector& v) { return v.is_zero(); }))
    rep.failures.push_back({std::string("zero-in-") + name, std::string(name) + " does not contain 0", {}});
  std::set<RVector> seen;
  for (const auto& v : D) {
    if (v.dim() != d) throw std::invalid_argument(std::string("digit dimension mismatch in ") + name);
    if (!seen.insert(v).second)
      rep.failures.push_back({std::string("duplicate-") + name, "digit " + v.str() + " appears twice", {}});
  }
}

ComplexMatrix raw_hadamard(const RMatrix& R_inv, const DigitSet& B, const DigitSet& L) {
  const std::size_t n = B.size();
  ComplexMatrix H(n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const RVector rb = R_inv * B[i];
    for (std::size_t j = 0; j < n; ++j) H(i, j) = s * exp_2pi_i(dot(rb, L[j]));
  }
  return H;
}

}  // namespace

ValidationReport validate(const RMatrix& R, const DigitSet& B, const DigitSet& L) {
  ValidationReport rep;
  const std::size_t d = R.dim();
  if (d == 0) throw std::invalid_argument("R must be a non-empty square matrix");
  if (B.empty() || L.empty()) throw std::invalid_argument("digit sets must be non-empty");

  check_digits("B", B, d, rep);
  check_digits("L", L, d, rep);
  if (B.size() != L.size())
    rep.failures.push_back({"cardinality",
                            "#B = " + std::to_string(B.size()) + " differs from #L = " + std::to_string(L.size()),
                            {}});

  const bool integer_R = R.is_integer();
  if (!integer_R) rep.failures.push_back({"R-integer", "R has non-integer entries", {}});

  bool invertible = !R.determinant().is_zero();
  if (!invertible) {
    rep.failures.push_back({"R-expansive", "R is singular", {}});
  } else {
    try {
      if (!is_expansive(R)) rep.failures.push_back({"R-expansive", "R has an eigenvalue of modulus <= 1", {}});
    } catch (const UndecidedError& e) {
      rep.failures.push_back({"R-expansive", std::string("undecided: ") + e.what(), {}});
    }
  }

  if (integer_R) {
    for (std::size_t i = 0; i < B.size(); ++i)
      for (std::size_t j = 0; j < L.size(); ++j)
        if (!integrality_forever(R, B[i], L[j]))
          rep.failures.push_back({"integrality",
                                  "R^k b.l is not an integer for some k >= 0 (b = " + B[i].str() +
                                      ", l = " + L[j].str() + ")",
                                  std::pair{i, j}});
  }

  if (invertible && B.size() == L.size()) {
    const ComplexMatrix H = raw_hadamard(R.inverse(), B, L);
    const double err = H.unitarity_error();
    if (!(err < 1e-10))
      rep.failures.push_back({"unitarity", "max |(H*H - I)_jk| = " + std::to_string(err) + " >= 1e-10", {}});
  }

  for (const auto& b : B)
    if (!b.is_integer()) {
      rep.notes.push_back("B is not contained in Z^d (digit " + b.str() + ")");
      break;
    }

  if (rep.ok()) rep.system = HadamardSystem(R, B, L);
  return rep;
}

ComplexMatrix hadamard_matrix(const HadamardSystem& sys) {
  return raw_hadamard(sys.view(Side::L).scale_inverse, sys.B(), sys.L());
}

// ---------------------------------------------------------------- closure operations

ComplexMatrix tensor(const ComplexMatrix& U, const ComplexMatrix& V) {
  const std::size_t n = U.size(), m = V.size();
  ComplexMatrix W(n * m);
  for (std::size_t iv = 0; iv < m; ++iv)
    for (std::size_t iu = 0; iu < n; ++iu)
      for (std::size_t jv = 0; jv < m; ++jv)
        for (std::size_t ju = 0; ju < n; ++ju) W(iu + n * iv, ju + n * jv) = U(iu, ju) * V(iv, jv);
  return W;
}

namespace {

void check_permutation(const std::vector<std::size_t>& perm, std::size_t n) {
  if (perm.size() != n) throw std::invalid_argument("permutation has wrong length");
  std::vector<bool> hit(n, false);
  for (auto p : perm) {
    if (p >= n || hit[p]) throw std::invalid_argument("invalid permutation");
    hit[p] = true;
  }
}

void check_still_hadamard(const ComplexMatrix& before, const ComplexMatrix& after) {
  if (before.is_hadamard() && !after.is_hadamard())
    throw VerificationFailure("closure operation destroyed the Hadamard property");
}

}  // namespace

ComplexMatrix permute_rows(const ComplexMatrix& M, const std::vector<std::size_t>& perm) {
  check_permutation(perm, M.size());
  ComplexMatrix out(M.size());
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M.size(); ++j) out(i, j) = M(perm[i], j);
  check_still_hadamard(M, out);
  return out;
}

ComplexMatrix permute_cols(const ComplexMatrix& M, const std::vector<std::size_t>& perm) {
  check_permutation(perm, M.size());
  ComplexMatrix out(M.size());
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M.size(); ++j) out(i, j) = M(i, perm[j]);
  check_still_hadamard(M, out);
  return out;
}

ComplexMatrix phase_row(const ComplexMatrix& M, std::size_t row, std::complex<double> phase) {
  if (row >= M.size()) throw std::invalid_argument("row index out of range");
  if (std::abs(std::abs(phase) - 1.0) > 1e-12) throw std::invalid_argument("phase must have modulus 1");
  ComplexMatrix out = M;
  for (std::size_t j = 0; j < M.size(); ++j) out(row, j) *= phase;
  check_still_hadamard(M, out);
  return out;
}

// ---------------------------------------------------------------- constructors

DigitSet digits_1d(const std::vector<Rational>& values) {
  DigitSet D;
  D.reserve(values.size());
  for (const auto& v : values) D.push_back(RVector{v});
  return D;
}

HadamardSystem standard_system(int N, int q) {
  if (q <= 1) throw std::invalid_argument("standard_system: q must be > 1");
  if (N < 1) throw std::invalid_argument("standard_system: N must be >= 1");
  std::vector<Rational> B, L;
  for (int k = 0; k < N; ++k) {
    B.emplace_back(k * q);
    L.emplace_back(k);
  }
  return HadamardSystem::create(RMatrix::scalar(1, Rational(q) * Rational(N)), digits_1d(B), digits_1d(L));
}

}  // namespace hdual
