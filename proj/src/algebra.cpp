#include "hdual/algebra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "hdual/errors.hpp"

namespace hdual {

// ---------------------------------------------------------------- Rational

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("not a rational number: '" + s + "'"); };
  if (s.empty()) throw bad();
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt n, d;
    if (n.set_str(s.substr(0, slash), 10) != 0 || d.set_str(s.substr(slash + 1), 10) != 0) throw bad();
    return {n, d};
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string fracpart = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (neg || (!whole.empty() && whole[0] == '+')) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    if (fracpart.empty() || fracpart.find_first_not_of("0123456789") != std::string::npos ||
        whole.find_first_not_of("0123456789") != std::string::npos)
      throw bad();
    BigInt n;
    if (n.set_str(whole + fracpart, 10) != 0) throw bad();
    BigInt d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, fracpart.size());
    return {neg ? BigInt(-n) : n, d};
  }
  BigInt n;
  if (s[0] == '+') s.erase(0, 1);
  if (s.empty() || n.set_str(s, 10) != 0) throw bad();
  return Rational(n);
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite double has no rational value");
  Rational r;
  r.q_ = mpq_class(v);
  return r;
}

BigInt Rational::floor() const {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Rational Rational::frac() const { return *this - Rational(floor()); }

Rational Rational::abs() const {
  Rational r;
  r.q_ = ::abs(q_);
  return r;
}

std::string Rational::str() const { return q_.get_str(10); }

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational operator-(const Rational& a) {
  Rational r;
  r.q_ = -a.q_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c = cmp(a.q_, b.q_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

namespace {
std::size_t hash_mpz(mpz_srcptr z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) * 0x9e3779b97f4a7c15ULL;
  for (std::size_t i = 0; i < mpz_size(z); ++i) {
    h ^= std::hash<mp_limb_t>{}(mpz_getlimbn(z, static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}
}  // namespace

std::size_t Rational::hash() const {
  std::size_t h = hash_mpz(q_.get_num_mpz_t());
  return h ^ (hash_mpz(q_.get_den_mpz_t()) * 31 + 0x7f4a7c15);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

// ---------------------------------------------------------------- RVector

RVector RVector::from_doubles(const std::vector<double>& v) {
  RVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational::from_double(v[i]);
  return r;
}

bool RVector::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](const Rational& x) { return x.is_zero(); });
}

bool RVector::is_integer() const {
  return std::all_of(v_.begin(), v_.end(), [](const Rational& x) { return x.is_integer(); });
}

Rational RVector::max_abs() const {
  Rational m;
  for (const auto& x : v_) m = std::max(m, x.abs());
  return m;
}

Rational RVector::l1() const {
  Rational s;
  for (const auto& x : v_) s += x.abs();
  return s;
}

std::vector<double> RVector::to_doubles() const {
  std::vector<double> out;
  out.reserve(v_.size());
  for (const auto& x : v_) out.push_back(x.to_double());
  return out;
}

std::string RVector::str() const {
  if (v_.size() == 1) return v_[0].str();
  std::string s = "(";
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (i) s += ", ";
    s += v_[i].str();
  }
  return s + ")";
}

RVector& RVector::operator+=(const RVector& o) {
  if (o.dim() != dim()) throw std::invalid_argument("vector dimension mismatch");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

RVector& RVector::operator-=(const RVector& o) {
  if (o.dim() != dim()) throw std::invalid_argument("vector dimension mismatch");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

RVector operator*(const Rational& s, RVector a) {
  for (auto& x : a.v_) x *= s;
  return a;
}

std::strong_ordering operator<=>(const RVector& a, const RVector& b) {
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t RVector::hash() const {
  std::size_t h = v_.size();
  for (const auto& x : v_) h ^= x.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Rational dot(const RVector& a, const RVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dot: dimension mismatch");
  Rational s;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

// ---------------------------------------------------------------- RMatrix

RMatrix::RMatrix(const std::vector<std::vector<Rational>>& rows) : d_(rows.size()), a_() {
  a_.reserve(d_ * d_);
  for (const auto& r : rows) {
    if (r.size() != d_) throw std::invalid_argument("matrix must be square");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

RMatrix RMatrix::identity(std::size_t dim) { return scalar(dim, 1); }

RMatrix RMatrix::scalar(std::size_t dim, const Rational& s) {
  RMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = s;
  return m;
}

RMatrix RMatrix::diagonal(const std::vector<Rational>& diag) {
  RMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

RMatrix RMatrix::transpose() const {
  RMatrix t(d_);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Rational RMatrix::determinant() const {
  RMatrix w = *this;
  Rational det = 1;
  for (std::size_t c = 0; c < d_; ++c) {
    std::size_t piv = c;
    while (piv < d_ && w(piv, c).is_zero()) ++piv;
    if (piv == d_) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < d_; ++j) std::swap(w(piv, j), w(c, j));
      det = -det;
    }
    det *= w(c, c);
    for (std::size_t r = c + 1; r < d_; ++r) {
      if (w(r, c).is_zero()) continue;
      Rational f = w(r, c) / w(c, c);
      for (std::size_t j = c; j < d_; ++j) w(r, j) -= f * w(c, j);
    }
  }
  return det;
}

RMatrix RMatrix::inverse() const {
  RMatrix w = *this;
  RMatrix inv = identity(d_);
  for (std::size_t c = 0; c < d_; ++c) {
    std::size_t piv = c;
    while (piv < d_ && w(piv, c).is_zero()) ++piv;
    if (piv == d_) throw std::domain_error("matrix is singular");
    if (piv != c) {
      for (std::size_t j = 0; j < d_; ++j) {
        std::swap(w(piv, j), w(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    }
    Rational p = w(c, c);
    for (std::size_t j = 0; j < d_; ++j) {
      w(c, j) /= p;
      inv(c, j) /= p;
    }
    for (std::size_t r = 0; r < d_; ++r) {
      if (r == c || w(r, c).is_zero()) continue;
      Rational f = w(r, c);
      for (std::size_t j = 0; j < d_; ++j) {
        w(r, j) -= f * w(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

RMatrix RMatrix::pow(long k) const {
  RMatrix base = k < 0 ? inverse() : *this;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  RMatrix acc = identity(d_);
  while (e) {
    if (e & 1UL) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

bool RMatrix::is_integer() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return x.is_integer(); });
}

bool RMatrix::is_symmetric() const { return *this == transpose(); }

Rational RMatrix::max_row_sum_norm() const {
  Rational best;
  for (std::size_t i = 0; i < d_; ++i) {
    Rational s;
    for (std::size_t j = 0; j < d_; ++j) s += (*this)(i, j).abs();
    best = std::max(best, s);
  }
  return best;
}

std::string RMatrix::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < d_; ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < d_; ++j) {
      if (j) s += ", ";
      s += (*this)(i, j).str();
    }
    s += "]";
  }
  return s + "]";
}

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
  if (a.d_ != b.d_) throw std::invalid_argument("matrix dimension mismatch");
  RMatrix c(a.d_);
  for (std::size_t i = 0; i < a.d_; ++i)
    for (std::size_t k = 0; k < a.d_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < a.d_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RVector operator*(const RMatrix& a, const RVector& v) {
  if (a.d_ != v.dim()) throw std::invalid_argument("matrix-vector dimension mismatch");
  RVector r(a.d_);
  for (std::size_t i = 0; i < a.d_; ++i)
    for (std::size_t j = 0; j < a.d_; ++j)
      if (!a(i, j).is_zero()) r[i] += a(i, j) * v[j];
  return r;
}

RMatrix operator+(const RMatrix& a, const RMatrix& b) {
  if (a.d_ != b.d_) throw std::invalid_argument("matrix dimension mismatch");
  RMatrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

RMatrix operator-(const RMatrix& a, const RMatrix& b) {
  if (a.d_ != b.d_) throw std::invalid_argument("matrix dimension mismatch");
  RMatrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
  return c;
}

RMatrix operator*(const Rational& s, const RMatrix& a) {
  RMatrix c = a;
  for (auto& x : c.a_) x *= s;
  return c;
}

// ---------------------------------------------------------------- expansiveness

namespace {

constexpr int kExpansiveNormCap = 64;
constexpr double kEigenMargin = 1e-6;

double min_eigen_modulus(const RMatrix& m) {
  const auto d = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = m(i, j).to_double();
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  return es.eigenvalues().cwiseAbs().minCoeff();
}

}  // namespace

bool is_expansive(const RMatrix& m) {
  if (m.dim() == 0) throw std::invalid_argument("is_expansive: empty matrix");
  const Rational det = m.determinant();
  if (det.is_zero()) throw std::domain_error("is_expansive: matrix is singular");

  // Exact certificates of an eigenvalue on or inside the unit circle.
  if (det.abs() <= Rational(1)) return false;
  const RMatrix id = RMatrix::identity(m.dim());
  if ((m - id).determinant().is_zero() || (m + id).determinant().is_zero()) return false;

  const double fast = min_eigen_modulus(m);

  const RMatrix inv = m.inverse();
  RMatrix p = inv;
  for (int k = 1; k <= kExpansiveNormCap; ++k) {
    if (p.max_row_sum_norm() < Rational(1)) return true;
    p = p * inv;
  }
  if (fast < 1.0 - kEigenMargin) return false;
  throw UndecidedError("is_expansive: no power of the inverse up to " + std::to_string(kExpansiveNormCap) +
                       " contracts, smallest eigenvalue modulus ~" + std::to_string(fast));
}

// ---------------------------------------------------------------- tail bounds

TailBoundTable::TailBoundTable(const RMatrix& m, int search_cap) : inv_(m.inverse()) {
  powers_.push_back(RMatrix::identity(m.dim()));
  norms_.emplace_back(1);
  for (int k = 1; k <= search_cap; ++k) {
    powers_.push_back(powers_.back() * inv_);
    norms_.push_back(powers_.back().max_row_sum_norm());
    if (norms_.back() < Rational(1)) {
      m_ = k;
      one_minus_q_ = Rational(1) - norms_.back();
      return;
    }
  }
  throw std::domain_error("matrix is not expansive (no inverse power up to " + std::to_string(search_cap) +
                          " has norm < 1)");
}

void TailBoundTable::extend_to(int k) {
  while (static_cast<int>(norms_.size()) <= k) {
    powers_.push_back(powers_.back() * inv_);
    norms_.push_back(powers_.back().max_row_sum_norm());
  }
}

const Rational& TailBoundTable::norm(int k) {
  if (k < 1) throw std::invalid_argument("norm: k must be >= 1");
  extend_to(k);
  return norms_[static_cast<std::size_t>(k)];
}

Rational TailBoundTable::bound(int k) {
  if (k < 0) throw std::invalid_argument("bound: K must be >= 0");
  while (static_cast<int>(bounds_.size()) <= k) {
    const int K = static_cast<int>(bounds_.size());
    extend_to(K + m_);
    Rational s;
    for (int j = 1; j <= m_; ++j) s += norms_[static_cast<std::size_t>(K + j)];
    s /= one_minus_q_;
    if (!bounds_.empty()) s = std::min(s, bounds_.back());
    bounds_.push_back(s);
  }
  return bounds_[static_cast<std::size_t>(k)];
}

Rational contraction_tail_bound_exact(const RMatrix& m, int K) {
  TailBoundTable t(m);
  return t.bound(K);
}

double contraction_tail_bound(const RMatrix& m, int K) {
  const Rational b = contraction_tail_bound_exact(m, K);
  double d = b.to_double();
  if (Rational::from_double(d) < b) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

// ---------------------------------------------------------------- integrality

namespace {

BigInt lcm_of_denominators(const RVector& v) {
  BigInt l = 1;
  for (const auto& x : v.entries()) {
    BigInt d = x.den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

BigInt mod_nonneg(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

struct StateHash {
  std::size_t operator()(const std::vector<BigInt>& v) const {
    std::size_t h = v.size();
    for (const auto& z : v) h ^= hash_mpz(z.get_mpz_t()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace

bool integrality_forever(const RMatrix& R, const RVector& b, const RVector& l, std::size_t state_cap) {
  if (!R.is_integer()) throw std::invalid_argument("integrality_forever: R must have integer entries");
  const std::size_t d = R.dim();
  if (b.dim() != d || l.dim() != d) throw std::invalid_argument("integrality_forever: dimension mismatch");

  const BigInt e = lcm_of_denominators(b);
  const BigInt D = lcm_of_denominators(l);
  const BigInt modulus = e * D;

  std::vector<BigInt> Rint(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) Rint[i * d + j] = R(i, j).num();
  std::vector<BigInt> lint(d);
  for (std::size_t i = 0; i < d; ++i) lint[i] = (l[i] * Rational(D)).num();

  std::vector<BigInt> state(d);
  for (std::size_t i = 0; i < d; ++i) state[i] = mod_nonneg((b[i] * Rational(e)).num(), modulus);

  std::unordered_set<std::vector<BigInt>, StateHash> seen;
  while (seen.insert(state).second) {
    if (seen.size() > state_cap) throw CapExceeded("integrality_forever: state cap exceeded");
    BigInt s = 0;
    for (std::size_t i = 0; i < d; ++i) s += state[i] * lint[i];
    if (mod_nonneg(s, modulus) != 0) return false;
    std::vector<BigInt> next(d);
    for (std::size_t i = 0; i < d; ++i) {
      BigInt acc = 0;
      for (std::size_t j = 0; j < d; ++j) acc += Rint[i * d + j] * state[j];
      next[i] = mod_nonneg(acc, modulus);
    }
    state = std::move(next);
  }
  return true;
}

}  // namespace hdual
