#pragma once

// Exact rational scalars, vectors and square matrices, plus the few numeric
// matrix facts the rest of the library relies on: expansiveness, tail bounds
// for sums of inverse-power norms, and the "R^k b.l is an integer for all k"
// condition.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace hdual {

using BigInt = mpz_class;

class Rational {
 public:
  Rational() = default;
  template <std::integral T>
  Rational(T v) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      q_ = static_cast<long>(v);
    } else {
      q_ = static_cast<unsigned long>(v);
    }
  }
  Rational(const BigInt& v) : q_(v) {}         // NOLINT(google-explicit-constructor)
  /// Throws std::domain_error when `den` is zero.
  Rational(const BigInt& num, const BigInt& den);

  /// Accepts "7", "-3/4", and plain decimals such as "0.3" or "-2.60"
  /// (decimals are converted exactly, 0.3 == 3/10).
  static Rational parse(std::string_view text);
  /// Exact value of a finite double (every finite double is dyadic).
  static Rational from_double(double v);

  [[nodiscard]] BigInt num() const { return q_.get_num(); }
  [[nodiscard]] BigInt den() const { return q_.get_den(); }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  [[nodiscard]] BigInt floor() const;
  /// x - floor(x), always in [0, 1).
  [[nodiscard]] Rational frac() const;
  [[nodiscard]] Rational abs() const;
  [[nodiscard]] double to_double() const { return q_.get_d(); }
  /// "n" for integers, "n/d" otherwise.
  [[nodiscard]] std::string str() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  [[nodiscard]] const mpq_class& raw() const { return q_; }
  [[nodiscard]] std::size_t hash() const;

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Fixed-length vector of exact rationals.
class RVector {
 public:
  RVector() = default;
  explicit RVector(std::size_t dim) : v_(dim) {}
  RVector(std::initializer_list<Rational> init) : v_(init) {}
  explicit RVector(std::vector<Rational> entries) : v_(std::move(entries)) {}

  static RVector zero(std::size_t dim) { return RVector(dim); }
  static RVector from_doubles(const std::vector<double>& v);

  [[nodiscard]] std::size_t dim() const { return v_.size(); }
  const Rational& operator[](std::size_t i) const { return v_[i]; }
  Rational& operator[](std::size_t i) { return v_[i]; }
  [[nodiscard]] const std::vector<Rational>& entries() const { return v_; }

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] Rational max_abs() const;  ///< sup norm
  [[nodiscard]] Rational l1() const;
  [[nodiscard]] std::vector<double> to_doubles() const;
  /// "(a, b)" in dimension > 1, plain "a" in dimension 1.
  [[nodiscard]] std::string str() const;

  RVector& operator+=(const RVector& o);
  RVector& operator-=(const RVector& o);
  friend RVector operator+(RVector a, const RVector& b) { return a += b; }
  friend RVector operator-(RVector a, const RVector& b) { return a -= b; }
  friend RVector operator*(const Rational& s, RVector a);

  friend bool operator==(const RVector& a, const RVector& b) = default;
  /// Lexicographic; vectors of different dimension order by dimension first.
  friend std::strong_ordering operator<=>(const RVector& a, const RVector& b);

  [[nodiscard]] std::size_t hash() const;

 private:
  std::vector<Rational> v_;
};

/// Exact dot product. Throws std::invalid_argument on dimension mismatch.
Rational dot(const RVector& a, const RVector& b);

struct RVectorHash {
  std::size_t operator()(const RVector& v) const { return v.hash(); }
};

/// Square d x d matrix of exact rationals, row-major.
class RMatrix {
 public:
  RMatrix() = default;
  explicit RMatrix(std::size_t dim) : d_(dim), a_(dim * dim) {}
  /// Rows must all have length rows.size().
  explicit RMatrix(const std::vector<std::vector<Rational>>& rows);

  static RMatrix identity(std::size_t dim);
  static RMatrix scalar(std::size_t dim, const Rational& s);
  static RMatrix diagonal(const std::vector<Rational>& diag);

  [[nodiscard]] std::size_t dim() const { return d_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * d_ + j]; }

  [[nodiscard]] RMatrix transpose() const;
  [[nodiscard]] Rational determinant() const;
  /// Throws std::domain_error when singular.
  [[nodiscard]] RMatrix inverse() const;
  /// Integer power; negative exponents go through the inverse.
  [[nodiscard]] RMatrix pow(long k) const;
  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] bool is_symmetric() const;
  /// Max absolute row sum, the operator norm induced by the sup norm.
  [[nodiscard]] Rational max_row_sum_norm() const;
  [[nodiscard]] std::string str() const;

  friend RMatrix operator*(const RMatrix& a, const RMatrix& b);
  friend RVector operator*(const RMatrix& a, const RVector& v);
  friend RMatrix operator+(const RMatrix& a, const RMatrix& b);
  friend RMatrix operator-(const RMatrix& a, const RMatrix& b);
  friend RMatrix operator*(const Rational& s, const RMatrix& a);
  friend bool operator==(const RMatrix& a, const RMatrix& b) = default;

 private:
  std::size_t d_ = 0;
  std::vector<Rational> a_;
};

/// True iff every eigenvalue of `m` has modulus > 1.
///
/// A proof of expansiveness is a power k with ||m^{-k}||_inf < 1 (the spectral
/// radius of m^{-1} is then below 1). A proof of the opposite is exact as
/// well: |det m| <= 1, or det(m - I) = 0, or det(m + I) = 0. Otherwise the
/// floating-point eigenvalues decide, but only when they sit clearly inside
/// the unit disk. Anything else raises UndecidedError.
/// Throws std::domain_error for singular input.
bool is_expansive(const RMatrix& m);

/// Cached norms ||M^{-k}||_inf and the derived bounds on sum_{k>K} ||M^{-k}||.
///
/// With q = ||M^{-m}|| < 1 for the first such m, every tail term splits as
/// ||M^{-(K+j+im)}|| <= ||M^{-(K+j)}|| q^i, so
///   sum_{k>K} ||M^{-k}|| <= (sum_{j=1..m} ||M^{-(K+j)}||) / (1 - q).
/// `bound(K)` is the running minimum of that expression over K' <= K, which
/// keeps it a valid bound and makes it nonincreasing in K.
class TailBoundTable {
 public:
  /// Throws std::domain_error if no power up to `search_cap` has norm < 1.
  explicit TailBoundTable(const RMatrix& m, int search_cap = 256);

  [[nodiscard]] const Rational& norm(int k);  ///< ||M^{-k}||, k >= 1
  [[nodiscard]] Rational bound(int k);         ///< exact tail bound
  [[nodiscard]] int contraction_power() const { return m_; }
  [[nodiscard]] const RMatrix& inverse() const { return inv_; }

 private:
  void extend_to(int k);

  RMatrix inv_;
  std::vector<RMatrix> powers_;    // powers_[k] = M^{-k}
  std::vector<Rational> norms_;    // norms_[k]  = ||M^{-k}||
  std::vector<Rational> bounds_;   // running-min bounds, bounds_[K]
  int m_ = 0;
  Rational one_minus_q_;
};

/// Upper bound on sum_{k>K} ||M^{-k}||_inf, rounded up to double.
/// Throws std::domain_error if M is not expansive.
double contraction_tail_bound(const RMatrix& m, int K);
Rational contraction_tail_bound_exact(const RMatrix& m, int K);

/// Decides R^k b . l in Z for every k >= 0.
///
/// With e, D the denominators clearing b and l, the state v = R^k (e b) mod eD
/// determines R^k b . l mod 1, and v -> R v mod eD on a finite set, so the
/// orbit is eventually periodic. Every visited state is checked.
/// Throws std::invalid_argument if R has a non-integer entry and CapExceeded
/// if more than `state_cap` states are visited.
bool integrality_forever(const RMatrix& R, const RVector& b, const RVector& l,
                         std::size_t state_cap = 10'000'000);

}  // namespace hdual

template <>
struct std::hash<hdual::Rational> {
  std::size_t operator()(const hdual::Rational& r) const { return r.hash(); }
};
