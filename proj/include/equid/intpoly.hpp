#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace equid {

using ExactInteger = mpz_class;
using ExactRational = mpq_class;

/// Polynomial with arbitrary-precision integer coefficients, lowest degree
/// first. The zero polynomial is the empty coefficient list and has no degree.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<ExactInteger> coeffs);
  IntPolynomial(std::initializer_list<long> coeffs);

  static IntPolynomial constant(const ExactInteger& c);
  /// c * z^k
  static IntPolynomial monomial(const ExactInteger& c, std::size_t k);

  bool is_zero() const { return coeffs_.empty(); }
  /// Throws ZeroPolynomial for the zero polynomial.
  int degree() const;
  /// Coefficient of z^k, zero beyond the degree.
  ExactInteger coeff(std::size_t k) const;
  const std::vector<ExactInteger>& coeffs() const { return coeffs_; }
  const ExactInteger& leading() const;
  const ExactInteger& trailing() const { return coeffs_.front(); }

  /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
  ExactInteger content() const;
  /// Divides out the content and makes the leading coefficient positive.
  IntPolynomial primitive_part() const;

  /// Dense decimal form "a0,a1,...,an" accepted by parse_poly.
  std::string to_dense_string() const;
  /// Human-readable sparse form, highest degree first ("z^3 - 1").
  std::string to_string() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const ExactInteger& c, const IntPolynomial& p);

 private:
  void normalize();
  std::vector<ExactInteger> coeffs_;
};

IntPolynomial pow(const IntPolynomial& p, unsigned e);

/// Dense list ("-1, 0, 1", lowest degree first) or sparse terms ("2*z^2 - 2").
IntPolynomial parse_poly(std::string_view text);

IntPolynomial derivative(const IntPolynomial& p);

/// Quotient of exact division over the integers, or nullopt when q does not
/// divide p in Z[z].
std::optional<IntPolynomial> exact_quotient(const IntPolynomial& p, const IntPolynomial& q);

/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);

/// Resultant by the subresultant remainder sequence.
ExactInteger resultant(const IntPolynomial& p, const IntPolynomial& q);

/// a_n^(2n-2) prod_{j<k} (alpha_j - alpha_k)^2, computed from Res(P, P').
ExactInteger discriminant(const IntPolynomial& p);

/// Primitive gcd (positive leading coefficient) by the primitive remainder
/// sequence. Contents are ignored.
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

/// Sufficient test: true only if P mod p is square-free for some prime p not
/// dividing a_n. False means "not certified", not "repeated factor".
bool squarefree_modular(const IntPolynomial& p);

/// gcd(P, P') is constant.
bool is_squarefree(const IntPolynomial& p);

/// Square-free parts s_i with P = c * prod s_i^i (Musser's gcd scheme);
/// returns (s_i, i) for nonconstant s_i.
std::vector<std::pair<IntPolynomial, unsigned>> squarefree_decomposition(const IntPolynomial& p);

/// Largest m with q^m | p over the integers.
unsigned factor_multiplicity(const IntPolynomial& p, const IntPolynomial& q);

/// p_m = sum_k alpha_k^m for m = 1..m_max by Newton's identities.
std::vector<ExactRational> power_sums(const IntPolynomial& p, unsigned m_max);

/// Divides out z^k where k is the multiplicity of the root at the origin.
IntPolynomial deflate_origin(const IntPolynomial& p, unsigned* removed = nullptr);

/// Natural log of |x| straight from the mantissa and binary exponent;
/// -inf for zero. Never rounds x itself to a double.
double log_abs(const ExactInteger& x);

/// Exact mean of the zeros, -a_{n-1} / (n a_n).
ExactRational exact_mean(const IntPolynomial& p);

}  // namespace equid
