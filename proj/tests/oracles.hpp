#pragma once

// Test-only reference computations, kept independent of the library routes
// they check.

#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "equid/intpoly.hpp"

namespace oracle {

using equid::ExactInteger;
using equid::IntPolynomial;

/// Determinant by fraction-free Bareiss elimination.
inline ExactInteger bareiss_det(std::vector<std::vector<ExactInteger>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  ExactInteger prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        ExactInteger v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = v;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Res(P, Q) as the determinant of the Sylvester matrix.
inline ExactInteger sylvester_resultant(const IntPolynomial& p, const IntPolynomial& q) {
  const int m = p.degree(), n = q.degree();
  const int size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<ExactInteger>> s(size, std::vector<ExactInteger>(size));
  // rows hold coefficients highest degree first
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s[r][r + k] = p.coeff(m - k);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s[n + r][r + k] = q.coeff(n - k);
  return bareiss_det(std::move(s));
}

inline IntPolynomial random_poly(std::mt19937_64& rng, int degree, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<ExactInteger> c(degree + 1);
  for (auto& x : c) x = d(rng);
  while (c.back() == 0) c.back() = d(rng);
  return IntPolynomial(std::move(c));
}

/// Horner evaluation with long double complex arithmetic.
inline std::complex<long double> eval(const IntPolynomial& p, std::complex<long double> z) {
  std::complex<long double> acc = 0;
  const auto& c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + static_cast<long double>(c[k].get_d());
  return acc;
}

/// Primitive k-th roots of unity from their angles.
inline std::vector<std::complex<double>> primitive_roots(unsigned k) {
  std::vector<std::complex<double>> out;
  for (unsigned a = 1; a <= k; ++a) {
    if (std::gcd(a, k) == 1) {
      const long double t = 2.0L * 3.14159265358979323846264338327950288L * a / k;
      out.emplace_back(static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t)));
    }
  }
  return out;
}

}  // namespace oracle
