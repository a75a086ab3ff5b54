#pragma once

// Double-precision view of an integer polynomial, with every coefficient
// multiplied by 2^-scale_exp so huge coefficients do not overflow.

#include <cmath>
#include <complex>
#include <vector>

#include "equid/intpoly.hpp"

namespace equid::detail {

using cd = std::complex<double>;

struct ScaledPoly {
  std::vector<double> c;  // c[k] = a_k * 2^-scale_exp
  long scale_exp = 0;

  explicit ScaledPoly(const IntPolynomial& p) {
    long maxbits = 0;
    for (const auto& a : p.coeffs()) {
      if (sgn(a) != 0) maxbits = std::max<long>(maxbits, static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2)));
    }
    scale_exp = maxbits;
    c.reserve(p.coeffs().size());
    for (const auto& a : p.coeffs()) {
      long e = 0;
      const double m = mpz_get_d_2exp(&e, a.get_mpz_t());
      c.push_back(std::ldexp(m, static_cast<int>(e - scale_exp)));
    }
  }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  double log_scale() const { return static_cast<double>(scale_exp) * std::log(2.0); }

  cd eval(cd z) const {
    cd acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
  }

  /// log|P(z)| including the scale factor; -inf at an exact zero.
  double log_abs(cd z) const { return std::log(std::abs(eval(z))) + log_scale(); }
};

}  // namespace equid::detail
