#pragma once

// Random Lipschitz test functions: sums of cones c_i max(0, 1 - |z - z_i| / rho_i).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "equid/testfn.hpp"

namespace oracle {

inline equid::TestFunction random_cones(std::uint64_t seed, int count) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  struct Cone {
    std::complex<double> z;
    double rho, c;
  };
  std::vector<Cone> cones;
  double A = 0, R = 0;
  std::vector<double> breaks;
  for (int i = 0; i < count; ++i) {
    Cone k{std::polar(1.6 * u(gen), 2 * std::numbers::pi * u(gen)), 0.2 + 0.8 * u(gen), 2 * u(gen) - 1};
    cones.push_back(k);
    A += std::fabs(k.c) / k.rho;
    R = std::max(R, std::abs(k.z) + k.rho);
    // the unit circle meets |w - z| = rho where cos(t - arg z) = (1 + |z|^2 - rho^2) / (2|z|)
    const double m = std::abs(k.z);
    const double cosv = (1 + m * m - k.rho * k.rho) / (2 * m);
    if (std::fabs(cosv) < 1) {
      const double d = std::acos(cosv);
      breaks.push_back(std::arg(k.z) + d);
      breaks.push_back(std::arg(k.z) - d);
    }
  }
  equid::TestFunction::Params p;
  p.name = "cones:" + std::to_string(seed);
  p.eval = [cones](std::complex<double> w) {
    double s = 0;
    for (const Cone& k : cones) s += k.c * std::max(0.0, 1.0 - std::abs(w - k.z) / k.rho);
    return s;
  };
  p.lipschitz = A;
  p.support = R;
  p.circle_breakpoints = breaks;
  p.dirichlet_h = 1.0 / 128;
  return equid::TestFunction(std::move(p));
}

}  // namespace oracle
