#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "equid/errors.hpp"
#include "equid/families.hpp"
#include "equid/zmeasure.hpp"
#include "oracles.hpp"

using namespace equid;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

CountingMeasure roots_of(const std::string& p) { return counting_measure(find_roots(parse_poly(p), 1e-12)); }

// exact k-th roots of unity from their angles
CountingMeasure unity(int n) {
  CountingMeasure cm;
  for (int k = 0; k < n; ++k) cm.points.push_back(std::polar(1.0, 2 * kPi * k / n));
  return cm;
}

TestFunction from_lambda(std::function<double(cd)> f, std::vector<double> breaks = {}) {
  TestFunction::Params p;
  p.name = "lambda";
  p.eval = std::move(f);
  p.lipschitz = 1;
  p.support = 10;
  p.circle_breakpoints = std::move(breaks);
  return TestFunction(std::move(p));
}

}  // namespace

TEST_CASE("counting measure basics") {
  CountingMeasure a = roots_of("z^3 - 1");
  CHECK(a.n() == 3);
  CountingMeasure b = roots_of("z^2 - 1");
  CHECK(b.n() == 2);
  CHECK(integrate(b, constant_phi(1.0)) == 1.0);
  CHECK(std::abs(mean(roots_of("z^2 - 3*z + 2")) - cd(1.5, 0)) <= 1e-12);
  for (int n : {2, 5, 16}) CHECK(std::abs(mean(counting_measure(find_roots(binomial(n), 1e-12)))) <= 1e-13);
}

TEST_CASE("moments") {
  CountingMeasure cm = roots_of("z^4 - 1");
  CHECK(std::abs(moment(cm, 2)) <= 1e-12);
  CHECK(std::abs(moment(cm, 4) - 1.0) <= 1e-12);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    IntPolynomial p = oracle::random_poly(rng, 3 + 6 * t, 4);
    RootSet rs = find_roots(p, 1e-12);
    CountingMeasure m = counting_measure(rs);
    const int n = p.degree();
    const auto ps = power_sums(p, 16);
    CHECK(std::abs(mean(m) - exact_mean(p).get_d()) <= n * 1e-12);
    for (unsigned k = 1; k <= 16; ++k) {
      double scale = 0;
      for (cd a : m.points) scale += std::pow(std::abs(a), k);
      CHECK(std::abs(moment(m, k) * static_cast<double>(n) - ps[k - 1].get_d()) <= 1e-8 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("sector counts") {
  CountingMeasure cm = roots_of("z^4 - 1");
  CHECK(sector_count(cm, 0, kPi).count == 3);
  CHECK(sector_count(cm, kPi / 4, 3 * kPi / 4).count == 1);
  CHECK(sector_discrepancy(cm, 0, kPi) == doctest::Approx(0.25));
  CHECK_THROWS_AS(sector_count(cm, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(sector_count(cm, 0.0, 2 * kPi), std::invalid_argument);
}

TEST_CASE("sector counts match angle enumeration for z^8 - 1") {
  CountingMeasure cm = roots_of("z^8 - 1");
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0, 2 * kPi);
  for (int t = 0; t < 500; ++t) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    int brute = 0, boundary = 0;
    for (int k = 0; k < 8; ++k) {
      const double ang = 2 * kPi * k / 8;
      if (ang >= a && ang <= b) ++brute;
      if (std::fabs(ang - a) < 1e-9 || std::fabs(ang - b) < 1e-9) ++boundary;
    }
    const SectorCount sc = sector_count(cm, a, b);
    CHECK(std::abs(sc.count - brute) <= boundary);
  }
  // endpoints exactly on root angles: the flag reports them
  const SectorCount edge = sector_count(cm, kPi / 4, kPi / 2);
  CHECK(edge.count >= 1);
  CHECK(edge.count <= 2);
}

TEST_CASE("partition of the circle counts every nonzero root") {
  CountingMeasure cm = counting_measure(find_roots(parse_poly("z^7 - z^3 + 2*z^2 - 1") * parse_poly("z^2"), 1e-12));
  int total = 0, origin = 0, shared = 0;
  for (const Sector& s : dyadic_sectors()) {
    const SectorCount sc = sector_count(cm, s.phi1, s.phi2);
    total += sc.count;
    origin = sc.at_origin;
  }
  // closed sectors share the interior rays j pi/8, so points on them count twice
  for (cd z : cm.points) {
    if (z == cd(0, 0)) continue;
    const double a = arg_2pi(z);
    for (int j = 1; j < 16; ++j) shared += a == j * kPi / 8;
  }
  CHECK(shared >= 1);  // the negative real root
  CHECK(total == cm.n() - 2 + shared);
  CHECK(origin == 2);
}

TEST_CASE("discrepancy of z^n - 1 is at most 2/n") {
  for (int n : {8, 16, 40, 64, 100}) {
    CountingMeasure cm = counting_measure(find_roots(binomial(n), 1e-12));
    for (const Sector& s : dyadic_sectors()) CHECK(sector_discrepancy(cm, s.phi1, s.phi2) <= 2.0 / n);
  }
}

TEST_CASE("empty sector has discrepancy equal to its length") {
  CountingMeasure cm = unity(4);
  CHECK(sector_discrepancy(cm, 0.1, 0.2) == doctest::Approx(0.1 / (2 * kPi)));
}

TEST_CASE("discrepancy is rotation invariant") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 200; ++t) {
    CountingMeasure cm;
    for (int k = 0; k < 30; ++k) cm.points.push_back(std::polar(0.5 + u(rng), 2 * kPi * u(rng)));
    const double a = 2 * u(rng), b = a + 2 * u(rng), rot = u(rng);
    CountingMeasure r = cm;
    for (cd& z : r.points) z *= std::polar(1.0, rot);
    CHECK(std::fabs(sector_discrepancy(cm, a, b) - sector_discrepancy(r, a + rot, b + rot)) <= 1e-12);
  }
}

TEST_CASE("sector parsing") {
  const Sector s = parse_sector("0.5:1.25");
  CHECK(s.phi1 == 0.5);
  CHECK(s.phi2 == 1.25);
  const Sector d = parse_sector("deg:90:180");
  CHECK(d.phi1 == doctest::Approx(kPi / 2));
  CHECK(d.phi2 == doctest::Approx(kPi));
  CHECK_THROWS_AS(parse_sector("1:0.5"), ParseError);
  CHECK_THROWS_AS(parse_sector("deg:0:360"), ParseError);
  CHECK_THROWS_AS(parse_sector("a:b"), ParseError);
  CHECK(dyadic_sectors().size() == 16);
  CHECK(dyadic_sectors().back().phi2 < 2 * kPi);
}

TEST_CASE("integrate") {
  CHECK(integrate(unity(5), constant_phi(0.0)) == 0.0);
  for (int n : {3, 8, 31}) CHECK(std::fabs(integrate(unity(n), cor22_phi())) <= 1e-14);
  // roots 1 and 2 of z^2 - 3z + 2 against cor22: phi(1) = 1, phi(2) = 2(1 - log 2)
  CountingMeasure cm = roots_of("z^2 - 3*z + 2");
  CHECK(integrate(cm, cor22_phi()) == doctest::Approx((1.0 + 2.0 * (1.0 - std::log(2.0))) / 2.0));
}

TEST_CASE("mu_integral examples") {
  CHECK(std::fabs(mu_integral(from_lambda([](cd z) { return z.real(); })).value) <= 1e-12);
  CHECK(mu_integral(from_lambda([](cd z) { return z.real() * z.real(); })).value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mu_integral(constant_phi(3.0)).value == doctest::Approx(3.0));
  CHECK(std::fabs(mu_integral(cor22_phi()).value) <= 1e-12);
  // smoothed sector: (phi2 - phi1 + eps) / 2pi exactly
  const TestFunction s = smoothed_indicator(0.3, 1.7, 0.05);
  CHECK(mu_integral(s).value == doctest::Approx((1.4 + 0.05) / (2 * kPi)).epsilon(1e-10));
  const TestFunction w = smoothed_indicator(0.0, 0.5, 0.2);
  CHECK(mu_integral(w).value == doctest::Approx((0.5 + 0.2) / (2 * kPi)).epsilon(1e-10));
  // cor23 on the circle is log|z0 - e^{it}|, whose mean is log|z0|
  const TestFunction c = cor23_phi_for_degree(256);
  CHECK(mu_integral(c).value == doctest::Approx(std::log1p(1.0 / 256)).epsilon(1e-9));
}

TEST_CASE("trapezoid on unit roots equals the counting integral on the circle") {
  // restricting phi to the circle, integrate over roots of z^n - 1 is the
  // n-point periodic trapezoid rule
  const TestFunction f = cor23_phi_for_degree(8);
  for (int n : {4, 9, 32}) {
    double trap = 0;
    for (int k = 0; k < n; ++k) trap += f(std::polar(1.0, 2 * kPi * k / n));
    CHECK(integrate(unity(n), f) == doctest::Approx(trap / n).epsilon(1e-15));
  }
}
