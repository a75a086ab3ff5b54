#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "equid/bounds.hpp"
#include "equid/errors.hpp"
#include "equid/families.hpp"
#include "oracles.hpp"
#include "random_testfn.hpp"

using namespace equid;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

RootSet roots(const IntPolynomial& p) { return find_roots(p, 1e-12); }

double dense_max(const IntPolynomial& p, int samples) {
  double best = 0;
  for (int i = 0; i < samples; ++i) {
    const long double t = 2.0L * std::numbers::pi_v<long double> * i / samples;
    best = std::max(best, static_cast<double>(std::abs(oracle::eval(p, std::polar(1.0L, t)))));
  }
  return best;
}

double l2_squared(const IntPolynomial& p) {
  double s = 0;
  for (const auto& a : p.coeffs()) s += a.get_d() * a.get_d();
  return s;
}

}  // namespace

TEST_CASE("Mahler measure by Jensen") {
  for (int n : {1, 5, 32}) CHECK(mahler_jensen(binomial(n), roots(binomial(n))).value == doctest::Approx(1.0));
  const IntPolynomial a = parse_poly("2*z^2 - 2");
  CHECK(mahler_jensen(a, roots(a)).value == doctest::Approx(2.0));
  const IntPolynomial b = parse_poly("z^2 - 3*z + 2");
  const NormValue mb = mahler_jensen(b, roots(b));
  CHECK(mb.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mb.certified_error >= 0);
  CHECK(mb.certified_error < 1e-10);
}

TEST_CASE("Mahler measure by quadrature") {
  CHECK(mahler_quadrature(parse_poly("z - 2")).value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mahler_quadrature(parse_poly("z^4 - 1")).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mahler_quadrature(parse_poly("-7")).value == doctest::Approx(7.0));
  CHECK(mahler_quadrature(parse_poly("3*z^5 - 3*z")).value == doctest::Approx(3.0).epsilon(1e-11));
  CHECK_THROWS_AS(mahler_quadrature(IntPolynomial{}), ZeroPolynomial);
}

TEST_CASE("Jensen and quadrature agree") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 20; ++t) {
    const IntPolynomial p = oracle::random_poly(rng, 2 + 3 * t, 9);
    const RootSet rs = roots(p);
    const double j = mahler_jensen(p, rs).value;
    CHECK(mahler_quadrature(p, rs).value == doctest::Approx(j).epsilon(1e-9));
  }
  for (int n : {16, 48, 64}) {
    const IntPolynomial p = schur_sample(n, 10, n);
    CHECK(mahler_quadrature(p).value == doctest::Approx(mahler_jensen(p, roots(p)).value).epsilon(1e-9));
  }
}

TEST_CASE("Mahler measure equals |a_n| on the disk class") {
  for (std::uint64_t s = 1; s <= 6; ++s) {
    const IntPolynomial p = schur_sample(40 + 7 * static_cast<int>(s), 9, s);
    const RootSet rs = roots(p);
    CHECK(mahler_jensen(p, rs).value == doctest::Approx(p.leading().get_d()).epsilon(1e-8));
  }
  const IntPolynomial m = multiplicity_family(30, 3, 5);
  CHECK(mahler_jensen(m, roots(m)).value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("sup norm examples") {
  for (int n : {1, 3, 10, 40}) {
    const IntPolynomial p = pow(parse_poly("z - 1"), n);
    CHECK(sup_norm(p).value == doctest::Approx(std::ldexp(1.0, n)).epsilon(1e-12));
  }
  // beyond double range only the logarithm is representable
  const NormValue big = sup_norm(pow(parse_poly("z - 1"), 1100));
  CHECK(big.log_value == doctest::Approx(1100 * std::log(2.0)).epsilon(1e-12));
  CHECK(std::isinf(big.value));
  for (int n : {2, 3, 7, 64}) CHECK(sup_norm(binomial(n)).value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sup_norm(parse_poly("7")).value == 7.0);
}

TEST_CASE("sup norm against dense sampling") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 15; ++t) {
    const IntPolynomial p = oracle::random_poly(rng, 1 + 4 * t, 20);
    const NormValue s = sup_norm(p);
    const double dense = dense_max(p, 1 << 16);
    CHECK(s.value >= dense * (1 - 1e-12));
    CHECK(s.value <= dense * (1 + 1e-6));
    CHECK(s.certified_error >= 0);
    CHECK(s.value + s.certified_error >= dense * (1 - 1e-12));
    // Parseval lower bound and the triangle upper bound
    CHECK(s.value * s.value >= l2_squared(p) * (1 - 1e-12));
    CHECK(s.value >= 1.0);
  }
}

TEST_CASE("sup norm root of binomials") {
  double prev = 3;
  for (int n = 2; n <= 200; n += 9) {
    const double v = std::pow(sup_norm(binomial(n)).value, 1.0 / n);
    CHECK(std::fabs(v - std::pow(2.0, 1.0 / n)) <= 1e-9);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("lp norms") {
  CHECK(lp_norm(parse_poly("-5"), 0.3).value == doctest::Approx(5.0));
  CHECK(lp_norm(parse_poly("z^2 - 1"), 2).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    const IntPolynomial p = oracle::random_poly(rng, 2 + 5 * t, 6);
    const RootSet rs = roots(p);
    CHECK(lp_norm(p, 2, rs).value == doctest::Approx(std::sqrt(l2_squared(p))).epsilon(1e-10));
    const double m = mahler_jensen(p, rs).value;
    CHECK(lp_norm(p, 0.01, rs).value == doctest::Approx(m).epsilon(0.02));
    double prev = 0;
    for (double e : {0.5, 1.0, 2.0, 4.0}) {
      const double v = lp_norm(p, e, rs).value;
      CHECK(v >= prev * (1 - 1e-12));
      if (e >= 1) CHECK(m <= v * (1 + 1e-12));
      prev = v;
    }
  }
  CHECK_THROWS_AS(lp_norm(parse_poly("z"), 0.0), std::invalid_argument);
}

TEST_CASE("Erdos-Turan right side") {
  CHECK(erdos_turan_rhs(parse_poly("z^2 - 1")) == doctest::Approx(16 * std::sqrt(std::log(2.0) / 2)).epsilon(1e-12));
  CHECK(erdos_turan_rhs(parse_poly("z^2 - 1")) == doctest::Approx(9.4193).epsilon(1e-4));
  for (int n : {8, 100}) CHECK(erdos_turan_rhs(binomial(n)) == doctest::Approx(16 * std::sqrt(std::log(2.0) / n)));
  CHECK_THROWS_AS(erdos_turan_rhs(parse_poly("z^2 + z")), ZeroCoefficient);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    IntPolynomial p = oracle::random_poly(rng, 1 + t, 4);
    if (p.trailing() == 0) continue;
    CHECK(erdos_turan_rhs(p) > 0);
  }
}

TEST_CASE("energy bound right side") {
  CHECK(energy22_value(55, 0.0, 1.0, 1.0) == doctest::Approx(3 * std::sqrt(std::log(55.0) / 55)));
  CHECK(energy22_value(55, 0.0, 1.0, 1.0) == doctest::Approx(0.80978).epsilon(1e-4));
  // coefficient with the cor22 constants stays below 8
  CHECK(energy22_value(100, 0.0, std::sqrt(5.0) / 2, std::numbers::e) <= 8 * std::sqrt(std::log(100.0) / 100));
  const IntPolynomial p = kronecker_product(60, 4);
  const RootSet rs = roots(p);
  CHECK(energy22_rhs(p, rs, 2, 3) == doctest::Approx(7 * 2 * std::sqrt(std::log(60.0) / 60)).epsilon(1e-9));
  // M > n switches the logarithm
  CHECK(energy22_value(60, std::log(100.0), 1, 1) == doctest::Approx(3 * std::sqrt(std::log(100.0) / 60)));
  CHECK_THROWS_AS(energy22_rhs(binomial(54), roots(binomial(54)), 1, 1), HypothesisViolation);
  const IntPolynomial sq = pow(parse_poly("z - 1"), 2) * kronecker_product(60, 1);
  CHECK_THROWS_AS(energy22_rhs(sq, roots(sq), 1, 1), HypothesisViolation);
}

TEST_CASE("energy term closed forms") {
  for (int n : {2, 10, 77}) {
    const IntPolynomial p = binomial(n);
    const double v = energy_bound_value(n, 0.0, log_an2_discriminant(p), 1.0 / n);
    CHECK(v == doctest::Approx(4.0 / n).epsilon(1e-12));
  }
  const double base = energy_bound_value(10, 0.3, 5.0, 0.1);
  CHECK(energy_bound_value(10, 0.3, 6.0, 0.1) < base);
  CHECK_THROWS_AS(log_an2_discriminant(parse_poly("z^2 - 2*z + 1")), DiscriminantZero);
  CHECK(default_radius(10, std::log(3.0)) == doctest::Approx(0.1));
  CHECK(default_radius(10, std::log(30.0)) == doctest::Approx(1.0 / 30));
}

TEST_CASE("main inequality right side") {
  // zero test function: D = 0 and omega = 0
  const IntPolynomial b = binomial(12);
  CHECK(main23_rhs(b, roots(b), constant_phi(0.0)) == 0.0);

  // z^2 - 1, cor22, r = 1/2 assembled by hand: the energy term is
  // -(1/4) log 4 - (1/2) log(1/2) + 2 = 2
  const IntPolynomial q = parse_poly("z^2 - 1");
  const TestFunction f = cor22_phi();
  const DirichletValue& d = f.dirichlet();
  const double hand = std::sqrt(5.0) / 2 * 0.5 + std::sqrt((d.value + d.error) / (2 * kPi)) * std::sqrt(2.0);
  CHECK(main23_rhs(q, roots(q), f, 0.5) == doctest::Approx(hand).epsilon(1e-14));
  CHECK_THROWS_AS(main23_rhs(parse_poly("z^2 - 2*z + 1"), roots(parse_poly("z^2 - 2*z + 1")), f), DiscriminantZero);
  CHECK_THROWS_AS(main23_rhs(q, roots(q), f, 1.5), std::invalid_argument);
}

TEST_CASE("main inequality is below the assembled energy bound") {
  const std::vector<TestFunction> fns{cor22_phi(), smoothed_indicator(0.0, kPi / 2, 0.1),
                                      smoothed_indicator(1.0, 4.0, 0.3)};
  for (int n : {55, 70, 128}) {
    const IntPolynomial p = schur_sample(n, 10, 100 + n);
    const PolyContext ctx = make_context(p, roots(p));
    for (const TestFunction& f : fns) {
      const BoundReport m = main23_report(ctx, f);
      const BoundReport e = energy22_report(ctx, f);
      CAPTURE(n);
      CAPTURE(f.name());
      CHECK(m.binding);
      CHECK(e.binding);
      CHECK(m.lhs == e.lhs);
      CHECK(m.slack >= 0);
      CHECK(e.slack >= 0);
      CHECK(m.rhs <= e.rhs);
    }
  }
}

TEST_CASE("main inequality with random cone sums") {
  for (std::uint64_t s = 1; s <= 6; ++s) {
    const TestFunction f = oracle::random_cones(s, 4);
    CHECK(lipschitz_audit(f, 20000, s) <= f.lipschitz() * (1 + 1e-9));
    for (int n : {20, 60}) {
      const IntPolynomial p = kronecker_product(n, s);
      const PolyContext ctx = make_context(p, roots(p));
      const BoundReport rep = main23_report(ctx, f);
      CAPTURE(s);
      CHECK(rep.slack >= 0);
      // random integer polynomial with zeros off the disk: the inequality has
      // no disk hypothesis
      std::mt19937_64 rng(s * 31 + n);
      const IntPolynomial r = oracle::random_poly(rng, n, 3);
      if (!is_squarefree(r)) continue;
      const BoundReport rr = main23_report(make_context(r, roots(r)), f);
      CHECK(rr.slack >= 0);
    }
  }
}

TEST_CASE("Erdos-Turan inequality over dyadic sectors") {
  std::vector<IntPolynomial> polys;
  for (int n : {8, 33, 64, 100}) {
    polys.push_back(binomial(n));
    polys.push_back(kronecker_product(n, n));
    polys.push_back(schur_sample(n, 10, n + 1));
  }
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) polys.push_back(oracle::random_poly(rng, 5 + 6 * t, 5));
  for (const IntPolynomial& p : polys) {
    const PolyContext ctx = make_context(p, roots(p));
    for (const Sector& s : dyadic_sectors()) {
      const BoundReport rep = erdos_turan_report(ctx, s);
      CHECK(rep.slack >= 0);
    }
  }
  for (int n : {8, 64, 256}) {
    const PolyContext ctx = make_context(binomial(n), roots(binomial(n)));
    for (const Sector& s : dyadic_sectors()) {
      const BoundReport rep = erdos_turan_report(ctx, s);
      CHECK(rep.lhs <= 2.0 / n);
      CHECK(rep.rhs == doctest::Approx(16 * std::sqrt(std::log(2.0) / n)));
    }
  }
}

TEST_CASE("Erdos-Turan report deflates zeros at the origin") {
  const IntPolynomial p = parse_poly("z^7 - z^3");
  const PolyContext ctx = make_context(p, roots(p));
  const BoundReport rep = erdos_turan_report(ctx, {0.0, kPi});
  REQUIRE(rep.notes.size() >= 1);
  CHECK(rep.notes[0] == "deflated 3 zeros at the origin");
  CHECK(rep.lhs == doctest::Approx(0.25));
  CHECK(rep.rhs == doctest::Approx(16 * std::sqrt(std::log(2.0) / 4)));
}

TEST_CASE("energy inequality on the disk class") {
  const std::vector<TestFunction> fns{cor22_phi(), smoothed_indicator(0.2, 1.4, 0.1), smoothed_indicator(3.0, 5.5, 0.2)};
  for (int n : {55, 90, 200}) {
    for (const IntPolynomial& p : {kronecker_product(n, 7), schur_sample(n, 10, 7), binomial(n)}) {
      const PolyContext ctx = make_context(p, roots(p));
      for (const TestFunction& f : fns) {
        const BoundReport rep = energy22_report(ctx, f);
        CHECK(rep.binding);
        CHECK(rep.slack >= 0);
      }
    }
  }
}

TEST_CASE("hypothesis flags") {
  const IntPolynomial p = parse_poly("z^2 - 2*z + 1");
  const PolyContext ctx = make_context(p, roots(p));
  CHECK_FALSE(ctx.log_an2_disc.has_value());
  const BoundReport m = main23_report(ctx, cor22_phi());
  CHECK_FALSE(m.binding);
  CHECK(std::isnan(m.rhs));
  const BoundReport e = energy22_report(ctx, cor22_phi());
  CHECK_FALSE(e.binding);
  CHECK(e.notes.size() == 2);
}

TEST_CASE("schur mean report") {
  const IntPolynomial p = binomial(55);
  const BoundReport rep = schur_mean_report(make_context(p, roots(p)));
  CHECK(rep.lhs <= 1e-13);
  CHECK(rep.rhs == doctest::Approx(2.1594).epsilon(1e-4));
  CHECK(rep.binding);
  const IntPolynomial k = kronecker_product(100, 3);
  const BoundReport kr = schur_mean_report(make_context(k, roots(k)));
  CHECK(kr.lhs == doctest::Approx(std::fabs(k.coeff(99).get_d() / 100.0)).epsilon(1e-10));
  CHECK(kr.rhs == doctest::Approx(1.717).epsilon(1e-3));
  CHECK(schur_reference_line() == doctest::Approx(0.1756).epsilon(1e-3));
  const IntPolynomial s = schur_sample(60, 100, 2);
  const BoundReport sr = schur_mean_report(make_context(s, roots(s)), 100.0);
  CHECK_FALSE(sr.binding);
}
