#include "equid/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "equid/bounds.hpp"
#include "equid/errors.hpp"

namespace equid {

using cd = std::complex<double>;

SmoothedMeasure smooth(const CountingMeasure& cm, double r) {
  if (!(r > 0)) throw std::invalid_argument("smoothing radius must be positive");
  return {cm.points, r};
}

double potential_mu(cd z) { return -std::log(std::max(1.0, std::abs(z))); }

double potential_smoothed(const SmoothedMeasure& sm, cd z) {
  double s = 0.0;
  for (const cd& a : sm.centers) s -= std::log(std::max(sm.r, std::abs(z - a)));
  return s / sm.n();
}

double potential_counting(const CountingMeasure& cm, cd z) {
  double s = 0.0;
  for (std::size_t k = 0; k < cm.points.size(); ++k) {
    const double d = std::abs(z - cm.points[k]);
    const double rad = cm.radii.empty() ? 0.0 : cm.radii[k];
    if (d <= rad || d == 0.0) throw SingularPoint("potential evaluated on a point of the measure");
    s -= std::log(d);
  }
  return s / cm.n();
}

double mutual_circle_energy(double d, double r, double tol) {
  if (!(r > 0)) throw std::invalid_argument("smoothing radius must be positive");
  if (d >= 2 * r) return -std::log(d);
  if (d == 0.0) return -std::log(r);
  // average of -log max(r, |d + r e^{it}|); the max switches where cos t = -d/(2r)
  const double t = std::acos(-d / (2 * r));
  auto f = [d, r](double s) { return -std::log(std::max(r, std::abs(cd(d, 0.0) + std::polar(r, s)))); };
  return circle_average(f, {t, 2 * std::numbers::pi - t}, tol).value;
}

double circle_mu_potential(cd alpha, double r, double tol) {
  const double a = std::abs(alpha);
  if (a + r <= 1.0) return 0.0;
  if (a - r >= 1.0) return -std::log(a);
  auto f = [a, r](double s) { return potential_mu(cd(a, 0.0) + std::polar(r, s)); };
  std::vector<double> breaks;
  if (a > 0) {
    const double c = (1.0 - a * a - r * r) / (2 * a * r);
    if (std::fabs(c) < 1.0) {
      const double t = std::acos(c);
      breaks = {t, 2 * std::numbers::pi - t};
    }
  }
  return circle_average(f, breaks, tol).value;
}

EnergyTerms energy_sigma_terms(const SmoothedMeasure& sm, double tol) {
  const int n = sm.n();
  if (n == 0) throw std::invalid_argument("energy of an empty measure");
  if (!(sm.r > 0)) throw std::invalid_argument("smoothing radius must be positive");
  const double dn = n;
  EnergyTerms e;
  double pairs = 0.0, pair_logs = 0.0;
  for (int j = 0; j < n; ++j) {
    double row = 0.0, row_logs = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const double d = std::abs(sm.centers[j] - sm.centers[k]);
      row += mutual_circle_energy(d, sm.r, tol);
      row_logs += std::log(d);
    }
    pairs += row;
    pair_logs += row_logs;
  }
  e.self = (dn * -std::log(sm.r) + pairs) / (dn * dn);
  e.self_pair_bound = (-pair_logs - dn * std::log(sm.r)) / (dn * dn);
  double cross = 0.0;
  for (const cd& a : sm.centers) cross += circle_mu_potential(a, sm.r, tol);
  e.cross = cross / dn;
  e.value = e.self - 2 * e.cross;
  return e;
}

double energy_sigma(const SmoothedMeasure& sm, double tol) { return energy_sigma_terms(sm, tol).value; }

double energy_upper_bound(const IntPolynomial& p, const CountingMeasure& cm, double r) {
  return energy_bound_value(p.degree(), log_mahler_from_points(p, cm.points), log_an2_discriminant(p), r);
}

double log_pair_product(const CountingMeasure& cm) {
  const int n = cm.n();
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    double row = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const double d = std::abs(cm.points[j] - cm.points[k]);
      if (d == 0.0) throw SingularPoint("coincident points in the discrete energy");
      row += std::log(d);
    }
    s += row;
  }
  return s;
}

double discrete_energy(const CountingMeasure& cm) {
  const double n = cm.n();
  return -log_pair_product(cm) / (n * n);
}

double truncated_energy(const CountingMeasure& cm, double cutoff) {
  if (!(cutoff > 0)) throw std::invalid_argument("truncation level must be positive");
  const int n = cm.n();
  double s = n * cutoff;
  for (int j = 0; j < n; ++j) {
    double row = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      row += std::min(-std::log(std::abs(cm.points[j] - cm.points[k])), cutoff);
    }
    s += row;
  }
  return s / (static_cast<double>(n) * n);
}

namespace {

double potential_grid_sum(const SmoothedMeasure& sm, double spacing, double half_width) {
  const long N = static_cast<long>(std::ceil(2 * half_width / spacing)) + 1;
  const double lo = -half_width + spacing / 3;
  auto p = [&](long i, long j) {
    const cd z(lo + i * spacing, lo + j * spacing);
    return potential_smoothed(sm, z) - potential_mu(z);
  };
  std::vector<double> prev(N), cur(N), next(N);
  for (long i = 0; i < N; ++i) {
    prev[i] = p(i, 0);
    cur[i] = p(i, 1);
  }
  double total = 0.0;
  for (long j = 1; j + 1 < N; ++j) {
    for (long i = 0; i < N; ++i) next[i] = p(i, j + 1);
    double row = 0.0;
    for (long i = 1; i + 1 < N; ++i) {
      const double dx = cur[i + 1] - cur[i - 1];
      const double dy = next[i] - prev[i];
      row += dx * dx + dy * dy;
    }
    total += row;
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return total / 4.0;
}

}  // namespace

DirichletValue potential_dirichlet(const SmoothedMeasure& sm, double spacing, double half_width) {
  if (!(spacing > 0 && half_width > spacing)) throw std::invalid_argument("bad grid for the potential");
  const double coarse = potential_grid_sum(sm, spacing, half_width);
  const double fine = potential_grid_sum(sm, spacing / 2, half_width);
  // kinks on the circles make the grid sum first order in the spacing
  return {2 * fine - coarse, std::fabs(fine - coarse), spacing / 2};
}

}  // namespace equid
