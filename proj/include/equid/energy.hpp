#pragma once

#include <complex>
#include <vector>

#include "equid/intpoly.hpp"
#include "equid/testfn.hpp"
#include "equid/zmeasure.hpp"

namespace equid {

/// tau_n^r: mass 1/n spread uniformly on the circle |z - alpha_k| = r.
struct SmoothedMeasure {
  std::vector<std::complex<double>> centers;
  double r = 0.0;

  int n() const { return static_cast<int>(centers.size()); }
};

SmoothedMeasure smooth(const CountingMeasure& cm, double r);

/// -log max(1, |z|)
double potential_mu(std::complex<double> z);
/// (1/n) sum -log max(r, |z - alpha_k|)
double potential_smoothed(const SmoothedMeasure& sm, std::complex<double> z);
/// -(1/n) sum log|z - alpha_k|; throws SingularPoint when z lies within a
/// point's error radius.
double potential_counting(const CountingMeasure& cm, std::complex<double> z);

/// Energy of two uniform circle measures of radius r whose centers are d
/// apart: -log d when d >= 2r, circle quadrature otherwise.
double mutual_circle_energy(double d, double r, double tol = 1e-12);
/// int p_mu over the circle |z - alpha| = r.
double circle_mu_potential(std::complex<double> alpha, double r, double tol = 1e-12);

struct EnergyTerms {
  /// int p_{tau^r} d tau^r
  double self = 0.0;
  /// int p_mu d tau^r
  double cross = 0.0;
  /// I[sigma] = self - 2 cross
  double value = 0.0;
  /// (-sum_{j!=k} log|alpha_j - alpha_k| - n log r) / n^2, which bounds self.
  double self_pair_bound = 0.0;
};

/// I[sigma] for sigma = tau_n^r - mu, with its parts.
EnergyTerms energy_sigma_terms(const SmoothedMeasure& sm, double tol = 1e-12);
double energy_sigma(const SmoothedMeasure& sm, double tol = 1e-12);

/// (2/n) log M - (1/n^2) log|a_n^2 Delta| - (1/n) log r + 4r with M taken
/// from the measure's points. Throws DiscriminantZero.
double energy_upper_bound(const IntPolynomial& p, const CountingMeasure& cm, double r);

/// (1/n^2) sum_{j!=k} -log|alpha_j - alpha_k|; SingularPoint on coincident
/// points.
double discrete_energy(const CountingMeasure& cm);
/// sum_{j!=k} log|alpha_j - alpha_k|, summed in a fixed order.
double log_pair_product(const CountingMeasure& cm);

/// (1/n^2) sum_{j,k} min(-log|alpha_j - alpha_k|, cutoff), diagonal = cutoff.
double truncated_energy(const CountingMeasure& cm, double cutoff);

/// Dirichlet integral of p_sigma by central differences on the square
/// [-half_width, half_width]^2 at the given spacing and half of it,
/// extrapolated to zero spacing; error is the gap between the two grids.
DirichletValue potential_dirichlet(const SmoothedMeasure& sm, double spacing, double half_width);

}  // namespace equid
