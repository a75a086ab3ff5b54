#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equid/intpoly.hpp"
#include "equid/roots.hpp"
#include "equid/testfn.hpp"
#include "equid/zmeasure.hpp"

namespace equid {

enum class NormKind { sup, lp, mahler };

struct NormValue {
  /// May be +inf when the norm overflows a double; log_value is always finite.
  double value = 0.0;
  double log_value = 0.0;
  NormKind kind = NormKind::sup;
  /// Exponent for lp, 0 otherwise.
  double p = 0.0;
  double certified_error = 0.0;
};

/// |a_n| prod max(1, |alpha_k|); certified_error from the root radii.
NormValue mahler_jensen(const IntPolynomial& p, const RootSet& rs);
/// Same from bare points, without an error bound.
double log_mahler_from_points(const IntPolynomial& p, const std::vector<std::complex<double>>& points);

/// exp of the circle average of log|P|, by Gauss-Legendre panels graded
/// toward the arguments of zeros near the circle. Roots are only used to
/// place panels.
NormValue mahler_quadrature(const IntPolynomial& p, const RootSet& rs, double tol = 1e-12);
NormValue mahler_quadrature(const IntPolynomial& p, double tol = 1e-12);

/// Max of |P| on the unit circle: grid of at least 16n points, then
/// golden-section polish around the best candidates. certified_error bounds
/// true - value using |P'| <= n ||P|| on the circle.
NormValue sup_norm(const IntPolynomial& p);

/// ((1/2pi) int |P(e^{it})|^p dt)^{1/p}
NormValue lp_norm(const IntPolynomial& p, double exponent, const RootSet& rs, double tol = 1e-12);
NormValue lp_norm(const IntPolynomial& p, double exponent, double tol = 1e-12);

/// 16 sqrt((1/n) log(||P||_inf / sqrt|a_0 a_n|)). Throws ZeroCoefficient
/// when a_0 = 0.
double erdos_turan_rhs(const IntPolynomial& p);
double erdos_turan_rhs(const IntPolynomial& p, const NormValue& sup);

/// A (2R+1) sqrt(log max(n, M) / n) with M given by its logarithm.
double energy22_value(int n, double log_mahler, double A, double R);
/// Throws HypothesisViolation when n < 55 or P has a repeated factor.
double energy22_rhs(const IntPolynomial& p, const RootSet& rs, double A, double R);

/// (2/n) log M - (1/n^2) log|a_n^2 Delta| - (1/n) log r + 4r.
double energy_bound_value(int n, double log_mahler, double log_an2_disc, double r);
/// log|a_n^2 Delta(P)| from the exact discriminant; throws DiscriminantZero.
double log_an2_discriminant(const IntPolynomial& p);

/// 1 / max(n, M)
double default_radius(int n, double log_mahler);

/// omega(r) + sqrt(D / 2pi) sqrt(energy bound), with omega = A r and
/// D = value + error of the cached Dirichlet integral. Throws
/// InfeasibleRadius when the energy term is negative.
double main23_value(const TestFunction& phi, int n, double log_mahler, double log_an2_disc, double r);
double main23_rhs(const IntPolynomial& p, const RootSet& rs, const TestFunction& phi,
                  std::optional<double> r = std::nullopt);

/// 8 sqrt(log n / n)
double schur_mean_rhs(int n);
/// Schur's limsup bound, 1 - sqrt(e)/2, printed next to sweeps.
double schur_reference_line();

enum class BoundKind { erdos_turan, energy_22, main_23, schur_mean };
std::string to_string(BoundKind k);

struct BoundReport {
  BoundKind kind = BoundKind::erdos_turan;
  double lhs = 0.0;
  /// NaN when the right side is undefined (zero discriminant).
  double rhs = 0.0;
  double slack = 0.0;
  /// Sector or test function the report refers to.
  std::string subject;
  std::vector<std::pair<std::string, double>> inputs;
  /// Hypothesis failures and adjustments (deflation, infeasible radius).
  std::vector<std::string> notes;
  /// False when a hypothesis failed, so the inequality need not hold.
  bool binding = true;

  void set(double l, double r) {
    lhs = l;
    rhs = r;
    slack = r - l;
  }
};

/// Everything the reports share, computed once per polynomial.
struct PolyContext {
  IntPolynomial poly;
  RootSet roots;
  CountingMeasure measure;
  int n = 0;
  double log_mahler = 0.0;
  bool squarefree = false;
  bool in_disk = false;
  /// log|a_n^2 Delta|, empty when Delta = 0.
  std::optional<double> log_an2_disc;
  NormValue sup;
};

PolyContext make_context(const IntPolynomial& p, const RootSet& rs);

/// Discrepancy against the Erdos-Turan bound. Zeros at the origin are
/// divided out first and noted.
BoundReport erdos_turan_report(const PolyContext& ctx, const Sector& s);
BoundReport energy22_report(const PolyContext& ctx, const TestFunction& phi);
BoundReport main23_report(const PolyContext& ctx, const TestFunction& phi, std::optional<double> r = std::nullopt);
/// |s_n| against 8 sqrt(log n / n); M defaults to |a_n|.
BoundReport schur_mean_report(const PolyContext& ctx, std::optional<double> M = std::nullopt);

}  // namespace equid
