#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "equid/roots.hpp"
#include "equid/testfn.hpp"

namespace equid {

/// tau_n: mass 1/n at each point.
struct CountingMeasure {
  std::vector<std::complex<double>> points;
  /// Error radii of the points, or empty when exact.
  std::vector<double> radii;

  int n() const { return static_cast<int>(points.size()); }
};

CountingMeasure counting_measure(const RootSet& rs);

std::complex<double> mean(const CountingMeasure& cm);
/// (1/n) sum alpha_k^m
std::complex<double> moment(const CountingMeasure& cm, unsigned m);

/// Closed sector phi1 <= arg z <= phi2 with 0 <= phi1 < phi2 < 2pi.
struct Sector {
  double phi1 = 0.0;
  double phi2 = 0.0;
};

/// "phi1:phi2" in radians or "deg:a:b" in degrees.
Sector parse_sector(std::string_view text);
std::string to_string(const Sector& s);

/// The 16 sectors [j pi/8, (j+1) pi/8]; the last ends just below 2pi.
std::vector<Sector> dyadic_sectors();

struct SectorCount {
  Sector sector;
  int count = 0;
  /// Points whose error disk meets a boundary ray, so membership could flip.
  int near_boundary = 0;
  /// Points at the origin, which lie in no sector.
  int at_origin = 0;
};

/// Argument in [0, 2pi).
double arg_2pi(std::complex<double> z);

SectorCount sector_count(const CountingMeasure& cm, double phi1, double phi2);
/// |N/n - (phi2 - phi1)/(2pi)|
double sector_discrepancy(const CountingMeasure& cm, double phi1, double phi2);

/// (1/n) sum phi(alpha_k)
double integrate(const CountingMeasure& cm, const TestFunction& phi);

struct QuadratureValue {
  double value = 0.0;
  /// Difference between the last two refinement levels.
  double error = 0.0;
  long evaluations = 0;
};

/// (1/2pi) int_0^{2pi} f(t) dt: periodic trapezoid doubling when f is
/// smooth, or Romberg on each piece between the given breakpoints. Throws
/// NonConvergence when successive levels still differ after ~4M points.
QuadratureValue circle_average(const std::function<double(double)>& f, std::vector<double> breakpoints,
                               double tol = 1e-10);

/// int phi dmu over the unit circle.
QuadratureValue mu_integral(const TestFunction& phi, double tol = 1e-10);

}  // namespace equid
