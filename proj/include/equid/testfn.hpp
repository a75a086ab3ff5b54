#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace equid {

/// Dirichlet integral estimate: value at the finer grid, error = |D_h - D_{h/2}|.
struct DirichletValue {
  double value = 0.0;
  double error = 0.0;
  double grid_h = 0.0;
};

/// Compactly supported Lipschitz function on the plane with its certified
/// constants. Copies share one lazily computed Dirichlet integral.
class TestFunction {
 public:
  using Evaluator = std::function<double(std::complex<double>)>;

  struct Params {
    std::string name;
    Evaluator eval;
    double lipschitz = 0.0;
    double support = 0.0;
    /// Angles where t -> phi(e^{it}) has a kink; empty when smooth.
    std::vector<double> circle_breakpoints;
    /// Radii of circles (centered at 0) where the gradient jumps.
    std::vector<double> kink_radii;
    /// Grid spacing for the cached Dirichlet integral.
    double dirichlet_h = 1.0 / 512;
  };

  explicit TestFunction(Params p);

  double operator()(std::complex<double> z) const { return params_->eval(z); }
  const std::string& name() const { return params_->name; }
  double lipschitz() const { return params_->lipschitz; }
  double support_radius() const { return params_->support; }
  const std::vector<double>& circle_breakpoints() const { return params_->circle_breakpoints; }
  const std::vector<double>& kink_radii() const { return params_->kink_radii; }

  /// Computed on first use at grid spacing dirichlet_h, then shared.
  const DirichletValue& dirichlet() const;
  bool dirichlet_cached() const;

 private:
  struct Cache;
  std::shared_ptr<const Params> params_;
  std::shared_ptr<Cache> cache_;
};

/// Re z inside the unit disk, Re z (1 - log|z|) on 1 <= |z| <= e, 0 beyond;
/// A = sqrt(5)/2, R = e.
TestFunction cor22_phi();

/// log|z0 - w| inside the unit disk, (1 - log|w|) log|1 - conj(z0) w| on
/// 1 <= |w| <= e, 0 beyond. Requires |z0| > 1.
TestFunction cor23_phi(std::complex<double> z0);
/// cor23_phi at z0 = 1 + 1/n.
TestFunction cor23_phi_for_degree(int n);

/// a(theta) b(|z|): a is 1 on [phi1, phi2], ramps linearly to 0 over
/// angular distance eps; b(s) = 2s on [0, 1/2], 1 on [1/2, 1], 2 - s on
/// [1, 2], 0 beyond. Requires 0 <= phi1 < phi2 < 2pi, eps < (phi2-phi1)/2
/// and phi2 - phi1 + 2 eps < 2pi.
TestFunction smoothed_indicator(double phi1, double phi2, double eps);

/// Constant c everywhere inside |z| <= R (not compactly supported in the
/// Lipschitz sense unless c = 0; used for degenerate checks).
TestFunction constant_phi(double c);

/// "cor22", "cor23:n=64", "sector:phi1:phi2:eps", "zero".
TestFunction parse_testfn(std::string_view name);

/// Central-difference gradient on a square grid of spacing h covering the
/// support, offset by h/3; value from spacing h/2, error |D_h - D_{h/2}|.
/// Throws NonConvergence when the two grids disagree by more than half the
/// value.
DirichletValue dirichlet_integral(const TestFunction& phi, double h);
/// Same without the divergence check.
DirichletValue dirichlet_estimate(const TestFunction& phi, double h);

struct ModulusOfContinuity {
  /// A r, the value the inequalities use.
  double certified = 0.0;
  /// Largest |phi(z) - phi(t)| seen over sampled pairs with |z - t| <= r.
  double sampled = 0.0;
};
ModulusOfContinuity modulus_of_continuity(const TestFunction& phi, double r, unsigned samples = 20000,
                                          std::uint64_t seed = 1);

/// Largest |phi(z) - phi(t)| / |z - t| over random pairs in |z| <= R + 1,
/// for auditing the certified constant.
double lipschitz_audit(const TestFunction& phi, unsigned pairs, std::uint64_t seed);

}  // namespace equid
