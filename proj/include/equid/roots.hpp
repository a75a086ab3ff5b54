#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "equid/errors.hpp"
#include "equid/intpoly.hpp"

namespace equid {

/// Working precision of the root solver.
enum class Precision {
  double_only,  ///< Aberth iteration and certification only; never escalate.
  automatic,    ///< Polish in binary128 any root whose double radius exceeds tol.
  quad,         ///< Always polish every root in binary128.
};

struct RootOptions {
  double tol = 1e-12;
  int max_iterations = 500;
  Precision precision = Precision::automatic;
};

struct Root {
  std::complex<double> value;
  /// A disk of this radius about value contains a zero of P.
  double radius = 0.0;
  /// Multiplicity of the exact repeated factor this root came from.
  unsigned multiplicity = 1;
  /// Overlaps another root's disk (repeated root or unresolved near-collision);
  /// its radius is enlarged to cover the whole cluster.
  bool clustered = false;
  /// Derivative too small to certify; radius is a separation heuristic.
  bool radius_fallback = false;
};

/// All n zeros of P (multiplicities repeated), sorted by argument in [0, 2pi)
/// then modulus.
struct RootSet {
  std::vector<Root> roots;
  int source_degree = 0;
  /// max_k |alpha_k| + radius_k
  double max_modulus = 0.0;
  double tolerance = 0.0;
  bool extended_precision_used = false;
  int iterations = 0;

  std::size_t size() const { return roots.size(); }
  std::vector<std::complex<double>> values() const;
  std::vector<double> radii() const;
  double max_radius() const;
};

/// Carries the best-so-far roots when a root stays uncertified.
class RootNonConvergence : public NonConvergence {
 public:
  RootNonConvergence(const std::string& what, RootSet best)
      : NonConvergence(what), best_(std::move(best)) {}
  const RootSet& best_so_far() const { return best_; }

 private:
  RootSet best_;
};

/// Simultaneous Aberth-Ehrlich iteration on each exact square-free factor,
/// with a-posteriori radius n|P(z)|/|P'(z)| evaluated in binary128.
RootSet find_roots(const IntPolynomial& p, const RootOptions& options = {});
inline RootSet find_roots(const IntPolynomial& p, double tol) {
  RootOptions o;
  o.tol = tol;
  return find_roots(p, o);
}

/// Every |alpha_k| <= 1 + radius_k + slack.
bool verify_in_disk(const RootSet& rs, double slack = 0.0);

/// Positive root of |a_n| x^n = sum_{j<n} |a_j| x^j: every zero has modulus
/// at most this.
double cauchy_bound(const IntPolynomial& p);

}  // namespace equid
