#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "equid/intpoly.hpp"

namespace equid {

/// Seeded stream on top of std::mt19937_64, whose output sequence is fixed
/// by the C++ standard. Bounded draws use rejection sampling, never
/// std::uniform_int_distribution, so results agree across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t next() { return gen_(); }
  /// Uniform on [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [lo, hi].
  long between(long lo, long hi);
  /// Uniform on [0, 1) with 53 random bits.
  double unit();
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 gen_;
};

enum class FamilyKind { binomial, cyclotomic_product, schur, multiplicity, random_disk };

std::string to_string(FamilyKind k);
/// Accepts the names above plus "kronecker" as an alias for cyclotomic_product.
FamilyKind parse_family_kind(std::string_view name);

struct FamilySpec {
  FamilyKind kind = FamilyKind::binomial;
  int n = 1;
  double M = 1.0;
  std::uint64_t seed = 0;
  /// multiplicity: repeated-factor exponent m; default floor(sqrt(n)).
  std::optional<unsigned> multiplicity;
  /// multiplicity: index k of the repeated factor Phi_k; seeded when absent.
  std::optional<unsigned> repeated_index;
  /// random_disk: attempt budget.
  unsigned attempts = 2000;
};

/// Output of a generator. poly is empty only when random_disk runs out of
/// attempts.
struct Generated {
  std::optional<IntPolynomial> poly;
  unsigned attempts_used = 1;
  /// Cyclotomic indices used, for structured families.
  std::vector<unsigned> indices;
};

/// z^n - 1
IntPolynomial binomial(int n);

unsigned long euler_phi(unsigned long k);
int moebius(unsigned long k);

/// k-th cyclotomic polynomial, memoized and thread-safe.
IntPolynomial cyclotomic(unsigned k);

/// Distinct cyclotomic indices whose degrees sum to n, in increasing order.
/// Throws InfeasibleDegree if no such choice exists avoiding `excluded`.
std::vector<unsigned> kronecker_indices(int n, std::uint64_t seed, const std::vector<unsigned>& excluded = {});
IntPolynomial product_of_cyclotomics(const std::vector<unsigned>& indices);
IntPolynomial kronecker_product(int n, std::uint64_t seed);

/// a * (distinct cyclotomic product) with a uniform on 1..floor(M).
IntPolynomial schur_sample(int n, double M, std::uint64_t seed);

/// Phi_q^m times a distinct-cyclotomic cofactor of degree n - m deg Phi_q
/// avoiding Phi_q. q defaults to a seeded choice among 1, 2, 3, 4, 6.
IntPolynomial multiplicity_family(int n, unsigned m, std::uint64_t seed, std::optional<unsigned> q = std::nullopt);

/// Rejection sampling over coefficients in [-floor(M), floor(M)]; accepted
/// when square-free with every root certified in the closed disk.
Generated random_disk(int n, double M, std::uint64_t seed, unsigned attempts);

Generated generate(const FamilySpec& spec);

}  // namespace equid
