#include "equid/families.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "equid/errors.hpp"
#include "equid/roots.hpp"

namespace equid {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below(0)");
  // reject the top partial block so every residue is equally likely
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % bound;
}

long Rng::between(long lo, long hi) {
  return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

double Rng::unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::binomial: return "binomial";
    case FamilyKind::cyclotomic_product: return "cyclotomic_product";
    case FamilyKind::schur: return "schur";
    case FamilyKind::multiplicity: return "multiplicity";
    case FamilyKind::random_disk: return "random_disk";
  }
  return "?";
}

FamilyKind parse_family_kind(std::string_view name) {
  if (name == "binomial") return FamilyKind::binomial;
  if (name == "cyclotomic_product" || name == "kronecker" || name == "cyclotomic") return FamilyKind::cyclotomic_product;
  if (name == "schur") return FamilyKind::schur;
  if (name == "multiplicity") return FamilyKind::multiplicity;
  if (name == "random_disk") return FamilyKind::random_disk;
  throw ParseError("unknown family '" + std::string(name) + "'");
}

IntPolynomial binomial(int n) {
  if (n < 1) throw std::invalid_argument("binomial family needs n >= 1");
  return IntPolynomial::monomial(1, static_cast<std::size_t>(n)) - IntPolynomial({1});
}

namespace {

std::vector<unsigned long> prime_factors(unsigned long k) {
  std::vector<unsigned long> ps;
  for (unsigned long p = 2; p * p <= k; ++p) {
    if (k % p == 0) {
      ps.push_back(p);
      while (k % p == 0) k /= p;
    }
  }
  if (k > 1) ps.push_back(k);
  return ps;
}

// p * (z^d - 1)
std::vector<ExactInteger> times_binomial(const std::vector<ExactInteger>& p, std::size_t d) {
  std::vector<ExactInteger> out(p.size() + d);
  for (std::size_t j = 0; j < p.size(); ++j) {
    out[j + d] += p[j];
    out[j] -= p[j];
  }
  return out;
}

// p / (z^d - 1), assumed exact
std::vector<ExactInteger> over_binomial(const std::vector<ExactInteger>& p, std::size_t d) {
  std::vector<ExactInteger> q(p.size() - d);
  for (std::size_t j = 0; j < q.size(); ++j) {
    q[j] = -p[j];
    if (j >= d) q[j] += q[j - d];
  }
  return q;
}

// Phi_k for squarefree k
IntPolynomial cyclotomic_squarefree(unsigned long k, const std::vector<unsigned long>& primes) {
  std::vector<std::pair<unsigned long, int>> divisors{{1, 1}};  // (d, mu(d))
  for (unsigned long p : primes) {
    const std::size_t m = divisors.size();
    for (std::size_t i = 0; i < m; ++i) {
      const auto [d, mu] = divisors[i];
      divisors.emplace_back(d * p, -mu);
    }
  }
  // prod_{d | k} (z^(k/d) - 1)^mu(d), numerator first so every division is exact
  std::vector<ExactInteger> acc{1};
  for (const auto& [d, mu_d] : divisors) {
    if (mu_d == 1) acc = times_binomial(acc, k / d);
  }
  for (const auto& [d, mu_d] : divisors) {
    if (mu_d == -1) acc = over_binomial(acc, k / d);
  }
  return IntPolynomial(std::move(acc));
}

std::mutex cyclotomic_mutex;
std::map<unsigned, IntPolynomial> cyclotomic_cache;

IntPolynomial product_tree(const std::vector<IntPolynomial>& f, std::size_t lo, std::size_t hi) {
  if (hi == lo) return IntPolynomial({1});
  if (hi - lo == 1) return f[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return product_tree(f, lo, mid) * product_tree(f, mid, hi);
}

}  // namespace

unsigned long euler_phi(unsigned long k) {
  if (k == 0) return 0;
  unsigned long r = k;
  for (unsigned long p : prime_factors(k)) r = r / p * (p - 1);
  return r;
}

int moebius(unsigned long k) {
  if (k == 0) return 0;
  int mu = 1;
  for (unsigned long p = 2; p * p <= k; ++p) {
    if (k % p == 0) {
      k /= p;
      if (k % p == 0) return 0;
      mu = -mu;
    }
  }
  if (k > 1) mu = -mu;
  return mu;
}

IntPolynomial cyclotomic(unsigned k) {
  if (k == 0) throw std::invalid_argument("cyclotomic index must be >= 1");
  {
    std::lock_guard<std::mutex> lock(cyclotomic_mutex);
    auto it = cyclotomic_cache.find(k);
    if (it != cyclotomic_cache.end()) return it->second;
  }
  const auto primes = prime_factors(k);
  unsigned long rad = 1;
  for (unsigned long p : primes) rad *= p;
  IntPolynomial base = cyclotomic_squarefree(rad, primes);
  IntPolynomial result = base;
  if (rad != k) {
    // Phi_k(z) = Phi_rad(z^(k/rad))
    const std::size_t stretch = k / rad;
    std::vector<ExactInteger> c((base.coeffs().size() - 1) * stretch + 1);
    for (std::size_t j = 0; j < base.coeffs().size(); ++j) c[j * stretch] = base.coeffs()[j];
    result = IntPolynomial(std::move(c));
  }
  std::lock_guard<std::mutex> lock(cyclotomic_mutex);
  cyclotomic_cache.emplace(k, result);
  return result;
}

std::vector<unsigned> kronecker_indices(int n, std::uint64_t seed, const std::vector<unsigned>& excluded) {
  if (n < 0) throw InfeasibleDegree("negative degree");
  if (n == 0) return {};
  const unsigned limit = 8u * static_cast<unsigned>(n) + 16u;
  // phi by sieve
  std::vector<unsigned> phi(limit + 1);
  for (unsigned k = 0; k <= limit; ++k) phi[k] = k;
  for (unsigned p = 2; p <= limit; ++p) {
    if (phi[p] == p) {
      for (unsigned k = p; k <= limit; k += p) phi[k] -= phi[k] / p;
    }
  }
  std::vector<unsigned> cand;
  for (unsigned k = 1; k <= limit; ++k) {
    if (phi[k] <= static_cast<unsigned>(n) && std::find(excluded.begin(), excluded.end(), k) == excluded.end())
      cand.push_back(k);
  }
  Rng rng(seed);
  rng.shuffle(cand);

  // reach[i] has bit s set iff some subset of cand[i..] has degree sum s
  const std::size_t words = static_cast<std::size_t>(n) / 64 + 1;
  const std::size_t K = cand.size();
  std::vector<std::uint64_t> reach((K + 1) * words, 0);
  auto row = [&](std::size_t i) { return reach.data() + i * words; };
  auto test = [&](std::size_t i, unsigned s) { return (row(i)[s / 64] >> (s % 64)) & 1u; };
  row(K)[0] = 1;
  for (std::size_t i = K; i-- > 0;) {
    const std::uint64_t* src = row(i + 1);
    std::uint64_t* dst = row(i);
    const unsigned d = phi[cand[i]];
    const std::size_t ws = d / 64, bs = d % 64;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t shifted = 0;
      if (w >= ws) {
        shifted = src[w - ws] << bs;
        if (bs && w > ws) shifted |= src[w - ws - 1] >> (64 - bs);
      }
      dst[w] = src[w] | shifted;
    }
  }
  if (!test(0, static_cast<unsigned>(n)))
    throw InfeasibleDegree("no distinct cyclotomic product of degree " + std::to_string(n));

  std::vector<unsigned> chosen;
  unsigned remaining = static_cast<unsigned>(n);
  for (std::size_t i = 0; i < K && remaining > 0; ++i) {
    const unsigned d = phi[cand[i]];
    if (d <= remaining && test(i + 1, remaining - d)) {
      chosen.push_back(cand[i]);
      remaining -= d;
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

IntPolynomial product_of_cyclotomics(const std::vector<unsigned>& indices) {
  std::vector<IntPolynomial> f;
  f.reserve(indices.size());
  for (unsigned k : indices) f.push_back(cyclotomic(k));
  return product_tree(f, 0, f.size());
}

IntPolynomial kronecker_product(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("kronecker family needs n >= 1");
  return product_of_cyclotomics(kronecker_indices(n, seed));
}

namespace {

void check_nm(int n, double M) {
  if (n < 1) throw std::invalid_argument("family degree n must be >= 1");
  if (!(M >= 1.0)) throw std::invalid_argument("leading coefficient bound M must be >= 1");
}

Generated schur_generated(int n, double M, std::uint64_t seed) {
  check_nm(n, M);
  Rng rng(seed);
  const auto bound = static_cast<std::uint64_t>(std::floor(M));
  const long a = 1 + static_cast<long>(rng.below(bound));
  Generated g;
  g.indices = kronecker_indices(n, rng.next());
  g.poly = ExactInteger(a) * product_of_cyclotomics(g.indices);
  return g;
}

Generated multiplicity_generated(int n, unsigned m, std::uint64_t seed, std::optional<unsigned> q) {
  if (n < 1) throw std::invalid_argument("family degree n must be >= 1");
  Rng rng(seed);
  if (!q) {
    std::vector<unsigned> small;
    for (unsigned k : {1u, 2u, 3u, 4u, 6u}) {
      if (static_cast<unsigned long>(m) * euler_phi(k) <= static_cast<unsigned long>(n)) small.push_back(k);
    }
    if (small.empty()) throw InfeasibleDegree("repeated factor exceeds degree");
    q = small[rng.below(small.size())];
  }
  const long used = static_cast<long>(m) * static_cast<long>(euler_phi(*q));
  if (used > n) throw InfeasibleDegree("m * deg(Phi_q) exceeds n");
  Generated g;
  g.indices = kronecker_indices(static_cast<int>(n - used), rng.next(), {*q});
  g.poly = pow(cyclotomic(*q), m) * product_of_cyclotomics(g.indices);
  for (unsigned i = 0; i < m; ++i) g.indices.push_back(*q);
  std::sort(g.indices.begin(), g.indices.end());
  return g;
}

double log_binomial(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

}  // namespace

IntPolynomial schur_sample(int n, double M, std::uint64_t seed) { return *schur_generated(n, M, seed).poly; }

IntPolynomial multiplicity_family(int n, unsigned m, std::uint64_t seed, std::optional<unsigned> q) {
  return *multiplicity_generated(n, m, seed, q).poly;
}

Generated random_disk(int n, double M, std::uint64_t seed, unsigned attempts) {
  check_nm(n, M);
  if (attempts < 1) throw std::invalid_argument("random_disk needs at least one attempt");
  const long bound = static_cast<long>(std::floor(M));
  Rng rng(seed);
  Generated g;
  for (unsigned t = 1; t <= attempts; ++t) {
    g.attempts_used = t;
    std::vector<ExactInteger> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k < n; ++k) c[k] = rng.between(-bound, bound);
    long lead = 0;
    while (lead == 0) lead = rng.between(-bound, bound);
    c[n] = lead;
    // zeros in the disk force |a_{n-k}| <= C(n,k) |a_n|
    bool plausible = true;
    for (int k = 1; k <= n && plausible; ++k) {
      const double a = std::fabs(c[n - k].get_d());
      if (a > 0 && std::log(a) > log_binomial(n, k) + std::log(static_cast<double>(std::labs(lead))) + 1e-12)
        plausible = false;
    }
    if (!plausible) continue;
    IntPolynomial p(std::move(c));
    if (!is_squarefree(p)) continue;
    try {
      if (!verify_in_disk(find_roots(p, 1e-12), 0.0)) continue;
    } catch (const NonConvergence&) {
      continue;
    }
    g.poly = std::move(p);
    return g;
  }
  return g;
}

Generated generate(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::binomial: {
      Generated g;
      g.poly = binomial(spec.n);
      return g;
    }
    case FamilyKind::cyclotomic_product: {
      if (spec.n < 1) throw std::invalid_argument("family degree n must be >= 1");
      Generated g;
      g.indices = kronecker_indices(spec.n, spec.seed);
      g.poly = product_of_cyclotomics(g.indices);
      return g;
    }
    case FamilyKind::schur:
      return schur_generated(spec.n, spec.M, spec.seed);
    case FamilyKind::multiplicity: {
      const unsigned m = spec.multiplicity.value_or(
          static_cast<unsigned>(std::floor(std::sqrt(static_cast<double>(std::max(spec.n, 0))))));
      return multiplicity_generated(spec.n, m, spec.seed, spec.repeated_index);
    }
    case FamilyKind::random_disk:
      return random_disk(spec.n, spec.M, spec.seed, spec.attempts);
  }
  throw std::logic_error("unhandled family kind");
}

}  // namespace equid
