#include "equid/roots.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "scaled_poly.hpp"

namespace equid {

std::vector<std::complex<double>> RootSet::values() const {
  std::vector<std::complex<double>> v;
  v.reserve(roots.size());
  for (const auto& r : roots) v.push_back(r.value);
  return v;
}

std::vector<double> RootSet::radii() const {
  std::vector<double> v;
  v.reserve(roots.size());
  for (const auto& r : roots) v.push_back(r.radius);
  return v;
}

double RootSet::max_radius() const {
  double m = 0.0;
  for (const auto& r : roots) m = std::max(m, r.radius);
  return m;
}

bool verify_in_disk(const RootSet& rs, double slack) {
  return std::all_of(rs.roots.begin(), rs.roots.end(), [&](const Root& r) {
    return std::abs(r.value) <= 1.0 + r.radius + slack;
  });
}

namespace {

using detail::cd;
using quad = __float128;

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;
const quad kQuadRoundoff = ldexpq(1.0, -113);

// ---------------------------------------------------------------------------
// binary128 complex arithmetic, just what Horner and Newton need

struct QC {
  quad re = 0, im = 0;
};
inline QC operator+(QC a, QC b) { return {a.re + b.re, a.im + b.im}; }
inline QC operator-(QC a, QC b) { return {a.re - b.re, a.im - b.im}; }
inline QC operator*(QC a, QC b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline QC operator/(QC a, QC b) {
  const quad d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline quad qabs(QC a) { return hypotq(a.re, a.im); }
inline QC to_qc(cd z) { return {z.real(), z.imag()}; }
inline cd to_cd(QC z) { return {static_cast<double>(z.re), static_cast<double>(z.im)}; }

// a * 2^-scale as binary128, exact up to 113 significant bits
quad mpz_to_quad_scaled(const ExactInteger& a, long scale) {
  if (sgn(a) == 0) return 0;
  const long bits = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2));
  ExactInteger t = a;
  long shift = 0;
  if (bits > 240) {
    shift = bits - 240;
    mpz_tdiv_q_2exp(t.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  }
  quad acc = 0;
  for (int part = 0; part < 5 && sgn(t) != 0; ++part) {
    const double d = mpz_get_d(t.get_mpz_t());
    acc += d;
    t -= d;
  }
  return ldexpq(acc, static_cast<int>(shift - scale));
}

struct QuadPoly {
  std::vector<quad> c;

  QuadPoly(const IntPolynomial& p, long scale) {
    c.reserve(p.coeffs().size());
    for (const auto& a : p.coeffs()) c.push_back(mpz_to_quad_scaled(a, scale));
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }

  struct Eval {
    QC p, dp;
    quad err_p, err_dp;
  };

  Eval eval(QC z) const {
    QC p, dp;
    quad ap = 0, adp = 0;
    const quad r = qabs(z);
    for (std::size_t k = c.size(); k-- > 0;) {
      dp = dp * z + p;
      adp = adp * r + ap;
      p = p * z + QC{c[k], 0};
      ap = ap * r + fabsq(c[k]);
    }
    const quad gamma = (8 * static_cast<quad>(c.size()) + 16) * kQuadRoundoff;
    return {p, dp, gamma * ap, 2 * gamma * adp};
  }

  /// n (|P| + err) / (|P'| - err), or +inf when P' is not resolved.
  double radius(cd z) const { return radius(eval(to_qc(z))); }
  double radius(const Eval& e) const {
    const quad den = qabs(e.dp) - e.err_dp;
    if (!(den > 0) || !(den > 4 * e.err_dp)) return std::numeric_limits<double>::infinity();
    const quad r = degree() * (qabs(e.p) + e.err_p) / den;
    const double rd = static_cast<double>(r);
    return std::nextafter(rd, std::numeric_limits<double>::infinity());
  }
};

// ---------------------------------------------------------------------------
// double-precision Aberth iteration

struct InverseRatio {
  cd value;     // P'(z) / P(z)
  bool noise;   // |P(z)| is below the rounding level of its evaluation
};

InverseRatio inverse_newton_ratio(const std::vector<double>& c, cd z) {
  const int n = static_cast<int>(c.size()) - 1;
  const double slack = 4.0 * (n + 1) * kUnitRoundoff;
  if (std::abs(z) <= 1.0) {
    cd p = 0.0, dp = 0.0;
    double ap = 0.0;
    const double r = std::abs(z);
    for (int k = n; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + c[k];
      ap = ap * r + std::fabs(c[k]);
    }
    const bool noise = std::abs(p) <= slack * ap;
    return {dp / p, noise};
  }
  // reversed polynomial in y = 1/z keeps powers bounded
  const cd y = 1.0 / z;
  const double r = std::abs(y);
  cd q = 0.0, dq = 0.0;
  double aq = 0.0;
  for (int j = 0; j <= n; ++j) {  // coefficient of y^(n-j)... Horner from y^n down
    dq = dq * y + q;
    q = q * y + c[j];
    aq = aq * r + std::fabs(c[j]);
  }
  // q = R(y) = sum_j c_j y^(n-j); P'/P = (n R - y R') / (z R)
  const bool noise = std::abs(q) <= slack * aq;
  return {(static_cast<double>(n) * q - y * dq) / (z * q), noise};
}

inline cd recip(cd d) {
  const double m = d.real() * d.real() + d.imag() * d.imag();
  return {d.real() / m, -d.imag() / m};
}

// Circles from the upper convex hull of (j, log|a_j|): a hull edge from i to
// k gets k - i points at radius (|a_i| / |a_k|)^(1 / (k - i)), the roots of
// the dominant binomial there. Angles get a small seeded jitter.
std::vector<cd> initial_points(const IntPolynomial& f) {
  const int n = f.degree();
  std::vector<int> idx;
  std::vector<double> la;
  for (int j = 0; j <= n; ++j) {
    if (sgn(f.coeffs()[j]) == 0) continue;
    const double v = log_abs(f.coeffs()[j]);
    while (idx.size() >= 2) {
      const int i0 = idx[idx.size() - 2], i1 = idx.back();
      const double l0 = la[la.size() - 2], l1 = la.back();
      // drop i1 when it lies on or below the chord from i0 to j
      if ((l1 - l0) * (j - i0) <= (v - l0) * (i1 - i0)) {
        idx.pop_back();
        la.pop_back();
      } else {
        break;
      }
    }
    idx.push_back(j);
    la.push_back(v);
  }
  std::mt19937_64 gen(0x5eedULL);
  std::vector<cd> z;
  z.reserve(n);
  for (std::size_t e = 0; e + 1 < idx.size(); ++e) {
    const int m = idx[e + 1] - idx[e];
    const double radius = std::exp((la[e] - la[e + 1]) / m);
    const double offset = 2.0 * std::numbers::pi * idx[e] / n + 0.7;
    for (int t = 0; t < m; ++t) {
      const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      const double theta = offset + 2.0 * std::numbers::pi * (t + 0.1 * u) / m;
      z.push_back(std::polar(radius, theta));
    }
  }
  return z;
}

int aberth(const std::vector<double>& c, std::vector<cd>& z, int max_iterations) {
  const int n = static_cast<int>(z.size());
  std::vector<char> done(n, 0);
  int it = 0;
  for (; it < max_iterations; ++it) {
    bool all = true;
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      all = false;
      const InverseRatio g = inverse_newton_ratio(c, z[k]);
      if (g.noise) {
        done[k] = 1;
        continue;
      }
      cd s = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != k) s += recip(z[k] - z[j]);
      }
      const cd w = recip(g.value - s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[k] -= w;
      if (std::abs(w) <= 2.0 * kUnitRoundoff * std::abs(z[k])) done[k] = 1;
    }
    if (all) break;
  }
  return it;
}

struct Polished {
  cd value;
  double radius;
};

// binary128 Newton steps with the Aberth deflation term against the others,
// stopping once the certified radius is comfortably below tol. The deflation
// sum only perturbs a tiny correction, so doubles suffice there.
Polished polish_quad(const QuadPoly& qp, const std::vector<cd>& z, std::size_t k, double tol) {
  QC x = to_qc(z[k]);
  Polished best{z[k], std::numeric_limits<double>::infinity()};
  for (int step = 0; step < 8; ++step) {
    const auto e = qp.eval(x);
    const double r = qp.radius(e);
    if (r < best.radius) best = {to_cd(x), r};
    if (r <= tol / 16 || (e.p.re == 0 && e.p.im == 0)) break;
    const cd xd = to_cd(x);
    cd s = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j != k) s += recip(xd - z[j]);
    }
    const QC w = QC{1, 0} / (e.dp / e.p - to_qc(s));
    if (isnanq(w.re) || isnanq(w.im) || isinfq(w.re) || isinfq(w.im)) break;
    x = x - w;
  }
  return best;
}

double separation_radius(const std::vector<cd>& z, std::size_t k) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (j != k) d = std::min(d, std::abs(z[k] - z[j]));
  }
  return std::isfinite(d) ? 0.5 * d : 1.0;
}

struct FactorSolve {
  std::vector<Root> roots;
  bool extended = false;
  int iterations = 0;
};

FactorSolve solve_squarefree(const IntPolynomial& f, const RootOptions& opt) {
  FactorSolve out;
  const int n = f.degree();
  const detail::ScaledPoly sp(f);
  const QuadPoly qp(f, sp.scale_exp);

  std::vector<cd> z = initial_points(f);
  out.iterations = aberth(sp.c, z, opt.max_iterations);

  std::vector<double> rad(n);
  for (int k = 0; k < n; ++k) rad[k] = qp.radius(z[k]);

  if (opt.precision != Precision::double_only) {
    for (int k = 0; k < n; ++k) {
      if (opt.precision == Precision::quad || !(rad[k] <= opt.tol)) {
        const Polished pol = polish_quad(qp, z, k, opt.tol);
        if (pol.radius < rad[k]) {
          z[k] = pol.value;
          rad[k] = pol.radius;
        }
        out.extended = true;
      }
    }
  }

  for (int k = 0; k < n; ++k) {
    Root root;
    root.value = z[k];
    root.radius = rad[k];
    if (!std::isfinite(rad[k])) {
      root.radius = separation_radius(z, k);
      root.radius_fallback = true;
    } else if (z[k].imag() != 0.0 && std::fabs(z[k].imag()) <= rad[k]) {
      const cd snapped(z[k].real(), 0.0);
      const double r = qp.radius(snapped);
      if (r <= std::max(opt.tol, rad[k])) {
        root.value = snapped;
        root.radius = r;
      }
    }
    out.roots.push_back(root);
  }
  return out;
}

double arg_2pi(cd z) {
  double a = std::arg(z);
  if (a < 0) a += 2.0 * std::numbers::pi;
  return a;
}

// Union overlapping disks; members get radius covering the whole cluster.
void mark_clusters(std::vector<Root>& roots, const std::vector<int>& group) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool same_group = group[i] == group[j];
      const double d = std::abs(roots[i].value - roots[j].value);
      if (same_group || d < roots[i].radius + roots[j].radius) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[find(i)].push_back(i);
  for (const auto& m : members) {
    if (m.size() < 2) continue;
    std::vector<double> enlarged(m.size());
    for (std::size_t a = 0; a < m.size(); ++a) {
      double r = roots[m[a]].radius;
      for (std::size_t b : m) r = std::max(r, std::abs(roots[m[a]].value - roots[b].value) + roots[b].radius);
      enlarged[a] = r;
    }
    for (std::size_t a = 0; a < m.size(); ++a) {
      roots[m[a]].radius = enlarged[a];
      roots[m[a]].clustered = true;
    }
  }
}

}  // namespace

double cauchy_bound(const IntPolynomial& p) {
  const detail::ScaledPoly sp(p);
  const int n = sp.degree();
  if (n < 1) throw DegreeZero("Cauchy bound needs degree >= 1");
  const double lead = std::fabs(sp.c[n]);
  // g(x) = sum_{j<n} |c_j| x^(j-n) is decreasing; find g(x) = |c_n|
  auto g = [&](double logx) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      if (sp.c[j] != 0.0) s += std::fabs(sp.c[j]) * std::exp((j - n) * logx);
    }
    return s;
  };
  if (g(-700.0) == 0.0) return 0.0;
  double lo = 0.0, hi = 0.0;
  if (g(0.0) > lead) {
    while (g(hi) > lead) hi += 1.0;
    lo = hi - 1.0;
  } else {
    while (g(lo) <= lead && lo > -700.0) lo -= 1.0;
    hi = lo + 1.0;
  }
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > lead ? lo : hi) = mid;
  }
  return std::exp(hi);
}

RootSet find_roots(const IntPolynomial& p, const RootOptions& options) {
  if (p.is_zero()) throw ZeroPolynomial("roots of the zero polynomial");
  const int n = p.degree();
  if (n == 0) throw DegreeZero("a nonzero constant has no roots");
  if (!(options.tol > 0)) throw std::invalid_argument("root tolerance must be positive");

  RootSet rs;
  rs.source_degree = n;
  rs.tolerance = options.tol;

  std::vector<Root> roots;
  std::vector<int> group;
  int next_group = 0;

  unsigned at_origin = 0;
  const IntPolynomial core = deflate_origin(p, &at_origin);
  for (unsigned i = 0; i < at_origin; ++i) {
    Root r;
    r.multiplicity = at_origin;
    roots.push_back(r);
    group.push_back(at_origin > 1 ? next_group : -1 - static_cast<int>(i));
  }
  ++next_group;

  std::vector<std::pair<IntPolynomial, unsigned>> factors;
  if (core.degree() > 0) {
    if (squarefree_modular(core)) {
      factors.emplace_back(core, 1);
    } else {
      factors = squarefree_decomposition(core);
    }
  }

  int singleton = -1000000;
  for (const auto& [f, mult] : factors) {
    FactorSolve fs = solve_squarefree(f, options);
    rs.extended_precision_used |= fs.extended;
    rs.iterations = std::max(rs.iterations, fs.iterations);
    for (const Root& base : fs.roots) {
      const int g = mult > 1 ? next_group++ : singleton--;
      for (unsigned c = 0; c < mult; ++c) {
        Root r = base;
        r.multiplicity = mult;
        roots.push_back(r);
        group.push_back(g);
      }
    }
  }

  mark_clusters(roots, group);

  std::vector<std::size_t> order(roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double aa = arg_2pi(roots[a].value), ab = arg_2pi(roots[b].value);
    if (aa != ab) return aa < ab;
    return std::abs(roots[a].value) < std::abs(roots[b].value);
  });
  for (std::size_t i : order) rs.roots.push_back(roots[i]);
  for (const auto& r : rs.roots) rs.max_modulus = std::max(rs.max_modulus, std::abs(r.value) + r.radius);

  for (const auto& r : rs.roots) {
    if (!r.clustered && !(r.radius <= options.tol)) {
      std::ostringstream os;
      os << "root " << r.value << " certified only to radius " << r.radius << " > tol " << options.tol;
      throw RootNonConvergence(os.str(), rs);
    }
  }
  return rs;
}

}  // namespace equid
