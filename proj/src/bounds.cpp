#include "equid/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "equid/errors.hpp"
#include "scaled_poly.hpp"

namespace equid {

using cd = std::complex<double>;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kGaussPoints = 16;

struct GaussRule {
  std::array<double, kGaussPoints> x{}, w{};
  GaussRule() {
    // Newton on P_16 from the Chebyshev guesses
    for (int i = 0; i < kGaussPoints; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (kGaussPoints + 0.5));
      double dp = 0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1, p1 = z;
        for (int k = 2; k <= kGaussPoints; ++k) {
          const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = kGaussPoints * (z * p1 - p0) / (z * z - 1);
        const double dz = p1 / dp;
        z -= dz;
        if (std::fabs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1 - z * z) * dp * dp);
    }
  }
};

const GaussRule& gauss() {
  static const GaussRule rule;
  return rule;
}

double wrap(double t) {
  double a = std::fmod(t, kTwoPi);
  if (a < 0) a += kTwoPi;
  return a;
}

// Panel edges on [0, 2pi] graded geometrically toward each critical angle,
// down to a width comparable with that zero's distance from the circle.
std::vector<double> graded_edges(std::vector<std::pair<double, double>> crit, double max_panel) {
  std::vector<double> edges;
  auto push_uniform = [&](double a, double b) {
    const int k = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel)));
    for (int i = 0; i < k; ++i) edges.push_back(a + (b - a) * i / k);
  };
  if (crit.empty()) {
    push_uniform(0.0, kTwoPi);
    edges.push_back(kTwoPi);
    return edges;
  }
  for (auto& c : crit) c.first = wrap(c.first);
  std::sort(crit.begin(), crit.end());
  // merge angles that coincide to rounding, keeping the smallest distance
  std::vector<std::pair<double, double>> merged;
  for (const auto& c : crit) {
    if (!merged.empty() && c.first - merged.back().first < 1e-13) {
      merged.back().second = std::min(merged.back().second, c.second);
    } else {
      merged.push_back(c);
    }
  }
  if (merged.size() > 1 && merged.front().first + kTwoPi - merged.back().first < 1e-13) {
    merged.front().second = std::min(merged.front().second, merged.back().second);
    merged.pop_back();
  }
  // integrate over [t0, t0 + 2pi] starting at the first critical angle
  const double t0 = merged.front().first;
  const std::size_t m = merged.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double a = merged[i].first;
    const double b = i + 1 < m ? merged[i + 1].first : t0 + kTwoPi;
    const double da = std::max(merged[i].second, 1e-16) / 2;
    const double db = std::max(merged[(i + 1) % m].second, 1e-16) / 2;
    const double half = 0.5 * (b - a);
    std::vector<double> pts{a};
    std::vector<double> near_a, near_b;
    for (double w = half / 2; w > da && w > half * 1e-17; w /= 2) near_a.push_back(a + w);
    for (double w = half / 2; w > db && w > half * 1e-17; w /= 2) near_b.push_back(b - w);
    pts.insert(pts.end(), near_a.rbegin(), near_a.rend());
    pts.push_back(a + half);
    pts.insert(pts.end(), near_b.begin(), near_b.end());
    pts.push_back(b);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) push_uniform(pts[k], pts[k + 1]);
  }
  edges.push_back(t0 + kTwoPi);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

// (1/2pi) int f over the panels, each split into 2^level equal parts
double panel_average(const std::function<double(double)>& f, const std::vector<double>& edges, int level) {
  const GaussRule& g = gauss();
  const int parts = 1 << level;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double len = (edges[i + 1] - edges[i]) / parts;
    for (int j = 0; j < parts; ++j) {
      const double c = edges[i] + (j + 0.5) * len;
      double s = 0.0;
      for (int k = 0; k < kGaussPoints; ++k) s += g.w[k] * f(c + 0.5 * len * g.x[k]);
      total += 0.5 * len * s;
    }
  }
  return total / kTwoPi;
}

double refined_average(const std::function<double(double)>& f, const std::vector<double>& edges, double tol,
                       double* error) {
  double prev = panel_average(f, edges, 0);
  for (int level = 1; level <= 5; ++level) {
    const double next = panel_average(f, edges, level);
    const double diff = std::fabs(next - prev);
    if (diff <= tol * std::max(1.0, std::fabs(next))) {
      if (error) *error = diff;
      return next;
    }
    prev = next;
  }
  throw NonConvergence("circle quadrature of |P| did not settle");
}

std::vector<std::pair<double, double>> critical_angles(const RootSet& rs) {
  std::vector<std::pair<double, double>> out;
  for (const Root& r : rs.roots) {
    const double m = std::abs(r.value);
    if (m == 0.0) continue;
    const double d = std::fabs(m - 1.0);
    if (d < 0.5) out.emplace_back(std::arg(r.value), std::max(d, r.radius));
  }
  return out;
}

RootSet roots_for_panels(const IntPolynomial& p) {
  try {
    return find_roots(p, 1e-10);
  } catch (const RootNonConvergence& e) {
    return e.best_so_far();
  }
}

double log_abs_scaled(const detail::ScaledPoly& sp, double t, double floor_abs) {
  const double a = std::abs(sp.eval(std::polar(1.0, t)));
  return std::log(std::max(a, floor_abs));
}

}  // namespace

double log_mahler_from_points(const IntPolynomial& p, const std::vector<cd>& points) {
  double s = log_abs(p.leading());
  for (const cd& a : points) s += std::log(std::max(1.0, std::abs(a)));
  return s;
}

NormValue mahler_jensen(const IntPolynomial& p, const RootSet& rs) {
  if (p.is_zero()) throw ZeroPolynomial("Mahler measure of the zero polynomial");
  NormValue v;
  v.kind = NormKind::mahler;
  v.log_value = log_mahler_from_points(p, rs.values());
  double log_err = 0.0;
  for (const Root& r : rs.roots) {
    const double m = std::abs(r.value);
    if (m + r.radius > 1.0) log_err += r.radius / std::max(1.0, m - r.radius);
  }
  v.value = std::exp(v.log_value);
  v.certified_error = v.value * std::expm1(log_err);
  return v;
}

NormValue mahler_quadrature(const IntPolynomial& p, const RootSet& rs, double tol) {
  if (p.is_zero()) throw ZeroPolynomial("Mahler measure of the zero polynomial");
  NormValue v;
  v.kind = NormKind::mahler;
  if (p.degree() == 0) {
    v.log_value = log_abs(p.leading());
    v.value = std::fabs(p.leading().get_d());
    return v;
  }
  const detail::ScaledPoly sp(p);
  double abs_sum = 0;
  for (double c : sp.c) abs_sum += std::fabs(c);
  const double floor_abs = abs_sum * 1e-300;
  const double max_panel = std::min(0.25, kTwoPi / (2.0 * p.degree()));
  const auto edges = graded_edges(critical_angles(rs), max_panel);
  double err = 0;
  const double avg = refined_average([&](double t) { return log_abs_scaled(sp, t, floor_abs); }, edges, tol, &err);
  v.log_value = avg + sp.log_scale();
  v.value = std::exp(v.log_value);
  v.certified_error = v.value * std::expm1(err);
  return v;
}

NormValue mahler_quadrature(const IntPolynomial& p, double tol) {
  if (p.is_zero()) throw ZeroPolynomial("Mahler measure of the zero polynomial");
  if (p.degree() == 0) return mahler_quadrature(p, RootSet{}, tol);
  return mahler_quadrature(p, roots_for_panels(p), tol);
}

NormValue lp_norm(const IntPolynomial& p, double exponent, const RootSet& rs, double tol) {
  if (!(exponent > 0)) throw std::invalid_argument("lp norm needs p > 0");
  if (p.is_zero()) throw ZeroPolynomial("norm of the zero polynomial");
  NormValue v;
  v.kind = NormKind::lp;
  v.p = exponent;
  if (p.degree() == 0) {
    v.log_value = log_abs(p.leading());
    v.value = std::fabs(p.leading().get_d());
    return v;
  }
  const detail::ScaledPoly sp(p);
  double abs_sum = 0;
  for (double c : sp.c) abs_sum += std::fabs(c);
  const double shift = std::log(abs_sum);
  const double max_panel = std::min(0.25, kTwoPi / (2.0 * p.degree()));
  const auto edges = graded_edges(critical_angles(rs), max_panel);
  double err = 0;
  const double avg = refined_average(
      [&](double t) { return std::exp(exponent * (std::log(std::abs(sp.eval(std::polar(1.0, t)))) - shift)); },
      edges, tol, &err);
  v.log_value = shift + sp.log_scale() + std::log(avg) / exponent;
  v.value = std::exp(v.log_value);
  v.certified_error = v.value * std::expm1(err / avg / exponent);
  return v;
}

NormValue lp_norm(const IntPolynomial& p, double exponent, double tol) {
  if (p.is_zero()) throw ZeroPolynomial("norm of the zero polynomial");
  if (p.degree() == 0) return lp_norm(p, exponent, RootSet{}, tol);
  return lp_norm(p, exponent, roots_for_panels(p), tol);
}

NormValue sup_norm(const IntPolynomial& p) {
  if (p.is_zero()) throw ZeroPolynomial("norm of the zero polynomial");
  NormValue v;
  v.kind = NormKind::sup;
  const int n = p.degree();
  if (n == 0) {
    v.log_value = log_abs(p.leading());
    v.value = std::fabs(p.leading().get_d());
    return v;
  }
  const detail::ScaledPoly sp(p);
  long N = 64;
  while (N < 16L * n) N *= 2;
  std::vector<double> g(N);
  for (long i = 0; i < N; ++i) g[i] = std::abs(sp.eval(std::polar(1.0, kTwoPi * i / N)));
  const double grid_max = *std::max_element(g.begin(), g.end());

  // local maxima of the grid, best first
  std::vector<long> cand;
  for (long i = 0; i < N; ++i) {
    if (g[i] >= g[(i + N - 1) % N] && g[i] >= g[(i + 1) % N]) cand.push_back(i);
  }
  std::sort(cand.begin(), cand.end(), [&](long a, long b) { return g[a] > g[b] || (g[a] == g[b] && a < b); });
  if (cand.size() > 8) cand.resize(8);

  double best = grid_max;
  const double h = kTwoPi / N;
  const double invphi = (std::sqrt(5.0) - 1) / 2;
  auto f = [&](double t) { return std::abs(sp.eval(std::polar(1.0, t))); };
  for (long i : cand) {
    double a = kTwoPi * i / N - h, b = kTwoPi * i / N + h;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - invphi * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + invphi * (b - a);
        fd = f(d);
      }
    }
    best = std::max({best, fc, fd});
  }
  // |P(t)| >= ||P|| (1 - pi n / N) at the grid point nearest the maximum
  const double upper = grid_max / (1.0 - std::numbers::pi * n / N);
  v.log_value = std::log(best) + sp.log_scale();
  v.value = std::exp(v.log_value);
  v.certified_error = std::exp(sp.log_scale()) * (upper - best);
  if (!std::isfinite(v.certified_error)) v.certified_error = std::numeric_limits<double>::infinity();
  return v;
}

double erdos_turan_rhs(const IntPolynomial& p, const NormValue& sup) {
  if (p.is_zero()) throw ZeroPolynomial("Erdos-Turan bound of the zero polynomial");
  const int n = p.degree();
  if (n < 1) throw DegreeZero("Erdos-Turan bound needs degree >= 1");
  if (sgn(p.trailing()) == 0) throw ZeroCoefficient("Erdos-Turan bound needs a_0 != 0; deflate zeros at the origin");
  const double half_log = 0.5 * (log_abs(p.trailing()) + log_abs(p.leading()));
  const double gap = sup.log_value - half_log;
  // ||P||^2 >= sum |a_k|^2 >= 2 |a_0 a_n|, so gap >= log(2)/2 up to rounding
  if (gap < -1e-12) throw std::logic_error("sup norm below sqrt|a_0 a_n|: " + std::to_string(gap));
  return 16.0 * std::sqrt(std::max(gap, 0.0) / n);
}

double erdos_turan_rhs(const IntPolynomial& p) { return erdos_turan_rhs(p, sup_norm(p)); }

double energy22_value(int n, double log_mahler, double A, double R) {
  const double log_m = std::max(std::log(static_cast<double>(n)), log_mahler);
  return A * (2 * R + 1) * std::sqrt(log_m / n);
}

double energy22_rhs(const IntPolynomial& p, const RootSet& rs, double A, double R) {
  const int n = p.degree();
  if (n < 55) throw HypothesisViolation("energy bound needs n >= 55, got " + std::to_string(n));
  if (!is_squarefree(p)) throw HypothesisViolation("energy bound needs simple zeros");
  return energy22_value(n, mahler_jensen(p, rs).log_value, A, R);
}

double energy_bound_value(int n, double log_mahler, double log_an2_disc, double r) {
  if (!(r > 0)) throw std::invalid_argument("smoothing radius must be positive");
  const double dn = n;
  return 2.0 / dn * log_mahler - log_an2_disc / (dn * dn) - std::log(r) / dn + 4 * r;
}

double log_an2_discriminant(const IntPolynomial& p) {
  const ExactInteger d = discriminant(p);
  if (sgn(d) == 0) throw DiscriminantZero("discriminant is zero: repeated zeros");
  return 2 * log_abs(p.leading()) + log_abs(d);
}

double default_radius(int n, double log_mahler) {
  return 1.0 / std::max(static_cast<double>(n), std::exp(log_mahler));
}

double main23_value(const TestFunction& phi, int n, double log_mahler, double log_an2_disc, double r) {
  if (!(r > 0 && r < 1)) throw std::invalid_argument("main inequality needs 0 < r < 1");
  const double e = energy_bound_value(n, log_mahler, log_an2_disc, r);
  if (e < 0) throw InfeasibleRadius("energy term is negative at r = " + std::to_string(r));
  const double omega = modulus_of_continuity(phi, r, 0).certified;
  const DirichletValue& d = phi.dirichlet();
  return omega + std::sqrt((d.value + d.error) / kTwoPi) * std::sqrt(e);
}

double main23_rhs(const IntPolynomial& p, const RootSet& rs, const TestFunction& phi, std::optional<double> r) {
  const double log_m = mahler_jensen(p, rs).log_value;
  const int n = p.degree();
  return main23_value(phi, n, log_m, log_an2_discriminant(p), r.value_or(default_radius(n, log_m)));
}

double schur_mean_rhs(int n) {
  if (n < 2) throw std::invalid_argument("schur mean bound needs n >= 2");
  return 8.0 * std::sqrt(std::log(static_cast<double>(n)) / n);
}

double schur_reference_line() { return 1.0 - std::sqrt(std::numbers::e) / 2.0; }

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::erdos_turan:
      return "erdos_turan";
    case BoundKind::energy_22:
      return "energy_22";
    case BoundKind::main_23:
      return "main_23";
    case BoundKind::schur_mean:
      return "schur_mean";
  }
  return "?";
}

PolyContext make_context(const IntPolynomial& p, const RootSet& rs) {
  PolyContext c;
  c.poly = p;
  c.roots = rs;
  c.measure = counting_measure(rs);
  c.n = p.degree();
  c.log_mahler = mahler_jensen(p, rs).log_value;
  c.squarefree = is_squarefree(p);
  c.in_disk = verify_in_disk(rs);
  if (c.squarefree) c.log_an2_disc = log_an2_discriminant(p);
  c.sup = sup_norm(p);
  return c;
}

BoundReport erdos_turan_report(const PolyContext& ctx, const Sector& s) {
  BoundReport rep;
  rep.kind = BoundKind::erdos_turan;
  rep.subject = to_string(s);
  unsigned removed = 0;
  const IntPolynomial q = deflate_origin(ctx.poly, &removed);
  CountingMeasure cm;
  for (std::size_t k = 0; k < ctx.measure.points.size(); ++k) {
    if (ctx.measure.points[k] == cd(0.0, 0.0)) continue;
    cm.points.push_back(ctx.measure.points[k]);
    cm.radii.push_back(ctx.measure.radii.empty() ? 0.0 : ctx.measure.radii[k]);
  }
  if (removed > 0) rep.notes.push_back("deflated " + std::to_string(removed) + " zeros at the origin");
  rep.inputs = {{"n", static_cast<double>(q.degree())}, {"sup_norm_log", ctx.sup.log_value}};
  if (q.degree() < 1 || cm.points.empty()) {
    rep.binding = false;
    rep.notes.push_back("no zeros off the origin");
    rep.set(0.0, std::numeric_limits<double>::quiet_NaN());
    return rep;
  }
  const SectorCount sc = sector_count(cm, s.phi1, s.phi2);
  rep.inputs.push_back({"count", static_cast<double>(sc.count)});
  if (sc.near_boundary > 0) rep.notes.push_back(std::to_string(sc.near_boundary) + " zeros within error of a boundary ray");
  // |P| on the circle is unchanged by dividing out z^k
  rep.set(sector_discrepancy(cm, s.phi1, s.phi2), erdos_turan_rhs(q, ctx.sup));
  return rep;
}

namespace {

double measure_gap(const PolyContext& ctx, const TestFunction& phi) {
  return std::fabs(integrate(ctx.measure, phi) - mu_integral(phi).value);
}

void note_class(const PolyContext& ctx, BoundReport& rep, bool need_degree) {
  if (need_degree && ctx.n < 55) {
    rep.binding = false;
    rep.notes.push_back("hypothesis: n >= 55 fails");
  }
  if (!ctx.squarefree) {
    rep.binding = false;
    rep.notes.push_back("hypothesis: simple zeros fails");
  }
  if (!ctx.in_disk) {
    rep.binding = false;
    rep.notes.push_back("hypothesis: zeros in the closed unit disk fails");
  }
}

}  // namespace

BoundReport energy22_report(const PolyContext& ctx, const TestFunction& phi) {
  BoundReport rep;
  rep.kind = BoundKind::energy_22;
  rep.subject = phi.name();
  rep.inputs = {{"n", static_cast<double>(ctx.n)},
                {"mahler", std::exp(ctx.log_mahler)},
                {"A", phi.lipschitz()},
                {"R", phi.support_radius()}};
  note_class(ctx, rep, true);
  rep.set(measure_gap(ctx, phi), energy22_value(ctx.n, ctx.log_mahler, phi.lipschitz(), phi.support_radius()));
  return rep;
}

BoundReport main23_report(const PolyContext& ctx, const TestFunction& phi, std::optional<double> r) {
  BoundReport rep;
  rep.kind = BoundKind::main_23;
  rep.subject = phi.name();
  const double radius = r.value_or(default_radius(ctx.n, ctx.log_mahler));
  const DirichletValue& d = phi.dirichlet();
  rep.inputs = {{"n", static_cast<double>(ctx.n)},
                {"mahler", std::exp(ctx.log_mahler)},
                {"r", radius},
                {"A", phi.lipschitz()},
                {"R", phi.support_radius()},
                {"dirichlet", d.value},
                {"dirichlet_error", d.error}};
  const double lhs = measure_gap(ctx, phi);
  if (!ctx.log_an2_disc) {
    rep.binding = false;
    rep.notes.push_back("hypothesis: discriminant is zero");
    rep.set(lhs, std::numeric_limits<double>::quiet_NaN());
    return rep;
  }
  rep.inputs.push_back({"log_an2_disc", *ctx.log_an2_disc});
  if (!ctx.in_disk) {
    // the inequality itself needs no disk hypothesis; recorded for context
    rep.notes.push_back("zeros outside the closed unit disk");
  }
  try {
    rep.set(lhs, main23_value(phi, ctx.n, ctx.log_mahler, *ctx.log_an2_disc, radius));
  } catch (const InfeasibleRadius& e) {
    rep.binding = false;
    rep.notes.push_back(e.what());
    rep.set(lhs, std::numeric_limits<double>::quiet_NaN());
  }
  return rep;
}

BoundReport schur_mean_report(const PolyContext& ctx, std::optional<double> M) {
  BoundReport rep;
  rep.kind = BoundKind::schur_mean;
  rep.subject = "mean";
  const double lead = std::fabs(ctx.poly.leading().get_d());
  const double m = M.value_or(lead);
  rep.inputs = {{"n", static_cast<double>(ctx.n)},
                {"M", m},
                {"exact_mean", exact_mean(ctx.poly).get_d()},
                {"reference", schur_reference_line()}};
  note_class(ctx, rep, true);
  if (lead > m) {
    rep.binding = false;
    rep.notes.push_back("hypothesis: |a_n| <= M fails");
  }
  if (ctx.n < m) {
    rep.binding = false;
    rep.notes.push_back("hypothesis: n >= M fails");
  }
  rep.set(std::abs(mean(ctx.measure)), schur_mean_rhs(std::max(ctx.n, 2)));
  return rep;
}

}  // namespace equid
