#include "equid/zmeasure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "equid/errors.hpp"

namespace equid {

using cd = std::complex<double>;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_sector(double phi1, double phi2) {
  if (!(phi1 >= 0.0 && phi1 < phi2 && phi2 < kTwoPi))
    throw std::invalid_argument("sector needs 0 <= phi1 < phi2 < 2pi");
}

double parse_angle(std::string_view s) {
  double v = 0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) throw ParseError("bad angle '" + std::string(s) + "'");
  return v;
}

double ray_distance(cd z, double phi) {
  const cd w = z * std::polar(1.0, -phi);
  return w.real() >= 0 ? std::fabs(w.imag()) : std::abs(z);
}

}  // namespace

CountingMeasure counting_measure(const RootSet& rs) {
  if (rs.roots.empty()) throw std::invalid_argument("counting measure of an empty root set");
  CountingMeasure cm;
  cm.points = rs.values();
  cm.radii = rs.radii();
  return cm;
}

cd mean(const CountingMeasure& cm) { return moment(cm, 1); }

cd moment(const CountingMeasure& cm, unsigned m) {
  cd s = 0.0;
  for (const cd& a : cm.points) s += m == 1 ? a : std::pow(a, static_cast<int>(m));
  return s / static_cast<double>(cm.n());
}

Sector parse_sector(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  Sector s;
  if (parts.size() == 2) {
    s = {parse_angle(parts[0]), parse_angle(parts[1])};
  } else if (parts.size() == 3 && parts[0] == "deg") {
    s = {parse_angle(parts[1]) * std::numbers::pi / 180.0, parse_angle(parts[2]) * std::numbers::pi / 180.0};
  } else {
    throw ParseError("sector must be phi1:phi2 or deg:a:b, got '" + std::string(text) + "'");
  }
  try {
    check_sector(s.phi1, s.phi2);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(e.what()) + " in '" + std::string(text) + "'");
  }
  return s;
}

std::string to_string(const Sector& s) {
  char buf[64];
  auto end = std::to_chars(buf, buf + 32, s.phi1).ptr;
  *end++ = ':';
  end = std::to_chars(end, buf + sizeof buf, s.phi2).ptr;
  return std::string(buf, end);
}

std::vector<Sector> dyadic_sectors() {
  std::vector<Sector> out;
  for (int j = 0; j < 16; ++j) out.push_back({j * std::numbers::pi / 8, (j + 1) * std::numbers::pi / 8});
  out.back().phi2 = std::nextafter(kTwoPi, 0.0);
  return out;
}

double arg_2pi(cd z) {
  double a = std::arg(z);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

SectorCount sector_count(const CountingMeasure& cm, double phi1, double phi2) {
  check_sector(phi1, phi2);
  SectorCount sc;
  sc.sector = {phi1, phi2};
  for (std::size_t k = 0; k < cm.points.size(); ++k) {
    const cd z = cm.points[k];
    if (z == cd(0.0, 0.0)) {
      ++sc.at_origin;
      continue;
    }
    const double a = arg_2pi(z);
    if (a >= phi1 && a <= phi2) ++sc.count;
    const double r = cm.radii.empty() ? 0.0 : cm.radii[k];
    if (ray_distance(z, phi1) <= r || ray_distance(z, phi2) <= r) ++sc.near_boundary;
  }
  return sc;
}

double sector_discrepancy(const CountingMeasure& cm, double phi1, double phi2) {
  const SectorCount sc = sector_count(cm, phi1, phi2);
  return std::fabs(static_cast<double>(sc.count) / cm.n() - (phi2 - phi1) / kTwoPi);
}

double integrate(const CountingMeasure& cm, const TestFunction& phi) {
  double s = 0.0;
  for (const cd& a : cm.points) s += phi(a);
  return s / cm.n();
}

namespace {

constexpr int kMaxLevel = 22;

// Romberg on [a, b]; returns the integral (not the average)
QuadratureValue romberg(const std::function<double(double)>& f, double a, double b, double tol) {
  QuadratureValue q;
  std::vector<double> prev{0.5 * (b - a) * (f(a) + f(b))};
  q.evaluations = 2;
  double last = prev[0];
  for (int level = 1; level <= kMaxLevel; ++level) {
    const long m = 1L << (level - 1);
    const double h = (b - a) / static_cast<double>(2 * m);
    double s = 0.0;
    for (long i = 0; i < m; ++i) s += f(a + (2 * i + 1) * h);
    q.evaluations += m;
    std::vector<double> row(level + 1);
    row[0] = 0.5 * prev[0] + h * s;
    double factor = 4.0;
    for (int k = 1; k <= level; ++k, factor *= 4.0) row[k] = row[k - 1] + (row[k - 1] - prev[k - 1]) / (factor - 1.0);
    const double best = row[level];
    q.error = std::fabs(best - last);
    q.value = best;
    if (level >= 4 && q.error <= tol) return q;
    last = best;
    prev = std::move(row);
  }
  throw NonConvergence("Romberg refinement did not settle");
}

}  // namespace

QuadratureValue circle_average(const std::function<double(double)>& f, std::vector<double> breakpoints, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("quadrature tolerance must be positive");
  for (double& b : breakpoints) {
    b = std::fmod(b, kTwoPi);
    if (b < 0) b += kTwoPi;
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

  if (breakpoints.empty()) {
    // periodic trapezoid, spectrally accurate for smooth f
    long N = 16;
    double sum = 0.0;
    for (long i = 0; i < N; ++i) sum += f(kTwoPi * i / N);
    QuadratureValue q;
    q.evaluations = N;
    double avg = sum / N;
    while (N < (1L << kMaxLevel)) {
      double add = 0.0;
      for (long i = 0; i < N; ++i) add += f(kTwoPi * (2 * i + 1) / (2.0 * N));
      q.evaluations += N;
      sum += add;
      N *= 2;
      const double next = sum / N;
      q.error = std::fabs(next - avg);
      avg = next;
      if (N >= 64 && q.error <= tol) {
        q.value = avg;
        return q;
      }
    }
    throw NonConvergence("circle quadrature did not settle");
  }

  QuadratureValue total;
  const std::size_t m = breakpoints.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double a = breakpoints[i];
    const double b = (i + 1 < m) ? breakpoints[i + 1] : breakpoints[0] + kTwoPi;
    if (b <= a) continue;
    const QuadratureValue piece = romberg(f, a, b, tol * (b - a));
    total.value += piece.value;
    total.error += piece.error;
    total.evaluations += piece.evaluations;
  }
  total.value /= kTwoPi;
  total.error /= kTwoPi;
  return total;
}

QuadratureValue mu_integral(const TestFunction& phi, double tol) {
  return circle_average([&](double t) { return phi(std::polar(1.0, t)); }, phi.circle_breakpoints(), tol);
}

}  // namespace equid
