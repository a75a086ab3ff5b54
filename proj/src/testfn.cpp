#include "equid/testfn.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "equid/errors.hpp"

namespace equid {

using cd = std::complex<double>;

struct TestFunction::Cache {
  std::once_flag once;
  DirichletValue dirichlet;
  std::atomic<bool> computed{false};
};

TestFunction::TestFunction(Params p) : cache_(std::make_shared<Cache>()) {
  if (!p.eval) throw std::invalid_argument("test function needs an evaluator");
  if (!(p.lipschitz >= 0) || !(p.support >= 0)) throw std::invalid_argument("test function constants must be >= 0");
  params_ = std::make_shared<const Params>(std::move(p));
}

const DirichletValue& TestFunction::dirichlet() const {
  std::call_once(cache_->once, [this] {
    cache_->dirichlet = dirichlet_estimate(*this, params_->dirichlet_h);
    cache_->computed = true;
  });
  return cache_->dirichlet;
}

bool TestFunction::dirichlet_cached() const { return cache_->computed; }

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Built-ins are shared by key so the Dirichlet integral is computed once per
// process.
std::mutex registry_mutex;
std::map<std::string, TestFunction> registry;

template <typename Make>
TestFunction shared_builtin(const std::string& key, Make make) {
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto it = registry.find(key);
  if (it != registry.end()) return it->second;
  TestFunction f = make();
  registry.emplace(key, f);
  return f;
}

// shortest text that reads back to x
std::string short_num(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

std::string hex(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

double parse_double(std::string_view s, std::string_view what) {
  double v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) throw ParseError("bad number '" + std::string(s) + "' in " + std::string(what));
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// angle mod 2pi in [0, 2pi)
double wrap(double t) {
  double a = std::fmod(t, kTwoPi);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a = 0;
  return a;
}

}  // namespace

TestFunction cor22_phi() {
  return shared_builtin("cor22", [] {
    TestFunction::Params p;
    p.name = "cor22";
    p.eval = [](cd z) {
      const double rho = std::abs(z);
      if (rho <= 1.0) return z.real();
      if (rho <= std::numbers::e) return z.real() * (1.0 - std::log(rho));
      return 0.0;
    };
    p.lipschitz = std::sqrt(5.0) / 2.0;
    p.support = std::numbers::e;
    p.kink_radii = {1.0, std::numbers::e};
    return TestFunction(std::move(p));
  });
}

namespace {

TestFunction make_cor23(cd z0, std::string name) {
  const double m = std::abs(z0);
  if (!(m > 1.0)) throw std::invalid_argument("cor23 needs |z0| > 1");
  return shared_builtin("cor23:" + hex(z0.real()) + "," + hex(z0.imag()), [&] {
    TestFunction::Params p;
    p.name = std::move(name);
    const cd cz = std::conj(z0);
    p.eval = [z0, cz](cd w) {
      const double rho = std::abs(w);
      if (rho <= 1.0) return std::log(std::abs(z0 - w));
      if (rho <= std::numbers::e) return (1.0 - std::log(rho)) * std::log(std::abs(1.0 - cz * w));
      return 0.0;
    };
    const double gap = m - 1.0;
    const double inner = 1.0 / gap;
    const double log_bound = std::max({std::log1p(std::numbers::e * m), -std::log(gap), 0.0});
    const double middle = log_bound + m / gap;
    p.lipschitz = std::max(inner, middle);
    p.support = std::numbers::e;
    p.kink_radii = {1.0, std::numbers::e};
    return TestFunction(std::move(p));
  });
}

}  // namespace

TestFunction cor23_phi(cd z0) {
  const std::string name = "cor23:z0=" + short_num(z0.real()) + (z0.imag() < 0 ? "-" : "+") +
                           short_num(std::fabs(z0.imag())) + "i";
  return make_cor23(z0, name);
}

TestFunction cor23_phi_for_degree(int n) {
  if (n < 1) throw std::invalid_argument("cor23 needs n >= 1");
  return make_cor23(cd(1.0 + 1.0 / n, 0.0), "cor23:n=" + std::to_string(n));
}

TestFunction smoothed_indicator(double phi1, double phi2, double eps) {
  if (!(phi1 >= 0 && phi1 < phi2 && phi2 < kTwoPi)) throw std::invalid_argument("sector needs 0 <= phi1 < phi2 < 2pi");
  if (!(eps > 0 && eps < (phi2 - phi1) / 2)) throw std::invalid_argument("sector smoothing needs 0 < eps < (phi2-phi1)/2");
  if (!(phi2 - phi1 + 2 * eps < kTwoPi)) throw std::invalid_argument("smoothed sector wraps onto itself");
  std::ostringstream key;
  key << "sector:" << hex(phi1) << ":" << hex(phi2) << ":" << hex(eps);
  return shared_builtin(key.str(), [&] {
    TestFunction::Params p;
    p.name = "sector:" + short_num(phi1) + ":" + short_num(phi2) + ":" + short_num(eps);
    const double mid = 0.5 * (phi1 + phi2);
    const double half = 0.5 * (phi2 - phi1);
    p.eval = [mid, half, eps](cd z) {
      const double s = std::abs(z);
      if (s >= 2.0 || s == 0.0) return 0.0;
      // angular distance from the sector midpoint, in [0, pi]
      double d = std::fabs(wrap(std::arg(z) - mid + std::numbers::pi) - std::numbers::pi);
      const double a = std::clamp(1.0 - (d - half) / eps, 0.0, 1.0);
      double b = 1.0;
      if (s < 0.5) {
        b = 2.0 * s;
      } else if (s > 1.0) {
        b = 2.0 - s;
      }
      return a * b;
    };
    p.lipschitz = 2.0 * std::sqrt(1.0 + 1.0 / (eps * eps));
    p.support = 2.0;
    p.kink_radii = {0.5, 1.0, 2.0};
    p.circle_breakpoints = {wrap(phi1 - eps), phi1, phi2, wrap(phi2 + eps)};
    return TestFunction(std::move(p));
  });
}

TestFunction constant_phi(double c) {
  TestFunction::Params p;
  p.name = c == 0.0 ? "zero" : "const:" + short_num(c);
  p.eval = [c](cd) { return c; };
  p.lipschitz = 0.0;
  p.support = c == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return TestFunction(std::move(p));
}

TestFunction parse_testfn(std::string_view name) {
  if (name == "cor22") return cor22_phi();
  if (name == "zero") return constant_phi(0.0);
  const auto parts = split(name, ':');
  if (parts[0] == "cor23") {
    if (parts.size() != 2 || parts[1].substr(0, 2) != "n=")
      throw ParseError("expected cor23:n=<degree>, got '" + std::string(name) + "'");
    const double n = parse_double(parts[1].substr(2), name);
    if (n < 1 || n != std::floor(n)) throw ParseError("cor23 degree must be a positive integer");
    return cor23_phi_for_degree(static_cast<int>(n));
  }
  if (parts[0] == "sector") {
    if (parts.size() != 4) throw ParseError("expected sector:phi1:phi2:eps, got '" + std::string(name) + "'");
    try {
      return smoothed_indicator(parse_double(parts[1], name), parse_double(parts[2], name), parse_double(parts[3], name));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("unknown test function '" + std::string(name) + "'");
}

DirichletValue dirichlet_estimate(const TestFunction& phi, double h) {
  if (!(h > 0)) throw std::invalid_argument("grid spacing must be positive");
  const double R = phi.support_radius();
  if (!std::isfinite(R)) throw std::invalid_argument("Dirichlet integral needs compact support");
  if (R == 0.0) return {0.0, 0.0, h};

  auto grid_sum = [&](double step) {
    const double lo = -R - 2 * step + step / 3;
    const long N = static_cast<long>(std::ceil((2 * R + 4 * step) / step)) + 1;
    std::vector<double> prev(N), cur(N), next(N);
    auto fill = [&](std::vector<double>& row, long j) {
      const double y = lo + j * step;
      for (long i = 0; i < N; ++i) row[i] = phi(cd(lo + i * step, y));
    };
    fill(prev, 0);
    fill(cur, 1);
    double total = 0.0;
    for (long j = 1; j + 1 < N; ++j) {
      fill(next, j + 1);
      double row_sum = 0.0;
      for (long i = 1; i + 1 < N; ++i) {
        const double dx = cur[i + 1] - cur[i - 1];
        const double dy = next[i] - prev[i];
        row_sum += dx * dx + dy * dy;
      }
      total += row_sum;
      std::swap(prev, cur);
      std::swap(cur, next);
    }
    // (d/2h)^2 * h^2 per node
    return total / 4.0;
  };
  const double coarse = grid_sum(h);
  const double fine = grid_sum(h / 2);
  return {fine, std::fabs(coarse - fine), h / 2};
}

DirichletValue dirichlet_integral(const TestFunction& phi, double h) {
  DirichletValue d = dirichlet_estimate(phi, h);
  if (d.error > 0.5 * std::max(d.value, 1e-300) && d.error > 1e-12)
    throw NonConvergence("Dirichlet integral of " + phi.name() + " does not settle under grid refinement");
  return d;
}

ModulusOfContinuity modulus_of_continuity(const TestFunction& phi, double r, unsigned samples, std::uint64_t seed) {
  if (!(r > 0)) throw std::invalid_argument("modulus of continuity needs r > 0");
  ModulusOfContinuity w;
  w.certified = phi.lipschitz() * r;
  const double R = std::isfinite(phi.support_radius()) ? phi.support_radius() : 1.0;
  std::mt19937_64 gen(seed);
  auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  for (unsigned s = 0; s < samples; ++s) {
    const cd z = std::polar((R + r) * std::sqrt(unit()), kTwoPi * unit());
    const cd t = z + std::polar(r * unit(), kTwoPi * unit());
    w.sampled = std::max(w.sampled, std::fabs(phi(z) - phi(t)));
  }
  return w;
}

double lipschitz_audit(const TestFunction& phi, unsigned pairs, std::uint64_t seed) {
  const double R = std::isfinite(phi.support_radius()) ? phi.support_radius() : 1.0;
  std::mt19937_64 gen(seed);
  auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  double worst = 0.0;
  for (unsigned s = 0; s < pairs; ++s) {
    const cd z = std::polar((R + 1) * std::sqrt(unit()), kTwoPi * unit());
    const double delta = std::exp(std::log(1e-6) + unit() * (std::log(2 * (R + 1)) - std::log(1e-6)));
    const cd t = z + std::polar(delta, kTwoPi * unit());
    const double d = std::abs(z - t);
    if (d > 0) worst = std::max(worst, std::fabs(phi(z) - phi(t)) / d);
  }
  return worst;
}

}  // namespace equid
