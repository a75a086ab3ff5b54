#include "equid/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "equid/errors.hpp"
#include "equid/testfn.hpp"

namespace equid {

using cd = std::complex<double>;
using nlohmann::json;

std::string to_string(Command c) {
  switch (c) {
    case Command::analyze:
      return "analyze";
    case Command::sweep:
      return "sweep";
    case Command::verify:
      return "verify";
    case Command::generate:
      return "generate";
    case Command::energy:
      return "energy";
  }
  return "?";
}

std::vector<int> DegreeRange::values() const {
  std::vector<int> out;
  for (int n = lo; n <= hi; n += step) out.push_back(n);
  return out;
}

DegreeRange parse_range(std::string_view text) {
  std::vector<int> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(':', start);
    const auto piece = text.substr(start, pos == std::string_view::npos ? pos : pos - start);
    int v = 0;
    auto [p, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc() || p != piece.data() + piece.size() || piece.empty())
      throw ParseError("bad degree range '" + std::string(text) + "'");
    parts.push_back(v);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() < 2 || parts.size() > 3) throw ParseError("degree range must be a:b or a:b:step");
  DegreeRange r{parts[0], parts[1], parts.size() == 3 ? parts[2] : 1};
  if (r.lo < 1 || r.hi < r.lo || r.step < 1) throw ParseError("degree range needs 1 <= a <= b and step >= 1");
  return r;
}

std::vector<std::string> default_testfns() {
  return {"cor22", "sector:0:1.5707963267948966:0.1", "sector:2:3.5:0.2", "sector:4:6:0.3"};
}

std::vector<FamilySpec> default_suite(std::uint64_t seed) {
  std::vector<FamilySpec> out;
  for (FamilyKind k : {FamilyKind::binomial, FamilyKind::cyclotomic_product, FamilyKind::schur}) {
    FamilySpec s;
    s.kind = k;
    s.M = 10;
    s.seed = seed;
    out.push_back(s);
  }
  return out;
}

double Record::mean_ratio() const {
  if (n < 2) return 0.0;
  return std::abs(mean) * std::sqrt(n / std::log(static_cast<double>(n)));
}

double Record::sup_root() const { return std::exp(sup.log_value / n); }

double Record::cor23_ratio() const {
  if (n < 2) return 0.0;
  return sup.log_value / (std::sqrt(static_cast<double>(n)) * std::log(static_cast<double>(n)));
}

std::vector<EnergyDiagnostics> energy_report(const IntPolynomial& p, const RootSet& rs,
                                             const std::vector<double>& radii) {
  const CountingMeasure cm = counting_measure(rs);
  std::vector<EnergyDiagnostics> out;
  for (double r : radii) {
    EnergyDiagnostics e;
    e.r = r;
    e.terms = energy_sigma_terms(smooth(cm, r));
    e.upper_bound = energy_upper_bound(p, cm, r);
    e.discrete = discrete_energy(cm);
    out.push_back(e);
  }
  return out;
}

namespace {

void fill(Record& rec, const IntPolynomial& p, const RunConfig& cfg) {
  rec.poly = p;
  if (p.is_zero()) throw ZeroPolynomial("cannot analyze the zero polynomial");
  rec.n = p.degree();
  if (rec.n < 1) throw DegreeZero("cannot analyze a constant");
  RootOptions opt;
  opt.tol = cfg.tol;
  rec.roots = find_roots(p, opt);

  PolyContext ctx;
  ctx.poly = p;
  ctx.roots = rec.roots;
  ctx.measure = counting_measure(rec.roots);
  ctx.n = rec.n;
  rec.mahler = mahler_jensen(p, rec.roots);
  ctx.log_mahler = rec.mahler.log_value;
  rec.squarefree = ctx.squarefree = is_squarefree(p);
  rec.in_disk = ctx.in_disk = verify_in_disk(rec.roots);
  rec.disc = discriminant(p);
  if (sgn(*rec.disc) != 0) ctx.log_an2_disc = 2 * log_abs(p.leading()) + log_abs(*rec.disc);
  rec.sup = ctx.sup = sup_norm(p);

  rec.exact_mean = exact_mean(p);
  rec.mean = mean(ctx.measure);
  for (unsigned m = 1; m <= cfg.moments; ++m) rec.moments.push_back(moment(ctx.measure, m));

  // family members carry the class bound M; explicit polynomials use |a_n|
  rec.reports.push_back(schur_mean_report(ctx, rec.M > 0 ? std::optional<double>(rec.M) : std::nullopt));
  for (const Sector& s : cfg.sectors) rec.reports.push_back(erdos_turan_report(ctx, s));
  for (const std::string& name : cfg.testfns) {
    const TestFunction f = parse_testfn(name);
    rec.reports.push_back(energy22_report(ctx, f));
    rec.reports.push_back(main23_report(ctx, f, cfg.r));
  }
  if (ctx.log_an2_disc) {
    const double r = cfg.r.value_or(default_radius(rec.n, rec.mahler.log_value));
    rec.energy = energy_report(p, rec.roots, {r}).front();
  }
}

void capture(Record& rec, const std::function<void()>& body) {
  try {
    body();
  } catch (const NonConvergence& e) {
    rec.ok = false;
    rec.error_kind = "numerical";
    rec.error = e.what();
  } catch (const Error& e) {
    rec.ok = false;
    rec.error_kind = "input";
    rec.error = e.what();
  } catch (const std::invalid_argument& e) {
    rec.ok = false;
    rec.error_kind = "input";
    rec.error = e.what();
  }
}

}  // namespace

Record analyze_polynomial(const IntPolynomial& p, const RunConfig& cfg) {
  Record rec;
  rec.family = "explicit";
  rec.poly = p;
  rec.n = p.is_zero() ? 0 : p.degree();
  capture(rec, [&] { fill(rec, p, cfg); });
  return rec;
}

Record analyze_member(const FamilySpec& spec, const RunConfig& cfg) {
  Record rec;
  rec.family = to_string(spec.kind);
  rec.seed = spec.seed;
  rec.M = spec.M;
  rec.n = spec.n;
  capture(rec, [&] {
    const Generated g = generate(spec);
    if (!g.poly) {
      throw NonConvergence("no acceptable sample within " + std::to_string(spec.attempts) + " attempts");
    }
    fill(rec, *g.poly, cfg);
  });
  return rec;
}

std::vector<Record> run_sweep(const RunConfig& cfg) {
  if (cfg.poly) return {analyze_polynomial(parse_poly(*cfg.poly), cfg)};
  if (cfg.families.empty()) throw std::invalid_argument("sweep needs a family or a polynomial");
  if (cfg.degrees.empty()) throw std::invalid_argument("sweep needs at least one degree");
  std::vector<FamilySpec> tasks;
  for (const FamilySpec& f : cfg.families) {
    for (int n : cfg.degrees) {
      FamilySpec s = f;
      s.n = n;
      tasks.push_back(s);
    }
  }
  std::vector<Record> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) out[i] = analyze_member(tasks[i], cfg);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::vector<Violation> find_violations(const std::vector<Record>& records, double rhs_scale) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const Record& rec = records[i];
    auto base = [&] {
      Violation v;
      v.record = i;
      v.family = rec.family;
      v.n = rec.n;
      v.seed = rec.seed;
      v.M = rec.M;
      for (const auto& c : rec.poly.coeffs()) v.polynomial.push_back(c.get_str());
      return v;
    };
    if (!rec.ok) {
      Violation v = base();
      v.kind = "error";
      v.detail = rec.error_kind + ": " + rec.error;
      out.push_back(v);
      continue;
    }
    auto check = [&](const std::string& kind, const std::string& subject, double lhs, double rhs,
                     const std::vector<std::pair<std::string, double>>& inputs) {
      const double scaled = rhs * rhs_scale;
      const double eps = 1e-9 * (1 + std::fabs(scaled));
      if (scaled - lhs < -eps) {
        Violation v = base();
        v.kind = kind;
        v.subject = subject;
        v.lhs = lhs;
        v.rhs = scaled;
        v.tolerance = eps;
        v.inputs = inputs;
        out.push_back(v);
      }
    };
    for (const BoundReport& b : rec.reports) {
      if (b.binding && std::isfinite(b.rhs)) check(to_string(b.kind), b.subject, b.lhs, b.rhs, b.inputs);
    }
    if (rec.energy) {
      const std::vector<std::pair<std::string, double>> inputs{{"r", rec.energy->r}};
      check("energy", "nonnegative", 0.0, rec.energy->terms.value + 1e-9, inputs);
      check("energy", "upper_bound", rec.energy->terms.value, rec.energy->upper_bound, inputs);
    }
  }
  return out;
}

int exit_code(const std::vector<Violation>& violations) { return violations.empty() ? 0 : 1; }

SweepSummary summarize(const std::vector<Record>& records) {
  SweepSummary s;
  bool first = true;
  for (const Record& r : records) {
    if (!r.ok) {
      ++s.failures;
      continue;
    }
    s.max_mean_ratio = std::max(s.max_mean_ratio, r.mean_ratio());
    s.max_cor23_ratio = std::max(s.max_cor23_ratio, r.cor23_ratio());
    if (first) s.first_sup_root = r.sup_root();
    first = false;
    s.last_sup_root = r.sup_root();
    s.last_moments.clear();
    for (std::size_t m = 0; m < r.moments.size(); ++m) {
      const double a = std::abs(r.moments[m]);
      s.last_moments.push_back(a);
      if (s.max_moments.size() <= m) s.max_moments.push_back(0.0);
      s.max_moments[m] = std::max(s.max_moments[m], a);
    }
  }
  return s;
}

namespace {

json norm_json(const NormValue& v) { return {{"value", v.value}, {"log", v.log_value}, {"error", v.certified_error}}; }

json complex_json(cd z) { return {{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}}; }

}  // namespace

json to_json(const BoundReport& r) {
  json inputs = json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  return {{"kind", to_string(r.kind)}, {"subject", r.subject}, {"lhs", r.lhs},     {"rhs", r.rhs},
          {"slack", r.slack},          {"binding", r.binding}, {"inputs", inputs}, {"notes", r.notes}};
}

json to_json(const EnergyDiagnostics& e) {
  return {{"kind", "energy"},
          {"r", e.r},
          {"energy_sigma", e.terms.value},
          {"self", e.terms.self},
          {"cross", e.terms.cross},
          {"self_pair_bound", e.terms.self_pair_bound},
          {"self_pair_slack", e.terms.self_pair_bound - e.terms.self},
          {"upper_bound", e.upper_bound},
          {"slack", e.upper_bound - e.terms.value},
          {"discrete_energy", e.discrete}};
}

json to_json(const Record& r) {
  json j;
  j["family"] = r.family;
  j["seed"] = r.seed;
  j["M"] = r.M;
  j["n"] = r.n;
  json coeffs = json::array();
  for (const auto& c : r.poly.coeffs()) coeffs.push_back(c.get_str());
  j["polynomial"] = coeffs;
  j["status"] = r.ok ? "ok" : "failed";
  if (!r.ok) {
    j["error_kind"] = r.error_kind;
    j["error"] = r.error;
    return j;
  }
  j["leading_abs"] = ExactInteger(abs(r.poly.leading())).get_str();
  json roots = json::array();
  for (const Root& x : r.roots.roots) roots.push_back({x.value.real(), x.value.imag(), x.radius, x.multiplicity});
  j["roots"] = roots;
  j["root_max_radius"] = r.roots.max_radius();
  j["extended_precision"] = r.roots.extended_precision_used;
  j["squarefree"] = r.squarefree;
  j["in_disk"] = r.in_disk;
  j["mahler"] = norm_json(r.mahler);
  j["sup_norm"] = norm_json(r.sup);
  json mean = complex_json(r.mean);
  mean["exact"] = r.exact_mean.get_str();
  j["mean"] = mean;
  json moments = json::array();
  for (std::size_t m = 0; m < r.moments.size(); ++m) {
    json e = complex_json(r.moments[m]);
    e["m"] = m + 1;
    moments.push_back(e);
  }
  j["moments"] = moments;
  j["discriminant"] = r.disc ? json(r.disc->get_str()) : json(nullptr);
  j["trends"] = {{"mean_ratio", r.mean_ratio()}, {"sup_root", r.sup_root()}, {"cor23_ratio", r.cor23_ratio()}};
  json bounds = json::array();
  for (const BoundReport& b : r.reports) bounds.push_back(to_json(b));
  j["bounds"] = bounds;
  j["energy"] = r.energy ? to_json(*r.energy) : json(nullptr);
  return j;
}

json to_json(const Violation& v) {
  json inputs = json::object();
  for (const auto& [k, x] : v.inputs) inputs[k] = x;
  return {{"record", v.record}, {"family", v.family},   {"n", v.n},           {"seed", v.seed},
          {"M", v.M},           {"polynomial", v.polynomial}, {"kind", v.kind}, {"subject", v.subject},
          {"lhs", v.lhs},       {"rhs", v.rhs},         {"tolerance", v.tolerance}, {"inputs", inputs},
          {"detail", v.detail}};
}

json to_json(const SweepSummary& s) {
  return {{"max_mean_ratio", s.max_mean_ratio},
          {"max_cor23_ratio", s.max_cor23_ratio},
          {"first_sup_root", s.first_sup_root},
          {"last_sup_root", s.last_sup_root},
          {"last_moments", s.last_moments},
          {"max_moments", s.max_moments},
          {"failures", s.failures},
          {"schur_reference", schur_reference_line()}};
}

json bundle_json(Command cmd, const std::vector<Record>& records) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = to_string(cmd);
  json recs = json::array();
  for (const Record& r : records) recs.push_back(to_json(r));
  j["records"] = recs;
  j["summary"] = to_json(summarize(records));
  return j;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void dump_into(const json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  switch (j.type()) {
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_number(x) : "null";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        out += pad;
        dump_into(e, indent, depth + 1, out);
      }
      out += close + ']';
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += pad + json(it.key()).dump() + (indent > 0 ? ": " : ":");
        dump_into(it.value(), indent, depth + 1, out);
      }
      out += close + '}';
      return;
    }
    default:
      out += j.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string join_notes(const std::vector<std::string>& notes) {
  std::string s;
  for (const auto& n : notes) s += (s.empty() ? "" : "; ") + n;
  return s;
}

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out + "\n";
}

std::string csv_header() { return "schema_version,family,seed,n,row,subject,value,rhs,slack,binding,notes\n"; }

std::string to_csv(const std::vector<Record>& records) {
  std::string out = csv_header();
  for (const Record& r : records) {
    const std::string prefix = std::to_string(kSchemaVersion) + "," + csv_field(r.family) + "," +
                               std::to_string(r.seed) + "," + std::to_string(r.n) + ",";
    if (!r.ok) {
      out += prefix + "error," + csv_field(r.error_kind) + ",,,,," + csv_field(r.error) + "\n";
      continue;
    }
    auto stat = [&](const std::string& name, double v) {
      out += prefix + "stat," + name + "," + format_number(v) + ",,,,\n";
    };
    stat("mahler", r.mahler.value);
    stat("sup_norm_log", r.sup.log_value);
    stat("mean_abs", std::abs(r.mean));
    stat("mean_ratio", r.mean_ratio());
    stat("sup_root", r.sup_root());
    stat("cor23_ratio", r.cor23_ratio());
    for (std::size_t m = 0; m < r.moments.size(); ++m) stat("moment_abs_" + std::to_string(m + 1), std::abs(r.moments[m]));
    if (r.energy) {
      stat("energy_r", r.energy->r);
      stat("energy_sigma", r.energy->terms.value);
      stat("energy_upper_bound", r.energy->upper_bound);
      stat("discrete_energy", r.energy->discrete);
    }
    for (const BoundReport& b : r.reports) {
      out += prefix + to_string(b.kind) + "," + csv_field(b.subject) + "," + format_number(b.lhs) + "," +
             format_number(b.rhs) + "," + format_number(b.slack) + "," + (b.binding ? "1" : "0") + "," +
             csv_field(join_notes(b.notes)) + "\n";
    }
  }
  return out;
}

std::string generate_line(const IntPolynomial& p) { return p.to_dense_string(); }

}  // namespace equid
