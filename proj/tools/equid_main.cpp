// equid: zero-distribution experiments for integer polynomials.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "equid/errors.hpp"
#include "equid/runner.hpp"

using namespace equid;

namespace {

constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::vector<std::string> families;
  std::string poly;
  std::vector<int> n;
  std::string n_range;
  double M = 10;
  std::uint64_t seed = 1;
  double tol = 1e-12;
  std::vector<std::string> sectors;
  std::vector<std::string> testfns;
  double r = 0;
  unsigned jobs = 1;
  std::string output;
  std::string format = "json";
  unsigned moments = 3;
  std::vector<double> radii;
  double rhs_scale = 1.0;
  unsigned multiplicity = 0;
  unsigned index = 0;
  unsigned attempts = 2000;
};

void add_shared(CLI::App* sub, Options& o) {
  sub->add_option("--family", o.families, "binomial, kronecker, schur, multiplicity, random_disk")->delimiter(',');
  sub->add_option("--poly", o.poly, "explicit polynomial, dense \"a0,a1,...\" or sparse \"z^4 - 1\"");
  sub->add_option("--n", o.n, "degree(s)")->delimiter(',');
  sub->add_option("--n-range", o.n_range, "degrees a:b or a:b:step");
  sub->add_option("--M", o.M, "leading-coefficient bound for schur and random_disk")->capture_default_str();
  sub->add_option("--seed", o.seed, "family seed")->capture_default_str();
  sub->add_option("--tol", o.tol, "root radius tolerance")->capture_default_str();
  sub->add_option("--sectors", o.sectors, "sector specs phi1:phi2 or deg:a:b; default 16 dyadic")->delimiter(',');
  sub->add_option("--testfn", o.testfns, "cor22, cor23:n=<n>, sector:phi1:phi2:eps, zero")->delimiter(',');
  sub->add_option("--r", o.r, "smoothing radius for the main inequality; default 1/max(n, M(P))");
  sub->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
  sub->add_option("--output", o.output, "output file; stdout when absent");
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("--moments", o.moments, "report moments 1..m")->capture_default_str();
  sub->add_option("--multiplicity", o.multiplicity, "multiplicity family exponent");
  sub->add_option("--index", o.index, "multiplicity family repeated cyclotomic index");
  sub->add_option("--attempts", o.attempts, "random_disk attempt budget")->capture_default_str();
}

RunConfig make_config(Command cmd, const Options& o) {
  RunConfig cfg;
  cfg.command = cmd;
  if (!o.poly.empty()) cfg.poly = o.poly;
  for (const std::string& f : o.families) {
    FamilySpec s;
    s.kind = parse_family_kind(f);
    s.M = o.M;
    s.seed = o.seed;
    s.attempts = o.attempts;
    if (o.multiplicity) s.multiplicity = o.multiplicity;
    if (o.index) s.repeated_index = o.index;
    cfg.families.push_back(s);
  }
  cfg.degrees = o.n;
  if (!o.n_range.empty()) {
    const auto more = parse_range(o.n_range).values();
    cfg.degrees.insert(cfg.degrees.end(), more.begin(), more.end());
  }
  if (!o.sectors.empty()) {
    cfg.sectors.clear();
    for (const std::string& s : o.sectors) cfg.sectors.push_back(parse_sector(s));
  }
  if (!o.testfns.empty()) cfg.testfns = o.testfns;
  if (o.r != 0) {
    if (!(o.r > 0 && o.r < 1)) throw ParseError("--r must lie in (0, 1)");
    cfg.r = o.r;
  }
  if (!(o.tol > 0)) throw ParseError("--tol must be positive");
  cfg.tol = o.tol;
  cfg.jobs = std::max(1u, o.jobs);
  cfg.moments = o.moments;
  cfg.energy_radii = o.radii;
  cfg.rhs_scale = o.rhs_scale;
  return cfg;
}

void write_out(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + o.output);
  f << text;
  if (!f) throw std::runtime_error("write failed for " + o.output);
}

std::string render(const Options& o, Command cmd, const std::vector<Record>& recs, const nlohmann::json* extra) {
  if (o.format == "csv") return to_csv(recs);
  nlohmann::json j = bundle_json(cmd, recs);
  if (extra) j.update(*extra);
  return dump_json(j);
}

int failure_code(const std::vector<Record>& recs) {
  for (const Record& r : recs) {
    if (!r.ok) return r.error_kind == "input" ? kExitUsage : kExitNumerical;
  }
  return 0;
}

int run_analyze(const Options& o) {
  RunConfig cfg = make_config(Command::analyze, o);
  std::vector<Record> recs;
  if (cfg.poly) {
    recs.push_back(analyze_polynomial(parse_poly(*cfg.poly), cfg));
  } else {
    if (cfg.families.size() != 1 || cfg.degrees.size() != 1)
      throw ParseError("analyze needs --poly, or one --family with one --n");
    FamilySpec s = cfg.families.front();
    s.n = cfg.degrees.front();
    recs.push_back(analyze_member(s, cfg));
  }
  write_out(o, render(o, Command::analyze, recs, nullptr));
  return failure_code(recs);
}

int run_sweep_cmd(const Options& o) {
  RunConfig cfg = make_config(Command::sweep, o);
  if (!cfg.poly && cfg.degrees.empty()) throw ParseError("sweep needs --n or --n-range");
  const auto recs = run_sweep(cfg);
  write_out(o, render(o, Command::sweep, recs, nullptr));
  // per-degree failures are recorded in the output
  return 0;
}

int run_verify(const Options& o) {
  RunConfig cfg = make_config(Command::verify, o);
  if (!cfg.poly && cfg.families.empty()) cfg.families = default_suite(o.seed);
  if (!cfg.poly && cfg.degrees.empty()) cfg.degrees = {8, 16, 32, 55, 64, 100, 128, 256, 512};
  const auto recs = run_sweep(cfg);
  const auto violations = find_violations(recs, cfg.rhs_scale);
  nlohmann::json extra;
  extra["violations"] = nlohmann::json::array();
  for (const Violation& v : violations) extra["violations"].push_back(to_json(v));
  if (o.format == "csv") {
    write_out(o, to_csv(recs));
  } else {
    write_out(o, render(o, Command::verify, recs, &extra));
  }
  std::cerr << violations.size() << " violation(s) in " << recs.size() << " record(s)\n";
  for (const Violation& v : violations) {
    std::cerr << "  " << v.family << " n=" << v.n << " seed=" << v.seed << " " << v.kind << " " << v.subject
              << " lhs=" << format_number(v.lhs) << " rhs=" << format_number(v.rhs) << " " << v.detail << "\n";
  }
  return violations.empty() ? 0 : kExitViolations;
}

int run_generate(const Options& o) {
  RunConfig cfg = make_config(Command::generate, o);
  if (cfg.families.size() != 1) throw ParseError("generate needs exactly one --family");
  if (cfg.degrees.empty()) throw ParseError("generate needs --n or --n-range");
  std::string text;
  for (int n : cfg.degrees) {
    FamilySpec s = cfg.families.front();
    s.n = n;
    const Generated g = generate(s);
    if (!g.poly) {
      std::cerr << "no acceptable sample for n=" << n << " within " << s.attempts << " attempts\n";
      return kExitNumerical;
    }
    text += generate_line(*g.poly) + "\n";
  }
  write_out(o, text);
  return 0;
}

int run_energy(const Options& o) {
  RunConfig cfg = make_config(Command::energy, o);
  IntPolynomial p;
  if (cfg.poly) {
    p = parse_poly(*cfg.poly);
  } else {
    if (cfg.families.size() != 1 || cfg.degrees.size() != 1)
      throw ParseError("energy needs --poly, or one --family with one --n");
    FamilySpec s = cfg.families.front();
    s.n = cfg.degrees.front();
    const Generated g = generate(s);
    if (!g.poly) throw NonConvergence("no acceptable sample");
    p = *g.poly;
  }
  if (p.degree() < 1) throw DegreeZero("energy needs degree >= 1");
  RootOptions ro;
  ro.tol = cfg.tol;
  const RootSet rs = find_roots(p, ro);
  std::vector<double> radii{cfg.r.value_or(default_radius(p.degree(), mahler_jensen(p, rs).log_value))};
  radii.insert(radii.end(), cfg.energy_radii.begin(), cfg.energy_radii.end());
  const auto diags = energy_report(p, rs, radii);
  if (o.format == "csv") {
    std::string text = "schema_version,n,r,energy_sigma,self,cross,self_pair_bound,upper_bound,discrete_energy\n";
    for (const auto& d : diags) {
      text += std::to_string(kSchemaVersion) + "," + std::to_string(p.degree()) + "," + format_number(d.r) + "," +
              format_number(d.terms.value) + "," + format_number(d.terms.self) + "," + format_number(d.terms.cross) +
              "," + format_number(d.terms.self_pair_bound) + "," + format_number(d.upper_bound) + "," +
              format_number(d.discrete) + "\n";
    }
    write_out(o, text);
    return 0;
  }
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "energy";
  j["n"] = p.degree();
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(c.get_str());
  j["polynomial"] = coeffs;
  j["diagnostics"] = nlohmann::json::array();
  for (const auto& d : diags) j["diagnostics"].push_back(to_json(d));
  write_out(o, dump_json(j));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero distribution of integer polynomials: sweeps, bounds and energies"};
  app.require_subcommand(1);
  Options o;
  auto* analyze = app.add_subcommand("analyze", "full report for one polynomial");
  auto* sweep = app.add_subcommand("sweep", "reports across degrees");
  auto* verify = app.add_subcommand("verify", "check every inequality across a sweep");
  auto* generate = app.add_subcommand("generate", "write family members, one coefficient list per line");
  auto* energy = app.add_subcommand("energy", "energy diagnostics for one polynomial");
  for (auto* s : {analyze, sweep, verify, generate, energy}) add_shared(s, o);
  energy->add_option("--radii", o.radii, "extra smoothing radii")->delimiter(',');
  verify->add_option("--rhs-scale", o.rhs_scale, "multiply every right side (harness self-test)")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (analyze->parsed()) return run_analyze(o);
    if (sweep->parsed()) return run_sweep_cmd(o);
    if (verify->parsed()) return run_verify(o);
    if (generate->parsed()) return run_generate(o);
    if (energy->parsed()) return run_energy(o);
  } catch (const NonConvergence& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
