#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "equid/bounds.hpp"
#include "equid/energy.hpp"
#include "equid/families.hpp"
#include "equid/intpoly.hpp"
#include "equid/zmeasure.hpp"

namespace equid {

inline constexpr int kSchemaVersion = 1;

enum class Command { analyze, sweep, verify, generate, energy };
enum class Format { json, csv };

std::string to_string(Command c);

/// Inclusive range "a:b" or "a:b:step".
struct DegreeRange {
  int lo = 1;
  int hi = 1;
  int step = 1;
  std::vector<int> values() const;
};
DegreeRange parse_range(std::string_view text);

/// The default test functions for the energy and main inequality reports.
std::vector<std::string> default_testfns();

struct RunConfig {
  Command command = Command::analyze;
  /// Families swept in order; ignored when poly is set.
  std::vector<FamilySpec> families;
  std::optional<std::string> poly;
  std::vector<int> degrees;
  std::vector<Sector> sectors = dyadic_sectors();
  std::vector<std::string> testfns = default_testfns();
  /// Radius for the main inequality; 1 / max(n, M) when absent.
  std::optional<double> r;
  double tol = 1e-12;
  unsigned jobs = 1;
  /// Moments 1..moments are reported.
  unsigned moments = 3;
  /// Extra radii for the energy command.
  std::vector<double> energy_radii;
  /// Test hook: every rhs is multiplied by this before verification.
  double rhs_scale = 1.0;
};

/// Family verification suite: binomial, kronecker and schur (M = 10).
std::vector<FamilySpec> default_suite(std::uint64_t seed);

struct EnergyDiagnostics {
  double r = 0.0;
  EnergyTerms terms;
  double upper_bound = 0.0;
  double discrete = 0.0;
};

struct Record {
  std::string family;
  std::uint64_t seed = 0;
  double M = 0.0;
  int n = 0;
  IntPolynomial poly;
  bool ok = true;
  /// "numerical" or "input" when ok is false.
  std::string error_kind;
  std::string error;

  RootSet roots;
  bool squarefree = false;
  bool in_disk = false;
  NormValue mahler;
  NormValue sup;
  std::optional<ExactInteger> disc;
  ExactRational exact_mean;
  std::complex<double> mean;
  std::vector<std::complex<double>> moments;
  std::vector<BoundReport> reports;
  std::optional<EnergyDiagnostics> energy;

  double mean_ratio() const;
  double sup_root() const;
  double cor23_ratio() const;
};

/// Full analysis of one polynomial. Module failures are recorded on the
/// record, never thrown.
Record analyze_polynomial(const IntPolynomial& p, const RunConfig& cfg);
/// Family member plus analysis.
Record analyze_member(const FamilySpec& spec, const RunConfig& cfg);

/// Records for every family and degree, in that order, using cfg.jobs
/// threads.
std::vector<Record> run_sweep(const RunConfig& cfg);

/// Energy diagnostics at each radius; default radius first.
std::vector<EnergyDiagnostics> energy_report(const IntPolynomial& p, const RootSet& rs, const std::vector<double>& radii);

struct Violation {
  std::size_t record = 0;
  std::string family;
  int n = 0;
  std::uint64_t seed = 0;
  double M = 0.0;
  /// Coefficients as decimal strings, lowest degree first.
  std::vector<std::string> polynomial;
  /// Bound kind, or "error" for a record that failed.
  std::string kind;
  std::string subject;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  /// Inputs of the violated report.
  std::vector<std::pair<std::string, double>> inputs;
  std::string detail;
};

/// slack + eps < 0 for binding reports, eps = 1e-9 (1 + |rhs|), with rhs
/// scaled by rhs_scale; failed records are violations too.
std::vector<Violation> find_violations(const std::vector<Record>& records, double rhs_scale = 1.0);
int exit_code(const std::vector<Violation>& violations);

struct SweepSummary {
  double max_mean_ratio = 0.0;
  double max_cor23_ratio = 0.0;
  double first_sup_root = 0.0;
  double last_sup_root = 0.0;
  /// |moment m| at the largest degree, m = 1..
  std::vector<double> last_moments;
  std::vector<double> max_moments;
  std::size_t failures = 0;
};
SweepSummary summarize(const std::vector<Record>& records);

nlohmann::json to_json(const Record& r);
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const EnergyDiagnostics& e);
nlohmann::json to_json(const Violation& v);
nlohmann::json to_json(const SweepSummary& s);
nlohmann::json bundle_json(Command cmd, const std::vector<Record>& records);

/// JSON text with every double written with 17 significant digits; NaN and
/// infinities become null.
std::string dump_json(const nlohmann::json& j, int indent = 2);

/// Long-format CSV: one row per statistic and per bound report.
std::string to_csv(const std::vector<Record>& records);
std::string csv_header();

/// %.17g, or an empty string for NaN.
std::string format_number(double x);

/// Dense coefficient line, lowest degree first.
std::string generate_line(const IntPolynomial& p);

}  // namespace equid
