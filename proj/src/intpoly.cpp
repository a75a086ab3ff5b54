#include "equid/intpoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>

#include "equid/errors.hpp"

namespace equid {

IntPolynomial::IntPolynomial(std::vector<ExactInteger> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPolynomial IntPolynomial::constant(const ExactInteger& c) {
  return IntPolynomial(std::vector<ExactInteger>{c});
}

IntPolynomial IntPolynomial::monomial(const ExactInteger& c, std::size_t k) {
  std::vector<ExactInteger> v(k + 1);
  v[k] = c;
  return IntPolynomial(std::move(v));
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

int IntPolynomial::degree() const {
  if (is_zero()) throw ZeroPolynomial("degree of the zero polynomial is undefined");
  return static_cast<int>(coeffs_.size()) - 1;
}

ExactInteger IntPolynomial::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : ExactInteger(0);
}

const ExactInteger& IntPolynomial::leading() const {
  if (is_zero()) throw ZeroPolynomial("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

ExactInteger IntPolynomial::content() const {
  ExactInteger g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return {};
  ExactInteger g = content();
  if (sgn(leading()) < 0) g = -g;
  IntPolynomial r = *this;
  if (g != 1) {
    for (auto& c : r.coeffs_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return r;
}

std::string IntPolynomial::to_dense_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) out += ',';
    out += coeffs_[k].get_str();
  }
  return out;
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const ExactInteger& c = coeffs_[i];
    if (sgn(c) == 0) continue;
    ExactInteger mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << 'z';
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<ExactInteger> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) v[k] = a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) v[k] += b.coeffs_[k];
  return IntPolynomial(std::move(v));
}

IntPolynomial operator-(const IntPolynomial& a) {
  IntPolynomial r = a;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<ExactInteger> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(v[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return IntPolynomial(std::move(v));
}

IntPolynomial operator*(const ExactInteger& c, const IntPolynomial& p) {
  IntPolynomial r = p;
  for (auto& x : r.coeffs_) x *= c;
  r.normalize();
  return r;
}

IntPolynomial pow(const IntPolynomial& p, unsigned e) {
  IntPolynomial result = IntPolynomial::constant(1);
  IntPolynomial base = p;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::string normalize_minus(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2212 MINUS SIGN, U+2013 EN DASH
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      s += '-';
      i += 2;
    } else if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
               static_cast<unsigned char>(text[i + 1]) == 0x80 &&
               static_cast<unsigned char>(text[i + 2]) == 0x93) {
      s += '-';
      i += 2;
    } else {
      s += text[i];
    }
  }
  return s;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

ExactInteger parse_integer(const std::string& tok) {
  std::size_t i = 0;
  if (i < tok.size() && (tok[i] == '+' || tok[i] == '-')) ++i;
  if (i == tok.size()) throw ParseError("expected an integer, got '" + tok + "'");
  for (std::size_t j = i; j < tok.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(tok[j]))) {
      throw ParseError("non-integer coefficient '" + tok + "'");
    }
  }
  ExactInteger v;
  std::string digits = tok[0] == '+' ? tok.substr(1) : tok;
  if (v.set_str(digits, 10) != 0) throw ParseError("bad integer '" + tok + "'");
  return v;
}

IntPolynomial parse_dense(const std::string& s) {
  std::vector<ExactInteger> coeffs;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    std::string tok = trim(std::string_view(s).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (tok.empty()) throw ParseError("empty coefficient in list '" + s + "'");
    coeffs.push_back(parse_integer(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return IntPolynomial(std::move(coeffs));
}

class SparseParser {
 public:
  explicit SparseParser(const std::string& s) : s_(s) {}

  IntPolynomial parse() {
    std::map<std::size_t, ExactInteger> terms;
    skip_ws();
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      auto [c, k] = term();
      terms[k] += sign * c;
      first = false;
      skip_ws();
    }
    if (first) fail("no terms");
    std::size_t maxk = terms.rbegin()->first;
    std::vector<ExactInteger> v(maxk + 1);
    for (auto& [k, c] : terms) v[k] = c;
    return IntPolynomial(std::move(v));
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  std::string digits() {
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(b, pos_ - b);
  }

  std::pair<ExactInteger, std::size_t> term() {
    ExactInteger c = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = ExactInteger(digits());
      have_coeff = true;
      skip_ws();
      if (peek() == '.' || peek() == '/' || peek() == 'e') fail("non-integer coefficient");
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (peek() != 'z') fail("expected 'z' after '*'");
      }
    }
    if (peek() != 'z') {
      if (!have_coeff) fail("expected a coefficient or 'z'");
      return {c, 0};
    }
    ++pos_;
    skip_ws();
    std::size_t k = 1;
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::string e = digits();
      if (e.empty()) fail("expected an exponent after '^'");
      k = std::stoul(e);
    }
    return {c, k};
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

IntPolynomial parse_poly(std::string_view text) {
  std::string s = normalize_minus(text);
  if (is_blank(s)) throw ParseError("empty polynomial text");
  if (s.find('z') != std::string::npos) return SparseParser(s).parse();
  return parse_dense(s);
}

// ---------------------------------------------------------------------------
// Arithmetic

IntPolynomial derivative(const IntPolynomial& p) {
  if (p.is_zero() || p.degree() == 0) return {};
  const auto& c = p.coeffs();
  std::vector<ExactInteger> d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<unsigned long>(k);
  return IntPolynomial(std::move(d));
}

std::optional<IntPolynomial> exact_quotient(const IntPolynomial& p, const IntPolynomial& q) {
  if (q.is_zero()) throw ZeroPolynomial("division by the zero polynomial");
  if (p.is_zero()) return IntPolynomial{};
  const int dp = p.degree(), dq = q.degree();
  if (dp < dq) return std::nullopt;
  std::vector<ExactInteger> rem = p.coeffs();
  std::vector<ExactInteger> quot(dp - dq + 1);
  const auto& qc = q.coeffs();
  const ExactInteger& lq = q.leading();
  for (int i = dp - dq; i >= 0; --i) {
    ExactInteger& top = rem[i + dq];
    if (!mpz_divisible_p(top.get_mpz_t(), lq.get_mpz_t())) return std::nullopt;
    mpz_divexact(quot[i].get_mpz_t(), top.get_mpz_t(), lq.get_mpz_t());
    if (sgn(quot[i]) == 0) continue;
    for (int j = 0; j <= dq; ++j) {
      mpz_submul(rem[i + j].get_mpz_t(), quot[i].get_mpz_t(), qc[j].get_mpz_t());
    }
  }
  for (int j = 0; j < dq; ++j) {
    if (sgn(rem[j]) != 0) return std::nullopt;
  }
  return IntPolynomial(std::move(quot));
}

namespace {

// In-place pseudo-remainder on raw coefficient vectors; returns the remainder
// trimmed of trailing zeros.
std::vector<ExactInteger> prem_raw(std::vector<ExactInteger> a, const std::vector<ExactInteger>& b) {
  const std::size_t db = b.size() - 1;
  const ExactInteger& lb = b.back();
  int e = static_cast<int>(a.size()) - static_cast<int>(db);  // delta + 1
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t da = a.size() - 1;
    ExactInteger lead = a.back();
    const std::size_t shift = da - db;
    for (std::size_t k = 0; k < a.size(); ++k) a[k] *= lb;
    for (std::size_t j = 0; j <= db; ++j) {
      mpz_submul(a[j + shift].get_mpz_t(), lead.get_mpz_t(), b[j].get_mpz_t());
    }
    a.pop_back();  // leading term cancels exactly
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
    --e;
  }
  if (e > 0 && !a.empty()) {
    ExactInteger f;
    mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
    for (auto& x : a) x *= f;
  }
  return a;
}

ExactInteger ipow(const ExactInteger& b, unsigned long e) {
  ExactInteger r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

void divexact_all(std::vector<ExactInteger>& v, const ExactInteger& d) {
  if (d == 1) return;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
}

}  // namespace

IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw ZeroPolynomial("pseudo-remainder by the zero polynomial");
  if (a.is_zero()) return {};
  return IntPolynomial(prem_raw(a.coeffs(), b.coeffs()));
}

ExactInteger resultant(const IntPolynomial& p, const IntPolynomial& q) {
  if (p.is_zero() || q.is_zero()) throw ZeroPolynomial("resultant with the zero polynomial");
  const int dp = p.degree(), dq = q.degree();
  if (dp == 0) return ipow(p.leading(), static_cast<unsigned long>(dq));
  if (dq == 0) return ipow(q.leading(), static_cast<unsigned long>(dp));

  ExactInteger ca = p.content(), cb = q.content();
  std::vector<ExactInteger> A = p.coeffs(), B = q.coeffs();
  divexact_all(A, ca);
  divexact_all(B, cb);
  const ExactInteger t = ipow(ca, static_cast<unsigned long>(dq)) * ipow(cb, static_cast<unsigned long>(dp));

  int s = 1;
  if (A.size() < B.size()) {
    std::swap(A, B);
    if ((dp & 1) && (dq & 1)) s = -1;
  }
  ExactInteger g = 1, h = 1;
  while (true) {
    const long da = static_cast<long>(A.size()) - 1;
    const long db = static_cast<long>(B.size()) - 1;
    const unsigned long delta = static_cast<unsigned long>(da - db);
    if ((da & 1) && (db & 1)) s = -s;
    std::vector<ExactInteger> R = prem_raw(std::move(A), B);
    A = std::move(B);
    if (R.empty()) return 0;
    divexact_all(R, g * ipow(h, delta));
    B = std::move(R);
    g = A.back();
    if (delta > 0) {
      ExactInteger num = ipow(g, delta);
      ExactInteger den = ipow(h, delta - 1);
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (B.size() == 1) break;
  }
  const unsigned long da = A.size() - 1;
  ExactInteger num = ipow(B.back(), da);
  ExactInteger den = ipow(h, da - 1);
  mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return s * t * h;
}

ExactInteger discriminant(const IntPolynomial& p) {
  if (p.is_zero()) throw ZeroPolynomial("discriminant of the zero polynomial");
  const long n = p.degree();
  if (n == 0) throw DegreeZero("discriminant needs degree >= 1");
  ExactInteger res = resultant(p, derivative(p));
  ExactInteger d;
  mpz_divexact(d.get_mpz_t(), res.get_mpz_t(), p.leading().get_mpz_t());
  if (((n * (n - 1)) / 2) & 1) d = -d;
  return d;
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  IntPolynomial x = a.primitive_part(), y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero() && y.degree() > 0) {
    IntPolynomial r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.primitive_part();
  }
  if (y.is_zero()) return x;
  return IntPolynomial::constant(1);
}

namespace {

using u64 = std::uint64_t;

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

void trim_mod(std::vector<u64>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// Degree of gcd(f, g) over F_m; f, g trimmed. m < 2^32.
int gcd_degree_mod(std::vector<u64> f, std::vector<u64> g, u64 m) {
  if (f.size() < g.size()) std::swap(f, g);
  while (!g.empty()) {
    const u64 inv = powmod(g.back(), m - 2, m);
    while (f.size() >= g.size()) {
      const u64 c = f.back() * inv % m;
      const std::size_t shift = f.size() - g.size();
      for (std::size_t j = 0; j < g.size(); ++j) {
        f[j + shift] = (f[j + shift] + m - c * g[j] % m) % m;
      }
      trim_mod(f);
      if (f.empty()) break;
    }
    std::swap(f, g);
  }
  return static_cast<int>(f.size()) - 1;
}

}  // namespace

bool squarefree_modular(const IntPolynomial& p) {
  if (p.is_zero()) return false;
  const int n = p.degree();
  if (n <= 1) return true;
  static constexpr u64 kPrimes[] = {2147483647ULL, 2147483629ULL, 2147483587ULL, 1000000007ULL};
  for (u64 m : kPrimes) {
    if (mpz_fdiv_ui(p.leading().get_mpz_t(), m) == 0) continue;
    std::vector<u64> f(n + 1), df(n);
    for (int k = 0; k <= n; ++k) f[k] = mpz_fdiv_ui(p.coeffs()[k].get_mpz_t(), m);
    for (int k = 1; k <= n; ++k) df[k - 1] = f[k] * static_cast<u64>(k) % m;
    trim_mod(df);
    if (df.empty()) continue;
    if (gcd_degree_mod(f, df, m) == 0) return true;
  }
  return false;
}

bool is_squarefree(const IntPolynomial& p) {
  if (p.is_zero()) throw ZeroPolynomial("square-freeness of the zero polynomial");
  if (p.degree() == 0) return true;
  if (squarefree_modular(p)) return true;
  return gcd(p, derivative(p)).degree() == 0;
}

std::vector<std::pair<IntPolynomial, unsigned>> squarefree_decomposition(const IntPolynomial& p) {
  if (p.is_zero()) throw ZeroPolynomial("square-free decomposition of the zero polynomial");
  std::vector<std::pair<IntPolynomial, unsigned>> out;
  IntPolynomial f = p.primitive_part();
  if (f.degree() == 0) return out;
  IntPolynomial g = gcd(f, derivative(f));
  IntPolynomial h = *exact_quotient(f, g);
  unsigned i = 1;
  while (g.degree() > 0) {
    IntPolynomial h2 = gcd(g, h);
    IntPolynomial s = *exact_quotient(h, h2);
    if (s.degree() > 0) out.emplace_back(s.primitive_part(), i);
    g = *exact_quotient(g, h2);
    h = std::move(h2);
    ++i;
  }
  if (h.degree() > 0) out.emplace_back(h.primitive_part(), i);
  return out;
}

unsigned factor_multiplicity(const IntPolynomial& p, const IntPolynomial& q) {
  if (q.is_zero() || q.degree() == 0) throw DegreeZero("factor must be nonconstant");
  if (p.is_zero()) throw ZeroPolynomial("every power divides the zero polynomial");
  unsigned m = 0;
  IntPolynomial cur = p;
  while (auto quot = exact_quotient(cur, q)) {
    cur = std::move(*quot);
    ++m;
  }
  return m;
}

std::vector<ExactRational> power_sums(const IntPolynomial& p, unsigned m_max) {
  if (p.is_zero()) throw ZeroPolynomial("power sums of the zero polynomial");
  const unsigned n = static_cast<unsigned>(p.degree());
  if (n == 0) throw DegreeZero("power sums need degree >= 1");
  // monic form z^n + e[1] z^(n-1) + ... + e[n]
  std::vector<ExactRational> e(n + 1);
  for (unsigned j = 1; j <= n; ++j) {
    e[j] = ExactRational(p.coeffs()[n - j], p.leading());
    e[j].canonicalize();
  }
  std::vector<ExactRational> ps(m_max + 1);
  for (unsigned m = 1; m <= m_max; ++m) {
    ExactRational acc = 0;
    if (m <= n) acc = e[m] * m;
    for (unsigned j = 1; j <= std::min(m - 1, n); ++j) acc += e[j] * ps[m - j];
    ps[m] = -acc;
  }
  ps.erase(ps.begin());
  return ps;
}

IntPolynomial deflate_origin(const IntPolynomial& p, unsigned* removed) {
  unsigned k = 0;
  if (!p.is_zero()) {
    while (sgn(p.coeffs()[k]) == 0) ++k;
  }
  if (removed) *removed = k;
  if (k == 0) return p;
  return IntPolynomial(std::vector<ExactInteger>(p.coeffs().begin() + k, p.coeffs().end()));
}

double log_abs(const ExactInteger& x) {
  if (sgn(x) == 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

ExactRational exact_mean(const IntPolynomial& p) {
  const int n = p.degree();
  if (n == 0) throw DegreeZero("mean of zeros needs degree >= 1");
  ExactRational m(-p.coeffs()[n - 1], p.leading() * n);
  m.canonicalize();
  return m;
}

}  // namespace equid
