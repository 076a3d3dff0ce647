#pragma once

// Exact scalar arithmetic: arbitrary precision integers and dense
// polynomials over a prime field F_p.

#include "ttideal/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ttideal {

// Expression templates off: results are plain values, so `(a + b).str()` and
// `auto` work as expected.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                            boost::multiprecision::et_off>;

inline std::string to_string(const BigInt &v) { return v.str(); }

inline BigInt abs(const BigInt &v) { return v < 0 ? BigInt(-v) : v; }

inline BigInt gcd(const BigInt &a, const BigInt &b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

/// Extended gcd over Z: returns (g, s, t) with s*a + t*b = g >= 0.
inline std::tuple<BigInt, BigInt, BigInt> xgcd(const BigInt &a,
                                               const BigInt &b) {
  BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  return {r0, s0, t0};
}

/// Least nonnegative residue of a modulo m (m > 0).
inline BigInt mod_floor(const BigInt &a, const BigInt &m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline bool is_prime(const BigInt &n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (BigInt d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// Trial division. Returns (prime, exponent) pairs in increasing order;
/// the sign of n is discarded. n must be nonzero.
inline std::vector<std::pair<BigInt, unsigned>> factor_integer(BigInt n) {
  if (n == 0) fail(ErrorKind::ZeroElement, "cannot factor 0");
  n = abs(n);
  std::vector<std::pair<BigInt, unsigned>> out;
  auto strip = [&](const BigInt &d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  };
  strip(2);
  for (BigInt d = 3; d * d <= n; d += 2)
    strip(d);
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  auto [g, s, t] = xgcd(BigInt(mod_floor(a, p)), BigInt(p));
  (void)t;
  if (g != 1) fail(ErrorKind::ZeroElement, "element not invertible modulo " +
                                               std::to_string(p));
  return static_cast<std::int64_t>(mod_floor(s, BigInt(p)));
}

// ---------------------------------------------------------------------------
// Textual univariate polynomials with integer coefficients.

/// Parses `c1 v^e1 + c2 v^e2 - ...` (coefficients optional, `*` optional).
/// Repeated exponents are summed. Throws ParseError on malformed input.
inline std::map<unsigned, BigInt> parse_univariate(std::string_view text,
                                                   char var) {
  std::map<unsigned, BigInt> terms;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  auto read_uint = [&](BigInt &out) {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (start == pos) return false;
    out = BigInt(std::string(text.substr(start, pos - start)));
    return true;
  };
  skip_ws();
  if (pos == text.size()) fail(ErrorKind::Parse, "empty polynomial");
  bool first = true;
  while (true) {
    skip_ws();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip_ws();
    } else if (!first) {
      fail(ErrorKind::Parse, "expected '+' or '-' in '" + std::string(text) + "'");
    }
    first = false;
    BigInt coeff = 1;
    bool have_coeff = read_uint(coeff);
    skip_ws();
    if (pos < text.size() && text[pos] == '*') {
      if (!have_coeff) fail(ErrorKind::Parse, "dangling '*'");
      ++pos;
      skip_ws();
    }
    unsigned exp = 0;
    if (pos < text.size() && text[pos] == var) {
      ++pos;
      exp = 1;
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip_ws();
        BigInt e;
        if (!read_uint(e) || e > 1'000'000)
          fail(ErrorKind::Parse, "bad exponent in '" + std::string(text) + "'");
        exp = static_cast<unsigned>(e);
      }
    } else if (!have_coeff) {
      fail(ErrorKind::Parse, "expected term in '" + std::string(text) + "'");
    }
    terms[exp] += sign * coeff;
  }
  for (auto it = terms.begin(); it != terms.end();)
    it = it->second == 0 ? terms.erase(it) : std::next(it);
  return terms;
}

/// Canonical rendering: descending exponents, unit coefficients elided,
/// e.g. `t^3+2t+1`. Coefficients are expected nonnegative.
inline std::string render_univariate(const std::map<unsigned, BigInt> &terms,
                                     char var) {
  if (terms.empty()) return "0";
  std::string out;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto &[e, c] = *it;
    if (!out.empty()) out += c < 0 ? "-" : "+";
    else if (c < 0) out += "-";
    BigInt m = abs(c);
    if (e == 0 || m != 1) out += m.str();
    if (e >= 1) out += var;
    if (e >= 2) out += "^" + std::to_string(e);
  }
  return out;
}

// ---------------------------------------------------------------------------

/// Dense polynomial over F_p, coefficients low to high, no trailing zeros.
class FpPoly {
public:
  FpPoly() = default;
  explicit FpPoly(std::int64_t p) : p_(p) {}
  FpPoly(std::int64_t p, std::vector<std::int64_t> coeffs)
      : p_(p), c_(std::move(coeffs)) {
    for (auto &x : c_)
      x = mod_floor(x, p_);
    trim();
  }

  static FpPoly constant(std::int64_t p, std::int64_t c) { return FpPoly(p, {c}); }
  static FpPoly monomial(std::int64_t p, std::size_t deg, std::int64_t c = 1) {
    std::vector<std::int64_t> v(deg + 1, 0);
    v[deg] = c;
    return FpPoly(p, std::move(v));
  }

  std::int64_t prime() const { return p_; }
  const std::vector<std::int64_t> &coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  std::int64_t lead() const { return c_.empty() ? 0 : c_.back(); }
  std::int64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  bool operator==(const FpPoly &o) const { return p_ == o.p_ && c_ == o.c_; }
  bool operator!=(const FpPoly &o) const { return !(*this == o); }
  /// Deterministic total order: degree first, then coefficients high to low.
  bool operator<(const FpPoly &o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    for (long i = degree(); i >= 0; --i)
      if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
  }

  friend FpPoly operator+(const FpPoly &a, const FpPoly &b) {
    std::vector<std::int64_t> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = a[i] + b[i];
    return FpPoly(a.p_, std::move(v));
  }
  friend FpPoly operator-(const FpPoly &a, const FpPoly &b) {
    std::vector<std::int64_t> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = a[i] - b[i];
    return FpPoly(a.p_, std::move(v));
  }
  FpPoly operator-() const { return FpPoly(p_) - *this; }
  friend FpPoly operator*(const FpPoly &a, const FpPoly &b) {
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
    std::vector<std::int64_t> v(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        v[i + j] = (v[i + j] + static_cast<__int128>(a.c_[i]) * b.c_[j] % a.p_) % a.p_;
    return FpPoly(a.p_, std::move(v));
  }
  FpPoly scaled(std::int64_t s) const {
    auto v = c_;
    for (auto &x : v)
      x = static_cast<std::int64_t>(static_cast<__int128>(x) * mod_floor(s, p_) % p_);
    return FpPoly(p_, std::move(v));
  }

  /// Euclidean division; divisor must be nonzero.
  std::pair<FpPoly, FpPoly> divmod(const FpPoly &d) const {
    if (d.is_zero()) fail(ErrorKind::ZeroElement, "polynomial division by zero");
    FpPoly r = *this;
    if (r.degree() < d.degree()) return {FpPoly(p_), r};
    std::vector<std::int64_t> q(static_cast<std::size_t>(r.degree() - d.degree() + 1), 0);
    std::int64_t inv = inv_mod(d.lead(), p_);
    auto &rc = r.c_;
    for (long k = r.degree() - d.degree(); k >= 0; --k) {
      std::int64_t coef = static_cast<std::int64_t>(
          static_cast<__int128>(rc[static_cast<std::size_t>(k + d.degree())]) * inv % p_);
      q[static_cast<std::size_t>(k)] = coef;
      if (coef == 0) continue;
      for (long j = 0; j <= d.degree(); ++j) {
        auto &slot = rc[static_cast<std::size_t>(k + j)];
        slot = mod_floor(static_cast<std::int64_t>(
                             (slot - static_cast<__int128>(coef) * d.c_[static_cast<std::size_t>(j)] % p_) % p_),
                         p_);
      }
    }
    r.trim();
    return {FpPoly(p_, std::move(q)), r};
  }

  FpPoly monic() const {
    if (is_zero()) return *this;
    return scaled(inv_mod(lead(), p_));
  }

  std::int64_t eval(std::int64_t x) const {
    __int128 acc = 0;
    for (long i = degree(); i >= 0; --i)
      acc = (acc * mod_floor(x, p_) + c_[static_cast<std::size_t>(i)]) % p_;
    return static_cast<std::int64_t>(acc);
  }

  std::map<unsigned, BigInt> terms() const {
    std::map<unsigned, BigInt> t;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) t[static_cast<unsigned>(i)] = c_[i];
    return t;
  }

  std::string str(char var = 't') const { return render_univariate(terms(), var); }

  static FpPoly parse(std::string_view text, std::int64_t p, char var = 't') {
    auto t = parse_univariate(text, var);
    std::vector<std::int64_t> v(t.empty() ? 0 : t.rbegin()->first + 1, 0);
    for (auto &[e, c] : t)
      v[e] = static_cast<std::int64_t>(mod_floor(c, BigInt(p)));
    return FpPoly(p, std::move(v));
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0)
      c_.pop_back();
  }

  std::int64_t p_ = 2;
  std::vector<std::int64_t> c_;
};

/// Monic gcd (zero if both are zero).
inline FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Extended gcd over F_p[t]: (g monic, s, t) with s*a + t*b = g.
inline std::tuple<FpPoly, FpPoly, FpPoly> xgcd(const FpPoly &a, const FpPoly &b) {
  const auto p = a.prime();
  FpPoly r0 = a, r1 = b, s0 = FpPoly::constant(p, 1), s1(p), t0(p),
         t1 = FpPoly::constant(p, 1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    FpPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    FpPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  std::int64_t inv = inv_mod(r0.lead(), p);
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

/// The k-th monic polynomial of degree d in a fixed enumeration
/// (base-p digits of k are the lower coefficients).
inline FpPoly nth_monic(std::int64_t p, unsigned d, std::uint64_t k) {
  std::vector<std::int64_t> v(d + 1, 0);
  v[d] = 1;
  for (unsigned i = 0; i < d; ++i) {
    v[i] = static_cast<std::int64_t>(k % static_cast<std::uint64_t>(p));
    k /= static_cast<std::uint64_t>(p);
  }
  return FpPoly(p, std::move(v));
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--)
    r *= b;
  return r;
}

/// Trial division by monic polynomials of increasing degree; the first
/// divisor found at each step is irreducible. Returns monic irreducible
/// factors with exponents, sorted by the FpPoly order.
inline std::vector<std::pair<FpPoly, unsigned>> factor_poly(const FpPoly &f) {
  if (f.is_zero()) fail(ErrorKind::ZeroElement, "cannot factor 0");
  const auto p = f.prime();
  FpPoly rest = f.monic();
  std::vector<std::pair<FpPoly, unsigned>> out;
  for (unsigned d = 1; 2 * d <= static_cast<unsigned>(std::max<long>(rest.degree(), 0)); ++d) {
    const std::uint64_t count = ipow(static_cast<std::uint64_t>(p), d);
    for (std::uint64_t k = 0; k < count && 2 * d <= static_cast<unsigned>(rest.degree()); ++k) {
      FpPoly g = nth_monic(p, d, k);
      unsigned e = 0;
      while (true) {
        auto [q, r] = rest.divmod(g);
        if (!r.is_zero()) break;
        rest = q;
        ++e;
      }
      if (e > 0) out.emplace_back(g, e);
    }
  }
  if (rest.degree() >= 1) {
    auto it = std::find_if(out.begin(), out.end(), [&](auto &pr) { return pr.first == rest; });
    if (it != out.end()) ++it->second;
    else out.emplace_back(rest, 1);
  }
  std::sort(out.begin(), out.end(), [](auto &a, auto &b) { return a.first < b.first; });
  return out;
}

inline bool is_irreducible(const FpPoly &f) {
  if (f.degree() < 1) return false;
  auto fs = factor_poly(f);
  return fs.size() == 1 && fs[0].second == 1;
}

} // namespace ttideal
