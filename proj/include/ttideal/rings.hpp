#pragma once

// The ring catalog: Z, Z/n, F_p, F_p[t], F_p[t]/(f) and an abstract DVR.
// Elements of the arithmetic kinds are BigInt (integer kinds) or FpPoly
// (polynomial kinds). The DVR has no element arithmetic; wherever a DVR
// element is needed (ideal generators, torsion orders) it is recorded by its
// x-adic valuation as a BigInt.

#include "ttideal/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ttideal {

using Elem = std::variant<BigInt, FpPoly>;

enum class RingKind { Integers, IntegersMod, PrimeField, PolyRing, PolyQuotient, Dvr };

class Ring {
public:
  /// The integers.
  Ring() : kind_(RingKind::Integers) {}
  static Ring integers() { return Ring(RingKind::Integers); }
  static Ring integers_mod(const BigInt &n) {
    if (n < 2) fail(ErrorKind::Parse, "Z/n requires n >= 2");
    if (n > BigInt(std::numeric_limits<std::int64_t>::max() / 4))
      fail(ErrorKind::UnsupportedRing, "modulus too large: " + n.str());
    Ring r(RingKind::IntegersMod);
    r.n_ = n;
    return r;
  }
  static Ring prime_field(const BigInt &p) {
    if (!is_prime(p)) fail(ErrorKind::NotPrime, p.str() + " is not prime");
    if (p > BigInt(std::numeric_limits<std::int32_t>::max()))
      fail(ErrorKind::UnsupportedRing, "characteristic too large: " + p.str());
    Ring r(RingKind::PrimeField);
    r.n_ = p;
    return r;
  }
  static Ring poly(const BigInt &p) {
    Ring r = prime_field(p);
    r.kind_ = RingKind::PolyRing;
    return r;
  }
  static Ring poly_quotient(const BigInt &p, FpPoly f) {
    Ring r = poly(p);
    if (f.degree() < 1) fail(ErrorKind::Parse, "quotient polynomial must have degree >= 1");
    if (f.lead() != 1) fail(ErrorKind::Parse, "quotient polynomial must be monic");
    r.kind_ = RingKind::PolyQuotient;
    r.f_ = std::move(f);
    return r;
  }
  static Ring dvr() { return Ring(RingKind::Dvr); }

  RingKind kind() const { return kind_; }
  /// Modulus for Z/n, the characteristic for F_p and polynomial kinds.
  const BigInt &n() const { return n_; }
  std::int64_t p() const { return static_cast<std::int64_t>(n_); }
  const FpPoly &f() const { return f_; }

  bool is_dvr() const { return kind_ == RingKind::Dvr; }
  bool is_pid_domain() const {
    return kind_ == RingKind::Integers || kind_ == RingKind::PolyRing;
  }
  bool is_artinian() const {
    return kind_ == RingKind::IntegersMod || kind_ == RingKind::PrimeField ||
           kind_ == RingKind::PolyQuotient;
  }
  bool is_domain() const {
    if (is_pid_domain() || is_dvr() || kind_ == RingKind::PrimeField) return true;
    if (kind_ == RingKind::IntegersMod) return is_prime(n_);
    return is_irreducible(f_);
  }
  bool integer_kind() const {
    return kind_ == RingKind::Integers || kind_ == RingKind::IntegersMod ||
           kind_ == RingKind::PrimeField;
  }
  bool poly_kind() const {
    return kind_ == RingKind::PolyRing || kind_ == RingKind::PolyQuotient;
  }
  /// Local rings of the catalog: the DVR and artinian rings with one prime.
  bool is_local() const {
    if (is_dvr() || kind_ == RingKind::PrimeField) return true;
    if (kind_ == RingKind::IntegersMod) return factor_integer(n_).size() == 1;
    if (kind_ == RingKind::PolyQuotient) return factor_poly(f_).size() == 1;
    return false;
  }

  /// Canonical ring spec, e.g. `GF(2)[t]/(t^3+t+1)`.
  std::string str() const {
    switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::IntegersMod: return "Z/" + n_.str();
    case RingKind::PrimeField: return "GF(" + n_.str() + ")";
    case RingKind::PolyRing: return "GF(" + n_.str() + ")[t]";
    case RingKind::PolyQuotient: return "GF(" + n_.str() + ")[t]/(" + f_.str() + ")";
    case RingKind::Dvr: return "DVR";
    }
    return "?";
  }

  bool operator==(const Ring &o) const {
    return kind_ == o.kind_ && n_ == o.n_ && f_ == o.f_;
  }
  bool operator!=(const Ring &o) const { return !(*this == o); }

  /// The modulus of this ring as a quotient of its covering PID (0 for PIDs).
  Elem modulus() const {
    switch (kind_) {
    case RingKind::Integers: return BigInt(0);
    case RingKind::IntegersMod:
    case RingKind::PrimeField: return n_;
    case RingKind::PolyRing: return FpPoly(p());
    case RingKind::PolyQuotient: return f_;
    case RingKind::Dvr: break;
    }
    fail(ErrorKind::UnsupportedRing, "the DVR has no element arithmetic");
  }

  Elem zero() const {
    if (integer_kind()) return BigInt(0);
    if (poly_kind()) return FpPoly(p());
    fail(ErrorKind::UnsupportedRing, "the DVR has no element arithmetic");
  }
  Elem from_int(long long v) const {
    if (integer_kind()) return reduce(BigInt(v));
    if (poly_kind()) return reduce(FpPoly::constant(p(), static_cast<std::int64_t>(mod_floor(BigInt(v), n_))));
    fail(ErrorKind::UnsupportedRing, "the DVR has no element arithmetic");
  }
  Elem one() const { return from_int(1); }

  /// Canonical representative (residue in [0, n), or remainder mod f).
  Elem reduce(const Elem &e) const {
    switch (kind_) {
    case RingKind::Integers: return std::get<BigInt>(e);
    case RingKind::IntegersMod:
    case RingKind::PrimeField: return mod_floor(std::get<BigInt>(e), n_);
    case RingKind::PolyRing: return std::get<FpPoly>(e);
    case RingKind::PolyQuotient: return std::get<FpPoly>(e).divmod(f_).second;
    case RingKind::Dvr: break;
    }
    fail(ErrorKind::UnsupportedRing, "the DVR has no element arithmetic");
  }

  Elem parse_element(std::string_view text) const {
    if (integer_kind()) {
      auto t = parse_univariate(text, '\0');
      BigInt v = t.empty() ? BigInt(0) : t.begin()->second;
      if (t.size() > 1 || (!t.empty() && t.begin()->first != 0))
        fail(ErrorKind::Parse, "not an integer: " + std::string(text));
      return reduce(v);
    }
    if (poly_kind()) return reduce(FpPoly::parse(text, p()));
    fail(ErrorKind::UnsupportedRing, "the DVR has no element arithmetic");
  }

  std::string render(const Elem &e) const {
    if (std::holds_alternative<BigInt>(e)) return std::get<BigInt>(e).str();
    return std::get<FpPoly>(e).str();
  }

private:
  explicit Ring(RingKind k) : kind_(k) {}

  RingKind kind_;
  BigInt n_ = 0;
  FpPoly f_;
};

// ---------------------------------------------------------------------------
// Context dispatch.

inline BigInt to_ctx(const IntegerPid &, const Elem &e) { return std::get<BigInt>(e); }
inline std::int64_t to_ctx(const IntegerModRing &c, const Elem &e) {
  return static_cast<std::int64_t>(mod_floor(std::get<BigInt>(e), BigInt(c.n)));
}
inline FpPoly to_ctx(const PolyRingMod &c, const Elem &e) { return c.reduce(std::get<FpPoly>(e)); }

inline Elem from_ctx(const IntegerPid &, const BigInt &v) { return v; }
inline Elem from_ctx(const IntegerModRing &, std::int64_t v) { return BigInt(v); }
inline Elem from_ctx(const PolyRingMod &, const FpPoly &v) { return v; }

template <class Ctx> MatrixOf<Ctx> to_ctx(const Ctx &c, const Matrix<Elem> &m) {
  return m.map([&](const Elem &e) { return to_ctx(c, e); });
}
template <class Ctx> Matrix<Elem> from_ctx(const Ctx &c, const MatrixOf<Ctx> &m) {
  return m.map([&](const typename Ctx::value_type &v) { return from_ctx(c, v); });
}

/// Calls f with the principal ideal ring context of r itself.
template <class F> decltype(auto) visit_ring(const Ring &r, F &&f) {
  switch (r.kind()) {
  case RingKind::Integers: return f(IntegerPid{});
  case RingKind::IntegersMod:
  case RingKind::PrimeField: return f(IntegerModRing(static_cast<std::int64_t>(r.n())));
  case RingKind::PolyRing: return f(PolyRingMod(r.p(), FpPoly(r.p())));
  case RingKind::PolyQuotient: return f(PolyRingMod(r.p(), r.f()));
  case RingKind::Dvr: break;
  }
  fail(ErrorKind::UnsupportedRing, "the DVR has no element arithmetic");
}

/// Calls f(pid, modulus) with the covering Euclidean domain of r and the
/// modulus presenting r as its quotient (zero for PIDs).
template <class F> decltype(auto) visit_cover(const Ring &r, F &&f) {
  if (r.integer_kind()) return f(IntegerPid{}, std::get<BigInt>(r.modulus()));
  if (r.poly_kind()) {
    PolyRingMod pid(r.p(), FpPoly(r.p()));
    return f(pid, std::get<FpPoly>(r.modulus()));
  }
  fail(ErrorKind::UnsupportedRing, "the DVR has no element arithmetic");
}

inline Elem add(const Ring &r, const Elem &a, const Elem &b) {
  return visit_ring(r, [&](const auto &c) { return from_ctx(c, c.add(to_ctx(c, a), to_ctx(c, b))); });
}
inline Elem mul(const Ring &r, const Elem &a, const Elem &b) {
  return visit_ring(r, [&](const auto &c) { return from_ctx(c, c.mul(to_ctx(c, a), to_ctx(c, b))); });
}
inline Elem neg(const Ring &r, const Elem &a) {
  return visit_ring(r, [&](const auto &c) { return from_ctx(c, c.neg(to_ctx(c, a))); });
}
inline bool is_zero(const Elem &e) {
  return std::holds_alternative<BigInt>(e) ? std::get<BigInt>(e) == 0 : std::get<FpPoly>(e).is_zero();
}

// ---------------------------------------------------------------------------
// Prime ideals and ideals.

struct PrimeIdeal {
  enum class Tag { Zero, Max, DvrMax };
  Tag tag = Tag::Zero;
  Elem generator = BigInt(0); // Max only: positive prime or monic irreducible

  static PrimeIdeal zero() { return {}; }
  static PrimeIdeal dvr_max() { return {Tag::DvrMax, BigInt(1)}; }
  static PrimeIdeal max(Elem g) { return {Tag::Max, std::move(g)}; }

  bool is_zero() const { return tag == Tag::Zero; }
  bool is_maximal() const { return tag != Tag::Zero; }

  std::string str() const {
    switch (tag) {
    case Tag::Zero: return "(0)";
    case Tag::DvrMax: return "(x)";
    case Tag::Max:
      return "(" + (std::holds_alternative<BigInt>(generator) ? std::get<BigInt>(generator).str()
                                                             : std::get<FpPoly>(generator).str()) + ")";
    }
    return "?";
  }

  bool operator==(const PrimeIdeal &o) const { return tag == o.tag && generator == o.generator; }
  bool operator!=(const PrimeIdeal &o) const { return !(*this == o); }
  bool operator<(const PrimeIdeal &o) const {
    if (tag != o.tag) return tag < o.tag;
    if (generator.index() != o.generator.index()) return generator.index() < o.generator.index();
    if (std::holds_alternative<BigInt>(generator))
      return std::get<BigInt>(generator) < std::get<BigInt>(o.generator);
    return std::get<FpPoly>(generator) < std::get<FpPoly>(o.generator);
  }
};

/// An ideal of a catalog ring, by canonical generator. Every ideal of a
/// catalog ring is principal. For the DVR the generator is the exponent k
/// of x^k.
struct Ideal {
  bool zero = true;
  Elem generator = BigInt(0);

  bool operator==(const Ideal &o) const {
    return zero == o.zero && (zero || generator == o.generator);
  }
  bool operator!=(const Ideal &o) const { return !(*this == o); }
};

/// Canonical generator of the ideal a*R (artinian kinds: the monic/positive
/// divisor gcd(lift a, modulus)).
inline Ideal ideal_of(const Ring &r, const Elem &a) {
  if (r.is_dvr()) return {false, a};
  Elem g = visit_cover(r, [&](const auto &pid, const auto &m) {
    auto v = pid.canonical(to_ctx(pid, r.reduce(a)));
    if (!pid.is_zero(m)) v = pid.canonical(gcd(v, m));
    return from_ctx(pid, v);
  });
  Elem m = r.modulus();
  if (is_zero(g) || (!is_zero(m) && g == m)) return {true, r.zero()};
  return {false, g};
}

inline Ideal unit_ideal(const Ring &r) {
  if (r.is_dvr()) return {false, BigInt(0)};
  return {false, r.one()};
}
inline Ideal zero_ideal(const Ring &r) { return {true, r.is_dvr() ? Elem(BigInt(0)) : r.zero()}; }
inline Ideal dvr_power(const BigInt &k) { return {false, k}; }

inline bool is_unit_ideal(const Ring &r, const Ideal &i) {
  if (i.zero) return false;
  if (r.is_dvr()) return std::get<BigInt>(i.generator) == 0;
  return i.generator == r.one();
}

inline std::string render(const Ring &r, const Ideal &i) {
  if (i.zero) return "(0)";
  if (r.is_dvr()) {
    const auto &k = std::get<BigInt>(i.generator);
    if (k == 0) return "(1)";
    if (k == 1) return "(x)";
    return "(x^" + k.str() + ")";
  }
  return "(" + r.render(i.generator) + ")";
}

/// I + J.
inline Ideal ideal_sum(const Ring &r, const Ideal &a, const Ideal &b) {
  if (a.zero) return b;
  if (b.zero) return a;
  if (r.is_dvr())
    return dvr_power(std::min(std::get<BigInt>(a.generator), std::get<BigInt>(b.generator)));
  if (r.integer_kind()) return ideal_of(r, gcd(std::get<BigInt>(a.generator), std::get<BigInt>(b.generator)));
  return ideal_of(r, gcd(std::get<FpPoly>(a.generator), std::get<FpPoly>(b.generator)));
}

/// I * J.
inline Ideal ideal_product(const Ring &r, const Ideal &a, const Ideal &b) {
  if (a.zero || b.zero) return zero_ideal(r);
  if (r.is_dvr()) return dvr_power(std::get<BigInt>(a.generator) + std::get<BigInt>(b.generator));
  return visit_cover(r, [&](const auto &pid, const auto &) {
    return ideal_of(r, from_ctx(pid, pid.mul(to_ctx(pid, a.generator), to_ctx(pid, b.generator))));
  });
}

/// I ⊆ J.
inline bool ideal_contained(const Ring &r, const Ideal &i, const Ideal &j) {
  if (i.zero) return true;
  if (j.zero) return false;
  if (r.is_dvr()) return std::get<BigInt>(j.generator) <= std::get<BigInt>(i.generator);
  return visit_cover(r, [&](const auto &pid, const auto &) {
    return pid.divides(to_ctx(pid, j.generator), to_ctx(pid, i.generator));
  });
}

// ---------------------------------------------------------------------------
// Catalog operations.

/// Prime factorization over Z or F_p[t]. Factors are positive primes or monic
/// irreducibles in increasing order; the unit part is dropped.
inline std::vector<std::pair<Elem, unsigned>> factor(const Ring &r, const Elem &e) {
  if (!r.is_pid_domain())
    fail(ErrorKind::UnsupportedRing, "factor requires Z or GF(p)[t], got " + r.str());
  if (is_zero(e)) fail(ErrorKind::ZeroElement, "cannot factor 0");
  std::vector<std::pair<Elem, unsigned>> out;
  if (r.integer_kind()) {
    for (auto &[q, k] : factor_integer(std::get<BigInt>(e)))
      out.emplace_back(q, k);
  } else {
    for (auto &[q, k] : factor_poly(std::get<FpPoly>(e)))
      out.emplace_back(q, k);
  }
  return out;
}

/// Prime generators of the covering PID that contain the lift of a nonzero
/// element (the points of V(a) other than (0)).
inline std::vector<PrimeIdeal> prime_divisors_of_lift(const Ring &r, const Elem &a) {
  std::vector<PrimeIdeal> out;
  if (r.integer_kind()) {
    for (auto &[q, k] : factor_integer(std::get<BigInt>(a)))
      out.push_back(PrimeIdeal::max(q));
  } else {
    for (auto &[q, k] : factor_poly(std::get<FpPoly>(a)))
      out.push_back(PrimeIdeal::max(q));
  }
  return out;
}

/// Spec R for the rings whose spectrum is finite.
inline std::vector<PrimeIdeal> spec_list(const Ring &r) {
  if (r.is_dvr()) return {PrimeIdeal::zero(), PrimeIdeal::dvr_max()};
  if (!r.is_artinian())
    fail(ErrorKind::InfiniteSpectrum, "Spec " + r.str() + " is infinite");
  return prime_divisors_of_lift(r, r.modulus());
}

/// Whether p is a prime ideal of r, in the catalog's representation.
inline bool is_prime_of(const Ring &r, const PrimeIdeal &p) {
  switch (p.tag) {
  case PrimeIdeal::Tag::DvrMax: return r.is_dvr();
  case PrimeIdeal::Tag::Zero: return r.is_pid_domain() || r.is_dvr();
  case PrimeIdeal::Tag::Max: break;
  }
  if (r.is_dvr()) return false;
  if (r.integer_kind() != std::holds_alternative<BigInt>(p.generator)) return false;
  if (r.integer_kind()) {
    const auto &q = std::get<BigInt>(p.generator);
    if (!is_prime(q)) return false;
    return r.kind() == RingKind::Integers || r.n() % q == 0;
  }
  const auto &g = std::get<FpPoly>(p.generator);
  if (g.prime() != r.p() || g.lead() != 1 || !is_irreducible(g)) return false;
  return r.kind() == RingKind::PolyRing || r.f().divmod(g).second.is_zero();
}

/// Parses `(0)`, `(x)` (DVR), `(5)`, `(t+1)` into a prime of r.
inline PrimeIdeal parse_prime(const Ring &r, std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 3 || s.front() != '(' || s.back() != ')')
    fail(ErrorKind::Parse, "prime ideal must look like (g): " + std::string(text));
  std::string inner = s.substr(1, s.size() - 2);
  PrimeIdeal p;
  if (r.is_dvr()) {
    if (inner == "0") p = PrimeIdeal::zero();
    else if (inner == "x") p = PrimeIdeal::dvr_max();
    else fail(ErrorKind::Parse, "DVR primes are (0) and (x)");
  } else if (inner == "0" && (r.is_pid_domain())) {
    p = PrimeIdeal::zero();
  } else {
    Elem g;
    if (r.integer_kind()) g = abs(std::get<BigInt>(Ring::integers().parse_element(inner)));
    else g = FpPoly::parse(inner, r.p()).monic();
    p = PrimeIdeal::max(std::move(g));
  }
  if (!is_prime_of(r, p)) fail(ErrorKind::Parse, s + " is not a prime ideal of " + r.str());
  return p;
}

/// p ⊆ q for primes of the same ring.
inline bool prime_contained(const PrimeIdeal &p, const PrimeIdeal &q) {
  return p.is_zero() || p == q;
}

/// a ∈ p for the lift of a (DVR: valuation a > 0 or p = 0 ideal check).
inline bool ideal_in_prime(const Ring &r, const Ideal &i, const PrimeIdeal &p) {
  if (i.zero) return true;
  if (r.is_dvr()) return p.tag == PrimeIdeal::Tag::DvrMax && std::get<BigInt>(i.generator) > 0;
  if (p.is_zero()) return false;
  return visit_cover(r, [&](const auto &pid, const auto &) {
    return pid.divides(to_ctx(pid, p.generator), to_ctx(pid, i.generator));
  });
}

/// The residue field κ(p) of a maximal ideal, as a catalog ring.
inline Ring residue_field(const Ring &r, const PrimeIdeal &p) {
  if (!p.is_maximal() || r.is_dvr())
    fail(ErrorKind::NotMaximal, p.str() + " is not a maximal ideal with computable residue field");
  if (!is_prime_of(r, p)) fail(ErrorKind::NotMaximal, p.str() + " is not a prime of " + r.str());
  if (r.integer_kind()) return Ring::prime_field(std::get<BigInt>(p.generator));
  return Ring::poly_quotient(r.n(), std::get<FpPoly>(p.generator));
}

/// Image of e in κ(p).
inline Elem residue_field_reduce(const Ring &r, const PrimeIdeal &p, const Elem &e) {
  Ring k = residue_field(r, p);
  return k.reduce(r.reduce(e));
}

/// Parses `Z`, `Z/<n>`, `GF(<p>)`, `GF(<p>)[t]`, `GF(<p>)[t]/(<poly>)`, `DVR`.
/// A product of factors such as `t^2*(t+1)`, `t^2(t+1)` or `(t+1)^2*t`.
inline FpPoly parse_poly_product(const std::string &s, std::int64_t p) {
  FpPoly acc = FpPoly::constant(p, 1);
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '*') {
      ++i;
      continue;
    }
    std::string factor;
    if (s[i] == '(') {
      int depth = 0;
      std::size_t j = i;
      for (; j < s.size(); ++j) {
        if (s[j] == '(') ++depth;
        if (s[j] == ')' && --depth == 0) break;
      }
      if (j == s.size()) fail(ErrorKind::Parse, "unbalanced parentheses in '" + s + "'");
      factor = s.substr(i + 1, j - i - 1);
      i = j + 1;
    } else {
      std::size_t j = i;
      while (j < s.size() && s[j] != '*' && s[j] != '(') ++j;
      factor = s.substr(i, j - i);
      i = j;
    }
    unsigned e = 1;
    if (i < s.size() && s[i] == '^') {
      std::size_t j = ++i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) fail(ErrorKind::Parse, "bad exponent in '" + s + "'");
      e = static_cast<unsigned>(std::stoul(s.substr(i, j - i)));
      i = j;
    }
    FpPoly f = FpPoly::parse(factor, p);
    for (unsigned k = 0; k < e; ++k) acc = acc * f;
  }
  return acc;
}

inline Ring parse_ring(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto number = [&](const std::string &digits) {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail(ErrorKind::Parse, "bad ring: " + std::string(text));
    return BigInt(digits);
  };
  if (s == "Z") return Ring::integers();
  if (s == "DVR") return Ring::dvr();
  if (s.rfind("Z/", 0) == 0) return Ring::integers_mod(number(s.substr(2)));
  if (s.rfind("GF(", 0) == 0) {
    auto close = s.find(')');
    if (close == std::string::npos) fail(ErrorKind::Parse, "bad ring: " + std::string(text));
    BigInt p = number(s.substr(3, close - 3));
    std::string rest = s.substr(close + 1);
    if (rest.empty()) return Ring::prime_field(p);
    if (rest == "[t]") return Ring::poly(p);
    if (rest.rfind("[t]/(", 0) == 0 && rest.back() == ')') {
      Ring base = Ring::poly(p);
      return Ring::poly_quotient(p, parse_poly_product(rest.substr(5, rest.size() - 6), base.p()));
    }
  }
  fail(ErrorKind::Parse, "bad ring: " + std::string(text));
}

} // namespace ttideal
