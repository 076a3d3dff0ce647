#pragma once

// Principal ideal ring contexts. Each context models a quotient P/(m) of a
// Euclidean domain P (Z or F_p[t]); m = 0 gives the domain itself. All
// linear algebra templates in linalg.hpp are written against this
// interface:
//
//   value_type; zero(); one(); add/sub/mul/neg; reduce(a); is_zero(a);
//   gcdext(a, b) -> Gcdext with s*a + t*b = g, a = a_g*g, b = b_g*g and
//                   s*a_g + t*b_g = 1 (so [[s, t], [-b_g, a_g]] is unimodular);
//   divides(a, b) -> b in (a); quotient(a, b) -> q with a*q = b;
//   ann(a) -> generator of the annihilator of a; canonical(a) -> canonical
//   generator of (a); unit_part(a) -> unit u with a = u * canonical(a);
//   inverse(u); pivot_key(a) -> smaller is a larger ideal (better pivot);
//   euclid_quotient(a, b) -> q with pivot_key(b - q*a) < pivot_key(a), on
//                   Euclidean domains only (nullopt on proper quotients).

#include "ttideal/arith.hpp"

#include <cstdint>
#include <optional>
#include <tuple>

namespace ttideal {

template <class T> struct Gcdext {
  T g, s, t, a_g, b_g;
};

/// The integers, with arbitrary precision.
struct IntegerPid {
  using value_type = BigInt;

  BigInt zero() const { return 0; }
  BigInt one() const { return 1; }
  BigInt add(const BigInt &a, const BigInt &b) const { return a + b; }
  BigInt sub(const BigInt &a, const BigInt &b) const { return a - b; }
  BigInt mul(const BigInt &a, const BigInt &b) const { return a * b; }
  BigInt neg(const BigInt &a) const { return -a; }
  BigInt reduce(const BigInt &a) const { return a; }
  bool is_zero(const BigInt &a) const { return a == 0; }

  Gcdext<BigInt> gcdext(const BigInt &a, const BigInt &b) const {
    if (a == 0 && b == 0) return {0, 1, 0, 1, 0};
    auto [g, s, t] = xgcd(a, b);
    return {g, s, t, a / g, b / g};
  }
  bool divides(const BigInt &a, const BigInt &b) const {
    return a == 0 ? b == 0 : b % a == 0;
  }
  BigInt quotient(const BigInt &a, const BigInt &b) const {
    return a == 0 ? BigInt(0) : BigInt(b / a);
  }
  BigInt ann(const BigInt &a) const { return a == 0 ? 1 : 0; }
  BigInt canonical(const BigInt &a) const { return abs(a); }
  BigInt unit_part(const BigInt &a) const { return a < 0 ? -1 : 1; }
  BigInt inverse(const BigInt &u) const { return u; }
  BigInt pivot_key(const BigInt &a) const { return abs(a); }
  /// Nearest quotient: |b - q a| <= |a| / 2.
  std::optional<BigInt> euclid_quotient(const BigInt &a, const BigInt &b) const {
    BigInt q = b / a, r = b - q * a;
    if (2 * abs(r) > abs(a)) q += (r < 0) == (a < 0) ? 1 : -1;
    return q;
  }
};

/// Z/n with machine-word residues in [0, n).
struct IntegerModRing {
  using value_type = std::int64_t;
  std::int64_t n;

  explicit IntegerModRing(std::int64_t modulus) : n(modulus) {}

  std::int64_t zero() const { return 0; }
  std::int64_t one() const { return 1 % n; }
  std::int64_t add(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>((static_cast<__int128>(a) + b) % n);
  }
  std::int64_t sub(std::int64_t a, std::int64_t b) const {
    return mod_floor(static_cast<std::int64_t>((static_cast<__int128>(a) - b) % n), n);
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return mod_floor(static_cast<std::int64_t>(static_cast<__int128>(a) * b % n), n);
  }
  std::int64_t neg(std::int64_t a) const { return a == 0 ? 0 : n - a; }
  std::int64_t reduce(std::int64_t a) const { return mod_floor(a, n); }
  bool is_zero(std::int64_t a) const { return a == 0; }

  static std::int64_t igcd(std::int64_t a, std::int64_t b) {
    while (b != 0) {
      std::int64_t r = a % b;
      a = b;
      b = r;
    }
    return a < 0 ? -a : a;
  }
  static std::tuple<std::int64_t, std::int64_t, std::int64_t> ixgcd(std::int64_t a,
                                                                   std::int64_t b) {
    std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      std::int64_t q = r0 / r1, tmp = r0 - q * r1;
      r0 = r1;
      r1 = tmp;
      tmp = s0 - q * s1;
      s0 = s1;
      s1 = tmp;
      tmp = t0 - q * t1;
      t0 = t1;
      t1 = tmp;
    }
    if (r0 < 0) return {-r0, -s0, -t0};
    return {r0, s0, t0};
  }

  Gcdext<std::int64_t> gcdext(std::int64_t a, std::int64_t b) const {
    if (a == 0 && b == 0) return {0, one(), 0, one(), 0};
    auto [g, s, t] = ixgcd(a, b);
    return {reduce(g), reduce(s), reduce(t), reduce(a / g), reduce(b / g)};
  }
  std::int64_t ideal_gen(std::int64_t a) const { return igcd(a, n); }
  bool divides(std::int64_t a, std::int64_t b) const { return b % ideal_gen(a) == 0; }
  std::int64_t quotient(std::int64_t a, std::int64_t b) const {
    auto [g, s, t] = ixgcd(a, n);
    (void)t;
    return mul(reduce(s), reduce(b / g));
  }
  std::int64_t ann(std::int64_t a) const { return reduce(n / ideal_gen(a)); }
  std::int64_t canonical(std::int64_t a) const { return reduce(ideal_gen(a)); }
  std::int64_t unit_part(std::int64_t a) const {
    std::int64_t g = ideal_gen(a);
    if (g == n) return one();
    std::int64_t step = n / g, u = reduce(a / g);
    while (igcd(u, n) != 1)
      u = reduce(u + step);
    return u;
  }
  std::int64_t inverse(std::int64_t u) const { return inv_mod(u, n); }
  std::int64_t pivot_key(std::int64_t a) const { return ideal_gen(a); }
  std::optional<std::int64_t> euclid_quotient(std::int64_t, std::int64_t) const { return std::nullopt; }
};

/// F_p[t] modulo f (f = 0 gives the polynomial ring itself).
struct PolyRingMod {
  using value_type = FpPoly;
  std::int64_t p;
  FpPoly f;

  PolyRingMod(std::int64_t prime, FpPoly modulus) : p(prime), f(std::move(modulus)) {}

  bool is_domain() const { return f.is_zero(); }
  FpPoly zero() const { return FpPoly(p); }
  FpPoly one() const { return reduce(FpPoly::constant(p, 1)); }
  FpPoly reduce(const FpPoly &a) const { return f.is_zero() ? a : a.divmod(f).second; }
  FpPoly add(const FpPoly &a, const FpPoly &b) const { return reduce(a + b); }
  FpPoly sub(const FpPoly &a, const FpPoly &b) const { return reduce(a - b); }
  FpPoly mul(const FpPoly &a, const FpPoly &b) const { return reduce(a * b); }
  FpPoly neg(const FpPoly &a) const { return -a; }
  bool is_zero(const FpPoly &a) const { return a.is_zero(); }

  Gcdext<FpPoly> gcdext(const FpPoly &a, const FpPoly &b) const {
    if (a.is_zero() && b.is_zero()) return {zero(), one(), zero(), one(), zero()};
    auto [g, s, t] = xgcd(a, b);
    return {reduce(g), reduce(s), reduce(t), reduce(a.divmod(g).first),
            reduce(b.divmod(g).first)};
  }
  /// Monic generator of (a) + (f) in F_p[t].
  FpPoly ideal_gen(const FpPoly &a) const { return gcd(a, f); }
  bool divides(const FpPoly &a, const FpPoly &b) const {
    FpPoly g = ideal_gen(a);
    if (g.is_zero()) return b.is_zero();
    return b.divmod(g).second.is_zero();
  }
  FpPoly quotient(const FpPoly &a, const FpPoly &b) const {
    if (f.is_zero()) return a.is_zero() ? zero() : b.divmod(a).first;
    auto [g, s, t] = xgcd(a, f);
    (void)t;
    return mul(s, b.divmod(g).first);
  }
  FpPoly ann(const FpPoly &a) const {
    if (f.is_zero()) return a.is_zero() ? one() : zero();
    return reduce(f.divmod(ideal_gen(a)).first);
  }
  FpPoly canonical(const FpPoly &a) const { return reduce(ideal_gen(a)); }
  FpPoly unit_part(const FpPoly &a) const {
    if (a.is_zero()) return one();
    if (f.is_zero()) return FpPoly::constant(p, a.lead());
    FpPoly g = ideal_gen(a);
    FpPoly base = a.divmod(g).first, step = f.divmod(g).first;
    // Some base + k*step is coprime to f; enumerate k by size.
    for (std::uint64_t k = 0;; ++k) {
      std::vector<std::int64_t> digits;
      for (std::uint64_t r = k; r > 0; r /= static_cast<std::uint64_t>(p))
        digits.push_back(static_cast<std::int64_t>(r % static_cast<std::uint64_t>(p)));
      FpPoly u = reduce(base + FpPoly(p, digits) * step);
      if (gcd(u, f).degree() == 0) return u;
    }
  }
  FpPoly inverse(const FpPoly &u) const {
    if (f.is_zero()) return FpPoly::constant(p, inv_mod(u.lead(), p));
    auto [g, s, t] = xgcd(u, f);
    (void)t;
    if (g.degree() != 0) fail(ErrorKind::ZeroElement, "not a unit");
    return reduce(s);
  }
  long pivot_key(const FpPoly &a) const { return ideal_gen(a).degree(); }
  std::optional<FpPoly> euclid_quotient(const FpPoly &a, const FpPoly &b) const {
    if (!f.is_zero()) return std::nullopt;
    return b.divmod(a).first;
  }
};

} // namespace ttideal
