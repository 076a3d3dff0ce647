#pragma once

// Formal complexes over the DVR: every object is determined by its homology
// H_i, so a complex is a finite prefix of DVR modules followed by a tail rule
// that generates H_i for all large i. On top of that: the Loewy-growth
// classes L_c (l.l.(H_i) <= t i^(c-1) for i >> 0), Künneth products on
// windows, and degreewise checks of the identities relating those classes.

#include "ttideal/complexes.hpp"

#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ttideal {

/// A polynomial in i with nonnegative integer coefficients.
class ExpPoly {
public:
  ExpPoly() = default;
  explicit ExpPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
    for (auto &x : c_)
      if (x < 0) fail(ErrorKind::Parse, "exponent polynomials need nonnegative coefficients");
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  static ExpPoly constant(const BigInt &v) { return ExpPoly({v}); }
  static ExpPoly monomial(unsigned deg, const BigInt &coeff = 1) {
    std::vector<BigInt> c(deg + 1, BigInt(0));
    c[deg] = coeff;
    return ExpPoly(c);
  }
  static ExpPoly parse(std::string_view text) {
    auto t = parse_univariate(text, 'i');
    std::vector<BigInt> c;
    for (auto &[e, v] : t) {
      if (c.size() <= e) c.resize(e + 1, BigInt(0));
      c[e] = v;
    }
    return ExpPoly(c);
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  BigInt at(const BigInt &i) const {
    BigInt v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * i + *it;
    return v;
  }
  std::string str() const {
    std::map<unsigned, BigInt> t;
    for (std::size_t e = 0; e < c_.size(); ++e)
      if (c_[e] != 0) t[static_cast<unsigned>(e)] = c_[e];
    return render_univariate(t, 'i');
  }
  bool operator==(const ExpPoly &o) const { return c_ == o.c_; }

private:
  std::vector<BigInt> c_;
};

enum class TailKind { Zero, Poly, Factorial, Free, Unknown };

struct TailRule;

/// Upper bound for the Loewy lengths of a tensor product of two complexes
/// with finite-length prefixes and single-polynomial tails:
/// U(n) = min(max(ux, g(n + sx)), max(uy, h(n + sy))).
struct Envelope {
  BigInt ux, uy;
  ExpPoly g, h;
  int gx_start = 0, gy_start = 0, gx_offset = 0, gy_offset = 0;
  int sx = 0, sy = 0;

  BigInt at(int n) const {
    auto side = [](const BigInt &u, const ExpPoly &p, int m, int start, int offset) {
      BigInt v = u;
      if (m >= start) v = std::max(v, p.at(m - offset));
      return v;
    };
    return std::min(side(ux, g, n + sx, gx_start, gx_offset), side(uy, h, n + sy, gy_start, gy_offset));
  }
  int degree() const { return std::min(g.degree(), h.degree()); }
  std::string str() const {
    auto at = [](int s) { return s == 0 ? std::string("n") : s > 0 ? "n+" + std::to_string(s) : "n" + std::to_string(s); };
    return "min(max(" + ux.str() + ", " + g.str() + " at " + at(sx) + "), max(" + uy.str() + ", " + h.str() +
           " at " + at(sy) + "))";
  }
};

struct TailRule {
  TailKind kind = TailKind::Zero;
  int start = 0;               // first degree governed by the rule
  int offset = 0;              // degree i evaluates the rule at i - offset
  std::vector<ExpPoly> polys;  // Poly, and torsion of Free; repetition = multiplicity
  BigInt scale = 1;            // Factorial: R/x^(scale * (i - offset)!)
  std::size_t free_rank = 0;   // Free
  std::optional<Envelope> envelope; // Unknown tails of tensor products

  static TailRule zero(int start) { return make(TailKind::Zero, start); }
  static TailRule make(TailKind k, int start) {
    TailRule t;
    t.kind = k;
    t.start = start;
    return t;
  }
  static TailRule poly(std::vector<ExpPoly> gs, int start) {
    TailRule t = make(TailKind::Poly, start);
    t.polys = std::move(gs);
    return t;
  }
  static TailRule factorial(BigInt scale, int start) {
    TailRule t = make(TailKind::Factorial, start);
    t.scale = std::move(scale);
    return t;
  }
  static TailRule free(std::size_t rank, int start, std::vector<ExpPoly> torsion = {}) {
    TailRule t = make(TailKind::Free, start);
    t.free_rank = rank;
    t.polys = std::move(torsion);
    return t;
  }
  static TailRule unknown(int start, std::optional<Envelope> env = std::nullopt) {
    TailRule t = make(TailKind::Unknown, start);
    t.envelope = std::move(env);
    return t;
  }
};

inline BigInt factorial(const BigInt &n) {
  BigInt v = 1;
  for (BigInt k = 2; k <= n; ++k) v *= k;
  return v;
}

class FormalComplex {
public:
  FormalComplex() : tail_(TailRule::zero(0)) {}
  /// prefix degrees must lie below tail.start (a zero tail starts right
  /// after the prefix); zero modules are dropped.
  FormalComplex(std::map<int, FgModule> prefix, TailRule tail) : tail_(std::move(tail)) {
    for (auto &[i, m] : prefix) {
      if (!m.ring.is_dvr()) fail(ErrorKind::RingMismatch, "formal complexes live over the DVR");
      if (tail_.kind != TailKind::Zero && i >= tail_.start)
        fail(ErrorKind::InvalidComplex, "prefix degree " + std::to_string(i) + " overlaps the tail");
      if (!m.is_zero()) prefix_[i] = m;
    }
    validate_tail();
    if (tail_.kind == TailKind::Zero) {
      tail_.start = prefix_.empty() ? 0 : prefix_.rbegin()->first + 1;
      tail_.offset = 0;
    }
  }

  const std::map<int, FgModule> &prefix() const { return prefix_; }
  const TailRule &tail() const { return tail_; }

  /// Lowest degree that can be nonzero.
  int lo() const { return prefix_.empty() ? tail_.start : prefix_.begin()->first; }
  bool is_zero() const { return prefix_.empty() && tail_.kind == TailKind::Zero; }

  /// H_i, or nullopt where the tail is unknown.
  std::optional<FgModule> module_at(int i) const {
    const Ring r = Ring::dvr();
    if (i < tail_.start) {
      auto it = prefix_.find(i);
      return it == prefix_.end() ? FgModule{r, 0, {}} : it->second;
    }
    const BigInt arg = i - tail_.offset;
    std::vector<Elem> gens;
    switch (tail_.kind) {
    case TailKind::Zero: return FgModule{r, 0, {}};
    case TailKind::Unknown: return std::nullopt;
    case TailKind::Factorial: return module_from_cyclics(r, 0, {tail_.scale * factorial(arg)});
    case TailKind::Poly:
    case TailKind::Free:
      for (auto &g : tail_.polys) gens.emplace_back(g.at(arg));
      return module_from_cyclics(r, tail_.kind == TailKind::Free ? tail_.free_rank : 0, gens);
    }
    return std::nullopt;
  }

  FgModule known_module_at(int i) const {
    auto m = module_at(i);
    if (!m) fail(ErrorKind::UnsupportedCombination, "degree " + std::to_string(i) + " lies in an unknown tail");
    return *m;
  }

  bool prefix_has_free() const {
    for (auto &[i, m] : prefix_)
      if (m.free_rank) return true;
    return false;
  }

  bool operator==(const FormalComplex &o) const { return render() == o.render(); }

  /// Canonical text form.
  std::string render() const {
    std::ostringstream out;
    out << "ring DVR\n";
    for (auto &[i, m] : prefix_) {
      out << "deg " << i << " torsion ";
      if (m.torsion.empty()) out << "-";
      for (std::size_t k = 0; k < m.torsion.size(); ++k)
        out << (k ? "," : "") << std::get<BigInt>(m.torsion[k]);
      out << " free " << m.free_rank << "\n";
    }
    auto polys = [&] {
      std::string s;
      for (std::size_t k = 0; k < tail_.polys.size(); ++k) s += (k ? ";" : "") + tail_.polys[k].str();
      return s;
    };
    auto from = [&] {
      return " from " + std::to_string(tail_.start) + (tail_.offset ? " shift " + std::to_string(tail_.offset) : "");
    };
    switch (tail_.kind) {
    case TailKind::Zero: out << "tail zero\n"; break;
    case TailKind::Poly: out << "tail poly " << polys() << from() << "\n"; break;
    case TailKind::Factorial: out << "tail factorial " << tail_.scale << from() << "\n"; break;
    case TailKind::Free:
      out << "tail free " << tail_.free_rank;
      if (!tail_.polys.empty()) out << " poly " << polys();
      out << from() << "\n";
      break;
    case TailKind::Unknown: out << "tail unknown from " << tail_.start << "\n"; break;
    }
    return out.str();
  }

private:
  void validate_tail() const {
    const auto &t = tail_;
    if (t.kind == TailKind::Zero || t.kind == TailKind::Unknown) return;
    if (t.start < t.offset)
      fail(ErrorKind::InvalidComplex, "tail rules are evaluated at nonnegative arguments only");
    if (t.kind == TailKind::Poly && t.polys.empty()) fail(ErrorKind::InvalidComplex, "poly tail without polynomials");
    if (t.kind == TailKind::Factorial && t.scale < 1) fail(ErrorKind::InvalidComplex, "factorial scale must be >= 1");
    if (t.kind == TailKind::Free && t.free_rank < 1) fail(ErrorKind::InvalidComplex, "free tail rank must be >= 1");
    // With nonnegative coefficients g is nondecreasing on naturals, so
    // g >= 1 at the first argument suffices.
    for (auto &g : t.polys)
      if (g.at(t.start - t.offset) < 1)
        fail(ErrorKind::InvalidComplex, "tail polynomial " + g.str() + " vanishes at degree " + std::to_string(t.start));
  }

  std::map<int, FgModule> prefix_;
  TailRule tail_;
};

// ---------------------------------------------------------------------------
// Parsing.

inline FormalComplex parse_formal(const std::string &text) {
  detail::LineReader in(text);
  Ring r = detail::read_ring_line(in);
  if (!r.is_dvr()) fail(ErrorKind::RingMismatch, "formal complexes are written over DVR");
  std::map<int, FgModule> prefix;
  std::optional<TailRule> tail;
  while (!in.done()) {
    auto w = detail::words(in.next());
    if (w.size() == 6 && w[0] == "deg" && w[2] == "torsion" && w[4] == "free") {
      int i = detail::parse_int(w[1]);
      if (prefix.count(i)) fail(ErrorKind::Parse, "repeated degree " + w[1]);
      std::vector<Elem> gens;
      if (w[3] != "-") {
        std::stringstream ss(w[3]);
        std::string item;
        while (std::getline(ss, item, ',')) {
          int a = detail::parse_int(item);
          if (a < 0) fail(ErrorKind::Parse, "negative torsion exponent");
          gens.emplace_back(BigInt(a));
        }
      }
      int f = detail::parse_int(w[5]);
      if (f < 0) fail(ErrorKind::Parse, "negative free rank");
      prefix[i] = module_from_cyclics(r, static_cast<std::size_t>(f), gens);
    } else if (!w.empty() && w[0] == "tail") {
      if (tail) fail(ErrorKind::Parse, "more than one tail line");
      if (w.size() < 2) fail(ErrorKind::Parse, "empty tail line");
      int start = 0, offset = 0;
      std::size_t end = w.size();
      if (w[1] != "zero") {
        std::size_t k = 2;
        while (k < w.size() && w[k] != "from") ++k;
        if (k + 1 >= w.size()) fail(ErrorKind::Parse, "tail needs 'from N'");
        start = detail::parse_int(w[k + 1]);
        if (k + 2 < w.size()) {
          if (w[k + 2] != "shift" || k + 4 != w.size()) fail(ErrorKind::Parse, "unexpected text after 'from N'");
          offset = detail::parse_int(w[k + 3]);
        }
        end = k;
      }
      auto join = [&](std::size_t a, std::size_t b) {
        std::string s;
        for (std::size_t k = a; k < b; ++k) s += w[k];
        return s;
      };
      auto polys = [&](const std::string &s) {
        std::vector<ExpPoly> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ';'))
          if (!item.empty()) out.push_back(ExpPoly::parse(item));
        return out;
      };
      TailRule t;
      if (w[1] == "zero" && w.size() == 2) t = TailRule::zero(0);
      else if (w[1] == "poly") t = TailRule::poly(polys(join(2, end)), start);
      else if (w[1] == "factorial" && end == 3) t = TailRule::factorial(BigInt(detail::parse_int(w[2])), start);
      else if (w[1] == "free" && end >= 3) {
        int rk = detail::parse_int(w[2]);
        if (rk < 1) fail(ErrorKind::Parse, "free tail rank must be >= 1");
        std::vector<ExpPoly> tors;
        if (end > 3) {
          if (w[3] != "poly") fail(ErrorKind::Parse, "expected 'poly' after the free rank");
          tors = polys(join(4, end));
        }
        t = TailRule::free(static_cast<std::size_t>(rk), start, tors);
      } else if (w[1] == "unknown" && end == 2) t = TailRule::unknown(start);
      else fail(ErrorKind::Parse, "bad tail line");
      t.offset = offset;
      tail = t;
    } else {
      fail(ErrorKind::Parse, "unexpected line: " + in.lines[in.pos - 1]);
    }
  }
  if (!tail) {
    tail = TailRule::zero(0);
  }
  if (tail->kind == TailKind::Zero) tail->start = prefix.empty() ? 0 : prefix.rbegin()->first + 1;
  return FormalComplex(prefix, *tail);
}

// ---------------------------------------------------------------------------
// Standard objects.

/// G_c: H_i = R/x^(i^(c-1)) for i >= 1, H_0 = 0.
inline FormalComplex g_complex(int c) {
  if (c < 1) fail(ErrorKind::Parse, "g_complex needs c >= 1");
  return FormalComplex({}, TailRule::poly({ExpPoly::monomial(static_cast<unsigned>(c - 1))}, 1));
}

/// E: H_i = R/x^(i!) for i >= 0.
inline FormalComplex factorial_complex(const BigInt &scale = 1) {
  return FormalComplex({}, TailRule::factorial(scale, 0));
}

/// A complex with the given homology in degrees [0, n) and zero elsewhere.
inline FormalComplex bounded_formal(const std::vector<FgModule> &h, int lo = 0) {
  std::map<int, FgModule> p;
  for (std::size_t k = 0; k < h.size(); ++k) p[lo + static_cast<int>(k)] = h[k];
  return FormalComplex(p, TailRule::zero(0));
}

/// The DVR module R/x^a (a = 0 gives 0).
inline FgModule dvr_cyclic(const BigInt &a) { return module_from_cyclics(Ring::dvr(), 0, {a}); }
inline FgModule dvr_free(std::size_t r) { return FgModule{Ring::dvr(), r, {}}; }

// ---------------------------------------------------------------------------
// Loewy data and L_c membership.

struct LoewyProfile {
  int lo = 0;
  std::vector<std::optional<LoewyLength>> values; // degrees lo, lo+1, ...; nullopt = unknown
  std::string tail_bound;
};

inline std::string describe_tail_bound(const FormalComplex &x) {
  const auto &t = x.tail();
  std::string from = " for i >= " + std::to_string(t.start);
  std::string arg = t.offset ? "(i-" + std::to_string(t.offset) + ")" : "i";
  switch (t.kind) {
  case TailKind::Zero: return "0" + from;
  case TailKind::Free: return "inf" + from;
  case TailKind::Factorial: return (t.scale == 1 ? "" : t.scale.str() + "*") + arg + "!" + from;
  case TailKind::Poly: {
    std::string s;
    for (std::size_t k = 0; k < t.polys.size(); ++k) s += (k ? ", " : "") + t.polys[k].str();
    return (t.polys.size() == 1 ? s : "max(" + s + ")") + (t.offset ? " at " + arg : "") + from;
  }
  case TailKind::Unknown:
    if (t.envelope) return "<= " + t.envelope->str() + from;
    return "unknown" + from;
  }
  return "unknown";
}

/// Loewy lengths of H_i on degrees [lo, window).
inline LoewyProfile loewy_profile(const FormalComplex &x, int window) {
  LoewyProfile p;
  p.lo = std::min(x.lo(), window);
  for (int i = p.lo; i < window; ++i) {
    auto m = x.module_at(i);
    p.values.push_back(m ? std::optional<LoewyLength>(loewy_length(*m)) : std::nullopt);
  }
  p.tail_bound = describe_tail_bound(x);
  return p;
}

struct MinimalC {
  enum class Kind { Some, NotFl, NoC, UnknownWindow };
  Kind kind = Kind::UnknownWindow;
  int c = 0;

  static MinimalC some(int c) { return {Kind::Some, c}; }
  bool operator==(const MinimalC &o) const { return kind == o.kind && (kind != Kind::Some || c == o.c); }
  std::string str() const {
    switch (kind) {
    case Kind::Some: return "Some(" + std::to_string(c) + ")";
    case Kind::NotFl: return "NotFl";
    case Kind::NoC: return "NoC";
    case Kind::UnknownWindow: return "UnknownWindow";
    }
    return "?";
  }
};

/// Least c with X in L_c.
inline MinimalC minimal_c(const FormalComplex &x) {
  using K = MinimalC::Kind;
  if (x.prefix_has_free() || x.tail().kind == TailKind::Free) return {K::NotFl, 0};
  switch (x.tail().kind) {
  case TailKind::Zero: return MinimalC::some(0);
  case TailKind::Poly: {
    int d = 0;
    for (auto &g : x.tail().polys) d = std::max(d, g.degree());
    return MinimalC::some(d + 1);
  }
  case TailKind::Factorial: return {K::NoC, 0};
  default: return {K::UnknownWindow, 0};
  }
}

enum class Membership { Yes, No, UnknownWindow };

inline std::string to_string(Membership m) {
  switch (m) {
  case Membership::Yes: return "Yes";
  case Membership::No: return "No";
  case Membership::UnknownWindow: return "UnknownWindow";
  }
  return "?";
}

/// Whether X lies in L_c.
inline Membership member_lc(const FormalComplex &x, int c) {
  if (c < 0) fail(ErrorKind::Parse, "c must be >= 0");
  auto m = minimal_c(x);
  switch (m.kind) {
  case MinimalC::Kind::Some: return m.c <= c ? Membership::Yes : Membership::No;
  case MinimalC::Kind::NotFl:
  case MinimalC::Kind::NoC: return Membership::No;
  case MinimalC::Kind::UnknownWindow: break;
  }
  // An envelope is an upper bound, so it can only certify membership.
  const auto &env = x.tail().envelope;
  if (env && c >= 1 && env->degree() <= c - 1) return Membership::Yes;
  return Membership::UnknownWindow;
}

// ---------------------------------------------------------------------------
// Constructions.

inline FormalComplex shift(const FormalComplex &x, int n) {
  std::map<int, FgModule> p;
  for (auto &[i, m] : x.prefix()) p[i + n] = m;
  TailRule t = x.tail();
  t.start += n;
  t.offset += n;
  if (t.envelope) {
    t.envelope->sx -= n;
    t.envelope->sy -= n;
  }
  return FormalComplex(p, t);
}

/// X ⊕ Y; the tail is exact when the two rules combine into one rule and
/// Unknown otherwise.
inline FormalComplex direct_sum(const FormalComplex &x, const FormalComplex &y) {
  const auto &tx = x.tail();
  const auto &ty = y.tail();
  const int start = std::max(tx.start, ty.start);
  std::map<int, FgModule> p;
  for (int i = std::min(x.lo(), y.lo()); i < start; ++i) {
    auto a = x.module_at(i), b = y.module_at(i);
    if (!a || !b) return FormalComplex(p, TailRule::unknown(i));
    p[i] = direct_sum(*a, *b);
  }
  auto combined = [&]() -> std::optional<TailRule> {
    if (tx.kind == TailKind::Unknown || ty.kind == TailKind::Unknown) return std::nullopt;
    if (tx.kind == TailKind::Zero) {
      TailRule t = ty;
      t.start = start;
      return t;
    }
    if (ty.kind == TailKind::Zero) {
      TailRule t = tx;
      t.start = start;
      return t;
    }
    if (tx.kind == TailKind::Factorial || ty.kind == TailKind::Factorial) return std::nullopt;
    if (tx.offset != ty.offset) return std::nullopt;
    TailRule t = tx;
    t.start = start;
    t.polys.insert(t.polys.end(), ty.polys.begin(), ty.polys.end());
    if (ty.kind == TailKind::Free) {
      t.kind = TailKind::Free;
      t.free_rank += ty.free_rank;
    }
    return t;
  }();
  if (!combined) return FormalComplex(p, TailRule::unknown(start));
  return FormalComplex(p, *combined);
}

namespace detail {

inline BigInt prefix_loewy_max(const FormalComplex &x) {
  BigInt u = 0;
  for (auto &[i, m] : x.prefix()) u = std::max(u, loewy_length(m).value);
  return u;
}

inline bool single_poly_tail(const FormalComplex &x) {
  return x.tail().kind == TailKind::Poly && x.tail().polys.size() == 1 && !x.prefix_has_free();
}

} // namespace detail

/// Künneth homology of X ⊗ Y in one degree, or nullopt if an input degree
/// it depends on is unknown.
inline std::optional<FgModule> kunneth_degree(const FormalComplex &x, const FormalComplex &y, int n) {
  const Ring r = Ring::dvr();
  FgModule h{r, 0, {}};
  if (x.is_zero() || y.is_zero()) return h;
  for (int i = x.lo(); i <= n - y.lo(); ++i) {
    auto a = x.module_at(i), b = y.module_at(n - i);
    if (!a || !b) return std::nullopt;
    h = direct_sum(h, tensor_mod(*a, *b));
  }
  for (int i = x.lo(); i <= n - 1 - y.lo(); ++i) {
    auto a = x.module_at(i), b = y.module_at(n - 1 - i);
    if (!a || !b) return std::nullopt;
    h = direct_sum(h, tor1(*a, *b));
  }
  return h;
}

/// X ⊗ Y with exact homology on degrees below window.
inline FormalComplex tensor_formal(const FormalComplex &x, const FormalComplex &y, int window) {
  if (x.is_zero() || y.is_zero()) return FormalComplex();
  const int lo = x.lo() + y.lo();
  std::map<int, FgModule> p;
  int n = lo;
  for (; n < window; ++n) {
    auto h = kunneth_degree(x, y, n);
    if (!h) break;
    p[n] = *h;
  }
  // Both bounded and the window past the top degree: the result is exact.
  if (x.tail().kind == TailKind::Zero && y.tail().kind == TailKind::Zero && n == window &&
      window >= x.tail().start + y.tail().start)
    return FormalComplex(p, TailRule::zero(0));
  std::optional<Envelope> env;
  if (detail::single_poly_tail(x) && detail::single_poly_tail(y)) {
    Envelope e;
    e.ux = detail::prefix_loewy_max(x);
    e.uy = detail::prefix_loewy_max(y);
    e.g = x.tail().polys[0];
    e.h = y.tail().polys[0];
    e.gx_start = x.tail().start;
    e.gy_start = y.tail().start;
    e.gx_offset = x.tail().offset;
    e.gy_offset = y.tail().offset;
    // H_n involves X_i with i <= n - lo(Y) and Y_j with j <= n - lo(X).
    e.sx = -y.lo();
    e.sy = -x.lo();
    env = e;
  }
  return FormalComplex(p, TailRule::unknown(std::max(n, lo), env));
}

// ---------------------------------------------------------------------------
// Bridges to complexes over Z and F_p[t].

/// Localization of a module over Z or F_p[t] at the maximal ideal (p),
/// written as a module over the DVR (the completed local ring).
inline FgModule localize_to_dvr(const FgModule &m, const PrimeIdeal &p) {
  if (!m.ring.is_pid_domain() || !p.is_maximal())
    fail(ErrorKind::UnsupportedRing, "localization to a DVR needs Z or GF(p)[t] and a maximal ideal");
  std::vector<Elem> gens;
  for (auto &d : m.torsion) gens.emplace_back(BigInt(detail::valuation(m.ring, p.generator, d)));
  return module_from_cyclics(Ring::dvr(), m.free_rank, gens);
}

/// A free complex over Z (or F_p[t]) whose homology localized at (p) is X on
/// degrees below window: R/x^a becomes (P --p^a--> P) and R becomes P.
inline FreeComplex realize_formal(const FormalComplex &x, const Ring &r, const PrimeIdeal &p, int window) {
  if (!r.is_pid_domain() || !is_prime_of(r, p) || !p.is_maximal())
    fail(ErrorKind::UnsupportedRing, "realization needs Z or GF(p)[t] and a maximal ideal");
  FreeComplex out = FreeComplex::zero(r);
  for (int i = std::min(x.lo(), window); i < window; ++i) {
    auto m = x.known_module_at(i);
    if (m.free_rank) out = direct_sum(out, FreeComplex::free_module(r, m.free_rank, i));
    for (auto &a : m.torsion) {
      Elem g = visit_cover(r, [&](const auto &pid, const auto &) {
        auto v = pid.one();
        auto q = to_ctx(pid, p.generator);
        for (BigInt k = 0; k < std::get<BigInt>(a); ++k) v = pid.mul(v, q);
        return from_ctx(pid, v);
      });
      out = direct_sum(out, FreeComplex::two_term(r, g, i));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Identity checks on windows.

/// Whether a is a direct summand of b (DVR modules; Krull-Schmidt).
inline bool is_summand(const FgModule &a, const FgModule &b) {
  if (a.free_rank > b.free_rank) return false;
  std::multiset<BigInt> pool;
  for (auto &e : b.torsion) pool.insert(std::get<BigInt>(e));
  for (auto &e : a.torsion) {
    auto it = pool.find(std::get<BigInt>(e));
    if (it == pool.end()) return false;
    pool.erase(it);
  }
  return true;
}

/// Whether 0 -> R/x^a --x^k--> R/x^b -> R/x^c -> 0 is exact.
inline bool cyclic_ses_exact(const BigInt &a, const BigInt &k, const BigInt &b, const BigInt &c) {
  return a + k == b && std::min(k, b) == c;
}

struct IdentityParams {
  std::optional<FormalComplex> x;
  std::optional<ExpPoly> a, b;
  std::vector<int> multipliers{2, 3};
};

struct IdentityReport {
  std::string name;
  int window = 0;
  bool pass = true;
  std::vector<std::string> evidence;
  std::vector<std::string> failures;

  void check(bool ok, const std::string &what) {
    (ok ? evidence : failures).push_back(what);
    pass = pass && ok;
  }
};

inline const std::vector<std::string> &identity_names() {
  static const std::vector<std::string> names{"prop7.1", "prop7.2", "cor7.3", "ex7.5",
                                              "lemma7.20", "ex7.21", "thm6.6witness"};
  return names;
}

namespace detail {

inline FgModule power_sum(const FgModule &m, const BigInt &k) {
  FgModule out{Ring::dvr(), 0, {}};
  for (BigInt t = 0; t < k; ++t) out = direct_sum(out, m);
  return out;
}

inline FormalComplex from_degrees(const std::function<FgModule(int)> &f, int lo, int window) {
  std::map<int, FgModule> p;
  for (int i = lo; i < window; ++i) p[i] = f(i);
  return FormalComplex(p, TailRule::zero(0));
}

inline void require_nonneg(const FormalComplex &x) {
  if (x.lo() < 0) fail(ErrorKind::UnsupportedCombination, "identity expects a complex concentrated in degrees >= 0");
}

/// F_a = ⊕ R^{a_j}[j] truncated below window.
inline FormalComplex free_weights(const ExpPoly &a, int window) {
  return from_degrees([&](int j) { return dvr_free(static_cast<std::size_t>(a.at(j))); }, 0, window);
}

inline std::string show(int n, const FgModule &lhs, const std::string &rel, const FgModule &rhs) {
  return "n=" + std::to_string(n) + ": " + lhs.str() + " " + rel + " " + rhs.str();
}

inline void summand_of_tensor(IdentityReport &rep, const FormalComplex &part, const FormalComplex &x,
                              const ExpPoly &a, int window, int shift_by, const std::string &label) {
  auto t = tensor_formal(x, free_weights(a, window), window);
  for (int n = 0; n < window; ++n) {
    auto lhs = part.known_module_at(n);
    auto rhs = t.module_at(n - shift_by);
    if (!rhs) break;
    rep.check(is_summand(lhs, *rhs), label + " " + show(n, lhs, "summand of", *rhs));
  }
}

} // namespace detail

/// Degreewise check of a named identity on degrees below window.
inline IdentityReport verify_identity(const std::string &name, const IdentityParams &params, int window) {
  if (window < 4) fail(ErrorKind::Parse, "window must be >= 4");
  IdentityReport rep{name};
  rep.window = window;
  const Ring dvr = Ring::dvr();
  auto cyc = [](const BigInt &a) { return dvr_cyclic(a); };

  if (name == "prop7.1") {
    // X ⊗ (⊕_j R[j]) has H_n = ⊕_{j<=n} X_j, and X is a summand of it.
    FormalComplex x = params.x.value_or(g_complex(1));
    detail::require_nonneg(x);
    FormalComplex f({}, TailRule::free(1, 0));
    auto t = tensor_formal(x, f, window);
    for (int n = 0; n < window; ++n) {
      FgModule y{dvr, 0, {}};
      for (int j = 0; j <= n; ++j) y = direct_sum(y, x.known_module_at(j));
      auto h = t.known_module_at(n);
      rep.check(h == y, detail::show(n, h, "==", y));
      rep.check(is_summand(x.known_module_at(n), y), detail::show(n, x.known_module_at(n), "summand of", y));
    }
  } else if (name == "prop7.2") {
    // ⊕ X_i^{a_i}[2i] is a summand of X ⊗ (⊕ R^{a_j}[j]).
    FormalComplex x = params.x.value_or(g_complex(2));
    detail::require_nonneg(x);
    ExpPoly a = params.a.value_or(ExpPoly::parse("i+1"));
    auto part = detail::from_degrees(
        [&](int n) { return n % 2 ? FgModule{dvr, 0, {}} : detail::power_sum(x.known_module_at(n / 2), a.at(n / 2)); },
        0, window);
    detail::summand_of_tensor(rep, part, x, a, window, 0, "X^a[2i]");
  } else if (name == "cor7.3") {
    // Y = ⊕ X_i^{a_i}[i] splits as A (even) ⊕ B (odd), with A a summand of
    // X_even ⊗ F_{a_even} and B a summand of (X_odd ⊗ F_{a_odd})[1].
    FormalComplex x = params.x.value_or(g_complex(2));
    detail::require_nonneg(x);
    ExpPoly a = params.a.value_or(ExpPoly::parse("i+1"));
    auto y = [&](int i) { return detail::power_sum(x.known_module_at(i), a.at(i)); };
    auto even = [&](int i) { return i % 2 ? FgModule{dvr, 0, {}} : y(i); };
    auto odd = [&](int i) { return i % 2 ? y(i) : FgModule{dvr, 0, {}}; };
    for (int n = 0; n < window; ++n)
      rep.check(direct_sum(even(n), odd(n)) == y(n), detail::show(n, y(n), "==", direct_sum(even(n), odd(n))));
    auto x_even = detail::from_degrees([&](int i) { return x.known_module_at(2 * i); }, 0, window);
    auto x_odd = detail::from_degrees([&](int i) { return x.known_module_at(2 * i + 1); }, 0, window);
    // In terms of X_even, A = ⊕ X_even_i^{a_{2i}}[2i] and B[-1] = ⊕ X_odd_i^{a_{2i+1}}[2i].
    auto weights_even = detail::from_degrees(
        [&](int j) { return dvr_free(static_cast<std::size_t>(a.at(2 * j))); }, 0, window);
    auto weights_odd = detail::from_degrees(
        [&](int j) { return dvr_free(static_cast<std::size_t>(a.at(2 * j + 1))); }, 0, window);
    auto te = tensor_formal(x_even, weights_even, window);
    auto to = tensor_formal(x_odd, weights_odd, window);
    for (int n = 0; n < window; ++n) {
      auto lhs = even(n);
      auto rhs = te.known_module_at(n);
      rep.check(is_summand(lhs, rhs), "A " + detail::show(n, lhs, "summand of", rhs));
      auto lb = odd(n);
      auto rb = to.known_module_at(n - 1);
      rep.check(is_summand(lb, rb), "B " + detail::show(n, lb, "summand of", rb));
    }
  } else if (name == "ex7.5") {
    // A_i = R/x^{i+1}; B_{2i} = R/x^{i+1}; C = ker(A -> B) with
    // C_{2n} = R/x^n, C_{2n-1} = R/x^{2n}; C = B[2] ⊕ D and 0 -> B[1] -> D -> B[1] -> 0.
    auto A = [&](int i) { return BigInt(i + 1); };
    auto B = [&](int i) { return i % 2 ? BigInt(0) : BigInt(i / 2 + 1); };
    auto C = [&](int i) { return i % 2 ? BigInt(i + 1) : BigInt(i / 2); };
    auto D = [&](int i) { return i % 2 ? BigInt(i + 1) : BigInt(0); };
    auto B1 = [&](int i) { return i >= 1 ? B(i - 1) : BigInt(0); };
    auto B2 = [&](int i) { return i >= 2 ? B(i - 2) : BigInt(0); };
    for (int i = 0; i < window; ++i) {
      if (i % 2 == 0) {
        const int n = i / 2;
        rep.check(cyclic_ses_exact(C(i), BigInt(n + 1), A(i), B(i)),
                  "n=" + std::to_string(i) + ": 0 -> R/x^" + C(i).str() + " -x^" + std::to_string(n + 1) +
                      "-> R/x^" + A(i).str() + " -> R/x^" + B(i).str() + " -> 0");
      } else {
        rep.check(C(i) == A(i) && B(i) == 0, "n=" + std::to_string(i) + ": C_n = A_n = R/x^" + A(i).str() + ", B_n = 0");
      }
      auto c = cyc(C(i));
      auto sum = direct_sum(cyc(B2(i)), cyc(D(i)));
      rep.check(c == sum, detail::show(i, c, "== B[2] + D:", sum));
      if (i % 2) {
        rep.check(cyclic_ses_exact(B1(i), B1(i), D(i), B1(i)),
                  "n=" + std::to_string(i) + ": 0 -> R/x^" + B1(i).str() + " -> R/x^" + D(i).str() + " -> R/x^" +
                      B1(i).str() + " -> 0");
      } else {
        rep.check(D(i) == 0 && B1(i) == 0, "n=" + std::to_string(i) + ": D_n = B[1]_n = 0");
      }
    }
  } else if (name == "lemma7.20") {
    ExpPoly a = params.a.value_or(ExpPoly::parse("i"));
    ExpPoly b = params.b.value_or(ExpPoly::parse("i^2"));
    for (int i = 0; i < window; ++i) {
      BigInt ai = a.at(i), bi = b.at(i);
      rep.check(cyclic_ses_exact(ai, bi, ai + bi, bi),
                "n=" + std::to_string(i) + ": 0 -> R/x^" + ai.str() + " -x^" + bi.str() + "-> R/x^" +
                    (ai + bi).str() + " -> R/x^" + bi.str() + " -> 0");
      for (int c : params.multipliers) {
        if (c < 1) continue;
        BigInt lower = (c - 1) * ai;
        rep.check(cyclic_ses_exact(lower, ai, c * ai, ai),
                  "n=" + std::to_string(i) + ", c=" + std::to_string(c) + ": 0 -> R/x^" + lower.str() + " -> R/x^" +
                      (c * ai).str() + " -> R/x^" + ai.str() + " -> 0");
      }
    }
  } else if (name == "ex7.21") {
    auto X = [](int a, int b, int c) {
      return [=](int i) { return i < 0 ? BigInt(0) : BigInt(a * i * i + b * i + c); };
    };
    auto x100 = X(1, 0, 0), x021 = X(0, 2, 1), x022 = X(0, 2, 2), x001 = X(0, 0, 1), x010 = X(0, 1, 0);
    for (int i = 0; i < window; ++i) {
      rep.check(cyclic_ses_exact(x100(i), BigInt(2 * i + 1), x100(i + 1), x021(i)),
                "n=" + std::to_string(i) + ": 0 -> X(1,0,0) -> X(1,0,0)[-1] -> X(0,2,1) -> 0");
      rep.check(cyclic_ses_exact(x021(i), BigInt(1), x022(i), x001(i)),
                "n=" + std::to_string(i) + ": 0 -> X(0,2,1) -> X(0,2,2) -> X(0,0,1) -> 0");
      rep.check(x010(2 * i) == (i >= 1 ? x022(i - 1) : BigInt(0)),
                "n=" + std::to_string(i) + ": X(0,1,0)_even = X(0,2,2)[1]");
      rep.check(x010(2 * i + 1) == x021(i), "n=" + std::to_string(i) + ": X(0,1,0)_odd = X(0,2,1)");
    }
    FormalComplex k = bounded_formal({cyc(1)});
    auto t = tensor_formal(k, FormalComplex({}, TailRule::free(1, 0)), window);
    for (int n = 0; n < window; ++n)
      rep.check(t.known_module_at(n) == cyc(x001(n)), detail::show(n, t.known_module_at(n), "== X(0,0,1):", cyc(x001(n))));
    rep.check(is_summand(cyc(1), cyc(x100(1))), "(R/x)[1] summand of X(1,0,0)");
  } else if (name == "thm6.6witness") {
    // C = ⊕ K(2^{i+1})[i] over Z: H_i(C) localized at (2) is R/x^{i+1},
    // supported at the closed point, with strictly decreasing annihilators.
    const Ring z = Ring::integers();
    const PrimeIdeal two = PrimeIdeal::max(BigInt(2));
    FreeComplex c = FreeComplex::zero(z);
    for (int i = 0; i < window; ++i)
      c = direct_sum(c, shift(koszul(z, {BigInt(BigInt(1) << (i + 1))}), i));
    auto h = homology(c);
    BigInt prev_exp = 0;
    for (int i = 0; i < window; ++i) {
      auto local = localize_to_dvr(h.at(i), two);
      rep.check(local == cyc(BigInt(i + 1)), detail::show(i, local, "==", cyc(BigInt(i + 1))));
      auto s = supp_module(h.at(i));
      rep.check(s == SpclSet::fin_max(z, {two}), "n=" + std::to_string(i) + ": Supp H_n = " + s.str() + " in {(2)}");
      auto ann = ann_module(h.at(i));
      BigInt e = detail::valuation(z, two.generator, ann.generator);
      rep.check(e > prev_exp, "n=" + std::to_string(i) + ": Ann H_n = " + render(z, ann) + " strictly smaller");
      prev_exp = e;
    }
  } else {
    fail(ErrorKind::UnknownIdentity, "unknown identity '" + name + "'");
  }
  return rep;
}

} // namespace ttideal
