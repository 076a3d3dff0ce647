#pragma once

// Thick tensor ideals of D^-(R) as named descriptors with membership
// oracles: zero, whole, compact <W> (V(Ann X) ⊆ W), tame Supp^-1(W),
// S(p) (X_p = 0), the Loewy classes L_c over the DVR, and ideals generated
// by bounded free complexes. Also the closure operators, the compact
// lattice, the full classification over artinian rings and the fiber of
// the comparison map over the DVR.

#include "ttideal/corpus.hpp"
#include "ttideal/formal.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace ttideal {

struct IdealDescriptor {
  enum class Kind { Zero, Whole, Compact, Tame, Sp, Lc, GenBounded };

  Ring ring;
  Kind kind = Kind::Zero;
  std::optional<SpclSet> set;     // Compact, Tame
  PrimeIdeal prime;               // Sp
  int c = 0;                      // Lc
  std::vector<FreeComplex> gens;  // GenBounded

  static IdealDescriptor zero(const Ring &r) { return {r, Kind::Zero}; }
  static IdealDescriptor whole(const Ring &r) { return {r, Kind::Whole}; }
  static IdealDescriptor compact(SpclSet w) {
    Ring r = w.ring();
    return {r, Kind::Compact, std::move(w)};
  }
  static IdealDescriptor tame(SpclSet w) {
    Ring r = w.ring();
    return {r, Kind::Tame, std::move(w)};
  }
  static IdealDescriptor sp(const Ring &r, PrimeIdeal p) {
    if (!is_prime_of(r, p)) fail(ErrorKind::Parse, p.str() + " is not a prime of " + r.str());
    IdealDescriptor d{r, Kind::Sp};
    d.prime = std::move(p);
    return d;
  }
  static IdealDescriptor lc(int c) {
    if (c < 1) fail(ErrorKind::Parse, "L_c needs c >= 1");
    IdealDescriptor d{Ring::dvr(), Kind::Lc};
    d.c = c;
    return d;
  }
  static IdealDescriptor generated(const Ring &r, std::vector<FreeComplex> gs) {
    for (auto &g : gs)
      if (g.ring() != r) fail(ErrorKind::RingMismatch, "generator over " + g.ring().str());
    IdealDescriptor d{r, Kind::GenBounded};
    d.gens = std::move(gs);
    return d;
  }

  std::string str() const {
    switch (kind) {
    case Kind::Zero: return "zero";
    case Kind::Whole: return "whole";
    case Kind::Compact: return "compact" + set_body();
    case Kind::Tame: return "tame" + set_body();
    case Kind::Sp: return "S" + prime.str();
    case Kind::Lc: return "L" + std::to_string(c);
    case Kind::GenBounded: return "gen[" + std::to_string(gens.size()) + " complexes]";
    }
    return "?";
  }

  bool operator==(const IdealDescriptor &o) const {
    if (ring != o.ring || kind != o.kind) return false;
    switch (kind) {
    case Kind::Compact:
    case Kind::Tame: return *set == *o.set;
    case Kind::Sp: return prime == o.prime;
    case Kind::Lc: return c == o.c;
    case Kind::GenBounded: return gens == o.gens;
    default: return true;
    }
  }
  bool operator!=(const IdealDescriptor &o) const { return !(*this == o); }

private:
  /// `{(2),(3)}` for finite sets, `{all}` / `{cofinmax{...}}` otherwise.
  std::string set_body() const {
    std::string s = set->str();
    return s.front() == '{' ? s : "{" + s + "}";
  }
};

/// Support of the ideal, i.e. the union of the supports of its members.
inline SpclSet supp_descriptor(const IdealDescriptor &d) {
  using K = IdealDescriptor::Kind;
  switch (d.kind) {
  case K::Zero: return SpclSet::empty(d.ring);
  case K::Whole: return SpclSet::all(d.ring);
  case K::Compact:
  case K::Tame: return *d.set;
  case K::Sp: return supp_of_Sp(d.ring, d.prime);
  case K::Lc: return SpclSet::fin_max(d.ring, {PrimeIdeal::dvr_max()});
  case K::GenBounded: {
    SpclSet s = SpclSet::empty(d.ring);
    for (auto &g : d.gens) s = s.unite(supp_complex(g));
    return s;
  }
  }
  return SpclSet::empty(d.ring);
}

/// Normal form under the identifications compact(∅) = tame(∅) = zero,
/// compact(all) = tame(all) = whole, S(p) = tame(Supp S(p)),
/// gen[gs] = compact(⋃ Supp gs), L1 = compact{(x)}, and tame = compact over
/// artinian rings (every thick tensor ideal there is compact).
inline IdealDescriptor normalize(const IdealDescriptor &d) {
  using K = IdealDescriptor::Kind;
  switch (d.kind) {
  case K::Zero:
  case K::Whole: return d;
  case K::Sp: return normalize(IdealDescriptor::tame(supp_descriptor(d)));
  case K::GenBounded: return normalize(IdealDescriptor::compact(supp_descriptor(d)));
  case K::Lc: return d.c == 1 ? IdealDescriptor::compact(supp_descriptor(d)) : d;
  case K::Compact:
  case K::Tame: {
    SpclSet w = *d.set;
    if (w.kind() == SpclSet::Kind::Empty) return IdealDescriptor::zero(d.ring);
    if (w.kind() == SpclSet::Kind::AllSpec) return IdealDescriptor::whole(d.ring);
    if (d.kind == K::Tame && !d.ring.is_artinian()) return IdealDescriptor::tame(w);
    return IdealDescriptor::compact(w);
  }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Membership.

enum class Answer { Yes, No, Unknown };

inline std::string to_string(Answer a) {
  switch (a) {
  case Answer::Yes: return "Yes";
  case Answer::No: return "No";
  case Answer::Unknown: return "Unknown";
  }
  return "?";
}

struct MembershipAnswer {
  Answer answer = Answer::Unknown;
  std::string reason;   // for Unknown
  std::string evidence; // the computed set and the target, for Yes/No
};

namespace detail {

inline MembershipAnswer contained(const SpclSet &got, const SpclSet &target, const std::string &what) {
  bool ok = got.subseteq(target);
  return {ok ? Answer::Yes : Answer::No, "", what + " = " + got.str() + (ok ? " ⊆ " : " ⊄ ") + target.str()};
}

inline MembershipAnswer from_membership(Membership m, const std::string &evidence) {
  if (m == Membership::Yes) return {Answer::Yes, "", evidence};
  if (m == Membership::No) return {Answer::No, "", evidence};
  return {Answer::Unknown, "the Loewy growth of the tail is not determined beyond the window", evidence};
}

/// Supp of a formal complex, or nullopt when an unknown tail hides it.
inline std::optional<SpclSet> formal_support(const FormalComplex &x) {
  const Ring r = Ring::dvr();
  if (x.prefix_has_free() || x.tail().kind == TailKind::Free) return SpclSet::all(r);
  if (x.tail().kind == TailKind::Unknown && !x.tail().envelope) return std::nullopt;
  if (x.is_zero()) return SpclSet::empty(r);
  return SpclSet::fin_max(r, {PrimeIdeal::dvr_max()});
}

} // namespace detail

/// X ∈ d for a bounded free complex X.
inline MembershipAnswer member(const IdealDescriptor &d, const FreeComplex &x) {
  using K = IdealDescriptor::Kind;
  if (d.ring != x.ring()) fail(ErrorKind::RingMismatch, "descriptor over " + d.ring.str() + ", complex over " + x.ring().str());
  switch (d.kind) {
  case K::Whole: return {Answer::Yes, "", "every object lies in the whole category"};
  case K::Zero: return detail::contained(supp_complex(x), SpclSet::empty(d.ring), "Supp X");
  case K::Tame: return detail::contained(supp_complex(x), *d.set, "Supp X");
  case K::Compact: return detail::contained(v_of(d.ring, ann_complex(x)), *d.set, "V(Ann X)");
  case K::GenBounded:
    return detail::contained(v_of(d.ring, ann_complex(x)), supp_descriptor(d), "V(Ann X)");
  case K::Sp: {
    bool v = vanishes_at(x, d.prime);
    return {v ? Answer::Yes : Answer::No, "",
            "X localized at " + d.prime.str() + (v ? " is acyclic" : " is not acyclic")};
  }
  case K::Lc: break;
  }
  fail(ErrorKind::UnsupportedCombination, "L_c lives over the DVR");
}

/// X ∈ d for a formal complex over the DVR.
inline MembershipAnswer member(const IdealDescriptor &d, const FormalComplex &x) {
  using K = IdealDescriptor::Kind;
  if (!d.ring.is_dvr()) fail(ErrorKind::RingMismatch, "formal complexes live over the DVR, descriptor over " + d.ring.str());
  auto tame_check = [&](const SpclSet &w) -> MembershipAnswer {
    auto s = detail::formal_support(x);
    if (!s) {
      if (w.kind() == SpclSet::Kind::AllSpec) return {Answer::Yes, "", "every support lies in Spec R"};
      return {Answer::Unknown, "the support of the unknown tail is not determined", ""};
    }
    return detail::contained(*s, w, "Supp X");
  };
  switch (d.kind) {
  case K::Whole: return {Answer::Yes, "", "every object lies in the whole category"};
  case K::Zero: return tame_check(SpclSet::empty(d.ring));
  case K::Tame: return tame_check(*d.set);
  case K::Sp: return tame_check(supp_of_Sp(d.ring, d.prime));
  case K::Compact: {
    // Compact ideals over the DVR: zero, L1 = compact{(x)}, whole.
    SpclSet w = *d.set;
    if (w.kind() == SpclSet::Kind::Empty) return tame_check(w);
    if (w.kind() == SpclSet::Kind::AllSpec) return {Answer::Yes, "", "every object lies in the whole category"};
    auto m = member_lc(x, 1);
    return detail::from_membership(m, "L1 membership: minimal c = " + minimal_c(x).str());
  }
  case K::Lc: {
    auto m = member_lc(x, d.c);
    return detail::from_membership(m, "minimal c = " + minimal_c(x).str() + ", target c = " + std::to_string(d.c));
  }
  case K::GenBounded: break;
  }
  fail(ErrorKind::UnsupportedCombination, "bounded free generators do not exist over the DVR");
}

// ---------------------------------------------------------------------------
// Closures and the compact lattice.

inline IdealDescriptor tame_closure(const IdealDescriptor &d) {
  return normalize(IdealDescriptor::tame(supp_descriptor(d)));
}

inline IdealDescriptor cpt_interior(const IdealDescriptor &d) {
  return normalize(IdealDescriptor::compact(supp_descriptor(d)));
}

struct RadicalAnswer {
  std::optional<IdealDescriptor> radical; // nullopt = not determined
  std::string reason;
};

/// The radical closure where it is determined.
inline RadicalAnswer rad_closure(const IdealDescriptor &d) {
  using K = IdealDescriptor::Kind;
  IdealDescriptor n = normalize(d);
  if (n.ring.is_artinian()) return {n, "every thick tensor ideal over an artinian ring is compact, tame and radical"};
  switch (n.kind) {
  case K::Zero:
  case K::Whole: return {n, "zero and whole are radical"};
  case K::Tame:
  case K::Sp: return {n, "tame ideals are radical"};
  case K::Lc: return {n, "L_c is prime, hence radical"};
  case K::Compact:
    if (n.ring.is_dvr()) return {n, "the compact ideals over the DVR are zero, L1 and whole, each prime or whole"};
    return {std::nullopt, "the radical of <W> lies strictly between <W> and Supp^-1 W and is not identified"};
  case K::GenBounded: break;
  }
  return {std::nullopt, "not determined"};
}

namespace detail {

inline SpclSet compact_set(const IdealDescriptor &d) {
  using K = IdealDescriptor::Kind;
  IdealDescriptor n = normalize(d);
  if (n.kind == K::Zero) return SpclSet::empty(n.ring);
  if (n.kind == K::Whole) return SpclSet::all(n.ring);
  if (n.kind == K::Compact) return *n.set;
  fail(ErrorKind::NotCompactDescriptor, d.str() + " is not compact");
}

} // namespace detail

/// <A> ∧ <B> = <A ∩ B>.
inline IdealDescriptor meet(const IdealDescriptor &a, const IdealDescriptor &b) {
  if (a.ring != b.ring) fail(ErrorKind::RingMismatch, "descriptors over different rings");
  return normalize(IdealDescriptor::compact(detail::compact_set(a).intersect(detail::compact_set(b))));
}

/// <A> ∨ <B> = <A ∪ B>.
inline IdealDescriptor join(const IdealDescriptor &a, const IdealDescriptor &b) {
  if (a.ring != b.ring) fail(ErrorKind::RingMismatch, "descriptors over different rings");
  return normalize(IdealDescriptor::compact(detail::compact_set(a).unite(detail::compact_set(b))));
}

// ---------------------------------------------------------------------------
// Parsing.

inline FreeComplex load_complex_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_complex(ss.str());
}

/// `zero | whole | compact{...} | tame{...} | S(<prime>) | L<c> | gen[<file>,...]`.
inline IdealDescriptor parse_descriptor(const Ring &r, std::string_view text,
                                        const std::function<FreeComplex(const std::string &)> &load = load_complex_file) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto inner_set = [&](std::size_t prefix_len) {
    if (s.size() < prefix_len + 2 || s[prefix_len] != '{' || s.back() != '}')
      fail(ErrorKind::Parse, "bad descriptor: " + std::string(text));
    std::string body = s.substr(prefix_len + 1, s.size() - prefix_len - 2);
    if (body == "all" || body.rfind("cofinmax", 0) == 0 || (!body.empty() && body.front() == '{'))
      return parse_spcl(r, body);
    return parse_spcl(r, "{" + body + "}");
  };
  if (s == "zero") return IdealDescriptor::zero(r);
  if (s == "whole") return IdealDescriptor::whole(r);
  if (s.rfind("compact", 0) == 0) return IdealDescriptor::compact(inner_set(7));
  if (s.rfind("tame", 0) == 0) return IdealDescriptor::tame(inner_set(4));
  if (s.rfind("S((", 0) == 0 && s.back() == ')') return IdealDescriptor::sp(r, parse_prime(r, s.substr(2, s.size() - 3)));
  if (s.rfind("S(", 0) == 0) return IdealDescriptor::sp(r, parse_prime(r, s.substr(1)));
  if (s.size() >= 2 && s[0] == 'L') {
    if (!r.is_dvr()) fail(ErrorKind::UnsupportedCombination, "L_c is defined over the DVR only");
    return IdealDescriptor::lc(detail::parse_int(s.substr(1)));
  }
  if (s.rfind("gen[", 0) == 0 && s.back() == ']') {
    std::vector<FreeComplex> gs;
    std::stringstream ss(s.substr(4, s.size() - 5));
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) gs.push_back(load(item));
    return IdealDescriptor::generated(r, gs);
  }
  fail(ErrorKind::Parse, "bad descriptor: " + std::string(text));
}

// ---------------------------------------------------------------------------
// Artinian classification.

/// All monic/positive divisors of the modulus of an artinian ring.
inline std::vector<Elem> divisors_of_modulus(const Ring &r) {
  if (!r.is_artinian()) fail(ErrorKind::NotArtinian, r.str() + " is not artinian");
  std::vector<Elem> out{r.integer_kind() ? Elem(BigInt(1)) : Elem(FpPoly::constant(r.p(), 1))};
  const Elem m = r.modulus();
  auto fs = r.integer_kind() ? [&] {
    std::vector<std::pair<Elem, unsigned>> v;
    for (auto &[q, k] : factor_integer(std::get<BigInt>(m))) v.emplace_back(q, k);
    return v;
  }() : [&] {
    std::vector<std::pair<Elem, unsigned>> v;
    for (auto &[q, k] : factor_poly(std::get<FpPoly>(m))) v.emplace_back(q, k);
    return v;
  }();
  for (auto &[q, k] : fs) {
    std::vector<Elem> next;
    for (auto &d : out) {
      Elem cur = d;
      for (unsigned e = 0; e <= k; ++e) {
        next.push_back(cur);
        if (r.integer_kind()) cur = std::get<BigInt>(cur) * std::get<BigInt>(q);
        else cur = std::get<FpPoly>(cur) * std::get<FpPoly>(q);
      }
    }
    out = std::move(next);
  }
  return out;
}

struct ArtinianClassification {
  Ring ring;
  std::vector<PrimeIdeal> primes;
  std::vector<SpclSet> subsets;              // indexed by bitmask over primes
  std::vector<IdealDescriptor> ideals;       // Compact(subset), normalized
  std::vector<std::vector<std::size_t>> meet_table, join_table;
  std::size_t consistency_checks = 0;
  bool consistent = true;
  bool lattice_ok = true; // meet/join agree with ∩/∪ of subsets
};

inline ArtinianClassification enumerate_artinian(const Ring &r, std::size_t random_samples = 30,
                                                 std::uint64_t seed = 1) {
  if (!r.is_artinian()) fail(ErrorKind::NotArtinian, r.str() + " is not artinian");
  ArtinianClassification out{r, spec_list(r)};
  const std::size_t n = out.primes.size();
  if (n > 16) fail(ErrorKind::SizeBudgetExceeded, "too many primes to enumerate");
  const std::size_t count = std::size_t(1) << n;
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::set<PrimeIdeal> ps;
    for (std::size_t k = 0; k < n; ++k)
      if (mask >> k & 1) ps.insert(out.primes[k]);
    SpclSet w = SpclSet::fin_max(r, ps);
    out.subsets.push_back(w);
    out.ideals.push_back(normalize(IdealDescriptor::compact(w)));
  }
  auto index_of = [&](const IdealDescriptor &d) {
    for (std::size_t k = 0; k < out.ideals.size(); ++k)
      if (out.ideals[k] == d) return k;
    fail(ErrorKind::InvalidComplex, "lattice operation left the enumerated set");
  };
  out.meet_table.assign(count, std::vector<std::size_t>(count));
  out.join_table.assign(count, std::vector<std::size_t>(count));
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < count; ++b) {
      out.meet_table[a][b] = index_of(meet(out.ideals[a], out.ideals[b]));
      out.join_table[a][b] = index_of(join(out.ideals[a], out.ideals[b]));
      out.lattice_ok = out.lattice_ok && out.meet_table[a][b] == (a & b) && out.join_table[a][b] == (a | b);
    }
  // Every thick tensor ideal is compact: membership in compact(S) must
  // agree with Supp X ⊆ S on R, on R --d--> R for every divisor d of the
  // modulus, and on seeded random complexes.
  std::vector<FreeComplex> samples{FreeComplex::free_module(r, 1)};
  for (auto &d : divisors_of_modulus(r)) samples.push_back(FreeComplex::two_term(r, d));
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < random_samples; ++k) samples.push_back(corpus::random_complex(r, rng).complex);
  for (auto &x : samples) {
    SpclSet s = supp_complex(x);
    for (std::size_t mask = 0; mask < count; ++mask) {
      auto ans = member(out.ideals[mask], x);
      ++out.consistency_checks;
      out.consistent = out.consistent && ((ans.answer == Answer::Yes) == s.subseteq(out.subsets[mask]));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The fiber report over the DVR.

struct FiberPrime {
  std::string name;
  IdealDescriptor ideal;
  SpclSet support;
  SOfSupport s;
};

struct FiberWitness {
  std::string complex;     // which formal complex
  std::string inside;      // descriptor it belongs to
  std::string outside;     // descriptor it avoids
  Answer in_answer = Answer::Unknown, out_answer = Answer::Unknown;
  bool ok() const { return in_answer == Answer::Yes && out_answer == Answer::No; }
};

struct DvrFiberReport {
  int c_max = 0;
  std::vector<FiberPrime> over_zero; // L1 ⊊ ... ⊊ L_cmax ⊊ D^-_fl
  std::vector<FiberPrime> over_max;  // {0}
  std::vector<FiberWitness> witnesses;
  bool chain_strict = false;
  bool all_s_zero = false;
  std::string note;
};

inline DvrFiberReport dvr_fiber_report(int c_max) {
  if (c_max < 2) fail(ErrorKind::Parse, "c_max must be >= 2");
  const Ring r = Ring::dvr();
  DvrFiberReport rep;
  rep.c_max = c_max;
  auto prime_entry = [&](const std::string &name, const IdealDescriptor &d) {
    SpclSet s = supp_descriptor(d);
    return FiberPrime{name, d, s, s_of_support(s)};
  };
  for (int c = 1; c <= c_max; ++c) rep.over_zero.push_back(prime_entry("L" + std::to_string(c), IdealDescriptor::lc(c)));
  const auto fl = IdealDescriptor::sp(r, PrimeIdeal::zero());
  rep.over_zero.push_back(prime_entry("D-fl = S((0))", fl));
  rep.over_max.push_back(prime_entry("0 = S((x))", IdealDescriptor::sp(r, PrimeIdeal::dvr_max())));

  // One witness per pair: G_b ∈ L_b \ L_a for a < b, E ∈ D-fl \ L_c.
  for (int b = 2; b <= c_max; ++b)
    for (int a = 1; a < b; ++a) {
      FiberWitness w{"G" + std::to_string(b), "L" + std::to_string(b), "L" + std::to_string(a)};
      w.in_answer = member(IdealDescriptor::lc(b), g_complex(b)).answer;
      w.out_answer = member(IdealDescriptor::lc(a), g_complex(b)).answer;
      rep.witnesses.push_back(w);
    }
  const auto e = factorial_complex();
  for (int c = 1; c <= c_max; ++c) {
    FiberWitness w{"E", "D-fl", "L" + std::to_string(c)};
    w.in_answer = member(fl, e).answer;
    w.out_answer = member(IdealDescriptor::lc(c), e).answer;
    rep.witnesses.push_back(w);
  }
  rep.chain_strict = true;
  for (auto &w : rep.witnesses) rep.chain_strict = rep.chain_strict && w.ok();
  rep.all_s_zero = true;
  for (auto &p : rep.over_zero) rep.all_s_zero = rep.all_s_zero && p.s.prime && p.s.p == PrimeIdeal::zero();
  rep.note = std::to_string(c_max + 1) +
             " distinct prime thick tensor ideals lie over (0) and all have s = (0): the fiber of s over the "
             "generic point is an infinite chain, so s is not locally injective and dim Spc D^-(R) exceeds dim R = 1";
  return rep;
}

} // namespace ttideal
