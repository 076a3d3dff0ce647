#pragma once

// Named verification suites over seeded random corpora: the formal DVR
// identities plus the bounded-complex checks (Koszul annihilators and
// supports, tensor supports, s∘S = 1, the compact lattice, and the artinian
// classification). Each suite returns an IdentityReport.

#include "ttideal/corpus.hpp"
#include "ttideal/ideals.hpp"

#include <random>
#include <string>
#include <vector>

namespace ttideal {

struct SuiteOptions {
  int window = 0;         // formal identities; 0 picks the per-identity default
  std::uint64_t seed = 1;
  std::size_t budget = kDefaultSizeBudget;
};

inline const std::vector<std::string> &suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v{"prop2.3", "lemma1.9", "thm3.9", "prop2.18", "cor2.20"};
    for (auto &n : identity_names()) v.push_back(n);
    return v;
  }();
  return names;
}

/// Default window for a formal identity (quadratic exponents grow fast).
inline int default_window(const std::string &name) { return name == "lemma7.20" ? 16 : 32; }

inline Ideal ideal_of_sequence(const Ring &r, const std::vector<Elem> &xs) {
  Ideal acc = zero_ideal(r);
  for (auto &x : xs) acc = ideal_sum(r, acc, ideal_of(r, x));
  return acc;
}

namespace detail {

inline std::string show_elems(const Ring &r, const std::vector<Elem> &xs) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? "," : "") + r.render(xs[k]);
  return s;
}

inline IdentityReport suite_koszul_ann(const SuiteOptions &o) {
  IdentityReport rep{"prop2.3"};
  std::mt19937_64 rng(o.seed);
  // Ann K(x) = (x) on sequences of length <= 3 with entries <= 40.
  for (auto r : {Ring::integers(), Ring::poly(5)}) {
    for (int k = 0; k < 50; ++k) {
      const int len = std::uniform_int_distribution<int>(1, 3)(rng);
      std::vector<Elem> xs;
      for (int j = 0; j < len; ++j) xs.push_back(corpus::random_elem(r, rng, 40));
      auto got = ann_complex(koszul(r, xs));
      auto want = ideal_of_sequence(r, xs);
      rep.check(got == want, r.str() + " Ann K(" + show_elems(r, xs) + ") = " + render(r, got) + ", expected " +
                                 render(r, want));
    }
  }
  // V(Ann X) = Supp X on random bounded complexes.
  for (auto r : {Ring::integers(), Ring::integers_mod(12), Ring::poly(2)}) {
    for (int k = 0; k < 34; ++k) {
      auto x = corpus::random_complex(r, rng).complex;
      auto v = v_of(r, ann_complex(x));
      auto s = supp_complex(x);
      rep.check(v == s, r.str() + " V(Ann X) = " + v.str() + ", Supp X = " + s.str());
    }
  }
  return rep;
}

inline IdentityReport suite_tensor_support(const SuiteOptions &o) {
  IdentityReport rep{"lemma1.9"};
  std::mt19937_64 rng(o.seed);
  corpus::Options small;
  small.max_rank = 3;
  small.max_length = 3;
  for (auto r : {Ring::integers(), Ring::integers_mod(12), Ring::poly(2)}) {
    for (int k = 0; k < 34; ++k) {
      auto x = corpus::random_complex(r, rng, small).complex;
      auto y = corpus::random_complex(r, rng, small).complex;
      auto lhs = supp_complex(tensor(x, y, o.budget));
      auto rhs = supp_complex(x).intersect(supp_complex(y));
      rep.check(lhs == rhs, r.str() + " Supp(X ⊗ Y) = " + lhs.str() + ", Supp X ∩ Supp Y = " + rhs.str());
    }
  }
  return rep;
}

inline IdentityReport suite_s_of_S(const SuiteOptions &) {
  IdentityReport rep{"thm3.9"};
  std::vector<std::pair<Ring, std::vector<PrimeIdeal>>> cases;
  for (auto r : {Ring::integers_mod(12), Ring::integers_mod(30), parse_ring("GF(2)[t]/(t^2*(t+1))"), Ring::dvr()})
    cases.emplace_back(r, spec_list(r));
  {
    Ring z = Ring::integers();
    std::vector<PrimeIdeal> ps{PrimeIdeal::zero()};
    for (int q : {2, 3, 5, 7}) ps.push_back(PrimeIdeal::max(BigInt(q)));
    cases.emplace_back(z, ps);
  }
  for (auto &[r, ps] : cases)
    for (auto &p : ps) {
      auto s = s_of_support(supp_of_Sp(r, p));
      bool ok = s.prime && s.p == p;
      rep.check(ok, r.str() + " s(Supp S" + p.str() + ") = " + (s.prime ? s.p.str() : "not prime: " + s.reason));
    }
  return rep;
}

inline IdentityReport suite_lattice(const SuiteOptions &o) {
  IdentityReport rep{"prop2.18"};
  const Ring z = Ring::integers();
  std::mt19937_64 rng(o.seed);
  std::vector<FreeComplex> objs;
  for (int k = 0; k < 30; ++k) objs.push_back(corpus::random_complex(z, rng).complex);
  const std::vector<PrimeIdeal> base{PrimeIdeal::max(BigInt(2)), PrimeIdeal::max(BigInt(3)),
                                     PrimeIdeal::max(BigInt(5))};
  auto subset = [&](unsigned mask) {
    std::set<PrimeIdeal> s;
    for (unsigned k = 0; k < 3; ++k)
      if (mask >> k & 1) s.insert(base[k]);
    return IdealDescriptor::compact(SpclSet::fin_max(z, s));
  };
  for (unsigned a = 0; a < 8; ++a)
    for (unsigned b = 0; b < 8; ++b) {
      auto A = normalize(subset(a)), B = normalize(subset(b));
      auto m = meet(A, B), j = join(A, B);
      bool ok = m == normalize(subset(a & b)) && j == normalize(subset(a | b));
      for (auto &x : objs) {
        bool ia = member(A, x).answer == Answer::Yes, ib = member(B, x).answer == Answer::Yes;
        bool im = member(m, x).answer == Answer::Yes, ij = member(j, x).answer == Answer::Yes;
        // <A> ∩ <B> = <A ∩ B>; <A> ∪ <B> ⊆ <A ∪ B> with V(Ann X) ⊆ A ∪ B exactly.
        auto v = v_of(z, ann_complex(x));
        SpclSet u = supp_descriptor(A).unite(supp_descriptor(B));
        ok = ok && im == (ia && ib) && ij == v.subseteq(u) && (!(ia || ib) || ij);
      }
      rep.check(ok, A.str() + " ∧ " + B.str() + " = " + m.str() + ", ∨ = " + j.str());
    }
  return rep;
}

inline IdentityReport suite_artinian(const SuiteOptions &o) {
  IdentityReport rep{"cor2.20"};
  for (auto [n, expect] : std::vector<std::pair<int, std::size_t>>{{12, 4}, {30, 8}, {8, 2}}) {
    auto c = enumerate_artinian(Ring::integers_mod(n), 30, o.seed);
    rep.check(c.ideals.size() == expect, "Z/" + std::to_string(n) + ": " + std::to_string(c.ideals.size()) +
                                             " thick tensor ideals, expected " + std::to_string(expect));
    rep.check(c.lattice_ok, "Z/" + std::to_string(n) + ": meet/join tables match ∩/∪");
    rep.check(c.consistent, "Z/" + std::to_string(n) + ": " + std::to_string(c.consistency_checks) +
                                " sampled memberships agree with Supp X ⊆ S");
  }
  return rep;
}

} // namespace detail

inline IdentityReport run_suite(const std::string &name, const SuiteOptions &o = {}) {
  if (name == "prop2.3") return detail::suite_koszul_ann(o);
  if (name == "lemma1.9") return detail::suite_tensor_support(o);
  if (name == "thm3.9") return detail::suite_s_of_S(o);
  if (name == "prop2.18") return detail::suite_lattice(o);
  if (name == "cor2.20") return detail::suite_artinian(o);
  return verify_identity(name, IdentityParams{}, o.window ? o.window : default_window(name));
}

} // namespace ttideal
