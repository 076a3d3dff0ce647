// Supports and the prime spectrum, formal DVR complexes, thick tensor ideal
// descriptors and the nilpotence search.

#include "oracle.hpp"

#include "ttideal/nilpotence.hpp"
#include "ttideal/suites.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ttideal;

namespace {

using K = IdealDescriptor::Kind;

const Ring kZ = Ring::integers();

PrimeIdeal zp(long long q) { return PrimeIdeal::max(BigInt(q)); }

SpclSet fin(std::initializer_list<long long> qs) {
  std::set<PrimeIdeal> s;
  for (auto q : qs) s.insert(zp(q));
  return SpclSet::fin_max(kZ, s);
}

SpclSet cofin(std::initializer_list<long long> qs) {
  std::set<PrimeIdeal> s;
  for (auto q : qs) s.insert(zp(q));
  return SpclSet::cofin_max(kZ, s);
}

FreeComplex cyclic(const Ring &r, long long a, int deg = 0) { return FreeComplex::two_term(r, r.from_int(a), deg); }

ChainMap scalar_id(long long n, long long a) {
  Ring r = Ring::integers_mod(n);
  return scalar_multiple(r.from_int(a), identity_map(FreeComplex::free_module(r, 1)));
}

FormalComplex bounded(std::vector<long long> exps) {
  std::vector<FgModule> h;
  for (auto e : exps) h.push_back(e ? dvr_cyclic(BigInt(e)) : FgModule{Ring::dvr(), 0, {}});
  return bounded_formal(h, 0);
}

/// H_i = R/x^(t i^a) for i >= 1.
FormalComplex mono_tail(long long t, unsigned a) {
  return FormalComplex({}, TailRule::poly({ExpPoly::monomial(a, BigInt(t))}, 1));
}

long long power(long long b, unsigned e) {
  long long v = 1;
  for (unsigned k = 0; k < e; ++k) v *= b;
  return v;
}

std::optional<long long> loewy_at(const FormalComplex &x, int i) {
  auto m = x.module_at(i);
  if (!m) return std::nullopt;
  auto l = loewy_length(*m);
  if (l.infinite) return -1;
  return static_cast<long long>(l.value);
}

// ---------------------------------------------------------------------------
// Spcl set oracle: sets over Z with named maximal ideals.

struct SetModel {
  SpclSet::Kind kind;
  std::set<long long> named;

  bool contains(long long q) const { // q = 0 is the zero ideal
    switch (kind) {
    case SpclSet::Kind::Empty: return false;
    case SpclSet::Kind::AllSpec: return true;
    case SpclSet::Kind::FinMax: return q != 0 && named.count(q);
    case SpclSet::Kind::CofinMax: return q != 0 && !named.count(q);
    }
    return false;
  }
  SpclSet build() const {
    std::set<PrimeIdeal> s;
    for (auto q : named) s.insert(zp(q));
    switch (kind) {
    case SpclSet::Kind::Empty: return SpclSet::empty(kZ);
    case SpclSet::Kind::AllSpec: return SpclSet::all(kZ);
    case SpclSet::Kind::FinMax: return SpclSet::fin_max(kZ, s);
    case SpclSet::Kind::CofinMax: return SpclSet::cofin_max(kZ, s);
    }
    return SpclSet::empty(kZ);
  }
};

std::vector<SetModel> all_models() {
  const std::vector<long long> names{2, 3, 5, 7};
  std::vector<SetModel> out{{SpclSet::Kind::Empty, {}}, {SpclSet::Kind::AllSpec, {}}};
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::set<long long> s;
    for (unsigned k = 0; k < 4; ++k)
      if (mask >> k & 1) s.insert(names[k]);
    out.push_back({SpclSet::Kind::FinMax, s});
    out.push_back({SpclSet::Kind::CofinMax, s});
  }
  return out;
}

const std::vector<long long> kProbe{0, 2, 3, 5, 7, 11, 13};

} // namespace

// ---------------------------------------------------------------------------
// Spectra.

TEST(Spectra, VanishingLociOfIdeals) {
  EXPECT_EQ(v_of(kZ, ideal_of(kZ, BigInt(12))), fin({2, 3}));
  EXPECT_EQ(v_of(kZ, zero_ideal(kZ)), SpclSet::all(kZ));
  EXPECT_EQ(v_of(kZ, unit_ideal(kZ)), SpclSet::empty(kZ));
  EXPECT_EQ(cofin({2}).intersect(fin({2, 3})), fin({3}));
}

TEST(Spectra, SupportsOfTamePrimes) {
  auto s5 = supp_of_Sp(kZ, zp(5));
  EXPECT_EQ(s5, cofin({5}));
  EXPECT_FALSE(s5.contains(zp(5)));
  EXPECT_TRUE(s5.contains(zp(7)));
  EXPECT_FALSE(s5.contains(PrimeIdeal::zero()));
  EXPECT_EQ(supp_of_Sp(kZ, PrimeIdeal::zero()), SpclSet::max_spec(kZ));
  EXPECT_EQ(supp_of_Sp(Ring::dvr(), PrimeIdeal::dvr_max()).kind(), SpclSet::Kind::Empty);
}

TEST(Spectra, PrimeRecoveredFromSupport) {
  auto a = s_of_support(cofin({5}));
  ASSERT_TRUE(a.prime);
  EXPECT_EQ(a.p, zp(5));
  auto b = s_of_support(cofin({}));
  ASSERT_TRUE(b.prime);
  EXPECT_EQ(b.p, PrimeIdeal::zero());
  auto c = s_of_support(fin({2, 3}));
  EXPECT_FALSE(c.prime);
  ASSERT_EQ(c.witness.size(), 2u);
  EXPECT_NE(c.witness[0], c.witness[1]);
  for (auto &w : c.witness) EXPECT_FALSE(fin({2, 3}).contains(w));
  auto d = s_of_support(SpclSet::all(kZ));
  EXPECT_FALSE(d.prime);
  EXPECT_TRUE(d.witness.empty());
}

TEST(Spectra, SupportRoundTripOnCatalogPrimes) {
  std::vector<std::pair<Ring, std::vector<PrimeIdeal>>> cases;
  for (auto r : {Ring::integers_mod(12), Ring::integers_mod(30), Ring::integers_mod(8),
                 parse_ring("GF(2)[t]/(t^2*(t+1))"), Ring::prime_field(7), Ring::dvr()})
    cases.emplace_back(r, spec_list(r));
  cases.emplace_back(kZ, std::vector<PrimeIdeal>{PrimeIdeal::zero(), zp(2), zp(3), zp(101)});
  cases.emplace_back(Ring::poly(2), std::vector<PrimeIdeal>{PrimeIdeal::zero(), PrimeIdeal::max(FpPoly(2, {1, 1, 1}))});
  for (auto &[r, ps] : cases)
    for (auto &p : ps) {
      auto s = s_of_support(supp_of_Sp(r, p));
      ASSERT_TRUE(s.prime) << r.str() << " " << p.str();
      EXPECT_EQ(s.p, p);
    }
}

TEST(Spectra, SupportOfTamePrimeReversesOrder) {
  std::vector<std::pair<Ring, std::vector<PrimeIdeal>>> cases{
      {kZ, {PrimeIdeal::zero(), zp(2), zp(3), zp(5)}},
      {Ring::dvr(), {PrimeIdeal::zero(), PrimeIdeal::dvr_max()}},
      {Ring::poly(3), {PrimeIdeal::zero(), PrimeIdeal::max(FpPoly(3, {0, 1})), PrimeIdeal::max(FpPoly(3, {1, 0, 1}))}}};
  for (auto &[r, ps] : cases)
    for (auto &p : ps)
      for (auto &q : ps)
        if (prime_contained(p, q)) {
          EXPECT_TRUE(supp_of_Sp(r, q).subseteq(supp_of_Sp(r, p))) << p.str() << q.str();
        }
}

TEST(Spectra, SetAlgebraMatchesPointwiseModel) {
  auto ms = all_models();
  for (auto &a : ms)
    for (auto &b : ms) {
      auto u = a.build().unite(b.build()), i = a.build().intersect(b.build());
      for (auto q : kProbe) {
        auto p = q ? zp(q) : PrimeIdeal::zero();
        EXPECT_EQ(u.contains(p), a.contains(q) || b.contains(q));
        EXPECT_EQ(i.contains(p), a.contains(q) && b.contains(q));
      }
      EXPECT_EQ(a.build().subseteq(b.build()), u == b.build());
    }
}

TEST(Spectra, SetAlgebraLatticeLaws) {
  auto ms = all_models();
  std::vector<SpclSet> sets;
  for (auto &m : ms) sets.push_back(m.build());
  for (auto &a : sets)
    for (auto &b : sets) {
      EXPECT_EQ(a.unite(b), b.unite(a));
      EXPECT_EQ(a.intersect(b), b.intersect(a));
      EXPECT_EQ(a.unite(a.intersect(b)), a);
      EXPECT_EQ(a.intersect(a.unite(b)), a);
    }
  // Associativity on a thinned triple product.
  for (std::size_t x = 0; x < sets.size(); x += 3)
    for (std::size_t y = 1; y < sets.size(); y += 3)
      for (std::size_t z = 2; z < sets.size(); z += 3) {
        const auto &a = sets[x], &b = sets[y], &c = sets[z];
        EXPECT_EQ(a.unite(b).unite(c), a.unite(b.unite(c)));
        EXPECT_EQ(a.intersect(b).intersect(c), a.intersect(b.intersect(c)));
      }
}

TEST(Spectra, ParsesSpclSets) {
  EXPECT_EQ(parse_spcl(kZ, "{}"), SpclSet::empty(kZ));
  EXPECT_EQ(parse_spcl(kZ, "{(2),(3)}"), fin({2, 3}));
  EXPECT_EQ(parse_spcl(kZ, "cofinmax{(5)}"), cofin({5}));
  EXPECT_EQ(parse_spcl(kZ, "all"), SpclSet::all(kZ));
  for (auto &m : all_models()) EXPECT_EQ(parse_spcl(kZ, m.build().str()), m.build()) << m.build().str();
}

TEST(Spectra, ArtinianReports) {
  auto r12 = artinian_spc_report(Ring::integers_mod(12));
  EXPECT_EQ(r12.primes.size(), 2u);
  EXPECT_EQ(r12.tame_primes.size(), 2u);
  EXPECT_TRUE(r12.s_of_S_identity);
  EXPECT_TRUE(r12.support_order_reversing);
  auto r8 = artinian_spc_report(Ring::integers_mod(8));
  EXPECT_EQ(r8.primes.size(), 1u);
  EXPECT_NE(r8.note.find("unique minimal"), std::string::npos);
  EXPECT_EQ(artinian_spc_report(parse_ring("GF(2)[t]/(t*(t+1))")).primes.size(), 2u);
  EXPECT_THROW(artinian_spc_report(kZ), Error);
}

TEST(Spectra, ArtinianTamePrimesHaveComplementSupports) {
  for (long long n : {6, 12, 30, 210, 16}) {
    Ring r = Ring::integers_mod(n);
    auto rep = artinian_spc_report(r);
    ASSERT_EQ(rep.primes.size(), oracle::prime_divisors(n).size());
    for (auto &[p, s] : rep.tame_primes) {
      std::set<PrimeIdeal> rest;
      for (auto &q : rep.primes)
        if (q != p) rest.insert(q);
      EXPECT_EQ(s, SpclSet::fin_max(r, rest));
    }
    // Supports are anti-isomorphic to inclusion: distinct primes, incomparable supports.
    for (auto &[p, sp] : rep.tame_primes)
      for (auto &[q, sq] : rep.tame_primes) EXPECT_EQ(sp.subseteq(sq), p == q);
  }
}

// ---------------------------------------------------------------------------
// Formal complexes over the DVR.

TEST(Formal, GrowthComplexes) {
  for (int i = 1; i < 10; ++i) {
    EXPECT_EQ(loewy_at(g_complex(1), i), 1);
    EXPECT_EQ(loewy_at(g_complex(2), i), i);
    EXPECT_EQ(loewy_at(g_complex(3), i), i * i);
  }
  EXPECT_EQ(loewy_at(g_complex(2), 0), 0);
}

TEST(Formal, FactorialComplex) {
  auto p = loewy_profile(factorial_complex(), 5);
  ASSERT_EQ(p.lo, 0);
  std::vector<long long> want{1, 1, 2, 6, 24};
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(static_cast<long long>(p.values[i]->value), want[i]);
}

TEST(Formal, TensorOfCyclics) {
  auto t = tensor_formal(bounded({2}), bounded({3}), 4);
  EXPECT_EQ(t.module_at(0), dvr_cyclic(2));
  EXPECT_EQ(t.module_at(1), dvr_cyclic(2));
  for (int i = 2; i < 4; ++i) EXPECT_TRUE(t.module_at(i)->is_zero());
}

TEST(Formal, TensorWithUnit) {
  FormalComplex unit = bounded_formal({dvr_free(1)}, 0);
  for (auto x : {g_complex(2), factorial_complex(), bounded({3, 0, 5})}) {
    auto t = tensor_formal(unit, x, 8);
    for (int i = 0; i < 8; ++i) EXPECT_EQ(t.module_at(i), x.module_at(i)) << i;
  }
}

TEST(Formal, TensorOfGrowthWithResidueField) {
  auto t = tensor_formal(g_complex(2), bounded({1}), 5);
  EXPECT_EQ(t.module_at(1), dvr_cyclic(1));
  for (int i = 2; i < 5; ++i) EXPECT_EQ(t.module_at(i), direct_sum(dvr_cyclic(1), dvr_cyclic(1)));
  EXPECT_FALSE(t.module_at(7).has_value());
}

TEST(Formal, MinimalConstant) {
  for (int c = 1; c <= 6; ++c) EXPECT_EQ(minimal_c(g_complex(c)), MinimalC::some(c));
  EXPECT_EQ(minimal_c(factorial_complex()).kind, MinimalC::Kind::NoC);
  EXPECT_EQ(minimal_c(bounded({3, 1, 4})), MinimalC::some(0));
  EXPECT_EQ(minimal_c(FormalComplex({}, TailRule::free(1, 0))).kind, MinimalC::Kind::NotFl);
  EXPECT_EQ(minimal_c(tensor_formal(g_complex(2), g_complex(2), 8)).kind, MinimalC::Kind::UnknownWindow);
}

TEST(Formal, GrowthIdealMembership) {
  EXPECT_EQ(member_lc(g_complex(2), 2), Membership::Yes);
  EXPECT_EQ(member_lc(g_complex(2), 1), Membership::No);
  EXPECT_EQ(member_lc(factorial_complex(), 10), Membership::No);
  EXPECT_EQ(member_lc(bounded({9}), 1), Membership::Yes);
}

TEST(Formal, NamedIdentities) {
  EXPECT_TRUE(verify_identity("ex7.5", {}, 32).pass);
  IdentityParams p;
  p.a = ExpPoly::monomial(1);
  p.b = ExpPoly::monomial(2);
  EXPECT_TRUE(verify_identity("lemma7.20", p, 16).pass);
  IdentityParams q;
  q.x = g_complex(1);
  EXPECT_TRUE(verify_identity("prop7.1", q, 32).pass);
  for (auto &n : identity_names()) EXPECT_TRUE(verify_identity(n, {}, default_window(n)).pass) << n;
  EXPECT_THROW(verify_identity("nope", {}, 8), Error);
}

TEST(Formal, ParseRenderRoundTrip) {
  for (auto x : {g_complex(3), factorial_complex(), bounded({2, 0, 7}), mono_tail(3, 2)})
    EXPECT_EQ(parse_formal(x.render()), x) << x.render();
  std::mt19937_64 rng(21);
  for (int k = 0; k < 30; ++k) {
    auto x = corpus::random_formal(rng);
    EXPECT_EQ(parse_formal(x.render()), x);
  }
}

TEST(FormalProperties, TensorMatchesCyclicKunnethOracle) {
  // Over the DVR, R/x^p ⊗ R/x^q = Tor_1 = R/x^min(p,q), so the Loewy length
  // of H_n(X ⊗ Y) is the max of min(e_i, f_j) over i + j in {n, n - 1}.
  for (long long t : {1, 2, 3})
    for (unsigned a = 0; a < 3; ++a)
      for (long long u : {1, 2})
        for (unsigned b = 0; b < 3; ++b) {
          const int w = 10;
          auto x = mono_tail(t, a), y = mono_tail(u, b);
          auto e = [&](int i) { return i >= 1 ? t * power(i, a) : 0; };
          auto f = [&](int j) { return j >= 1 ? u * power(j, b) : 0; };
          auto tx = tensor_formal(x, y, w);
          for (int n = 0; n < w; ++n) {
            long long want = 0;
            for (int i = 0; i <= n; ++i) {
              want = std::max(want, std::min(e(i), f(n - i)));
              if (n - 1 - i >= 0) want = std::max(want, std::min(e(i), f(n - 1 - i)));
            }
            EXPECT_EQ(loewy_at(tx, n), want) << t << "i^" << a << " ⊗ " << u << "i^" << b << " at " << n;
            // Closure under tensor with explicit constants.
            const unsigned c = std::min(a, b) + 1;
            if (n >= 1) {
              EXPECT_LE(want, std::max(t, u) * power(n, c - 1));
            }
          }
          const int c = static_cast<int>(std::min(a, b)) + 1;
          EXPECT_TRUE(member_lc(x, c) == Membership::Yes || member_lc(y, c) == Membership::Yes);
        }
}

TEST(FormalProperties, GrowthIdealIsThick) {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 60; ++k) {
    long long t = 1 + rng() % 3, u = 1 + rng() % 3;
    unsigned a = rng() % 4, b = rng() % 4;
    auto x = direct_sum(mono_tail(t, a), corpus::random_formal(rng, 6, 4, 0.0));
    auto y = mono_tail(u, b);
    auto s = direct_sum(x, y);
    for (int c = 1; c <= 5; ++c) {
      bool mx = member_lc(x, c) == Membership::Yes, my = member_lc(y, c) == Membership::Yes;
      EXPECT_EQ(member_lc(x, c), static_cast<unsigned>(c) > a ? Membership::Yes : Membership::No);
      EXPECT_EQ(member_lc(s, c) == Membership::Yes, mx && my);
      EXPECT_EQ(member_lc(shift(x, 1), c), member_lc(x, c));
      EXPECT_EQ(member_lc(shift(x, -1), c), member_lc(x, c));
    }
  }
}

TEST(FormalProperties, AgreesWithRealizedComplexesOverIntegers) {
  std::mt19937_64 rng(23);
  const PrimeIdeal two = zp(2);
  for (int k = 0; k < 15; ++k) {
    auto x = corpus::random_formal(rng, 4, 2, 0.1), y = corpus::random_formal(rng, 4, 2, 0.1);
    const int w = 6;
    auto fx = tensor_formal(x, y, w);
    auto rx = tensor(realize_formal(x, kZ, two, w), realize_formal(y, kZ, two, w));
    for (int n = 0; n < w - 1; ++n) EXPECT_EQ(localize_to_dvr(homology_at(rx, n), two), *fx.module_at(n)) << n;
  }
}

// ---------------------------------------------------------------------------
// Thick tensor ideal descriptors.

TEST(Ideals, MembershipExamples) {
  auto c23 = IdealDescriptor::compact(fin({2, 3}));
  EXPECT_EQ(member(c23, cyclic(kZ, 12)).answer, Answer::Yes);
  auto c2 = IdealDescriptor::compact(fin({2}));
  EXPECT_EQ(member(c2, cyclic(kZ, 10)).answer, Answer::No);
  auto tame = IdealDescriptor::tame(SpclSet::max_spec(kZ));
  EXPECT_EQ(member(tame, direct_sum(cyclic(kZ, 2), cyclic(kZ, 3, 1))).answer, Answer::Yes);
  EXPECT_EQ(member(tame, FreeComplex::free_module(kZ, 1)).answer, Answer::No);
}

TEST(Ideals, SupportsOfDescriptors) {
  EXPECT_EQ(supp_descriptor(IdealDescriptor::lc(3)), SpclSet::fin_max(Ring::dvr(), {PrimeIdeal::dvr_max()}));
  EXPECT_EQ(supp_descriptor(IdealDescriptor::sp(kZ, PrimeIdeal::zero())), SpclSet::max_spec(kZ));
  EXPECT_EQ(supp_descriptor(IdealDescriptor::generated(kZ, {koszul(kZ, {BigInt(2)})})), fin({2}));
  EXPECT_EQ(supp_descriptor(IdealDescriptor::zero(kZ)), SpclSet::empty(kZ));
  EXPECT_EQ(supp_descriptor(IdealDescriptor::whole(kZ)), SpclSet::all(kZ));
}

TEST(Ideals, ClosuresAndRadicals) {
  const Ring dvr = Ring::dvr();
  auto l1 = IdealDescriptor::compact(SpclSet::fin_max(dvr, {PrimeIdeal::dvr_max()}));
  auto t = tame_closure(l1);
  EXPECT_EQ(t.kind, K::Tame);
  EXPECT_EQ(member(t, factorial_complex()).answer, Answer::Yes);
  EXPECT_EQ(member(l1, factorial_complex()).answer, Answer::No);
  auto r2 = rad_closure(IdealDescriptor::lc(2));
  ASSERT_TRUE(r2.radical);
  EXPECT_EQ(*r2.radical, IdealDescriptor::lc(2));
  auto rz = rad_closure(IdealDescriptor::compact(fin({2})));
  EXPECT_FALSE(rz.radical);
  EXPECT_FALSE(rz.reason.empty());
}

TEST(Ideals, CompactMeetAndJoin) {
  auto a = IdealDescriptor::compact(fin({2})), b = IdealDescriptor::compact(fin({3}));
  EXPECT_EQ(meet(a, b), IdealDescriptor::zero(kZ));
  EXPECT_EQ(join(a, b), IdealDescriptor::compact(fin({2, 3})));
  EXPECT_EQ(meet(a, IdealDescriptor::whole(kZ)), a);
  EXPECT_THROW(meet(a, IdealDescriptor::tame(fin({2}))), Error);
}

TEST(Ideals, ParsesDescriptorGrammar) {
  EXPECT_EQ(parse_descriptor(kZ, "zero"), IdealDescriptor::zero(kZ));
  EXPECT_EQ(parse_descriptor(kZ, "whole"), IdealDescriptor::whole(kZ));
  EXPECT_EQ(parse_descriptor(kZ, "compact{(2),(3)}"), IdealDescriptor::compact(fin({2, 3})));
  EXPECT_EQ(parse_descriptor(kZ, "tame{cofinmax{(5)}}"), IdealDescriptor::tame(cofin({5})));
  EXPECT_EQ(parse_descriptor(kZ, "S((5))"), IdealDescriptor::sp(kZ, zp(5)));
  EXPECT_EQ(parse_descriptor(kZ, "S(5)"), IdealDescriptor::sp(kZ, zp(5)));
  EXPECT_EQ(parse_descriptor(Ring::dvr(), "L3"), IdealDescriptor::lc(3));
  auto g = parse_descriptor(kZ, "gen[a,b]", [](const std::string &n) { return cyclic(kZ, n == "a" ? 4 : 9); });
  EXPECT_EQ(supp_descriptor(g), fin({2, 3}));
  EXPECT_THROW(parse_descriptor(kZ, "S((4))"), Error);
  EXPECT_THROW(parse_descriptor(kZ, "L0"), Error);
}

TEST(Ideals, ArtinianClassificationCounts) {
  for (auto [n, want] : std::vector<std::pair<long long, std::size_t>>{{12, 4}, {30, 8}, {8, 2}, {210, 16}}) {
    auto c = enumerate_artinian(Ring::integers_mod(n), 20, 1);
    EXPECT_EQ(c.ideals.size(), want);
    EXPECT_EQ(c.ideals.size(), std::size_t{1} << oracle::prime_divisors(n).size());
    EXPECT_TRUE(c.lattice_ok);
    EXPECT_TRUE(c.consistent);
  }
}

TEST(Ideals, DvrFiberChain) {
  auto rep = dvr_fiber_report(3);
  EXPECT_EQ(rep.over_zero.size(), 4u);
  EXPECT_EQ(rep.over_max.size(), 1u);
  EXPECT_TRUE(rep.chain_strict);
  EXPECT_TRUE(rep.all_s_zero);
  for (auto &p : rep.over_zero) {
    ASSERT_TRUE(p.s.prime) << p.name;
    EXPECT_EQ(p.s.p, PrimeIdeal::zero());
  }
  for (auto &w : rep.witnesses) EXPECT_TRUE(w.ok()) << w.complex << " in " << w.inside << " not " << w.outside;
  EXPECT_EQ(member(IdealDescriptor::lc(2), g_complex(2)).answer, Answer::Yes);
  EXPECT_EQ(member(IdealDescriptor::lc(1), g_complex(2)).answer, Answer::No);
  for (int c = 1; c <= 3; ++c) EXPECT_EQ(member(IdealDescriptor::lc(c), factorial_complex()).answer, Answer::No);
}

namespace {

std::vector<IdealDescriptor> descriptor_corpus() {
  std::vector<IdealDescriptor> ds;
  for (auto &r : {kZ, Ring::integers_mod(12), Ring::poly(2)}) {
    ds.push_back(IdealDescriptor::zero(r));
    ds.push_back(IdealDescriptor::whole(r));
  }
  for (auto &p : spec_list(Ring::integers_mod(12))) ds.push_back(IdealDescriptor::sp(Ring::integers_mod(12), p));
  ds.push_back(IdealDescriptor::sp(Ring::poly(2), PrimeIdeal::max(FpPoly(2, {1, 1}))));
  for (auto &m : all_models()) {
    ds.push_back(IdealDescriptor::compact(m.build()));
    ds.push_back(IdealDescriptor::tame(m.build()));
  }
  for (long long q : {2, 3, 7}) ds.push_back(IdealDescriptor::sp(kZ, zp(q)));
  ds.push_back(IdealDescriptor::sp(kZ, PrimeIdeal::zero()));
  ds.push_back(IdealDescriptor::generated(kZ, {cyclic(kZ, 6), koszul(kZ, {BigInt(10), BigInt(4)})}));
  const Ring dvr = Ring::dvr();
  for (int c = 1; c <= 4; ++c) ds.push_back(IdealDescriptor::lc(c));
  ds.push_back(IdealDescriptor::sp(dvr, PrimeIdeal::zero()));
  ds.push_back(IdealDescriptor::sp(dvr, PrimeIdeal::dvr_max()));
  ds.push_back(IdealDescriptor::compact(SpclSet::fin_max(dvr, {PrimeIdeal::dvr_max()})));
  ds.push_back(IdealDescriptor::tame(SpclSet::fin_max(dvr, {PrimeIdeal::dvr_max()})));
  return ds;
}

} // namespace

TEST(IdealProperties, NormalizationIsIdempotent) {
  for (auto &d : descriptor_corpus()) EXPECT_EQ(normalize(normalize(d)), normalize(d)) << d.str();
}

TEST(IdealProperties, ClosureDiagramCommutes) {
  for (auto &d : descriptor_corpus()) {
    EXPECT_EQ(supp_descriptor(tame_closure(d)), supp_descriptor(d)) << d.str();
    EXPECT_EQ(cpt_interior(tame_closure(d)), cpt_interior(d)) << d.str();
    EXPECT_EQ(supp_descriptor(cpt_interior(d)), supp_descriptor(d)) << d.str();
  }
}

TEST(IdealProperties, TameIdealsAreRadical) {
  for (auto &d : descriptor_corpus()) {
    if (d.kind != K::Tame && d.kind != K::Sp) continue;
    auto r = rad_closure(d);
    ASSERT_TRUE(r.radical) << d.str();
    EXPECT_EQ(*r.radical, normalize(d));
  }
  for (auto &d : descriptor_corpus())
    if (d.ring.is_artinian()) {
      EXPECT_TRUE(rad_closure(d).radical) << d.str();
    }
}

TEST(IdealProperties, GrowthIdealsAreNotTame) {
  const auto l1 = SpclSet::fin_max(Ring::dvr(), {PrimeIdeal::dvr_max()});
  for (int c = 1; c <= 5; ++c) {
    auto t = tame_closure(IdealDescriptor::lc(c));
    EXPECT_EQ(t, normalize(IdealDescriptor::tame(l1)));
    EXPECT_EQ(member(t, factorial_complex()).answer, Answer::Yes);
    EXPECT_EQ(member(IdealDescriptor::lc(c), factorial_complex()).answer, Answer::No);
  }
}

TEST(IdealProperties, CompactMembershipIsMonotone) {
  std::mt19937_64 rng(24);
  std::vector<FreeComplex> xs;
  for (int k = 0; k < 25; ++k) xs.push_back(corpus::random_complex(kZ, rng).complex);
  auto ms = all_models();
  for (auto &a : ms)
    for (auto &b : ms) {
      auto wa = a.build(), wb = b.build();
      if (!wa.subseteq(wb)) continue;
      auto da = IdealDescriptor::compact(wa), db = IdealDescriptor::compact(wb);
      for (auto &x : xs)
        if (member(da, x).answer == Answer::Yes) {
          EXPECT_EQ(member(db, x).answer, Answer::Yes);
        }
    }
}

TEST(IdealProperties, CompactLatticeMatchesSetOperations) {
  std::mt19937_64 rng(25);
  for (auto r : {kZ, Ring::integers_mod(30)}) {
    std::vector<FreeComplex> xs;
    for (int k = 0; k < 20; ++k) xs.push_back(corpus::random_complex(r, rng).complex);
    std::vector<SpclSet> ws;
    if (r == kZ) {
      for (auto &m : all_models())
        if (m.kind == SpclSet::Kind::FinMax) ws.push_back(m.build());
    } else {
      auto c = enumerate_artinian(r, 0, 1);
      ws = c.subsets;
    }
    for (auto &a : ws)
      for (auto &b : ws) {
        auto m = meet(IdealDescriptor::compact(a), IdealDescriptor::compact(b));
        auto j = join(IdealDescriptor::compact(a), IdealDescriptor::compact(b));
        for (auto &x : xs) {
          auto s = supp_complex(x);
          EXPECT_EQ(member(m, x).answer == Answer::Yes, s.subseteq(a.intersect(b)));
          EXPECT_EQ(member(j, x).answer == Answer::Yes, s.subseteq(a.unite(b)));
        }
      }
  }
}

// ---------------------------------------------------------------------------
// Nilpotence.

TEST(Nilpotence, TensorPowers) {
  auto f = scalar_id(16, 3);
  EXPECT_EQ(render_map(tensor_power_map(f, 1)), render_map(f));
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(tensor_power_map(f, n).at(0)(0, 0), f.ring().from_int(power(3, n)));
  auto x = cyclic(kZ, 2);
  auto x2 = tensor_power_map(identity_map(x), 2).source();
  EXPECT_EQ(x2.rank(0), 1u);
  EXPECT_EQ(x2.rank(1), 2u);
  EXPECT_EQ(x2.rank(2), 1u);
}

TEST(Nilpotence, FiberwiseVanishing) {
  EXPECT_TRUE(check_fiberwise_vanishing(scalar_id(4, 2)).pass);
  auto bad = check_fiberwise_vanishing(scalar_id(6, 2));
  EXPECT_FALSE(bad.pass);
  ASSERT_TRUE(bad.failing);
  EXPECT_EQ(*bad.failing, zp(3));
  auto x = cyclic(Ring::integers_mod(12), 2);
  EXPECT_TRUE(check_fiberwise_vanishing(zero_map(x, x)).pass);
  EXPECT_THROW(check_fiberwise_vanishing(scalar_multiple(BigInt(2), identity_map(cyclic(kZ, 2)))), Error);
}

TEST(Nilpotence, IndexSearch) {
  auto r4 = find_nilpotence_index(scalar_id(4, 2));
  EXPECT_EQ(r4.outcome, NilpotenceResult::Outcome::Vanishes);
  EXPECT_EQ(r4.t, 2);
  auto r8 = find_nilpotence_index(scalar_id(8, 2));
  EXPECT_EQ(r8.outcome, NilpotenceResult::Outcome::Vanishes);
  EXPECT_EQ(r8.t, 3);
  auto r6 = find_nilpotence_index(scalar_id(6, 2));
  EXPECT_EQ(r6.outcome, NilpotenceResult::Outcome::HypothesisFails);
  ASSERT_TRUE(r6.failing_prime);
  EXPECT_EQ(*r6.failing_prime, zp(3));
  auto r32 = find_nilpotence_index(scalar_id(1024, 2), 4);
  EXPECT_EQ(r32.outcome, NilpotenceResult::Outcome::BudgetExhausted);
  EXPECT_EQ(r32.t, 4);
}

TEST(NilpotenceProperties, IndexIsMinimalAndWitnessed) {
  // a·id on Z/n vanishes at the least t with n | a^t, provided every prime of n divides a.
  for (long long n : {4, 8, 9, 12, 27, 36, 72})
    for (long long a = 1; a < n; ++a) {
      auto res = find_nilpotence_index(scalar_id(n, a));
      bool hyp = true;
      for (auto q : oracle::prime_divisors(n)) hyp = hyp && a % q == 0;
      if (!hyp) {
        EXPECT_EQ(res.outcome, NilpotenceResult::Outcome::HypothesisFails) << n << " " << a;
        continue;
      }
      int t = 1;
      for (long long v = a % n; v != 0; v = v * a % n) ++t;
      if (t > 8) {
        EXPECT_EQ(res.outcome, NilpotenceResult::Outcome::BudgetExhausted);
        continue;
      }
      ASSERT_EQ(res.outcome, NilpotenceResult::Outcome::Vanishes) << n << " " << a;
      EXPECT_EQ(res.t, t) << n << " " << a;
      ASSERT_TRUE(res.power && res.witness);
      EXPECT_TRUE(verify_homotopy(*res.power, *res.witness));
      if (t >= 2) {
        EXPECT_TRUE(res.minimal);
        EXPECT_FALSE(is_nullhomotopic(tensor_power_map(scalar_id(n, a), t - 1)).nullhomotopic);
      }
      EXPECT_TRUE(ann_chain_ascending(Ring::integers_mod(n), res.ann_chain));
      EXPECT_TRUE(is_unit_ideal(Ring::integers_mod(n), res.ann_chain.back()));
    }
}

TEST(NilpotenceProperties, RandomMapsOnArtinianRings) {
  std::mt19937_64 rng(26);
  corpus::Options small;
  small.max_rank = 2;
  small.max_length = 2;
  for (auto r : {Ring::integers_mod(4), Ring::integers_mod(12), parse_ring("GF(2)[t]/(t^2)")})
    for (int k = 0; k < 12; ++k) {
      auto f = corpus::random_endomorphism(r, rng, small);
      auto res = find_nilpotence_index(f, 4);
      EXPECT_TRUE(ann_chain_ascending(r, res.ann_chain));
      if (res.outcome == NilpotenceResult::Outcome::Vanishes) {
        EXPECT_TRUE(verify_homotopy(*res.power, *res.witness));
        EXPECT_TRUE(is_unit_ideal(r, res.ann_chain.back()));
        EXPECT_TRUE(check_fiberwise_vanishing(f).pass);
      }
      if (res.outcome == NilpotenceResult::Outcome::HypothesisFails) {
        EXPECT_FALSE(check_fiberwise_vanishing(f).pass);
      }
    }
}

TEST(NilpotenceProperties, SquareKillsKoszulAfterReduction) {
  std::mt19937_64 rng(27);
  corpus::Options small;
  small.max_rank = 2;
  small.max_length = 2;
  const Ring r = Ring::integers_mod(4);
  int applied = 0;
  for (int k = 0; k < 40; ++k) {
    auto f = corpus::random_endomorphism(r, rng, small);
    auto c = koszul_nilpotence_check(f, BigInt(2));
    if (!c.applies) continue;
    ++applied;
    EXPECT_TRUE(c.holds);
  }
  EXPECT_TRUE(koszul_nilpotence_check(scalar_id(4, 2), BigInt(2)).applies);
  EXPECT_GT(applied, 0);
}

TEST(NilpotenceProperties, KoszulOfPowerHasPowerAnnihilator) {
  for (long long x : {2, 3, 6, 10})
    for (unsigned e = 1; e <= 5; ++e) {
      const Ideal xe = ideal_of(kZ, BigInt(power(x, e)));
      const Ideal ann = ann_complex(koszul(kZ, {BigInt(power(x, e))}));
      EXPECT_EQ(ann, xe);
      Ideal pw = unit_ideal(kZ);
      for (unsigned k = 0; k < e; ++k) pw = ideal_product(kZ, pw, ideal_of(kZ, BigInt(x)));
      EXPECT_TRUE(ideal_contained(kZ, pw, ann));
    }
}

// ---------------------------------------------------------------------------
// Verification suites.

TEST(Suites, AllNamedSuitesPass) {
  for (auto &n : suite_names()) {
    auto rep = run_suite(n);
    EXPECT_TRUE(rep.pass) << n << ": " << (rep.failures.empty() ? "" : rep.failures.front());
    EXPECT_FALSE(rep.evidence.empty()) << n;
  }
}
