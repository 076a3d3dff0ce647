// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Expected values come from the reference arithmetic in
// oracle.hpp or from closed forms, never from the code under test.

#include "oracle.hpp"

#include "ttideal/nilpotence.hpp"
#include "ttideal/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>

using namespace ttideal;

namespace {

struct Result {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string &what) {
    if (!cond && ok) detail = what; // keep the first failure
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int n, const std::string &name, double limit_s, const std::function<Result()> &body) {
  auto t0 = std::chrono::steady_clock::now();
  Result r;
  try {
    r = body();
  } catch (const std::exception &e) {
    r.ok = false;
    r.detail = std::string("exception: ") + e.what();
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.ok && s >= limit_s) {
    r.ok = false;
    r.detail = "over the time limit";
  }
  if (!r.ok) ++failures;
  std::printf("[%s] %2d %s (%.2f s, limit %.0f s)%s%s\n", r.ok ? "PASS" : "FAIL", n, name.c_str(), s, limit_s,
              r.detail.empty() ? "" : ": ", r.detail.c_str());
  std::fflush(stdout);
}

Elem random_poly(std::mt19937_64 &rng, long long p, int max_deg) {
  int d = std::uniform_int_distribution<int>(0, max_deg)(rng);
  oracle::Poly f{p, std::vector<long long>(d + 1)};
  for (auto &c : f.c) c = std::uniform_int_distribution<long long>(0, p - 1)(rng);
  return oracle::to_elem(oracle::trim(f));
}

/// The ideal generated by a sequence, from reference gcds.
Ideal reference_ideal(const Ring &r, const std::vector<Elem> &xs) {
  if (r.integer_kind()) {
    long long g = 0;
    for (auto &x : xs) g = oracle::gcd(g, oracle::to_ll(x));
    return ideal_of(r, BigInt(g));
  }
  oracle::Poly g{r.p(), {}};
  for (auto &x : xs) g = oracle::gcd(g, oracle::from_elem(x));
  return ideal_of(r, oracle::to_elem(g));
}

std::vector<Ring> support_rings() { return {Ring::integers(), Ring::integers_mod(12), Ring::poly(2)}; }

// Membership in compact{S}: V(Ann X) ⊆ S, with V(Ann X) = Supp X from the pieces.
bool reference_member(const SpclSet &supp, const SpclSet &s) { return supp.subseteq(s); }

} // namespace

int main() {
  criterion(1, "Koszul annihilator Ann K(x) = (x) over Z and GF(5)[t]", 10, [] {
    Result res;
    std::mt19937_64 rng(11);
    for (auto r : {Ring::integers(), Ring::poly(5)})
      for (int k = 0; k < 50; ++k) {
        int len = std::uniform_int_distribution<int>(1, 3)(rng);
        std::vector<Elem> xs;
        for (int j = 0; j < len; ++j)
          xs.push_back(r.integer_kind() ? Elem(BigInt(std::uniform_int_distribution<int>(-40, 40)(rng)))
                                        : random_poly(rng, 5, 3));
        auto got = ann_complex(koszul(r, xs));
        res.check(got == reference_ideal(r, xs), r.str() + " sequence " + std::to_string(k));
      }
    return res;
  });

  criterion(2, "V(Ann X) = Supp X on 100 random complexes over Z, Z/12, GF(2)[t]", 30, [] {
    Result res;
    std::mt19937_64 rng(12);
    int count = 0;
    for (auto r : support_rings())
      for (int k = 0; k < 34; ++k, ++count) {
        auto rc = corpus::random_complex(r, rng);
        auto want = oracle::piece_support(r, rc.pieces);
        auto ann = ann_complex(rc.complex);
        auto supp = supp_complex(rc.complex);
        res.check(ann == ideal_of(r, oracle::piece_ann(r, rc.pieces)), r.str() + ": Ann differs from the pieces");
        res.check(supp == want, r.str() + ": Supp " + supp.str() + " vs " + want.str());
        res.check(v_of(r, ann) == supp, r.str() + ": V(Ann) != Supp");
      }
    res.check(count >= 100, "corpus too small");
    return res;
  });

  criterion(3, "Supp(X ⊗ Y) = Supp X ∩ Supp Y on 100 random pairs", 30, [] {
    Result res;
    std::mt19937_64 rng(13);
    corpus::Options small;
    small.max_rank = 3;
    small.max_length = 3;
    for (auto r : support_rings())
      for (int k = 0; k < 34; ++k) {
        auto x = corpus::random_complex(r, rng, small), y = corpus::random_complex(r, rng, small);
        auto want = oracle::piece_support(r, x.pieces).intersect(oracle::piece_support(r, y.pieces));
        auto got = supp_complex(tensor(x.complex, y.complex));
        res.check(got == want, r.str() + ": " + got.str() + " vs " + want.str());
      }
    return res;
  });

  criterion(4, "s(Supp S(p)) = p on Z/12, Z/30, GF(2)[t]/(t^2*(t+1)), DVR and Z", 1, [] {
    Result res;
    auto poly = [](std::vector<long long> c) { return PrimeIdeal::max(oracle::to_elem(oracle::Poly{2, c})); };
    std::vector<std::pair<Ring, std::vector<PrimeIdeal>>> cases{
        {Ring::integers_mod(12), {PrimeIdeal::max(BigInt(2)), PrimeIdeal::max(BigInt(3))}},
        {Ring::integers_mod(30),
         {PrimeIdeal::max(BigInt(2)), PrimeIdeal::max(BigInt(3)), PrimeIdeal::max(BigInt(5))}},
        {parse_ring("GF(2)[t]/(t^2*(t+1))"), {poly({0, 1}), poly({1, 1})}},
        {Ring::dvr(), {PrimeIdeal::zero(), PrimeIdeal::dvr_max()}},
        {Ring::integers(),
         {PrimeIdeal::zero(), PrimeIdeal::max(BigInt(2)), PrimeIdeal::max(BigInt(3)), PrimeIdeal::max(BigInt(5)),
          PrimeIdeal::max(BigInt(7))}}};
    for (auto &[r, ps] : cases) {
      if (r.is_artinian() || r.is_dvr()) {
        auto listed = spec_list(r);
        res.check(std::set<PrimeIdeal>(listed.begin(), listed.end()) == std::set<PrimeIdeal>(ps.begin(), ps.end()),
                  r.str() + ": spectrum differs");
      }
      for (auto &p : ps) {
        auto s = s_of_support(supp_of_Sp(r, p));
        res.check(s.prime && s.p == p, r.str() + " " + p.str());
      }
    }
    return res;
  });

  criterion(5, "artinian classification: 4, 8, 2 ideals, lattice tables, 30 sampled objects", 30, [] {
    Result res;
    std::mt19937_64 rng(15);
    for (long long n : {12LL, 30LL, 8LL}) {
      Ring r = Ring::integers_mod(BigInt(n));
      auto c = enumerate_artinian(r, 30, 15);
      const std::size_t expect = std::size_t(1) << oracle::prime_divisors(n).size();
      res.check(c.ideals.size() == expect, r.str() + ": " + std::to_string(c.ideals.size()) + " ideals");
      for (std::size_t a = 0; a < c.ideals.size(); ++a)
        for (std::size_t b = 0; b < c.ideals.size(); ++b) {
          res.check(c.subsets[c.meet_table[a][b]] == c.subsets[a].intersect(c.subsets[b]), r.str() + ": meet table");
          res.check(c.subsets[c.join_table[a][b]] == c.subsets[a].unite(c.subsets[b]), r.str() + ": join table");
        }
      for (int k = 0; k < 30; ++k) {
        auto x = corpus::random_complex(r, rng);
        auto supp = oracle::piece_support(r, x.pieces);
        for (std::size_t m = 0; m < c.ideals.size(); ++m)
          res.check((member(c.ideals[m], x.complex).answer == Answer::Yes) == reference_member(supp, c.subsets[m]),
                    r.str() + ": membership in " + c.ideals[m].str());
      }
    }
    return res;
  });

  criterion(6, "compact lattice <A>∧<B> = <A∩B>, <A>∨<B> = <A∪B> on a 30-object corpus over Z", 30, [] {
    Result res;
    const Ring z = Ring::integers();
    std::mt19937_64 rng(16);
    std::vector<corpus::RandomComplex> objs;
    for (int k = 0; k < 30; ++k) objs.push_back(corpus::random_complex(z, rng));
    const std::vector<long long> base{2, 3, 5};
    auto set_of = [&](unsigned mask) {
      std::set<PrimeIdeal> s;
      for (unsigned k = 0; k < 3; ++k)
        if (mask >> k & 1) s.insert(PrimeIdeal::max(BigInt(base[k])));
      return SpclSet::fin_max(z, s);
    };
    for (unsigned a = 0; a < 8; ++a)
      for (unsigned b = 0; b < 8; ++b) {
        auto A = IdealDescriptor::compact(set_of(a)), B = IdealDescriptor::compact(set_of(b));
        auto m = meet(A, B), j = join(A, B);
        for (auto &x : objs) {
          auto supp = oracle::piece_support(z, x.pieces);
          bool in_meet = member(m, x.complex).answer == Answer::Yes;
          bool in_join = member(j, x.complex).answer == Answer::Yes;
          res.check(in_meet == reference_member(supp, set_of(a & b)), "meet of masks " + std::to_string(a) + "," +
                                                                          std::to_string(b));
          res.check(in_join == reference_member(supp, set_of(a | b)), "join of masks " + std::to_string(a) + "," +
                                                                          std::to_string(b));
          bool in_a = member(A, x.complex).answer == Answer::Yes, in_b = member(B, x.complex).answer == Answer::Yes;
          res.check(in_meet == (in_a && in_b), "meet is not the intersection of ideals");
        }
      }
    return res;
  });

  criterion(7, "nilpotence: Vanishes(2), Vanishes(3), Vanishes(2), HypothesisFails((3))", 10, [] {
    Result res;
    struct Case {
      long long n, a;
    };
    for (auto [n, a] : std::vector<Case>{{4, 2}, {8, 2}, {9, 3}, {6, 2}}) {
      Ring r = Ring::integers_mod(BigInt(n));
      auto x = FreeComplex::free_module(r, 1);
      auto f = scalar_multiple(r.reduce(BigInt(a)), identity_map(x));
      auto got = find_nilpotence_index(f);
      // Reference: least t with a^t = 0 mod n, or a prime of n not dividing a.
      long long t = 0, v = 1;
      for (int k = 1; k <= 8 && t == 0; ++k)
        if ((v = v * a % n) == 0) t = k;
      std::string label = r.str() + " " + std::to_string(a) + "·id";
      if (t) {
        res.check(got.outcome == NilpotenceResult::Outcome::Vanishes && got.t == t, label + ": expected Vanishes(" +
                                                                                        std::to_string(t) + ")");
        if (got.witness) res.check(verify_homotopy(*got.power, *got.witness), label + ": witness");
        if (t >= 2)
          res.check(!is_nullhomotopic(tensor_power_map(f, static_cast<int>(t) - 1)).nullhomotopic,
                    label + ": not minimal");
      } else {
        long long bad = 0;
        for (auto q : oracle::prime_divisors(n))
          if (a % q != 0) bad = q;
        res.check(got.outcome == NilpotenceResult::Outcome::HypothesisFails && got.failing_prime &&
                      *got.failing_prime == PrimeIdeal::max(BigInt(bad)),
                  label + ": expected HypothesisFails((" + std::to_string(bad) + "))");
      }
    }
    return res;
  });

  criterion(8, "f ⊗ R/(2) ≃ 0 implies f^{⊗2} ⊗ K(2) ≃ 0 on 20 maps over Z/4", 30, [] {
    Result res;
    const Ring r = Ring::integers_mod(4);
    std::mt19937_64 rng(18);
    corpus::Options small;
    small.max_rank = 2;
    small.max_length = 2;
    small.max_pieces = 2;
    int premises = 0;
    for (int tries = 0; premises < 20 && tries < 400; ++tries) {
      auto f = corpus::random_endomorphism(r, rng, small);
      auto fq = base_change_quotient(f, 2);
      if (fq && !is_nullhomotopic(*fq).nullhomotopic) continue;
      ++premises;
      auto g = tensor(tensor_power_map(f, 2), identity_map(koszul(r, {r.reduce(BigInt(2))})));
      auto nh = is_nullhomotopic(g);
      res.check(nh.nullhomotopic && verify_homotopy(g, *nh.witness), "map " + std::to_string(premises));
    }
    res.check(premises == 20, "only " + std::to_string(premises) + " sampled maps satisfy the premise");
    return res;
  });

  criterion(9, "DVR chain: minimal_c(G_c) = c, factorial NoC, G_{c+1} outside L_c", 1, [] {
    Result res;
    for (int c = 1; c <= 6; ++c)
      res.check(minimal_c(g_complex(c)) == MinimalC::some(c), "minimal_c(G" + std::to_string(c) + ")");
    res.check(minimal_c(factorial_complex()).kind == MinimalC::Kind::NoC, "factorial complex");
    for (int c = 1; c <= 5; ++c)
      res.check(member(IdealDescriptor::lc(c), g_complex(c + 1)).answer == Answer::No,
                "G" + std::to_string(c + 1) + " in L" + std::to_string(c));
    return res;
  });

  criterion(10, "formal identity suite at W = 32 (16 for the quadratic one)", 30, [] {
    Result res;
    for (auto &name : identity_names()) {
      auto rep = verify_identity(name, IdentityParams{}, name == "lemma7.20" ? 16 : 32);
      res.check(rep.pass && !rep.evidence.empty(),
                name + (rep.failures.empty() ? std::string(" produced no checks") : ": " + rep.failures.front()));
    }
    return res;
  });

  criterion(11, "Künneth: tensor_formal matches free tensor homology over Z at (2) on 30 pairs", 60, [] {
    Result res;
    std::mt19937_64 rng(21);
    const Ring z = Ring::integers();
    const PrimeIdeal two = PrimeIdeal::max(BigInt(2));
    const int window = 10;
    for (int k = 0; k < 30; ++k) {
      auto x = corpus::random_formal(rng), y = corpus::random_formal(rng);
      auto formal = tensor_formal(x, y, window);
      auto free = tensor(realize_formal(x, z, two, window), realize_formal(y, z, two, window));
      for (int n = 0; n < window; ++n) {
        // Reference: R/x^a ⊗ R/x^b = Tor_1 = R/x^min(a,b); R ⊗ M = M; Tor_1(R, -) = 0.
        std::multiset<long long> tors;
        std::size_t rank = 0;
        auto cyclics = [](const FgModule &m) {
          std::vector<long long> v;
          for (auto &e : m.torsion) v.push_back(oracle::to_ll(e));
          return v;
        };
        for (int i = 0; i <= n; ++i) {
          auto a = x.known_module_at(i), b = y.known_module_at(n - i);
          rank += a.free_rank * b.free_rank;
          for (auto e : cyclics(a)) {
            for (std::size_t f = 0; f < b.free_rank; ++f) tors.insert(e);
            for (auto g : cyclics(b)) tors.insert(std::min(e, g));
          }
          for (auto g : cyclics(b))
            for (std::size_t f = 0; f < a.free_rank; ++f) tors.insert(g);
        }
        for (int i = 0; i <= n - 1; ++i) {
          auto a = x.known_module_at(i), b = y.known_module_at(n - 1 - i);
          for (auto e : cyclics(a))
            for (auto g : cyclics(b)) tors.insert(std::min(e, g));
        }
        auto fm = formal.known_module_at(n);
        auto lm = localize_to_dvr(homology_at(free, n), two);
        auto as_set = [&](const FgModule &m) {
          auto v = cyclics(m);
          return std::multiset<long long>(v.begin(), v.end());
        };
        std::string where = "pair " + std::to_string(k) + " degree " + std::to_string(n);
        res.check(fm.free_rank == rank && as_set(fm) == tors, where + ": formal " + fm.str());
        res.check(lm.free_rank == rank && as_set(lm) == tors, where + ": free " + lm.str());
      }
    }
    return res;
  });

  criterion(12, "fiber report c_max = 3: >= 4 separated primes over (0), {0} over (x)", 5, [] {
    Result res;
    auto rep = dvr_fiber_report(3);
    res.check(rep.over_zero.size() >= 4, "too few primes over (0)");
    const auto candidates = [] {
      std::vector<FormalComplex> v{factorial_complex()};
      for (int c = 1; c <= 4; ++c) v.push_back(g_complex(c));
      return v;
    }();
    for (std::size_t a = 0; a < rep.over_zero.size(); ++a) {
      res.check(rep.over_zero[a].s.prime && rep.over_zero[a].s.p == PrimeIdeal::zero(),
                rep.over_zero[a].name + ": s is not (0)");
      for (std::size_t b = a + 1; b < rep.over_zero.size(); ++b) {
        const auto &lo = rep.over_zero[a].ideal, &hi = rep.over_zero[b].ideal;
        res.check(!(lo == hi), "repeated prime " + lo.str());
        bool separated = false;
        for (auto &w : candidates)
          separated = separated || (member(hi, w).answer == Answer::Yes && member(lo, w).answer == Answer::No);
        res.check(separated, "no witness separates " + lo.str() + " and " + hi.str());
      }
    }
    for (auto &w : rep.witnesses) res.check(w.ok(), "reported witness " + w.complex + " fails");
    res.check(rep.over_max.size() == 1, "fiber over (x) is not a single prime");
    if (!rep.over_max.empty()) {
      const auto &zero = rep.over_max.front();
      res.check(zero.support.kind() == SpclSet::Kind::Empty && zero.s.prime && zero.s.p == PrimeIdeal::dvr_max(),
                "fiber over (x) is not the zero ideal");
      res.check(member(zero.ideal, g_complex(1)).answer == Answer::No, "G1 lies in the prime over (x)");
    }
    return res;
  });

  criterion(13, "closure diagram over Z/12 and the DVR", 5, [] {
    Result res;
    std::vector<IdealDescriptor> ds;
    const Ring z12 = Ring::integers_mod(12), dvr = Ring::dvr();
    const PrimeIdeal p2 = PrimeIdeal::max(BigInt(2)), p3 = PrimeIdeal::max(BigInt(3));
    for (auto s : {std::set<PrimeIdeal>{}, {p2}, {p3}, {p2, p3}}) {
      ds.push_back(IdealDescriptor::compact(SpclSet::fin_max(z12, s)));
      ds.push_back(IdealDescriptor::tame(SpclSet::fin_max(z12, s)));
    }
    for (auto &p : {p2, p3}) ds.push_back(IdealDescriptor::sp(z12, p));
    ds.push_back(IdealDescriptor::zero(z12));
    ds.push_back(IdealDescriptor::whole(z12));
    auto k = [&](long long a) { return koszul(z12, {z12.reduce(BigInt(a))}); };
    ds.push_back(IdealDescriptor::generated(z12, {k(2)}));
    ds.push_back(IdealDescriptor::generated(z12, {k(3), k(4)}));
    for (auto s : {SpclSet::empty(dvr), SpclSet::fin_max(dvr, {PrimeIdeal::dvr_max()}), SpclSet::all(dvr)}) {
      ds.push_back(IdealDescriptor::compact(s));
      ds.push_back(IdealDescriptor::tame(s));
    }
    for (auto &p : {PrimeIdeal::zero(), PrimeIdeal::dvr_max()}) ds.push_back(IdealDescriptor::sp(dvr, p));
    ds.push_back(IdealDescriptor::zero(dvr));
    ds.push_back(IdealDescriptor::whole(dvr));
    for (int c = 1; c <= 4; ++c) ds.push_back(IdealDescriptor::lc(c));

    for (auto &d : ds) {
      res.check(supp_descriptor(tame_closure(d)) == supp_descriptor(d), d.str() + ": tame closure moves the support");
      bool tame = d.kind == IdealDescriptor::Kind::Tame || d.kind == IdealDescriptor::Kind::Sp ||
                  d.kind == IdealDescriptor::Kind::Zero || d.kind == IdealDescriptor::Kind::Whole;
      if (tame || d.ring.is_artinian()) {
        auto rad = rad_closure(d);
        res.check(rad.radical && *rad.radical == normalize(d), d.str() + ": radical closure is not the identity");
      }
    }
    for (int c = 1; c <= 4; ++c) {
      auto l = IdealDescriptor::lc(c);
      auto t = tame_closure(l);
      res.check(!(t == normalize(l)), "tame closure of L" + std::to_string(c) + " is L" + std::to_string(c));
      res.check(member(t, factorial_complex()).answer == Answer::Yes &&
                    member(l, factorial_complex()).answer == Answer::No,
                "factorial complex does not separate L" + std::to_string(c) + " from its tame closure");
    }
    return res;
  });

  std::printf("%d of 13 criteria failed\n", failures);
  return failures ? 1 : 0;
}
