#pragma once

// Spec R as a poset, specialization-closed subsets with exact set algebra,
// and the order-reversing correspondence between primes p and the tame
// prime thick tensor ideals S(p) = {X : X_p = 0}.

#include "ttideal/rings.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace ttideal {

/// A specialization-closed subset of Spec R in one of four exact shapes.
///
/// Over Z and F_p[t] the spcl subsets that arise from finite objects are:
/// empty, a finite set of maximal ideals, all maximal ideals but finitely
/// many, and Spec R itself. Over artinian rings and the DVR only Empty,
/// FinMax and AllSpec are used; CofinMax is reserved for infinite spectra.
class SpclSet {
public:
  enum class Kind { Empty, FinMax, CofinMax, AllSpec };

  static SpclSet empty(const Ring &r) { return SpclSet(r, Kind::Empty, {}); }
  static SpclSet all(const Ring &r) { return SpclSet(r, Kind::AllSpec, {}); }
  static SpclSet fin_max(const Ring &r, std::set<PrimeIdeal> ps) {
    return SpclSet(r, Kind::FinMax, std::move(ps)).normalized();
  }
  static SpclSet cofin_max(const Ring &r, std::set<PrimeIdeal> excluded) {
    return SpclSet(r, Kind::CofinMax, std::move(excluded)).normalized();
  }
  /// Max R.
  static SpclSet max_spec(const Ring &r) {
    if (finite_spectrum(r)) {
      std::set<PrimeIdeal> ms;
      for (auto &p : spec_list(r))
        if (p.is_maximal()) ms.insert(p);
      return fin_max(r, std::move(ms));
    }
    return cofin_max(r, {});
  }

  static bool finite_spectrum(const Ring &r) { return r.is_artinian() || r.is_dvr(); }

  const Ring &ring() const { return ring_; }
  Kind kind() const { return kind_; }
  /// Members (FinMax) or excluded maxima (CofinMax).
  const std::set<PrimeIdeal> &primes() const { return primes_; }

  bool contains(const PrimeIdeal &p) const {
    switch (kind_) {
    case Kind::Empty: return false;
    case Kind::AllSpec: return true;
    case Kind::FinMax: return primes_.count(p) > 0;
    case Kind::CofinMax: return p.is_maximal() && primes_.count(p) == 0;
    }
    return false;
  }

  bool operator==(const SpclSet &o) const {
    return ring_ == o.ring_ && kind_ == o.kind_ && primes_ == o.primes_;
  }
  bool operator!=(const SpclSet &o) const { return !(*this == o); }

  bool subseteq(const SpclSet &o) const {
    switch (kind_) {
    case Kind::Empty: return true;
    case Kind::AllSpec: return o.kind_ == Kind::AllSpec;
    case Kind::FinMax:
      return std::all_of(primes_.begin(), primes_.end(), [&](auto &p) { return o.contains(p); });
    case Kind::CofinMax:
      if (o.kind_ == Kind::AllSpec) return true;
      if (o.kind_ != Kind::CofinMax) return false;
      return std::includes(primes_.begin(), primes_.end(), o.primes_.begin(), o.primes_.end());
    }
    return false;
  }

  SpclSet unite(const SpclSet &o) const {
    if (kind_ == Kind::AllSpec || o.kind_ == Kind::AllSpec) return all(ring_);
    if (kind_ == Kind::Empty) return o;
    if (o.kind_ == Kind::Empty) return *this;
    if (kind_ == Kind::FinMax && o.kind_ == Kind::FinMax) {
      auto u = primes_;
      u.insert(o.primes_.begin(), o.primes_.end());
      return fin_max(ring_, std::move(u));
    }
    if (kind_ == Kind::CofinMax && o.kind_ == Kind::CofinMax) {
      std::set<PrimeIdeal> ex;
      std::set_intersection(primes_.begin(), primes_.end(), o.primes_.begin(), o.primes_.end(),
                            std::inserter(ex, ex.end()));
      return cofin_max(ring_, std::move(ex));
    }
    const SpclSet &cof = kind_ == Kind::CofinMax ? *this : o;
    const SpclSet &fin = kind_ == Kind::CofinMax ? o : *this;
    std::set<PrimeIdeal> ex;
    for (auto &p : cof.primes_)
      if (!fin.primes_.count(p)) ex.insert(p);
    return cofin_max(ring_, std::move(ex));
  }

  SpclSet intersect(const SpclSet &o) const {
    if (kind_ == Kind::Empty || o.kind_ == Kind::Empty) return empty(ring_);
    if (kind_ == Kind::AllSpec) return o;
    if (o.kind_ == Kind::AllSpec) return *this;
    if (kind_ == Kind::CofinMax && o.kind_ == Kind::CofinMax) {
      auto ex = primes_;
      ex.insert(o.primes_.begin(), o.primes_.end());
      return cofin_max(ring_, std::move(ex));
    }
    const SpclSet &keep = kind_ == Kind::FinMax ? *this : o;
    const SpclSet &other = kind_ == Kind::FinMax ? o : *this;
    std::set<PrimeIdeal> in;
    for (auto &p : keep.primes_)
      if (other.contains(p)) in.insert(p);
    return fin_max(ring_, std::move(in));
  }

  /// Text form: `{}`, `{(2),(3)}`, `cofinmax{(5)}`, `all`.
  std::string str() const {
    auto list = [&] {
      std::string s = "{";
      bool first = true;
      for (auto &p : primes_) {
        if (!first) s += ",";
        s += p.str();
        first = false;
      }
      return s + "}";
    };
    switch (kind_) {
    case Kind::Empty: return "{}";
    case Kind::AllSpec: return "all";
    case Kind::FinMax: return list();
    case Kind::CofinMax: return "cofinmax" + list();
    }
    return "?";
  }

private:
  SpclSet(Ring r, Kind k, std::set<PrimeIdeal> ps)
      : ring_(std::move(r)), kind_(k), primes_(std::move(ps)) {}

  SpclSet normalized() const {
    for (auto &p : primes_)
      if (!p.is_maximal() || !is_prime_of(ring_, p))
        fail(ErrorKind::Parse, p.str() + " is not a maximal ideal of " + ring_.str());
    if (kind_ == Kind::FinMax && primes_.empty()) return empty(ring_);
    if (finite_spectrum(ring_)) {
      if (kind_ == Kind::CofinMax) {
        std::set<PrimeIdeal> in;
        for (auto &p : spec_list(ring_))
          if (p.is_maximal() && !primes_.count(p)) in.insert(p);
        return fin_max(ring_, std::move(in));
      }
      // Artinian: the whole spectrum consists of maximal ideals.
      if (ring_.is_artinian() && primes_.size() == spec_list(ring_).size()) return all(ring_);
    }
    return *this;
  }

  Ring ring_;
  Kind kind_;
  std::set<PrimeIdeal> primes_;
};

/// Parses the text form of SpclSet.
inline SpclSet parse_spcl(const Ring &r, std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "all") return SpclSet::all(r);
  bool cof = false;
  if (s.rfind("cofinmax", 0) == 0) {
    cof = true;
    s = s.substr(8);
  }
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    fail(ErrorKind::Parse, "bad spcl set: " + std::string(text));
  std::set<PrimeIdeal> ps;
  std::string body = s.substr(1, s.size() - 2);
  std::size_t depth = 0, start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || (body[i] == ',' && depth == 0)) {
      if (i > start) ps.insert(parse_prime(r, body.substr(start, i - start)));
      start = i + 1;
    } else if (body[i] == '(') {
      ++depth;
    } else if (body[i] == ')') {
      --depth;
    }
  }
  if (cof) return SpclSet::cofin_max(r, std::move(ps));
  // A set naming (0) of a domain contains V((0)) = Spec R.
  for (auto &p : ps)
    if (p.is_zero()) return SpclSet::all(r);
  return SpclSet::fin_max(r, std::move(ps));
}

/// V(I).
inline SpclSet v_of(const Ring &r, const Ideal &i) {
  if (i.zero) return SpclSet::all(r);
  if (is_unit_ideal(r, i)) return SpclSet::empty(r);
  if (r.is_dvr()) return SpclSet::fin_max(r, {PrimeIdeal::dvr_max()});
  auto ps = prime_divisors_of_lift(r, i.generator);
  return SpclSet::fin_max(r, std::set<PrimeIdeal>(ps.begin(), ps.end()));
}

/// Supp S(p) = {q : q ⊄ p}.
inline SpclSet supp_of_Sp(const Ring &r, const PrimeIdeal &p) {
  if (!is_prime_of(r, p)) fail(ErrorKind::Parse, p.str() + " is not a prime of " + r.str());
  if (r.is_dvr())
    return p.is_zero() ? SpclSet::fin_max(r, {PrimeIdeal::dvr_max()}) : SpclSet::empty(r);
  if (r.is_artinian()) {
    std::set<PrimeIdeal> rest;
    for (auto &q : spec_list(r))
      if (q != p) rest.insert(q);
    return SpclSet::fin_max(r, std::move(rest));
  }
  if (p.is_zero()) return SpclSet::cofin_max(r, {});
  return SpclSet::cofin_max(r, {p});
}

/// Outcome of s on a support: the unique maximal element of the complement,
/// or a witness that there is none.
struct SOfSupport {
  bool prime = false;
  PrimeIdeal p;                   // when prime
  std::vector<PrimeIdeal> witness; // two incomparable complement maxima; empty if complement empty
  std::string reason;
};

namespace detail {

/// The first `count` maximal ideals of an infinite-spectrum ring outside
/// `skip`, in increasing order.
inline std::vector<PrimeIdeal> maximal_ideals_avoiding(const Ring &r, const std::set<PrimeIdeal> &skip,
                                                       std::size_t count) {
  std::vector<PrimeIdeal> out;
  if (r.integer_kind()) {
    for (BigInt q = 2; out.size() < count; ++q)
      if (is_prime(q) && !skip.count(PrimeIdeal::max(q))) out.push_back(PrimeIdeal::max(q));
    return out;
  }
  for (unsigned d = 1; out.size() < count; ++d)
    for (std::uint64_t k = 0; k < ipow(static_cast<std::uint64_t>(r.p()), d) && out.size() < count; ++k) {
      FpPoly g = nth_monic(r.p(), d, k);
      if (is_irreducible(g) && !skip.count(PrimeIdeal::max(g))) out.push_back(PrimeIdeal::max(g));
    }
  return out;
}

} // namespace detail

inline SOfSupport s_of_support(const SpclSet &w) {
  const Ring &r = w.ring();
  SOfSupport out;
  if (w.kind() == SpclSet::Kind::AllSpec) {
    out.reason = "complement is empty (the ideal would be the whole category)";
    return out;
  }
  std::vector<PrimeIdeal> maxima;
  if (SpclSet::finite_spectrum(r)) {
    std::vector<PrimeIdeal> comp;
    for (auto &q : spec_list(r))
      if (!w.contains(q)) comp.push_back(q);
    for (auto &q : comp) {
      bool dominated = std::any_of(comp.begin(), comp.end(),
                                   [&](auto &o) { return o != q && prime_contained(q, o); });
      if (!dominated) maxima.push_back(q);
    }
  } else if (w.kind() == SpclSet::Kind::CofinMax) {
    // Complement is {(0)} ∪ excluded.
    if (w.primes().empty()) maxima.push_back(PrimeIdeal::zero());
    else maxima.assign(w.primes().begin(), w.primes().end());
  } else {
    // Complement contains all but finitely many maximal ideals.
    maxima = detail::maximal_ideals_avoiding(r, w.primes(), 2);
    out.witness = maxima;
    out.reason = "complement has infinitely many maximal elements, e.g. " + maxima[0].str() +
                 " and " + maxima[1].str();
    return out;
  }
  if (maxima.size() == 1) {
    out.prime = true;
    out.p = maxima.front();
    return out;
  }
  out.witness.assign(maxima.begin(), maxima.begin() + std::min<std::size_t>(2, maxima.size()));
  out.reason = maxima.empty() ? "complement is empty"
                              : "complement has incomparable maximal elements " +
                                    out.witness[0].str() + " and " + out.witness[1].str();
  return out;
}

/// The finite-spectrum correspondence report for an artinian ring.
struct ArtinianSpcReport {
  Ring ring;
  std::vector<PrimeIdeal> primes;
  std::vector<std::pair<PrimeIdeal, SpclSet>> tame_primes; // p -> Supp S(p)
  std::vector<PrimeIdeal> mx;  // S(p) for p in Min R
  std::vector<PrimeIdeal> mn;  // S(m) for m in Max R
  bool s_of_S_identity = false;
  bool support_order_reversing = false;
  std::string note;
};

inline ArtinianSpcReport artinian_spc_report(const Ring &r) {
  if (!r.is_artinian()) fail(ErrorKind::NotArtinian, r.str() + " is not artinian");
  ArtinianSpcReport rep{r, spec_list(r), {}, {}, {}, true, true, {}};
  for (auto &p : rep.primes) {
    auto supp = supp_of_Sp(r, p);
    rep.tame_primes.emplace_back(p, supp);
    auto s = s_of_support(supp);
    rep.s_of_S_identity = rep.s_of_S_identity && s.prime && s.p == p;
  }
  // In an artinian ring every prime is both minimal and maximal.
  rep.mx = rep.primes;
  rep.mn = rep.primes;
  // Distinct primes are incomparable, so distinct S(p) must have incomparable supports.
  for (auto &[p, sp] : rep.tame_primes)
    for (auto &[q, sq] : rep.tame_primes)
      if (p != q && sp.subseteq(sq)) rep.support_order_reversing = false;
  if (rep.primes.size() == 1)
    rep.note = "local: 0 = S(" + rep.primes[0].str() + ") is the unique minimal prime thick tensor ideal";
  return rep;
}

} // namespace ttideal
