#pragma once

// Smash nilpotence over artinian rings: if f ⊗ κ(p) ≃ 0 for every prime p
// then some tensor power f^{⊗t} is null-homotopic. The search checks the
// fiberwise hypothesis, then walks t = 1, 2, ... recording Ann(f^{⊗t}).
// Sources are bounded free complexes (unbounded ones cannot be stored).

#include "ttideal/complexes.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ttideal {

/// f^{⊗n}, built left to right as (...((f ⊗ f) ⊗ f) ...).
inline ChainMap tensor_power_map(const ChainMap &f, int n, std::size_t budget = kDefaultSizeBudget) {
  if (n < 1) fail(ErrorKind::Parse, "tensor power needs n >= 1");
  ChainMap acc = f;
  for (int k = 2; k <= n; ++k) acc = tensor(acc, f, budget);
  return acc;
}

struct FiberwiseCheck {
  bool pass = true;
  std::optional<PrimeIdeal> failing;
  std::string evidence; // f ⊗ κ(p) and why it is not null-homotopic
};

inline FiberwiseCheck check_fiberwise_vanishing(const ChainMap &f) {
  const Ring &r = f.ring();
  if (!r.is_artinian()) fail(ErrorKind::NotArtinian, r.str() + " has an infinite spectrum");
  for (auto &p : spec_list(r)) {
    auto fk = base_change_residue(f, p);
    auto nh = is_nullhomotopic(fk);
    if (!nh.nullhomotopic)
      return {false, p,
              "f ⊗ κ" + p.str() + " over " + fk.ring().str() + " is not null-homotopic (" + nh.certificate + ")\n" +
                  render_map(fk)};
  }
  return {};
}

struct NilpotenceResult {
  enum class Outcome { Vanishes, HypothesisFails, BudgetExhausted };

  Outcome outcome = Outcome::BudgetExhausted;
  int t = 0;                      // Vanishes: the index; BudgetExhausted: t_max
  std::optional<ChainMap> power;  // f^{⊗t} for Vanishes
  std::optional<Homotopy> witness;
  std::optional<PrimeIdeal> failing_prime;
  std::string evidence;
  std::vector<Ideal> ann_chain;   // Ann(f^{⊗1}), Ann(f^{⊗2}), ...
  bool minimal = false;           // f^{⊗(t-1)} tested not null-homotopic
};

inline std::string to_string(NilpotenceResult::Outcome o) {
  switch (o) {
  case NilpotenceResult::Outcome::Vanishes: return "Vanishes";
  case NilpotenceResult::Outcome::HypothesisFails: return "HypothesisFails";
  case NilpotenceResult::Outcome::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

inline NilpotenceResult find_nilpotence_index(const ChainMap &f, int t_max = 8,
                                              std::size_t budget = kDefaultSizeBudget) {
  NilpotenceResult out;
  auto hyp = check_fiberwise_vanishing(f);
  if (!hyp.pass) {
    out.outcome = NilpotenceResult::Outcome::HypothesisFails;
    out.failing_prime = hyp.failing;
    out.evidence = hyp.evidence;
    return out;
  }
  std::optional<ChainMap> power;
  for (int t = 1; t <= t_max; ++t) {
    try {
      power = t == 1 ? f : tensor(*power, f, budget);
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::SizeBudgetExceeded) throw;
      out.outcome = NilpotenceResult::Outcome::BudgetExhausted;
      out.t = t_max;
      out.evidence = "f^{⊗" + std::to_string(t) + "}: " + e.what();
      return out;
    }
    out.ann_chain.push_back(ann_map(*power));
    auto nh = is_nullhomotopic(*power);
    if (nh.nullhomotopic) {
      if (!verify_homotopy(*power, *nh.witness)) fail(ErrorKind::InvalidComplex, "nilpotence witness failed");
      out.outcome = NilpotenceResult::Outcome::Vanishes;
      out.t = t;
      out.power = power;
      out.witness = nh.witness;
      // Every earlier power was tested and found not null-homotopic.
      out.minimal = true;
      out.evidence = "f^{⊗" + std::to_string(t) + "} is null-homotopic";
      return out;
    }
  }
  out.outcome = NilpotenceResult::Outcome::BudgetExhausted;
  out.t = t_max;
  out.evidence = "no power up to t = " + std::to_string(t_max) + " is null-homotopic; last Ann = " +
                 (out.ann_chain.empty() ? "?" : render(f.ring(), out.ann_chain.back()));
  return out;
}

/// Whether the chain Ann(f) ⊆ Ann(f^{⊗2}) ⊆ ... ascends.
inline bool ann_chain_ascending(const Ring &r, const std::vector<Ideal> &chain) {
  for (std::size_t k = 1; k < chain.size(); ++k)
    if (!ideal_contained(r, chain[k - 1], chain[k])) return false;
  return true;
}

namespace detail {

inline FreeComplex change_ring(const FreeComplex &c, const Ring &q) {
  std::vector<std::size_t> ranks;
  std::map<int, ElemMatrix> diffs;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    ranks.push_back(c.rank(i));
    if (i > c.lo()) diffs[i] = c.d(i).map([&](const Elem &e) { return q.reduce(e); });
  }
  return FreeComplex(q, c.is_zero() ? 0 : c.lo(), ranks, diffs);
}

} // namespace detail

/// f ⊗ R/(x) over Z/n, as a map over Z/gcd(n, x); nullopt when R/(x) = 0.
inline std::optional<ChainMap> base_change_quotient(const ChainMap &f, const BigInt &x) {
  const Ring &r = f.ring();
  if (r.kind() != RingKind::IntegersMod) fail(ErrorKind::UnsupportedRing, "quotient base change needs Z/n");
  BigInt g = gcd(std::get<BigInt>(r.modulus()), std::get<BigInt>(r.reduce(BigInt(x))));
  if (g == 1) return std::nullopt;
  Ring q = Ring::integers_mod(g);
  std::map<int, ElemMatrix> comps;
  for (auto &[i, m] : f.components()) comps[i] = m.map([&](const Elem &e) { return q.reduce(e); });
  return ChainMap(detail::change_ring(f.source(), q), detail::change_ring(f.target(), q), comps);
}

/// Koszul nilpotence at n = 1 over Z/n: if f ⊗ R/(x) is null-homotopic
/// then so is f^{⊗2} ⊗ K(x). `applies` records whether the premise held.
struct KoszulNilpotenceCheck {
  bool applies = false;
  bool holds = false;
};

inline KoszulNilpotenceCheck koszul_nilpotence_check(const ChainMap &f, const BigInt &x,
                                                     std::size_t budget = kDefaultSizeBudget) {
  auto fq = base_change_quotient(f, x);
  KoszulNilpotenceCheck out;
  out.applies = !fq || is_nullhomotopic(*fq).nullhomotopic;
  if (!out.applies) return out;
  auto kx = koszul(f.ring(), {f.ring().reduce(BigInt(x))});
  out.holds = is_nullhomotopic(tensor(tensor_power_map(f, 2, budget), identity_map(kx), budget)).nullhomotopic;
  return out;
}

} // namespace ttideal
