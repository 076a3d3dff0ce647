#pragma once

// Finitely generated modules over catalog rings in invariant-factor normal
// form, with the Smith normal form entry point, cyclic tensor/Tor, and the
// local invariants (localization, support, annihilator, Loewy length).
//
// Representation. Over Z and F_p[t] a module is P^r ⊕ P/d_1 ⊕ ... ⊕ P/d_k
// with d_1 | ... | d_k nonzero nonunits. Over an artinian ring R = P/(m) the
// same lift is used: free_rank counts summands isomorphic to R = P/m and the
// torsion list holds the remaining proper divisors of m. Over the DVR the
// torsion list holds exponents a (summand R/x^a), ascending.

#include "ttideal/spectra.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace ttideal {

struct IntMatrix {
  Ring ring;
  Matrix<Elem> entries;

  std::size_t rows() const { return entries.rows(); }
  std::size_t cols() const { return entries.cols(); }

  static IntMatrix zero(const Ring &r, std::size_t rows, std::size_t cols) {
    return {r, Matrix<Elem>(rows, cols, r.zero())};
  }
  static IntMatrix from_ints(const Ring &r, const std::vector<std::vector<long long>> &rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    auto m = zero(r, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < c; ++j)
        m.entries(i, j) = r.from_int(rows[i][j]);
    return m;
  }
  bool operator==(const IntMatrix &o) const { return ring == o.ring && entries == o.entries; }
};

struct FgModule {
  Ring ring;
  std::size_t free_rank = 0;
  std::vector<Elem> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const FgModule &o) const {
    return ring == o.ring && free_rank == o.free_rank && torsion == o.torsion;
  }
  bool operator!=(const FgModule &o) const { return !(*this == o); }

  /// e.g. `Z^2 + Z/2 + Z/6`, `R/x^3 + R`, `0`.
  std::string str() const {
    std::string base = ring.is_dvr() ? "R" : ring.kind() == RingKind::Integers ? "Z" : "R";
    std::vector<std::string> parts;
    for (auto &d : torsion) {
      if (ring.is_dvr()) {
        const auto &a = std::get<BigInt>(d);
        parts.push_back(a == 1 ? "R/x" : "R/x^" + a.str());
      } else {
        parts.push_back(base + "/(" + ring.render(d) + ")");
      }
    }
    if (free_rank == 1) parts.push_back(base);
    else if (free_rank > 1) parts.push_back(base + "^" + std::to_string(free_rank));
    if (parts.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i)
      s += (i ? " + " : "") + parts[i];
    return s;
  }
};

struct LoewyLength {
  bool infinite = false;
  BigInt value = 0;

  static LoewyLength finite(BigInt v) { return {false, std::move(v)}; }
  static LoewyLength inf() { return {true, 0}; }
  bool operator==(const LoewyLength &o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
  std::string str() const { return infinite ? "inf" : value.str(); }
};

// ---------------------------------------------------------------------------

struct SmithForm {
  std::vector<Elem> diag;
  IntMatrix left, right;
  IntMatrix left_inv, right_inv;
};

/// Smith normal form over Z, F_p[t], Z/n, F_p or F_p[t]/(f).
inline SmithForm smith_normal_form(const IntMatrix &m) {
  if (m.ring.is_dvr()) fail(ErrorKind::UnsupportedRing, "DVR matrices are never materialized");
  return visit_ring(m.ring, [&](const auto &ctx) {
    auto s = smith_normal_form(ctx, to_ctx(ctx, m.entries));
    SmithForm out{{},
                  {m.ring, from_ctx(ctx, s.left)},
                  {m.ring, from_ctx(ctx, s.right)},
                  {m.ring, from_ctx(ctx, s.left_inv)},
                  {m.ring, from_ctx(ctx, s.right_inv)}};
    for (auto &d : s.invariants(ctx))
      out.diag.push_back(from_ctx(ctx, d));
    return out;
  });
}

inline IntMatrix multiply(const IntMatrix &a, const IntMatrix &b) {
  if (a.ring != b.ring) fail(ErrorKind::RingMismatch, "matrix rings differ");
  if (a.cols() != b.rows()) fail(ErrorKind::InvalidComplex, "matrix shapes do not compose");
  return visit_ring(a.ring, [&](const auto &ctx) {
    return IntMatrix{a.ring, from_ctx(ctx, multiply(ctx, to_ctx(ctx, a.entries), to_ctx(ctx, b.entries)))};
  });
}

namespace detail {

/// P^gens / (span(rel_cols) + m P^gens) in normal form over ring r.
template <class Pid>
FgModule cokernel_module(const Ring &r, const Pid &pid, const typename Pid::value_type &m,
                         const MatrixOf<Pid> &rel_cols) {
  const std::size_t gens = rel_cols.rows();
  MatrixOf<Pid> rel = rel_cols;
  if (!pid.is_zero(m)) {
    auto mI = zeros(pid, gens, gens);
    for (std::size_t i = 0; i < gens; ++i)
      mI(i, i) = m;
    rel = hconcat(pid, rel, mI);
  }
  auto s = smith_normal_form(pid, rel);
  FgModule out{r, 0, {}};
  const auto mc = pid.canonical(m);
  for (std::size_t i = 0; i < gens; ++i) {
    auto d = i < rel.cols() ? pid.canonical(s.diag(i, i)) : pid.zero();
    if (pid.is_zero(d) || (!pid.is_zero(m) && d == mc)) ++out.free_rank;
    else if (!(d == pid.one())) out.torsion.push_back(from_ctx(pid, d));
  }
  return out;
}

inline void check_same_ring(const Ring &a, const Ring &b) {
  if (a != b) fail(ErrorKind::RingMismatch, a.str() + " vs " + b.str());
}

} // namespace detail

/// The module with generators = columns and relations = rows of m, i.e. the
/// cokernel of the transpose.
inline FgModule module_from_presentation(const IntMatrix &m) {
  if (m.ring.is_dvr()) fail(ErrorKind::UnsupportedRing, "DVR matrices are never materialized");
  return visit_cover(m.ring, [&](const auto &pid, const auto &mod) {
    return detail::cokernel_module(m.ring, pid, mod, transpose(to_ctx(pid, m.entries)));
  });
}

/// Normal form of a direct sum of cyclic modules R/(g) (generator 0 = free
/// summand). For the DVR the generators are exponents.
inline FgModule module_from_cyclics(const Ring &r, std::size_t free_rank, const std::vector<Elem> &gens) {
  if (r.is_dvr()) {
    FgModule out{r, free_rank, {}};
    std::vector<BigInt> ex;
    for (auto &g : gens)
      if (std::get<BigInt>(g) > 0) ex.push_back(std::get<BigInt>(g));
    std::sort(ex.begin(), ex.end());
    for (auto &e : ex)
      out.torsion.emplace_back(e);
    return out;
  }
  auto m = IntMatrix::zero(r, gens.size(), gens.size() + free_rank);
  for (std::size_t i = 0; i < gens.size(); ++i)
    m.entries(i, i) = r.reduce(gens[i]);
  return module_from_presentation(m);
}

inline FgModule direct_sum(const FgModule &a, const FgModule &b) {
  detail::check_same_ring(a.ring, b.ring);
  auto gens = a.torsion;
  gens.insert(gens.end(), b.torsion.begin(), b.torsion.end());
  return module_from_cyclics(a.ring, a.free_rank + b.free_rank, gens);
}

namespace detail {

inline Elem cyclic_gcd(const Ring &r, const Elem &d, const Elem &e) {
  if (r.is_dvr()) return std::min(std::get<BigInt>(d), std::get<BigInt>(e));
  if (r.integer_kind()) return gcd(std::get<BigInt>(d), std::get<BigInt>(e));
  return gcd(std::get<FpPoly>(d), std::get<FpPoly>(e));
}

inline void require_pid_or_dvr(const Ring &r, const char *what) {
  if (!r.is_pid_domain() && !r.is_dvr())
    fail(ErrorKind::UnsupportedRing, std::string(what) + " requires Z, GF(p)[t] or DVR, got " + r.str());
}

} // namespace detail

/// M ⊗ N over a PID or the DVR.
inline FgModule tensor_mod(const FgModule &m, const FgModule &n) {
  detail::check_same_ring(m.ring, n.ring);
  detail::require_pid_or_dvr(m.ring, "tensor_mod");
  std::vector<Elem> gens;
  for (std::size_t k = 0; k < n.free_rank; ++k)
    gens.insert(gens.end(), m.torsion.begin(), m.torsion.end());
  for (std::size_t k = 0; k < m.free_rank; ++k)
    gens.insert(gens.end(), n.torsion.begin(), n.torsion.end());
  for (auto &d : m.torsion)
    for (auto &e : n.torsion)
      gens.push_back(detail::cyclic_gcd(m.ring, d, e));
  return module_from_cyclics(m.ring, m.free_rank * n.free_rank, gens);
}

/// Tor_1(M, N) over a PID or the DVR.
inline FgModule tor1(const FgModule &m, const FgModule &n) {
  detail::check_same_ring(m.ring, n.ring);
  detail::require_pid_or_dvr(m.ring, "tor1");
  std::vector<Elem> gens;
  for (auto &d : m.torsion)
    for (auto &e : n.torsion)
      gens.push_back(detail::cyclic_gcd(m.ring, d, e));
  return module_from_cyclics(m.ring, 0, gens);
}

/// Whether M_p = 0.
inline bool localize_vanishes(const FgModule &m, const PrimeIdeal &p) {
  if (!is_prime_of(m.ring, p)) fail(ErrorKind::RingMismatch, p.str() + " is not a prime of " + m.ring.str());
  if (m.ring.is_dvr()) return p.is_zero() ? m.free_rank == 0 : m.is_zero();
  if (m.free_rank > 0) return false;
  if (p.is_zero()) return true;
  for (auto &d : m.torsion)
    if (ideal_in_prime(m.ring, ideal_of(m.ring, d), p)) return false;
  return true;
}

inline Ideal ann_module(const FgModule &m) {
  if (m.free_rank > 0) return zero_ideal(m.ring);
  if (m.torsion.empty()) return unit_ideal(m.ring);
  if (m.ring.is_dvr()) return dvr_power(std::get<BigInt>(m.torsion.back()));
  return ideal_of(m.ring, m.torsion.back());
}

inline SpclSet supp_module(const FgModule &m) { return v_of(m.ring, ann_module(m)); }

namespace detail {

/// Exponent of the prime pi in the lift d (d nonzero).
inline unsigned valuation(const Ring &r, const Elem &pi, Elem d) {
  unsigned v = 0;
  return visit_cover(r, [&](const auto &pid, const auto &) {
    auto x = to_ctx(pid, d);
    auto q = to_ctx(pid, pi);
    while (!pid.is_zero(x) && pid.divides(q, x)) {
      x = pid.quotient(q, x);
      ++v;
    }
    return v;
  });
}

} // namespace detail

/// Least i with (rad R)^i M = 0, over local catalog rings.
inline LoewyLength loewy_length(const FgModule &m) {
  if (m.is_zero()) return LoewyLength::finite(0);
  const Ring &r = m.ring;
  if (r.is_dvr()) {
    if (m.free_rank > 0) return LoewyLength::inf();
    return LoewyLength::finite(std::get<BigInt>(m.torsion.back()));
  }
  if (!r.is_artinian() || !r.is_local())
    fail(ErrorKind::UnsupportedRing, "Loewy length requires a local ring, got " + r.str());
  const Elem pi = spec_list(r).front().generator;
  unsigned best = 0;
  if (m.free_rank > 0) best = detail::valuation(r, pi, r.modulus());
  for (auto &d : m.torsion)
    best = std::max(best, detail::valuation(r, pi, d));
  return LoewyLength::finite(best);
}

} // namespace ttideal
