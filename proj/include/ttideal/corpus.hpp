#pragma once

// Seeded random objects for sampling and property checks. A random complex
// is a direct sum of elementary pieces (R in one degree, or R --a--> R)
// whose differentials are then conjugated by random changes of basis, so
// the homology is known from the piece list without running Smith forms.

#include "ttideal/formal.hpp"

#include <random>
#include <vector>

namespace ttideal::corpus {

struct Piece {
  int degree = 0;     // R in `degree`, or target of R --a--> R (source in degree+1)
  bool cone = false;  // false: a lone free summand
  Elem a;
};

struct RandomComplex {
  FreeComplex complex;
  std::vector<Piece> pieces;
};

struct Options {
  std::size_t max_rank = 4;
  int max_length = 4;     // number of degrees
  int max_pieces = 5;
  long long max_entry = 40; // over Z; elsewhere entries range over the ring
};

inline Elem random_elem(const Ring &r, std::mt19937_64 &rng, long long max_entry = 40) {
  if (r.integer_kind()) {
    long long bound = r.kind() == RingKind::Integers ? max_entry : static_cast<long long>(std::get<BigInt>(r.modulus()));
    if (r.kind() == RingKind::Integers) return BigInt(std::uniform_int_distribution<long long>(-bound, bound)(rng));
    return r.reduce(BigInt(std::uniform_int_distribution<long long>(0, bound - 1)(rng)));
  }
  const auto p = r.p();
  std::size_t deg = 2;
  if (r.kind() == RingKind::PolyQuotient) deg = std::get<FpPoly>(r.modulus()).degree() - 1;
  if (r.kind() == RingKind::PrimeField) deg = 0;
  std::vector<std::int64_t> coeffs(deg + 1);
  for (auto &c : coeffs) c = std::uniform_int_distribution<std::int64_t>(0, p - 1)(rng);
  return r.reduce(FpPoly(p, coeffs));
}

namespace detail {

/// A random invertible matrix and its inverse, as a product of transvections.
inline std::pair<ElemMatrix, ElemMatrix> random_basis_change(const Ring &r, std::size_t n, std::mt19937_64 &rng) {
  ElemMatrix p(n, n, r.zero()), q(n, n, r.zero());
  for (std::size_t k = 0; k < n; ++k) p(k, k) = q(k, k) = r.one();
  if (n < 2) return {p, q};
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
    std::size_t a = idx(rng), b = idx(rng);
    if (a == b) continue;
    Elem c = random_elem(r, rng, 3);
    // p <- E_ab(c) p ;  q <- q E_ab(-c)
    for (std::size_t k = 0; k < n; ++k) p(a, k) = add(r, p(a, k), mul(r, c, p(b, k)));
    for (std::size_t k = 0; k < n; ++k) q(k, b) = add(r, q(k, b), mul(r, neg(r, c), q(k, a)));
  }
  return {p, q};
}

} // namespace detail

inline RandomComplex random_complex(const Ring &r, std::mt19937_64 &rng, const Options &opt = {}) {
  const int lo = std::uniform_int_distribution<int>(-1, 1)(rng);
  const int len = std::uniform_int_distribution<int>(1, opt.max_length)(rng);
  const int hi = lo + len - 1;
  std::map<int, std::size_t> ranks;
  RandomComplex out{FreeComplex::zero(r), {}};
  const int n_pieces = std::uniform_int_distribution<int>(1, opt.max_pieces)(rng);
  for (int k = 0; k < n_pieces; ++k) {
    Piece pc;
    pc.cone = len > 1 && std::bernoulli_distribution(0.85)(rng);
    pc.degree = std::uniform_int_distribution<int>(lo, pc.cone ? hi - 1 : hi)(rng);
    pc.a = random_elem(r, rng, opt.max_entry);
    if (ranks[pc.degree] + 1 > opt.max_rank || (pc.cone && ranks[pc.degree + 1] + 1 > opt.max_rank)) continue;
    ++ranks[pc.degree];
    if (pc.cone) ++ranks[pc.degree + 1];
    out.pieces.push_back(pc);
  }
  // Assemble the direct sum, tracking each piece's basis index per degree.
  std::map<int, std::size_t> used;
  std::map<int, ElemMatrix> diffs;
  for (int i = lo + 1; i <= hi; ++i) diffs[i] = ElemMatrix(ranks[i - 1], ranks[i], r.zero());
  for (auto &pc : out.pieces) {
    std::size_t row = used[pc.degree]++;
    if (pc.cone) {
      std::size_t col = used[pc.degree + 1]++;
      diffs[pc.degree + 1](row, col) = r.reduce(pc.a);
    }
  }
  std::map<int, std::pair<ElemMatrix, ElemMatrix>> change;
  for (int i = lo; i <= hi; ++i) change[i] = detail::random_basis_change(r, ranks[i], rng);
  std::vector<std::size_t> rank_list;
  for (int i = lo; i <= hi; ++i) {
    rank_list.push_back(ranks[i]);
    if (i > lo)
      diffs[i] = ttideal::detail::mat_mul(r, ttideal::detail::mat_mul(r, change[i - 1].first, diffs[i]), change[i].second);
  }
  out.complex = FreeComplex(r, lo, rank_list, diffs);
  return out;
}

/// a·id + (d s + s d) on a random complex, with a random homotopy s.
inline ChainMap random_endomorphism(const Ring &r, std::mt19937_64 &rng, const Options &opt = {}) {
  auto x = random_complex(r, rng, opt).complex;
  auto f = scalar_multiple(random_elem(r, rng, opt.max_entry), identity_map(x));
  Homotopy h;
  if (!x.is_zero())
    for (int i = x.lo() + 1; i <= x.hi(); ++i) {
      ElemMatrix s(x.rank(i), x.rank(i - 1), r.zero());
      for (std::size_t a = 0; a < s.rows(); ++a)
        for (std::size_t b = 0; b < s.cols(); ++b) s(a, b) = random_elem(r, rng, opt.max_entry);
      h.s[i] = s;
    }
  return add_boundary(f, h);
}

/// A bounded formal DVR complex: `len` degrees from 0, torsion exponents
/// in [1, max_exp], occasionally a free summand.
inline FormalComplex random_formal(std::mt19937_64 &rng, int max_exp = 6, int max_len = 4, double free_p = 0.15) {
  const int len = std::uniform_int_distribution<int>(1, max_len)(rng);
  std::vector<FgModule> h;
  for (int i = 0; i < len; ++i) {
    std::size_t f = std::bernoulli_distribution(free_p)(rng) ? 1 : 0;
    std::vector<Elem> gens;
    const int k = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int j = 0; j < k; ++j) gens.emplace_back(BigInt(std::uniform_int_distribution<int>(1, max_exp)(rng)));
    h.push_back(module_from_cyclics(Ring::dvr(), f, gens));
  }
  return bounded_formal(h, 0);
}

} // namespace ttideal::corpus
