#pragma once

// Bounded complexes of finite free modules over the arithmetic catalog rings
// (everything except the DVR), chain maps and null-homotopies.
//
// Indexing is homological: d_i : X_i -> X_{i-1}. Shift is X[n]_i = X_{i-n}
// with differential (-1)^n d; cone(f)_n = X_{n-1} ⊕ Y_n with
// d(x, y) = (-dx, f x + dy); the tensor product uses the sign
// d(x ⊗ y) = dx ⊗ y + (-1)^|x| x ⊗ dy and orders the basis of degree n by
// the degree of the left factor, then lexicographically. A homotopy s has
// components s_i : X_{i-1} -> Y_i and witnesses f_i = d_{i+1} s_{i+1} + s_i d_i.

#include "ttideal/modules.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace ttideal {

using ElemMatrix = Matrix<Elem>;

inline constexpr std::size_t kDefaultSizeBudget = 10000;

namespace detail {

inline ElemMatrix zero_matrix(const Ring &r, std::size_t rows, std::size_t cols) {
  return ElemMatrix(rows, cols, r.zero());
}
inline ElemMatrix mat_mul(const Ring &r, const ElemMatrix &a, const ElemMatrix &b) {
  return visit_ring(r, [&](const auto &c) { return from_ctx(c, multiply(c, to_ctx(c, a), to_ctx(c, b))); });
}
inline ElemMatrix mat_add(const Ring &r, const ElemMatrix &a, const ElemMatrix &b) {
  return visit_ring(r, [&](const auto &c) { return from_ctx(c, add(c, to_ctx(c, a), to_ctx(c, b))); });
}
inline ElemMatrix mat_scale(const Ring &r, const Elem &s, const ElemMatrix &a) {
  return visit_ring(r, [&](const auto &c) { return from_ctx(c, scale(c, to_ctx(c, s), to_ctx(c, a))); });
}
inline ElemMatrix mat_reduce(const Ring &r, const ElemMatrix &a) {
  return a.map([&](const Elem &e) { return r.reduce(e); });
}
inline bool mat_is_zero(const ElemMatrix &a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!is_zero(a(i, j))) return false;
  return true;
}

} // namespace detail

class FreeComplex {
public:
  /// ranks[k] is the rank in degree lo + k; diffs maps i to d_i of shape
  /// rank(i-1) x rank(i). Missing differentials are zero. Zero ranks at
  /// either end are trimmed.
  FreeComplex(Ring r, int lo, std::vector<std::size_t> ranks, std::map<int, ElemMatrix> diffs = {})
      : ring_(std::move(r)) {
    if (ring_.is_dvr())
      fail(ErrorKind::UnsupportedRing, "complexes over the DVR are handled by formal complexes");
    std::size_t first = 0, last = ranks.size();
    while (first < last && ranks[first] == 0) ++first;
    while (last > first && ranks[last - 1] == 0) --last;
    lo_ = first < last ? lo + static_cast<int>(first) : 0;
    ranks_.assign(ranks.begin() + static_cast<long>(first), ranks.begin() + static_cast<long>(last));
    for (auto &[i, m] : diffs) {
      if (m.rows() != rank(i - 1) || m.cols() != rank(i))
        fail(ErrorKind::InvalidComplex, "d_" + std::to_string(i) + " has shape " + std::to_string(m.rows()) +
                                            "x" + std::to_string(m.cols()) + ", expected " +
                                            std::to_string(rank(i - 1)) + "x" + std::to_string(rank(i)));
    }
    for (int i = lo_ + 1; i <= hi(); ++i) {
      auto it = diffs.find(i);
      diffs_.push_back(it == diffs.end() ? detail::zero_matrix(ring_, rank(i - 1), rank(i))
                                         : detail::mat_reduce(ring_, it->second));
    }
    for (int i = lo_ + 2; i <= hi(); ++i)
      if (!detail::mat_is_zero(detail::mat_mul(ring_, d(i - 1), d(i))))
        fail(ErrorKind::InvalidComplex, "d_" + std::to_string(i - 1) + " d_" + std::to_string(i) + " != 0");
  }

  static FreeComplex zero(const Ring &r) { return FreeComplex(r, 0, {}); }
  /// R^rank concentrated in one degree.
  static FreeComplex free_module(const Ring &r, std::size_t rank, int degree = 0) {
    return FreeComplex(r, degree, {rank});
  }
  /// R --a--> R in degrees degree+1, degree.
  static FreeComplex two_term(const Ring &r, const Elem &a, int degree = 0) {
    ElemMatrix m(1, 1, r.reduce(a));
    return FreeComplex(r, degree, {1, 1}, {{degree + 1, m}});
  }

  const Ring &ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  bool is_zero() const { return ranks_.empty(); }

  std::size_t rank(int i) const {
    if (i < lo_ || i > hi()) return 0;
    return ranks_[static_cast<std::size_t>(i - lo_)];
  }
  std::size_t total_rank() const {
    std::size_t t = 0;
    for (auto r : ranks_) t += r;
    return t;
  }
  /// d_i : X_i -> X_{i-1}.
  ElemMatrix d(int i) const {
    if (i <= lo_ || i > hi()) return detail::zero_matrix(ring_, rank(i - 1), rank(i));
    return diffs_[static_cast<std::size_t>(i - lo_ - 1)];
  }

  bool operator==(const FreeComplex &o) const {
    return ring_ == o.ring_ && lo_ == o.lo_ && ranks_ == o.ranks_ && diffs_ == o.diffs_;
  }
  bool operator!=(const FreeComplex &o) const { return !(*this == o); }

private:
  Ring ring_;
  int lo_ = 0;
  std::vector<std::size_t> ranks_;
  std::vector<ElemMatrix> diffs_; // d_{lo+1} .. d_hi
};

namespace detail {

inline void degree_span(const FreeComplex &x, const FreeComplex &y, int &lo, int &hi) {
  if (x.is_zero() && y.is_zero()) {
    lo = 0;
    hi = -1;
  } else if (x.is_zero()) {
    lo = y.lo();
    hi = y.hi();
  } else if (y.is_zero()) {
    lo = x.lo();
    hi = x.hi();
  } else {
    lo = std::min(x.lo(), y.lo());
    hi = std::max(x.hi(), y.hi());
  }
}

} // namespace detail

class ChainMap {
public:
  /// f maps i to f_i : X_i -> Y_i of shape rank_Y(i) x rank_X(i); missing
  /// components are zero. The chain condition is validated.
  ChainMap(FreeComplex source, FreeComplex target, std::map<int, ElemMatrix> f = {})
      : source_(std::move(source)), target_(std::move(target)) {
    if (source_.ring() != target_.ring()) fail(ErrorKind::RingMismatch, "chain map between different rings");
    const Ring &r = source_.ring();
    for (auto &[i, m] : f) {
      if (m.rows() != target_.rank(i) || m.cols() != source_.rank(i))
        fail(ErrorKind::InvalidComplex, "f_" + std::to_string(i) + " has the wrong shape");
      if (source_.rank(i) && target_.rank(i)) f_[i] = detail::mat_reduce(r, m);
    }
    int lo, hi;
    detail::degree_span(source_, target_, lo, hi);
    for (int i = lo; i <= hi + 1; ++i) {
      auto lhs = detail::mat_mul(r, target_.d(i), at(i));
      auto rhs = detail::mat_mul(r, at(i - 1), source_.d(i));
      if (lhs != rhs) fail(ErrorKind::InvalidComplex, "f does not commute with d in degree " + std::to_string(i));
    }
  }

  const FreeComplex &source() const { return source_; }
  const FreeComplex &target() const { return target_; }
  const Ring &ring() const { return source_.ring(); }

  ElemMatrix at(int i) const {
    auto it = f_.find(i);
    if (it != f_.end()) return it->second;
    return detail::zero_matrix(source_.ring(), target_.rank(i), source_.rank(i));
  }
  const std::map<int, ElemMatrix> &components() const { return f_; }

  bool operator==(const ChainMap &o) const {
    return source_ == o.source_ && target_ == o.target_ && f_ == o.f_;
  }

private:
  FreeComplex source_, target_;
  std::map<int, ElemMatrix> f_;
};

/// s_i : X_{i-1} -> Y_i.
struct Homotopy {
  std::map<int, ElemMatrix> s;
};

inline ElemMatrix homotopy_at(const ChainMap &f, const Homotopy &h, int i) {
  auto it = h.s.find(i);
  if (it != h.s.end()) return it->second;
  return detail::zero_matrix(f.ring(), f.target().rank(i), f.source().rank(i - 1));
}

/// Whether f_i = d_{i+1} s_{i+1} + s_i d_i in every degree.
inline bool verify_homotopy(const ChainMap &f, const Homotopy &h) {
  const Ring &r = f.ring();
  for (auto &[i, m] : h.s)
    if (m.rows() != f.target().rank(i) || m.cols() != f.source().rank(i - 1)) return false;
  int lo, hi;
  detail::degree_span(f.source(), f.target(), lo, hi);
  for (int i = lo; i <= hi; ++i) {
    auto sum = detail::mat_add(r, detail::mat_mul(r, f.target().d(i + 1), homotopy_at(f, h, i + 1)),
                               detail::mat_mul(r, homotopy_at(f, h, i), f.source().d(i)));
    if (sum != f.at(i)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Elementary maps.

inline ChainMap identity_map(const FreeComplex &x) {
  std::map<int, ElemMatrix> f;
  for (int i = x.lo(); i <= x.hi() && !x.is_zero(); ++i) {
    auto m = detail::zero_matrix(x.ring(), x.rank(i), x.rank(i));
    for (std::size_t a = 0; a < x.rank(i); ++a) m(a, a) = x.ring().one();
    f[i] = m;
  }
  return ChainMap(x, x, f);
}

inline ChainMap zero_map(const FreeComplex &x, const FreeComplex &y) { return ChainMap(x, y); }

inline ChainMap scalar_multiple(const Elem &a, const ChainMap &f) {
  std::map<int, ElemMatrix> g;
  for (auto &[i, m] : f.components())
    g[i] = detail::mat_scale(f.ring(), a, m);
  return ChainMap(f.source(), f.target(), g);
}

inline ChainMap map_sum(const ChainMap &f, const ChainMap &g) {
  if (f.source() != g.source() || f.target() != g.target())
    fail(ErrorKind::InvalidComplex, "summands must share source and target");
  std::map<int, ElemMatrix> h = f.components();
  for (auto &[i, m] : g.components())
    h[i] = h.count(i) ? detail::mat_add(f.ring(), h[i], m) : m;
  return ChainMap(f.source(), f.target(), h);
}

/// g ∘ f.
inline ChainMap compose(const ChainMap &g, const ChainMap &f) {
  if (f.target() != g.source()) fail(ErrorKind::InvalidComplex, "maps do not compose");
  std::map<int, ElemMatrix> h;
  for (auto &[i, m] : f.components())
    h[i] = detail::mat_mul(f.ring(), g.at(i), m);
  return ChainMap(f.source(), g.target(), h);
}

/// f + d s + s d for a homotopy s with components s_i : X_{i-1} -> Y_i.
inline ChainMap add_boundary(const ChainMap &f, const Homotopy &h) {
  const Ring &r = f.ring();
  std::map<int, ElemMatrix> g;
  int lo, hi;
  detail::degree_span(f.source(), f.target(), lo, hi);
  for (int i = lo; i <= hi; ++i) {
    if (!f.source().rank(i) || !f.target().rank(i)) continue;
    g[i] = detail::mat_add(
        r, f.at(i),
        detail::mat_add(r, detail::mat_mul(r, f.target().d(i + 1), homotopy_at(f, h, i + 1)),
                        detail::mat_mul(r, homotopy_at(f, h, i), f.source().d(i))));
  }
  return ChainMap(f.source(), f.target(), g);
}

// ---------------------------------------------------------------------------
// Constructions.

namespace detail {

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t> &cur,
                    std::vector<std::vector<std::size_t>> &out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

} // namespace detail

/// Koszul complex on xs: degree k has basis the k-subsets S of {0..n-1} in
/// lexicographic order and d(e_S) = sum_j (-1)^j x_{s_j} e_{S - s_j}.
inline FreeComplex koszul(const Ring &r, const std::vector<Elem> &xs) {
  if (r.is_dvr()) fail(ErrorKind::UnsupportedRing, "koszul needs element arithmetic");
  const std::size_t n = xs.size();
  std::vector<std::vector<std::vector<std::size_t>>> basis(n + 1);
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> cur;
    detail::subsets(n, k, 0, cur, basis[k]);
    for (std::size_t b = 0; b < basis[k].size(); ++b)
      index[k][basis[k][b]] = b;
  }
  std::vector<std::size_t> ranks;
  for (auto &b : basis) ranks.push_back(b.size());
  std::map<int, ElemMatrix> diffs;
  for (std::size_t k = 1; k <= n; ++k) {
    auto m = detail::zero_matrix(r, basis[k - 1].size(), basis[k].size());
    for (std::size_t col = 0; col < basis[k].size(); ++col) {
      const auto &s = basis[k][col];
      for (std::size_t j = 0; j < s.size(); ++j) {
        auto face = s;
        face.erase(face.begin() + static_cast<long>(j));
        Elem x = r.reduce(xs[s[j]]);
        m(index[k - 1][face], col) = j % 2 ? neg(r, x) : x;
      }
    }
    diffs[static_cast<int>(k)] = m;
  }
  return FreeComplex(r, 0, ranks, diffs);
}

/// X[n].
inline FreeComplex shift(const FreeComplex &x, int n) {
  if (x.is_zero()) return x;
  std::vector<std::size_t> ranks;
  std::map<int, ElemMatrix> diffs;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    ranks.push_back(x.rank(i));
    if (i > x.lo()) {
      auto di = x.d(i);
      diffs[i + n] = n % 2 ? di.map([&](const Elem &e) { return neg(x.ring(), e); }) : di;
    }
  }
  return FreeComplex(x.ring(), x.lo() + n, ranks, diffs);
}

/// f[n], the map between shifted complexes.
inline ChainMap shift(const ChainMap &f, int n) {
  std::map<int, ElemMatrix> g;
  for (auto &[i, m] : f.components()) g[i + n] = m;
  return ChainMap(shift(f.source(), n), shift(f.target(), n), g);
}

namespace detail {

inline void put_block(ElemMatrix &dst, std::size_t r0, std::size_t c0, const ElemMatrix &src) {
  for (std::size_t i = 0; i < src.rows(); ++i)
    for (std::size_t j = 0; j < src.cols(); ++j)
      dst(r0 + i, c0 + j) = src(i, j);
}

/// Degree range [lo, hi] covering two possibly empty ranges.
inline bool range_union(bool ea, int la, int ha, bool eb, int lb, int hb, int &lo, int &hi) {
  if (ea && eb) return false;
  if (ea) { lo = lb; hi = hb; }
  else if (eb) { lo = la; hi = ha; }
  else { lo = std::min(la, lb); hi = std::max(ha, hb); }
  return true;
}

} // namespace detail

inline FreeComplex direct_sum(const FreeComplex &x, const FreeComplex &y) {
  if (x.ring() != y.ring()) fail(ErrorKind::RingMismatch, "direct sum over different rings");
  int lo, hi;
  if (!detail::range_union(x.is_zero(), x.lo(), x.hi(), y.is_zero(), y.lo(), y.hi(), lo, hi))
    return FreeComplex::zero(x.ring());
  std::vector<std::size_t> ranks;
  std::map<int, ElemMatrix> diffs;
  for (int i = lo; i <= hi; ++i) {
    ranks.push_back(x.rank(i) + y.rank(i));
    if (i == lo) continue;
    auto m = detail::zero_matrix(x.ring(), x.rank(i - 1) + y.rank(i - 1), x.rank(i) + y.rank(i));
    detail::put_block(m, 0, 0, x.d(i));
    detail::put_block(m, x.rank(i - 1), x.rank(i), y.d(i));
    diffs[i] = m;
  }
  return FreeComplex(x.ring(), lo, ranks, diffs);
}

/// f ⊕ g : X ⊕ X' -> Y ⊕ Y'.
inline ChainMap direct_sum(const ChainMap &f, const ChainMap &g) {
  auto src = direct_sum(f.source(), g.source());
  auto tgt = direct_sum(f.target(), g.target());
  std::map<int, ElemMatrix> h;
  for (int i = src.lo(); i <= src.hi(); ++i) {
    if (!tgt.rank(i) || !src.rank(i)) continue;
    auto m = detail::zero_matrix(f.ring(), tgt.rank(i), src.rank(i));
    detail::put_block(m, 0, 0, f.at(i));
    detail::put_block(m, f.target().rank(i), f.source().rank(i), g.at(i));
    h[i] = m;
  }
  return ChainMap(src, tgt, h);
}

/// cone(f)_n = X_{n-1} ⊕ Y_n, d(x, y) = (-dx, f x + dy).
inline FreeComplex cone(const ChainMap &f) {
  const auto &x = f.source();
  const auto &y = f.target();
  const Ring &r = f.ring();
  int lo, hi;
  if (!detail::range_union(x.is_zero(), x.lo() + 1, x.hi() + 1, y.is_zero(), y.lo(), y.hi(), lo, hi))
    return FreeComplex::zero(r);
  std::vector<std::size_t> ranks;
  std::map<int, ElemMatrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    ranks.push_back(x.rank(n - 1) + y.rank(n));
    if (n == lo) continue;
    auto m = detail::zero_matrix(r, x.rank(n - 2) + y.rank(n - 1), x.rank(n - 1) + y.rank(n));
    detail::put_block(m, 0, 0, x.d(n - 1).map([&](const Elem &e) { return neg(r, e); }));
    detail::put_block(m, x.rank(n - 2), 0, f.at(n - 1));
    detail::put_block(m, x.rank(n - 2), x.rank(n - 1), y.d(n));
    diffs[n] = m;
  }
  return FreeComplex(r, lo, ranks, diffs);
}

namespace detail {

/// Offsets of the (i, n-i) blocks in degree n of X ⊗ Y.
inline std::map<int, std::size_t> tensor_offsets(const FreeComplex &x, const FreeComplex &y, int n,
                                                 std::size_t &total) {
  std::map<int, std::size_t> off;
  total = 0;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    off[i] = total;
    total += x.rank(i) * y.rank(n - i);
  }
  return off;
}

inline void check_budget(std::size_t size, std::size_t budget) {
  if (size > budget)
    fail(ErrorKind::SizeBudgetExceeded,
         "total rank " + std::to_string(size) + " exceeds budget " + std::to_string(budget));
}

} // namespace detail

/// Total tensor product X ⊗ Y. Fails with SizeBudgetExceeded when the total
/// rank would exceed budget.
inline FreeComplex tensor(const FreeComplex &x, const FreeComplex &y, std::size_t budget = kDefaultSizeBudget) {
  if (x.ring() != y.ring()) fail(ErrorKind::RingMismatch, "tensor over different rings");
  const Ring &r = x.ring();
  detail::check_budget(x.total_rank() * y.total_rank(), budget);
  if (x.is_zero() || y.is_zero()) return FreeComplex::zero(r);
  const int lo = x.lo() + y.lo(), hi = x.hi() + y.hi();
  std::vector<std::size_t> ranks;
  std::map<int, ElemMatrix> diffs;
  std::size_t prev_total = 0;
  std::map<int, std::size_t> prev_off;
  for (int n = lo; n <= hi; ++n) {
    std::size_t total;
    auto off = detail::tensor_offsets(x, y, n, total);
    ranks.push_back(total);
    if (n > lo) {
      auto m = detail::zero_matrix(r, prev_total, total);
      for (int i = x.lo(); i <= x.hi(); ++i) {
        const int j = n - i;
        const std::size_t rx = x.rank(i), ry = y.rank(j);
        if (!rx || !ry) continue;
        auto dx = x.d(i), dy = y.d(j);
        const bool odd = (i % 2) != 0;
        for (std::size_t a = 0; a < rx; ++a)
          for (std::size_t b = 0; b < ry; ++b) {
            const std::size_t col = off[i] + a * ry + b;
            for (std::size_t a2 = 0; a2 < dx.rows(); ++a2)
              if (!is_zero(dx(a2, a))) m(prev_off[i - 1] + a2 * ry + b, col) = dx(a2, a);
            for (std::size_t b2 = 0; b2 < dy.rows(); ++b2)
              if (!is_zero(dy(b2, b)))
                m(prev_off[i] + a * y.rank(j - 1) + b2, col) = odd ? neg(r, dy(b2, b)) : dy(b2, b);
          }
      }
      diffs[n] = m;
    }
    prev_total = total;
    prev_off = std::move(off);
  }
  return FreeComplex(r, lo, ranks, diffs);
}

/// f ⊗ g : X ⊗ X' -> Y ⊗ Y'.
inline ChainMap tensor(const ChainMap &f, const ChainMap &g, std::size_t budget = kDefaultSizeBudget) {
  auto src = tensor(f.source(), g.source(), budget);
  auto tgt = tensor(f.target(), g.target(), budget);
  const Ring &r = f.ring();
  std::map<int, ElemMatrix> h;
  for (int n = src.lo(); n <= src.hi() && !src.is_zero(); ++n) {
    if (!src.rank(n) || !tgt.rank(n)) continue;
    std::size_t ts, tt;
    auto so = detail::tensor_offsets(f.source(), g.source(), n, ts);
    auto to = detail::tensor_offsets(f.target(), g.target(), n, tt);
    auto m = detail::zero_matrix(r, tt, ts);
    for (auto &[i, fi] : f.components()) {
      const int j = n - i;
      auto gj = g.at(j);
      if (!gj.rows() || !gj.cols()) continue;
      const std::size_t sy = g.source().rank(j), ty = g.target().rank(j);
      for (std::size_t a = 0; a < fi.cols(); ++a)
        for (std::size_t b = 0; b < sy; ++b)
          for (std::size_t a2 = 0; a2 < fi.rows(); ++a2) {
            if (is_zero(fi(a2, a))) continue;
            for (std::size_t b2 = 0; b2 < ty; ++b2)
              if (!is_zero(gj(b2, b)))
                m(to[i] + a2 * ty + b2, so[i] + a * sy + b) = mul(r, fi(a2, a), gj(b2, b));
          }
    }
    h[n] = m;
  }
  return ChainMap(src, tgt, h);
}

// ---------------------------------------------------------------------------
// Homology.

/// H_i(X) in normal form.
inline FgModule homology_at(const FreeComplex &x, int i) {
  const Ring &ring = x.ring();
  const std::size_t r = x.rank(i);
  if (r == 0) return FgModule{ring, 0, {}};
  return visit_cover(ring, [&](const auto &pid, const auto &m) {
    using P = std::decay_t<decltype(pid)>;
    auto di = to_ctx(pid, x.d(i));
    auto dn = to_ctx(pid, x.d(i + 1));
    const std::size_t below = x.rank(i - 1);
    // Cycles: lifts z with d z ≡ 0 mod m. With m != 0 the projection of the
    // kernel of [d | m I] is injective, so its generators form a basis.
    MatrixOf<P> k;
    if (pid.is_zero(m)) {
      k = kernel(pid, di);
    } else {
      auto ker = kernel(pid, hconcat(pid, di, scale(pid, m, identity(pid, below))));
      k = zeros(pid, r, ker.cols());
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < ker.cols(); ++b)
          k(a, b) = ker(a, b);
    }
    auto bnd = pid.is_zero(m) ? dn : hconcat(pid, dn, scale(pid, m, identity(pid, r)));
    auto sk = smith_normal_form(pid, k);
    auto coords = zeros(pid, k.cols(), bnd.cols());
    for (std::size_t c = 0; c < bnd.cols(); ++c) {
      std::vector<typename P::value_type> col(r);
      for (std::size_t a = 0; a < r; ++a)
        col[a] = bnd(a, c);
      auto sol = solve_with(pid, sk, col);
      if (!sol) fail(ErrorKind::InvalidComplex, "boundary outside the cycles; d^2 != 0?");
      for (std::size_t a = 0; a < k.cols(); ++a)
        coords(a, c) = (*sol)[a];
    }
    return detail::cokernel_module(ring, pid, m, coords);
  });
}

/// H_i(X) for every degree of X.
inline std::map<int, FgModule> homology(const FreeComplex &x) {
  std::map<int, FgModule> out;
  for (int i = x.lo(); i <= x.hi(); ++i)
    out.emplace(i, homology_at(x, i));
  return out;
}

inline bool is_acyclic(const FreeComplex &x) {
  for (auto &[i, h] : homology(x))
    if (!h.is_zero()) return false;
  return true;
}

/// ⋃ Supp H_i(X).
inline SpclSet supp_complex(const FreeComplex &x) {
  SpclSet s = SpclSet::empty(x.ring());
  for (auto &[i, h] : homology(x))
    s = s.unite(supp_module(h));
  return s;
}

/// Whether X_p is acyclic.
inline bool vanishes_at(const FreeComplex &x, const PrimeIdeal &p) {
  if (!is_prime_of(x.ring(), p)) fail(ErrorKind::RingMismatch, p.str() + " is not a prime of " + x.ring().str());
  for (auto &[i, h] : homology(x))
    if (!localize_vanishes(h, p)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Null-homotopies and annihilators.

namespace detail {

struct HomotopyLayout {
  std::vector<std::pair<int, std::size_t>> unknowns; // (degree i of s_i, offset)
  std::vector<std::pair<int, std::size_t>> equations; // (degree i of f_i, offset)
  std::size_t n_unknowns = 0, n_equations = 0;
};

inline HomotopyLayout homotopy_layout(const ChainMap &f) {
  HomotopyLayout l;
  int lo, hi;
  degree_span(f.source(), f.target(), lo, hi);
  for (int i = lo; i <= hi + 1; ++i) {
    const std::size_t u = f.target().rank(i) * f.source().rank(i - 1);
    if (u) {
      l.unknowns.emplace_back(i, l.n_unknowns);
      l.n_unknowns += u;
    }
    const std::size_t e = f.target().rank(i) * f.source().rank(i);
    if (e) {
      l.equations.emplace_back(i, l.n_equations);
      l.n_equations += e;
    }
  }
  return l;
}

/// The matrix of s -> (d s + s d) in the context P, with equations
/// indexed by entries of f_i and unknowns by entries of s_i.
template <class P> MatrixOf<P> homotopy_operator(const P &pid, const ChainMap &f, const HomotopyLayout &l) {
  std::map<int, std::size_t> uoff;
  for (auto &[i, o] : l.unknowns) uoff[i] = o;
  auto m = zeros(pid, l.n_equations, l.n_unknowns);
  const auto &x = f.source();
  const auto &y = f.target();
  for (auto &[i, eo] : l.equations) {
    const std::size_t ry = y.rank(i), rx = x.rank(i);
    // d^Y_{i+1} s_{i+1}: s_{i+1} has shape r_Y(i+1) x r_X(i).
    if (uoff.count(i + 1)) {
      auto dy = to_ctx(pid, y.d(i + 1));
      const std::size_t base = uoff[i + 1];
      for (std::size_t a = 0; a < ry; ++a)
        for (std::size_t b = 0; b < rx; ++b)
          for (std::size_t c = 0; c < y.rank(i + 1); ++c)
            if (!pid.is_zero(dy(a, c))) m(eo + a * rx + b, base + c * rx + b) = dy(a, c);
    }
    // s_i d^X_i: s_i has shape r_Y(i) x r_X(i-1).
    if (uoff.count(i)) {
      auto dx = to_ctx(pid, x.d(i));
      const std::size_t base = uoff[i], cols = x.rank(i - 1);
      for (std::size_t a = 0; a < ry; ++a)
        for (std::size_t b = 0; b < rx; ++b)
          for (std::size_t c = 0; c < cols; ++c)
            if (!pid.is_zero(dx(c, b)))
              m(eo + a * rx + b, base + a * cols + c) = pid.add(m(eo + a * rx + b, base + a * cols + c), dx(c, b));
    }
  }
  return m;
}

template <class P>
std::vector<typename P::value_type> flatten_map(const P &pid, const ChainMap &f, const HomotopyLayout &l) {
  std::vector<typename P::value_type> v(l.n_equations, pid.zero());
  for (auto &[i, eo] : l.equations) {
    auto fi = to_ctx(pid, f.at(i));
    for (std::size_t a = 0; a < fi.rows(); ++a)
      for (std::size_t b = 0; b < fi.cols(); ++b)
        v[eo + a * fi.cols() + b] = fi(a, b);
  }
  return v;
}

} // namespace detail

struct NullHomotopyResult {
  bool nullhomotopic = false;
  std::optional<Homotopy> witness;
  /// For a negative answer: the row of the Smith-reduced system whose
  /// right-hand side is not divisible by the invariant factor.
  std::string certificate;
};

namespace detail {

/// Solves f = d s + s d as one linear system over the ring itself. Over
/// artinian rings entries stay reduced; over domains this is only used on
/// tiny systems (see decompose_domain).
inline NullHomotopyResult nullhomotopy_direct(const ChainMap &f) {
  const Ring &ring = f.ring();
  auto layout = homotopy_layout(f);
  if (layout.n_equations == 0) return {true, Homotopy{}, ""};
  return visit_ring(ring, [&](const auto &ctx) {
    auto sys = homotopy_operator(ctx, f, layout);
    auto rhs = flatten_map(ctx, f, layout);
    auto sm = smith_normal_form(ctx, sys);
    auto sol = solve_with(ctx, sm, rhs);
    NullHomotopyResult out;
    if (!sol) {
      for (std::size_t row = 0; row < sys.rows(); ++row) {
        auto c = ctx.zero();
        for (std::size_t k = 0; k < sys.rows(); ++k)
          c = ctx.add(c, ctx.mul(sm.left(row, k), rhs[k]));
        auto dd = row < sys.cols() ? sm.diag(row, row) : ctx.zero();
        if (!ctx.divides(dd, c)) {
          out.certificate = "row " + std::to_string(row) + ": " + ring.render(from_ctx(ctx, c)) + " not in (" +
                            ring.render(from_ctx(ctx, dd)) + ")";
          break;
        }
      }
      return out;
    }
    Homotopy h;
    for (auto &[i, o] : layout.unknowns) {
      const std::size_t rows = f.target().rank(i), cols = f.source().rank(i - 1);
      ElemMatrix s(rows, cols, ring.zero());
      for (std::size_t a = 0; a < rows; ++a)
        for (std::size_t b = 0; b < cols; ++b)
          s(a, b) = ring.reduce(from_ctx(ctx, (*sol)[o + a * cols + b]));
      h.s[i] = s;
    }
    out.nullhomotopic = true;
    out.witness = std::move(h);
    return out;
  });
}

/// {a : a f ≃ 0} from the kernel of [vec f | -(d s + s d)].
inline Ideal ann_direct(const ChainMap &f) {
  const Ring &ring = f.ring();
  auto layout = homotopy_layout(f);
  if (layout.n_equations == 0) return unit_ideal(ring);
  return visit_ring(ring, [&](const auto &ctx) {
    auto op = homotopy_operator(ctx, f, layout);
    auto rhs = flatten_map(ctx, f, layout);
    auto sys = zeros(ctx, op.rows(), op.cols() + 1);
    for (std::size_t i = 0; i < op.rows(); ++i) {
      sys(i, 0) = rhs[i];
      for (std::size_t j = 0; j < op.cols(); ++j)
        sys(i, j + 1) = ctx.neg(op(i, j));
    }
    auto ker = kernel(ctx, sys);
    auto g = ctx.zero();
    for (std::size_t c = 0; c < ker.cols(); ++c)
      g = ctx.gcdext(g, ker(0, c)).g;
    return ideal_of(ring, from_ctx(ctx, g));
  });
}

inline ElemMatrix submatrix(const ElemMatrix &m, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
  ElemMatrix out(r1 - r0, c1 - c0, Elem{});
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j) out(i - r0, j - c0) = m(i, j);
  return out;
}

/// An elementary summand: R in degree `deg` (position top), or
/// R --a--> R in degrees deg, deg-1 (positions top, bottom).
struct PieceRef {
  int deg = 0;
  bool cone = false;
  std::size_t top = 0, bottom = 0;
  Elem a;

  FreeComplex complex(const Ring &r) const {
    return cone ? FreeComplex::two_term(r, a, deg - 1) : FreeComplex::free_module(r, 1, deg);
  }
  /// Position of the piece's basis vector in degree i, if any.
  std::optional<std::size_t> at(int i) const {
    if (i == deg) return top;
    if (cone && i == deg - 1) return bottom;
    return std::nullopt;
  }
  std::string str(const Ring &r) const {
    return cone ? "R --" + r.render(a) + "--> R in degrees " + std::to_string(deg) + "," + std::to_string(deg - 1)
                : "R in degree " + std::to_string(deg);
  }
};

/// X ≅ ⊕ pieces over a PID domain: basis[i] holds the new basis of X_i as
/// columns, inverse[i] its inverse, and in the new bases each differential
/// maps a cone's top vector to a times its bottom vector.
struct Decomposition {
  std::map<int, ElemMatrix> basis, inverse;
  std::vector<PieceRef> pieces;
};

inline Decomposition decompose_domain(const FreeComplex &x) {
  const Ring &r = x.ring();
  Decomposition out;
  if (x.is_zero()) return out;
  std::map<int, std::size_t> zstart; // columns >= zstart[i] span the cycles
  for (int i = x.lo(); i <= x.hi(); ++i) {
    const std::size_t n = x.rank(i);
    ElemMatrix id(n, n, r.zero());
    for (std::size_t k = 0; k < n; ++k) id(k, k) = r.one();
    out.basis[i] = out.inverse[i] = id;
    zstart[i] = 0;
  }
  std::map<int, std::vector<bool>> hit;
  for (int i = x.lo(); i <= x.hi(); ++i) hit[i].assign(x.rank(i), false);
  for (int i = x.lo() + 1; i <= x.hi(); ++i) {
    const std::size_t nb = x.rank(i - 1), z0 = zstart[i - 1];
    auto full = mat_mul(r, out.inverse[i - 1], x.d(i));
    auto m = submatrix(full, z0, nb, 0, x.rank(i));
    auto s = smith_normal_form(IntMatrix{r, m});
    const auto &lm = s.left.entries;
    const auto &linv = s.left_inv.entries;
    // Cycles of X_{i-1}: columns z0.. of the basis change by L^-1.
    auto zb = submatrix(out.basis[i - 1], 0, nb, z0, nb);
    auto zi = submatrix(out.inverse[i - 1], z0, nb, 0, nb);
    zb = mat_mul(r, zb, linv);
    zi = mat_mul(r, lm, zi);
    for (std::size_t a = 0; a < nb; ++a)
      for (std::size_t b = z0; b < nb; ++b) out.basis[i - 1](a, b) = zb(a, b - z0);
    for (std::size_t a = z0; a < nb; ++a)
      for (std::size_t b = 0; b < nb; ++b) out.inverse[i - 1](a, b) = zi(a - z0, b);
    out.basis[i] = s.right.entries;
    out.inverse[i] = s.right_inv.entries;
    std::size_t rank = 0;
    for (auto &d : s.diag)
      if (!is_zero(d)) {
        out.pieces.push_back({i, true, rank, z0 + rank, d});
        hit[i - 1][z0 + rank] = true;
        ++rank;
      }
    zstart[i] = rank;
    for (std::size_t k = 0; k < rank; ++k) hit[i][k] = true;
  }
  for (int i = x.lo(); i <= x.hi(); ++i)
    for (std::size_t k = zstart[i]; k < x.rank(i); ++k)
      if (!hit[i][k]) out.pieces.push_back({i, false, k, 0, r.one()});
  return out;
}

/// The component of f between piece p of the source and piece q of the
/// target, in the decomposed bases.
inline ChainMap piece_component(const Ring &r, const std::map<int, ElemMatrix> &fnew, const PieceRef &p,
                                const PieceRef &q) {
  std::map<int, ElemMatrix> comps;
  for (int i = p.deg - 1; i <= p.deg; ++i) {
    auto a = p.at(i), b = q.at(i);
    if (!a || !b) continue;
    comps[i] = ElemMatrix(1, 1, fnew.at(i)(*b, *a));
  }
  return ChainMap(p.complex(r), q.complex(r), comps);
}

struct SplitMap {
  Decomposition dx, dy;
  std::map<int, ElemMatrix> fnew; // inverse_Y f basis_X
};

inline SplitMap split_map(const ChainMap &f) {
  SplitMap s{decompose_domain(f.source()), decompose_domain(f.target()), {}};
  const Ring &r = f.ring();
  int lo, hi;
  degree_span(f.source(), f.target(), lo, hi);
  for (int i = lo; i <= hi; ++i) {
    if (!f.source().rank(i) || !f.target().rank(i)) continue;
    s.fnew[i] = mat_mul(r, mat_mul(r, s.dy.inverse.at(i), f.at(i)), s.dx.basis.at(i));
  }
  return s;
}

inline bool touches(const PieceRef &p, const PieceRef &q) {
  for (int i = p.deg - 1; i <= p.deg; ++i)
    if (p.at(i) && q.at(i)) return true;
  return false;
}

} // namespace detail

/// Decides whether f is null-homotopic. A positive answer carries a
/// witness that has been re-verified.
inline NullHomotopyResult is_nullhomotopic(const ChainMap &f) {
  const Ring &r = f.ring();
  NullHomotopyResult out;
  if (r.is_artinian()) {
    out = detail::nullhomotopy_direct(f);
  } else {
    // Hom(⊕ X_p, ⊕ Y_q) = ⊕ Hom(X_p, Y_q): solve piece by piece.
    auto sm = detail::split_map(f);
    std::map<int, ElemMatrix> snew;
    for (auto &p : sm.dx.pieces)
      for (auto &q : sm.dy.pieces) {
        if (!detail::touches(p, q)) continue;
        auto g = detail::piece_component(r, sm.fnew, p, q);
        if (g.components().empty()) continue;
        auto part = detail::nullhomotopy_direct(g);
        if (!part.nullhomotopic) {
          out.certificate = "component " + p.str(r) + " -> " + q.str(r) + ": " + part.certificate;
          return out;
        }
        for (auto &[i, m] : part.witness->s) {
          auto a = p.at(i - 1), b = q.at(i);
          if (!a || !b || is_zero(m(0, 0))) continue;
          auto &t = snew[i];
          if (t.rows() == 0 && t.cols() == 0)
            t = detail::zero_matrix(r, f.target().rank(i), f.source().rank(i - 1));
          t(*b, *a) = add(r, t(*b, *a), m(0, 0));
        }
      }
    Homotopy h;
    for (auto &[i, m] : snew)
      h.s[i] = detail::mat_mul(r, detail::mat_mul(r, sm.dy.basis.at(i), m), sm.dx.inverse.at(i - 1));
    out.nullhomotopic = true;
    out.witness = std::move(h);
  }
  if (out.nullhomotopic && !verify_homotopy(f, *out.witness))
    fail(ErrorKind::InvalidComplex, "homotopy witness failed verification");
  return out;
}

/// {a : a f is null-homotopic}, by canonical generator.
inline Ideal ann_map(const ChainMap &f) {
  const Ring &r = f.ring();
  if (r.is_artinian()) return detail::ann_direct(f);
  // Intersection over the piece components: the lcm of their generators.
  auto sm = detail::split_map(f);
  Ideal acc = unit_ideal(r);
  for (auto &p : sm.dx.pieces)
    for (auto &q : sm.dy.pieces) {
      if (!detail::touches(p, q)) continue;
      auto g = detail::piece_component(r, sm.fnew, p, q);
      if (g.components().empty()) continue;
      Ideal part = detail::ann_direct(g);
      if (part.zero) return part;
      Elem l = visit_ring(r, [&](const auto &ctx) {
        auto a = to_ctx(ctx, acc.generator), b = to_ctx(ctx, part.generator);
        auto e = ctx.gcdext(a, b);
        return from_ctx(ctx, ctx.mul(e.a_g, b));
      });
      acc = ideal_of(r, l);
    }
  return acc;
}

inline Ideal ann_complex(const FreeComplex &x) { return ann_map(identity_map(x)); }

// ---------------------------------------------------------------------------
// Base change to residue fields.

inline FreeComplex base_change_residue(const FreeComplex &x, const PrimeIdeal &p) {
  Ring k = residue_field(x.ring(), p);
  std::vector<std::size_t> ranks;
  std::map<int, ElemMatrix> diffs;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    ranks.push_back(x.rank(i));
    if (i > x.lo()) diffs[i] = x.d(i).map([&](const Elem &e) { return residue_field_reduce(x.ring(), p, e); });
  }
  return FreeComplex(k, x.is_zero() ? 0 : x.lo(), ranks, diffs);
}

/// f ⊗ κ(p) for a maximal ideal p.
inline ChainMap base_change_residue(const ChainMap &f, const PrimeIdeal &p) {
  std::map<int, ElemMatrix> g;
  for (auto &[i, m] : f.components())
    g[i] = m.map([&](const Elem &e) { return residue_field_reduce(f.ring(), p, e); });
  return ChainMap(base_change_residue(f.source(), p), base_change_residue(f.target(), p), g);
}

/// Whether H_i(f) = 0 for all i; over a field this is equivalent to f being
/// null-homotopic.
inline bool induces_zero_on_homology(const ChainMap &f) {
  if (!f.ring().is_artinian() || !f.ring().is_domain())
    fail(ErrorKind::UnsupportedRing, "homology maps are compared over fields only");
  // Over a field, H(f) = 0 iff f maps cycles into boundaries, i.e. f_i Z_i ⊆ B_i.
  const Ring &r = f.ring();
  int lo, hi;
  detail::degree_span(f.source(), f.target(), lo, hi);
  return visit_ring(r, [&](const auto &ctx) {
    for (int i = lo; i <= hi; ++i) {
      if (!f.source().rank(i) || !f.target().rank(i)) continue;
      auto z = kernel(ctx, to_ctx(ctx, f.source().d(i)));
      auto img = multiply(ctx, to_ctx(ctx, f.at(i)), z);
      auto sb = smith_normal_form(ctx, to_ctx(ctx, f.target().d(i + 1)));
      for (std::size_t c = 0; c < img.cols(); ++c) {
        std::vector<typename std::decay_t<decltype(ctx)>::value_type> col(img.rows());
        for (std::size_t a = 0; a < img.rows(); ++a) col[a] = img(a, c);
        if (!solve_with(ctx, sb, col)) return false;
      }
    }
    return true;
  });
}

// ---------------------------------------------------------------------------
// Text format.

namespace detail {

struct LineReader {
  std::vector<std::string> lines;
  std::size_t pos = 0;

  explicit LineReader(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      auto e = line.find_last_not_of(" \t\r");
      lines.push_back(line.substr(b, e - b + 1));
    }
  }
  bool done() const { return pos >= lines.size(); }
  const std::string &peek() const { return lines[pos]; }
  std::string next() {
    if (done()) fail(ErrorKind::Parse, "unexpected end of input");
    return lines[pos++];
  }
};

inline std::vector<std::string> words(const std::string &line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

inline int parse_int(const std::string &s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception &) {
    fail(ErrorKind::Parse, "expected an integer, got '" + s + "'");
  }
}

inline ElemMatrix read_rows(const Ring &r, LineReader &in, std::size_t rows, std::size_t cols) {
  ElemMatrix m(rows, cols, r.zero());
  if (!cols) return m;
  for (std::size_t a = 0; a < rows; ++a) {
    auto w = words(in.next());
    if (w.size() != cols)
      fail(ErrorKind::Parse, "expected " + std::to_string(cols) + " entries, got " + std::to_string(w.size()));
    for (std::size_t b = 0; b < cols; ++b)
      m(a, b) = r.parse_element(w[b]);
  }
  return m;
}

inline void write_rows(std::ostream &out, const Ring &r, const ElemMatrix &m) {
  if (!m.cols()) return;
  for (std::size_t a = 0; a < m.rows(); ++a) {
    for (std::size_t b = 0; b < m.cols(); ++b)
      out << (b ? " " : "") << r.render(m(a, b));
    out << "\n";
  }
}

/// Reads `deg`/`d` blocks until `end` or end of input.
inline FreeComplex read_complex_body(const Ring &r, LineReader &in) {
  std::map<int, std::size_t> ranks;
  std::map<int, ElemMatrix> diffs;
  while (!in.done() && in.peek() != "end") {
    auto w = words(in.next());
    if (w.size() == 4 && w[0] == "deg" && w[2] == "rank") {
      int i = parse_int(w[1]);
      int rk = parse_int(w[3]);
      if (rk < 0 || ranks.count(i)) fail(ErrorKind::Parse, "bad or repeated degree " + w[1]);
      ranks[i] = static_cast<std::size_t>(rk);
    } else if (w.size() == 2 && w[0] == "d") {
      int i = parse_int(w[1]);
      if (!ranks.count(i) || !ranks.count(i - 1))
        fail(ErrorKind::Parse, "d " + w[1] + " must follow the rank lines of degrees " + std::to_string(i - 1) +
                                   " and " + w[1]);
      diffs[i] = read_rows(r, in, ranks[i - 1], ranks[i]);
    } else {
      fail(ErrorKind::Parse, "unexpected line: " + in.lines[in.pos - 1]);
    }
  }
  if (ranks.empty()) return FreeComplex::zero(r);
  const int lo = ranks.begin()->first, hi = ranks.rbegin()->first;
  std::vector<std::size_t> rk;
  for (int i = lo; i <= hi; ++i)
    rk.push_back(ranks.count(i) ? ranks[i] : 0);
  return FreeComplex(r, lo, rk, diffs);
}

inline Ring read_ring_line(LineReader &in) {
  auto line = in.next();
  if (line.rfind("ring ", 0) != 0) fail(ErrorKind::Parse, "expected 'ring <spec>', got: " + line);
  return parse_ring(line.substr(5));
}

inline void write_complex_body(std::ostream &out, const FreeComplex &x) {
  for (int i = x.lo(); i <= x.hi() && !x.is_zero(); ++i) {
    out << "deg " << i << " rank " << x.rank(i) << "\n";
    if (i > x.lo()) {
      out << "d " << i << "\n";
      write_rows(out, x.ring(), x.d(i));
    }
  }
}

} // namespace detail

inline FreeComplex parse_complex(const std::string &text) {
  detail::LineReader in(text);
  Ring r = detail::read_ring_line(in);
  auto x = detail::read_complex_body(r, in);
  if (!in.done()) fail(ErrorKind::Parse, "trailing input: " + in.peek());
  return x;
}

inline std::string render_complex(const FreeComplex &x) {
  std::ostringstream out;
  out << "ring " << x.ring().str() << "\n";
  detail::write_complex_body(out, x);
  return out.str();
}

inline ChainMap parse_map(const std::string &text) {
  detail::LineReader in(text);
  Ring r = detail::read_ring_line(in);
  auto block = [&](const char *name) {
    if (in.next() != name) fail(ErrorKind::Parse, std::string("expected '") + name + "'");
    auto x = detail::read_complex_body(r, in);
    if (in.next() != "end") fail(ErrorKind::Parse, "expected 'end'");
    return x;
  };
  auto src = block("source");
  auto tgt = block("target");
  std::map<int, ElemMatrix> f;
  while (!in.done()) {
    auto w = detail::words(in.next());
    if (w.size() != 2 || w[0] != "f") fail(ErrorKind::Parse, "expected 'f <i>'");
    int i = detail::parse_int(w[1]);
    f[i] = detail::read_rows(r, in, tgt.rank(i), src.rank(i));
  }
  return ChainMap(src, tgt, f);
}

inline std::string render_map(const ChainMap &f) {
  std::ostringstream out;
  out << "ring " << f.ring().str() << "\nsource\n";
  detail::write_complex_body(out, f.source());
  out << "end\ntarget\n";
  detail::write_complex_body(out, f.target());
  out << "end\n";
  for (auto &[i, m] : f.components()) {
    out << "f " << i << "\n";
    detail::write_rows(out, f.ring(), m);
  }
  return out.str();
}

} // namespace ttideal
