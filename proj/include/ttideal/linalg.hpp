#pragma once

// Dense matrices over a principal ideal ring context (see pir.hpp) and the
// Smith normal form with transforms, plus the linear solver and kernel
// generators derived from it.

#include "ttideal/pir.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace ttideal {

template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T &fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Matrix &o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  template <class F> auto map(F &&f) const {
    using U = decltype(f(std::declval<const T &>()));
    Matrix<U> out;
    out.rows_ = rows_;
    out.cols_ = cols_;
    out.data_.reserve(data_.size());
    for (const auto &x : data_)
      out.data_.push_back(f(x));
    return out;
  }

  template <class U> friend class Matrix;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

template <class Ctx> using MatrixOf = Matrix<typename Ctx::value_type>;

template <class Ctx> MatrixOf<Ctx> zeros(const Ctx &ctx, std::size_t r, std::size_t c) {
  return MatrixOf<Ctx>(r, c, ctx.zero());
}

template <class Ctx> MatrixOf<Ctx> identity(const Ctx &ctx, std::size_t n) {
  auto m = zeros(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = ctx.one();
  return m;
}

template <class Ctx>
MatrixOf<Ctx> multiply(const Ctx &ctx, const MatrixOf<Ctx> &a, const MatrixOf<Ctx> &b) {
  auto out = zeros(ctx, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (ctx.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!ctx.is_zero(b(k, j)))
          out(i, j) = ctx.add(out(i, j), ctx.mul(a(i, k), b(k, j)));
    }
  return out;
}

template <class Ctx>
MatrixOf<Ctx> add(const Ctx &ctx, const MatrixOf<Ctx> &a, const MatrixOf<Ctx> &b) {
  auto out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(i, j) = ctx.add(a(i, j), b(i, j));
  return out;
}

template <class Ctx>
MatrixOf<Ctx> scale(const Ctx &ctx, const typename Ctx::value_type &s, const MatrixOf<Ctx> &a) {
  auto out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(i, j) = ctx.mul(s, a(i, j));
  return out;
}

template <class T> Matrix<T> transpose(const Matrix<T> &a) {
  Matrix<T> out(a.cols(), a.rows(), a.rows() && a.cols() ? a(0, 0) : T{});
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(j, i) = a(i, j);
  return out;
}

template <class Ctx> bool is_zero_matrix(const Ctx &ctx, const MatrixOf<Ctx> &a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!ctx.is_zero(a(i, j))) return false;
  return true;
}

/// Horizontal concatenation [a | b]; row counts must agree.
template <class Ctx>
MatrixOf<Ctx> hconcat(const Ctx &ctx, const MatrixOf<Ctx> &a, const MatrixOf<Ctx> &b) {
  auto out = zeros(ctx, a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j)
      out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

/// left * input * right = diag, with diag(i, i) | diag(i+1, i+1) as ideals and
/// each diagonal entry the canonical generator of its ideal. left and right
/// are invertible over the ring, with inverses left_inv and right_inv.
template <class Ctx> struct Smith {
  MatrixOf<Ctx> diag, left, right;
  MatrixOf<Ctx> left_inv, right_inv;
  std::size_t rank = 0; // number of nonzero diagonal entries

  std::vector<typename Ctx::value_type> invariants(const Ctx &ctx) const {
    std::vector<typename Ctx::value_type> out;
    for (std::size_t i = 0; i < std::min(diag.rows(), diag.cols()); ++i)
      out.push_back(ctx.reduce(diag(i, i)));
    return out;
  }
};

namespace detail {

template <class Ctx>
void row_combine(const Ctx &ctx, MatrixOf<Ctx> &m, std::size_t r1, std::size_t r2,
                 const Gcdext<typename Ctx::value_type> &e) {
  // r1 <- s*r1 + t*r2 ; r2 <- -b_g*r1 + a_g*r2
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto x = m(r1, j), y = m(r2, j);
    if (ctx.is_zero(x) && ctx.is_zero(y)) continue;
    m(r1, j) = ctx.add(ctx.mul(e.s, x), ctx.mul(e.t, y));
    m(r2, j) = ctx.sub(ctx.mul(e.a_g, y), ctx.mul(e.b_g, x));
  }
}

template <class Ctx>
void col_combine(const Ctx &ctx, MatrixOf<Ctx> &m, std::size_t c1, std::size_t c2,
                 const Gcdext<typename Ctx::value_type> &e) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto x = m(i, c1), y = m(i, c2);
    if (ctx.is_zero(x) && ctx.is_zero(y)) continue;
    m(i, c1) = ctx.add(ctx.mul(e.s, x), ctx.mul(e.t, y));
    m(i, c2) = ctx.sub(ctx.mul(e.a_g, y), ctx.mul(e.b_g, x));
  }
}

template <class Ctx>
void row_axpy(const Ctx &ctx, MatrixOf<Ctx> &m, std::size_t dst, std::size_t src,
              const typename Ctx::value_type &q) {
  // dst <- dst - q*src
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!ctx.is_zero(m(src, j))) m(dst, j) = ctx.sub(m(dst, j), ctx.mul(q, m(src, j)));
}

template <class Ctx>
void col_axpy(const Ctx &ctx, MatrixOf<Ctx> &m, std::size_t dst, std::size_t src,
              const typename Ctx::value_type &q) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!ctx.is_zero(m(i, src))) m(i, dst) = ctx.sub(m(i, dst), ctx.mul(q, m(i, src)));
}

template <class T> void swap_rows(Matrix<T> &m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j)
    std::swap(m(a, j), m(b, j));
}

template <class T> void swap_cols(Matrix<T> &m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i)
    std::swap(m(i, a), m(i, b));
}

} // namespace detail

template <class Ctx> Smith<Ctx> smith_normal_form(const Ctx &ctx, MatrixOf<Ctx> a) {
  using namespace detail;
  using V = typename Ctx::value_type;
  const std::size_t m = a.rows(), n = a.cols();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = ctx.reduce(a(i, j));
  Smith<Ctx> out{MatrixOf<Ctx>(), identity(ctx, m), identity(ctx, n), identity(ctx, m), identity(ctx, n), 0};
  auto &L = out.left;
  auto &R = out.right;
  auto &Li = out.left_inv;
  auto &Ri = out.right_inv;

  // Row operations act on a and L; L^-1 absorbs the inverse on the right.
  // Column operations act on a and R; R^-1 absorbs the inverse on the left.
  auto rswap = [&](std::size_t x, std::size_t y) {
    swap_rows(a, x, y);
    swap_rows(L, x, y);
    swap_cols(Li, x, y);
  };
  auto cswap = [&](std::size_t x, std::size_t y) {
    swap_cols(a, x, y);
    swap_cols(R, x, y);
    swap_rows(Ri, x, y);
  };
  auto raxpy = [&](std::size_t dst, std::size_t src, const V &q) { // row dst -= q row src
    row_axpy(ctx, a, dst, src, q);
    row_axpy(ctx, L, dst, src, q);
    col_axpy(ctx, Li, src, dst, ctx.neg(q));
  };
  auto caxpy = [&](std::size_t dst, std::size_t src, const V &q) { // col dst -= q col src
    col_axpy(ctx, a, dst, src, q);
    col_axpy(ctx, R, dst, src, q);
    row_axpy(ctx, Ri, src, dst, ctx.neg(q));
  };
  auto rcombine = [&](std::size_t x, std::size_t y, const Gcdext<V> &e) {
    row_combine(ctx, a, x, y, e);
    row_combine(ctx, L, x, y, e);
    // [[s, t], [-b_g, a_g]]^-1 = [[a_g, -t], [b_g, s]]
    Gcdext<V> inv{e.g, e.a_g, e.b_g, e.s, e.t};
    col_combine(ctx, Li, x, y, inv);
  };
  auto ccombine = [&](std::size_t x, std::size_t y, const Gcdext<V> &e) {
    col_combine(ctx, a, x, y, e);
    col_combine(ctx, R, x, y, e);
    Gcdext<V> inv{e.g, e.a_g, e.b_g, e.s, e.t};
    row_combine(ctx, Ri, x, y, inv);
  };

  // Euclidean domains reduce by remainders; proper quotients use gcdext.
  const bool euclid = ctx.euclid_quotient(ctx.one(), ctx.one()).has_value();
  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    // Pivot: the entry generating the largest ideal in the trailing block.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (!ctx.is_zero(a(i, j)) &&
            (!best || ctx.pivot_key(a(i, j)) < ctx.pivot_key(a(best->first, best->second))))
          best = {i, j};
    if (!best) break;
    rswap(t, best->first);
    cswap(t, best->second);

    while (true) {
      bool dirty = false;
      if (euclid) {
        // Smallest entry of the pivot column to the top, reduce the rest by
        // it, repeat until the column is clear; then the same for the row.
        while (true) {
          std::size_t lo = t;
          for (std::size_t i = t + 1; i < m; ++i)
            if (!ctx.is_zero(a(i, t)) && (ctx.is_zero(a(lo, t)) || ctx.pivot_key(a(i, t)) < ctx.pivot_key(a(lo, t))))
              lo = i;
          rswap(t, lo);
          bool left = false;
          for (std::size_t i = t + 1; i < m; ++i) {
            if (ctx.is_zero(a(i, t))) continue;
            raxpy(i, t, *ctx.euclid_quotient(a(t, t), a(i, t)));
            left = left || !ctx.is_zero(a(i, t));
          }
          if (!left) break;
        }
        while (true) {
          std::size_t lo = t;
          for (std::size_t j = t + 1; j < n; ++j)
            if (!ctx.is_zero(a(t, j)) && (ctx.is_zero(a(t, lo)) || ctx.pivot_key(a(t, j)) < ctx.pivot_key(a(t, lo))))
              lo = j;
          if (lo != t) {
            cswap(t, lo);
            dirty = true; // the new pivot column may have entries below
          }
          bool left = false;
          for (std::size_t j = t + 1; j < n; ++j) {
            if (ctx.is_zero(a(t, j))) continue;
            caxpy(j, t, *ctx.euclid_quotient(a(t, t), a(t, j)));
            left = left || !ctx.is_zero(a(t, j));
          }
          if (!left) break;
        }
      } else {
        for (std::size_t i = t + 1; i < m; ++i) {
          if (ctx.is_zero(a(i, t))) continue;
          if (ctx.divides(a(t, t), a(i, t))) raxpy(i, t, ctx.quotient(a(t, t), a(i, t)));
          else rcombine(t, i, ctx.gcdext(a(t, t), a(i, t)));
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (ctx.is_zero(a(t, j))) continue;
          if (ctx.divides(a(t, t), a(t, j))) {
            caxpy(j, t, ctx.quotient(a(t, t), a(t, j)));
          } else {
            ccombine(t, j, ctx.gcdext(a(t, t), a(t, j)));
            dirty = true;
          }
        }
      }
      if (dirty) continue;
      // Column may still hold entries if a row-clearing step refilled it.
      bool column_clean = true;
      for (std::size_t i = t + 1; i < m; ++i)
        if (!ctx.is_zero(a(i, t))) column_clean = false;
      if (!column_clean) continue;
      // Divisibility of the trailing block by the pivot.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < m && !offender; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!ctx.divides(a(t, t), a(i, j))) {
            offender = i;
            break;
          }
      if (!offender) break;
      // Bring the offending row into the pivot row; the next column pass
      // grows the pivot ideal strictly.
      raxpy(t, *offender, ctx.neg(ctx.one()));
    }
    // Normalize the pivot to the canonical generator of its ideal.
    auto u = ctx.unit_part(a(t, t));
    auto uinv = ctx.inverse(u);
    if (!(uinv == ctx.one())) {
      for (std::size_t j = 0; j < n; ++j)
        a(t, j) = ctx.mul(uinv, a(t, j));
      for (std::size_t j = 0; j < m; ++j)
        L(t, j) = ctx.mul(uinv, L(t, j));
      for (std::size_t j = 0; j < m; ++j)
        Li(j, t) = ctx.mul(Li(j, t), u);
    }
    if (!ctx.is_zero(a(t, t))) ++out.rank;
  }
  out.diag = std::move(a);
  return out;
}

/// Some x with a*x = b, or nullopt if the system has no solution.
template <class Ctx>
std::optional<std::vector<typename Ctx::value_type>>
solve_with(const Ctx &ctx, const Smith<Ctx> &s, const std::vector<typename Ctx::value_type> &b) {
  const std::size_t m = s.diag.rows(), n = s.diag.cols();
  std::vector<typename Ctx::value_type> c(m, ctx.zero());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k)
      if (!ctx.is_zero(s.left(i, k)) && !ctx.is_zero(b[k]))
        c[i] = ctx.add(c[i], ctx.mul(s.left(i, k), b[k]));
  std::vector<typename Ctx::value_type> y(n, ctx.zero());
  for (std::size_t i = 0; i < m; ++i) {
    if (i < n) {
      if (!ctx.divides(s.diag(i, i), c[i])) return std::nullopt;
      y[i] = ctx.is_zero(c[i]) ? ctx.zero() : ctx.quotient(s.diag(i, i), c[i]);
    } else if (!ctx.is_zero(c[i])) {
      return std::nullopt;
    }
  }
  std::vector<typename Ctx::value_type> x(n, ctx.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (!ctx.is_zero(s.right(i, k)) && !ctx.is_zero(y[k]))
        x[i] = ctx.add(x[i], ctx.mul(s.right(i, k), y[k]));
  return x;
}

template <class Ctx>
std::optional<std::vector<typename Ctx::value_type>>
solve(const Ctx &ctx, const MatrixOf<Ctx> &a, const std::vector<typename Ctx::value_type> &b) {
  return solve_with(ctx, smith_normal_form(ctx, a), b);
}

/// Generators of {x : a*x = 0}, as the columns of the returned matrix. Over
/// a domain these form a basis.
template <class Ctx> MatrixOf<Ctx> kernel_with(const Ctx &ctx, const Smith<Ctx> &s) {
  const std::size_t m = s.diag.rows(), n = s.diag.cols();
  std::vector<std::pair<std::size_t, typename Ctx::value_type>> gens;
  for (std::size_t j = 0; j < n; ++j) {
    auto scale_by = j < m ? ctx.ann(s.diag(j, j)) : ctx.one();
    if (!ctx.is_zero(scale_by)) gens.emplace_back(j, scale_by);
  }
  auto out = zeros(ctx, n, gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t i = 0; i < n; ++i)
      out(i, g) = ctx.mul(s.right(i, gens[g].first), gens[g].second);
  return out;
}

template <class Ctx> MatrixOf<Ctx> kernel(const Ctx &ctx, const MatrixOf<Ctx> &a) {
  return kernel_with(ctx, smith_normal_form(ctx, a));
}

} // namespace ttideal
