#pragma once

#include <vector>

#include "lpa/errors.hpp"

namespace lpa {

// Dense exact linear algebra over a field descriptor. Matrices are row
// vectors; sizes here are desk scale, so plain Gauss-Jordan throughout.
template <class F>
struct Mat {
  using Elem = typename F::Elem;
  std::vector<std::vector<Elem>> rows;

  int nrows() const { return static_cast<int>(rows.size()); }
  int ncols() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }

  static Mat zero(const F& f, int r, int c) {
    Mat m;
    m.rows.assign(r, std::vector<Elem>(c, f.zero()));
    return m;
  }
};

// Reduced row echelon form in place; returns the pivot column of each
// pivot row.
template <class F>
std::vector<int> rref(const F& f, Mat<F>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.ncols() && r < m.nrows(); ++c) {
    int pr = -1;
    for (int i = r; i < m.nrows(); ++i)
      if (!f.is_zero(m.rows[i][c])) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(m.rows[r], m.rows[pr]);
    auto inv = f.inv(m.rows[r][c]);
    for (auto& x : m.rows[r]) x = f.mul(x, inv);
    for (int i = 0; i < m.nrows(); ++i) {
      if (i == r || f.is_zero(m.rows[i][c])) continue;
      auto k = m.rows[i][c];
      for (int j = 0; j < m.ncols(); ++j)
        m.rows[i][j] = f.sub(m.rows[i][j], f.mul(k, m.rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
int rank(const F& f, Mat<F> m) {
  return static_cast<int>(rref(f, m).size());
}

// Basis of the right kernel {x : m x = 0}.
template <class F>
std::vector<std::vector<typename F::Elem>> kernel_basis(const F& f, Mat<F> m) {
  auto pivots = rref(f, m);
  int n = m.ncols();
  std::vector<char> is_pivot(n, 0);
  for (int c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<typename F::Elem>> out;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    std::vector<typename F::Elem> v(n, f.zero());
    v[c] = f.one();
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m.rows[r][c]);
    out.push_back(v);
  }
  return out;
}

// Does b lie in the span of the rows of m?
template <class F>
bool in_row_span(const F& f, const Mat<F>& m, const std::vector<typename F::Elem>& b) {
  Mat<F> a = m;
  int base = rank(f, a);
  Mat<F> a2 = m;
  a2.rows.push_back(b);
  return rank(f, a2) == base;
}

// Row-space equality of two matrices over the same ambient space.
template <class F>
bool same_row_space(const F& f, const Mat<F>& a, const Mat<F>& b) {
  Mat<F> ra = a, rb = b;
  int na = rank(f, ra), nb = rank(f, rb);
  if (na != nb) return false;
  Mat<F> joint = a;
  for (const auto& r : b.rows) joint.rows.push_back(r);
  return rank(f, joint) == na;
}

}  // namespace lpa
