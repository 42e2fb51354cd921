#pragma once

#include <cstddef>
#include <vector>

#include "strands/error.hpp"
#include "strands/rational.hpp"

namespace strands {

struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  Int& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  bool operator==(const IntMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw DomainError("matrix", "dimension mismatch in product");
    IntMatrix out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t k = 0; k < x.cols; ++k) {
        const Int& v = x.at(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < y.cols; ++j) out.at(i, j) += v * y.at(k, j);
      }
    return out;
  }
};

struct SmithResult {
  IntMatrix d;          // the diagonal form
  IntMatrix u, v;       // unimodular transforms with u * m * v = d
  std::vector<Int> diag;
  std::size_t rank = 0;
};

// Classical elimination, pivoting on the smallest nonzero entry of the
// trailing submatrix.  Before a pivot is finalized it is made to divide every
// entry of the trailing submatrix (by folding an offending row into the pivot
// row), which is what guarantees the divisibility chain d1 | d2 | ...
inline SmithResult smith_normal_form(const IntMatrix& m) {
  SmithResult res;
  res.d = m;
  res.u = IntMatrix::identity(m.rows);
  res.v = IntMatrix::identity(m.cols);
  IntMatrix& d = res.d;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;

  auto swap_rows = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t j = 0; j < d.cols; ++j) std::swap(d.at(x, j), d.at(y, j));
    for (std::size_t j = 0; j < u.cols; ++j) std::swap(u.at(x, j), u.at(y, j));
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < d.rows; ++i) std::swap(d.at(i, x), d.at(i, y));
    for (std::size_t i = 0; i < v.rows; ++i) std::swap(v.at(i, x), v.at(i, y));
  };
  // row x -= q * row y, col x -= q * col y; transforms follow along.
  auto row_sub = [&](std::size_t x, std::size_t y, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < d.cols; ++j) d.at(x, j) -= q * d.at(y, j);
    for (std::size_t j = 0; j < u.cols; ++j) u.at(x, j) -= q * u.at(y, j);
  };
  auto col_sub = [&](std::size_t x, std::size_t y, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < d.rows; ++i) d.at(i, x) -= q * d.at(i, y);
    for (std::size_t i = 0; i < v.rows; ++i) v.at(i, x) -= q * v.at(i, y);
  };
  auto negate_row = [&](std::size_t x) {
    for (std::size_t j = 0; j < d.cols; ++j) d.at(x, j) = -d.at(x, j);
    for (std::size_t j = 0; j < u.cols; ++j) u.at(x, j) = -u.at(x, j);
  };

  std::size_t limit = std::min(m.rows, m.cols);
  for (std::size_t k = 0; k < limit; ++k) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = k, pj = k;
      bool found = false;
      for (std::size_t i = k; i < d.rows; ++i)
        for (std::size_t j = k; j < d.cols; ++j) {
          const Int& x = d.at(i, j);
          if (x == 0) continue;
          if (!found || abs(x) < abs(d.at(pi, pj))) {
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) {
        res.diag.assign(limit, Int(0));
        for (std::size_t i = 0; i < limit; ++i) res.diag[i] = d.at(i, i);
        res.rank = k;
        return res;
      }
      swap_rows(k, pi);
      swap_cols(k, pj);

      bool dirty = false;
      for (std::size_t i = k + 1; i < d.rows; ++i) {
        Int q = d.at(i, k) / d.at(k, k);
        row_sub(i, k, q);
        if (d.at(i, k) != 0) dirty = true;  // remainder smaller than pivot
      }
      for (std::size_t j = k + 1; j < d.cols; ++j) {
        Int q = d.at(k, j) / d.at(k, k);
        col_sub(j, k, q);
        if (d.at(k, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // Pivot must divide the rest of the block or the chain can break.
      bool fixed = false;
      for (std::size_t i = k + 1; i < d.rows && !fixed; ++i)
        for (std::size_t j = k + 1; j < d.cols && !fixed; ++j)
          if (d.at(i, j) % d.at(k, k) != 0) {
            row_sub(k, i, Int(-1));  // fold row i into the pivot row
            fixed = true;
          }
      if (!fixed) break;
    }
    if (d.at(k, k) < 0) negate_row(k);
  }

  res.diag.assign(limit, Int(0));
  res.rank = 0;
  for (std::size_t i = 0; i < limit; ++i) {
    res.diag[i] = d.at(i, i);
    if (res.diag[i] != 0) res.rank = i + 1;
  }
  return res;
}

}  // namespace strands
