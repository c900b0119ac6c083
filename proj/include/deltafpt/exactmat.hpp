#pragma once

// Exact integer linear algebra: determinants (fraction-free Bareiss), rank,
// adjugate, exhaustive minor maxima, Hermite and Smith normal forms with
// unimodular witnesses, and exact rational solves.

#include "deltafpt/errors.hpp"
#include "deltafpt/int_matrix.hpp"
#include "deltafpt/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace deltafpt {

inline Int det(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("det needs a square matrix");
  const std::size_t n = a.rows();
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t piv = k;
      while (piv < n && m.at(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      m.swapRows(k, piv);
      sign = -sign;
    }
    const Int pivot = m.at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * pivot - m.at(i, k) * m.at(k, j)) / prev;
      m.at(i, k) = 0;
    }
    prev = pivot;
  }
  return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

namespace detail {

// Cofactor-expansion determinant; the independent oracle kept for tests.
inline Int detCofactor(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a.at(0, 0);
  Int sum = 0;
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < n; ++j) {
    if (a.at(0, j) == 0) continue;
    rest.clear();
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) rest.push_back(c);
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t c = 0; c < n - 1; ++c) minor.at(i - 1, c) = a.at(i, rest[c]);
    Int term = a.at(0, j) * detCofactor(minor);
    if (j % 2 == 0) sum += term; else sum -= term;
  }
  return sum;
}

// Enumerates k-subsets of 0..n-1 in lexicographic order.
inline bool nextSubset(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (idx[i] + (k - i) < n) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

inline std::size_t rank(const IntMatrix& a) {
  IntMatrix m = a;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m.at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    m.swapRows(r, piv);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m.at(i, c) == 0) continue;
      const Int g = boost::multiprecision::gcd(m.at(r, c), m.at(i, c));
      const Int fr = m.at(i, c) / g, fi = m.at(r, c) / g;
      for (std::size_t j = c; j < cols; ++j)
        m.at(i, j) = m.at(i, j) * fi - m.at(r, j) * fr;
    }
    ++r;
  }
  return r;
}

inline IntMatrix adjugate(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("adjugate needs a square matrix");
  const std::size_t n = a.rows();
  IntMatrix adj(n, n);
  if (n == 1) {
    adj.at(0, 0) = 1;
    return adj;
  }
  IntMatrix minor(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t mi = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::size_t mj = 0;
        for (std::size_t c = 0; c < n; ++c) {
          if (c == j) continue;
          minor.at(mi, mj) = a.at(r, c);
          ++mj;
        }
        ++mi;
      }
      Int cof = det(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      adj.at(j, i) = cof;  // transpose of the cofactor matrix
    }
  }
  return adj;
}

inline Int maxMinorAbs(const IntMatrix& a, std::size_t k) {
  if (k < 1 || k > std::min(a.rows(), a.cols()))
    throw DimensionError("minor order out of range");
  Int best = 0;
  std::vector<std::size_t> ri(k), ci(k);
  for (std::size_t i = 0; i < k; ++i) ri[i] = i;
  do {
    for (std::size_t i = 0; i < k; ++i) ci[i] = i;
    const IntMatrix rows = a.selectRows(ri);
    do {
      Int d = absInt(det(rows.selectCols(ci)));
      if (d > best) best = d;
    } while (detail::nextSubset(ci, a.cols()));
  } while (detail::nextSubset(ri, a.rows()));
  return best;
}

// Delta(a): the largest absolute rank-order minor.
inline Int maxRankMinorAbs(const IntMatrix& a) {
  return maxMinorAbs(a, rank(a));
}

// ---------------------------------------------------------------------------
// Hermite normal form (column operations on the right).
//
// For a full-column-rank d x n input there is a unique sequence of pivot rows
// r_0 < ... < r_{n-1}; after reduction column j has its pivot at row r_j,
// zeros to the right of it in that row, and entries to the left reduced into
// [0, pivot). When the top n x n block is nonsingular the pivot rows are
// 0..n-1 and the top block is lower triangular.

struct HnfResult {
  IntMatrix h;                         // = original * u
  IntMatrix u;                         // n x n unimodular
  std::vector<std::size_t> pivotRows;  // one per column, strictly increasing
};

namespace detail {

// Lexicographically first maximal independent column set; throws RankError on
// column-rank deficiency, naming the offending column plus its span basis.
inline std::vector<std::size_t> independentColumnsOrThrow(const IntMatrix& a) {
  std::vector<std::size_t> sel;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    std::vector<std::size_t> trial = sel;
    trial.push_back(j);
    if (rank(a.selectCols(trial)) == trial.size()) {
      sel = std::move(trial);
    } else {
      trial = sel;
      trial.push_back(j);
      std::string msg = "columns {";
      for (std::size_t i = 0; i < trial.size(); ++i)
        msg += (i ? "," : "") + std::to_string(trial[i]);
      msg += "} are linearly dependent";
      throw RankError(msg, trial);
    }
  }
  return sel;
}

}  // namespace detail

inline HnfResult hnf(const IntMatrix& a) {
  const std::size_t d = a.rows(), n = a.cols();
  if (d < n) throw DimensionError("hnf needs rows >= cols");
  detail::independentColumnsOrThrow(a);  // full column rank or RankError

  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(n);
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n; ++row) {
    if (row >= d) throw RankError("ran out of pivot rows", {});
    // Fold columns col..n-1 so only h(row, col) survives in this row.
    for (std::size_t j = col + 1; j < n; ++j) {
      if (h.at(row, j) == 0) continue;
      Int x, y;
      const Int g = extGcd(h.at(row, col), h.at(row, j), x, y);
      const Int ac = h.at(row, col) / g, aj = h.at(row, j) / g;
      for (std::size_t i = 0; i < d; ++i) {
        const Int hc = h.at(i, col), hj = h.at(i, j);
        h.at(i, col) = x * hc + y * hj;
        h.at(i, j) = ac * hj - aj * hc;
      }
      for (std::size_t i = 0; i < n; ++i) {
        const Int uc = u.at(i, col), uj = u.at(i, j);
        u.at(i, col) = x * uc + y * uj;
        u.at(i, j) = ac * uj - aj * uc;
      }
    }
    if (h.at(row, col) == 0) continue;  // not a pivot row, move down
    if (h.at(row, col) < 0) {
      for (std::size_t i = 0; i < d; ++i) h.at(i, col) = -h.at(i, col);
      for (std::size_t i = 0; i < n; ++i) u.at(i, col) = -u.at(i, col);
    }
    const Int pivot = h.at(row, col);
    for (std::size_t j = 0; j < col; ++j) {
      const Int q = floorDiv(h.at(row, j), pivot);
      if (q == 0) continue;
      for (std::size_t i = 0; i < d; ++i) h.at(i, j) -= q * h.at(i, col);
      for (std::size_t i = 0; i < n; ++i) u.at(i, j) -= q * u.at(i, col);
    }
    pivots.push_back(row);
    ++col;
  }
  return HnfResult{std::move(h), std::move(u), std::move(pivots)};
}

// ---------------------------------------------------------------------------
// Smith normal form of a nonsingular square matrix: original = pInv * s * qInv
// with |det(pInv)| = |det(qInv)| = 1, s diagonal, s(i,i) >= 1 and
// s(i,i) | s(i+1,i+1). The inverse witnesses are maintained incrementally.

struct SnfResult {
  IntMatrix s;
  IntMatrix pInv;
  IntMatrix qInv;
};

inline SnfResult snf(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("snf needs a square matrix");
  const std::size_t n = a.rows();
  IntMatrix cur = a;
  IntMatrix pInv = IntMatrix::identity(n);
  IntMatrix qInv = IntMatrix::identity(n);

  // Invariant: a = pInv * cur * qInv.
  auto rowSwap = [&](std::size_t i, std::size_t j) {
    cur.swapRows(i, j);
    pInv.swapCols(i, j);
  };
  auto colSwap = [&](std::size_t i, std::size_t j) {
    cur.swapCols(i, j);
    qInv.swapRows(i, j);
  };
  auto rowAdd = [&](std::size_t dst, std::size_t src, const Int& f) {
    // row dst += f * row src; undo on the witness: col src -= f * col dst
    for (std::size_t j = 0; j < n; ++j) cur.at(dst, j) += f * cur.at(src, j);
    for (std::size_t i = 0; i < n; ++i) pInv.at(i, src) -= f * pInv.at(i, dst);
  };
  auto colAdd = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t i = 0; i < n; ++i) cur.at(i, dst) += f * cur.at(i, src);
    for (std::size_t j = 0; j < n; ++j) qInv.at(src, j) -= f * qInv.at(dst, j);
  };
  auto rowNegate = [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) cur.at(i, j) = -cur.at(i, j);
    for (std::size_t r = 0; r < n; ++r) pInv.at(r, i) = -pInv.at(r, i);
  };

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block to (t, t).
      std::size_t bi = t, bj = t;
      Int best = 0;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Int v = absInt(cur.at(i, j));
          if (v != 0 && (best == 0 || v < best)) {
            best = v;
            bi = i;
            bj = j;
          }
        }
      if (best == 0) throw SingularError("snf needs a nonsingular matrix");
      rowSwap(t, bi);
      colSwap(t, bj);
      if (cur.at(t, t) < 0) rowNegate(t);

      bool reduced = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (cur.at(i, t) == 0) continue;
        rowAdd(i, t, -floorDiv(cur.at(i, t), cur.at(t, t)));
        if (cur.at(i, t) != 0) reduced = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (cur.at(t, j) == 0) continue;
        colAdd(j, t, -floorDiv(cur.at(t, j), cur.at(t, t)));
        if (cur.at(t, j) != 0) reduced = false;
      }
      if (!reduced) continue;

      // Pivot divides everything below-right, or fold an offending row in.
      bool divides = true;
      for (std::size_t i = t + 1; i < n && divides; ++i)
        for (std::size_t j = t + 1; j < n && divides; ++j)
          if (cur.at(i, j) % cur.at(t, t) != 0) {
            rowAdd(t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
  }
  return SnfResult{std::move(cur), std::move(pInv), std::move(qInv)};
}

// Integer inverse of a unimodular matrix.
inline IntMatrix unimodularInverse(const IntMatrix& a) {
  const Int d = det(a);
  if (d != 1 && d != -1) throw ContractError("matrix is not unimodular");
  IntMatrix adj = adjugate(a);
  if (d == -1)
    for (std::size_t i = 0; i < adj.rows(); ++i)
      for (std::size_t j = 0; j < adj.cols(); ++j) adj.at(i, j) = -adj.at(i, j);
  return adj;
}

// Exact solve of a*x = b, a square nonsingular.
inline RatVec solveRational(const IntMatrix& a, const RatVec& b) {
  if (a.rows() != a.cols()) throw DimensionError("solveRational needs a square matrix");
  const std::size_t n = a.rows();
  if (b.size() != n) throw DimensionError("right-hand side dimension mismatch");
  std::vector<RatVec> m(n, RatVec(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rat(a.at(i, j));
    m[i][n] = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw SingularError("singular system in solveRational");
    std::swap(m[c], m[piv]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      const Rat f = m[i][c] / m[c][c];
      for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  RatVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

inline RatVec solveRational(const IntMatrix& a, const IntVec& b) {
  RatVec rb(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) rb[i] = Rat(b[i]);
  return solveRational(a, rb);
}

// Whether v lies in the column lattice of a (a square nonsingular).
inline bool inColumnLattice(const IntMatrix& a, const IntVec& v) {
  RatVec t = solveRational(a, v);
  for (const Rat& c : t)
    if (denom(c) != 1) return false;
  return true;
}

}  // namespace deltafpt
