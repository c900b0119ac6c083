#pragma once

// Canonical triangular form of a full-column-rank integer matrix: row
// selection puts a nonsingular basis block on top, column-style HNF makes it
// lower triangular, and a simultaneous row/column permutation moves the unit
// diagonal entries first. The structural bounds that make the solvers'
// parameterization work are exposed as checkable reports.

#include "deltafpt/exactmat.hpp"
#include "deltafpt/int_matrix.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace deltafpt {
namespace lattice {

struct CanonicalSystem {
  IntMatrix h;                   // d x n; equals permuteRows(original, rowPerm) * u
  IntMatrix hB;                  // top n x n block, lower triangular
  std::optional<IntMatrix> hN;   // bottom m x n block; absent when m = 0
  std::size_t s = 0;             // unit diagonal entries (first on the diagonal)
  std::size_t k = 0;             // diagonal entries >= 2
  Int delta;                     // |det(hB)| = product of the nontrivial diagonal
  Int deltaRank;                 // largest absolute rank-order minor of h
  bool deltaPromised = false;    // deltaRank supplied by the caller, not computed
  std::vector<std::size_t> rowPerm;  // rowPerm[i] = original row at canonical row i
  std::vector<std::size_t> colPerm;  // diagonal-sorting permutation (folded into u)
  IntMatrix u;                   // n x n unimodular column witness

  std::size_t n() const { return h.cols(); }
  std::size_t d() const { return h.rows(); }
  std::size_t m() const { return h.rows() - h.cols(); }
};

// Greedy top-down selection of n linearly independent rows.
inline std::vector<std::size_t> firstIndependentRows(const IntMatrix& a) {
  const std::size_t n = a.cols();
  std::vector<std::size_t> sel;
  for (std::size_t i = 0; i < a.rows() && sel.size() < n; ++i) {
    std::vector<std::size_t> trial = sel;
    trial.push_back(i);
    if (rank(a.selectRows(trial)) == trial.size()) sel = std::move(trial);
  }
  if (sel.size() < n) throw RankError("matrix does not have full column rank", {});
  return sel;
}

inline CanonicalSystem canonicalize(const IntMatrix& a,
                                    std::optional<Int> promisedDelta = std::nullopt) {
  const std::size_t d = a.rows(), n = a.cols();
  if (d < n) throw RankError("fewer rows than columns", {});

  const std::vector<std::size_t> basisRows = firstIndependentRows(a);
  std::vector<std::size_t> rowPerm = basisRows;
  {
    std::vector<bool> used(d, false);
    for (std::size_t r : basisRows) used[r] = true;
    for (std::size_t i = 0; i < d; ++i)
      if (!used[i]) rowPerm.push_back(i);
  }

  HnfResult hr = hnf(permuteRows(a, rowPerm));
  // Basis rows on top are nonsingular, so the pivot rows are exactly 0..n-1
  // and the top block is lower triangular already.
  for (std::size_t i = 0; i < n; ++i)
    if (hr.pivotRows[i] != i) throw InternalError("canonicalize: unexpected pivot row");

  // Stable ones-first permutation, applied to the top rows and all columns
  // simultaneously. Unit-diagonal rows of a reduced triangular block are unit
  // vectors, so the permuted block stays lower triangular and reduced.
  std::vector<std::size_t> colPerm;
  for (std::size_t i = 0; i < n; ++i)
    if (hr.h.at(i, i) == 1) colPerm.push_back(i);
  const std::size_t s = colPerm.size();
  for (std::size_t i = 0; i < n; ++i)
    if (hr.h.at(i, i) != 1) colPerm.push_back(i);

  IntMatrix h = permuteCols(hr.h, colPerm);
  std::vector<std::size_t> fullRowPerm(d);
  for (std::size_t i = 0; i < n; ++i) fullRowPerm[i] = colPerm[i];
  for (std::size_t i = n; i < d; ++i) fullRowPerm[i] = i;
  h = permuteRows(h, fullRowPerm);
  IntMatrix u = permuteCols(hr.u, colPerm);

  std::vector<std::size_t> combinedRowPerm(d);
  for (std::size_t i = 0; i < d; ++i) combinedRowPerm[i] = rowPerm[fullRowPerm[i]];

  IntMatrix hB = h.topRows(n);
  std::optional<IntMatrix> hN;
  if (d > n) hN = h.bottomRows(d - n);
  Int delta = 1;
  for (std::size_t i = s; i < n; ++i) delta *= hB.at(i, i);
  const Int deltaRank = promisedDelta ? *promisedDelta : maxMinorAbs(h, n);
  return CanonicalSystem{std::move(h),
                         std::move(hB),
                         std::move(hN),
                         s,
                         n - s,
                         std::move(delta),
                         deltaRank,
                         promisedDelta.has_value(),
                         std::move(combinedRowPerm),
                         std::move(colPerm),
                         std::move(u)};
}

// Sanity predicate used by tests: all structural invariants of the canonical
// form, including the witness reconstruction.
inline bool verifyCanonical(const IntMatrix& original, const CanonicalSystem& c) {
  const std::size_t n = c.n(), d = c.d();
  if (c.s + c.k != n || d != n + c.m()) return false;
  if (permuteRows(original, c.rowPerm) * c.u != c.h) return false;
  if (absInt(det(c.u)) != 1) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j)
      if (c.hB.at(i, j) != 0) return false;
    if (i < c.s && c.hB.at(i, i) != 1) return false;
    if (i >= c.s && c.hB.at(i, i) < 2) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (c.hB.at(i, j) < 0 || c.hB.at(i, j) >= c.hB.at(i, i)) return false;
  }
  if (c.delta != absInt(det(c.hB))) return false;
  if (!c.deltaPromised) {
    if (c.delta > c.deltaRank) return false;
    // k <= log2(deltaRank), i.e. 2^k <= deltaRank
    if (ipow(2, static_cast<unsigned>(c.k)) > c.deltaRank) return false;
  }
  return true;
}

// --- Lemma-style reports ----------------------------------------------------

struct EntryBoundReport {
  bool vacuous = false;       // no rows below the basis block
  Int hnMax;                  // ||hN||_max
  Rat refinedBound;           // (Delta/delta) * (delta/2^(k-1) + k - 1)
  Int deltaBound;             // Delta itself
  bool passRefined = true;
  bool passDelta = true;
  bool deltaPromised = false;
};

inline EntryBoundReport checkEntryBound(const CanonicalSystem& c) {
  EntryBoundReport r;
  r.deltaPromised = c.deltaPromised;
  r.deltaBound = c.deltaRank;
  if (!c.hN) {
    r.vacuous = true;
    r.hnMax = 0;
    r.refinedBound = 0;
    return r;
  }
  r.hnMax = c.hN->maxAbsEntry();
  const Rat pow2km1 = c.k >= 1 ? Rat(ipow(2, static_cast<unsigned>(c.k - 1))) : Rat(1, 2);
  r.refinedBound = Rat(c.deltaRank) / Rat(c.delta) *
                   (Rat(c.delta) / pow2km1 + Rat(static_cast<long long>(c.k)) - 1);
  r.passRefined = Rat(r.hnMax) <= r.refinedBound;
  r.passDelta = r.hnMax <= r.deltaBound;
  return r;
}

struct SubRankBoundReport {
  Int subRankMinor;   // exhaustively computed Delta_{n-1}(h)
  Int delta;          // Delta = Delta(h)
  Rat boundFloor;     // (Delta^2/2) * (1 + floor(log2 Delta))
  Rat boundCeil;      // (Delta^2/2) * (1 + ceil(log2 Delta))
  bool unitDelta = false;  // Delta = 1: the Laplace argument gives bound Delta
  bool pass = true;
};

inline SubRankBoundReport checkSubRankBound(const CanonicalSystem& c) {
  const std::size_t n = c.n();
  if (c.d() != n + 1) throw DimensionError("sub-rank bound needs exactly n+1 rows");
  SubRankBoundReport r;
  r.delta = c.deltaRank;
  r.subRankMinor = n >= 2 ? maxMinorAbs(c.h, n - 1) : Int(0);
  const unsigned lg = floorLog2(r.delta);
  const Rat half = Rat(r.delta * r.delta, 2);
  r.boundFloor = half * Rat(1 + lg);
  const bool pow2 = ipow(2, lg) == r.delta;
  r.boundCeil = half * Rat(1 + (pow2 ? lg : lg + 1));
  if (r.delta == 1) {
    // The closed formula degenerates to 1/2 here, but with a unit basis block
    // every (n-1)-minor is an entry or a triangular product of entries, all
    // bounded by Delta itself.
    r.unitDelta = true;
    r.pass = r.subRankMinor <= 1;
    return r;
  }
  if (Rat(r.subRankMinor) <= r.boundFloor) {
    r.pass = true;
  } else {
    // minor <= (D^2/2)(1 + log2 D)  <=>  2*minor/D^2 - 1 <= log2 D
    //                               <=>  2^(2*minor) <= (2D)^(D^2)
    const Int lhsExp = 2 * r.subRankMinor;
    const Int d2 = r.delta * r.delta;
    r.pass = ipow(2, static_cast<unsigned>(lhsExp)) <=
             ipow(2 * r.delta, static_cast<unsigned>(d2));
  }
  return r;
}

struct RowThresholdReport {
  bool preconditionHolds = true;          // every n x n submatrix nonsingular
  std::vector<std::size_t> singularRows;  // witness when it does not
  Int delta;                              // Delta(a)
  Int thresholdBase;                      // Delta*(2*Delta+1)^2
  bool thresholdMet = false;              // n > thresholdBase + log2(Delta), exact
  bool rowCountOk = false;                // d <= n + 1
  bool conclusive = false;                // thresholdMet && preconditionHolds
};

inline RowThresholdReport checkRowThreshold(const IntMatrix& a) {
  const std::size_t d = a.rows(), n = a.cols();
  if (rank(a) != n) throw RankError("matrix does not have full column rank", {});
  RowThresholdReport r;
  std::vector<std::size_t> ri(n);
  for (std::size_t i = 0; i < n; ++i) ri[i] = i;
  do {
    if (det(a.selectRows(ri)) == 0) {
      r.preconditionHolds = false;
      r.singularRows = ri;
      break;
    }
  } while (detail::nextSubset(ri, d));
  r.delta = maxMinorAbs(a, n);
  r.thresholdBase = r.delta * ipow(2 * r.delta + 1, 2);
  r.thresholdMet = exceedsLog2(Int(static_cast<long long>(n)) - r.thresholdBase, r.delta);
  r.rowCountOk = d <= n + 1;
  r.conclusive = r.thresholdMet && r.preconditionHolds;
  return r;
}

}  // namespace lattice
}  // namespace deltafpt
