#pragma once

// Shortest nonzero lattice vector under l_p (integer p >= 1) or l_inf, for
// column lattices of near-square integer matrices, plus the closest-vector
// variant and an exhaustive coefficient-box oracle.
//
// The solver eliminates the coefficient vector through the basis block,
// reduces membership to a congruence system modulo the Smith normal form of
// the basis, and runs a layered dynamic program over (column, group element,
// coupling vector) states. States are stored sparsely; the documented dense
// box bounds act as pruning predicates.

#include "deltafpt/exactmat.hpp"
#include "deltafpt/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace deltafpt {
namespace slvp {

struct Norm {
  bool isInf = false;
  unsigned p = 2;

  static Norm lp(unsigned p) {
    if (p < 1) throw ContractError("finite norm exponent must be >= 1");
    return Norm{false, p};
  }
  static Norm linf() { return Norm{true, 0}; }
};

// |v|^p for finite p, |v| for l_inf.
inline Int normTerm(const Norm& nm, const Int& v) {
  const Int a = absInt(v);
  return nm.isInf ? a : ipow(a, nm.p);
}

inline Int normCombine(const Norm& nm, const Int& a, const Int& b) {
  return nm.isInf ? (a > b ? a : b) : Int(a + b);
}

inline Int normValueOf(const Norm& nm, const IntVec& x) {
  Int acc = 0;
  for (const Int& v : x) acc = normCombine(nm, acc, normTerm(nm, v));
  return acc;
}

struct SlvpInstance {
  lattice::CanonicalSystem system;
  Norm norm;
  IntMatrix original;

  SlvpInstance(const IntMatrix& a, Norm nm,
               std::optional<Int> promisedDelta = std::nullopt)
      : system(lattice::canonicalize(a, std::move(promisedDelta))),
        norm(nm),
        original(a) {}
};

struct LatticeVector {
  IntVec x;       // dim d, in the original row order
  IntVec t;       // dim n, original * t = x
  Int normValue;  // sum |x_i|^p (finite p) or max |x_i| (l_inf)
};

namespace detail {

inline IntVec toOriginalX(const lattice::CanonicalSystem& c, const IntVec& xCanon) {
  IntVec x(c.d());
  for (std::size_t i = 0; i < c.d(); ++i) x[c.rowPerm[i]] = xCanon[i];
  return x;
}

inline LatticeVector makeVector(const SlvpInstance& inst, const IntVec& xCanon,
                                const IntVec& tCanon) {
  const auto& c = inst.system;
  IntVec x = toOriginalX(c, xCanon);
  IntVec t = c.u.mulVec(tCanon);
  if (inst.original.mulVec(t) != x)
    throw InternalError("reconstructed vector is not in the lattice");
  return LatticeVector{std::move(x), std::move(t), normValueOf(inst.norm, xCanon)};
}

// Integer coefficient vector of a basis-block member.
inline IntVec integralSolve(const IntMatrix& a, const IntVec& b) {
  RatVec t = solveRational(a, b);
  IntVec r(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (denom(t[i]) != 1) throw InternalError("expected an integral solution");
    r[i] = numer(t[i]);
  }
  return r;
}

}  // namespace detail

// Whether the duplicate-column argument is guaranteed to produce a vector:
// n > Delta*(2*Delta+1)^m + log2(Delta), evaluated exactly.
inline bool fastPathGuaranteeHolds(const SlvpInstance& inst) {
  const auto& c = inst.system;
  const Int base = c.deltaRank * ipow(2 * c.deltaRank + 1, static_cast<unsigned>(c.m()));
  return exceedsLog2(Int(static_cast<long long>(c.n())) - base, c.deltaRank);
}

// Duplicate-column fast path. Columns j < s of the canonical form are unit
// vectors on the top block, so two of them whose entries below row s agree
// give a lattice vector with exactly two nonzero entries (+1/-1); a column
// that vanishes below row s is itself a unit lattice vector. Sub-columns are
// compared by sorting.
inline std::optional<LatticeVector> fastPathDuplicate(const SlvpInstance& inst) {
  const auto& c = inst.system;
  const std::size_t s = c.s, n = c.n(), d = c.d();

  std::optional<std::size_t> zeroCol;
  for (std::size_t j = 0; j < s && !zeroCol; ++j) {
    bool allZero = true;
    for (std::size_t i = s; i < d && allZero; ++i) allZero = c.h.at(i, j) == 0;
    if (allZero) zeroCol = j;
  }
  if (zeroCol) {
    IntVec t(n, Int(0));
    t[*zeroCol] = 1;
    return detail::makeVector(inst, c.h.mulVec(t), t);
  }

  std::vector<std::pair<IntVec, std::size_t>> keys;
  keys.reserve(s);
  for (std::size_t j = 0; j < s; ++j) {
    IntVec key(d - s);
    for (std::size_t i = s; i < d; ++i) key[i - s] = c.h.at(i, j);
    keys.emplace_back(std::move(key), j);
  }
  std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return lexLess(a.first, b.first);
    return a.second < b.second;
  });
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
    if (keys[i].first != keys[i + 1].first) continue;
    std::pair<std::size_t, std::size_t> pair{
        std::min(keys[i].second, keys[i + 1].second),
        std::max(keys[i].second, keys[i + 1].second)};
    if (!best || pair < *best) best = pair;
  }
  if (!best) return std::nullopt;
  IntVec t(n, Int(0));
  t[best->first] = 1;
  t[best->second] = -1;
  return detail::makeVector(inst, c.h.mulVec(t), t);
}

// Integer upper bound on ||x*||_p (hence on ||x*||_inf), Eq.-style minimum of
// the last-column estimate and a Minkowski estimate, all rounding outward.
inline Int minkowskiBound(const SlvpInstance& inst) {
  const auto& c = inst.system;
  const std::size_t n = c.n(), d = c.d(), m = c.m();
  const Int delta = c.deltaRank;

  Int m1;
  if (inst.norm.isInf) {
    m1 = delta;
  } else {
    // smallest M with M^p >= Delta^p * (m+1)
    m1 = ceilRoot(ipow(delta, inst.norm.p) * Int(static_cast<long long>(m + 1)),
                  inst.norm.p);
  }

  // smallest M with M^(2n) * n^n >= 3^n * d^n * Delta^2 * (n!)^2, times an
  // extra d^n when the l_1-ball section argument needs the sqrt(d) inflation
  // (finite p < 2 with m >= 1).
  Int fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<long long>(i);
  Int rhs = ipow(3, static_cast<unsigned>(n)) *
            ipow(Int(static_cast<long long>(d)), static_cast<unsigned>(n)) * delta *
            delta * fact * fact;
  if (!inst.norm.isInf && inst.norm.p < 2 && m >= 1)
    rhs *= ipow(Int(static_cast<long long>(d)), static_cast<unsigned>(n));
  const Int nPow = ipow(Int(static_cast<long long>(n)), static_cast<unsigned>(n));
  Int m2 = 1;
  while (ipow(m2, static_cast<unsigned>(2 * n)) * nPow < rhs) ++m2;

  Int best = m1 < m2 ? m1 : m2;
  return best < 1 ? Int(1) : best;
}

// ---------------------------------------------------------------------------
// Group dynamic program.

// Sparse value table of the layered subproblems. layers[l] holds the states
// reachable after committing columns 0..l with at least one nonzero digit
// (the all-zero prefix is the implicit remaining state); value is the optimal
// partial objective and bestDigit a witness digit for this layer.
struct GroupDpTable {
  struct Entry {
    Int value;
    long long bestDigit;
  };
  std::vector<std::unordered_map<std::uint64_t, Entry>> layers;
  long long digitBound = 0;
  long long etaBound = 0;
  std::uint64_t gammaRange = 1;
  std::uint64_t etaRadix = 1;

  std::size_t stateCount() const {
    std::size_t c = 0;
    for (const auto& l : layers) c += l.size();
    return c;
  }
};

namespace detail {

inline std::size_t maxTableStates() {
  if (const char* env = std::getenv("DELTAFPT_MAX_TABLE")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 20'000'000;
}

// Congruence/coupling data shared by the solvers, narrowed to machine words
// after explicit range guards.
struct GroupContext {
  std::size_t n = 0, m = 0;
  long long delta = 1;
  std::vector<long long> mods;                 // nontrivial invariant factors
  std::vector<std::vector<long long>> gcol;    // per column: residue increments
  std::vector<std::vector<long long>> rcol;    // per column: coupling increments
  std::vector<std::vector<long long>> etaLim;  // per column: pruning bound, inclusive
  std::uint64_t gammaRange = 1;
  long long etaBound = 0;                      // packing box, inclusive
  std::uint64_t etaRadix = 1;

  std::uint64_t gammaOf(const std::vector<long long>& res) const {
    std::uint64_t idx = 0, radix = 1;
    for (std::size_t i = 0; i < mods.size(); ++i) {
      idx += static_cast<std::uint64_t>(res[i]) * radix;
      radix *= static_cast<std::uint64_t>(mods[i]);
    }
    return idx;
  }

  std::uint64_t keyOf(std::uint64_t gammaIdx, const std::vector<long long>& eta) const {
    std::uint64_t e = 0, radix = 1;
    for (std::size_t i = 0; i < m; ++i) {
      e += static_cast<std::uint64_t>(eta[i] + etaBound) * radix;
      radix *= etaRadix;
    }
    return gammaIdx + gammaRange * e;
  }

  void unpack(std::uint64_t key, std::vector<long long>& res,
              std::vector<long long>& eta) const {
    std::uint64_t g = key % gammaRange;
    for (std::size_t i = 0; i < mods.size(); ++i) {
      res[i] = static_cast<long long>(g % static_cast<std::uint64_t>(mods[i]));
      g /= static_cast<std::uint64_t>(mods[i]);
    }
    std::uint64_t e = key / gammaRange;
    for (std::size_t i = 0; i < m; ++i) {
      eta[i] = static_cast<long long>(e % etaRadix) - etaBound;
      e /= etaRadix;
    }
  }
};

inline long long narrowOrThrow(const Int& v, const char* what, unsigned bits = 62) {
  const Int lim = (Int(1) << bits);
  if (absInt(v) >= lim)
    throw TableLimitError(std::string(what) + " exceeds the supported table range");
  return static_cast<long long>(v);
}

// digitBound is the largest |z| committed per column; boundVec[i] limits the
// coupling coordinate i at read-off (|eta_i| <= boundVec[i] for final states).
inline GroupContext buildGroupContext(const lattice::CanonicalSystem& c,
                                      const Int& digitBound, const Int& etaBoundWanted,
                                      const Int& finalEtaBound) {
  GroupContext ctx;
  ctx.n = c.n();
  ctx.m = c.m();
  ctx.delta = narrowOrThrow(c.delta, "group order", 30);
  const Int mBig = digitBound;
  narrowOrThrow(mBig, "digit bound", 30);

  const SnfResult sr = snf(c.hB);
  const IntMatrix p = unimodularInverse(sr.pInv);
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < ctx.n; ++i)
    if (sr.s.at(i, i) > 1) {
      rows.push_back(i);
      ctx.mods.push_back(narrowOrThrow(sr.s.at(i, i), "invariant factor", 30));
    }
  ctx.gcol.assign(ctx.n, std::vector<long long>(rows.size()));
  for (std::size_t l = 0; l < ctx.n; ++l)
    for (std::size_t i = 0; i < rows.size(); ++i)
      ctx.gcol[l][i] = narrowOrThrow(
          floorMod(p.at(rows[i], l), sr.s.at(rows[i], rows[i])), "residue", 30);
  ctx.gammaRange = 1;
  for (long long mod : ctx.mods) ctx.gammaRange *= static_cast<std::uint64_t>(mod);

  std::vector<IntVec> rcolBig(ctx.n, IntVec(ctx.m));
  if (ctx.m > 0) {
    // coupling matrix R = hN * (delta * hB^{-1}); hB has positive determinant
    const IntMatrix r = *c.hN * adjugate(c.hB);
    ctx.rcol.assign(ctx.n, std::vector<long long>(ctx.m));
    for (std::size_t l = 0; l < ctx.n; ++l)
      for (std::size_t i = 0; i < ctx.m; ++i) {
        rcolBig[l][i] = r.at(i, l);
        ctx.rcol[l][i] = narrowOrThrow(r.at(i, l), "coupling entry", 30);
      }
  } else {
    ctx.rcol.assign(ctx.n, {});
  }

  ctx.etaBound = narrowOrThrow(etaBoundWanted, "eta box", 60);
  ctx.etaRadix = static_cast<std::uint64_t>(2 * ctx.etaBound + 1);
  Int keySpace = Int(ctx.gammaRange);
  for (std::size_t i = 0; i < ctx.m; ++i) keySpace *= Int(ctx.etaRadix);
  narrowOrThrow(keySpace, "state space", 62);

  // reachability-to-read-off pruning limits, computed exactly then clamped
  ctx.etaLim.assign(ctx.n, std::vector<long long>(ctx.m, 0));
  std::vector<Int> suffix(ctx.m, Int(0));
  for (std::size_t l = ctx.n; l-- > 0;) {
    for (std::size_t i = 0; i < ctx.m; ++i) {
      Int lim = finalEtaBound + mBig * suffix[i];
      if (lim > etaBoundWanted) lim = etaBoundWanted;
      ctx.etaLim[l][i] = static_cast<long long>(lim);
    }
    if (l > 0)
      for (std::size_t i = 0; i < ctx.m; ++i) suffix[i] += absInt(rcolBig[l][i]);
  }
  return ctx;
}

}  // namespace detail

// Scalar coefficient box that makes oracleShortest complete for optima with
// ||x||_inf <= mBound: |t_i| <= rowsum_i(|hB^{-1}|) * mBound.
inline Int certifiedCoeffBox(const SlvpInstance& inst, const Int& mBound) {
  const auto& c = inst.system;
  const IntMatrix star = adjugate(c.hB);
  Int best = 1;
  for (std::size_t i = 0; i < c.n(); ++i) {
    Int rowSum = 0;
    for (std::size_t j = 0; j < c.n(); ++j) rowSum += absInt(star.at(i, j));
    const Int b = ceilRat(Rat(rowSum * mBound, c.delta));
    if (b > best) best = b;
  }
  return best;
}

namespace detail {

// Shared DP driver: builds the per-layer tables for digit range [-M, M] with
// the nonzero-prefix convention described on GroupDpTable.
inline GroupDpTable runShortestDp(const GroupContext& ctx, const Norm& nm,
                                  long long mDigit) {
  GroupDpTable table;
  table.digitBound = mDigit;
  table.etaBound = ctx.etaBound;
  table.gammaRange = ctx.gammaRange;
  table.etaRadix = ctx.etaRadix;
  table.layers.resize(ctx.n);

  const std::size_t cap = maxTableStates();
  std::vector<Int> digitCost(2 * mDigit + 1);
  for (long long z = -mDigit; z <= mDigit; ++z)
    digitCost[z + mDigit] = normTerm(nm, Int(z));

  std::vector<long long> res(ctx.mods.size(), 0), eta(ctx.m, 0);
  std::vector<long long> nres(ctx.mods.size()), neta(ctx.m);
  std::size_t states = 0;

  auto allowed = [&](std::size_t l, const std::vector<long long>& e) {
    for (std::size_t i = 0; i < ctx.m; ++i)
      if (std::llabs(e[i]) > ctx.etaLim[l][i]) return false;
    return true;
  };
  auto relax = [&](std::size_t l, std::uint64_t key, const Int& val, long long z) {
    auto& layer = table.layers[l];
    auto it = layer.find(key);
    if (it == layer.end()) {
      layer.emplace(key, GroupDpTable::Entry{val, z});
      if (++states > cap)
        throw TableLimitError("dynamic program exceeded DELTAFPT_MAX_TABLE states");
    } else if (val < it->second.value) {
      it->second = GroupDpTable::Entry{val, z};
    }
  };
  auto spawn = [&](std::size_t l) {
    for (long long z = -mDigit; z <= mDigit; ++z) {
      if (z == 0) continue;
      for (std::size_t i = 0; i < ctx.mods.size(); ++i)
        nres[i] = ((z % ctx.mods[i]) * (ctx.gcol[l][i] % ctx.mods[i]) % ctx.mods[i] +
                   ctx.mods[i]) %
                  ctx.mods[i];
      for (std::size_t i = 0; i < ctx.m; ++i) neta[i] = z * ctx.rcol[l][i];
      if (!allowed(l, neta)) continue;
      relax(l, ctx.keyOf(ctx.gammaOf(nres), neta), digitCost[z + mDigit], z);
    }
  };

  spawn(0);
  for (std::size_t l = 1; l < ctx.n; ++l) {
    for (const auto& [key, entry] : table.layers[l - 1]) {
      ctx.unpack(key, res, eta);
      for (long long z = -mDigit; z <= mDigit; ++z) {
        for (std::size_t i = 0; i < ctx.mods.size(); ++i)
          nres[i] = ((res[i] + z * ctx.gcol[l][i]) % ctx.mods[i] + ctx.mods[i]) %
                    ctx.mods[i];
        for (std::size_t i = 0; i < ctx.m; ++i) neta[i] = eta[i] + z * ctx.rcol[l][i];
        if (!allowed(l, neta)) continue;
        relax(l, ctx.keyOf(ctx.gammaOf(nres), neta),
              normCombine(nm, entry.value, digitCost[z + mDigit]), z);
      }
    }
    spawn(l);
  }
  return table;
}

// Enumerates every digit vector achieving `value` at the given final state.
inline void backtrackAll(const GroupContext& ctx, const GroupDpTable& table,
                         const Norm& nm, std::size_t l, std::uint64_t key,
                         const Int& value, std::vector<long long>& digits,
                         std::vector<IntVec>& out, std::size_t capPaths) {
  if (out.size() >= capPaths) return;
  const long long mDigit = table.digitBound;
  std::vector<long long> res(ctx.mods.size()), eta(ctx.m);
  ctx.unpack(key, res, eta);
  std::vector<long long> pres(ctx.mods.size()), peta(ctx.m);
  for (long long z = -mDigit; z <= mDigit; ++z) {
    const Int cost = normTerm(nm, Int(z));
    for (std::size_t i = 0; i < ctx.mods.size(); ++i)
      pres[i] = ((res[i] - z * ctx.gcol[l][i]) % ctx.mods[i] + ctx.mods[i]) % ctx.mods[i];
    for (std::size_t i = 0; i < ctx.m; ++i) peta[i] = eta[i] - z * ctx.rcol[l][i];
    digits[l] = z;
    if (z != 0) {
      // all-zero prefix: the spawn transition
      bool zeroState = true;
      for (long long r : pres) zeroState = zeroState && r == 0;
      for (long long e : peta) zeroState = zeroState && e == 0;
      if (zeroState && cost == value) {
        for (std::size_t j = 0; j < l; ++j) digits[j] = 0;
        IntVec xb(ctx.n);
        for (std::size_t j = 0; j < ctx.n; ++j) xb[j] = digits[j];
        out.push_back(std::move(xb));
        if (out.size() >= capPaths) return;
      }
    }
    if (l == 0) continue;
    bool inRange = true;
    for (std::size_t i = 0; i < ctx.m; ++i)
      if (std::llabs(peta[i]) > ctx.etaBound) inRange = false;
    if (!inRange) continue;
    const auto& prev = table.layers[l - 1];
    auto it = prev.find(ctx.keyOf(ctx.gammaOf(pres), peta));
    if (it == prev.end()) continue;
    if (normCombine(nm, it->second.value, cost) != value) continue;
    backtrackAll(ctx, table, nm, l - 1, it->first, it->second.value, digits, out,
                 capPaths);
  }
}

}  // namespace detail

struct DpSolution {
  LatticeVector best;
  GroupDpTable table;
};

inline DpSolution solveDpWithTable(const SlvpInstance& inst,
                                   std::optional<Int> mOverride = std::nullopt) {
  const auto& c = inst.system;
  const std::size_t n = c.n(), m = c.m();
  const Int mBig = mOverride ? *mOverride : minkowskiBound(inst);
  const Int etaBox = Int(static_cast<long long>(n)) * mBig * c.deltaRank;
  detail::GroupContext ctx = detail::buildGroupContext(
      c, mBig, m > 0 ? etaBox : Int(0), c.delta * mBig);
  const long long mDigit = static_cast<long long>(mBig);

  GroupDpTable table = detail::runShortestDp(ctx, inst.norm, mDigit);

  // read-off: states with trivial residues whose coupling vector is delta
  // times an integer point in the box
  std::optional<Int> best;
  std::vector<std::pair<std::uint64_t, IntVec>> finals;
  std::vector<long long> res(ctx.mods.size()), eta(ctx.m);
  for (const auto& [key, entry] : table.layers[n - 1]) {
    ctx.unpack(key, res, eta);
    bool ok = true;
    for (long long r : res) ok = ok && r == 0;
    IntVec xn(m);
    for (std::size_t i = 0; i < m && ok; ++i) {
      ok = eta[i] % ctx.delta == 0;
      if (ok) {
        xn[i] = eta[i] / ctx.delta;
        ok = absInt(xn[i]) <= mBig;
      }
    }
    if (!ok) continue;
    Int total = entry.value;
    for (std::size_t i = 0; i < m; ++i)
      total = normCombine(inst.norm, total, normTerm(inst.norm, xn[i]));
    if (!best || total < *best) {
      best = total;
      finals.clear();
    }
    if (total == *best) finals.emplace_back(key, xn);
  }
  if (!best) throw InternalError("group DP found no nonzero lattice vector");

  // all optimal digit vectors; ties broken by the lexicographically smallest
  // coefficient vector in the original column order
  std::optional<LatticeVector> winner;
  std::vector<long long> digits(n);
  for (const auto& [key, xn] : finals) {
    const Int tableVal = table.layers[n - 1].at(key).value;
    std::vector<IntVec> xbs;
    detail::backtrackAll(ctx, table, inst.norm, n - 1, key, tableVal, digits, xbs,
                         100000);
    for (const IntVec& xb : xbs) {
      IntVec xCanon(c.d());
      for (std::size_t i = 0; i < n; ++i) xCanon[i] = xb[i];
      for (std::size_t i = 0; i < m; ++i) xCanon[n + i] = xn[i];
      LatticeVector cand =
          detail::makeVector(inst, xCanon, detail::integralSolve(c.hB, xb));
      if (cand.normValue != *best)
        throw InternalError("reconstructed vector does not match the DP value");
      if (!winner || lexLess(cand.t, winner->t)) winner = std::move(cand);
    }
  }
  if (!winner) throw InternalError("no optimal path could be reconstructed");
  if (maxAbs(winner->x) > mBig)
    throw InternalError("optimum escaped the localization box");
  return DpSolution{std::move(*winner), std::move(table)};
}

inline LatticeVector solveDp(const SlvpInstance& inst,
                             std::optional<Int> mOverride = std::nullopt) {
  return solveDpWithTable(inst, std::move(mOverride)).best;
}

// ---------------------------------------------------------------------------
// Exhaustive oracle over coefficient boxes.

inline LatticeVector oracleShortest(const SlvpInstance& inst, const Int& coeffBox) {
  if (coeffBox < 1) throw ContractError("coefficient box must be >= 1");
  const auto& c = inst.system;
  const std::size_t n = c.n(), d = c.d();
  const long long box = detail::narrowOrThrow(coeffBox, "coefficient box");

  // magnitude precheck for the machine-word fast path
  Int worst = 0;
  for (std::size_t i = 0; i < d; ++i) {
    Int rowAbs = 0;
    for (std::size_t j = 0; j < n; ++j) rowAbs += absInt(c.h.at(i, j));
    if (rowAbs > worst) worst = rowAbs;
  }
  worst *= coeffBox;
  const Int normCeiling = inst.norm.isInf
                              ? worst
                              : Int(static_cast<long long>(d)) * ipow(worst, inst.norm.p);
  const bool narrow = normCeiling < (Int(1) << 62);

  std::optional<Int> bestNorm;
  std::optional<IntVec> bestTCanon;
  IntVec tOrigBest;

  auto consider = [&](const IntVec& tCanon, const Int& nv) {
    if (bestNorm && nv > *bestNorm) return;
    for (int sign : {1, -1}) {
      IntVec tc = tCanon;
      if (sign < 0)
        for (Int& v : tc) v = -v;
      IntVec tOrig = c.u.mulVec(tc);
      if (!bestNorm || nv < *bestNorm || lexLess(tOrig, tOrigBest)) {
        bestNorm = nv;
        bestTCanon = tc;
        tOrigBest = std::move(tOrig);
      }
    }
  };

  if (narrow) {
    // odometer over t, canonical representatives only (first nonzero > 0);
    // x is maintained incrementally by column deltas
    std::vector<long long> t(n, -box);
    std::vector<long long> x(d);
    std::vector<std::vector<long long>> hcol(n, std::vector<long long>(d));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < d; ++i)
        hcol[j][i] = static_cast<long long>(c.h.at(i, j));
    for (std::size_t i = 0; i < d; ++i) {
      long long acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += hcol[j][i] * (-box);
      x[i] = acc;
    }
    t[0] = -box - 1;
    for (std::size_t i = 0; i < d; ++i) x[i] -= hcol[0][i];
    const unsigned p = inst.norm.p;
    long long bestNarrow = std::numeric_limits<long long>::max();
    for (;;) {
      std::size_t j = 0;
      while (j < n && t[j] == box) {
        for (std::size_t i = 0; i < d; ++i) x[i] -= (2 * box) * hcol[j][i];
        t[j] = -box;
        ++j;
      }
      if (j == n) break;
      ++t[j];
      for (std::size_t i = 0; i < d; ++i) x[i] += hcol[j][i];
      std::size_t lead = n;
      for (std::size_t q = n; q-- > 0;)
        if (t[q] != 0) lead = q;
      if (lead == n || t[lead] < 0) continue;  // zero or negative representative
      long long nv = 0;
      if (inst.norm.isInf) {
        for (std::size_t i = 0; i < d; ++i) nv = std::max(nv, std::llabs(x[i]));
      } else {
        for (std::size_t i = 0; i < d; ++i) {
          const long long a = std::llabs(x[i]);
          long long term = 1;
          for (unsigned q = 0; q < p; ++q) term *= a;
          nv += term;
        }
      }
      if (nv > bestNarrow) continue;
      bestNarrow = nv;
      IntVec tc(n);
      for (std::size_t q = 0; q < n; ++q) tc[q] = t[q];
      consider(tc, Int(nv));
    }
  } else {
    std::vector<long long> t(n, -box);
    t[0] = -box - 1;
    for (;;) {
      std::size_t j = 0;
      while (j < n && t[j] == box) {
        t[j] = -box;
        ++j;
      }
      if (j == n) break;
      ++t[j];
      std::size_t lead = n;
      for (std::size_t q = n; q-- > 0;)
        if (t[q] != 0) lead = q;
      if (lead == n || t[lead] < 0) continue;
      IntVec tc(n);
      for (std::size_t q = 0; q < n; ++q) tc[q] = t[q];
      consider(tc, normValueOf(inst.norm, c.h.mulVec(tc)));
    }
  }
  if (!bestTCanon) throw InternalError("empty oracle enumeration");
  return detail::makeVector(inst, c.h.mulVec(*bestTCanon), *bestTCanon);
}

// ---------------------------------------------------------------------------
// Closest vector: same pipeline with a shifted separable objective and no
// nonzero-exclusion (the zero vector is an admissible answer).

struct CvpResult {
  LatticeVector vector;  // the closest lattice point (normValue is its own norm)
  Rat distance;          // sum |x_i - r_i|^p (finite p) or max |x_i - r_i|
};

namespace detail {

inline Rat cvpTerm(const Norm& nm, const Rat& v) {
  Rat a = v < 0 ? Rat(-v) : v;
  if (nm.isInf) return a;
  Rat acc = 1;
  for (unsigned i = 0; i < nm.p; ++i) acc *= a;
  return acc;
}

inline Rat cvpCombine(const Norm& nm, const Rat& a, const Rat& b) {
  return nm.isInf ? (a > b ? a : b) : Rat(a + b);
}

struct CvpEntry {
  Rat value;
  long long bestDigit;
};

}  // namespace detail

inline CvpResult solveCvp(const SlvpInstance& inst, const RatVec& target) {
  const auto& c = inst.system;
  const std::size_t n = c.n(), m = c.m(), d = c.d();
  if (target.size() != d) throw DimensionError("target dimension mismatch");

  RatVec r(d);
  for (std::size_t i = 0; i < d; ++i) r[i] = target[c.rowPerm[i]];

  Rat rho = 0;
  for (const Rat& v : r) rho = std::max(rho, absRat(v));
  Int mBig;
  if (inst.norm.isInf) {
    mBig = ceilRat(2 * rho);
  } else {
    Rat rhoP = 1;
    for (unsigned i = 0; i < inst.norm.p; ++i) rhoP *= rho;
    mBig = ceilRoot(ceilRat(Rat(static_cast<long long>(d)) * rhoP), inst.norm.p) +
           ceilRat(rho);
  }

  const Int mSafe = mBig < 1 ? Int(1) : mBig;
  const Int etaBox = Int(static_cast<long long>(n)) * mSafe * c.deltaRank;
  detail::GroupContext ctx =
      detail::buildGroupContext(c, mSafe, m > 0 ? etaBox : Int(0), c.delta * mSafe);
  const long long mDigit = static_cast<long long>(mBig);
  const std::size_t cap = detail::maxTableStates();

  using Layer = std::unordered_map<std::uint64_t, detail::CvpEntry>;
  std::vector<Layer> layers(n + 1);
  std::vector<long long> res(ctx.mods.size(), 0), eta(ctx.m, 0);
  std::vector<long long> nres(ctx.mods.size()), neta(ctx.m);
  layers[0].emplace(ctx.keyOf(0, eta), detail::CvpEntry{Rat(0), 0});

  std::size_t states = 0;
  for (std::size_t l = 0; l < n; ++l) {
    for (const auto& [key, entry] : layers[l]) {
      ctx.unpack(key, res, eta);
      for (long long z = -mDigit; z <= mDigit; ++z) {
        for (std::size_t i = 0; i < ctx.mods.size(); ++i)
          nres[i] = ((res[i] + z * ctx.gcol[l][i]) % ctx.mods[i] + ctx.mods[i]) %
                    ctx.mods[i];
        bool ok = true;
        for (std::size_t i = 0; i < ctx.m; ++i) {
          neta[i] = eta[i] + z * ctx.rcol[l][i];
          if (std::llabs(neta[i]) > ctx.etaLim[l][i]) ok = false;
        }
        if (!ok) continue;
        const Rat val = detail::cvpCombine(inst.norm, entry.value,
                                           detail::cvpTerm(inst.norm, Rat(z) - r[l]));
        auto& layer = layers[l + 1];
        const std::uint64_t nk = ctx.keyOf(ctx.gammaOf(nres), neta);
        auto it = layer.find(nk);
        if (it == layer.end()) {
          layer.emplace(nk, detail::CvpEntry{val, z});
          if (++states > cap)
            throw TableLimitError("dynamic program exceeded DELTAFPT_MAX_TABLE states");
        } else if (val < it->second.value) {
          it->second = detail::CvpEntry{val, z};
        }
      }
    }
  }

  std::optional<Rat> best;
  std::vector<std::pair<std::uint64_t, IntVec>> finals;
  for (const auto& [key, entry] : layers[n]) {
    ctx.unpack(key, res, eta);
    bool ok = true;
    for (long long v : res) ok = ok && v == 0;
    IntVec xn(m);
    for (std::size_t i = 0; i < m && ok; ++i) {
      ok = eta[i] % ctx.delta == 0;
      if (ok) xn[i] = eta[i] / ctx.delta;
    }
    if (!ok) continue;
    Rat total = entry.value;
    for (std::size_t i = 0; i < m; ++i)
      total = detail::cvpCombine(inst.norm, total,
                                 detail::cvpTerm(inst.norm, Rat(xn[i]) - r[n + i]));
    if (!best || total < *best) {
      best = total;
      finals.clear();
    }
    if (total == *best) finals.emplace_back(key, xn);
  }
  if (!best) throw InternalError("closest-vector DP produced no state");

  // enumerate optimal digit paths for the deterministic tie-break
  std::optional<LatticeVector> winner;
  std::vector<long long> digits(n);
  std::vector<long long> pres(ctx.mods.size()), peta(ctx.m);
  auto dfs = [&](auto&& self, std::size_t l, std::uint64_t key, const Rat& value,
                 std::vector<IntVec>& out) -> void {
    if (out.size() >= 100000) return;
    if (l == 0) {
      IntVec xb(n);
      for (std::size_t j = 0; j < n; ++j) xb[j] = digits[j];
      out.push_back(std::move(xb));
      return;
    }
    std::vector<long long> curRes(ctx.mods.size()), curEta(ctx.m);
    ctx.unpack(key, curRes, curEta);
    for (long long z = -mDigit; z <= mDigit; ++z) {
      for (std::size_t i = 0; i < ctx.mods.size(); ++i)
        pres[i] = ((curRes[i] - z * ctx.gcol[l - 1][i]) % ctx.mods[i] + ctx.mods[i]) %
                  ctx.mods[i];
      bool ok = true;
      for (std::size_t i = 0; i < ctx.m; ++i) {
        peta[i] = curEta[i] - z * ctx.rcol[l - 1][i];
        if (std::llabs(peta[i]) > ctx.etaBound) ok = false;
      }
      if (!ok) continue;
      auto it = layers[l - 1].find(ctx.keyOf(ctx.gammaOf(pres), peta));
      if (it == layers[l - 1].end()) continue;
      if (detail::cvpCombine(inst.norm, it->second.value,
                             detail::cvpTerm(inst.norm, Rat(z) - r[l - 1])) != value)
        continue;
      digits[l - 1] = z;
      self(self, l - 1, it->first, it->second.value, out);
      if (out.size() >= 100000) return;
    }
  };

  for (const auto& [key, xn] : finals) {
    std::vector<IntVec> xbs;
    dfs(dfs, n, key, layers[n].at(key).value, xbs);
    for (const IntVec& xb : xbs) {
      IntVec xCanon(d);
      for (std::size_t i = 0; i < n; ++i) xCanon[i] = xb[i];
      for (std::size_t i = 0; i < m; ++i) xCanon[n + i] = xn[i];
      LatticeVector cand =
          detail::makeVector(inst, xCanon, detail::integralSolve(c.hB, xb));
      if (!winner || lexLess(cand.t, winner->t)) winner = std::move(cand);
    }
  }
  if (!winner) throw InternalError("no optimal closest-vector path");
  return CvpResult{std::move(*winner), std::move(*best)};
}

}  // namespace slvp
}  // namespace deltafpt
