#include "deltafpt/lattice.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "generators.hpp"

using namespace deltafpt;
using lattice::CanonicalSystem;

TEST_CASE("canonicalize goldens") {
  SECTION("identity") {
    CanonicalSystem c = lattice::canonicalize(IntMatrix::identity(3));
    CHECK(c.s == 3);
    CHECK(c.k == 0);
    CHECK(c.delta == 1);
    CHECK(c.hB == IntMatrix::identity(3));
    CHECK_FALSE(c.hN.has_value());
  }
  SECTION("2x2 sorts the unit diagonal entry first") {
    IntMatrix a{{2, 4}, {1, 3}};
    CanonicalSystem c = lattice::canonicalize(a);
    CHECK(c.hB == IntMatrix{{1, 0}, {0, 2}});
    CHECK(c.s == 1);
    CHECK(c.k == 1);
    CHECK(c.delta == 2);
    CHECK(lattice::verifyCanonical(a, c));
  }
  SECTION("3x2 keeps the dense row below") {
    IntMatrix a{{1, 0}, {0, 1}, {5, 7}};
    CanonicalSystem c = lattice::canonicalize(a);
    CHECK(c.hB == IntMatrix::identity(2));
    REQUIRE(c.hN.has_value());
    CHECK(*c.hN == IntMatrix{{5, 7}});
    CHECK(c.m() == 1);
    CHECK(c.deltaRank == 7);
  }
  SECTION("rank deficiency") {
    CHECK_THROWS_AS(lattice::canonicalize(IntMatrix{{1, 2}, {2, 4}, {3, 6}}),
                    RankError);
  }
}

TEST_CASE("canonicalize is idempotent") {
  std::mt19937_64 rng(101);
  for (int iter = 0; iter < 60; ++iter) {
    const std::size_t n = testgen::randSize(rng, 1, 4);
    const std::size_t m = testgen::randSize(rng, 0, 2);
    IntMatrix a = testgen::randomCanonicalShape(rng, n, m, 2, 4, 4);
    CanonicalSystem c1 = lattice::canonicalize(a);
    CanonicalSystem c2 = lattice::canonicalize(c1.h);
    CHECK(c2.h == c1.h);
    CHECK(c2.u == IntMatrix::identity(n));
    for (std::size_t i = 0; i < c2.rowPerm.size(); ++i) CHECK(c2.rowPerm[i] == i);
  }
}

TEST_CASE("canonicalize invariants on disguised random instances") {
  std::mt19937_64 rng(20240819);
  for (int iter = 0; iter < 80; ++iter) {
    const std::size_t n = testgen::randSize(rng, 1, 4);
    const std::size_t m = testgen::randSize(rng, 0, 2);
    IntMatrix base = testgen::randomCanonicalShape(rng, n, m, 2, 4, 3);
    IntMatrix a = permuteRows(base * testgen::randomUnimodular(rng, n, 4),
                              testgen::randomPermutation(rng, n + m));
    CanonicalSystem c = lattice::canonicalize(a);
    CHECK(lattice::verifyCanonical(a, c));

    // HNF property 3: nontrivial diagonal sum <= delta/2^(k-1) + 2(k-1) <= delta
    if (c.k >= 1) {
      Int diagSum = 0;
      for (std::size_t i = c.s; i < c.n(); ++i) diagSum += c.hB.at(i, i);
      const Rat mid = Rat(c.delta) / Rat(ipow(2, static_cast<unsigned>(c.k - 1))) +
                      2 * (Rat(static_cast<long long>(c.k)) - 1);
      CHECK(Rat(diagSum) <= mid);
      CHECK(mid <= Rat(c.delta));
    }

    // lattice preservation modulo the row permutation: two-sided membership
    IntMatrix aPerm = permuteRows(a, c.rowPerm);
    IntMatrix basisA = aPerm.topRows(c.n());
    for (std::size_t j = 0; j < c.n(); ++j) {
      CHECK(inColumnLattice(c.hB, basisA.col(j)));
      CHECK(inColumnLattice(basisA, c.hB.col(j)));
    }
  }
}

TEST_CASE("checkEntryBound") {
  SECTION("vacuous without extra rows") {
    CanonicalSystem c = lattice::canonicalize(IntMatrix::identity(3));
    auto r = lattice::checkEntryBound(c);
    CHECK(r.vacuous);
  }
  SECTION("golden [5 7] row") {
    CanonicalSystem c = lattice::canonicalize(IntMatrix{{1, 0}, {0, 1}, {5, 7}});
    auto r = lattice::checkEntryBound(c);
    CHECK_FALSE(r.vacuous);
    CHECK(r.hnMax == 7);
    CHECK(r.deltaBound == 7);
    CHECK(r.passDelta);
    CHECK(r.passRefined);
  }
  SECTION("property sweep over random bounded-minor instances") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 100; ++iter) {
      const std::size_t n = testgen::randSize(rng, 2, 4);
      const std::size_t m = testgen::randSize(rng, 1, 2);
      IntMatrix a = testgen::randomCanonicalShape(rng, n, m, 2, 4, 4);
      auto r = lattice::checkEntryBound(lattice::canonicalize(a));
      CHECK(r.passRefined);
      CHECK(r.passDelta);
    }
  }
}

TEST_CASE("checkSubRankBound") {
  SECTION("identity plus a row") {
    CanonicalSystem c = lattice::canonicalize(IntMatrix{{1, 0}, {0, 1}, {1, 1}});
    auto r = lattice::checkSubRankBound(c);
    CHECK(r.subRankMinor == 1);
    CHECK(r.pass);
  }
  SECTION("bound instantiated at delta = 2") {
    // n = 3 instance with Delta = 2: Delta_2 <= (4/2)(1+1) = 4
    IntMatrix a{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}, {1, 1, 1}};
    CanonicalSystem c = lattice::canonicalize(a);
    REQUIRE(c.deltaRank == 2);
    auto r = lattice::checkSubRankBound(c);
    CHECK(r.boundFloor == Rat(4));
    CHECK(r.subRankMinor <= 4);
    CHECK(r.pass);
  }
  SECTION("square input is rejected") {
    CanonicalSystem c = lattice::canonicalize(IntMatrix::identity(2));
    CHECK_THROWS_AS(lattice::checkSubRankBound(c), DimensionError);
  }
  SECTION("random sweep") {
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 100; ++iter) {
      const std::size_t n = testgen::randSize(rng, 2, 5);
      IntMatrix a = testgen::randomFullColumnRank(rng, n + 1, n, -9, 9);
      auto r = lattice::checkSubRankBound(lattice::canonicalize(a));
      CHECK(r.pass);
    }
  }
}

TEST_CASE("checkRowThreshold") {
  SECTION("identity trivially satisfies the row count") {
    auto r = lattice::checkRowThreshold(IntMatrix::identity(4));
    CHECK(r.preconditionHolds);
    CHECK(r.rowCountOk);
  }
  SECTION("threshold not met is inconclusive") {
    // Delta = 1, n = 5: threshold base 1*9 = 9, n = 5 is not > 9
    auto r = lattice::checkRowThreshold(IntMatrix::identity(5));
    CHECK(r.delta == 1);
    CHECK(r.thresholdBase == 9);
    CHECK_FALSE(r.thresholdMet);
    CHECK_FALSE(r.conclusive);
  }
  SECTION("singular submatrix reported, not thrown") {
    IntMatrix a{{1, 0}, {0, 1}, {1, 0}};  // rows 0,2 pick a singular 2x2
    auto r = lattice::checkRowThreshold(a);
    CHECK_FALSE(r.preconditionHolds);
    CHECK(r.singularRows == std::vector<std::size_t>{0, 2});
  }
  SECTION("lemma conclusion holds whenever the threshold fires") {
    std::mt19937_64 rng(29);
    int fired = 0;
    for (int iter = 0; iter < 300; ++iter) {
      const std::size_t n = testgen::randSize(rng, 10, 12);
      IntMatrix a(n + 1, n);
      for (std::size_t i = 0; i < n; ++i) a.at(i, i) = 1;
      for (std::size_t j = 0; j < n; ++j) a.at(n, j) = 1;  // all-ones extra row
      auto r = lattice::checkRowThreshold(a);
      REQUIRE(r.preconditionHolds);
      if (r.thresholdMet) {
        ++fired;
        CHECK(r.rowCountOk);
      }
    }
    CHECK(fired > 0);
  }
}
