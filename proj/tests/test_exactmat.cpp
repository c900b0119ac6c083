#include "deltafpt/exactmat.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "generators.hpp"

using namespace deltafpt;

TEST_CASE("det: identity and small goldens") {
  CHECK(det(IntMatrix::identity(3)) == 1);
  CHECK(det(IntMatrix{{2, 1}, {1, 2}}) == 3);
  CHECK(det(IntMatrix{{2, 4}, {1, 2}}) == 0);
  CHECK(det(IntMatrix{{5}}) == 5);
  CHECK_THROWS_AS(det(IntMatrix(2, 3)), DimensionError);
}

TEST_CASE("det matches cofactor expansion on random matrices") {
  std::mt19937_64 rng(20240817);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = testgen::randSize(rng, 1, 6);
    IntMatrix a = testgen::randomMatrix(rng, n, n, -9, 9);
    CHECK(det(a) == detail::detCofactor(a));
  }
}

TEST_CASE("adjugate goldens and defining identity") {
  CHECK(adjugate(IntMatrix::identity(4)) == IntMatrix::identity(4));
  CHECK(adjugate(IntMatrix{{2, 0}, {0, 3}}) == IntMatrix{{3, 0}, {0, 2}});
  CHECK(adjugate(IntMatrix{{1, 2}, {3, 4}}) == IntMatrix{{4, -2}, {-3, 1}});
  CHECK_THROWS_AS(adjugate(IntMatrix(2, 3)), DimensionError);

  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = testgen::randSize(rng, 1, 5);
    IntMatrix a = testgen::randomMatrix(rng, n, n, -6, 6);
    IntMatrix left = a * adjugate(a);
    IntMatrix right = adjugate(a) * a;
    const Int d = det(a);
    IntMatrix expect(n, n);
    for (std::size_t i = 0; i < n; ++i) expect.at(i, i) = d;
    CHECK(left == expect);   // holds for singular a too: product is zero
    CHECK(right == expect);
  }
}

TEST_CASE("maxMinorAbs goldens") {
  CHECK(maxMinorAbs(IntMatrix::identity(2), 2) == 1);
  CHECK(maxMinorAbs(IntMatrix{{-1, 0}, {0, -1}, {2, 3}}, 2) == 3);
  IntMatrix a{{-7, 2}, {3, 5}};
  CHECK(maxMinorAbs(a, 1) == a.maxAbsEntry());
  CHECK_THROWS_AS(maxMinorAbs(a, 3), DimensionError);
  CHECK(maxRankMinorAbs(IntMatrix{{2, 4}, {1, 2}}) == 4);  // rank 1, entries
}

TEST_CASE("maxMinorAbs non-increasing under row deletion") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 50; ++iter) {
    const std::size_t d = testgen::randSize(rng, 3, 5);
    const std::size_t n = testgen::randSize(rng, 2, d - 1);
    IntMatrix a = testgen::randomMatrix(rng, d, n, -5, 5);
    const std::size_t k = testgen::randSize(rng, 1, n);
    const Int full = maxMinorAbs(a, k);
    std::vector<std::size_t> keep;
    const std::size_t drop = testgen::randSize(rng, 0, d - 1);
    for (std::size_t i = 0; i < d; ++i)
      if (i != drop) keep.push_back(i);
    CHECK(maxMinorAbs(a.selectRows(keep), k) <= full);
  }
}

TEST_CASE("hnf goldens") {
  SECTION("identity") {
    HnfResult r = hnf(IntMatrix::identity(2));
    CHECK(r.h == IntMatrix::identity(2));
    CHECK(r.u == IntMatrix::identity(2));
  }
  SECTION("2x2 with |det| 2") {
    IntMatrix a{{2, 4}, {1, 3}};
    HnfResult r = hnf(a);
    CHECK(r.h == IntMatrix{{2, 0}, {0, 1}});
    CHECK(a * r.u == r.h);
    CHECK(absInt(det(r.u)) == 1);
    CHECK(absInt(det(r.h)) == 2);
    // lattice equality via two-sided membership
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(inColumnLattice(r.h, a.col(j)));
      CHECK(inColumnLattice(a, r.h.col(j)));
    }
  }
  SECTION("already in HNF") {
    IntMatrix a{{3, 0}, {0, 3}};
    HnfResult r = hnf(a);
    CHECK(r.h == a);
  }
  SECTION("rank deficiency reports a dependent column set") {
    IntMatrix a{{1, 2}, {2, 4}};
    try {
      hnf(a);
      FAIL("expected RankError");
    } catch (const RankError& e) {
      REQUIRE(e.dependentColumns() == std::vector<std::size_t>{0, 1});
    }
  }
}

TEST_CASE("hnf properties on random full-column-rank matrices") {
  std::mt19937_64 rng(20240818);
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t n = testgen::randSize(rng, 1, 5);
    const std::size_t d = testgen::randSize(rng, n, 6);
    IntMatrix a = testgen::randomFullColumnRank(rng, d, n, -9, 9);
    HnfResult r = hnf(a);
    CHECK(a * r.u == r.h);
    CHECK(absInt(det(r.u)) == 1);
    REQUIRE(r.pivotRows.size() == n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t pr = r.pivotRows[j];
      CHECK(r.h.at(pr, j) > 0);
      for (std::size_t j2 = j + 1; j2 < n; ++j2) CHECK(r.h.at(pr, j2) == 0);
      for (std::size_t j2 = 0; j2 < j; ++j2) {
        CHECK(r.h.at(pr, j2) >= 0);
        CHECK(r.h.at(pr, j2) < r.h.at(pr, j));
      }
    }
    // column lattices agree
    IntMatrix basis = r.h.selectRows(r.pivotRows);
    IntMatrix abasis = a.selectRows(r.pivotRows);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(inColumnLattice(basis, abasis.col(j)));
      CHECK(inColumnLattice(abasis, basis.col(j)));
    }
  }
}

TEST_CASE("snf goldens via determinantal divisors") {
  SECTION("identity") {
    SnfResult r = snf(IntMatrix::identity(3));
    CHECK(r.s == IntMatrix::identity(3));
  }
  SECTION("diag(2,1) sorts to diag(1,2)") {
    SnfResult r = snf(IntMatrix{{2, 0}, {0, 1}});
    CHECK(r.s == IntMatrix{{1, 0}, {0, 2}});
  }
  SECTION("gcd 1, det 6") {
    IntMatrix a{{2, 0}, {1, 3}};
    SnfResult r = snf(a);
    CHECK(r.s == IntMatrix{{1, 0}, {0, 6}});
    CHECK(r.pInv * r.s * r.qInv == a);
  }
  SECTION("k-th divisor equals gcd of k x k minors") {
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 60; ++iter) {
      const std::size_t n = testgen::randSize(rng, 1, 4);
      IntMatrix a = testgen::randomNonsingular(rng, n, -6, 6);
      SnfResult r = snf(a);
      Int prefix = 1;
      for (std::size_t k = 1; k <= n; ++k) {
        Int g = 0;
        std::vector<std::size_t> ri(k), ci(k);
        for (std::size_t i = 0; i < k; ++i) ri[i] = i;
        do {
          for (std::size_t i = 0; i < k; ++i) ci[i] = i;
          const IntMatrix rowsSel = a.selectRows(ri);
          do {
            g = boost::multiprecision::gcd(g, det(rowsSel.selectCols(ci)));
          } while (detail::nextSubset(ci, n));
        } while (detail::nextSubset(ri, n));
        g = absInt(g);
        prefix *= r.s.at(k - 1, k - 1);
        CHECK(prefix == g);  // product of first k diagonal entries
      }
    }
  }
}

TEST_CASE("snf properties on random nonsingular matrices") {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 120; ++iter) {
    const std::size_t n = testgen::randSize(rng, 1, 5);
    IntMatrix a = testgen::randomNonsingular(rng, n, -9, 9);
    SnfResult r = snf(a);
    CHECK(r.pInv * r.s * r.qInv == a);
    CHECK(absInt(det(r.pInv)) == 1);
    CHECK(absInt(det(r.qInv)) == 1);
    Int prod = 1;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(r.s.at(i, i) >= 1);
      if (i + 1 < n) CHECK(r.s.at(i + 1, i + 1) % r.s.at(i, i) == 0);
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) CHECK(r.s.at(i, j) == 0);
      prod *= r.s.at(i, i);
    }
    CHECK(prod == absInt(det(a)));
  }
  CHECK_THROWS_AS(snf(IntMatrix{{1, 2}, {2, 4}}), SingularError);
}

TEST_CASE("solveRational") {
  RatVec b{Rat(1), Rat(1)};
  CHECK(solveRational(IntMatrix::identity(2), b) == b);
  RatVec x = solveRational(IntMatrix{{2, 0}, {0, 4}}, b);
  CHECK(x == RatVec{Rat(1, 2), Rat(1, 4)});
  x = solveRational(IntMatrix{{1, 2}, {3, 4}}, RatVec{Rat(1), Rat(0)});
  CHECK(x == RatVec{Rat(-2), Rat(3, 2)});
  // verify by substitution
  IntMatrix a{{1, 2}, {3, 4}};
  RatVec back = a.mulVec(x);
  CHECK(back == RatVec{Rat(1), Rat(0)});
  CHECK_THROWS_AS(solveRational(IntMatrix{{1, 2}, {2, 4}}, b), SingularError);
}

TEST_CASE("unimodularInverse") {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 40; ++iter) {
    const std::size_t n = testgen::randSize(rng, 1, 5);
    IntMatrix u = testgen::randomUnimodular(rng, n, 6);
    CHECK(u * unimodularInverse(u) == IntMatrix::identity(n));
  }
  CHECK_THROWS_AS(unimodularInverse(IntMatrix{{2, 0}, {0, 1}}), ContractError);
}
