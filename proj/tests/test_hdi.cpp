#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "toric/hdi.hpp"

#include <algorithm>
#include <random>

using namespace toric;

namespace {

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

struct Setup {
    VarietyPtr F1 = buildHirzebruch(1);
    VarietyPtr P1 = buildProjectiveSpace(1);
    VarietyPtr P2 = buildProjectiveSpace(2);
    ToricMorphism phi = makeToricMorphism(P1, F1, IntMat::fromRows({{1, 0}}));
    ToricMorphism psi = makeToricMorphism(P2, F1, IntMat::fromRows({{0, -1}, {1, 0}}));
    TDivisor D = TDivisor(F1, iv({0, -1, -2, -3}));
};

// The blowup threefold over the Hirzebruch surface, with the divisor
// carrying -2 on the rays located by coordinates (0,0,1) and (0,1,-1).
struct ThetaSetup {
    VarietyPtr F1 = buildHirzebruch(1);
    VarietyPtr X = starSubdivisionBlowup(productVariety(buildHirzebruch(1), buildProjectiveSpace(1)), {1, 5});
    ToricMorphism theta;
    TDivisor D;

    ThetaSetup() : theta(makeToricMorphism(F1, X, IntMat::fromRows({{1, 0, 0}, {0, 1, 0}}))) {
        IntVec a(X->numRays(), Int(0));
        int hits = 0;
        for (int i = 0; i < X->numRays(); ++i)
            if (X->fan.rays[i] == iv({0, 0, 1}) || X->fan.rays[i] == iv({0, 1, -1})) {
                a[i] = -2;
                ++hits;
            }
        REQUIRE(hits == 2);
        D = TDivisor(X, a);
    }
};

Box clBox(int lo, int hi) {
    Box b;
    b.lo = {Int(lo)};
    b.hi = {Int(hi)};
    return b;
}

TDivisor randomDivisor(std::mt19937& rng, const VarietyPtr& X, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    IntVec a(X->numRays());
    for (auto& x : a) x = d(rng);
    return TDivisor(X, a);
}

}  // namespace

TEST_CASE("chart section dimensions") {
    Setup s;
    SUBCASE("no sections in degree zero for fiber degree -4") {
        for (int cone = 0; cone < 2; ++cone)
            for (long m1 = -4; m1 <= 4; ++m1)
                for (long m2 = -4; m2 <= 4; ++m2) CHECK(chartSectionsDim(s.phi, s.D, 0, cone, iv({m1, m2})) == 0);
    }
    SUBCASE("first chart stabilizes to one section per contributing character") {
        // Characters (t, u) with u strictly between the fiber bounds give a
        // two-point support complex once t clears the horizontal ray.
        for (long u = -2; u <= 0; ++u) {
            CHECK(chartSectionsDim(s.phi, s.D, 1, 0, iv({0, u})) == 1);
            CHECK(chartSectionsDim(s.phi, s.D, 1, 0, iv({5, u})) == 1);
            CHECK(chartSectionsDim(s.phi, s.D, 1, 0, iv({-1, u})) == 0);
        }
    }
    SUBCASE("identity chart of the trivial bundle") {
        auto id = identityMorphism(s.F1);
        CHECK(chartSectionsDim(id, zeroDivisor(s.F1), 0, 0, iv({0, 0})) == 1);
    }
    IntMat two(1, 1);
    two.at(0, 0) = 2;
    auto doubling = makeToricMorphism(s.P1, s.P1, two);
    CHECK_THROWS_WITH_AS(chartSectionsDim(doubling, zeroDivisor(s.P1), 0, 0, iv({0})), "not a fibration", Error);
}

TEST_CASE("generic stalk ranks") {
    Setup s;
    CHECK(hdiRank(s.phi, 1, s.D) == 3);
    CHECK(hdiRank(s.phi, 0, s.D) == 0);
    CHECK(hdiRank(s.psi, 0, TDivisor(s.F1, iv({0, -2, 0, 0}))) == 1);
    SUBCASE("identity morphism has rank one in degree zero") {
        auto id = identityMorphism(s.F1);
        CHECK(hdiRank(id, 0, zeroDivisor(s.F1)) == 1);
        CHECK(hdiRank(id, 1, zeroDivisor(s.F1)) == 0);
    }
    SUBCASE("rank agrees with the generic fiber cohomology oracle") {
        // For the ruled surface the fiber is a line; rank in degree one is
        // h^1 of the fiber degree, rank in degree zero is h^0.
        std::mt19937 rng(424242);
        for (int trial = 0; trial < 12; ++trial) {
            TDivisor D = randomDivisor(rng, s.F1, 3);
            long fiberDeg = Int(D.coeffs[1] + D.coeffs[3]).get_si();
            CHECK(hdiRank(s.phi, 0, D) == std::max(0L, fiberDeg + 1));
            CHECK(hdiRank(s.phi, 1, D) == std::max(0L, -fiberDeg - 1));
        }
    }
}

TEST_CASE("twist tables") {
    Setup s;
    SUBCASE("blowdown of minus twice the exceptional ray gives the squared point ideal counts") {
        TDivisor D(s.F1, iv({0, -2, 0, 0}));
        TwistTable t = hdiTwistTable(s.psi, 0, D, clBox(0, 4));
        CHECK(t.h0.at(iv({0})) == 0);
        CHECK(t.h0.at(iv({1})) == 0);
        CHECK(t.h0.at(iv({2})) == 3);
        CHECK(t.h0.at(iv({3})) == 7);
        CHECK(t.h0.at(iv({4})) == 12);
    }
    SUBCASE("ruled surface first direct image twists") {
        TwistTable t = hdiTwistTable(s.phi, 1, s.D, clBox(-1, 3));
        CHECK(t.h0.at(iv({-1})) == 0);
        CHECK(t.h0.at(iv({0})) == 0);
        CHECK(t.h0.at(iv({1})) == 0);
        CHECK(t.h0.at(iv({2})) == 1);
        CHECK(t.h0.at(iv({3})) == 3);
    }
    SUBCASE("fibration axiom: degree zero of the structure sheaf is the base") {
        TwistTable t = hdiTwistTable(s.phi, 0, zeroDivisor(s.F1), clBox(-1, 3));
        for (long d = -1; d <= 3; ++d) CHECK(t.h0.at(iv({d})) == std::max(0L, d + 1));
    }
    SUBCASE("identity twist tables reproduce section counts and vanish upward") {
        auto id = identityMorphism(s.F1);
        std::mt19937 rng(11);
        TDivisor D = randomDivisor(rng, s.F1, 2);
        Box box;
        box.lo = iv({-1, -1});
        box.hi = iv({1, 1});
        TwistTable t0 = hdiTwistTable(id, 0, D, box);
        for (const auto& [d, h] : t0.h0) {
            TDivisor twisted = addDivisors(D, representativeDivisor(s.F1, d));
            CHECK(h == int(latticePoints(twisted).size()));
        }
        TwistTable t1 = hdiTwistTable(id, 1, D, box);
        for (const auto& [d, h] : t1.h0) CHECK(h == 0);
    }
    SUBCASE("entries partition over kernel characters") {
        TwistTable t = hdiTwistTable(s.phi, 1, s.D, clBox(0, 3));
        for (const auto& [d, h] : t.h0) {
            int sum = 0;
            for (const auto& [u, c] : t.byKernelChar.at(d)) sum += c;
            CHECK(sum == h);
        }
    }
    SUBCASE("entries only depend on the divisor class") {
        std::mt19937 rng(5);
        std::uniform_int_distribution<int> dm(-2, 2);
        TDivisor D = s.D;
        IntVec m = {Int(dm(rng)), Int(dm(rng))};
        IntVec shift(s.F1->numRays());
        for (int i = 0; i < s.F1->numRays(); ++i) shift[i] = dot(m, s.F1->fan.rays[i]);
        TwistTable a = hdiTwistTable(s.phi, 1, D, clBox(0, 3));
        TwistTable b = hdiTwistTable(s.phi, 1, TDivisor(s.F1, add(D.coeffs, shift)), clBox(0, 3));
        CHECK(a.h0 == b.h0);
    }
    SUBCASE("oversized boxes are rejected") {
        Box big;
        big.lo = {Int(-10)};
        big.hi = {Int(10)};
        CHECK_THROWS_WITH_AS(hdiTwistTable(s.phi, 0, s.D, big), "twist box exceeds limit", Error);
    }
}

TEST_CASE("eigencharacter tables") {
    Setup s;
    SUBCASE("ruled surface running example has three kernel characters") {
        EigencharacterTable t = computeEigencharacters(s.phi, 1, s.D);
        REQUIRE(t.entries.size() == 3);
        CHECK(t.entries[0].kernelChar == iv({-2}));
        CHECK(t.entries[1].kernelChar == iv({-1}));
        CHECK(t.entries[2].kernelChar == iv({0}));
        CHECK(t.entries[0].sourceChar == iv({0, -2}));
        CHECK(t.entries[2].sourceChar == iv({0, 0}));
        for (const auto& e : t.entries) CHECK(e.genericRank == 1);
    }
    SUBCASE("degrees above the source dimension are empty") {
        CHECK(computeEigencharacters(s.phi, 3, s.D).entries.empty());
    }
    SUBCASE("identity has only the zero character") {
        auto id = identityMorphism(s.F1);
        EigencharacterTable t = computeEigencharacters(id, 0, zeroDivisor(s.F1));
        REQUIRE(t.entries.size() == 1);
        CHECK(t.entries[0].kernelChar.empty());
        CHECK(t.entries[0].genericRank == 1);
    }
}

TEST_CASE("threefold projection with torsion") {
    ThetaSetup ts;
    CHECK(isFibration(ts.theta));
    SUBCASE("rank one in degree one") {
        CHECK(hdiRank(ts.theta, 1, ts.D) == 1);
    }
    SUBCASE("three eigencharacters with third coordinates -1, 0, 1") {
        EigencharacterTable t = computeEigencharacters(ts.theta, 1, ts.D);
        REQUIRE(t.entries.size() == 3);
        CHECK(t.entries[0].sourceChar == iv({0, 0, -1}));
        CHECK(t.entries[1].sourceChar == iv({0, 0, 0}));
        CHECK(t.entries[2].sourceChar == iv({0, 0, 1}));
        // Only the top fiber character carries the generic rank.
        CHECK(t.entries[0].genericRank == 0);
        CHECK(t.entries[1].genericRank == 0);
        CHECK(t.entries[2].genericRank == 1);
    }
    SUBCASE("torsion supported along a curve") {
        TorsionReport r = torsionProfile(ts.theta, 1, ts.D, iv({1, 1}), 0, 5);
        CHECK(r.rank == 1);
        CHECK(r.hasTorsion);
        CHECK(r.growthDegree == 1);
    }
}

TEST_CASE("splitting types over the line") {
    Setup s;
    SUBCASE("running example splits as -2, -3, -4") {
        SplittingType t = splittingTypeOverP1(s.phi, 1, s.D);
        CHECK(t.summands == std::vector<Int>{Int(-2), Int(-3), Int(-4)});
        CHECK(t.torsion == 0);
    }
    SUBCASE("degree zero of the running example is empty") {
        SplittingType t = splittingTypeOverP1(s.phi, 0, s.D);
        CHECK(t.summands.empty());
        CHECK(t.torsion == 0);
    }
    SUBCASE("fiber degree three pushes forward with rank four") {
        TDivisor D(s.F1, iv({0, 3, 0, 0}));
        SplittingType t = splittingTypeOverP1(s.phi, 0, D);
        REQUIRE(t.summands.size() == 4);
        CHECK(t.summands == std::vector<Int>{Int(0), Int(-1), Int(-2), Int(-3)});
        CHECK(t.torsion == 0);
        // Projective bundle oracle: rank is fiber degree + 1, total sections
        // match the lattice point count upstairs.
        Int viaSplitting = 0;
        for (const Int& a : t.summands)
            if (a + 1 > 0) viaSplitting += a + 1;
        CHECK(viaSplitting == Int(int(latticePoints(D).size())));
    }
    SUBCASE("identity on the line") {
        auto id = identityMorphism(s.P1);
        SplittingType t = splittingTypeOverP1(id, 0, TDivisor(s.P1, iv({2, 0})));
        CHECK(t.summands == std::vector<Int>{Int(2)});
        CHECK(t.torsion == 0);
    }
    SUBCASE("wrong target is rejected") {
        CHECK_THROWS_AS(splittingTypeOverP1(s.psi, 0, s.D), Error);
    }
}

TEST_CASE("torsion profiles") {
    Setup s;
    SUBCASE("locally free case has no residual") {
        TorsionReport r = torsionProfile(s.phi, 1, s.D, iv({1}), 0, 4);
        CHECK(r.rank == 3);
        CHECK(!r.hasTorsion);
        CHECK(r.growthDegree == -1);
    }
    SUBCASE("structure sheaf pushforward has no residual") {
        TorsionReport r = torsionProfile(s.phi, 0, zeroDivisor(s.F1), iv({1}), 0, 4);
        CHECK(r.rank == 1);
        CHECK(!r.hasTorsion);
    }
}

TEST_CASE("leray sums over the line") {
    Setup s;
    SUBCASE("running example: h2 upstairs is 6") {
        CHECK(lerayCheckOverP1(s.phi, s.D));
        CHECK(lineBundleCohomology(*s.F1, s.D, 2).total() == 6);
        SplittingType t = splittingTypeOverP1(s.phi, 1, s.D);
        Int h1 = 0;
        for (const Int& a : t.summands)
            if (-a - 1 > 0) h1 += -a - 1;
        CHECK(h1 == 6);
    }
    SUBCASE("trivial bundle") {
        CHECK(lerayCheckOverP1(s.phi, zeroDivisor(s.F1)));
    }
    SUBCASE("random divisors") {
        std::mt19937 rng(20101);
        for (int trial = 0; trial < 20; ++trial) CHECK(lerayCheckOverP1(s.phi, randomDivisor(rng, s.F1, 3)));
    }
}

TEST_CASE("relative duality over the line") {
    Setup s;
    SUBCASE("running example pairs with 2, 3, 4") {
        TDivisor dual =
            subDivisors(subDivisors(canonicalDivisor(s.F1), pullbackDivisor(s.phi, canonicalDivisor(s.P1))), s.D);
        SplittingType t = splittingTypeOverP1(s.phi, 0, dual);
        CHECK(t.summands == std::vector<Int>{Int(4), Int(3), Int(2)});
        CHECK(relativeDualityCheckOverP1(s.phi, s.D));
    }
    SUBCASE("trivial bundle is vacuously dual") {
        CHECK(relativeDualityCheckOverP1(s.phi, zeroDivisor(s.F1)));
    }
    SUBCASE("random fiber-negative divisors") {
        std::mt19937 rng(31415);
        int done = 0;
        while (done < 10) {
            TDivisor D = randomDivisor(rng, s.F1, 3);
            if (D.coeffs[1] + D.coeffs[3] > -2) continue;
            CHECK(relativeDualityCheckOverP1(s.phi, D));
            ++done;
        }
    }
}

TEST_CASE("a jumping fiber produces skyscraper torsion over the line") {
    // Blow up a fixed point of the Hirzebruch surface lying over one chart;
    // the special fiber becomes a two-component chain and the first direct
    // image of minus twice the exceptional divisor is a skyscraper.
    auto Xp = starSubdivisionBlowup(buildHirzebruch(1), {0, 1});
    auto P1 = buildProjectiveSpace(1);
    auto f = makeToricMorphism(P1, Xp, IntMat::fromRows({{1, 0}}));
    REQUIRE(isFibration(f));
    IntVec a(Xp->numRays(), Int(0));
    a[4] = -2;  // the appended exceptional ray
    TDivisor D(Xp, a);
    CHECK(hdiRank(f, 1, D) == 0);
    SplittingType t = splittingTypeOverP1(f, 1, D);
    CHECK(t.summands.empty());
    CHECK(t.torsion == 1);
    CHECK_THROWS_WITH_AS(relativeDualityCheckOverP1(f, D), "duality check requires locally free images", Error);
    // The Leray sum still accounts for the torsion sections.
    CHECK(lerayCheckOverP1(f, D));
}

TEST_CASE("configurable caps surface as errors") {
    Setup s;
    SUBCASE("stabilization cap") {
        HdiOptions tight;
        tight.stabilizationCap = 2;
        TDivisor big(s.F1, iv({-9, -1, 0, -3}));
        CHECK_THROWS_WITH_AS(hdiRank(s.phi, 1, big, tight), "stabilization cap exceeded", Error);
    }
    SUBCASE("splitting probe cap") {
        HdiOptions tight;
        tight.splittingRangeCap = 3;
        CHECK_THROWS_WITH_AS(splittingTypeOverP1(s.phi, 1, s.D, tight),
                             "not a sum of line bundles plus finite torsion", Error);
    }
}

TEST_CASE("vanishing above the source dimension") {
    Setup s;
    CHECK(hdiRank(s.phi, 3, s.D) == 0);
    TwistTable t = hdiTwistTable(s.phi, 3, s.D, clBox(0, 2));
    for (const auto& [d, h] : t.h0) CHECK(h == 0);
    CHECK(computeEigencharacters(s.phi, 5, s.D).entries.empty());
}
