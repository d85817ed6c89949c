#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "toric/frobenius.hpp"

#include <algorithm>
#include <map>
#include <random>

using namespace toric;

namespace {

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

TDivisor randomDivisor(std::mt19937& rng, const VarietyPtr& X, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    IntVec a(X->numRays());
    for (auto& x : a) x = d(rng);
    return TDivisor(X, a);
}

long h0(const VarietyPtr& X, const IntVec& coeffs) { return long(latticePoints(TDivisor(X, coeffs)).size()); }

// Section-count identity: sum over residues of h0(D_u + E) equals
// h0(D + pE), for every twist E. The convention-free correctness oracle.
bool sectionCountIdentity(const VarietyPtr& X, const Int& p, const TDivisor& D, int boxRadius) {
    FrobeniusSummands s = frobeniusSummands(X, p, D);
    Box box;
    box.lo.assign(X->clRank, Int(-boxRadius));
    box.hi.assign(X->clRank, Int(boxRadius));
    for (const IntVec& e : boxPoints(box)) {
        IntVec E = representativeDivisor(X, e).coeffs;
        long lhs = 0;
        for (const IntVec& su : s.summands) lhs += h0(X, add(su, E));
        IntVec pe(E.size());
        for (size_t i = 0; i < E.size(); ++i) pe[i] = p * E[i];
        long rhs = h0(X, add(D.coeffs, pe));
        if (lhs != rhs) return false;
    }
    return true;
}

std::multiset<DivisorClass> summandClassMultiset(const VarietyPtr& X, const FrobeniusSummands& s) {
    std::multiset<DivisorClass> out;
    for (const IntVec& d : s.summands) out.insert(classOf(TDivisor(X, d)));
    return out;
}

}  // namespace

TEST_CASE("frobenius summands of line bundles") {
    SUBCASE("structure sheaf of the line at p = 2") {
        auto P1 = buildProjectiveSpace(1);
        FrobeniusSummands s = frobeniusSummands(P1, 2, zeroDivisor(P1));
        REQUIRE(s.summands.size() == 2);
        CHECK(classOf(TDivisor(P1, s.summands[0])) == iv({0}));
        CHECK(classOf(TDivisor(P1, s.summands[1])) == iv({-1}));
    }
    SUBCASE("p = 1 is the identity") {
        auto F1 = buildHirzebruch(1);
        std::mt19937 rng(7);
        TDivisor D = randomDivisor(rng, F1, 3);
        FrobeniusSummands s = frobeniusSummands(F1, 1, D);
        REQUIRE(s.summands.size() == 1);
        CHECK(s.summands[0] == D.coeffs);
    }
    SUBCASE("structure sheaf of the Hirzebruch surface at p = 2") {
        auto F1 = buildHirzebruch(1);
        FrobeniusSummands s = frobeniusSummands(F1, 2, zeroDivisor(F1));
        CHECK(s.summands.size() == 4);
        CHECK(sectionCountIdentity(F1, 2, zeroDivisor(F1), 2));
    }
    SUBCASE("summand count is p^dim") {
        auto P2 = buildProjectiveSpace(2);
        CHECK(frobeniusSummands(P2, 3, zeroDivisor(P2)).summands.size() == 9);
        auto P1 = buildProjectiveSpace(1);
        CHECK(frobeniusSummands(P1, 5, zeroDivisor(P1)).summands.size() == 5);
    }
}

TEST_CASE("section-count identity on random divisors") {
    std::mt19937 rng(88);
    for (const auto& X : {buildProjectiveSpace(1), buildProjectiveSpace(2), buildHirzebruch(1)}) {
        for (Int p : {Int(2), Int(3)}) {
            for (int trial = 0; trial < 4; ++trial) {
                TDivisor D = randomDivisor(rng, X, 3);
                CHECK(sectionCountIdentity(X, p, D, 2));
            }
        }
    }
}

TEST_CASE("tower law for composed frobenius maps") {
    auto F1 = buildHirzebruch(1);
    std::mt19937 rng(606);
    for (int trial = 0; trial < 5; ++trial) {
        TDivisor D = randomDivisor(rng, F1, 3);
        FrobeniusSummands s6 = frobeniusSummands(F1, 6, D);
        std::multiset<DivisorClass> lhs = summandClassMultiset(F1, s6);
        std::multiset<DivisorClass> rhs;
        FrobeniusSummands s3 = frobeniusSummands(F1, 3, D);
        for (const IntVec& mid : s3.summands) {
            FrobeniusSummands s2 = frobeniusSummands(F1, 2, TDivisor(F1, mid));
            for (const IntVec& d : s2.summands) rhs.insert(classOf(TDivisor(F1, d)));
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("pushforward of maps between line bundles") {
    auto P1 = buildProjectiveSpace(1);
    SUBCASE("multiplication by one is the identity block pattern") {
        SummandMap m = frobeniusPushMap(P1, 2, iv({0, 0}), iv({0, 0}), monomial(iv({0, 0})));
        REQUIRE(m.map.entries.size() == 2);
        CHECK(m.map.entries[0][0] == monomial(iv({0, 0})));
        CHECK(m.map.entries[1][1] == monomial(iv({0, 0})));
        CHECK(isZeroPoly(m.map.entries[0][1]));
        CHECK(isZeroPoly(m.map.entries[1][0]));
    }
    SUBCASE("coordinate multiplication connects the residues") {
        // x0 : O(-1) -> O at p = 2.
        SummandMap m = frobeniusPushMap(P1, 2, iv({-1, 0}), iv({0, 0}), monomial(iv({1, 0})));
        // Source summands are both O(-1); target summands O and O(-1).
        CHECK(classOf(TDivisor(P1, m.map.source.genDivisors[0])) == iv({-1}));
        CHECK(classOf(TDivisor(P1, m.map.source.genDivisors[1])) == iv({-1}));
        CHECK(classOf(TDivisor(P1, m.map.target.genDivisors[0])) == iv({0}));
        CHECK(classOf(TDivisor(P1, m.map.target.genDivisors[1])) == iv({-1}));
        // One block is multiplication by x0, the other by 1, with no overlap.
        std::multiset<CoxPolynomial> nonzero;
        int zeros = 0;
        for (const auto& row : m.map.entries)
            for (const auto& e : row)
                if (isZeroPoly(e))
                    ++zeros;
                else
                    nonzero.insert(e);
        CHECK(zeros == 2);
        CHECK(nonzero == std::multiset<CoxPolynomial>{monomial(iv({0, 0})), monomial(iv({1, 0}))});
    }
    SUBCASE("degree mismatch is rejected") {
        CHECK_THROWS_WITH_AS(frobeniusPushMap(P1, 2, iv({0, 0}), iv({0, 0}), monomial(iv({1, 0}))),
                             "entry not homogeneous of the required degree", Error);
    }
}

TEST_CASE("pushforward respects composition of monomial maps") {
    auto F1 = buildHirzebruch(1);
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> exp(0, 2);
    std::uniform_int_distribution<int> coeff(1, 3);
    for (Int p : {Int(2), Int(3)}) {
        for (int trial = 0; trial < 6; ++trial) {
            IntVec S(F1->numRays());
            std::uniform_int_distribution<int> dd(-2, 2);
            for (auto& x : S) x = dd(rng);
            IntVec a(F1->numRays()), b(F1->numRays());
            for (auto& x : a) x = exp(rng);
            for (auto& x : b) x = exp(rng);
            IntVec mid = add(S, a), top = add(mid, b);
            ModuleMap f;  // x^a : O(S) -> O(S + a)
            f.target = makeFreeModuleWithDivisors(F1, {mid});
            f.source = makeFreeModuleWithDivisors(F1, {S});
            f.entries = {{monomial(a, Rat(coeff(rng)))}};
            ModuleMap g;  // x^b : O(S + a) -> O(S + a + b)
            g.target = makeFreeModuleWithDivisors(F1, {top});
            g.source = f.target;
            g.entries = {{monomial(b, Rat(coeff(rng)))}};
            SummandMap pf = frobeniusPushMatrix(F1, p, f);
            SummandMap pg = frobeniusPushMatrix(F1, p, g);
            SummandMap pgf = frobeniusPushMatrix(F1, p, composeMaps(g, f));
            ModuleMap prod = composeMaps(pg.map, pf.map);
            CHECK(prod.entries == pgf.map.entries);
        }
    }
}

TEST_CASE("pushforward of complexes") {
    auto F1 = buildHirzebruch(1);
    SUBCASE("zero complex") {
        ModuleMap z;
        z.target = makeFreeModule(F1, {iv({0, 0})});
        z.source = makeFreeModule(F1, {iv({1, 0})});
        z.entries = {{{}}};
        auto pushed = frobeniusPushComplex(F1, 2, {z});
        REQUIRE(pushed.size() == 1);
        CHECK(isZeroMap(pushed[0].map));
    }
    SUBCASE("non-complexes are rejected") {
        ModuleMap a, b;
        a.target = makeFreeModule(F1, {iv({0, 0})});
        a.source = makeFreeModule(F1, {iv({1, 0})});
        a.entries = {{monomial(iv({1, 0, 0, 0}))}};
        b.target = a.source;
        b.source = makeFreeModule(F1, {iv({2, 0})});
        b.entries = {{monomial(iv({0, 0, 1, 0}))}};
        CHECK_THROWS_WITH_AS(frobeniusPushComplex(F1, 2, {a, b}), "input is not a complex", Error);
    }
    SUBCASE("koszul-style two-term complex stays a complex") {
        // (x0, x2) followed by (x2, -x0)^T composes to zero.
        ModuleMap d1, d2;
        d1.target = makeFreeModule(F1, {iv({0, 0})});
        d1.source = makeFreeModule(F1, {iv({1, 0}), iv({1, 0})});
        d1.entries = {{monomial(iv({1, 0, 0, 0})), monomial(iv({0, 0, 1, 0}))}};
        d2.target = d1.source;
        d2.source = makeFreeModule(F1, {iv({2, 0})});
        d2.entries = {{monomial(iv({0, 0, 1, 0}))}, {monomial(iv({1, 0, 0, 0}), Rat(-1))}};
        auto pushed = frobeniusPushComplex(F1, 2, {d1, d2});
        CHECK(pushed.size() == 2);
        CHECK(isZeroMap(composeMaps(pushed[0].map, pushed[1].map)));
    }
}

TEST_CASE("pushforward of modules") {
    SUBCASE("free module pushes to the summand classes") {
        auto F1 = buildHirzebruch(1);
        PresentedModule M;
        M.target = makeFreeModule(F1, {iv({1, 1})});
        M.source = makeFreeModule(F1, {});
        M.entries = {{}};
        PresentedModule pushed = frobeniusPushModule(F1, 2, M);
        FrobeniusSummands s = frobeniusSummands(F1, 2, TDivisor(F1, M.target.genDivisors[0]));
        REQUIRE(pushed.target.rank() == 4);
        for (int u = 0; u < 4; ++u) CHECK(pushed.target.genDivisors[u] == s.summands[u]);
    }
    SUBCASE("hilbert function of the pushforward samples the original at scaled degrees") {
        auto F1 = buildHirzebruch(1);
        PresentedModule omega;
        omega.target = makeFreeModule(F1, {iv({2, 0}), iv({0, 2}), iv({0, 2})});
        omega.source = makeFreeModule(F1, {iv({1, 2})});
        omega.entries = {{monomial(iv({0, 1, 0, 1}))}, {monomial(iv({1, 0, 0, 0}))}, {monomial(iv({0, 0, 1, 0}), Rat(-1))}};
        for (Int p : {Int(2), Int(3)}) {
            PresentedModule pushed = frobeniusPushModule(F1, p, omega);
            for (long a = 0; a <= 2; ++a)
                for (long b = 0; b <= 2; ++b) {
                    DivisorClass d = iv({a, b});
                    DivisorClass pd = iv({long(p.get_si()) * a, long(p.get_si()) * b});
                    CHECK(hilbertValue(pushed, d) == hilbertValue(omega, pd));
                }
        }
    }
    SUBCASE("structure module at p = 3 on the plane") {
        auto P2 = buildProjectiveSpace(2);
        PresentedModule M;
        M.target = makeFreeModule(P2, {iv({0})});
        M.source = makeFreeModule(P2, {});
        M.entries = {{}};
        PresentedModule pushed = frobeniusPushModule(P2, 3, M);
        CHECK(pushed.target.rank() == 9);
        CHECK(sectionCountIdentity(P2, 3, zeroDivisor(P2), 2));
    }
}
