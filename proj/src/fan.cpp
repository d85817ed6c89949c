#include "toric/fan.hpp"

#include "toric/cones.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toric {

namespace {

std::vector<IntVec> raysOf(const Fan& f, const std::vector<int>& cone) {
    std::vector<IntVec> r;
    r.reserve(cone.size());
    for (int i : cone) r.push_back(f.rays[i]);
    return r;
}

}  // namespace

Fan::Fan(int d, std::vector<IntVec> rayList, std::vector<std::vector<int>> cones)
    : dim(d), rays(std::move(rayList)), maxCones(std::move(cones)) {
    if (dim < 0) throw Error("fan dimension must be nonnegative");
    std::set<IntVec> seen;
    for (const IntVec& u : rays) {
        if (int(u.size()) != dim) throw Error("ray length does not match fan dimension");
        if (isZeroVec(u)) throw Error("zero ray");
        if (primitiveVector(u) != u) throw Error("ray generator is not primitive: " + describe(u));
        if (!seen.insert(u).second) throw Error("duplicate ray: " + describe(u));
    }
    std::vector<bool> used(rays.size(), false);
    for (auto& c : maxCones) {
        std::sort(c.begin(), c.end());
        if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw Error("repeated ray index in cone");
        for (int i : c) {
            if (i < 0 || i >= int(rays.size())) throw Error("cone ray index out of range");
            used[i] = true;
        }
        if (rank(IntMat::fromRows(raysOf(*this, c))) != int(c.size()))
            throw Error("non-simplicial cone (rays are dependent)");
    }
    if (maxCones.empty()) throw Error("fan needs at least one maximal cone");
    for (size_t i = 0; i < rays.size(); ++i)
        if (!used[i]) throw Error("ray not contained in any maximal cone");
    for (size_t a = 0; a < maxCones.size(); ++a)
        for (size_t b = a + 1; b < maxCones.size(); ++b) {
            const auto& ca = maxCones[a];
            const auto& cb = maxCones[b];
            if (std::includes(ca.begin(), ca.end(), cb.begin(), cb.end()) ||
                std::includes(cb.begin(), cb.end(), ca.begin(), ca.end()))
                throw Error("maximal cone contained in another");
            std::vector<int> common;
            std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(common));
            auto gens = intersectSimplicialCones(raysOf(*this, ca), raysOf(*this, cb), dim);
            for (const IntVec& g : gens)
                if (!inSimplicialCone(raysOf(*this, common), g))
                    throw Error("cones intersect in a non-face");
        }
}

bool Fan::spansCone(const std::vector<int>& sorted) const {
    for (const auto& c : maxCones)
        if (std::includes(c.begin(), c.end(), sorted.begin(), sorted.end())) return true;
    return false;
}

TDivisor::TDivisor(VarietyPtr X, IntVec a) : variety(std::move(X)), coeffs(std::move(a)) {
    if (int(coeffs.size()) != variety->numRays()) throw Error("divisor length does not match ray count");
}

VarietyPtr makeToricVariety(Fan fan) {
    auto X = std::make_shared<ToricVariety>();
    X->fan = std::move(fan);
    const int R = X->numRays();
    const int n = X->dim();
    IntMat B(R, n);
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < n; ++j) B.at(i, j) = X->fan.rays[i][j];
    SmithResult snf = smithNormalForm(B);
    for (int t = 0; t < snf.rank; ++t)
        if (snf.S.at(t, t) != 1) X->clTorsion.push_back(snf.S.at(t, t));
    X->clRank = R - snf.rank;
    HermiteResult h = hermiteNormalForm(B);
    X->classProjection = IntMat(X->clRank, R);
    for (int i = 0; i < X->clRank; ++i)
        for (int j = 0; j < R; ++j) X->classProjection.at(i, j) = h.U.at(h.rank + i, j);
    const auto& sigma0 = X->fan.maxCones[0];
    for (int j = 0; j < R; ++j)
        if (!std::binary_search(sigma0.begin(), sigma0.end(), j)) X->sectionRays.push_back(j);
    return X;
}

VarietyPtr buildProjectiveSpace(int n) {
    if (n <= 0) throw Error("projective space dimension must be positive");
    std::vector<IntVec> rays;
    for (int i = 0; i < n; ++i) {
        IntVec e(n);
        e[i] = 1;
        rays.push_back(e);
    }
    IntVec last(n, -1);
    rays.push_back(last);
    // Maximal cones: all n-subsets of the n+1 rays, in lexicographic order.
    std::vector<std::vector<int>> cones;
    for (int skip = n; skip >= 0; --skip) {
        std::vector<int> c;
        for (int i = 0; i <= n; ++i)
            if (i != skip) c.push_back(i);
        cones.push_back(c);
    }
    return makeToricVariety(Fan(n, rays, cones));
}

VarietyPtr buildHirzebruch(const Int& a) {
    if (a < 0) throw Error("hirzebruch parameter must be nonnegative");
    std::vector<IntVec> rays = {{1, 0}, {0, 1}, {-1, a}, {0, -1}};
    std::vector<std::vector<int>> cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    return makeToricVariety(Fan(2, rays, cones));
}

VarietyPtr buildPoint() {
    Fan f;
    f.dim = 0;
    f.maxCones = {{}};
    return makeToricVariety(std::move(f));
}

VarietyPtr productVariety(const VarietyPtr& X, const VarietyPtr& Y) {
    int n = X->dim() + Y->dim();
    std::vector<IntVec> rays;
    for (const IntVec& u : X->fan.rays) {
        IntVec v(n);
        for (int i = 0; i < X->dim(); ++i) v[i] = u[i];
        rays.push_back(v);
    }
    for (const IntVec& u : Y->fan.rays) {
        IntVec v(n);
        for (int i = 0; i < Y->dim(); ++i) v[X->dim() + i] = u[i];
        rays.push_back(v);
    }
    std::vector<std::vector<int>> cones;
    for (const auto& cx : X->fan.maxCones)
        for (const auto& cy : Y->fan.maxCones) {
            std::vector<int> c = cx;
            for (int i : cy) c.push_back(X->numRays() + i);
            cones.push_back(c);
        }
    return makeToricVariety(Fan(n, rays, cones));
}

VarietyPtr starSubdivisionBlowup(const VarietyPtr& X, const std::vector<int>& rayIndices) {
    std::vector<int> s = rayIndices;
    std::sort(s.begin(), s.end());
    if (s.empty()) throw Error("empty blowup center");
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw Error("repeated ray index in blowup center");
    for (int i : s)
        if (i < 0 || i >= X->numRays()) throw Error("blowup ray index out of range");
    if (!X->fan.spansCone(s)) throw Error("not a face of the fan");
    if (s.size() == 1) throw Error("already a ray");

    IntVec sum(X->dim());
    for (int i : s) sum = add(sum, X->fan.rays[i]);
    IntVec newRay = primitiveVector(sum);
    std::vector<IntVec> rays = X->fan.rays;
    int newIdx = int(rays.size());
    rays.push_back(newRay);

    std::vector<std::vector<int>> cones;
    for (const auto& c : X->fan.maxCones) {
        if (!std::includes(c.begin(), c.end(), s.begin(), s.end())) {
            cones.push_back(c);
            continue;
        }
        for (int drop : s) {
            std::vector<int> nc;
            for (int i : c)
                if (i != drop) nc.push_back(i);
            nc.push_back(newIdx);
            cones.push_back(nc);
        }
    }
    return makeToricVariety(Fan(X->dim(), rays, cones));
}

bool isSmooth(const ToricVariety& X) {
    for (const auto& c : X.fan.maxCones) {
        if (c.empty()) continue;
        SmithResult s = smithNormalForm(IntMat::fromRows(raysOf(X.fan, c)));
        if (s.rank != int(c.size())) return false;
        for (int t = 0; t < s.rank; ++t)
            if (s.S.at(t, t) != 1) return false;
    }
    return true;
}

bool isComplete(const ToricVariety& X) {
    const int n = X.dim();
    if (n == 0) return !X.fan.maxCones.empty();
    // Facet pairing: every maximal cone full-dimensional and every facet
    // shared by exactly two maximal cones. Valid for simplicial fans.
    std::map<std::vector<int>, int> facetCount;
    for (const auto& c : X.fan.maxCones) {
        if (int(c.size()) != n) return false;
        for (size_t k = 0; k < c.size(); ++k) {
            std::vector<int> facet;
            for (size_t i = 0; i < c.size(); ++i)
                if (i != k) facet.push_back(c[i]);
            ++facetCount[facet];
        }
    }
    for (const auto& [facet, count] : facetCount)
        if (count != 2) return false;
    return true;
}

DivisorClass classOf(const TDivisor& D) {
    const ToricVariety& X = *D.variety;
    if (!X.clTorsion.empty()) throw Error("torsion class groups are not supported");
    return X.classProjection * D.coeffs;
}

TDivisor representativeDivisor(const VarietyPtr& X, const DivisorClass& d) {
    if (int(d.size()) != X->clRank) throw Error("class length does not match class group rank");
    if (!X->clTorsion.empty()) throw Error("torsion class groups are not supported");
    if (int(X->sectionRays.size()) != X->clRank)
        throw Error("first maximal cone is not full-dimensional; no canonical section");
    IntMat Wsec(X->clRank, X->clRank);
    for (int k = 0; k < X->clRank; ++k)
        for (int i = 0; i < X->clRank; ++i) Wsec.at(i, k) = X->classProjection.at(i, X->sectionRays[k]);
    IntMat inv = inverseUnimodular(Wsec);
    IntVec x = inv * d;
    IntVec coeffs(X->numRays());
    for (int k = 0; k < X->clRank; ++k) coeffs[X->sectionRays[k]] = x[k];
    return TDivisor(X, coeffs);
}

TDivisor canonicalDivisor(const VarietyPtr& X) { return TDivisor(X, IntVec(X->numRays(), -1)); }

TDivisor zeroDivisor(const VarietyPtr& X) { return TDivisor(X, IntVec(X->numRays(), 0)); }

TDivisor addDivisors(const TDivisor& a, const TDivisor& b) {
    if (a.variety != b.variety) throw Error("divisors live on different varieties");
    return TDivisor(a.variety, add(a.coeffs, b.coeffs));
}

TDivisor subDivisors(const TDivisor& a, const TDivisor& b) {
    if (a.variety != b.variety) throw Error("divisors live on different varieties");
    return TDivisor(a.variety, sub(a.coeffs, b.coeffs));
}

std::optional<RatVec> solveCharacter(const std::vector<IntVec>& rays, const RatVec& rhs) {
    if (rays.size() != rhs.size()) throw Error("solveCharacter shape mismatch");
    if (rays.empty()) throw Error("solveCharacter needs at least one ray");
    int n = int(rays[0].size());
    RatMat A(int(rays.size()), n);
    for (size_t i = 0; i < rays.size(); ++i)
        for (int j = 0; j < n; ++j) A.at(int(i), j) = rays[i][j];
    if (rank(A) != n) throw Error("rays do not span");
    return solveAny(A, rhs);
}

std::vector<PolytopeVertex> divisorPolytopeVertices(const TDivisor& D) {
    const ToricVariety& X = *D.variety;
    std::vector<PolytopeVertex> out;
    for (size_t ci = 0; ci < X.fan.maxCones.size(); ++ci) {
        const auto& c = X.fan.maxCones[ci];
        if (int(c.size()) != X.dim())
            throw Error("divisor polytope requires full-dimensional maximal cones");
        RatVec rhs(c.size());
        for (size_t k = 0; k < c.size(); ++k) rhs[k] = -D.coeffs[c[k]];
        auto m = solveCharacter(raysOf(X.fan, c), rhs);
        if (!m) throw Error("inconsistent vertex system");
        out.push_back({int(ci), *m});
    }
    return out;
}

long long Box::count() const {
    if (empty) return 0;
    long long c = 1;
    for (size_t i = 0; i < lo.size(); ++i) {
        Int w = hi[i] - lo[i] + 1;
        if (w <= 0) return 0;
        c *= w.get_si();
    }
    return c;
}

Box characterBox(const ToricVariety& X, const IntVec& coeffs, int margin) {
    const int n = X.dim();
    const int R = X.numRays();
    if (int(coeffs.size()) != R) throw Error("divisor length does not match ray count");
    if (n == 0) return Box{{}, {}, false};
    std::vector<RatVec> vertices;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int start) -> void {
        if (int(pick.size()) == n) {
            std::vector<IntVec> rs;
            RatVec rhs;
            for (int i : pick) {
                rs.push_back(X.fan.rays[i]);
                rhs.push_back(Rat(-coeffs[i]));
            }
            if (rank(IntMat::fromRows(rs)) == n) {
                auto m = solveCharacter(rs, rhs);
                if (m) vertices.push_back(*m);
            }
            return;
        }
        for (int i = start; i < R; ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    if (vertices.empty()) throw Error("rays do not span");
    Box box;
    box.lo.assign(n, 0);
    box.hi.assign(n, 0);
    for (int j = 0; j < n; ++j) {
        Rat lo = vertices[0][j], hi = vertices[0][j];
        for (const RatVec& v : vertices) {
            lo = std::min(lo, v[j]);
            hi = std::max(hi, v[j]);
        }
        Int fl, ce;
        mpz_fdiv_q(fl.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
        mpz_cdiv_q(ce.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
        box.lo[j] = fl - margin;
        box.hi[j] = ce + margin;
    }
    return box;
}

std::vector<IntVec> boxPoints(const Box& box) {
    std::vector<IntVec> pts;
    if (box.empty) return pts;
    int n = int(box.lo.size());
    if (n == 0) {
        pts.push_back({});
        return pts;
    }
    IntVec cur = box.lo;
    while (true) {
        pts.push_back(cur);
        int k = n - 1;
        while (k >= 0) {
            ++cur[k];
            if (cur[k] <= box.hi[k]) break;
            cur[k] = box.lo[k];
            --k;
        }
        if (k < 0) break;
    }
    return pts;
}

std::vector<IntVec> latticePoints(const TDivisor& D) {
    const ToricVariety& X = *D.variety;
    if (!isComplete(X)) throw Error("lattice point enumeration requires a complete variety");
    if (X.dim() == 0) return {IntVec{}};
    Box box = characterBox(X, D.coeffs, 0);
    std::vector<IntVec> out;
    for (const IntVec& m : boxPoints(box)) {
        bool ok = true;
        for (int i = 0; i < X.numRays() && ok; ++i)
            if (dot(m, X.fan.rays[i]) < -D.coeffs[i]) ok = false;
        if (ok) out.push_back(m);
    }
    return out;
}

}  // namespace toric
