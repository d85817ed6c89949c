#include "toric/maps.hpp"

#include "toric/cones.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace toric {

namespace {

std::vector<IntVec> raysOf(const Fan& f, const std::vector<int>& cone) {
    std::vector<IntVec> r;
    r.reserve(cone.size());
    for (int i : cone) r.push_back(f.rays[i]);
    return r;
}

// Keep only the maximal sets (drop any strictly contained in another).
std::vector<std::vector<int>> maximalSets(std::vector<std::vector<int>> sets) {
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<std::vector<int>> out;
    for (size_t i = 0; i < sets.size(); ++i) {
        bool contained = false;
        for (size_t j = 0; j < sets.size() && !contained; ++j)
            if (i != j && sets[i].size() < sets[j].size() &&
                std::includes(sets[j].begin(), sets[j].end(), sets[i].begin(), sets[i].end()))
                contained = true;
        if (!contained) out.push_back(sets[i]);
    }
    return out;
}

}  // namespace

bool Subfan::spansCone(const std::vector<int>& sorted) const {
    for (const auto& c : maxCones)
        if (std::includes(c.begin(), c.end(), sorted.begin(), sorted.end())) return true;
    return false;
}

ToricMorphism makeToricMorphism(const VarietyPtr& target, const VarietyPtr& source, const IntMat& matrix) {
    if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
        throw Error("lattice map shape does not match variety dimensions");
    ToricMorphism f{source, target, matrix};
    for (const auto& c : source->fan.maxCones) {
        std::vector<IntVec> images;
        for (int i : c) images.push_back(matrix * source->fan.rays[i]);
        bool ok = false;
        for (const auto& tc : target->fan.maxCones) {
            auto tr = raysOf(target->fan, tc);
            bool all = true;
            for (const IntVec& v : images)
                if (!inSimplicialCone(tr, v)) {
                    all = false;
                    break;
                }
            if (all) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            std::ostringstream os;
            os << "incompatible lattice map: source cone {";
            for (size_t k = 0; k < c.size(); ++k) os << (k ? "," : "") << c[k];
            os << "} maps outside every target cone";
            throw Error(os.str());
        }
    }
    return f;
}

ToricMorphism identityMorphism(const VarietyPtr& X) {
    return makeToricMorphism(X, X, IntMat::identity(X->dim()));
}

ToricMorphism composeMorphisms(const ToricMorphism& g, const ToricMorphism& f) {
    if (g.source != f.target) throw Error("morphisms are not composable");
    return makeToricMorphism(g.target, f.source, g.latticeMap * f.latticeMap);
}

bool isFibration(const ToricMorphism& f) {
    SmithResult s = smithNormalForm(f.latticeMap);
    if (s.rank != f.target->dim()) return false;
    for (int t = 0; t < s.rank; ++t)
        if (s.S.at(t, t) != 1) return false;
    return true;
}

Int supportFunctionValue(const TDivisor& E, const IntVec& v) {
    const ToricVariety& Y = *E.variety;
    for (const auto& c : Y.fan.maxCones) {
        auto rs = raysOf(Y.fan, c);
        if (!inSimplicialCone(rs, v)) continue;
        RatVec rhs(c.size());
        for (size_t k = 0; k < c.size(); ++k) rhs[k] = Rat(-E.coeffs[c[k]]);
        RatMat A(int(c.size()), Y.dim());
        for (size_t r = 0; r < c.size(); ++r)
            for (int j = 0; j < Y.dim(); ++j) A.at(int(r), j) = rs[r][j];
        auto m = solveAny(A, rhs);
        if (!m) throw Error("inconsistent support function system");
        Rat val = dot(*m, toRat(v));
        if (val.get_den() != 1) throw Error("support function value is not integral");
        return val.get_num();
    }
    throw Error("support function undefined: target is not complete at " + describe(v));
}

TDivisor pullbackDivisor(const ToricMorphism& f, const TDivisor& E) {
    if (E.variety != f.target) throw Error("divisor does not live on the target");
    if (!isComplete(*f.target)) throw Error("support function undefined: target is not complete");
    IntVec coeffs(f.source->numRays());
    for (int i = 0; i < f.source->numRays(); ++i)
        coeffs[i] = -supportFunctionValue(E, f.apply(f.source->fan.rays[i]));
    return TDivisor(f.source, coeffs);
}

Subfan preimageSubfan(const ToricMorphism& f, const std::vector<int>& targetCone) {
    std::vector<int> tc = targetCone;
    std::sort(tc.begin(), tc.end());
    if (!f.target->fan.spansCone(tc)) throw Error("cone is not in the target fan");
    auto targetRays = raysOf(f.target->fan, tc);

    Subfan sub;
    sub.ambient = f.source;
    std::vector<bool> included(f.source->numRays(), false);
    for (int i = 0; i < f.source->numRays(); ++i) {
        if (inSimplicialCone(targetRays, f.apply(f.source->fan.rays[i]))) {
            included[i] = true;
            sub.rays.push_back(i);
        }
    }
    std::vector<std::vector<int>> cones;
    for (const auto& c : f.source->fan.maxCones) {
        std::vector<int> kept;
        for (int i : c)
            if (included[i]) kept.push_back(i);
        cones.push_back(kept);
    }
    sub.maxCones = maximalSets(std::move(cones));
    return sub;
}

FiberFan fiberFan(const ToricMorphism& f) {
    FiberFan out;
    out.kernelBasis = integerKernelBasis(f.latticeMap);
    const int k = out.kernelBasis.cols();
    for (int i = 0; i < f.source->numRays(); ++i)
        if (isZeroVec(f.apply(f.source->fan.rays[i]))) out.verticalRays.push_back(i);

    std::map<int, int> pos;
    for (size_t j = 0; j < out.verticalRays.size(); ++j) pos[out.verticalRays[j]] = int(j);

    std::vector<IntVec> fRays;
    for (int i : out.verticalRays) {
        RatMat A(f.source->dim(), k);
        for (int r = 0; r < f.source->dim(); ++r)
            for (int c = 0; c < k; ++c) A.at(r, c) = out.kernelBasis.at(r, c);
        auto w = solveAny(A, toRat(f.source->fan.rays[i]));
        if (!w || !isIntegral(*w)) throw Error("vertical ray not in kernel lattice");
        fRays.push_back(toIntExact(*w));
    }
    std::vector<std::vector<int>> cones;
    for (const auto& c : f.source->fan.maxCones) {
        std::vector<int> kept;
        for (int i : c)
            if (pos.count(i)) kept.push_back(pos[i]);
        std::sort(kept.begin(), kept.end());
        cones.push_back(kept);
    }
    cones = maximalSets(std::move(cones));
    out.fiber = makeToricVariety(Fan(k, fRays, cones));
    return out;
}

KernelCharacterData kernelCharacters(const ToricMorphism& f) {
    if (!isFibration(f)) throw Error("not a fibration");
    KernelCharacterData data;
    data.pullback = f.latticeMap.transpose();
    const int nX = f.source->dim();
    const int nY = f.target->dim();
    data.rank = nX - nY;
    HermiteResult h = hermiteNormalForm(data.pullback);
    for (int i = 0; i < nY; ++i)
        for (int j = 0; j < nY; ++j)
            if (h.H.at(i, j) != (i == j ? 1 : 0)) throw Error("unexpected Hermite form for a fibration");
    data.quotient = IntMat(data.rank, nX);
    for (int i = 0; i < data.rank; ++i)
        for (int j = 0; j < nX; ++j) data.quotient.at(i, j) = h.U.at(nY + i, j);
    IntMat Uinv = inverseUnimodular(h.U);
    data.section = IntMat(nX, data.rank);
    for (int i = 0; i < nX; ++i)
        for (int j = 0; j < data.rank; ++j) data.section.at(i, j) = Uinv.at(i, nY + j);
    return data;
}

ToricMorphism frobeniusMorphism(const VarietyPtr& X, const Int& p) {
    if (p < 1) throw Error("frobenius parameter must be positive");
    IntMat m = IntMat::identity(X->dim());
    for (int i = 0; i < X->dim(); ++i) m.at(i, i) = p;
    return makeToricMorphism(X, X, m);
}

std::vector<WallRelation> wallRelations(const ToricVariety& X) {
    const int n = X.dim();
    std::map<std::vector<int>, std::vector<int>> facetOwners;  // facet -> cone indices
    for (size_t ci = 0; ci < X.fan.maxCones.size(); ++ci) {
        const auto& c = X.fan.maxCones[ci];
        if (int(c.size()) != n) throw Error("wall relations require a complete simplicial fan");
        for (size_t k = 0; k < c.size(); ++k) {
            std::vector<int> facet;
            for (size_t i = 0; i < c.size(); ++i)
                if (i != k) facet.push_back(c[i]);
            facetOwners[facet].push_back(int(ci));
        }
    }
    std::vector<WallRelation> out;
    for (const auto& [facet, owners] : facetOwners) {
        if (owners.size() != 2) throw Error("wall shared by " + std::to_string(owners.size()) + " cones; fan is not complete");
        const auto& ca = X.fan.maxCones[owners[0]];
        const auto& cb = X.fan.maxCones[owners[1]];
        std::set<int> raySet(ca.begin(), ca.end());
        raySet.insert(cb.begin(), cb.end());
        std::vector<int> rays(raySet.begin(), raySet.end());
        IntMat M(n, int(rays.size()));
        for (size_t j = 0; j < rays.size(); ++j)
            for (int i = 0; i < n; ++i) M.at(i, int(j)) = X.fan.rays[rays[j]][i];
        IntMat K = integerKernelBasis(M);
        if (K.cols() != 1) throw Error("degenerate wall relation");
        IntVec b = primitiveVector(K.col(0));
        int offA = -1, offB = -1;
        for (int i : ca)
            if (!std::binary_search(cb.begin(), cb.end(), i)) offA = i;
        for (int i : cb)
            if (!std::binary_search(ca.begin(), ca.end(), i)) offB = i;
        auto posOf = [&](int ray) {
            return int(std::lower_bound(rays.begin(), rays.end(), ray) - rays.begin());
        };
        if (b[posOf(offA)] < 0)
            for (Int& x : b) x = -x;
        if (b[posOf(offA)] <= 0 || b[posOf(offB)] <= 0) throw Error("degenerate wall relation");
        WallRelation w;
        w.wall = facet;
        w.coefficients.assign(X.numRays(), 0);
        for (size_t j = 0; j < rays.size(); ++j) w.coefficients[rays[j]] = b[j];
        out.push_back(std::move(w));
    }
    return out;
}

Int wallDegree(const WallRelation& w, const TDivisor& D) { return dot(w.coefficients, D.coeffs); }

std::vector<Contraction> nefRayContractions(const VarietyPtr& X) {
    if (!isSmooth(*X) || !isComplete(*X)) throw Error("nef ray contractions require a smooth complete variety");
    auto walls = wallRelations(*X);
    const int r = X->clRank;

    // Wall functionals in the class basis: degree of the k-th basis class.
    std::vector<IntVec> functionals;
    for (const auto& w : walls) {
        IntVec c(r);
        for (int k = 0; k < r; ++k) {
            DivisorClass e(r);
            e[k] = 1;
            c[k] = wallDegree(w, representativeDivisor(X, e));
        }
        functionals.push_back(c);
    }

    ConeSystem nef;
    nef.dim = r;
    for (const IntVec& c : functionals) nef.inequalities.push_back(toRat(c));
    std::vector<IntVec> extremal;
    try {
        extremal = extremalRays(nef);
    } catch (const Error&) {
        throw Error("nef cone is not pointed; variety may not be projective");
    }
    std::sort(extremal.begin(), extremal.end());

    std::vector<Contraction> out;
    for (const IntVec& cls : extremal) {
        TDivisor D = representativeDivisor(X, cls);
        bool ample = true;
        for (const auto& w : walls)
            if (wallDegree(w, D) == 0) ample = false;
        if (ample) {
            out.push_back({identityMorphism(X), cls, true});
            continue;
        }
        auto vertices = divisorPolytopeVertices(D);
        // Group maximal cones by their vertex value, in first-appearance order.
        std::map<RatVec, int> groupOf;
        std::vector<RatVec> groupVertex;
        std::vector<std::vector<int>> groupCones;
        for (const auto& v : vertices) {
            auto it = groupOf.find(v.m);
            if (it == groupOf.end()) {
                it = groupOf.emplace(v.m, int(groupVertex.size())).first;
                groupVertex.push_back(v.m);
                groupCones.push_back({});
            }
            groupCones[it->second].push_back(v.coneIndex);
        }

        // Direction space V spanned by vertex differences; L = its integer
        // annihilator; projection onto N_Y from the Hermite transform.
        std::vector<IntVec> dirs;
        for (size_t g = 1; g < groupVertex.size(); ++g) {
            RatVec d(X->dim());
            Int lcm = 1;
            for (int j = 0; j < X->dim(); ++j) {
                d[j] = groupVertex[g][j] - groupVertex[0][j];
                lcm = lcm * d[j].get_den() / gcd(lcm, Int(d[j].get_den()));
            }
            IntVec di(X->dim());
            for (int j = 0; j < X->dim(); ++j) di[j] = Rat(d[j] * lcm).get_num();
            if (!isZeroVec(di)) dirs.push_back(di);
        }
        IntMat L = integerKernelBasis(IntMat::fromRows(dirs));  // columns: lattice annihilator of V
        HermiteResult h = hermiteNormalForm(L);
        int nY = X->dim() - L.cols();
        IntMat proj(nY, X->dim());
        for (int i = 0; i < nY; ++i)
            for (int j = 0; j < X->dim(); ++j) proj.at(i, j) = h.U.at(L.cols() + i, j);

        // Functionals phi_h with phi_h * proj = vertex difference, giving the
        // inequality description of each vertex's normal cone downstairs.
        auto descend = [&](const RatVec& diff) {
            RatMat A(X->dim(), nY);
            for (int i = 0; i < nY; ++i)
                for (int j = 0; j < X->dim(); ++j) A.at(j, i) = proj.at(i, j);
            auto phi = solveAny(A, diff);
            if (!phi) throw Error("vertex difference not in the projected character space");
            return *phi;
        };

        std::vector<IntVec> targetRays;
        std::vector<std::vector<int>> targetCones;
        for (size_t g = 0; g < groupVertex.size(); ++g) {
            ConeSystem sys;
            sys.dim = nY;
            for (size_t h2 = 0; h2 < groupVertex.size(); ++h2) {
                if (h2 == g) continue;
                RatVec diff(X->dim());
                for (int j = 0; j < X->dim(); ++j) diff[j] = groupVertex[h2][j] - groupVertex[g][j];
                sys.inequalities.push_back(descend(diff));
            }
            auto gens = extremalRays(sys);
            std::sort(gens.begin(), gens.end());
            std::vector<int> cone;
            for (const IntVec& gen : gens) {
                int idx = -1;
                for (size_t t = 0; t < targetRays.size(); ++t)
                    if (targetRays[t] == gen) idx = int(t);
                if (idx < 0) {
                    idx = int(targetRays.size());
                    targetRays.push_back(gen);
                }
                cone.push_back(idx);
            }
            std::sort(cone.begin(), cone.end());
            targetCones.push_back(cone);
        }
        VarietyPtr target = makeToricVariety(Fan(nY, targetRays, targetCones));
        out.push_back({makeToricMorphism(target, X, proj), cls, false});
    }
    return out;
}

}  // namespace toric
