#include "toric/cox.hpp"

#include <algorithm>

namespace toric {

CoxPolynomial normalize(CoxPolynomial p) {
    std::sort(p.begin(), p.end(), [](const CoxMonomial& a, const CoxMonomial& b) { return a.exponents < b.exponents; });
    CoxPolynomial out;
    for (auto& m : p) {
        if (!out.empty() && out.back().exponents == m.exponents)
            out.back().coefficient += m.coefficient;
        else
            out.push_back(m);
        if (!out.empty() && out.back().coefficient == 0) out.pop_back();
    }
    return out;
}

CoxPolynomial monomial(IntVec exponents, Rat coefficient) {
    if (coefficient == 0) return {};
    for (const Int& e : exponents)
        if (e < 0) throw Error("negative exponent in Cox monomial");
    return {CoxMonomial{std::move(exponents), std::move(coefficient)}};
}

CoxPolynomial addPoly(const CoxPolynomial& a, const CoxPolynomial& b) {
    CoxPolynomial c = a;
    c.insert(c.end(), b.begin(), b.end());
    return normalize(std::move(c));
}

CoxPolynomial mulPoly(const CoxPolynomial& a, const CoxPolynomial& b) {
    CoxPolynomial c;
    for (const auto& x : a)
        for (const auto& y : b) c.push_back({add(x.exponents, y.exponents), x.coefficient * y.coefficient});
    return normalize(std::move(c));
}

CoxPolynomial negPoly(const CoxPolynomial& a) {
    CoxPolynomial c = a;
    for (auto& m : c) m.coefficient = -m.coefficient;
    return c;
}

bool isZeroPoly(const CoxPolynomial& p) { return p.empty(); }

DivisorClass monomialClass(const VarietyPtr& X, const IntVec& exponents) {
    return X->classProjection * exponents;
}

std::optional<DivisorClass> polynomialClass(const VarietyPtr& X, const CoxPolynomial& p) {
    if (p.empty()) return std::nullopt;
    DivisorClass d = monomialClass(X, p[0].exponents);
    for (const auto& m : p)
        if (monomialClass(X, m.exponents) != d) throw Error("polynomial is not homogeneous");
    return d;
}

FreeMultigradedModule makeFreeModule(const VarietyPtr& X, std::vector<DivisorClass> classes) {
    FreeMultigradedModule M;
    M.variety = X;
    M.genClasses = std::move(classes);
    for (const DivisorClass& c : M.genClasses) {
        DivisorClass neg(c.size());
        for (size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
        M.genDivisors.push_back(representativeDivisor(X, neg).coeffs);
    }
    return M;
}

FreeMultigradedModule makeFreeModuleWithDivisors(const VarietyPtr& X, std::vector<IntVec> divisors) {
    FreeMultigradedModule M;
    M.variety = X;
    M.genDivisors = std::move(divisors);
    for (const IntVec& d : M.genDivisors) {
        DivisorClass c = classOf(TDivisor(X, d));
        for (Int& x : c) x = -x;
        M.genClasses.push_back(c);
    }
    return M;
}

void checkHomogeneous(const ModuleMap& f) {
    if (int(f.entries.size()) != f.target.rank()) throw Error("entry row count does not match target rank");
    for (int i = 0; i < f.target.rank(); ++i) {
        if (int(f.entries[i].size()) != f.source.rank()) throw Error("entry column count does not match source rank");
        for (int j = 0; j < f.source.rank(); ++j) {
            auto cls = polynomialClass(f.target.variety, f.entries[i][j]);
            if (!cls) continue;
            DivisorClass want = sub(f.source.genClasses[j], f.target.genClasses[i]);
            if (*cls != want) throw Error("non-homogeneous entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
}

ModuleMap composeMaps(const ModuleMap& g, const ModuleMap& f) {
    if (g.source.rank() != f.target.rank()) throw Error("maps are not composable");
    ModuleMap h;
    h.target = g.target;
    h.source = f.source;
    h.entries.assign(g.target.rank(), std::vector<CoxPolynomial>(f.source.rank()));
    for (int i = 0; i < g.target.rank(); ++i)
        for (int j = 0; j < f.source.rank(); ++j) {
            CoxPolynomial acc;
            for (int k = 0; k < g.source.rank(); ++k)
                acc = addPoly(acc, mulPoly(g.entries[i][k], f.entries[k][j]));
            h.entries[i][j] = acc;
        }
    return h;
}

bool isZeroMap(const ModuleMap& f) {
    for (const auto& row : f.entries)
        for (const auto& e : row)
            if (!isZeroPoly(e)) return false;
    return true;
}

std::vector<GradedBasisElement> gradedPieceBasis(const FreeMultigradedModule& M, const DivisorClass& d) {
    std::vector<GradedBasisElement> out;
    const VarietyPtr& X = M.variety;
    IntVec repd = representativeDivisor(X, d).coeffs;
    for (int j = 0; j < M.rank(); ++j) {
        TDivisor twisted(X, add(M.genDivisors[j], repd));
        for (const IntVec& m : latticePoints(twisted)) {
            IntVec e(X->numRays());
            for (int r = 0; r < X->numRays(); ++r) e[r] = twisted.coeffs[r] + dot(m, X->fan.rays[r]);
            out.push_back({j, m, e});
        }
    }
    return out;
}

RatMat gradedPieceMatrix(const ModuleMap& f, const DivisorClass& d) {
    checkHomogeneous(f);
    auto tgt = gradedPieceBasis(f.target, d);
    auto src = gradedPieceBasis(f.source, d);
    std::map<std::pair<int, IntVec>, int> tgtIndex;
    for (size_t t = 0; t < tgt.size(); ++t) tgtIndex[{tgt[t].generator, tgt[t].exponents}] = int(t);
    RatMat out(int(tgt.size()), int(src.size()));
    for (size_t s = 0; s < src.size(); ++s) {
        int j = src[s].generator;
        for (int i = 0; i < f.target.rank(); ++i) {
            for (const CoxMonomial& mono : f.entries[i][j]) {
                IntVec e = add(src[s].exponents, mono.exponents);
                auto it = tgtIndex.find({i, e});
                if (it == tgtIndex.end()) throw Error("graded piece index not found (inconsistent grading)");
                out.at(it->second, int(s)) += mono.coefficient;
            }
        }
    }
    return out;
}

int hilbertValue(const PresentedModule& M, const DivisorClass& d) {
    RatMat m = gradedPieceMatrix(M, d);
    return m.rows() - rank(m);
}

std::map<DivisorClass, int> hilbertFunction(const PresentedModule& M, const Box& classBox) {
    std::map<DivisorClass, int> out;
    for (const IntVec& d : boxPoints(classBox)) out[d] = hilbertValue(M, d);
    return out;
}

}  // namespace toric
