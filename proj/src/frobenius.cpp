#include "toric/frobenius.hpp"

#include <algorithm>

namespace toric {

namespace {

std::vector<IntVec> lexResidues(const Int& p, int n) {
    std::vector<IntVec> out;
    IntVec cur(n, 0);
    while (true) {
        out.push_back(cur);
        int k = n - 1;
        while (k >= 0) {
            ++cur[k];
            if (cur[k] < p) break;
            cur[k] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return out;
}

Int floorDiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

IntVec floorMod(const IntVec& v, const Int& p) {
    IntVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) mpz_fdiv_r(r[i].get_mpz_t(), v[i].get_mpz_t(), p.get_mpz_t());
    return r;
}

/// Character w with <w, u_rho> = rhs_rho for all rays; error text flags a
/// degree mismatch since the system is consistent exactly when the classes
/// match.
IntVec alignmentCharacter(const VarietyPtr& X, const IntVec& rhs) {
    auto m = solveCharacter(X->fan.rays, toRat(rhs));
    if (!m || !isIntegral(*m)) throw Error("entry not homogeneous of the required degree");
    return toIntExact(*m);
}

}  // namespace

FrobeniusSummands frobeniusSummands(const VarietyPtr& X, const Int& p, const TDivisor& D) {
    if (p < 1) throw Error("frobenius parameter must be positive");
    if (D.variety != X) throw Error("divisor does not live on the given variety");
    FrobeniusSummands out;
    out.p = p;
    out.divisor = D.coeffs;
    out.residues = lexResidues(p, X->dim());
    for (const IntVec& u : out.residues) {
        IntVec s(X->numRays());
        for (int r = 0; r < X->numRays(); ++r) s[r] = floorDiv(D.coeffs[r] + dot(u, X->fan.rays[r]), p);
        out.summands.push_back(s);
    }
    return out;
}

SummandMap frobeniusPushMap(const VarietyPtr& X, const Int& p, const IntVec& sourceDivisor,
                            const IntVec& targetDivisor, const CoxPolynomial& entry) {
    ModuleMap f;
    f.target = makeFreeModuleWithDivisors(X, {targetDivisor});
    f.source = makeFreeModuleWithDivisors(X, {sourceDivisor});
    f.entries = {{entry}};
    return frobeniusPushMatrix(X, p, f);
}

SummandMap frobeniusPushMatrix(const VarietyPtr& X, const Int& p, const ModuleMap& f) {
    if (p < 1) throw Error("frobenius parameter must be positive");
    try {
        checkHomogeneous(f);
    } catch (const Error&) {
        throw Error("entry not homogeneous of the required degree");
    }
    const int R = X->numRays();

    std::vector<IntVec> residues = lexResidues(p, X->dim());
    const int q = int(residues.size());

    auto pushGens = [&](const FreeMultigradedModule& M) {
        std::vector<IntVec> divisors;
        std::vector<IntVec> resOf;
        for (int g = 0; g < M.rank(); ++g) {
            FrobeniusSummands s = frobeniusSummands(X, p, TDivisor(X, M.genDivisors[g]));
            for (int u = 0; u < q; ++u) {
                divisors.push_back(s.summands[u]);
                resOf.push_back(s.residues[u]);
            }
        }
        return std::make_pair(makeFreeModuleWithDivisors(X, divisors), resOf);
    };

    auto [target, targetRes] = pushGens(f.target);
    auto [source, sourceRes] = pushGens(f.source);

    SummandMap out;
    out.p = p;
    out.targetResidues = targetRes;
    out.sourceResidues = sourceRes;
    out.map.target = target;
    out.map.source = source;
    out.map.entries.assign(target.rank(), std::vector<CoxPolynomial>(source.rank()));

    std::map<IntVec, int> resIndex;
    for (int u = 0; u < q; ++u) resIndex[residues[u]] = u;

    for (int i = 0; i < f.target.rank(); ++i) {
        const IntVec& T = f.target.genDivisors[i];
        for (int j = 0; j < f.source.rank(); ++j) {
            const IntVec& S = f.source.genDivisors[j];
            for (const CoxMonomial& mono : f.entries[i][j]) {
                IntVec rhs(R);
                for (int r = 0; r < R; ++r) rhs[r] = T[r] - S[r] - mono.exponents[r];
                IntVec w = alignmentCharacter(X, rhs);
                for (int su = 0; su < q; ++su) {
                    const IntVec& u = residues[su];
                    IntVec uPrime = floorMod(sub(u, w), p);
                    int tu = resIndex.at(uPrime);
                    IntVec wh(u.size());
                    for (size_t t = 0; t < u.size(); ++t) {
                        Int num = u[t] - w[t] - uPrime[t];
                        if (num % p != 0) throw Error("residue bookkeeping failure");
                        wh[t] = num / p;
                    }
                    const IntVec& Tu = out.map.target.genDivisors[size_t(i) * q + tu];
                    const IntVec& Su = out.map.source.genDivisors[size_t(j) * q + su];
                    IntVec e(R);
                    for (int r = 0; r < R; ++r) {
                        e[r] = Tu[r] - Su[r] + dot(wh, X->fan.rays[r]);
                        if (e[r] < 0) throw Error("negative exponent in pushed monomial");
                    }
                    int row = i * q + tu;
                    int col = j * q + su;
                    out.map.entries[row][col] =
                        addPoly(out.map.entries[row][col], monomial(std::move(e), mono.coefficient));
                }
            }
        }
    }
    checkHomogeneous(out.map);
    return out;
}

std::vector<SummandMap> frobeniusPushComplex(const VarietyPtr& X, const Int& p, const std::vector<ModuleMap>& complex) {
    for (size_t k = 0; k + 1 < complex.size(); ++k)
        if (!isZeroMap(composeMaps(complex[k], complex[k + 1]))) throw Error("input is not a complex");
    std::vector<SummandMap> out;
    for (const auto& d : complex) out.push_back(frobeniusPushMatrix(X, p, d));
    for (size_t k = 0; k + 1 < out.size(); ++k)
        if (!isZeroMap(composeMaps(out[k].map, out[k + 1].map))) throw Error("pushed maps do not compose to zero");
    return out;
}

PresentedModule frobeniusPushModule(const VarietyPtr& X, const Int& p, const PresentedModule& M) {
    return frobeniusPushMatrix(X, p, M).map;
}

}  // namespace toric
