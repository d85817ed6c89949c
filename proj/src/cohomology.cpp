#include "toric/cohomology.hpp"

#include <algorithm>
#include <set>

namespace toric {

namespace {

// Maximal sets among the inputs, deduplicated.
std::vector<std::vector<int>> maximalFaces(std::vector<std::vector<int>> sets) {
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

void combinations(const std::vector<int>& pool, int k, std::set<std::vector<int>>& out) {
    if (k > int(pool.size())) return;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int start) -> void {
        if (int(pick.size()) == k) {
            out.insert(pick);
            return;
        }
        for (int i = start; i < int(pool.size()); ++i) {
            pick.push_back(pool[i]);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
}

}  // namespace

std::vector<std::vector<int>> SupportComplex::faces(int k) const {
    std::vector<std::vector<int>> out;
    if (isVoid) return out;
    if (k < -1) return out;
    if (k == -1) {
        out.push_back({});
        return out;
    }
    std::set<std::vector<int>> acc;
    for (const auto& f : facets) combinations(f, k + 1, acc);
    out.assign(acc.begin(), acc.end());
    return out;
}

bool SupportComplex::hasFace(const std::vector<int>& sorted) const {
    if (isVoid) return false;
    for (const auto& f : facets)
        if (std::includes(f.begin(), f.end(), sorted.begin(), sorted.end())) return true;
    return false;
}

Subfan fullSubfan(const VarietyPtr& X) {
    Subfan s;
    s.ambient = X;
    for (int i = 0; i < X->numRays(); ++i) s.rays.push_back(i);
    s.maxCones = X->fan.maxCones;
    return s;
}

SupportComplex supportComplex(const Subfan& subfan, const TDivisor& D, const IntVec& m) {
    if (subfan.ambient != D.variety) throw Error("subfan and divisor live on different varieties");
    SupportComplex C;
    std::set<int> vert;
    for (int i : subfan.rays)
        if (dot(m, D.variety->fan.rays[i]) < -D.coeffs[i]) vert.insert(i);
    C.vertices.assign(vert.begin(), vert.end());
    std::vector<std::vector<int>> cand;
    for (const auto& c : subfan.maxCones) {
        std::vector<int> kept;
        for (int i : c)
            if (vert.count(i)) kept.push_back(i);
        cand.push_back(kept);
    }
    C.facets = maximalFaces(std::move(cand));
    if (C.facets.empty()) C.facets.push_back({});
    return C;
}

namespace {

// Coboundary matrix from k-faces to (k+1)-faces, entries 0, +-1.
RatMat coboundary(const std::vector<std::vector<int>>& fk, const std::vector<std::vector<int>>& fk1) {
    RatMat d(int(fk1.size()), int(fk.size()));
    std::map<std::vector<int>, int> index;
    for (size_t j = 0; j < fk.size(); ++j) index[fk[j]] = int(j);
    for (size_t r = 0; r < fk1.size(); ++r) {
        const auto& tau = fk1[r];
        for (size_t drop = 0; drop < tau.size(); ++drop) {
            std::vector<int> sigma;
            for (size_t i = 0; i < tau.size(); ++i)
                if (i != drop) sigma.push_back(tau[i]);
            auto it = index.find(sigma);
            if (it == index.end()) throw Error("complex is not closed under faces");
            d.at(int(r), it->second) = (drop % 2 == 0) ? 1 : -1;
        }
    }
    return d;
}

// Reduce v against the pivot rows of an RREF matrix (in place).
void reduceAgainst(RatVec& v, const RatMat& rref, const std::vector<int>& pivots) {
    for (size_t r = 0; r < pivots.size(); ++r) {
        Rat f = v[pivots[r]];
        if (f == 0) continue;
        for (int j = 0; j < rref.cols(); ++j) v[j] -= f * rref.at(int(r), j);
    }
}

}  // namespace

CohomologyBasis reducedCohomology(const SupportComplex& C, int k) {
    CohomologyBasis out;
    if (C.isVoid || k < -1) return out;
    out.kFaces = C.faces(k);
    if (out.kFaces.empty()) return out;
    auto upper = C.faces(k + 1);
    RatMat dk = coboundary(out.kFaces, upper);
    RatMat kernel = rationalKernelBasis(dk);

    // Row space of the coboundaries from below, in RREF.
    RatMat bRows(0, 0);
    std::vector<int> bPivots;
    if (k >= 0) {
        auto lower = C.faces(k - 1);
        if (!lower.empty()) {
            RatMat dkm1 = coboundary(lower, out.kFaces);
            RatMat rows(int(lower.size()), int(out.kFaces.size()));
            for (int c = 0; c < dkm1.cols(); ++c)
                for (int r = 0; r < dkm1.rows(); ++r) rows.at(c, r) = dkm1.at(r, c);
            bPivots = reducedRowEchelon(rows);
            bRows = std::move(rows);
        }
    }

    // Greedy pivot-based choice of representatives among the reduced kernel
    // basis vectors; deterministic given the fixed face order.
    RatMat acc(0, 0);
    std::vector<RatVec> accRows;
    std::vector<int> accPivots;
    auto tryAdd = [&](const RatVec& v) -> bool {
        RatVec w = v;
        // Reduce against accumulated representative rows (kept in RREF form).
        for (size_t r = 0; r < accPivots.size(); ++r) {
            Rat f = w[accPivots[r]];
            if (f == 0) continue;
            for (size_t j = 0; j < w.size(); ++j) w[j] -= f * accRows[r][j];
        }
        int piv = -1;
        for (size_t j = 0; j < w.size(); ++j)
            if (w[j] != 0) {
                piv = int(j);
                break;
            }
        if (piv < 0) return false;
        Rat inv = 1 / w[piv];
        for (auto& x : w) x *= inv;
        accRows.push_back(w);
        accPivots.push_back(piv);
        return true;
    };

    for (int c = 0; c < kernel.cols(); ++c) {
        RatVec z(out.kFaces.size());
        for (size_t r = 0; r < out.kFaces.size(); ++r) z[r] = kernel.at(int(r), c);
        if (bRows.rows() > 0) reduceAgainst(z, bRows, bPivots);
        bool nonzero = std::any_of(z.begin(), z.end(), [](const Rat& x) { return x != 0; });
        if (!nonzero) continue;
        if (tryAdd(z)) out.representatives.push_back(z);
    }
    out.dim = int(out.representatives.size());
    return out;
}

int reducedCohomologyDim(const SupportComplex& C, int k) {
    if (C.isVoid || k < -1) return 0;
    if (k == -1) return C.vertices.empty() ? 1 : 0;
    if (k == 0) {
        // Connected components of the 1-skeleton via union-find.
        if (C.vertices.empty()) return 0;
        std::map<int, int> parent;
        for (int v : C.vertices) parent[v] = v;
        auto find = [&](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (const auto& f : C.facets)
            for (size_t a = 1; a < f.size(); ++a) {
                int ra = find(f[0]), rb = find(f[a]);
                if (ra != rb) parent[ra] = rb;
            }
        std::set<int> roots;
        for (int v : C.vertices) roots.insert(find(v));
        return int(roots.size()) - 1;
    }
    auto fk = C.faces(k);
    if (fk.empty()) return 0;
    auto fk1 = C.faces(k + 1);
    RatMat dk = coboundary(fk, fk1);
    int zdim = int(fk.size()) - rank(dk);
    int bdim = 0;
    if (k >= 0) {
        auto lower = C.faces(k - 1);
        if (!lower.empty()) bdim = rank(coboundary(lower, fk));
    }
    return zdim - bdim;
}

RatMat inducedRestriction(const SupportComplex& big, const SupportComplex& sub, int k,
                          const CohomologyBasis& bigBasis, const CohomologyBasis& subBasis) {
    for (const auto& f : sub.facets)
        if (!big.hasFace(f)) throw Error("not a subcomplex");
    RatMat out(subBasis.dim, bigBasis.dim);
    if (subBasis.dim == 0 || bigBasis.dim == 0) return out;

    // Solve [reps | coboundaries] x = restricted cocycle; the rep block of x
    // gives the class in the sub basis.
    auto subFaces = subBasis.kFaces;
    std::map<std::vector<int>, int> bigIndex;
    for (size_t j = 0; j < bigBasis.kFaces.size(); ++j) bigIndex[bigBasis.kFaces[j]] = int(j);

    std::vector<RatVec> cobGens;
    if (k >= 0) {
        auto lower = sub.faces(k - 1);
        if (!lower.empty()) {
            RatMat d = coboundary(lower, subFaces);
            for (int c = 0; c < d.cols(); ++c) {
                RatVec g(subFaces.size());
                bool nz = false;
                for (size_t r = 0; r < subFaces.size(); ++r) {
                    g[r] = d.at(int(r), c);
                    nz = nz || g[r] != 0;
                }
                if (nz) cobGens.push_back(g);
            }
        }
    }
    int cols = subBasis.dim + int(cobGens.size());
    RatMat A(int(subFaces.size()), cols);
    for (int j = 0; j < subBasis.dim; ++j)
        for (size_t r = 0; r < subFaces.size(); ++r) A.at(int(r), j) = subBasis.representatives[j][r];
    for (size_t j = 0; j < cobGens.size(); ++j)
        for (size_t r = 0; r < subFaces.size(); ++r) A.at(int(r), subBasis.dim + int(j)) = cobGens[j][r];

    for (int j = 0; j < bigBasis.dim; ++j) {
        RatVec restricted(subFaces.size());
        for (size_t r = 0; r < subFaces.size(); ++r) {
            auto it = bigIndex.find(subFaces[r]);
            if (it == bigIndex.end()) throw Error("not a subcomplex");
            restricted[r] = bigBasis.representatives[j][it->second];
        }
        auto x = solveAny(A, restricted);
        if (!x) throw Error("restricted cocycle is not a cocycle of the subcomplex");
        for (int i = 0; i < subBasis.dim; ++i) out.at(i, j) = (*x)[i];
    }
    return out;
}

RatMat inducedRestriction(const SupportComplex& big, const SupportComplex& sub, int k) {
    return inducedRestriction(big, sub, k, reducedCohomology(big, k), reducedCohomology(sub, k));
}

int GradedCohomologyTable::total() const {
    int t = 0;
    for (const auto& [m, d] : dims) t += d;
    return t;
}

GradedCohomologyTable lineBundleCohomology(const ToricVariety& X, const TDivisor& D, int i, int boxMargin) {
    if (i < 0) throw Error("cohomological degree must be nonnegative");
    if (&X != D.variety.get()) throw Error("divisor does not live on the given variety");
    GradedCohomologyTable table;
    table.degree = i;
    if (X.dim() == 0) {
        if (i == 0) table.dims[IntVec{}] = 1;
        return table;
    }
    Subfan full = fullSubfan(D.variety);
    Box box = characterBox(X, D.coeffs, boxMargin);
    for (const IntVec& m : boxPoints(box)) {
        int d = reducedCohomologyDim(supportComplex(full, D, m), i - 1);
        if (d != 0) table.dims[m] = d;
    }
    return table;
}

}  // namespace toric
