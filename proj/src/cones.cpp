#include "toric/cones.hpp"

#include <algorithm>
#include <set>

namespace toric {

namespace {

RatMat stackRows(const std::vector<RatVec>& rows, int dim) {
    RatMat m(int(rows.size()), dim);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < dim; ++j) m.at(int(i), j) = rows[i][j];
    return m;
}

IntVec primitiveFromRat(const RatVec& v) {
    Int lcm = 1;
    for (const Rat& x : v) lcm = lcm * x.get_den() / gcd(lcm, Int(x.get_den()));
    IntVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * lcm;
        w[i] = s.get_num();
    }
    return primitiveVector(w);
}

}  // namespace

std::vector<IntVec> extremalRays(const ConeSystem& sys) {
    const int n = sys.dim;
    const int m = int(sys.inequalities.size());

    // Lineality check: all constraints as equalities must only admit 0.
    {
        std::vector<RatVec> all = sys.equalities;
        all.insert(all.end(), sys.inequalities.begin(), sys.inequalities.end());
        RatMat A = stackRows(all, n);
        if (rank(A) < n) {
            RatMat K = rationalKernelBasis(A);
            // A nontrivial kernel is a line inside the cone.
            if (K.cols() > 0) throw Error("cone is not pointed");
        }
    }

    auto feasible = [&](const IntVec& v) {
        for (const RatVec& a : sys.equalities)
            if (dot(a, toRat(v)) != 0) return false;
        for (const RatVec& a : sys.inequalities)
            if (dot(a, toRat(v)) < 0) return false;
        return true;
    };

    std::set<IntVec> found;
    // A ray of a pointed cone spans the 1-dim solution space of some active
    // subset of constraints. Enumerate subsets of inequalities up to size n.
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    int maxPick = std::min(m, n);
    std::vector<int> pick;
    auto tryPick = [&]() {
        std::vector<RatVec> rows = sys.equalities;
        for (int i : pick) rows.push_back(sys.inequalities[i]);
        RatMat A = stackRows(rows, n);
        RatMat K = rationalKernelBasis(A);
        if (K.cols() != 1) return;
        RatVec dir(n);
        for (int i = 0; i < n; ++i) dir[i] = K.at(i, 0);
        IntVec v = primitiveFromRat(dir);
        IntVec neg(n);
        for (int i = 0; i < n; ++i) neg[i] = -v[i];
        bool fp = feasible(v), fn = feasible(neg);
        if (fp && fn) throw Error("cone is not pointed");
        if (fp) found.insert(v);
        if (fn) found.insert(neg);
    };
    // Iterate subsets of size 0..maxPick.
    std::vector<int> stack;
    auto rec = [&](auto&& self, int start, int remaining) -> void {
        tryPick();
        if (remaining == 0) return;
        for (int i = start; i < m; ++i) {
            pick.push_back(i);
            self(self, i + 1, remaining - 1);
            pick.pop_back();
        }
    };
    rec(rec, 0, maxPick);

    // Keep only extremal generators: drop any ray expressible by the others.
    std::vector<IntVec> rays(found.begin(), found.end());
    std::vector<IntVec> extremal;
    for (size_t i = 0; i < rays.size(); ++i) {
        // r is redundant iff rank of active-constraint set at r is < n-1,
        // equivalently r lies in the cone spanned by the others. Exact test:
        // active inequality rows at r must cut a 1-dim space.
        std::vector<RatVec> act = sys.equalities;
        for (const RatVec& a : sys.inequalities)
            if (dot(a, toRat(rays[i])) == 0) act.push_back(a);
        RatMat A = stackRows(act, n);
        if (rank(A) == n - 1) extremal.push_back(rays[i]);
    }
    return extremal;
}

std::optional<RatVec> simplicialConeCoordinates(const std::vector<IntVec>& rays, const IntVec& v) {
    if (rays.empty()) {
        if (isZeroVec(v)) return RatVec{};
        return std::nullopt;
    }
    int n = int(rays[0].size());
    RatMat A(n, int(rays.size()));
    for (size_t j = 0; j < rays.size(); ++j)
        for (int i = 0; i < n; ++i) A.at(i, int(j)) = rays[j][i];
    return solveAny(A, toRat(v));
}

bool inSimplicialCone(const std::vector<IntVec>& rays, const IntVec& v) {
    auto c = simplicialConeCoordinates(rays, v);
    if (!c) return false;
    return std::all_of(c->begin(), c->end(), [](const Rat& x) { return x >= 0; });
}

ConeSystem simplicialConeSystem(const std::vector<IntVec>& rays, int dim) {
    ConeSystem sys;
    sys.dim = dim;
    int k = int(rays.size());
    if (k == 0) {
        // The zero cone: x = 0.
        for (int i = 0; i < dim; ++i) {
            RatVec e(dim);
            e[i] = 1;
            sys.equalities.push_back(e);
        }
        return sys;
    }
    // Span constraints: w with <ray_i, w> = 0 for every ray cuts out the span.
    IntMat R(k, dim);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < dim; ++j) R.at(i, j) = rays[i][j];
    RatMat K = rationalKernelBasis(RatMat::fromInt(R));
    for (int c = 0; c < K.cols(); ++c) {
        RatVec w(dim);
        for (int i = 0; i < dim; ++i) w[i] = K.at(i, c);
        sys.equalities.push_back(w);
    }
    // Coordinate functionals: rows L with L * R^T = I (any left inverse works
    // together with the span equalities).
    RatMat Rt(dim, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < dim; ++j) Rt.at(j, i) = rays[i][j];
    for (int i = 0; i < k; ++i) {
        RatVec e(k);
        e[i] = 1;
        // Solve Rt^T lambda = e ... we need lambda with <lambda, ray_j> = delta_ij.
        RatMat pairing(k, dim);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < dim; ++b) pairing.at(a, b) = rays[a][b];
        auto lam = solveAny(pairing, e);
        if (!lam) throw Error("rays are not linearly independent");
        sys.inequalities.push_back(*lam);
    }
    return sys;
}

std::vector<IntVec> intersectSimplicialCones(const std::vector<IntVec>& a, const std::vector<IntVec>& b, int dim) {
    ConeSystem sa = simplicialConeSystem(a, dim);
    ConeSystem sb = simplicialConeSystem(b, dim);
    ConeSystem sys;
    sys.dim = dim;
    sys.inequalities = sa.inequalities;
    sys.inequalities.insert(sys.inequalities.end(), sb.inequalities.begin(), sb.inequalities.end());
    sys.equalities = sa.equalities;
    sys.equalities.insert(sys.equalities.end(), sb.equalities.begin(), sb.equalities.end());
    return extremalRays(sys);
}

}  // namespace toric
