#pragma once

#include "toric/linalg.hpp"

#include <memory>

namespace toric {

/// A finite collection of strongly convex simplicial rational cones, closed
/// under faces, given by primitive ray generators and maximal cones (sets of
/// ray indices, stored sorted). Validated at construction: rays primitive and
/// distinct, every ray used, cones simplicial, and pairwise intersections of
/// listed cones are faces of both.
struct Fan {
    int dim = 0;
    std::vector<IntVec> rays;
    std::vector<std::vector<int>> maxCones;

    Fan() = default;
    Fan(int dim, std::vector<IntVec> rays, std::vector<std::vector<int>> maxCones);

    int numRays() const { return int(rays.size()); }
    /// True iff the sorted index set spans a cone of the fan (a subset of
    /// some maximal cone; faces of simplicial cones are ray subsets).
    bool spansCone(const std::vector<int>& sorted) const;
};

struct ToricVariety;
using VarietyPtr = std::shared_ptr<const ToricVariety>;

/// Torus-invariant Weil divisor: one integer coefficient per ray.
struct TDivisor {
    VarietyPtr variety;
    IntVec coeffs;

    TDivisor() = default;
    TDivisor(VarietyPtr X, IntVec a);
};

using DivisorClass = IntVec;

/// Smooth (or at least simplicial) toric variety: a fan together with its
/// class group data. The class-group projection is the bottom block of the
/// Hermite transform of the ray matrix, so bases are deterministic; for the
/// Hirzebruch surface this makes the classes of the last two rays the
/// standard basis.
struct ToricVariety {
    Fan fan;
    IntMat classProjection;       ///< #clRank x #rays, kills principal divisors
    int clRank = 0;               ///< free rank of the class group
    std::vector<Int> clTorsion;   ///< nontrivial SNF diagonal entries, if any
    std::vector<int> sectionRays; ///< rays not in the first maximal cone, in order

    int dim() const { return fan.dim; }
    int numRays() const { return fan.numRays(); }
};

VarietyPtr makeToricVariety(Fan fan);

VarietyPtr buildProjectiveSpace(int n);
VarietyPtr buildHirzebruch(const Int& a);
/// Fan of a point (rank-0 lattice).
VarietyPtr buildPoint();
VarietyPtr productVariety(const VarietyPtr& X, const VarietyPtr& Y);
/// Star subdivision along the cone spanned by the given ray indices; the new
/// ray (primitive sum of the selected rays) is appended at the end.
VarietyPtr starSubdivisionBlowup(const VarietyPtr& X, const std::vector<int>& rayIndices);

bool isSmooth(const ToricVariety& X);
bool isComplete(const ToricVariety& X);

DivisorClass classOf(const TDivisor& D);
/// Canonical divisor representative of a class: coefficients supported on
/// the rays outside the first maximal cone.
TDivisor representativeDivisor(const VarietyPtr& X, const DivisorClass& d);
TDivisor canonicalDivisor(const VarietyPtr& X);
TDivisor zeroDivisor(const VarietyPtr& X);
TDivisor addDivisors(const TDivisor& a, const TDivisor& b);
TDivisor subDivisors(const TDivisor& a, const TDivisor& b);

struct PolytopeVertex {
    int coneIndex;
    RatVec m;
};

/// For each maximal cone sigma, the unique m with <m, u_rho> = -a_rho for all
/// rays of sigma. For nef divisors these are the polytope vertices.
std::vector<PolytopeVertex> divisorPolytopeVertices(const TDivisor& D);

/// All characters m with <m, u_rho> >= -a_rho for every ray. Requires a
/// complete variety. Sorted lexicographically.
std::vector<IntVec> latticePoints(const TDivisor& D);

struct Box {
    IntVec lo, hi;
    bool empty = false;
    long long count() const;
};

/// Bounding box (enlarged by `margin`) of all chamber vertices
/// {m : <m,u_rho> = -a_rho for n independent rays}. Every character with a
/// nonzero cohomology contribution lies inside (complete case).
Box characterBox(const ToricVariety& X, const IntVec& coeffs, int margin = 1);

/// Enumerate all lattice points of a box in lexicographic order.
std::vector<IntVec> boxPoints(const Box& box);

/// Exact solve of <m, u_rho> = rhs_rho over the given rays; nullopt if
/// inconsistent, error if underdetermined.
std::optional<RatVec> solveCharacter(const std::vector<IntVec>& rays, const RatVec& rhs);

}  // namespace toric
