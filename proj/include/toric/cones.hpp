#pragma once

#include "toric/linalg.hpp"

namespace toric {

/// A cone presented by inequalities a.x >= 0 and equalities e.x = 0 in Q^n.
struct ConeSystem {
    int dim = 0;
    std::vector<RatVec> inequalities;
    std::vector<RatVec> equalities;
};

/// Extremal rays (primitive integer generators) of a pointed cone given by a
/// ConeSystem. Errors if the cone contains a line. Exhaustive enumeration of
/// active constraint subsets; exact and deterministic, sized for small dims.
std::vector<IntVec> extremalRays(const ConeSystem& sys);

/// Does v lie in the cone generated by the given (linearly independent) rays?
/// Exact test: solve for the coordinates and require them nonnegative.
bool inSimplicialCone(const std::vector<IntVec>& rays, const IntVec& v);

/// Coordinates of v in the simplicial cone's ray basis if v lies in the
/// cone's span, nullopt otherwise.
std::optional<RatVec> simplicialConeCoordinates(const std::vector<IntVec>& rays, const IntVec& v);

/// Inequality/equality presentation of the cone spanned by linearly
/// independent rays (rows). Used for exact pairwise intersections.
ConeSystem simplicialConeSystem(const std::vector<IntVec>& rays, int dim);

/// Generators of the intersection of two simplicial cones. Errors if the
/// intersection contains a line (cannot happen for strongly convex inputs).
std::vector<IntVec> intersectSimplicialCones(const std::vector<IntVec>& a, const std::vector<IntVec>& b, int dim);

}  // namespace toric
