#pragma once

#include "toric/maps.hpp"

#include <map>

namespace toric {

/// Abstract simplicial complex on a set of ray indices: the rays where a
/// character fails local generation, with faces the cone-spanning subsets.
/// The empty complex (only the empty face) and the void complex (no faces at
/// all) are distinguished; reduced cohomology of the empty complex is
/// one-dimensional in degree -1.
struct SupportComplex {
    std::vector<int> vertices;               ///< ascending ray indices
    std::vector<std::vector<int>> facets;    ///< maximal faces, each sorted
    bool isVoid = false;

    /// All k-dimensional faces (k+1 vertices), lexicographically sorted.
    std::vector<std::vector<int>> faces(int k) const;
    bool hasFace(const std::vector<int>& sorted) const;
};

Subfan fullSubfan(const VarietyPtr& X);

SupportComplex supportComplex(const Subfan& subfan, const TDivisor& D, const IntVec& m);

/// Reduced simplicial cohomology over Q in one degree, with a deterministic
/// pivot-based basis of cocycle representatives (coordinates over the
/// lex-ordered k-faces).
struct CohomologyBasis {
    int dim = 0;
    std::vector<std::vector<int>> kFaces;    ///< lex-ordered basis of the cochain space
    std::vector<RatVec> representatives;     ///< cocycle representatives, one per class
};

CohomologyBasis reducedCohomology(const SupportComplex& C, int k);

int reducedCohomologyDim(const SupportComplex& C, int k);

/// Matrix of the restriction H^k(big) -> H^k(sub) in the deterministic bases.
/// Errors if sub is not a subcomplex of big.
RatMat inducedRestriction(const SupportComplex& big, const SupportComplex& sub, int k,
                          const CohomologyBasis& bigBasis, const CohomologyBasis& subBasis);

RatMat inducedRestriction(const SupportComplex& big, const SupportComplex& sub, int k);

/// Graded dimensions of H^i(X, O(D)); characters outside the box cannot
/// contribute (complete case).
struct GradedCohomologyTable {
    int degree = 0;
    std::map<IntVec, int> dims;  ///< character -> dimension, nonzero entries only

    int total() const;
};

GradedCohomologyTable lineBundleCohomology(const ToricVariety& X, const TDivisor& D, int i, int boxMargin = 1);

}  // namespace toric
