#pragma once

#include "toric/fan.hpp"

namespace toric {

/// Toric morphism X -> Y: an integer lattice map (dim Y x dim X matrix)
/// carrying every cone of the source fan into some cone of the target fan.
/// Compatibility is verified at construction.
struct ToricMorphism {
    VarietyPtr source;
    VarietyPtr target;
    IntMat latticeMap;  ///< dim(target) x dim(source)

    IntVec apply(const IntVec& v) const { return latticeMap * v; }
};

/// A subfan of a variety's fan: the cones supported on a subset of its rays.
/// Not complete in general. Used for chart preimages and fiber fans.
struct Subfan {
    VarietyPtr ambient;
    std::vector<int> rays;                  ///< ray indices, ascending
    std::vector<std::vector<int>> maxCones; ///< maximal cones among the included ones

    bool spansCone(const std::vector<int>& sorted) const;
};

ToricMorphism makeToricMorphism(const VarietyPtr& target, const VarietyPtr& source, const IntMat& matrix);
ToricMorphism identityMorphism(const VarietyPtr& X);
ToricMorphism composeMorphisms(const ToricMorphism& g, const ToricMorphism& f);

/// True iff the lattice map is surjective (Smith diagonal all ones). For
/// complete smooth varieties this gives surjectivity with connected fibers.
bool isFibration(const ToricMorphism& f);

/// Pullback of a divisor on a complete target: coefficient on a source ray
/// is minus the support function of E evaluated at the ray's image.
TDivisor pullbackDivisor(const ToricMorphism& f, const TDivisor& E);

/// Support function of a divisor on a complete variety, evaluated at a
/// lattice point.
Int supportFunctionValue(const TDivisor& E, const IntVec& v);

/// All source cones mapping into the target cone (given by ray indices of
/// the target fan, or any face thereof).
Subfan preimageSubfan(const ToricMorphism& f, const std::vector<int>& targetCone);

/// The subfan of source cones killed by the lattice map, expressed in a
/// chosen basis of the kernel lattice: the fan of the generic fiber.
struct FiberFan {
    VarietyPtr fiber;       ///< fiber as a toric variety in the kernel lattice
    IntMat kernelBasis;     ///< dim(source) x k, columns span ker(latticeMap)
    std::vector<int> verticalRays;  ///< source ray indices with image 0, ascending
};

FiberFan fiberFan(const ToricMorphism& f);

/// Characters of the kernel torus with a deterministic splitting of
/// M_source = s(M_kernel) + pullback(M_target).
struct KernelCharacterData {
    IntMat pullback;   ///< dim(source) x dim(target): transpose of the lattice map
    IntMat section;    ///< dim(source) x k, section of the quotient M_X -> M_K
    IntMat quotient;   ///< k x dim(source), the quotient projection
    int rank = 0;      ///< k = dim X - dim Y
};

KernelCharacterData kernelCharacters(const ToricMorphism& f);

ToricMorphism frobeniusMorphism(const VarietyPtr& X, const Int& p);

struct Contraction {
    ToricMorphism morphism;
    DivisorClass extremalClass;  ///< primitive generator of the nef extremal ray
    bool isIsomorphism = false;  ///< ample ray: the identity map, kept for completeness
};

/// One contraction per extremal ray of the nef cone, ordered by the
/// lexicographic extremal-ray representative. Ample rays yield the identity
/// morphism flagged isIsomorphism.
std::vector<Contraction> nefRayContractions(const VarietyPtr& X);

struct WallRelation {
    std::vector<int> wall;   ///< shared facet (ray indices)
    IntVec coefficients;     ///< relation sum b_rho u_rho = 0 over all rays, off-wall entries positive
};

/// One relation per wall of a complete simplicial fan; the induced functional
/// on divisor classes is the intersection with the wall curve.
std::vector<WallRelation> wallRelations(const ToricVariety& X);

/// Degree of D against a wall curve: sum b_rho a_rho.
Int wallDegree(const WallRelation& w, const TDivisor& D);

}  // namespace toric
