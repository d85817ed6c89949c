#pragma once

#include "toric/fan.hpp"

#include <map>

namespace toric {

/// Monomial in the Cox ring: one exponent per ray, with an exact rational
/// coefficient.
struct CoxMonomial {
    IntVec exponents;
    Rat coefficient;
};

inline bool operator==(const CoxMonomial& a, const CoxMonomial& b) {
    return a.exponents == b.exponents && a.coefficient == b.coefficient;
}
inline bool operator<(const CoxMonomial& a, const CoxMonomial& b) {
    if (a.exponents != b.exponents) return a.exponents < b.exponents;
    return a.coefficient < b.coefficient;
}

/// Normalized polynomial: monomials sorted by exponent vector, combined, no
/// zero coefficients.
using CoxPolynomial = std::vector<CoxMonomial>;

CoxPolynomial normalize(CoxPolynomial p);
CoxPolynomial monomial(IntVec exponents, Rat coefficient = 1);
CoxPolynomial addPoly(const CoxPolynomial& a, const CoxPolynomial& b);
CoxPolynomial mulPoly(const CoxPolynomial& a, const CoxPolynomial& b);
CoxPolynomial negPoly(const CoxPolynomial& a);
bool isZeroPoly(const CoxPolynomial& p);

DivisorClass monomialClass(const VarietyPtr& X, const IntVec& exponents);
/// Class of a homogeneous polynomial; nullopt for 0, error if mixed degrees.
std::optional<DivisorClass> polynomialClass(const VarietyPtr& X, const CoxPolynomial& p);

/// Free multigraded module, one generator per class; a generator of degree t
/// is the twist by the attached divisor (defaulting to minus the canonical
/// representative of t).
struct FreeMultigradedModule {
    VarietyPtr variety;
    std::vector<DivisorClass> genClasses;
    std::vector<IntVec> genDivisors;  ///< divisor coefficients of each generator's line bundle

    int rank() const { return int(genClasses.size()); }
};

FreeMultigradedModule makeFreeModule(const VarietyPtr& X, std::vector<DivisorClass> classes);
FreeMultigradedModule makeFreeModuleWithDivisors(const VarietyPtr& X, std::vector<IntVec> divisors);

/// Map of free multigraded modules: entries[i][j] sends source generator j
/// into target generator i; each nonzero entry must be homogeneous of class
/// sourceClass(j) - targetClass(i). Doubling as a module presentation
/// (cokernel of the map).
struct ModuleMap {
    FreeMultigradedModule target;
    FreeMultigradedModule source;
    std::vector<std::vector<CoxPolynomial>> entries;
};

using PresentedModule = ModuleMap;

void checkHomogeneous(const ModuleMap& f);

ModuleMap composeMaps(const ModuleMap& g, const ModuleMap& f);
bool isZeroMap(const ModuleMap& f);

struct GradedBasisElement {
    int generator;
    IntVec character;   ///< lattice point labeling the monomial
    IntVec exponents;   ///< Cox exponents of the basis monomial
};

/// Basis of the degree-d piece of a free module: all (generator, monomial)
/// pairs of matching class. Enumerated through divisor polytopes.
std::vector<GradedBasisElement> gradedPieceBasis(const FreeMultigradedModule& M, const DivisorClass& d);

/// The induced linear map between graded pieces at degree d.
RatMat gradedPieceMatrix(const ModuleMap& f, const DivisorClass& d);

/// dim coker(gradedPieceMatrix at d) for each class in the box.
std::map<DivisorClass, int> hilbertFunction(const PresentedModule& M, const Box& classBox);

int hilbertValue(const PresentedModule& M, const DivisorClass& d);

}  // namespace toric
