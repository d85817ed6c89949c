#pragma once

#include "toric/cox.hpp"

namespace toric {

/// Splitting of the pushforward of a line bundle along the p-th toric
/// Frobenius: one summand divisor per residue character in {0..p-1}^n,
/// ordered lexicographically.
struct FrobeniusSummands {
    Int p;
    IntVec divisor;                 ///< source divisor coefficients
    std::vector<IntVec> residues;   ///< lex-ordered residue representatives
    std::vector<IntVec> summands;   ///< divisor coefficients per residue
};

FrobeniusSummands frobeniusSummands(const VarietyPtr& X, const Int& p, const TDivisor& D);

/// Pushforward of a map of line bundles; block (u -> u') collects the
/// monomials connecting the residues. Wrapped as a map of the pushed free
/// modules with residue metadata.
struct SummandMap {
    Int p;
    ModuleMap map;
    std::vector<IntVec> targetResidues;  ///< residue per pushed target generator
    std::vector<IntVec> sourceResidues;
};

SummandMap frobeniusPushMap(const VarietyPtr& X, const Int& p, const IntVec& sourceDivisor,
                            const IntVec& targetDivisor, const CoxPolynomial& entry);

/// Pushforward of a whole map of free modules (the blockwise assembly used
/// for complexes and presentations).
SummandMap frobeniusPushMatrix(const VarietyPtr& X, const Int& p, const ModuleMap& f);

/// Pushforward of a complex (consecutive maps compose to zero); the output
/// differentials again compose to zero.
std::vector<SummandMap> frobeniusPushComplex(const VarietyPtr& X, const Int& p, const std::vector<ModuleMap>& complex);

/// Pushforward of a presented module: the cokernel presentation of the
/// pushed presentation matrix.
PresentedModule frobeniusPushModule(const VarietyPtr& X, const Int& p, const PresentedModule& M);

}  // namespace toric
