#pragma once

#include "toric/cohomology.hpp"

#include <map>

namespace toric {

struct HdiOptions {
    int stabilizationCap = 20;   ///< max multiplier when probing chart stabilization
    int splittingRangeCap = 64;  ///< max half-width of the probed twist range over P1
    long long twistBoxCapBase = 11;  ///< twist boxes capped at base^rank(Cl Y) entries
    int boxMargin = 1;           ///< extra margin added to character boxes
    int eigenProbeRadius = 2;    ///< half-width of the twist probe used for key discovery
    int threads = 1;
};

/// Graded dimension of (R^i f_* O(D))(U_sigma) at a character of M_X.
int chartSectionsDim(const ToricMorphism& f, const TDivisor& D, int i, int targetConeIndex, const IntVec& m);

/// Eigencharacter data: one entry per kernel-torus character with a nonzero
/// eigensheaf in degree i (generic rank or a twisted-section witness).
struct EigencharacterEntry {
    IntVec kernelChar;     ///< coordinates in the kernel character lattice
    IntVec sourceChar;     ///< the representative s(kernelChar) in M_X
    int genericRank = 0;   ///< stabilized chart dimension (same for every chart)
    /// Per target maximal cone: the shifted divisor coefficients (by subfan
    /// ray) actually driving the chart computation for this character.
    std::vector<std::map<int, Int>> chartDivisors;
};

struct EigencharacterTable {
    int degree = 0;
    std::vector<EigencharacterEntry> entries;  ///< sorted by kernel character
};

EigencharacterTable computeEigencharacters(const ToricMorphism& f, int i, const TDivisor& D,
                                           const HdiOptions& opts = {});

/// Twist table d -> dim H0(Y, R^i f_* O(D) tensor O(d)), with a breakdown by
/// kernel character.
struct TwistTable {
    int degree = 0;
    std::map<DivisorClass, int> h0;
    std::map<DivisorClass, std::map<IntVec, int>> byKernelChar;
};

TwistTable hdiTwistTable(const ToricMorphism& f, int i, const TDivisor& D, const Box& classBox,
                         const HdiOptions& opts = {});

/// Generic-stalk rank via chart stabilization along interior directions of
/// the first maximal target cone, confirmed along a second direction.
int hdiRank(const ToricMorphism& f, int i, const TDivisor& D, const HdiOptions& opts = {});

/// Splitting data over a projective line base: R^i f_* O(D) = (+) O(a_j)
/// plus a finite-length torsion of total dimension t.
struct SplittingType {
    std::vector<Int> summands;  ///< sorted descending
    Int torsion = 0;
};

SplittingType splittingTypeOverP1(const ToricMorphism& f, int i, const TDivisor& D, const HdiOptions& opts = {});

struct TorsionReport {
    int rank = 0;
    bool hasTorsion = false;
    int growthDegree = -1;  ///< dimension of the torsion support; -1 when torsion-free
    /// Twisted section counts of the rank-zero eigensheaves along the probe.
    std::map<IntVec, std::vector<Int>> residualCounts;
};

/// Probes h0 of the rank-zero eigensheaves along multiples of an ample
/// class; the growth degree of the residual counts is the dimension of the
/// torsion support.
TorsionReport torsionProfile(const ToricMorphism& f, int i, const TDivisor& D, const DivisorClass& ampleDirection,
                             int rangeLo, int rangeHi, const HdiOptions& opts = {});

/// h^k(X, O(D)) = sum over p+q=k of h^p(P1, R^q f_* O(D)) for every k.
bool lerayCheckOverP1(const ToricMorphism& f, const TDivisor& D, const HdiOptions& opts = {});

/// Splitting of R^1 f_* O(D) is minus the splitting of f_*(O(K_X - f*K_Y - D));
/// errors when either side carries torsion.
bool relativeDualityCheckOverP1(const ToricMorphism& f, const TDivisor& D, const HdiOptions& opts = {});

}  // namespace toric
