#include "toric/hdi.hpp"

#include "toric/parallel.hpp"

#include <algorithm>
#include <set>

namespace toric {

namespace {

struct ChartContext {
    std::vector<Subfan> charts;             ///< preimage of each target maximal cone
    std::vector<std::pair<int, int>> pairs;
    std::vector<Subfan> overlaps;           ///< preimage of each pairwise common face
};

ChartContext makeChartContext(const ToricMorphism& f) {
    ChartContext ctx;
    const auto& cones = f.target->fan.maxCones;
    for (const auto& c : cones) ctx.charts.push_back(preimageSubfan(f, c));
    for (size_t p = 0; p < cones.size(); ++p)
        for (size_t q = p + 1; q < cones.size(); ++q) {
            std::vector<int> common;
            std::set_intersection(cones[p].begin(), cones[p].end(), cones[q].begin(), cones[q].end(),
                                  std::back_inserter(common));
            ctx.pairs.emplace_back(int(p), int(q));
            ctx.overlaps.push_back(preimageSubfan(f, common));
        }
    return ctx;
}

/// Graded piece of H0(Y, R^i f_* O(D)) at one character: the kernel of the
/// chart-to-overlap comparison map.
int cechKernelDim(const ChartContext& ctx, const TDivisor& D, int i, const IntVec& m) {
    const int k = i - 1;
    std::vector<SupportComplex> V(ctx.charts.size());
    std::vector<int> dims(ctx.charts.size());
    int total = 0;
    for (size_t p = 0; p < ctx.charts.size(); ++p) {
        V[p] = supportComplex(ctx.charts[p], D, m);
        dims[p] = reducedCohomologyDim(V[p], k);
        total += dims[p];
    }
    if (total == 0) return 0;
    std::vector<CohomologyBasis> bases(ctx.charts.size());
    for (size_t p = 0; p < ctx.charts.size(); ++p)
        if (dims[p] > 0) bases[p] = reducedCohomology(V[p], k);

    std::vector<int> colOffset(ctx.charts.size(), 0);
    int cols = 0;
    for (size_t p = 0; p < ctx.charts.size(); ++p) {
        colOffset[p] = cols;
        cols += dims[p];
    }
    // Rows: overlap blocks with a nonzero target.
    std::vector<RatMat> blocksP(ctx.pairs.size()), blocksQ(ctx.pairs.size());
    std::vector<int> rowDim(ctx.pairs.size(), 0);
    int rows = 0;
    for (size_t t = 0; t < ctx.pairs.size(); ++t) {
        auto [p, q] = ctx.pairs[t];
        if (dims[p] == 0 && dims[q] == 0) continue;
        SupportComplex W = supportComplex(ctx.overlaps[t], D, m);
        CohomologyBasis wb = reducedCohomology(W, k);
        if (wb.dim == 0) continue;
        rowDim[t] = wb.dim;
        if (dims[p] > 0) blocksP[t] = inducedRestriction(V[p], W, k, bases[p], wb);
        if (dims[q] > 0) blocksQ[t] = inducedRestriction(V[q], W, k, bases[q], wb);
        rows += wb.dim;
    }
    if (rows == 0) return total;
    RatMat M(rows, cols);
    int rowOff = 0;
    for (size_t t = 0; t < ctx.pairs.size(); ++t) {
        if (rowDim[t] == 0) continue;
        auto [p, q] = ctx.pairs[t];
        if (dims[p] > 0)
            for (int r = 0; r < rowDim[t]; ++r)
                for (int c = 0; c < dims[p]; ++c) M.at(rowOff + r, colOffset[p] + c) = blocksP[t].at(r, c);
        if (dims[q] > 0)
            for (int r = 0; r < rowDim[t]; ++r)
                for (int c = 0; c < dims[q]; ++c) M.at(rowOff + r, colOffset[q] + c) = -blocksQ[t].at(r, c);
        rowOff += rowDim[t];
    }
    return cols - rank(M);
}

long long powll(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

IntVec interiorDualVector(const ToricVariety& Y, const std::vector<int>& cone, int flavor) {
    IntMat B(int(cone.size()), Y.dim());
    for (size_t i = 0; i < cone.size(); ++i)
        for (int j = 0; j < Y.dim(); ++j) B.at(int(i), j) = Y.fan.rays[cone[i]][j];
    IntMat Binv = inverseUnimodular(B);
    IntVec weights(cone.size());
    for (size_t i = 0; i < cone.size(); ++i) weights[i] = (flavor == 0) ? 1 : Int(i + 1);
    return Binv * weights;
}

IntVec pullbackCharacter(const ToricMorphism& f, const IntVec& mY) {
    return f.latticeMap.transpose() * mY;
}

}  // namespace

int chartSectionsDim(const ToricMorphism& f, const TDivisor& D, int i, int targetConeIndex, const IntVec& m) {
    if (!isFibration(f)) throw Error("not a fibration");
    if (D.variety != f.source) throw Error("divisor does not live on the source");
    if (targetConeIndex < 0 || targetConeIndex >= int(f.target->fan.maxCones.size()))
        throw Error("target cone index out of range");
    Subfan sub = preimageSubfan(f, f.target->fan.maxCones[targetConeIndex]);
    return reducedCohomologyDim(supportComplex(sub, D, m), i - 1);
}

int hdiRank(const ToricMorphism& f, int i, const TDivisor& D, const HdiOptions& opts) {
    if (!isFibration(f)) throw Error("not a fibration");
    KernelCharacterData kc = kernelCharacters(f);
    FiberFan fib = fiberFan(f);
    if (!isComplete(*fib.fiber)) throw Error("fiber fan is not complete");

    const auto& cone0 = f.target->fan.maxCones[0];
    if (int(cone0.size()) != f.target->dim()) throw Error("target maximal cone is not full-dimensional");
    IntVec m0 = interiorDualVector(*f.target, cone0, 0);
    IntVec m1 = interiorDualVector(*f.target, cone0, 1);
    Subfan chart0 = preimageSubfan(f, cone0);

    // Candidate kernel characters: the character box of the generic fiber.
    std::vector<IntVec> fiberChars;
    if (fib.fiber->dim() == 0) {
        fiberChars.push_back({});
    } else {
        IntVec aFib(fib.fiber->numRays());
        for (size_t j = 0; j < fib.verticalRays.size(); ++j) aFib[j] = D.coeffs[fib.verticalRays[j]];
        for (const IntVec& u : boxPoints(characterBox(*fib.fiber, aFib, opts.boxMargin))) fiberChars.push_back(u);
    }
    // Translate fiber characters into the kernel-character coordinates.
    IntMat G = kc.section.transpose() * fib.kernelBasis;
    IntMat GTinv = (kc.rank > 0) ? inverseUnimodular(G.transpose()) : IntMat(0, 0);

    // The chart complex only shrinks along interior directions, so it is
    // stable once every horizontal ray of the chart has dropped out; probing
    // from that threshold makes the two-consecutive-values test sound.
    auto stabilize = [&](const IntVec& srcChar, const IntVec& dir) {
        long from = 1;
        for (int rho : chart0.rays) {
            IntVec img = f.apply(f.source->fan.rays[rho]);
            if (isZeroVec(img)) continue;
            Int pace = dot(dir, img);
            if (pace <= 0) throw Error("probe direction is not interior to the dual cone");
            Int need = -D.coeffs[rho] - dot(srcChar, f.source->fan.rays[rho]);
            Int t;
            mpz_cdiv_q(t.get_mpz_t(), need.get_mpz_t(), pace.get_mpz_t());
            if (t.fits_slong_p()) from = std::max(from, t.get_si());
        }
        if (from + 1 > opts.stabilizationCap) throw Error("stabilization cap exceeded");
        int prev = -1;
        for (long t = from; t <= opts.stabilizationCap; ++t) {
            IntVec m = add(srcChar, pullbackCharacter(f, scale(Int(t), dir)));
            int v = reducedCohomologyDim(supportComplex(chart0, D, m), i - 1);
            if (v == prev) return v;
            prev = v;
        }
        throw Error("stabilization cap exceeded");
    };

    int rank = 0;
    for (const IntVec& uf : fiberChars) {
        IntVec u = (kc.rank > 0) ? GTinv * uf : IntVec{};
        IntVec srcChar = kc.section * u;
        int r0 = stabilize(srcChar, m0);
        int r1 = stabilize(srcChar, m1);
        if (r0 != r1) throw Error("stabilization mismatch between probe directions");
        rank += r0;
    }
    return rank;
}

TwistTable hdiTwistTable(const ToricMorphism& f, int i, const TDivisor& D, const Box& classBox,
                         const HdiOptions& opts) {
    if (!isFibration(f)) throw Error("not a fibration");
    if (!isComplete(*f.target) || !isSmooth(*f.target)) throw Error("target must be smooth and complete");
    if (classBox.count() > powll(opts.twistBoxCapBase, f.target->clRank)) throw Error("twist box exceeds limit");

    ChartContext ctx = makeChartContext(f);
    KernelCharacterData kc = kernelCharacters(f);

    TwistTable table;
    table.degree = i;
    for (const IntVec& d : boxPoints(classBox)) {
        TDivisor E = representativeDivisor(f.target, d);
        TDivisor Dp = addDivisors(D, pullbackDivisor(f, E));
        std::vector<IntVec> chars = boxPoints(characterBox(*f.source, Dp.coeffs, opts.boxMargin));
        std::vector<int> dims(chars.size());
        parallelFor(int(chars.size()), opts.threads,
                    [&](int idx) { dims[idx] = cechKernelDim(ctx, Dp, i, chars[idx]); });
        int total = 0;
        std::map<IntVec, int> byU;
        for (size_t idx = 0; idx < chars.size(); ++idx) {
            if (dims[idx] == 0) continue;
            total += dims[idx];
            byU[kc.quotient * chars[idx]] += dims[idx];
        }
        table.h0[d] = total;
        table.byKernelChar[d] = std::move(byU);
    }
    return table;
}

EigencharacterTable computeEigencharacters(const ToricMorphism& f, int i, const TDivisor& D,
                                           const HdiOptions& opts) {
    if (!isFibration(f)) throw Error("not a fibration");
    if (i > f.source->dim()) return EigencharacterTable{i, {}};
    KernelCharacterData kc = kernelCharacters(f);
    FiberFan fib = fiberFan(f);
    if (!isComplete(*fib.fiber)) throw Error("fiber fan is not complete");

    IntMat G = kc.section.transpose() * fib.kernelBasis;
    IntMat Gt = G.transpose();
    IntMat GTinv = (kc.rank > 0) ? inverseUnimodular(Gt) : IntMat(0, 0);

    IntVec aFib(fib.fiber->numRays());
    for (size_t j = 0; j < fib.verticalRays.size(); ++j) aFib[j] = D.coeffs[fib.verticalRays[j]];
    Subfan fibFull = fullSubfan(fib.fiber);
    TDivisor fibDiv(fib.fiber, aFib);

    auto genericRank = [&](const IntVec& u) {
        IntVec uf = (kc.rank > 0) ? Gt * u : IntVec{};
        return reducedCohomologyDim(supportComplex(fibFull, fibDiv, uf), i - 1);
    };

    std::set<IntVec> keys;
    // Rank-supported keys from the generic fiber.
    if (fib.fiber->dim() == 0) {
        if (genericRank(IntVec{}) > 0) keys.insert(IntVec{});
    } else {
        for (const IntVec& uf : boxPoints(characterBox(*fib.fiber, aFib, opts.boxMargin))) {
            IntVec u = GTinv * uf;
            if (genericRank(u) > 0) keys.insert(u);
        }
    }
    // Twisted-section witnesses over a probe box of target classes.
    Box probe;
    probe.lo.assign(f.target->clRank, Int(-opts.eigenProbeRadius));
    probe.hi.assign(f.target->clRank, Int(opts.eigenProbeRadius));
    HdiOptions probeOpts = opts;
    probeOpts.twistBoxCapBase = std::max<long long>(opts.twistBoxCapBase, 2 * opts.eigenProbeRadius + 2);
    TwistTable tt = hdiTwistTable(f, i, D, probe, probeOpts);
    for (const auto& [d, byU] : tt.byKernelChar)
        for (const auto& [u, cnt] : byU)
            if (cnt > 0) keys.insert(u);

    EigencharacterTable out;
    out.degree = i;
    for (const IntVec& u : keys) {
        EigencharacterEntry e;
        e.kernelChar = u;
        e.sourceChar = kc.section * u;
        e.genericRank = genericRank(u);
        for (const auto& cone : f.target->fan.maxCones) {
            Subfan sub = preimageSubfan(f, cone);
            std::map<int, Int> div;
            for (int rho : sub.rays) div[rho] = D.coeffs[rho] + dot(e.sourceChar, f.source->fan.rays[rho]);
            e.chartDivisors.push_back(std::move(div));
        }
        out.entries.push_back(std::move(e));
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const EigencharacterEntry& a, const EigencharacterEntry& b) { return a.kernelChar < b.kernelChar; });
    return out;
}

SplittingType splittingTypeOverP1(const ToricMorphism& f, int i, const TDivisor& D, const HdiOptions& opts) {
    if (f.target->dim() != 1 || f.target->numRays() != 2)
        throw Error("splitting requires a projective line target");
    int r = hdiRank(f, i, D, opts);
    int L = std::max(4, r + 4);
    while (true) {
        if (L > opts.splittingRangeCap) throw Error("not a sum of line bundles plus finite torsion");
        Box box;
        box.lo = {Int(-L)};
        box.hi = {Int(L)};
        HdiOptions wide = opts;
        wide.twistBoxCapBase = std::max<long long>(opts.twistBoxCapBase, 2LL * L + 2);
        TwistTable tt = hdiTwistTable(f, i, D, box, wide);
        auto h = [&](int d) { return Int(tt.h0.at(IntVec{Int(d)})); };

        bool ok = h(-L) == h(-L + 1);
        Int t = h(-L);
        std::vector<Int> summands;
        Int prevDelta = 0;
        for (int d = -L + 1; d <= L && ok; ++d) {
            Int delta = h(d) - h(d - 1);
            if (delta < prevDelta) ok = false;
            for (Int rep = prevDelta; rep < delta; ++rep) summands.push_back(Int(-d));
            prevDelta = delta;
        }
        ok = ok && prevDelta == r && int(summands.size()) == r;
        if (ok) {
            for (int d = -L; d <= L && ok; ++d) {
                Int expect = t;
                for (const Int& a : summands) {
                    Int c = a + d + 1;
                    if (c > 0) expect += c;
                }
                if (expect != h(d)) ok = false;
            }
        }
        if (ok) {
            std::sort(summands.rbegin(), summands.rend());
            return SplittingType{summands, t};
        }
        L *= 2;
    }
}

TorsionReport torsionProfile(const ToricMorphism& f, int i, const TDivisor& D, const DivisorClass& ampleDirection,
                             int rangeLo, int rangeHi, const HdiOptions& opts) {
    if (rangeHi - rangeLo < 3) throw Error("torsion probe range too short");
    TorsionReport report;
    report.rank = hdiRank(f, i, D, opts);
    EigencharacterTable keys = computeEigencharacters(f, i, D, opts);

    ChartContext ctx = makeChartContext(f);
    KernelCharacterData kc = kernelCharacters(f);
    std::vector<IntVec> torsionKeys;
    for (const auto& e : keys.entries)
        if (e.genericRank == 0) torsionKeys.push_back(e.kernelChar);

    for (const IntVec& u : torsionKeys) report.residualCounts[u] = {};
    for (int k = rangeLo; k <= rangeHi; ++k) {
        std::map<IntVec, Int> counts;
        if (!torsionKeys.empty()) {
            DivisorClass dk(ampleDirection.size());
            for (size_t t = 0; t < dk.size(); ++t) dk[t] = Int(k) * ampleDirection[t];
            TDivisor E = representativeDivisor(f.target, dk);
            TDivisor Dp = addDivisors(D, pullbackDivisor(f, E));
            std::vector<IntVec> chars = boxPoints(characterBox(*f.source, Dp.coeffs, opts.boxMargin));
            std::vector<int> dims(chars.size());
            parallelFor(int(chars.size()), opts.threads,
                        [&](int idx) { dims[idx] = cechKernelDim(ctx, Dp, i, chars[idx]); });
            for (size_t idx = 0; idx < chars.size(); ++idx)
                if (dims[idx] > 0) counts[kc.quotient * chars[idx]] += dims[idx];
        }
        for (const IntVec& u : torsionKeys) {
            auto it = counts.find(u);
            report.residualCounts[u].push_back(it == counts.end() ? Int(0) : it->second);
        }
    }

    int degree = -1;
    for (const auto& [u, vals] : report.residualCounts) {
        bool nonzero = std::any_of(vals.begin(), vals.end(), [](const Int& x) { return x != 0; });
        if (!nonzero) continue;
        report.hasTorsion = true;
        // Growth degree from finite differences over the tail of the probe.
        size_t window = std::min<size_t>(vals.size(), 5);
        std::vector<Int> w(vals.end() - window, vals.end());
        int g = int(window) - 1;
        std::vector<Int> cur = w;
        for (int lvl = 0; lvl < int(window); ++lvl) {
            bool allZero = std::all_of(cur.begin(), cur.end(), [](const Int& x) { return x == 0; });
            if (allZero) {
                g = lvl - 1;
                break;
            }
            std::vector<Int> nxt;
            for (size_t j = 0; j + 1 < cur.size(); ++j) nxt.push_back(cur[j + 1] - cur[j]);
            cur = std::move(nxt);
            if (cur.empty()) {
                g = lvl;
                break;
            }
        }
        degree = std::max(degree, g);
    }
    report.growthDegree = report.hasTorsion ? degree : -1;
    return report;
}

namespace {

Int twistedSections(const SplittingType& s, int twist) {
    Int total = s.torsion;
    for (const Int& a : s.summands) {
        Int c = a + twist + 1;
        if (c > 0) total += c;
    }
    return total;
}

Int firstCohomology(const SplittingType& s, int twist) {
    Int total = 0;
    for (const Int& a : s.summands) {
        Int c = -(a + twist) - 1;
        if (c > 0) total += c;
    }
    return total;
}

}  // namespace

bool lerayCheckOverP1(const ToricMorphism& f, const TDivisor& D, const HdiOptions& opts) {
    if (f.target->dim() != 1 || f.target->numRays() != 2)
        throw Error("Leray check requires a projective line target");
    const int n = f.source->dim();
    std::vector<SplittingType> split;
    for (int q = 0; q <= n; ++q) split.push_back(splittingTypeOverP1(f, q, D, opts));
    for (int k = 0; k <= n; ++k) {
        int lhs = lineBundleCohomology(*f.source, D, k, opts.boxMargin).total();
        Int rhs = 0;
        rhs += twistedSections(split[k], 0);                     // p = 0, q = k
        if (k >= 1) rhs += firstCohomology(split[k - 1], 0);     // p = 1, q = k-1
        if (rhs != lhs) return false;
    }
    return true;
}

bool relativeDualityCheckOverP1(const ToricMorphism& f, const TDivisor& D, const HdiOptions& opts) {
    if (f.target->dim() != 1 || f.target->numRays() != 2)
        throw Error("duality check requires a projective line target");
    if (f.source->dim() != 2) throw Error("duality check requires a surface source");
    SplittingType s1 = splittingTypeOverP1(f, 1, D, opts);
    TDivisor dual = subDivisors(subDivisors(canonicalDivisor(f.source), pullbackDivisor(f, canonicalDivisor(f.target))), D);
    SplittingType s0 = splittingTypeOverP1(f, 0, dual, opts);
    if (s1.torsion != 0 || s0.torsion != 0) throw Error("duality check requires locally free images");
    if (s1.summands.size() != s0.summands.size()) return false;
    std::vector<Int> neg;
    for (const Int& a : s0.summands) neg.push_back(-a);
    std::sort(neg.rbegin(), neg.rend());
    return neg == s1.summands;
}

}  // namespace toric
