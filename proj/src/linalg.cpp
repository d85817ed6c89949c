#include "toric/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

IntMat::IntMat(int rows, int cols, std::vector<Int> entries) : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != size_t(rows) * cols) throw Error("entry count does not match matrix shape");
}

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::fromRows(const std::vector<IntVec>& rows) {
    int r = int(rows.size());
    int c = r == 0 ? 0 : int(rows[0].size());
    IntMat m(r, c);
    for (int i = 0; i < r; ++i) {
        if (int(rows[i].size()) != c) throw Error("ragged row list");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntVec IntMat::row(int i) const {
    IntVec v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

IntVec IntMat::col(int j) const {
    IntVec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

IntMat IntMat::transpose() const {
    IntMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool IntMat::isZero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

void IntMat::swapRows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMat::addRowMultiple(int i, int j, const Int& c) {
    if (c == 0) return;
    for (int k = 0; k < cols_; ++k) at(i, k) += c * at(j, k);
}

void IntMat::negateRow(int i) {
    for (int k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

void IntMat::swapCols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMat::addColMultiple(int i, int j, const Int& c) {
    if (c == 0) return;
    for (int r = 0; r < rows_; ++r) at(r, i) += c * at(r, j);
}

void IntMat::negateCol(int i) {
    for (int r = 0; r < rows_; ++r) at(r, i) = -at(r, i);
}

IntMat operator*(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.rows()) throw Error("matrix product shape mismatch");
    IntMat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

IntVec operator*(const IntMat& a, const IntVec& v) {
    if (a.cols() != int(v.size())) throw Error("matrix-vector shape mismatch");
    IntVec r(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r[i] += a.at(i, j) * v[j];
    return r;
}

RatMat RatMat::identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMat RatMat::fromInt(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j);
    return r;
}

bool RatMat::isZero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rat& x) { return x == 0; });
}

RatMat operator*(const RatMat& a, const RatMat& b) {
    if (a.cols() != b.rows()) throw Error("matrix product shape mismatch");
    RatMat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Rat& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

RatVec operator*(const RatMat& a, const RatVec& v) {
    if (a.cols() != int(v.size())) throw Error("matrix-vector shape mismatch");
    RatVec r(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r[i] += a.at(i, j) * v[j];
    return r;
}

namespace {

// Index of the row in [from, rows) with the smallest nonzero |entry| in
// column c, or -1. Ties go to the earliest row, keeping elimination
// deterministic.
int minAbsRow(const IntMat& m, int from, int c) {
    int best = -1;
    Int bestAbs;
    for (int i = from; i < m.rows(); ++i) {
        if (m.at(i, c) == 0) continue;
        Int a = abs(m.at(i, c));
        if (best < 0 || a < bestAbs) {
            best = i;
            bestAbs = a;
        }
    }
    return best;
}

}  // namespace

HermiteResult hermiteNormalForm(const IntMat& A) {
    HermiteResult res{A, IntMat::identity(A.rows()), 0};
    IntMat& H = res.H;
    IntMat& U = res.U;
    int r = 0;
    for (int c = 0; c < A.cols() && r < A.rows(); ++c) {
        // Euclidean elimination in column c among rows >= r.
        while (true) {
            int p = minAbsRow(H, r, c);
            if (p < 0) break;
            bool others = false;
            for (int i = r; i < H.rows(); ++i) {
                if (i == p || H.at(i, c) == 0) continue;
                others = true;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), H.at(i, c).get_mpz_t(), H.at(p, c).get_mpz_t());
                H.addRowMultiple(i, p, -q);
                U.addRowMultiple(i, p, -q);
            }
            if (!others) {
                H.swapRows(r, p);
                U.swapRows(r, p);
                break;
            }
        }
        if (H.at(r, c) == 0) continue;
        if (H.at(r, c) < 0) {
            H.negateRow(r);
            U.negateRow(r);
        }
        for (int i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), H.at(i, c).get_mpz_t(), H.at(r, c).get_mpz_t());
            H.addRowMultiple(i, r, -q);
            U.addRowMultiple(i, r, -q);
        }
        ++r;
    }
    res.rank = r;
    return res;
}

SmithResult smithNormalForm(const IntMat& A) {
    SmithResult res{A, IntMat::identity(A.rows()), IntMat::identity(A.cols()), 0};
    IntMat& S = res.S;
    IntMat& P = res.P;
    IntMat& Q = res.Q;
    int n = std::min(A.rows(), A.cols());
    for (int t = 0; t < n; ++t) {
        // Move a nonzero into (t,t).
        int pi = -1, pj = -1;
        Int bestAbs;
        for (int i = t; i < S.rows(); ++i)
            for (int j = t; j < S.cols(); ++j) {
                if (S.at(i, j) == 0) continue;
                Int a = abs(S.at(i, j));
                if (pi < 0 || a < bestAbs) {
                    pi = i;
                    pj = j;
                    bestAbs = a;
                }
            }
        if (pi < 0) break;
        S.swapRows(t, pi);
        P.swapRows(t, pi);
        S.swapCols(t, pj);
        Q.swapCols(t, pj);
        while (true) {
            bool clean = true;
            for (int i = t + 1; i < S.rows(); ++i) {
                if (S.at(i, t) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), S.at(i, t).get_mpz_t(), S.at(t, t).get_mpz_t());
                S.addRowMultiple(i, t, -q);
                P.addRowMultiple(i, t, -q);
                if (S.at(i, t) != 0) {
                    S.swapRows(t, i);
                    P.swapRows(t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < S.cols(); ++j) {
                if (S.at(t, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), S.at(t, j).get_mpz_t(), S.at(t, t).get_mpz_t());
                S.addColMultiple(j, t, -q);
                Q.addColMultiple(j, t, -q);
                if (S.at(t, j) != 0) {
                    S.swapCols(t, j);
                    Q.swapCols(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Divisibility: every remaining entry must be a multiple of S(t,t).
            bool fixed = false;
            for (int i = t + 1; i < S.rows() && !fixed; ++i)
                for (int j = t + 1; j < S.cols() && !fixed; ++j) {
                    if (S.at(i, j) % S.at(t, t) != 0) {
                        S.addRowMultiple(t, i, 1);
                        P.addRowMultiple(t, i, 1);
                        fixed = true;
                    }
                }
            if (!fixed) break;
        }
        if (S.at(t, t) < 0) {
            S.negateRow(t);
            P.negateRow(t);
        }
        ++res.rank;
    }
    return res;
}

std::vector<int> reducedRowEchelon(RatMat& A) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < A.cols() && r < A.rows(); ++c) {
        int p = -1;
        for (int i = r; i < A.rows(); ++i)
            if (A.at(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < A.cols(); ++j) std::swap(A.at(p, j), A.at(r, j));
        Rat inv = 1 / A.at(r, c);
        for (int j = 0; j < A.cols(); ++j) A.at(r, j) *= inv;
        for (int i = 0; i < A.rows(); ++i) {
            if (i == r || A.at(i, c) == 0) continue;
            Rat f = A.at(i, c);
            for (int j = 0; j < A.cols(); ++j) A.at(i, j) -= f * A.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

RatMat rationalKernelBasis(const RatMat& A) {
    RatMat R = A;
    std::vector<int> pivots = reducedRowEchelon(R);
    std::vector<bool> isPivot(A.cols(), false);
    for (int c : pivots) isPivot[c] = true;
    std::vector<int> freeCols;
    for (int c = 0; c < A.cols(); ++c)
        if (!isPivot[c]) freeCols.push_back(c);
    RatMat K(A.cols(), int(freeCols.size()));
    for (size_t k = 0; k < freeCols.size(); ++k) {
        int fc = freeCols[k];
        K.at(fc, int(k)) = 1;
        for (size_t r = 0; r < pivots.size(); ++r) K.at(pivots[r], int(k)) = -R.at(int(r), fc);
    }
    return K;
}

IntMat integerKernelBasis(const IntMat& A) {
    SmithResult s = smithNormalForm(A);
    int k = A.cols() - s.rank;
    IntMat K(A.cols(), k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < A.cols(); ++i) K.at(i, j) = s.Q.at(i, s.rank + j);
    return K;
}

IntVec primitiveVector(const IntVec& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    if (g == 0) throw Error("zero vector has no primitive representative");
    IntVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

int rank(const RatMat& A) {
    RatMat R = A;
    return int(reducedRowEchelon(R).size());
}

int rank(const IntMat& A) { return rank(RatMat::fromInt(A)); }

Int determinant(const IntMat& A) {
    if (A.rows() != A.cols()) throw Error("determinant of non-square matrix");
    int n = A.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    IntMat M = A;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (M.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (M.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            M.swapRows(k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int num = M.at(i, j) * M.at(k, k) - M.at(i, k) * M.at(k, j);
                M.at(i, j) = num / prev;
            }
        prev = M.at(k, k);
    }
    return sign > 0 ? M.at(n - 1, n - 1) : -M.at(n - 1, n - 1);
}

IntMat inverseUnimodular(const IntMat& U) {
    if (U.rows() != U.cols()) throw Error("inverse of non-square matrix");
    int n = U.rows();
    RatMat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = U.at(i, j);
        aug.at(i, n + i) = 1;
    }
    reducedRowEchelon(aug);
    IntMat inv(n, n);
    for (int i = 0; i < n; ++i) {
        if (aug.at(i, i) != 1) throw Error("matrix is not unimodular");
        for (int j = 0; j < n; ++j) {
            Rat e = aug.at(i, n + j);
            if (e.get_den() != 1) throw Error("matrix is not unimodular");
            inv.at(i, j) = e.get_num();
        }
    }
    return inv;
}

std::optional<RatVec> solveAny(const RatMat& A, const RatVec& b) {
    if (A.rows() != int(b.size())) throw Error("solve shape mismatch");
    RatMat aug(A.rows(), A.cols() + 1);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols()) = b[i];
    }
    std::vector<int> pivots = reducedRowEchelon(aug);
    for (size_t r = 0; r < pivots.size(); ++r)
        if (pivots[r] == A.cols()) return std::nullopt;  // inconsistent
    RatVec x(A.cols());
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(int(r), A.cols());
    return x;
}

std::optional<RatVec> solveUnique(const RatMat& A, const RatVec& b) {
    auto x = solveAny(A, b);
    if (!x) return std::nullopt;
    if (rank(A) != A.cols()) throw Error("solution is not unique");
    return x;
}

Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw Error("dot shape mismatch");
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw Error("dot shape mismatch");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RatVec toRat(const IntVec& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[i];
    return r;
}

bool isIntegral(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.get_den() == 1; });
}

IntVec toIntExact(const RatVec& v) {
    IntVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].get_den() != 1) throw Error("vector is not integral");
        r[i] = v[i].get_num();
    }
    return r;
}

IntVec add(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw Error("vector add shape mismatch");
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IntVec sub(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw Error("vector sub shape mismatch");
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IntVec scale(const Int& c, const IntVec& v) {
    IntVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

bool isZeroVec(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

std::string describe(const IntVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

std::string describe(const IntMat& m) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m.at(i, j);
    }
    os << "]";
    return os.str();
}

}  // namespace toric
