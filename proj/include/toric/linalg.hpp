#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Dense matrix with arbitrary-precision integer entries, row-major.
class IntMat {
  public:
    IntMat() = default;
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
    IntMat(int rows, int cols, std::vector<Int> entries);

    static IntMat identity(int n);
    static IntMat zero(int rows, int cols) { return IntMat(rows, cols); }
    static IntMat fromRows(const std::vector<IntVec>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    IntVec row(int i) const;
    IntVec col(int j) const;
    IntMat transpose() const;
    bool isZero() const;
    bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    void swapRows(int i, int j);
    /// row i += c * row j
    void addRowMultiple(int i, int j, const Int& c);
    void negateRow(int i);
    void swapCols(int i, int j);
    void addColMultiple(int i, int j, const Int& c);
    void negateCol(int i);

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

IntMat operator*(const IntMat& a, const IntMat& b);
IntVec operator*(const IntMat& a, const IntVec& v);

/// Dense matrix with exact rational entries (gcd-reduced, positive denominators
/// via mpq canonicalization).
class RatMat {
  public:
    RatMat() = default;
    RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static RatMat identity(int n);
    static RatMat fromInt(const IntMat& m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
    bool isZero() const;
    bool operator==(const RatMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

RatMat operator*(const RatMat& a, const RatMat& b);
RatVec operator*(const RatMat& a, const RatVec& v);

struct HermiteResult {
    IntMat H;  ///< row-style Hermite normal form
    IntMat U;  ///< unimodular, U*A = H
    int rank = 0;
};

/// Row-style HNF: pivots positive, entries above each pivot reduced into
/// [0, pivot), zero rows at the bottom. Deterministic elimination order.
HermiteResult hermiteNormalForm(const IntMat& A);

struct SmithResult {
    IntMat S;  ///< diagonal, d1 | d2 | ...
    IntMat P;  ///< unimodular row transform
    IntMat Q;  ///< unimodular column transform, P*A*Q = S
    int rank = 0;
};

SmithResult smithNormalForm(const IntMat& A);

/// Columns form a basis of the right kernel over Q.
RatMat rationalKernelBasis(const RatMat& A);

/// Basis of the integer lattice {x : A*x = 0}, as columns. Saturated.
IntMat integerKernelBasis(const IntMat& A);

/// v / gcd(entries). Errors on the zero vector.
IntVec primitiveVector(const IntVec& v);

int rank(const RatMat& A);
int rank(const IntMat& A);

Int determinant(const IntMat& A);

/// Exact inverse of a unimodular integer matrix.
IntMat inverseUnimodular(const IntMat& U);

/// Unique rational solution of A*x = b, or nullopt if inconsistent.
/// Requires the solution, when consistent, to be unique (full column rank).
std::optional<RatVec> solveUnique(const RatMat& A, const RatVec& b);

/// General exact solve: any rational solution of A*x = b, or nullopt.
std::optional<RatVec> solveAny(const RatMat& A, const RatVec& b);

/// Reduced row echelon form (in place copy); returns pivot columns.
std::vector<int> reducedRowEchelon(RatMat& A);

Int dot(const IntVec& a, const IntVec& b);
Rat dot(const RatVec& a, const RatVec& b);
RatVec toRat(const IntVec& v);
/// Integer vector recovery; errors unless every entry is integral.
IntVec toIntExact(const RatVec& v);
bool isIntegral(const RatVec& v);

IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec scale(const Int& c, const IntVec& v);
bool isZeroVec(const IntVec& v);

std::string describe(const IntVec& v);
std::string describe(const IntMat& m);

}  // namespace toric
