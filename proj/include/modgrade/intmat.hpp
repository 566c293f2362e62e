// Dense exact matrices over Z and Q: Hermite/Smith forms, kernels, saturation.
#pragma once
#include <gmpxx.h>
#include <vector>
#include <stdexcept>

namespace modgrade {

struct IntMat {
    long rows = 0, cols = 0;
    std::vector<mpz_class> a;

    IntMat() = default;
    IntMat(long r, long c) : rows(r), cols(c), a((size_t)r * c) {}
    mpz_class& at(long i, long j) { return a[(size_t)i * cols + j]; }
    const mpz_class& at(long i, long j) const { return a[(size_t)i * cols + j]; }
    IntMat transpose() const;
    bool operator==(const IntMat&) const = default;
};

struct QMat {
    long rows = 0, cols = 0;
    std::vector<mpq_class> a;

    QMat() = default;
    QMat(long r, long c) : rows(r), cols(c), a((size_t)r * c) {}
    mpq_class& at(long i, long j) { return a[(size_t)i * cols + j]; }
    const mpq_class& at(long i, long j) const { return a[(size_t)i * cols + j]; }
};

struct HNFResult {
    IntMat H;                    // canonical row Hermite form, zero rows dropped
    IntMat U;                    // unimodular, U_full * A has H as its top rows
    std::vector<long> pivot_cols;
    long rank = 0;
    IntMat kernel;               // rows: basis of the integer left kernel of A
};

// Canonical row Hermite form: positive pivots, entries above a pivot in [0, pivot).
HNFResult hnf(const IntMat& A);

struct SNFResult {
    IntMat D;  // same shape as A, diagonal d1 | d2 | ..., nonnegative
    IntMat U;  // unimodular rows x rows
    IntMat V;  // unimodular cols x cols, U*A*V = D
    long rank = 0;
};

SNFResult snf(const IntMat& A);

IntMat mat_mul(const IntMat& A, const IntMat& B);
bool is_identity(const IntMat& A);

// Rows: basis of {x integer row : A * x^T = 0}; always a saturated lattice.
IntMat right_kernel(const IntMat& A);

// Canonical basis (HNF rows) of the saturation Q-rowspace(A) intersect Z^n.
IntMat saturate_rows(const IntMat& A);

long rank_q(const QMat& A);

// Solve x * B = t over Q; returns false if t is outside the row space.
bool solve_left(const QMat& B, const std::vector<mpq_class>& t, std::vector<mpq_class>& x);

// Incremental Gaussian elimination over Q, for greedy independent-subset selection.
class QEchelon {
public:
    explicit QEchelon(long ncols) : ncols_(ncols) {}
    // Reduces v against the rows seen so far; if a new pivot remains, absorbs it
    // and returns true, else returns false (v was dependent).
    bool insert(std::vector<mpq_class> v);
    long rank() const { return (long)rows_.size(); }
    // Reduce v in place; on return v is the residue modulo the current row space.
    void reduce(std::vector<mpq_class>& v) const;

private:
    long ncols_;
    std::vector<std::vector<mpq_class>> rows_;  // each normalized with pivot 1
    std::vector<long> pivots_;
};

}  // namespace modgrade
