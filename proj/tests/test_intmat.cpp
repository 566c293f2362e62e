#include <doctest.h>
#include "modgrade/intmat.hpp"
#include "modgrade/modp.hpp"

using namespace modgrade;

static IntMat from_rows(const std::vector<std::vector<long>>& v) {
    IntMat M((long)v.size(), v.empty() ? 0 : (long)v[0].size());
    for (long i = 0; i < M.rows; ++i)
        for (long j = 0; j < M.cols; ++j) M.at(i, j) = v[i][j];
    return M;
}

static mpq_class det(const IntMat& A) {
    REQUIRE(A.rows == A.cols);
    QMat W(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) W.a[i] = A.a[i];
    mpq_class d = 1;
    for (long j = 0; j < W.cols; ++j) {
        long piv = -1;
        for (long i = j; i < W.rows; ++i)
            if (W.at(i, j) != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != j) {
            for (long c = 0; c < W.cols; ++c) std::swap(W.at(j, c), W.at(piv, c));
            d = -d;
        }
        d *= W.at(j, j);
        mpq_class inv = 1 / W.at(j, j);
        for (long i = j + 1; i < W.rows; ++i) {
            mpq_class f = W.at(i, j) * inv;
            if (f == 0) continue;
            for (long c = j; c < W.cols; ++c) W.at(i, c) -= f * W.at(j, c);
        }
    }
    return d;
}

TEST_CASE("hermite form: frozen small example") {
    IntMat A = from_rows({{4, 6}, {2, 2}});
    HNFResult h = hnf(A);
    CHECK(h.rank == 2);
    CHECK(h.H == from_rows({{2, 0}, {0, 2}}));
}

TEST_CASE("hermite form invariants on a rectangular matrix") {
    IntMat A = from_rows({{2, 3, 6, 2}, {5, 6, 1, 6}, {8, 3, 1, 1}, {10, 12, 2, 12}});
    HNFResult h = hnf(A);
    CHECK(h.rank == 3);
    CHECK(det(h.U) * det(h.U) == 1);
    // U*A top rows reproduce H, bottom rows vanish
    IntMat UA = mat_mul(h.U, A);
    for (long i = 0; i < h.rank; ++i)
        for (long j = 0; j < A.cols; ++j) CHECK(UA.at(i, j) == h.H.at(i, j));
    for (long i = h.rank; i < A.rows; ++i)
        for (long j = 0; j < A.cols; ++j) CHECK(UA.at(i, j) == 0);
    // canonical shape
    for (long i = 0; i < h.rank; ++i) {
        long p = h.pivot_cols[i];
        CHECK(h.H.at(i, p) > 0);
        for (long r = 0; r < i; ++r) {
            CHECK(h.H.at(r, p) >= 0);
            CHECK(h.H.at(r, p) < h.H.at(i, p));
        }
        for (long j = 0; j < p; ++j) CHECK(h.H.at(i, j) == 0);
    }
    CHECK(h.kernel.rows == 1);
    IntMat z = mat_mul(h.kernel, A);
    for (long j = 0; j < z.cols; ++j) CHECK(z.at(0, j) == 0);
}

TEST_CASE("smith form: classical example and transform checks") {
    IntMat A = from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    SNFResult s = snf(A);
    CHECK(s.rank == 3);
    CHECK(s.D.at(0, 0) == 2);
    CHECK(s.D.at(1, 1) == 6);
    CHECK(s.D.at(2, 2) == 12);
    CHECK(det(s.U) * det(s.U) == 1);
    CHECK(det(s.V) * det(s.V) == 1);
    IntMat UAV = mat_mul(mat_mul(s.U, A), s.V);
    CHECK(UAV == s.D);
}

TEST_CASE("smith form divisibility chain on a random-ish matrix") {
    IntMat A = from_rows({{6, 10, 15, 4}, {10, 4, 6, 8}, {0, 30, 12, 2}});
    SNFResult s = snf(A);
    IntMat UAV = mat_mul(mat_mul(s.U, A), s.V);
    CHECK(UAV == s.D);
    for (long i = 0; i + 1 < s.rank; ++i) {
        CHECK(s.D.at(i, i) > 0);
        CHECK(s.D.at(i + 1, i + 1) % s.D.at(i, i) == 0);
    }
    CHECK(det(s.U) * det(s.U) == 1);
    CHECK(det(s.V) * det(s.V) == 1);
}

TEST_CASE("right kernel and saturation") {
    IntMat A = from_rows({{1, 2, 3}});
    IntMat K = right_kernel(A);
    CHECK(K.rows == 2);
    IntMat z = mat_mul(A, K.transpose());
    for (long j = 0; j < z.cols; ++j) CHECK(z.at(0, j) == 0);
    // kernels are saturated: saturating changes nothing
    CHECK(saturate_rows(K) == hnf(K).H);

    IntMat B = from_rows({{2, 0, 4}, {0, 6, 6}});
    IntMat S = saturate_rows(B);
    CHECK(S == from_rows({{1, 0, 2}, {0, 1, 1}}));

    IntMat C = from_rows({{3, 0}, {0, 7}});
    CHECK(is_identity(saturate_rows(C)));
}

TEST_CASE("rational solve against a row basis") {
    QMat B(2, 3);
    B.at(0, 0) = 1; B.at(0, 1) = 2; B.at(0, 2) = 3;
    B.at(1, 0) = 0; B.at(1, 1) = 1; B.at(1, 2) = mpq_class(1, 2);
    std::vector<mpq_class> t = {2, 7, mpq_class(15, 2)};
    std::vector<mpq_class> x;
    REQUIRE(solve_left(B, t, x));
    CHECK(x[0] == 2);
    CHECK(x[1] == 3);
    std::vector<mpq_class> bad = {0, 0, 1};
    CHECK_FALSE(solve_left(B, bad, x));
}

TEST_CASE("incremental echelon structures agree over Q and F_q") {
    QEchelon E(4);
    CHECK(E.insert({1, 2, 3, 4}));
    CHECK(E.insert({0, 1, 1, 1}));
    CHECK_FALSE(E.insert({1, 3, 4, 5}));
    CHECK(E.rank() == 2);

    Fq F{kCertPrimes[0]};
    FqEchelon Ep(F, 4);
    CHECK(Ep.insert({1, 2, 3, 4}));
    CHECK(Ep.insert({0, 1, 1, 1}));
    CHECK_FALSE(Ep.insert({1, 3, 4, 5}));
    CHECK(Ep.rank() == 2);
    CHECK(F.mul(F.inv(12345), 12345) == 1);
    CHECK(F.from_mpq(mpq_class(-1, 2)) == F.sub(0, F.inv(2)));
}
