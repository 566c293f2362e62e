#include "modgrade/intmat.hpp"
#include <algorithm>

namespace modgrade {

IntMat IntMat::transpose() const {
    IntMat T(cols, rows);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) T.at(j, i) = at(i, j);
    return T;
}

static void row_sub_mul(IntMat& M, long dst, long src, const mpz_class& q) {
    if (q == 0) return;
    for (long j = 0; j < M.cols; ++j) M.at(dst, j) -= q * M.at(src, j);
}

static void row_swap(IntMat& M, long i, long k) {
    if (i == k) return;
    for (long j = 0; j < M.cols; ++j) std::swap(M.at(i, j), M.at(k, j));
}

static void row_negate(IntMat& M, long i) {
    for (long j = 0; j < M.cols; ++j) M.at(i, j) = -M.at(i, j);
}

// rows (i,k) <- [[u, v], [s, t]] * rows (i,k)
static void row_transform2(IntMat& M, long i, long k, const mpz_class& u, const mpz_class& v,
                           const mpz_class& s, const mpz_class& t) {
    for (long j = 0; j < M.cols; ++j) {
        mpz_class a = M.at(i, j), b = M.at(k, j);
        M.at(i, j) = u * a + v * b;
        M.at(k, j) = s * a + t * b;
    }
}

// Incremental row-insertion Hermite reduction (Kannan-Bachem style): each new
// row is eliminated against the current pivot rows with Bezout steps, and any
// pivot row touched by a Bezout step is re-reduced against the later pivots.
// This keeps intermediate entries near the size of the final answer, where
// column-major Euclid sweeps can swell catastrophically on tall kernels.
HNFResult hnf(const IntMat& A) {
    long m = A.rows, n = A.cols;
    IntMat W(m, n);
    W.a = A.a;
    IntMat U(m, m);
    for (long i = 0; i < m; ++i) U.at(i, i) = 1;

    // pivots: ascending pivot column -> physical row index in W
    std::vector<std::pair<long, long>> pivots;
    auto lead_col = [&](long r) {
        for (long j = 0; j < n; ++j)
            if (W.at(r, j) != 0) return j;
        return n;
    };
    // reduce entries of row r lying in later pivot columns into [0, pivot)
    auto reduce_row = [&](long r, long from_col) {
        mpz_class q;
        for (const auto& [c, pr] : pivots) {
            if (c <= from_col || pr == r) continue;
            if (W.at(r, c) == 0) continue;
            mpz_fdiv_q(q.get_mpz_t(), W.at(r, c).get_mpz_t(), W.at(pr, c).get_mpz_t());
            row_sub_mul(W, r, pr, q);
            row_sub_mul(U, r, pr, q);
        }
    };

    mpz_class g, u, v, q;
    for (long k = 0; k < m; ++k) {
        std::vector<long> touched;
        for (;;) {
            long lc = lead_col(k);
            if (lc == n) break;
            auto pos = std::lower_bound(pivots.begin(), pivots.end(), std::make_pair(lc, -1L));
            if (pos == pivots.end() || pos->first != lc) {
                if (W.at(k, lc) < 0) { row_negate(W, k); row_negate(U, k); }
                pivots.insert(pos, {lc, k});
                reduce_row(k, lc);
                break;
            }
            long pr = pos->second;
            const mpz_class& a = W.at(pr, lc);
            const mpz_class& b = W.at(k, lc);
            if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
                q = b / a;
                row_sub_mul(W, k, pr, q);
                row_sub_mul(U, k, pr, q);
            } else {
                mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(),
                           b.get_mpz_t());
                mpz_class sfac = -b / g, tfac = a / g;
                row_transform2(W, pr, k, u, v, sfac, tfac);
                row_transform2(U, pr, k, u, v, sfac, tfac);
                touched.push_back((long)(pos - pivots.begin()));
            }
        }
        for (long pi : touched) reduce_row(pivots[(size_t)pi].second, pivots[(size_t)pi].first);
    }

    // final canonical reduction above each pivot
    for (size_t pi = 0; pi < pivots.size(); ++pi) {
        auto [c, pr] = pivots[pi];
        for (size_t qi = 0; qi < pi; ++qi) {
            long r = pivots[qi].second;
            if (W.at(r, c) == 0) continue;
            mpz_fdiv_q(q.get_mpz_t(), W.at(r, c).get_mpz_t(), W.at(pr, c).get_mpz_t());
            row_sub_mul(W, r, pr, q);
            row_sub_mul(U, r, pr, q);
        }
    }

    long r = (long)pivots.size();
    HNFResult out;
    out.rank = r;
    out.H = IntMat(r, n);
    out.U = IntMat(m, m);
    std::vector<bool> is_pivot(m, false);
    for (long i = 0; i < r; ++i) {
        long pr = pivots[(size_t)i].second;
        is_pivot[(size_t)pr] = true;
        out.pivot_cols.push_back(pivots[(size_t)i].first);
        for (long j = 0; j < n; ++j) out.H.at(i, j) = W.at(pr, j);
        for (long j = 0; j < m; ++j) out.U.at(i, j) = U.at(pr, j);
    }
    out.kernel = IntMat(m - r, m);
    long zi = 0;
    for (long i = 0; i < m; ++i) {
        if (is_pivot[(size_t)i]) continue;
        for (long j = 0; j < m; ++j) {
            out.U.at(r + zi, j) = U.at(i, j);
            out.kernel.at(zi, j) = U.at(i, j);
        }
        ++zi;
    }
    return out;
}

static void col_sub_mul(IntMat& M, long dst, long src, const mpz_class& q) {
    if (q == 0) return;
    for (long i = 0; i < M.rows; ++i) M.at(i, dst) -= q * M.at(i, src);
}

static void col_swap(IntMat& M, long j, long k) {
    if (j == k) return;
    for (long i = 0; i < M.rows; ++i) std::swap(M.at(i, j), M.at(i, k));
}

static void col_negate(IntMat& M, long j) {
    for (long i = 0; i < M.rows; ++i) M.at(i, j) = -M.at(i, j);
}

// rows (i,k) <- [[u, v], [s, t]] * rows (i,k)
static void row_transform(IntMat& M, long i, long k, const mpz_class& u, const mpz_class& v,
                          const mpz_class& s, const mpz_class& t) {
    for (long j = 0; j < M.cols; ++j) {
        mpz_class a = M.at(i, j), b = M.at(k, j);
        M.at(i, j) = u * a + v * b;
        M.at(k, j) = s * a + t * b;
    }
}

// cols (j,k) <- cols (j,k) * [[u, s], [v, t]]
static void col_transform(IntMat& M, long j, long k, const mpz_class& u, const mpz_class& v,
                          const mpz_class& s, const mpz_class& t) {
    for (long i = 0; i < M.rows; ++i) {
        mpz_class a = M.at(i, j), b = M.at(i, k);
        M.at(i, j) = u * a + v * b;
        M.at(i, k) = s * a + t * b;
    }
}

SNFResult snf(const IntMat& A) {
    long m = A.rows, n = A.cols;
    SNFResult out;
    out.D = A;
    out.U = IntMat(m, m);
    out.V = IntMat(n, n);
    for (long i = 0; i < m; ++i) out.U.at(i, i) = 1;
    for (long j = 0; j < n; ++j) out.V.at(j, j) = 1;
    IntMat& D = out.D;

    // Alternate row and column Hermite reductions until diagonal; entry sizes
    // stay determinant-bounded throughout, unlike pairwise Bezout pivoting.
    auto diagonal = [&]() {
        for (long i = 0; i < m; ++i)
            for (long j = 0; j < n; ++j)
                if (i != j && D.at(i, j) != 0) return false;
        return true;
    };
    long rank = 0;
    while (!diagonal()) {
        HNFResult hr = hnf(D);
        rank = hr.rank;
        IntMat nd(m, n);
        for (long i = 0; i < hr.rank; ++i)
            for (long j = 0; j < n; ++j) nd.at(i, j) = hr.H.at(i, j);
        D = std::move(nd);
        out.U = mat_mul(hr.U, out.U);
        if (diagonal()) break;
        HNFResult hc = hnf(D.transpose());
        rank = hc.rank;
        IntMat ut = hc.U.transpose();
        D = mat_mul(D, ut);
        out.V = mat_mul(out.V, ut);
    }
    for (long i = 0; i < std::min(m, n); ++i)
        if (D.at(i, i) != 0) rank = i + 1;
    long t = rank;
    out.rank = rank;
    mpz_class g, u, v, q;
    for (long i = 0; i < t; ++i)
        if (D.at(i, i) < 0) { row_negate(D, i); row_negate(out.U, i); }

    // divisibility chain via 2x2 Smith updates diag(a,b) -> diag(gcd, lcm)
    bool changed = true;
    while (changed) {
        changed = false;
        for (long i = 0; i + 1 < t; ++i) {
            const mpz_class& a = D.at(i, i);
            const mpz_class& b = D.at(i + 1, i + 1);
            if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) continue;
            changed = true;
            col_sub_mul(D, i, i + 1, mpz_class(-1));
            col_sub_mul(out.V, i, i + 1, mpz_class(-1));
            // D rows i,i+1 are now [a, 0] and [b, b]
            mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), D.at(i, i).get_mpz_t(),
                       D.at(i + 1, i).get_mpz_t());
            mpz_class s = -D.at(i + 1, i) / g, w = D.at(i, i) / g;
            row_transform(D, i, i + 1, u, v, s, w);
            row_transform(out.U, i, i + 1, u, v, s, w);
            // rows are [g, v*b] and [0, lcm]; clear the off-diagonal entry
            q = D.at(i, i + 1) / D.at(i, i);
            col_sub_mul(D, i + 1, i, q); col_sub_mul(out.V, i + 1, i, q);
            if (D.at(i, i) < 0) { row_negate(D, i); row_negate(out.U, i); }
            if (D.at(i + 1, i + 1) < 0) { row_negate(D, i + 1); row_negate(out.U, i + 1); }
        }
    }
    return out;
}

IntMat mat_mul(const IntMat& A, const IntMat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matrix shape mismatch");
    IntMat C(A.rows, B.cols);
    for (long i = 0; i < A.rows; ++i)
        for (long k = 0; k < A.cols; ++k) {
            if (A.at(i, k) == 0) continue;
            for (long j = 0; j < B.cols; ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
        }
    return C;
}

bool is_identity(const IntMat& A) {
    if (A.rows != A.cols) return false;
    for (long i = 0; i < A.rows; ++i)
        for (long j = 0; j < A.cols; ++j)
            if (A.at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

IntMat right_kernel(const IntMat& A) { return hnf(A.transpose()).kernel; }

IntMat saturate_rows(const IntMat& A) {
    IntMat K = right_kernel(A);
    if (K.rows == 0) {
        // full column rank: the saturation is all of Z^n
        IntMat I(A.cols, A.cols);
        for (long i = 0; i < A.cols; ++i) I.at(i, i) = 1;
        return I;
    }
    return hnf(right_kernel(K)).H;
}

long rank_q(const QMat& A) {
    QMat W = A;
    long r = 0;
    for (long j = 0; j < W.cols && r < W.rows; ++j) {
        long piv = -1;
        for (long i = r; i < W.rows; ++i)
            if (W.at(i, j) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (long c = 0; c < W.cols; ++c) std::swap(W.at(r, c), W.at(piv, c));
        mpq_class inv = 1 / W.at(r, j);
        for (long c = j; c < W.cols; ++c) W.at(r, c) *= inv;
        for (long i = r + 1; i < W.rows; ++i) {
            if (W.at(i, j) == 0) continue;
            mpq_class f = W.at(i, j);
            for (long c = j; c < W.cols; ++c) W.at(i, c) -= f * W.at(r, c);
        }
        ++r;
    }
    return r;
}

bool solve_left(const QMat& B, const std::vector<mpq_class>& t, std::vector<mpq_class>& x) {
    if ((long)t.size() != B.cols) throw std::invalid_argument("solve_left: size mismatch");
    long k = B.rows, n = B.cols;
    std::vector<std::vector<mpq_class>> E(k), T(k);
    std::vector<long> piv;
    std::vector<long> rowidx;
    for (long i = 0; i < k; ++i) {
        std::vector<mpq_class> e(B.a.begin() + (size_t)i * n, B.a.begin() + (size_t)(i + 1) * n);
        std::vector<mpq_class> tr(k);
        tr[i] = 1;
        // reduce against existing echelon rows
        for (size_t r = 0; r < piv.size(); ++r) {
            mpq_class f = e[piv[r]];
            if (f == 0) continue;
            for (long c = 0; c < n; ++c) e[c] -= f * E[rowidx[r]][c];
            for (long c = 0; c < k; ++c) tr[c] -= f * T[rowidx[r]][c];
        }
        long p = -1;
        for (long c = 0; c < n; ++c)
            if (e[c] != 0) { p = c; break; }
        if (p < 0) continue;  // dependent basis row; tolerated
        mpq_class inv = 1 / e[p];
        for (long c = 0; c < n; ++c) e[c] *= inv;
        for (long c = 0; c < k; ++c) tr[c] *= inv;
        E[i] = std::move(e);
        T[i] = std::move(tr);
        piv.push_back(p);
        rowidx.push_back(i);
    }
    std::vector<mpq_class> res = t;
    x.assign(k, mpq_class(0));
    for (size_t r = 0; r < piv.size(); ++r) {
        mpq_class f = res[piv[r]];
        if (f == 0) continue;
        for (long c = 0; c < n; ++c) res[c] -= f * E[rowidx[r]][c];
        for (long c = 0; c < k; ++c) x[c] += f * T[rowidx[r]][c];
    }
    for (long c = 0; c < n; ++c)
        if (res[c] != 0) return false;
    return true;
}

bool QEchelon::insert(std::vector<mpq_class> v) {
    if ((long)v.size() != ncols_) throw std::invalid_argument("QEchelon: size mismatch");
    reduce(v);
    long p = -1;
    for (long c = 0; c < ncols_; ++c)
        if (v[c] != 0) { p = c; break; }
    if (p < 0) return false;
    mpq_class inv = 1 / v[p];
    for (long c = p; c < ncols_; ++c) v[c] *= inv;
    // keep rows sorted by pivot for cheap reduction
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    pivots_.insert(pivots_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
}

void QEchelon::reduce(std::vector<mpq_class>& v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
        mpq_class f = v[pivots_[r]];
        if (f == 0) continue;
        for (long c = pivots_[r]; c < ncols_; ++c) v[c] -= f * rows_[r][c];
    }
    }

}  // namespace modgrade
