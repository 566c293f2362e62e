// Generates the fixture space files: Gamma1(N) weights 2..3 for N = 5..22 and
// Gamma0(p) weights 2, 4, 6 for primes p <= 31, the latter with exact
// Atkin-Lehner images certified by the involution identity W^2 = p^k.
//
// Cusp coverage comes from Galois traces of products of two Eisenstein series
// with characters; candidates are screened by incremental rank over a 62-bit
// prime field and the final basis is saturated and Hermite-reduced, so the
// files only need to be a spanning set (the loader re-canonicalizes and
// re-certifies everything).
#include "modgrade/dims.hpp"
#include "modgrade/eisenstein.hpp"
#include "modgrade/forms.hpp"
#include "modgrade/intmat.hpp"
#include "modgrade/io.hpp"
#include "modgrade/modp.hpp"
#include "modgrade/operators.hpp"
#include "modgrade/spaces.hpp"
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

using namespace modgrade;

namespace {

std::vector<long> divisors(long n) {
    std::vector<long> d;
    for (long i = 1; i <= n; ++i)
        if (n % i == 0) d.push_back(i);
    return d;
}

// Shrink the recorded common order to the character's own order.
DirichletCharacter reduce_order(const DirichletCharacter& c) {
    long g = c.order;
    for (long e : c.exps)
        if (e > 0) g = std::gcd(g, e);
    if (g <= 1) return c;
    DirichletCharacter r = c;
    r.order = c.order / g;
    for (auto& e : r.exps)
        if (e > 0) e /= g;
    return r;
}

struct Factor {
    long w = 0;
    bool rational = false;
    QExpansion rat;  // when rational
    DirichletCharacter chi, psi;
    long t = 1;
};

long factor_order(const Factor& f) {
    return f.rational ? 1 : std::lcm(f.chi.order, f.psi.order);
}

std::vector<Factor> weight_factors(long L, long w, long prec) {
    std::vector<Factor> out;
    if (w == 2) {
        for (long t : divisors(L))
            if (t > 1) {
                Factor f;
                f.w = 2;
                f.rational = true;
                f.rat = e2_level_combination(t, prec);
                out.push_back(std::move(f));
            }
    }
    if (w >= 4 && w % 2 == 0) {
        for (long t : divisors(L)) {
            Factor f;
            f.w = w;
            f.rational = true;
            QExpansion e = eisenstein_level1_series(w, t == 1 ? prec : prec / t + 1);
            f.rat = t == 1 ? std::move(e) : v_expansion(e, t);
            out.push_back(std::move(f));
        }
    }
    for (long u : divisors(L)) {
        for (const auto& chi0 : primitive_characters(u)) {
            for (long v : divisors(L / u)) {
                for (const auto& psi0 : primitive_characters(v)) {
                    bool even_prod = chi0.is_even() == psi0.is_even();
                    if (even_prod != (w % 2 == 0)) continue;
                    if (w == 2 && u == 1 && v == 1) continue;    // quasi-modular
                    if (w % 2 == 0 && u == 1 && v == 1) continue;  // rational, above
                    if (w == 1 && v == 1) continue;  // duplicate of the (1, chi) form
                    for (long t : divisors(L / (u * v))) {
                        Factor f;
                        f.w = w;
                        f.chi = reduce_order(chi0);
                        f.psi = reduce_order(psi0);
                        f.t = t;
                        out.push_back(std::move(f));
                    }
                }
            }
        }
    }
    return out;
}

bool trivial_product_nebentypus(long L, const Factor& a, const Factor& b) {
    std::vector<const DirichletCharacter*> cs;
    if (!a.rational) {
        cs.push_back(&a.chi);
        cs.push_back(&a.psi);
    }
    if (!b.rational) {
        cs.push_back(&b.chi);
        cs.push_back(&b.psi);
    }
    long m = 1;
    for (auto* c : cs) m = std::lcm(m, c->order);
    for (long n = 1; n < L; ++n) {
        if (std::gcd(n, L) != 1) continue;
        long e = 0;
        for (auto* c : cs) e += (*c)(n) * (m / c->order);
        if (e % m != 0) return false;
    }
    return true;
}

bool elt_zero(const CycField::Elt& e) {
    for (const auto& c : e)
        if (c != 0) return false;
    return true;
}

std::vector<CycField::Elt> factor_series(const CycField& F, const Factor& f, long prec) {
    if (!f.rational) return eisenstein_character_series(F, f.w, f.chi, f.psi, f.t, prec);
    std::vector<CycField::Elt> c((size_t)prec, F.zero());
    for (long n = 0; n < std::min(prec, f.rat.prec()); ++n) c[(size_t)n][0] = f.rat.coeff(n);
    return c;
}

std::vector<CycField::Elt> cyc_mul(const CycField& F, const std::vector<CycField::Elt>& a,
                                   const std::vector<CycField::Elt>& b, long prec) {
    std::vector<CycField::Elt> c((size_t)prec, F.zero());
    for (long i = 0; i < prec; ++i) {
        if (elt_zero(a[(size_t)i])) continue;
        for (long j = 0; i + j < prec; ++j) {
            if (elt_zero(b[(size_t)j])) continue;
            CycField::Elt t = F.mul(a[(size_t)i], b[(size_t)j]);
            auto& acc = c[(size_t)(i + j)];
            for (size_t d = 0; d < t.size(); ++d) acc[d] += t[d];
        }
    }
    return c;
}

// Incremental candidate collector with mod-q rank screening; exact rank is
// re-certified later by the saturation step.
struct Collector {
    GroupSpec group;
    long k, dim, need;
    FqEchelon screen;
    std::vector<ModularForm> accepted;

    Collector(GroupSpec g, long k_, long need_)
        : group(g), k(k_), dim(dimension_formula(g, k_)), need(need_),
          screen(Fq{kCertPrimes[0]}, need_) {}

    bool done() const { return screen.rank() >= dim; }

    void offer(ModularForm f) {
        if (done()) return;
        Fq F{kCertPrimes[0]};
        std::vector<uint64_t> row((size_t)need);
        for (long n = 0; n < need; ++n) row[(size_t)n] = F.from_mpq(f.expansion.coeff(n));
        if (screen.insert(std::move(row))) accepted.push_back(std::move(f));
    }
};

void product_waves(Collector& col, long L, long prec, bool need_trivial_neb) {
    long k = col.k;
    for (long k1 = 1; 2 * k1 <= k && !col.done(); ++k1) {
        long k2 = k - k1;
        auto f1s = weight_factors(L, k1, prec);
        auto f2s = k1 == k2 ? f1s : weight_factors(L, k2, prec);
        for (size_t i = 0; i < f1s.size() && !col.done(); ++i) {
            for (size_t j = (k1 == k2 ? i : 0); j < f2s.size() && !col.done(); ++j) {
                const Factor &a = f1s[i], &b = f2s[j];
                if (a.rational && b.rational) continue;  // builtin products cover these
                if (need_trivial_neb && !trivial_product_nebentypus(L, a, b)) continue;
                long m = std::lcm(factor_order(a), factor_order(b));
                CycField F(m);
                auto prod = cyc_mul(F, factor_series(F, a, prec), factor_series(F, b, prec), prec);
                for (long jr = 0; jr < F.deg() && !col.done(); ++jr) {
                    CycField::Elt zj = F.from_root_power(jr);
                    std::vector<mpq_class> c((size_t)prec);
                    bool nonzero = false;
                    for (long n = 0; n < prec; ++n) {
                        c[(size_t)n] = F.trace(F.mul(zj, prod[(size_t)n]));
                        nonzero = nonzero || c[(size_t)n] != 0;
                    }
                    if (!nonzero) continue;
                    col.offer(ModularForm::make(col.group, k,
                                                QExpansion::make(CoefficientRing::Q(), 0,
                                                                 std::move(c)),
                                                Provenance::Product));
                }
            }
        }
    }
}

SpaceBasis spanning_basis(GroupSpec g, long k, long prec) {
    long dim = dimension_formula(g, k);
    long need = sturm_bound(g, k) + 1;
    Collector col(g, k, need);
    for (auto& f : builtin_candidates(g, k, prec))
        if (f.expansion.prec() >= prec) col.offer(std::move(f));
    if (!col.done()) product_waves(col, g.N, prec, g.kind == GroupKind::Gamma0);
    if (!col.done())
        throw std::runtime_error("candidate pool exhausted for " + g.name() + " weight " +
                                 std::to_string(k) + ": rank " + std::to_string(col.screen.rank()) +
                                 " of " + std::to_string(dim));
    return canonicalize_candidates(g, k, CoefficientRing::Z(), col.accepted, prec,
                                   BasisOrigin::BuiltIn, 0);
}

QMat qmat_mul(const QMat& A, const QMat& B) {
    QMat C(A.rows, B.cols);
    for (long i = 0; i < A.rows; ++i)
        for (long l = 0; l < A.cols; ++l) {
            if (A.at(i, l) == 0) continue;
            for (long j = 0; j < B.cols; ++j) C.at(i, j) += A.at(i, l) * B.at(l, j);
        }
    return C;
}

// Solve P * W = Q with P invertible (Gauss-Jordan on the augmented matrix).
QMat qmat_solve(QMat P, QMat Q) {
    long n = P.rows;
    for (long col = 0; col < n; ++col) {
        long piv = -1;
        for (long i = col; i < n; ++i)
            if (P.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw std::runtime_error("singular change-of-basis matrix");
        if (piv != col)
            for (long j = 0; j < n; ++j) {
                std::swap(P.at(piv, j), P.at(col, j));
                std::swap(Q.at(piv, j), Q.at(col, j));
            }
        mpq_class inv = 1 / P.at(col, col);
        for (long j = 0; j < n; ++j) {
            P.at(col, j) *= inv;
            Q.at(col, j) *= inv;
        }
        for (long i = 0; i < n; ++i) {
            if (i == col || P.at(i, col) == 0) continue;
            mpq_class c = P.at(i, col);
            for (long j = 0; j < n; ++j) {
                P.at(i, j) -= c * P.at(col, j);
                Q.at(i, j) -= c * Q.at(col, j);
            }
        }
    }
    return Q;
}

// The tilde (scaled Atkin-Lehner) matrix on the basis: -p U_p on the cusp
// part; on the Eisenstein part E_k and V(E_k) swap with a p^k twist, and for
// weight 2 the single Eisenstein combination is a -p eigenvector, which makes
// tilde equal to -p U_p on the whole space.
QMat tilde_matrix(const SpaceBasis& basis, long p) {
    long k = basis.k, dim = basis.dim();
    QMat Mu(dim, dim);
    for (long i = 0; i < dim; ++i) {
        auto x = express_in_basis(u_expansion(basis.forms[(size_t)i].expansion, p), basis);
        for (long j = 0; j < dim; ++j) Mu.at(i, j) = x[(size_t)j];
    }
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), (unsigned long)p, (unsigned long)k);

    if (k == 2) {
        QMat W = Mu;
        for (auto& c : W.a) c *= -p;
        return W;
    }

    long need = sturm_bound(basis.group, k) + 1;
    QExpansion ek = eisenstein_level1_series(k, need);
    std::vector<mpq_class> e = express_in_basis(ek, basis);
    std::vector<mpq_class> v = express_in_basis(v_expansion(ek, p), basis);

    // cusp coordinates: the row space of (Mu - 1)(Mu - p^{k-1}), which kills
    // the Eisenstein pair and is invertible on cusp forms
    QMat A = Mu, B = Mu;
    mpz_class pk1;
    mpz_ui_pow_ui(pk1.get_mpz_t(), (unsigned long)p, (unsigned long)(k - 1));
    for (long i = 0; i < dim; ++i) {
        A.at(i, i) -= 1;
        B.at(i, i) -= mpq_class(pk1);
    }
    QMat C = qmat_mul(A, B);
    QEchelon ech(dim);
    std::vector<std::vector<mpq_class>> cusp;
    for (long i = 0; i < dim && (long)cusp.size() < dim - 2; ++i) {
        std::vector<mpq_class> row((size_t)dim);
        for (long j = 0; j < dim; ++j) row[(size_t)j] = C.at(i, j);
        auto copy = row;
        if (ech.insert(std::move(copy))) cusp.push_back(std::move(row));
    }
    if ((long)cusp.size() != dim - 2)
        throw std::runtime_error("cusp projector rank mismatch at weight " + std::to_string(k));

    QMat P(dim, dim), Q(dim, dim);
    for (long j = 0; j < dim; ++j) {
        P.at(0, j) = e[(size_t)j];
        P.at(1, j) = v[(size_t)j];
        Q.at(0, j) = mpq_class(pk) * v[(size_t)j];  // tilde(E_k) = p^k V(E_k)
        Q.at(1, j) = e[(size_t)j];                  // tilde(V(E_k)) = E_k
    }
    for (long i = 0; i < dim - 2; ++i) {
        std::vector<mpq_class> img((size_t)dim);
        for (long l = 0; l < dim; ++l) {
            if (cusp[(size_t)i][(size_t)l] == 0) continue;
            for (long j = 0; j < dim; ++j)
                img[(size_t)j] += cusp[(size_t)i][(size_t)l] * Mu.at(l, j);
        }
        for (long j = 0; j < dim; ++j) {
            P.at(2 + i, j) = cusp[(size_t)i][(size_t)j];
            Q.at(2 + i, j) = -p * img[(size_t)j];
        }
    }
    return qmat_solve(std::move(P), std::move(Q));
}

void write_gamma1_fixture(long N, long k, const std::string& dir) {
    GroupSpec g = GroupSpec::gamma1(N);
    std::string path = dir + "/" + fixture_file_name(g, k);
    if (std::filesystem::exists(path)) return;
    long prec = std::max(4 * sturm_bound(g, 3), sturm_bound(g, 8) + 10);
    SpaceBasis basis = spanning_basis(g, k, prec);
    write_space_file(basis, path);
    std::printf("wrote %s (dim %ld, prec %ld)\n", path.c_str(), basis.dim(), prec);
}

void write_gamma0_fixture(long p, long k, const std::string& dir) {
    GroupSpec g = GroupSpec::gamma0(p);
    if (std::filesystem::exists(dir + "/" + fixture_file_name(g, k))) return;
    long need = sturm_bound(g, k) + 1;
    long prec_store = std::max(4 * sturm_bound(g, 6), sturm_bound(g, p - 1) + 10);
    long prec_big = std::max(prec_store, p * (need + 1));
    SpaceBasis basis = spanning_basis(g, k, prec_big);
    long dim = basis.dim();

    QMat W = tilde_matrix(basis, p);
    // involution certificate
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), (unsigned long)p, (unsigned long)k);
    QMat W2 = qmat_mul(W, W);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j)
            if (W2.at(i, j) != (i == j ? mpq_class(pk) : mpq_class(0)))
                throw std::runtime_error("tilde matrix fails W^2 = p^k at p = " +
                                         std::to_string(p) + ", k = " + std::to_string(k));

    SpaceBasis out;
    out.group = g;
    out.k = k;
    out.ring = CoefficientRing::Z();
    for (long i = 0; i < dim; ++i) {
        QExpansion img = QExpansion::zero(CoefficientRing::Q(), prec_store);
        for (long j = 0; j < dim; ++j)
            if (W.at(i, j) != 0)
                img = qexp_add(img, qexp_scalar_mul(W.at(i, j),
                                                    basis.forms[(size_t)j]
                                                        .expansion.truncated(prec_store)
                                                        .change_ring(CoefficientRing::Q())));
        out.forms.push_back(ModularForm::make(
            g, k, basis.forms[(size_t)i].expansion.truncated(prec_store), Provenance::Derived,
            ALTag::explicit_image(std::move(img))));
    }
    std::string path = dir + "/" + fixture_file_name(g, k);
    write_space_file(out, path);
    std::printf("wrote %s (dim %ld, prec %ld)\n", path.c_str(), dim, prec_store);
}

}  // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(dir);
    auto t0 = std::chrono::steady_clock::now();
    try {
        for (long N = 5; N <= 22; ++N)
            for (long k : {2L, 3L}) write_gamma1_fixture(N, k, dir);
        for (long p : {5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L})
            for (long k : {2L, 4L, 6L}) write_gamma0_fixture(p, k, dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "genfixtures: %s\n", e.what());
        return 1;
    }
    auto dt = std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - t0);
    std::printf("done in %lds\n", (long)dt.count());
    return 0;
}
