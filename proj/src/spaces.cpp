#include "modgrade/spaces.hpp"
#include "modgrade/eta.hpp"
#include "modgrade/intmat.hpp"
#include "modgrade/io.hpp"
#include "modgrade/operators.hpp"
#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>
#include <sstream>

namespace modgrade {

std::vector<mpq_class> express_in_basis(const QExpansion& f, const SpaceBasis& basis) {
    long need = sturm_bound(basis.group, basis.k) + 1;
    if (f.prec() < need)
        throw std::invalid_argument("express_in_basis: input precision below the Sturm bound");
    if (basis.dim() == 0) {
        if (!f.truncated(need).is_zero())
            throw std::invalid_argument("express_in_basis: nonzero form in a zero-dimensional space");
        return {};
    }
    if (basis.prec() < need)
        throw std::invalid_argument("express_in_basis: basis precision below the Sturm bound");
    QMat B(basis.dim(), need);
    for (long i = 0; i < basis.dim(); ++i)
        for (long n = 0; n < need; ++n) B.at(i, n) = basis.forms[i].expansion.coeff(n);
    std::vector<mpq_class> t(need);
    for (long n = 0; n < need; ++n) t[n] = f.coeff(n);
    std::vector<mpq_class> x;
    if (!solve_left(B, t, x))
        throw std::invalid_argument("express_in_basis: form outside the space");
    return x;
}

namespace {

// Clear denominators of a rational row; the scale is irrelevant for the span.
std::vector<mpz_class> integer_row(const std::vector<mpq_class>& v) {
    mpz_class den = 1;
    for (const auto& c : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> out(v.size());
    for (size_t j = 0; j < v.size(); ++j) {
        mpq_class s = v[j] * den;
        out[j] = s.get_num();
    }
    return out;
}

}  // namespace

SpaceBasis canonicalize_candidates(GroupSpec group, long k, CoefficientRing ring,
                                   const std::vector<ModularForm>& cands, long prec,
                                   BasisOrigin origin, long p_for_tags) {
    long dim = dimension_formula(group, k);
    SpaceBasis out;
    out.group = group;
    out.k = k;
    out.ring = ring;
    out.origin = origin;
    if (dim == 0) return out;
    long need = sturm_bound(group, k) + 1;
    long P = prec;
    for (const auto& f : cands) P = std::min(P, f.expansion.prec());
    if (cands.empty() || P < need) {
        std::ostringstream os;
        os << "candidates for " << group.name() << " weight " << k
           << " have precision " << P << " < " << need;
        throw SpanningError(os.str(), 0, dim);
    }

    IntMat A((long)cands.size(), P);
    for (long i = 0; i < (long)cands.size(); ++i) {
        std::vector<mpq_class> row(P);
        for (long n = 0; n < P; ++n) row[n] = cands[i].expansion.coeff(n);
        auto ir = integer_row(row);
        for (long n = 0; n < P; ++n) A.at(i, n) = ir[n];
    }
    IntMat S = saturate_rows(A);
    if (S.rows != dim) {
        std::ostringstream os;
        os << "spanning " << group.name() << " weight " << k << ": rank " << S.rows
           << " of required " << dim << "; ingest fixture " << fixture_file_name(group, k);
        throw SpanningError(os.str(), S.rows, dim);
    }

    bool tags = p_for_tags > 0;
    for (const auto& f : cands) tags = tags && f.al.kind != ALKind::Unknown;
    std::vector<QExpansion> images;
    QMat C(0, 0);
    if (tags) {
        for (const auto& f : cands) images.push_back(tilde(f, p_for_tags).expansion);
        C = QMat((long)cands.size(), need);
        for (long i = 0; i < (long)cands.size(); ++i)
            for (long n = 0; n < need; ++n) C.at(i, n) = cands[i].expansion.coeff(n);
    }

    for (long i = 0; i < dim; ++i) {
        std::vector<mpq_class> row(P);
        for (long n = 0; n < P; ++n) row[n] = mpq_class(S.at(i, n));
        QExpansion e = QExpansion::make(CoefficientRing::Q(), 0, row);
        ALTag tag = ALTag::unknown();
        if (tags) {
            std::vector<mpq_class> t(need), x;
            for (long n = 0; n < need; ++n) t[n] = e.coeff(n);
            if (!solve_left(C, t, x))
                throw std::logic_error("canonical row escaped the candidate span");
            QExpansion img = QExpansion::zero(CoefficientRing::Q(), images[0].prec());
            for (size_t j = 0; j < x.size(); ++j)
                if (x[j] != 0) img = qexp_add(img, qexp_scalar_mul(x[j], images[j]));
            tag = ALTag::explicit_image(std::move(img));
        }
        if (ring.kind == RingKind::Fp) e = reduce_mod_p(e, ring.param);
        out.forms.push_back(ModularForm::make(
            group, k, e.change_ring(ring),
            origin == BasisOrigin::Ingested ? Provenance::Ingested : Provenance::Derived,
            std::move(tag)));
    }
    return out;
}

namespace {

// Eisenstein-family candidates on the group at weight k (traces over Galois
// orbits, already rational), including the t-shifted E_2 combinations.
std::vector<ModularForm> eisenstein_family(GroupSpec group, long k, long prec) {
    std::vector<ModularForm> out;
    long N = group.N;
    if (group.kind == GroupKind::Gamma0) {
        if (k == 2) {
            for (long t = 2; t <= N; ++t)
                if (N % t == 0) {
                    ALTag tag = ALTag::unknown();
                    if (t == N && N >= 2) tag = ALTag::eigen(-1);
                    out.push_back(ModularForm::make(group, 2, e2_level_combination(t, prec),
                                                    Provenance::Eisenstein, tag));
                }
        } else if (k >= 4 && k % 2 == 0) {
            QExpansion ek = eisenstein_level1_series(k, prec);
            out.push_back(ModularForm::make(group, k, ek, Provenance::Eisenstein,
                                            ALTag::level1_origin()));
            for (long t = 2; t <= N; ++t)
                if (N % t == 0) {
                    ALTag tag = t == N ? ALTag::v_image() : ALTag::unknown();
                    out.push_back(ModularForm::make(group, k, v_expansion(ek.truncated((prec - 1) / t + 1), t),
                                                    Provenance::Eisenstein, tag));
                }
        }
        return out;
    }
    // Gamma1(N): every (chi, psi, t) with cond(chi) cond(psi) t | N and matching parity.
    std::vector<DirichletCharacter> prims;
    for (long u = 1; u <= N; ++u)
        if (N % u == 0)
            for (const auto& c : primitive_characters(u)) prims.push_back(c);
    for (const auto& chi : prims)
        for (const auto& psi : prims) {
            long uv = chi.modulus * psi.modulus;
            if (uv > N || N % uv != 0) continue;
            bool even = chi.is_even() == psi.is_even();
            if (even != (k % 2 == 0)) continue;
            for (long t = 1; uv * t <= N; ++t) {
                if (N % (uv * t) != 0) continue;
                if (k == 2 && chi.is_trivial() && psi.is_trivial()) {
                    if (t == 1) continue;
                    out.push_back(ModularForm::make(group, 2, e2_level_combination(t, prec),
                                                    Provenance::Eisenstein));
                    continue;
                }
                for (auto& f : eisenstein_gamma1(N, k, chi, psi, t, prec)) out.push_back(f);
            }
        }
    return out;
}

SpaceBasis build_space(GroupSpec group, long k, CoefficientRing ring, long prec) {
    if (k == 1) throw std::invalid_argument("weight-1 spaces are not supported");
    if (group.kind == GroupKind::Level1) return level1_vm_basis(k, ring, prec);
    long dim = dimension_formula(group, k);
    SpaceBasis empty{group, k, ring, {}, BasisOrigin::BuiltIn};
    if (dim == 0) return empty;
    if (k == 0) {
        SpaceBasis b{group, 0, ring, {}, BasisOrigin::BuiltIn};
        std::vector<mpq_class> c(prec);
        c[0] = 1;
        b.forms.push_back(ModularForm::make(group, 0, QExpansion::make(ring, 0, std::move(c)),
                                            Provenance::Eisenstein, ALTag::level1_origin()));
        return b;
    }
    return canonicalize_candidates(group, k, ring, builtin_candidates(group, k, prec), prec,
                                   BasisOrigin::BuiltIn,
                                   group.kind == GroupKind::Gamma0 ? group.N : 0);
}

}  // namespace

std::vector<ModularForm> builtin_candidates(GroupSpec group, long k, long prec) {
    std::vector<ModularForm> cands = eisenstein_family(group, k, prec);
    // products of two lower-weight Eisenstein forms
    for (long i = 2; i <= k - 2; ++i) {
        if (i > k - i) break;
        auto a = eisenstein_family(group, i, prec);
        auto b = i == k - i ? a : eisenstein_family(group, k - i, prec);
        for (size_t s = 0; s < a.size(); ++s)
            for (size_t t = i == k - i ? s : 0; t < b.size(); ++t)
                cands.push_back(mul_forms(a[s], b[t],
                                          group.kind == GroupKind::Gamma0 ? group.N : 0));
    }
    // eta quotients: the T-form on Gamma0(p) at weight p-1
    if (group.kind == GroupKind::Gamma0 && k == group.N - 1 && group.N >= 5)
        cands.push_back(t_form(group.N, prec));
    // level-1 cusp-covering forms and their V-images
    if (k >= 4 && k % 2 == 0 && group.kind == GroupKind::Gamma0) {
        for (const auto& f : level1_vm_basis(k, CoefficientRing::Z(), prec).forms) {
            cands.push_back(ModularForm::make(group, k, f.expansion, Provenance::VictorMiller,
                                              ALTag::level1_origin()));
            for (long t = 2; t <= group.N; ++t)
                if (group.N % t == 0)
                    cands.push_back(ModularForm::make(
                        group, k, v_expansion(f.expansion.truncated((prec - 1) / t + 1), t),
                        Provenance::VictorMiller,
                        t == group.N ? ALTag::v_image() : ALTag::unknown()));
        }
    }
    return cands;
}

namespace {

struct CacheKey {
    GroupKind kind;
    long N, k;
    RingKind rk;
    long rp;
    long prec;
    auto operator<=>(const CacheKey&) const = default;
};

std::map<CacheKey, std::unique_ptr<SpaceBasis>> g_cache;
std::mutex g_cache_mutex;

}  // namespace

SpaceBasis span_space(GroupSpec group, long k, CoefficientRing ring, long prec) {
    if (prec <= 0) prec = default_prec(group, k);
    return build_space(group, k, ring, prec);
}

std::string fixture_file_name(GroupSpec group, long k) {
    std::ostringstream os;
    switch (group.kind) {
        case GroupKind::Level1: os << "level1"; break;
        case GroupKind::Gamma0: os << "gamma0_" << group.N; break;
        case GroupKind::Gamma1: os << "gamma1_" << group.N; break;
    }
    os << "_k" << k << ".json";
    return os.str();
}

std::string fixture_dir(const std::string& override_dir) {
    if (!override_dir.empty()) return override_dir;
    if (const char* env = std::getenv("MODGRADE_FIXTURES")) return env;
    return "fixtures";
}

const SpaceBasis& get_space(GroupSpec group, long k, CoefficientRing ring, long prec,
                            const std::string& fixtures) {
    if (prec <= 0) prec = default_prec(group, k);
    CacheKey key{group.kind, group.N, k, ring.kind, ring.param, prec};
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return *it->second;

    std::filesystem::path file =
        std::filesystem::path(fixture_dir(fixtures)) / fixture_file_name(group, k);
    std::unique_ptr<SpaceBasis> built;
    if (group.kind != GroupKind::Level1 && std::filesystem::exists(file)) {
        SpaceBasis b = ingest_basis(file.string(), ring);
        if (b.group != group || b.k != k)
            throw std::runtime_error("fixture " + file.string() + " describes a different space");
        if (b.dim() > 0 && b.prec() < prec)
            throw std::runtime_error("fixture " + file.string() + " precision below request");
        built = std::make_unique<SpaceBasis>(std::move(b));
    } else {
        built = std::make_unique<SpaceBasis>(build_space(group, k, ring, prec));
    }
    auto& slot = g_cache[key];
    slot = std::move(built);
    return *slot;
}

void clear_space_cache() {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_cache.clear();
}

}  // namespace modgrade
