#include "modgrade/congruence.hpp"
#include "modgrade/eisenstein.hpp"
#include "modgrade/graded.hpp"
#include "modgrade/eta.hpp"
#include "modgrade/intmat.hpp"
#include "modgrade/operators.hpp"
#include "modgrade/spaces.hpp"
#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace modgrade {

namespace {

mpz_class pow_z(long p, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)p, (unsigned long)e);
    return r;
}

long coeff_mod_p(const mpq_class& c, long p) {
    mpz_class den_inv, pz(p);
    if (mpz_invert(den_inv.get_mpz_t(), c.get_den_mpz_t(), pz.get_mpz_t()) == 0)
        throw std::invalid_argument("p in a denominator during a mod-p reduction");
    mpz_class r = c.get_num() * den_inv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pz.get_mpz_t());
    return r.get_si();
}

// Solve x * B = t over F_p; rows[i] is row i of B.
bool solve_mod_p(long p, const std::vector<std::vector<long>>& rows, std::vector<long> t,
                 std::vector<long>& x) {
    long d = (long)rows.size();
    long s = d == 0 ? (long)t.size() : (long)rows[0].size();
    auto inv = [&](long a) {
        mpz_class iv, pz(p);
        mpz_invert(iv.get_mpz_t(), mpz_class(a).get_mpz_t(), pz.get_mpz_t());
        return iv.get_si();
    };
    // echelon rows with combination tracking
    std::vector<std::vector<long>> ech, comb;
    std::vector<long> piv;
    for (long i = 0; i < d; ++i) {
        std::vector<long> v = rows[i], c(d, 0);
        c[i] = 1;
        for (size_t r = 0; r < ech.size(); ++r) {
            long f = v[(size_t)piv[r]];
            if (f == 0) continue;
            for (long j = 0; j < s; ++j) v[(size_t)j] = ((v[(size_t)j] - f * ech[r][(size_t)j]) % p + p) % p;
            for (long j = 0; j < d; ++j) c[(size_t)j] = ((c[(size_t)j] - f * comb[r][(size_t)j]) % p + p) % p;
        }
        long pc = -1;
        for (long j = 0; j < s; ++j)
            if (v[(size_t)j] != 0) {
                pc = j;
                break;
            }
        if (pc < 0) continue;
        long iv = inv(v[(size_t)pc]);
        for (long j = 0; j < s; ++j) v[(size_t)j] = (v[(size_t)j] * iv) % p;
        for (long j = 0; j < d; ++j) c[(size_t)j] = (c[(size_t)j] * iv) % p;
        ech.push_back(std::move(v));
        comb.push_back(std::move(c));
        piv.push_back(pc);
    }
    x.assign((size_t)d, 0);
    for (size_t r = 0; r < ech.size(); ++r) {
        long f = t[(size_t)piv[r]];
        if (f == 0) continue;
        for (long j = 0; j < s; ++j) t[(size_t)j] = ((t[(size_t)j] - f * ech[r][(size_t)j]) % p + p) % p;
        for (long j = 0; j < d; ++j) x[(size_t)j] = (x[(size_t)j] + f * comb[r][(size_t)j]) % p;
    }
    for (long j = 0; j < s; ++j)
        if (t[(size_t)j] != 0) return false;
    return true;
}

QExpansion as_q(const QExpansion& e) { return e.change_ring(CoefficientRing::Q()); }

std::vector<ModularForm> vm_forms(long w, long prec) {
    if (w == 2) return {};
    std::vector<ModularForm> out;
    for (const auto& f : level1_vm_basis(w, CoefficientRing::Z(), prec).forms)
        out.push_back(ModularForm::make(GroupSpec::level1(), w, as_q(f.expansion),
                                        Provenance::VictorMiller, ALTag::level1_origin()));
    return out;
}

ModularForm level1_zero(long w, long prec) {
    return ModularForm::make(GroupSpec::level1(), w, QExpansion::zero(CoefficientRing::Q(), prec));
}

}  // namespace

ModularForm estar(long p, long prec) {
    ModularForm e = eisenstein_level1(p - 1, prec);
    e = ModularForm::make(GroupSpec::gamma0(p), p - 1, e.expansion, Provenance::Eisenstein,
                          ALTag::level1_origin());
    ModularForm ve = v_operator(eisenstein_level1(p - 1, prec), p);
    return add_forms(e, scalar_form(-mpq_class(pow_z(p, p - 1)), ve), p);
}

ModularForm congruent_level1_form(const ModularForm& f, long p) {
    long k = f.k;
    VpPair vp = vp_pair(f, p);
    if (vp.vp_f != 0) throw std::invalid_argument("congruent_level1_form needs v_p(f) = 0");
    long a = vp.vp_tilde - k;
    long w = k - a * (p - 1);
    if (w < 0) throw std::invalid_argument("negative target weight in congruence lifting");

    long m = std::max(k, w);
    long need = sturm_bound(GroupSpec::gamma0(p), m) + 1;
    if (f.expansion.prec() < need)
        throw std::invalid_argument("insufficient precision for the congruence solve");
    long P = f.expansion.prec();
    QExpansion ep = eisenstein_level1_series(p - 1, need);
    QExpansion lift_f = as_q(f.expansion.truncated(need));
    for (long i = 0; i < std::max(0L, -a); ++i) lift_f = qexp_mul(lift_f, ep);

    auto vm = vm_forms(w, P);
    std::vector<std::vector<long>> rows;
    for (const auto& b : vm) {
        QExpansion e = as_q(b.expansion.truncated(need));
        for (long i = 0; i < std::max(0L, a); ++i) e = qexp_mul(e, ep);
        std::vector<long> r((size_t)need);
        for (long n = 0; n < need; ++n) r[(size_t)n] = coeff_mod_p(e.coeff(n), p);
        rows.push_back(std::move(r));
    }
    std::vector<long> t((size_t)need);
    for (long n = 0; n < need; ++n) t[(size_t)n] = coeff_mod_p(lift_f.coeff(n), p);
    std::vector<long> x;
    if (!solve_mod_p(p, rows, std::move(t), x))
        throw std::runtime_error("no level-1 congruent form found; input data are inconsistent");
    QExpansion g = QExpansion::zero(CoefficientRing::Q(), P);
    for (size_t i = 0; i < vm.size(); ++i)
        if (x[i] != 0)
            g = qexp_add(g, qexp_scalar_mul(mpq_class(x[i]), vm[i].expansion));
    return ModularForm::make(GroupSpec::level1(), w, std::move(g), Provenance::Derived,
                             ALTag::level1_origin());
}

bool verify_ptcor(long p, long prec) {
    long need = sturm_bound(GroupSpec::gamma0(p), p - 1) + 1;
    long P = std::max(prec, need);
    ModularForm tt = t_tilde_closed_form(p, P);
    QExpansion d = tt.expansion;
    std::vector<mpq_class> c((size_t)need);
    for (long n = 0; n < need; ++n) c[(size_t)n] = mpq_class(p) * d.coeff(n) - (n == 0 ? 1 : 0);
    QExpansion diff = QExpansion::make(CoefficientRing::Q(), 0, std::move(c));
    return diff.is_zero() || vp_of_truncation(diff, p) >= 1;
}

Decomposition decompose_gamma0p(const ModularForm& f, long p) {
    GroupSpec g0 = GroupSpec::gamma0(p);
    long k = f.k;
    long need = sturm_bound(g0, k) + 1;
    long P = f.expansion.prec();
    if (P < need) throw std::invalid_argument("insufficient precision for decomposition");

    Decomposition out;
    if (f.expansion.is_zero() || (f.al.kind == ALKind::ExplicitImage && f.al.image && f.al.image->is_zero())) {
        out.p = p;
        out.a = 0;
        out.f0 = f;
        return out;
    }
    VpPair vp = vp_pair(f, p);
    if (vp.vp_f < 0) throw std::invalid_argument("decompose_gamma0p needs an integral form");
    long a = std::max(0L, -vp.vp_tilde);
    out.p = p;
    out.a = a;
    if (a == 0) {
        out.f0 = f;
        return out;
    }
    long w = k - a * (p - 1);
    if (w < 0) throw std::runtime_error("negative component weight; valuation data inconsistent");

    ModularForm tf = tilde(f, p);
    QExpansion g = qexp_scalar_mul(mpq_class(pow_z(p, a)), as_q(tf.expansion));  // p^a tilde(f)

    // h = g mod p against (p T~)^a * VM(w) at the weight-k Sturm bound
    ModularForm ptt = scalar_form(p, t_tilde_closed_form(p, P));
    QExpansion lift = as_q(ptt.expansion);
    for (long i = 1; i < a; ++i) lift = qexp_mul(lift, as_q(ptt.expansion));
    auto vm = vm_forms(w, P);
    std::vector<ModularForm> vmf = vm;
    if (w == 0)
        vmf.push_back(ModularForm::make(GroupSpec::level1(), 0,
                                        QExpansion::make(CoefficientRing::Q(), 0,
                                                         [&] {
                                                             std::vector<mpq_class> c((size_t)P);
                                                             c[0] = 1;
                                                             return c;
                                                         }())));
    std::vector<std::vector<long>> rows;
    std::vector<QExpansion> lifted;
    for (const auto& b : vmf) {
        QExpansion e = qexp_mul(lift, b.expansion);
        std::vector<long> r((size_t)need);
        for (long n = 0; n < need; ++n) r[(size_t)n] = coeff_mod_p(e.coeff(n), p);
        rows.push_back(std::move(r));
        lifted.push_back(std::move(e));
    }
    std::vector<long> t((size_t)need);
    for (long n = 0; n < need; ++n) t[(size_t)n] = coeff_mod_p(g.coeff(n), p);
    std::vector<long> x;
    if (!solve_mod_p(p, rows, std::move(t), x))
        throw std::runtime_error("decomposition congruence has no solution; data inconsistent");

    QExpansion h = QExpansion::zero(CoefficientRing::Q(), P);
    QExpansion lifted_h = QExpansion::zero(CoefficientRing::Q(), need);
    for (size_t i = 0; i < vmf.size(); ++i)
        if (x[i] != 0) {
            h = qexp_add(h, qexp_scalar_mul(mpq_class(x[i]), vmf[i].expansion));
            lifted_h = qexp_add(lifted_h, qexp_scalar_mul(mpq_class(x[i]),
                                                          lifted[i].truncated(need)));
        }

    // exact divisibility of u = (g - (pT~)^a h) / p certifies the congruence
    QExpansion resid = qexp_sub(g.truncated(need), lifted_h);
    if (!resid.is_zero() && vp_of_truncation(resid, p) < 1)
        throw std::runtime_error("congruence residual not divisible by p");

    // v = f - T^a V(h); tilde(v) = tilde(f) - T~^a h
    ModularForm T = t_form(p, P);
    QExpansion ta = as_q(T.expansion);
    for (long i = 1; i < a; ++i) ta = qexp_mul(ta, as_q(T.expansion));
    QExpansion v_exp = qexp_sub(as_q(f.expansion.truncated(P)), qexp_mul(ta, v_expansion(h, p)));
    ModularForm tt = t_tilde_closed_form(p, P);
    QExpansion tta = as_q(tt.expansion);
    for (long i = 1; i < a; ++i) tta = qexp_mul(tta, as_q(tt.expansion));
    QExpansion vt_exp = qexp_sub(as_q(tf.expansion.truncated(need)), qexp_mul(tta, h).truncated(need));
    ModularForm v = ModularForm::make(g0, k, std::move(v_exp), Provenance::Derived,
                                      ALTag::explicit_image(std::move(vt_exp)));

    Decomposition rec = decompose_gamma0p(v, p);
    if (rec.a >= a) throw std::runtime_error("decomposition recursion failed to descend");
    out.f0 = rec.f0;
    out.fs.assign((size_t)a, ModularForm{});
    for (long i = 1; i <= a; ++i) {
        long wi = k - i * (p - 1);
        out.fs[(size_t)(i - 1)] =
            i <= rec.a ? rec.fs[(size_t)(i - 1)] : level1_zero(wi, P);
    }
    out.fs[(size_t)(a - 1)] = ModularForm::make(GroupSpec::level1(), w, std::move(h));
    return out;
}

GenZWitness genz_witness(long p, const std::string& fixtures) {
    GenZWitness rep;
    rep.p = p;
    long need = sturm_bound(GroupSpec::gamma0(p), p - 1) + 1;
    ModularForm T = t_form(p, need + (p * p - 1) / 12 + 2);
    VpPair vp = vp_pair(T, p);
    rep.vp_t = vp.vp_f;
    rep.vp_t_tilde = vp.vp_tilde;
    rep.closure_holds = true;
    for (long k = 2; k <= p - 3; k += 2) {
        if (dimension_formula(GroupSpec::gamma0(p), k) == 0) continue;
        const SpaceBasis& B = get_space(GroupSpec::gamma0(p), k, CoefficientRing::Z(), 0, fixtures);
        for (const auto& f : B.forms) {
            VpPair v = vp_pair(f, p);
            rep.closure_holds = rep.closure_holds && v.vp_tilde >= v.vp_f;
            ++rep.forms_checked;
        }
    }
    return rep;
}

namespace {

// Hermite basis of the sublattice {f in M : tilde(f) p-integral}, with the
// tilde images carried along. Coordinates of tilde live in Z[1/p], so the
// condition is a kernel computation mod a p-power.
std::vector<ModularForm> s_sublattice(const SpaceBasis& M, long p) {
    long d = M.dim();
    if (d == 0) return {};
    QMat W(d, d);
    long m = 0;
    for (long i = 0; i < d; ++i) {
        if (!M.forms[(size_t)i].al.image)
            throw std::runtime_error("ambient basis lacks tilde images for the S computation");
        auto x = express_in_basis(*M.forms[(size_t)i].al.image, M);
        for (long j = 0; j < d; ++j) {
            W.at(i, j) = x[(size_t)j];
            mpz_class den = W.at(i, j).get_den();
            long e = 0;
            while (mpz_divisible_ui_p(den.get_mpz_t(), (unsigned long)p)) {
                mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), (unsigned long)p);
                ++e;
            }
            if (den != 1)
                throw std::runtime_error("tilde coordinate with a denominator away from p");
            m = std::max(m, e);
        }
    }
    IntMat X(d, d);
    if (m == 0) {
        for (long i = 0; i < d; ++i) X.at(i, i) = 1;
    } else {
        mpz_class pm = pow_z(p, m);
        IntMat ST(2 * d, d);
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j) {
                mpq_class s = W.at(i, j) * pm;
                ST.at(i, j) = s.get_num();
            }
        for (long i = 0; i < d; ++i) ST.at(d + i, i) = pm;
        IntMat K = hnf(ST).kernel;  // rows (x | y) with x * A = p^m * y
        IntMat Xraw(K.rows, d);
        for (long i = 0; i < K.rows; ++i)
            for (long j = 0; j < d; ++j) Xraw.at(i, j) = K.at(i, j);
        HNFResult H = hnf(Xraw);
        if (H.rank != d) throw std::runtime_error("S sublattice rank dropped");
        X = H.H;
    }
    std::vector<ModularForm> out;
    long prec = M.prec();
    for (long i = 0; i < d; ++i) {
        QExpansion e = QExpansion::zero(CoefficientRing::Q(), prec);
        QExpansion img = QExpansion::zero(CoefficientRing::Q(), M.forms[0].al.image->prec());
        for (long j = 0; j < d; ++j) {
            if (X.at(i, j) == 0) continue;
            mpq_class c(X.at(i, j));
            e = qexp_add(e, qexp_scalar_mul(c, M.forms[(size_t)j].expansion));
            img = qexp_add(img, qexp_scalar_mul(c, *M.forms[(size_t)j].al.image));
        }
        out.push_back(ModularForm::make(M.group, M.k, std::move(e), Provenance::Derived,
                                        ALTag::explicit_image(std::move(img))));
    }
    return out;
}

}  // namespace

ConjectureReport conjecture_harness(long p, long kmax, const std::string& fixtures) {
    GroupSpec g0 = GroupSpec::gamma0(p);
    ConjectureReport rep;
    rep.p = p;
    FoundGenerators found = find_generators(g0, CoefficientRing::Z(), kmax, 0, fixtures);
    rep.weights = found.weights();
    rep.weights_in_set = true;
    long top = 0;
    for (long w : rep.weights) {
        if (w != 2 && w != 4 && w != 6 && w != p - 1) rep.weights_in_set = false;
        if (w == p - 1) ++top;
    }
    rep.one_top_weight = top == 1;

    // the same completion inside S = {f : v_p(tilde f) >= 0}
    std::map<long, SpaceBasis> sb;
    std::vector<std::pair<ModularForm, long>> sgens;
    for (long k = 2; k <= kmax; k += 2) {
        auto it = found.ambients.find(k);
        if (it == found.ambients.end() || it->second.dim() == 0) continue;
        SpaceBasis SB = it->second;
        SB.forms = s_sublattice(it->second, p);

        std::vector<QExpansion> prods;
        for (const auto& [g, wg] : sgens) {
            auto jt = sb.find(k - wg);
            if (jt == sb.end()) continue;
            for (const auto& b : jt->second.forms)
                prods.push_back(qexp_mul(g.expansion, b.expansion));
        }
        long dim = SB.dim();
        IntMat X((long)prods.size(), dim);
        for (long i = 0; i < (long)prods.size(); ++i) {
            auto x = express_in_basis(prods[(size_t)i], SB);
            for (long j = 0; j < dim; ++j) {
                if (x[(size_t)j].get_den() != 1)
                    throw std::runtime_error("S product with fractional coordinates");
                X.at(i, j) = x[(size_t)j].get_num();
            }
        }
        while (true) {
            long bad = -1;
            if (X.rows == 0) {
                bad = 0;
            } else {
                HNFResult H = hnf(X);
                std::vector<long> pivot_at((size_t)dim, -1);
                for (long r = 0; r < H.rank; ++r) pivot_at[(size_t)H.pivot_cols[(size_t)r]] = r;
                for (long j = 0; j < dim && bad < 0; ++j)
                    if (pivot_at[(size_t)j] < 0 || H.H.at(pivot_at[(size_t)j], j) != 1) bad = j;
            }
            if (bad < 0) break;
            IntMat X2(X.rows + 1, dim);
            for (long i = 0; i < X.rows; ++i)
                for (long j = 0; j < dim; ++j) X2.at(i, j) = X.at(i, j);
            X2.at(X.rows, bad) = 1;
            X = std::move(X2);
            sgens.push_back({SB.forms[(size_t)bad], k});
            rep.s_weights.push_back(k);
            rep.s_max_weight = std::max(rep.s_max_weight, k);
        }
        sb[k] = std::move(SB);
    }
    std::sort(rep.s_weights.begin(), rep.s_weights.end());
    return rep;
}

}  // namespace modgrade
