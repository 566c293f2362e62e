#include "modgrade/eisenstein.hpp"
#include <algorithm>
#include <numeric>

namespace modgrade {

ALTag ALTag::eigen(int s) {
    if (s != 1 && s != -1) throw std::invalid_argument("eigen sign must be +-1");
    ALTag t;
    t.kind = ALKind::EigenSign;
    t.sign = s;
    return t;
}

ModularForm ModularForm::make(GroupSpec g, long k, QExpansion e, Provenance prov, ALTag al) {
    if (k == 1) throw std::invalid_argument("weight-1 forms are not supported");
    if (!e.is_zero() && e.lead < 0)
        throw std::invalid_argument("form not holomorphic at infinity (negative lead)");
    ModularForm f;
    f.group = g;
    f.k = k;
    f.expansion = std::move(e);
    f.prov = prov;
    f.al = std::move(al);
    return f;
}

long SpaceBasis::prec() const {
    long p = -1;
    for (const auto& f : forms)
        p = (p < 0) ? f.expansion.prec() : std::min(p, f.expansion.prec());
    return p;
}

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Eisenstein: return "eisenstein";
        case Provenance::Eta: return "eta";
        case Provenance::Product: return "product";
        case Provenance::VictorMiller: return "victor-miller";
        case Provenance::Ingested: return "ingested";
        case Provenance::Derived: return "derived";
    }
    return "?";
}

const char* al_kind_name(ALKind k) {
    switch (k) {
        case ALKind::Level1Origin: return "level1-origin";
        case ALKind::VImage: return "v-image";
        case ALKind::EtaClosedForm: return "eta-closed";
        case ALKind::ExplicitImage: return "explicit";
        case ALKind::EigenSign: return "eigen";
        case ALKind::Unknown: return "unknown";
    }
    return "?";
}

mpq_class bernoulli(long k) {
    if (k < 0) throw std::invalid_argument("negative Bernoulli index");
    static std::vector<mpq_class> cache = {1};
    while ((long)cache.size() <= k) {
        long m = (long)cache.size();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        mpq_class s = 0;
        mpz_class binom;
        for (long j = 0; j < m; ++j) {
            mpz_bin_uiui(binom.get_mpz_t(), (unsigned long)(m + 1), (unsigned long)j);
            s += mpq_class(binom) * cache[j];
        }
        cache.push_back(-s / (m + 1));
    }
    return cache[k];
}

static std::vector<mpq_class> sigma_series(long km1, long prec) {
    // index n: sigma_{km1}(n), n >= 1 at offset 0
    std::vector<mpq_class> s(std::max(prec - 1, 0L));
    for (long d = 1; d < prec; ++d) {
        mpz_class dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), (unsigned long)d, (unsigned long)km1);
        for (long n = d; n < prec; n += d) s[n - 1] += mpq_class(dk);
    }
    return s;
}

QExpansion eisenstein_level1_series(long k, long prec) {
    if (k < 2 || k % 2) throw std::invalid_argument("level-1 Eisenstein weight must be even >= 2");
    std::vector<mpq_class> c(prec);
    if (prec > 0) c[0] = 1;
    mpq_class factor = mpq_class(-2 * k) / bernoulli(k);
    auto s = sigma_series(k - 1, prec);
    for (long n = 1; n < prec; ++n) c[n] = factor * s[n - 1];
    return QExpansion::make(CoefficientRing::Q(), 0, std::move(c));
}

ModularForm eisenstein_level1(long k, long prec) {
    if (k == 2)
        throw std::invalid_argument(
            "E_2 is quasi-modular; use e2_level_combination for level-raising");
    return ModularForm::make(GroupSpec::level1(), k, eisenstein_level1_series(k, prec),
                             Provenance::Eisenstein, ALTag::level1_origin());
}

QExpansion e2_level_combination(long t, long prec) {
    if (t < 2) throw std::invalid_argument("E_2 combination needs t >= 2");
    std::vector<mpq_class> c(prec);
    if (prec > 0) c[0] = 1 - t;
    auto s = sigma_series(1, prec);
    for (long n = 1; n < prec; ++n) {
        c[n] = -24 * s[n - 1];
        if (n % t == 0) c[n] += 24 * t * s[n / t - 1];
    }
    return QExpansion::make(CoefficientRing::Q(), 0, std::move(c));
}

SpaceBasis level1_vm_basis(long k, CoefficientRing ring, long prec) {
    if (k % 2 || k < 0 || k == 2)
        throw std::invalid_argument("Victor Miller basis needs k = 0 or even k >= 4");
    SpaceBasis B;
    B.group = GroupSpec::level1();
    B.k = k;
    B.ring = ring;
    if (k == 0) {
        std::vector<mpq_class> one(prec);
        one[0] = 1;
        B.forms.push_back(ModularForm::make(
            GroupSpec::level1(), 0, QExpansion::make(ring, 0, std::move(one)),
            Provenance::VictorMiller, ALTag::level1_origin()));
        return B;
    }
    long d = dimension_formula(GroupSpec::level1(), k);
    QExpansion e4 = eisenstein_level1_series(4, prec);
    QExpansion e6 = eisenstein_level1_series(6, prec);
    QExpansion delta = eta_product_expansion({{1, 24}}, prec, CoefficientRing::Q());
    std::vector<std::vector<mpq_class>> rows;
    std::vector<QExpansion> fs;
    for (long j = 0; j < d; ++j) {
        long rem = k - 12 * j;
        long b = (rem % 4 == 0) ? 0 : 1;
        long a = (rem - 6 * b) / 4;
        if (a < 0 || (rem - 6 * b) % 4 != 0) throw std::logic_error("weight split failure");
        QExpansion f = qexp_pow(delta, j);
        if (a) f = qexp_mul(f, qexp_pow(e4, a));
        if (b) f = qexp_mul(f, e6);
        fs.push_back(f.truncated(prec));
    }
    // echelonize to f_i = q^i + O(q^d); the matrix is unitriangular so this
    // stays integral
    for (long i = d - 1; i >= 0; --i)
        for (long j = i + 1; j < d; ++j) {
            mpq_class c = fs[i].coeff(j);
            if (c != 0) fs[i] = qexp_sub(fs[i], qexp_scalar_mul(c, fs[j]));
        }
    for (long i = 0; i < d; ++i) {
        B.forms.push_back(ModularForm::make(GroupSpec::level1(), k,
                                            fs[i].change_ring(ring),
                                            Provenance::VictorMiller, ALTag::level1_origin()));
    }
    return B;
}

// ---- characters --------------------------------------------------------

namespace {

struct UnitGroup {
    long m = 1;
    std::vector<long> gens, orders;             // cyclic decomposition
    long exponent = 1;                          // lcm of orders
    std::vector<std::vector<long>> dlogs;       // residue -> exponent tuple, or empty
};

long powmod(long b, long e, long m) {
    long r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

long mult_order(long a, long m) {
    long r = 1, x = a % m;
    while (x != 1 % m) { x = x * a % m; ++r; }
    return r;
}

long primitive_root(long pk, long p) {
    for (long g = 2; g < pk; ++g) {
        if (std::gcd(g, pk) != 1) continue;
        if (mult_order(g, pk) == (long)(pk / p * (p - 1))) return g;
    }
    throw std::logic_error("no primitive root found");
}

UnitGroup unit_group(long m) {
    UnitGroup G;
    G.m = m;
    // factor m
    std::vector<std::pair<long, long>> comps;  // (prime power, generator order data)
    long n = m;
    std::vector<std::pair<long, int>> fac;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            fac.push_back({p, e});
        }
    if (n > 1) fac.push_back({n, 1});
    // CRT generators lifted to mod m
    auto lift = [&](long residue, long pk) {
        // x = residue mod pk, x = 1 mod m/pk
        long q = m / pk;
        for (long x = 1; x <= m; ++x)
            if (x % pk == residue % pk && std::gcd(x, m) == 1 && x % q == 1 % q) return x % m;
        throw std::logic_error("CRT lift failed");
    };
    for (auto [p, e] : fac) {
        long pk = 1;
        for (int i = 0; i < e; ++i) pk *= p;
        if (p == 2) {
            if (e == 1) continue;  // trivial
            G.gens.push_back(lift(pk - 1, pk));  // -1
            G.orders.push_back(2);
            if (e >= 3) {
                G.gens.push_back(lift(5, pk));
                G.orders.push_back(pk / 4);
            }
        } else {
            long g = primitive_root(pk, p);
            G.gens.push_back(lift(g, pk));
            G.orders.push_back(pk / p * (p - 1));
        }
    }
    G.exponent = 1;
    for (long o : G.orders) G.exponent = std::lcm(G.exponent, o);
    // enumerate all exponent tuples
    G.dlogs.assign(m, {});
    std::vector<long> tup(G.gens.size(), 0);
    for (;;) {
        long x = 1 % m;
        for (size_t i = 0; i < G.gens.size(); ++i) x = x * powmod(G.gens[i], tup[i], m) % m;
        if (G.dlogs[x].empty()) G.dlogs[x] = tup;
        // increment
        size_t i = 0;
        for (; i < tup.size(); ++i) {
            if (++tup[i] < G.orders[i]) break;
            tup[i] = 0;
        }
        if (i == tup.size()) break;
        if (tup.empty()) break;
    }
    if (m == 1 || G.gens.empty()) G.dlogs.assign(std::max(m, 1L), std::vector<long>{});
    return G;
}

}  // namespace

bool DirichletCharacter::is_trivial() const {
    for (long n = 0; n < modulus; ++n)
        if (exps[n] > 0) return false;
    return true;
}

bool DirichletCharacter::is_even() const {
    long e = (*this)(modulus - 1 == 0 ? 0 : modulus - 1);  // chi(-1)
    if (modulus <= 2) return true;
    return e == 0;
}

long DirichletCharacter::conductor() const {
    for (long f = 1; f <= modulus; ++f) {
        if (modulus % f) continue;
        bool ok = true;
        for (long n = 1; n < modulus && ok; ++n) {
            if (std::gcd(n, modulus) != 1) continue;
            if (n % f == 1 % f && (*this)(n) != 0) ok = false;
        }
        if (ok) return f;
    }
    return modulus;
}

DirichletCharacter DirichletCharacter::inverse() const {
    DirichletCharacter c = *this;
    for (auto& e : c.exps)
        if (e > 0) e = order - e;
    return c;
}

std::vector<DirichletCharacter> all_characters(long m) {
    if (m < 1) throw std::invalid_argument("modulus must be positive");
    UnitGroup G = unit_group(m);
    std::vector<DirichletCharacter> out;
    std::vector<long> sel(G.gens.size(), 0);
    for (;;) {
        DirichletCharacter chi;
        chi.modulus = m;
        chi.order = G.exponent;
        chi.exps.assign(m, -1);
        for (long n = 0; n < m; ++n) {
            if (m > 1 && std::gcd(n, m) != 1) continue;
            if (m == 1 && n != 0) continue;
            long e = 0;
            const auto& dl = G.dlogs[n % std::max(m, 1L)];
            for (size_t i = 0; i < sel.size(); ++i)
                e = (e + sel[i] * (G.exponent / G.orders[i]) % G.exponent * dl[i]) % G.exponent;
            chi.exps[n] = e;
        }
        if (m == 1) chi.exps[0] = 0;
        // store with the order equal to the character's own order
        long g = chi.order;
        for (long e : chi.exps)
            if (e > 0) g = std::gcd(g, e);
        long ord = chi.order / g;
        for (auto& e : chi.exps)
            if (e > 0) e /= g;
        chi.order = std::max(ord, 1L);
        out.push_back(chi);
        size_t i = 0;
        for (; i < sel.size(); ++i) {
            if (++sel[i] < G.orders[i]) break;
            sel[i] = 0;
        }
        if (i == sel.size()) break;
        if (sel.empty()) break;
    }
    return out;
}

std::vector<DirichletCharacter> primitive_characters(long m) {
    std::vector<DirichletCharacter> out;
    for (auto& c : all_characters(m))
        if (c.conductor() == m) out.push_back(c);
    return out;
}

// ---- cyclotomic field --------------------------------------------------

static std::vector<mpz_class> cyclotomic_poly(long m) {
    // compute Phi_m by dividing x^m - 1 by prod_{d|m, d<m} Phi_d
    if (m == 1) return {-1, 1};
    std::vector<mpz_class> num(m + 1);
    num[0] = -1;
    num[m] = 1;
    for (long d = 1; d < m; ++d) {
        if (m % d) continue;
        auto phi_d = cyclotomic_poly(d);
        // exact polynomial division num /= phi_d
        std::vector<mpz_class> q(num.size() - phi_d.size() + 1);
        std::vector<mpz_class> r = num;
        for (long i = (long)q.size() - 1; i >= 0; --i) {
            q[i] = r[i + phi_d.size() - 1];  // phi_d monic
            if (q[i] == 0) continue;
            for (size_t j = 0; j < phi_d.size(); ++j) r[i + j] -= q[i] * phi_d[j];
        }
        num = q;
    }
    return num;
}

CycField::CycField(long m_) : m(m_), phi_m(cyclotomic_poly(m_)) {}

CycField::Elt CycField::from_root_power(long e) const {
    e %= m;
    if (e < 0) e += m;
    long d = deg();
    if (e < d) {
        Elt v = zero();
        v[e] = 1;
        return v;
    }
    // reduce x^e mod Phi_m by repeated shifting
    std::vector<mpq_class> poly(e + 1);
    poly[e] = 1;
    for (long i = e; i >= d; --i) {
        mpq_class c = poly[i];
        if (c == 0) continue;
        poly[i] = 0;
        for (long j = 0; j < d; ++j) poly[i - d + j] -= c * mpq_class(phi_m[j]);
    }
    poly.resize(d);
    return poly;
}

CycField::Elt CycField::mul(const Elt& a, const Elt& b) const {
    long d = deg();
    std::vector<mpq_class> poly(2 * d - 1);
    for (long i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (long j = 0; j < d; ++j)
            if (b[j] != 0) poly[i + j] += a[i] * b[j];
    }
    for (long i = 2 * d - 2; i >= d; --i) {
        mpq_class c = poly[i];
        if (c == 0) continue;
        poly[i] = 0;
        for (long j = 0; j < d; ++j) poly[i - d + j] -= c * mpq_class(phi_m[j]);
    }
    poly.resize(d);
    return poly;
}

void CycField::add_mul(Elt& acc, const Elt& a, const mpq_class& c) const {
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += a[i] * c;
}

static long moebius(long n) {
    long r = 1;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            r = -r;
        }
    if (n > 1) r = -r;
    return r;
}

static long phi_fn(long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r = r / p * (p - 1);
        }
    if (n > 1) r = r / n * (n - 1);
    return r;
}

mpq_class CycField::trace(const Elt& a) const {
    mpq_class t = 0;
    for (long j = 0; j < deg(); ++j) {
        if (a[j] == 0) continue;
        long g = std::gcd(j == 0 ? m : j, m);
        long mg = m / g;
        // Tr(zeta_m^j) = phi(m) * mu(m/g) / phi(m/g)
        mpq_class tr(phi_fn(m) * moebius(mg), phi_fn(mg));
        tr.canonicalize();
        t += a[j] * tr;
    }
    return t;
}

CycField::Elt generalized_bernoulli(const CycField& F, const DirichletCharacter& chi, long k) {
    long v = chi.modulus;
    if (F.m % chi.order) throw std::invalid_argument("field order incompatible with character");
    // B_{k,chi} = v^{k-1} sum_{a=1..v} chi(a) B_k(a/v), B_k(x) Bernoulli polynomial
    CycField::Elt out = F.zero();
    mpz_class binom;
    for (long a = 1; a <= v; ++a) {
        long e = chi(a % v);
        if (e < 0) continue;
        // B_k(a/v) = sum_j C(k,j) B_j (a/v)^{k-j}
        mpq_class bk = 0;
        for (long j = 0; j <= k; ++j) {
            mpz_bin_uiui(binom.get_mpz_t(), (unsigned long)k, (unsigned long)j);
            mpq_class x(a, v);
            x.canonicalize();
            mpq_class pw = 1;
            for (long i = 0; i < k - j; ++i) pw *= x;
            bk += mpq_class(binom) * bernoulli(j) * pw;
        }
        F.add_mul(out, F.from_root_power(e * (F.m / chi.order)), bk);
    }
    mpq_class scale = 1;
    for (long i = 0; i < k - 1; ++i) scale *= v;
    for (auto& c : out) c *= scale;
    return out;
}

std::vector<CycField::Elt> eisenstein_character_series(
    const CycField& F, long k, const DirichletCharacter& chi,
    const DirichletCharacter& psi, long t, long prec) {
    if (k < 1) throw std::invalid_argument("weight must be >= 1");
    std::vector<CycField::Elt> c((size_t)std::max(prec, 0L), F.zero());
    if (prec <= 0) return c;
    long u = chi.modulus, v = psi.modulus;
    if (u == 1) {
        // c0 = -B_{k,psi}/(2k)
        CycField::Elt b = generalized_bernoulli(F, psi, k);
        for (auto& x : b) x /= mpq_class(-2 * k);
        c[0] = b;
    }
    long su = F.m / chi.order, sv = F.m / psi.order;
    for (long n = 1; t * n < prec; ++n) {
        CycField::Elt an = F.zero();
        for (long d = 1; d <= n; ++d) {
            if (n % d) continue;
            long epsi = psi(d % v), echi = chi((n / d) % u);
            if (epsi < 0 || echi < 0) continue;
            mpz_class dk;
            mpz_ui_pow_ui(dk.get_mpz_t(), (unsigned long)d, (unsigned long)(k - 1));
            F.add_mul(an, F.mul(F.from_root_power(epsi * sv), F.from_root_power(echi * su)),
                      mpq_class(dk));
        }
        c[(size_t)(t * n)] = an;
    }
    return c;
}

std::vector<ModularForm> eisenstein_gamma1(long N, long k, const DirichletCharacter& chi,
                                           const DirichletCharacter& psi, long t, long prec) {
    if (k < 2) throw std::invalid_argument("weight-1 forms are not supported");
    long u = chi.conductor(), v = psi.conductor();
    if (chi.modulus != u || psi.modulus != v)
        throw std::invalid_argument("characters must be primitive");
    if (u * v * t > N || N % (u * v * t) != 0)
        throw std::invalid_argument("conductor*t must divide the level");
    bool even = chi.is_even() == psi.is_even();
    if (even != (k % 2 == 0)) throw std::invalid_argument("character parity mismatch");
    if (k == 2 && chi.is_trivial() && psi.is_trivial())
        throw std::invalid_argument("E_2 with trivial characters is quasi-modular");
    long ord = std::lcm(chi.order, psi.order);
    CycField F(ord);
    auto series = eisenstein_character_series(F, k, chi, psi, t, prec);
    std::vector<ModularForm> out;
    for (long j = 0; j < F.deg(); ++j) {
        CycField::Elt zj = F.from_root_power(j);
        std::vector<mpq_class> coeffs(prec);
        for (long n = 0; n < prec; ++n) coeffs[n] = F.trace(F.mul(zj, series[n]));
        QExpansion q = QExpansion::make(CoefficientRing::Q(), 0, std::move(coeffs));
        if (q.is_zero()) continue;
        out.push_back(ModularForm::make(GroupSpec::gamma1(N), k, std::move(q),
                                        Provenance::Eisenstein));
    }
    return out;
}

}  // namespace modgrade
