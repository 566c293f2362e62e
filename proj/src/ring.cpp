#include "modgrade/ring.hpp"

namespace modgrade {

bool CoefficientRing::contains(const mpq_class& c) const {
    switch (kind) {
        case RingKind::QQ: return true;
        case RingKind::ZZ: return c.get_den() == 1;
        case RingKind::ZInvN: {
            // denominator must divide a power of param
            mpz_class d = c.get_den();
            if (d == 1) return true;
            mpz_class N(param), g;
            while (d != 1) {
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), N.get_mpz_t());
                if (g == 1) return false;
                mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), g.get_mpz_t());
            }
            return true;
        }
        case RingKind::Fp: {
            // p-integral rationals represent F_p elements
            return mpz_divisible_ui_p(c.get_den().get_mpz_t(), (unsigned long)param) == 0;
        }
    }
    return false;
}

mpq_class CoefficientRing::normalize(const mpq_class& c) const {
    if (!contains(c))
        throw std::domain_error("coefficient " + c.get_str() + " not in ring " + name());
    if (kind == RingKind::Fp) return mpq_class(mod_p(c, param));
    return c;
}

std::string CoefficientRing::name() const {
    switch (kind) {
        case RingKind::ZZ: return "Z";
        case RingKind::QQ: return "Q";
        case RingKind::ZInvN: return "Z[1/" + std::to_string(param) + "]";
        case RingKind::Fp: return "F_" + std::to_string(param);
    }
    return "?";
}

long padic_val(const mpq_class& c, long p) {
    if (c == 0) throw std::domain_error("p-adic valuation of 0");
    mpz_class pp(p);
    long v = 0;
    mpz_class n = c.get_num();
    while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
        mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
        ++v;
    }
    if (v > 0) return v;
    mpz_class d = c.get_den();
    while (mpz_divisible_p(d.get_mpz_t(), pp.get_mpz_t())) {
        mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), pp.get_mpz_t());
        --v;
    }
    return v;
}

mpz_class mod_p(const mpq_class& c, long p) {
    mpz_class pp(p), num = c.get_num() % pp, den = c.get_den() % pp, inv;
    if (num < 0) num += pp;
    if (den < 0) den += pp;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t()) == 0)
        throw std::domain_error("denominator not invertible mod p");
    return (num * inv) % pp;
}

}  // namespace modgrade
