// Bernoulli numbers, level-1 Eisenstein series, Victor Miller bases,
// and rationalized Eisenstein series with characters for Gamma1(N).
#pragma once
#include "modgrade/forms.hpp"
#include <map>

namespace modgrade {

mpq_class bernoulli(long k);

// 1 - (2k/B_k) sum sigma_{k-1}(n) q^n; k even >= 2 (k = 2 is quasi-modular,
// only valid inside level-raising combinations).
QExpansion eisenstein_level1_series(long k, long prec);
ModularForm eisenstein_level1(long k, long prec);

// E_2(z) - t E_2(tz), a genuine form on Gamma0(t).
QExpansion e2_level_combination(long t, long prec);

// Victor Miller basis of M_k(SL2(Z)): f_i = q^i + O(q^d).
SpaceBasis level1_vm_basis(long k, CoefficientRing ring, long prec);

// ---- Dirichlet characters with cyclotomic values -----------------------

// chi(n) recorded as the exponent e with chi(n) = zeta_order^e, or -1 when
// gcd(n, modulus) > 1.
struct DirichletCharacter {
    long modulus = 1;
    long order = 1;
    std::vector<long> exps;  // index n in [0, modulus): exponent, or -1

    long operator()(long n) const {
        n %= modulus;
        if (n < 0) n += modulus;
        return exps[n];
    }
    bool is_trivial() const;
    bool is_even() const;  // chi(-1) = +1
    long conductor() const;
    DirichletCharacter inverse() const;
};

// All characters mod m (m >= 1), deterministic order; exps on a common order
// equal to the exponent of (Z/m)^*.
std::vector<DirichletCharacter> all_characters(long m);
// The primitive ones among all_characters(m).
std::vector<DirichletCharacter> primitive_characters(long m);

// Coefficients in Q(zeta_m): vector of rationals over the power basis
// 1, zeta, ..., zeta^{phi(m)-1}, reduced mod the m-th cyclotomic polynomial.
struct CycField {
    long m;                        // root order
    std::vector<mpz_class> phi_m;  // cyclotomic polynomial coefficients, monic
    long deg() const { return (long)phi_m.size() - 1; }
    explicit CycField(long m_);
    using Elt = std::vector<mpq_class>;
    Elt zero() const { return Elt(deg()); }
    Elt from_root_power(long e) const;  // zeta^e reduced
    Elt mul(const Elt& a, const Elt& b) const;
    void add_mul(Elt& acc, const Elt& a, const mpq_class& c) const;
    mpq_class trace(const Elt& a) const;  // Tr_{Q(zeta_m)/Q}
};

// Generalized Bernoulli number B_{k,chi} as an element of Q(zeta_ord(chi))
// embedded in F (F.m must be a multiple of the character order).
CycField::Elt generalized_bernoulli(const CycField& F, const DirichletCharacter& chi, long k);

// The classical E_k^{chi,psi,t} q-expansion with cyclotomic coefficients:
// c0 + sum_n (sum_{d|n} psi(d) chi(n/d) d^{k-1}) q^{tn}; chi, psi primitive.
// Weight k >= 2, chi*psi(-1) = (-1)^k required.
std::vector<CycField::Elt> eisenstein_character_series(
    const CycField& F, long k, const DirichletCharacter& chi,
    const DirichletCharacter& psi, long t, long prec);

// Rational Galois traces tr(zeta^j * E_k^{chi,psi,t}) for j = 0..deg-1,
// as forms on Gamma1(N); weight-1 requests are rejected.
std::vector<ModularForm> eisenstein_gamma1(long N, long k, const DirichletCharacter& chi,
                                           const DirichletCharacter& psi, long t, long prec);

}  // namespace modgrade
