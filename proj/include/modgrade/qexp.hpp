// Truncated q-expansions with explicit precision tracking.
#pragma once
#include "modgrade/ring.hpp"
#include <map>
#include <vector>

namespace modgrade {

// f = sum_{n >= lead} coeffs[n - lead] q^n, known through q^(prec()-1).
// Canonical: coeffs empty (zero to stated precision) or coeffs[0] != 0.
struct QExpansion {
    CoefficientRing ring = CoefficientRing::Q();
    long lead = 0;
    std::vector<mpq_class> coeffs;

    long prec() const { return lead + (long)coeffs.size(); }
    bool is_zero() const { return coeffs.empty(); }

    static QExpansion zero(CoefficientRing R, long prec);
    static QExpansion make(CoefficientRing R, long lead, std::vector<mpq_class> c);

    // Coefficient of q^n; throws if n >= prec().
    const mpq_class& coeff(long n) const;

    QExpansion change_ring(CoefficientRing R) const;
    QExpansion truncated(long new_prec) const;
    bool agrees_with(const QExpansion& g, long through_prec) const;
};

QExpansion qexp_add(const QExpansion& a, const QExpansion& b);
QExpansion qexp_sub(const QExpansion& a, const QExpansion& b);
QExpansion qexp_scalar_mul(const mpq_class& c, const QExpansion& a);
QExpansion qexp_mul(const QExpansion& a, const QExpansion& b);
QExpansion qexp_invert(const QExpansion& a);
QExpansion qexp_pow(const QExpansion& a, long e);

// min p-adic valuation over the stored nonzero coefficients; throws on zero series.
long vp_of_truncation(const QExpansion& f, long p);
QExpansion reduce_mod_p(const QExpansion& f, long p);

// prod_d eta(d z)^{r_d} as a series in q; the total leading exponent
// sum d*r_d must be divisible by 24.
QExpansion eta_product_expansion(const std::map<long, long>& r, long prec,
                                 CoefficientRing R = CoefficientRing::Z());

// Plain coefficient-vector convolution helpers (used by the Karatsuba path).
std::vector<mpq_class> convolve_school(const std::vector<mpq_class>& a,
                                       const std::vector<mpq_class>& b, long out_len);
std::vector<mpq_class> convolve_karatsuba(const std::vector<mpq_class>& a,
                                          const std::vector<mpq_class>& b, long out_len);

}  // namespace modgrade
