#include "modgrade/eta.hpp"
#include "modgrade/operators.hpp"
#include <numeric>
#include <sstream>

namespace modgrade {

mpq_class eta_cusp_order(long N, const std::map<long, long>& r, long c) {
    // (N/24) sum_d gcd(c,d)^2 r_d / (gcd(c, N/c) c d)
    mpq_class v = 0;
    for (auto [d, rd] : r) {
        long g = std::gcd(c, d);
        mpq_class term(g * g * rd, std::gcd(c, N / c) * c * d);
        term.canonicalize();
        v += term;
    }
    mpq_class scale(N, 24);
    scale.canonicalize();
    return v * scale;
}

static bool is_rational_square(const mpq_class& x) {
    if (x < 0) return false;
    return mpz_perfect_square_p(x.get_num().get_mpz_t()) &&
           mpz_perfect_square_p(x.get_den().get_mpz_t());
}

ModularForm eta_quotient_form(long N, const std::map<long, long>& r, long prec) {
    if (N < 1) throw std::invalid_argument("level must be positive");
    long sum_r = 0, sum_dr = 0, sum_ndr = 0;
    mpq_class s = 1;
    for (auto [d, rd] : r) {
        if (d <= 0 || N % d != 0)
            throw std::invalid_argument("eta argument " + std::to_string(d) +
                                        " does not divide the level");
        sum_r += rd;
        sum_dr += d * rd;
        sum_ndr += (N / d) * rd;
        mpq_class dq(d);
        for (long i = 0; i < std::abs(rd); ++i) s *= (rd > 0) ? dq : 1 / dq;
    }
    if (sum_r % 2 != 0) throw std::invalid_argument("fractional weight: sum r_d is odd");
    long k = sum_r / 2;
    if (k % 2 != 0)
        throw std::invalid_argument("odd weight eta quotient has nontrivial character");
    if (sum_dr % 24 != 0)
        throw std::invalid_argument("sum d*r_d = " + std::to_string(sum_dr) +
                                    " not divisible by 24");
    if (sum_ndr % 24 != 0)
        throw std::invalid_argument("sum (N/d)*r_d = " + std::to_string(sum_ndr) +
                                    " not divisible by 24");
    if (!is_rational_square(s))
        throw std::invalid_argument("character is not trivial: prod d^{r_d} is not a square");
    std::ostringstream bad;
    for (long c = 1; c <= N; ++c) {
        if (N % c) continue;
        mpq_class v = eta_cusp_order(N, r, c);
        if (v < 0) bad << " cusp 1/" << c << ": order " << v.get_str() << ";";
    }
    if (!bad.str().empty())
        throw std::invalid_argument("eta quotient has poles:" + bad.str());
    QExpansion e = eta_product_expansion(r, prec, CoefficientRing::Z());
    return ModularForm::make(GroupSpec::gamma0(N), k, std::move(e), Provenance::Eta);
}

ModularForm t_form(long p, long prec) {
    if (p < 5) throw std::invalid_argument("T-form needs p >= 5");
    ModularForm T = eta_quotient_form(p, {{1, -2}, {p, 2 * p}}, prec);
    if (T.expansion.lead != (p * p - 1) / 12) throw std::logic_error("T-form lead mismatch");
    ModularForm tt = t_tilde_closed_form(p, prec);
    T.al = ALTag::eta_closed(tt.expansion);
    return T;
}

}  // namespace modgrade
