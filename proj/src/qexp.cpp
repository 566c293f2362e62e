#include "modgrade/qexp.hpp"
#include <algorithm>

namespace modgrade {

static const mpq_class kZero = 0;

QExpansion QExpansion::zero(CoefficientRing R, long prec) {
    QExpansion f;
    f.ring = R;
    f.lead = prec;
    return f;
}

QExpansion QExpansion::make(CoefficientRing R, long lead, std::vector<mpq_class> c) {
    QExpansion f;
    f.ring = R;
    f.lead = lead;
    for (auto& x : c) x = R.normalize(x);
    size_t i = 0;
    while (i < c.size() && c[i] == 0) ++i;
    f.lead += (long)i;
    c.erase(c.begin(), c.begin() + i);
    f.coeffs = std::move(c);
    return f;
}

const mpq_class& QExpansion::coeff(long n) const {
    if (n >= prec())
        throw std::out_of_range("coefficient q^" + std::to_string(n) +
                                " beyond precision " + std::to_string(prec()));
    if (n < lead) return kZero;
    return coeffs[n - lead];
}

QExpansion QExpansion::change_ring(CoefficientRing R) const {
    return make(R, lead, coeffs);
}

QExpansion QExpansion::truncated(long new_prec) const {
    if (new_prec > prec())
        throw std::invalid_argument("cannot extend precision by truncation");
    if (new_prec <= lead) return zero(ring, new_prec);
    std::vector<mpq_class> c(coeffs.begin(), coeffs.begin() + (new_prec - lead));
    return make(ring, lead, std::move(c));
}

bool QExpansion::agrees_with(const QExpansion& g, long through_prec) const {
    if (through_prec > prec() || through_prec > g.prec())
        throw std::invalid_argument("agreement check beyond known precision");
    for (long n = std::min(lead, g.lead); n < through_prec; ++n)
        if (coeff(n) != g.coeff(n)) return false;
    return true;
}

static void require_same_ring(const QExpansion& a, const QExpansion& b) {
    if (!(a.ring == b.ring))
        throw std::invalid_argument("ring mismatch: " + a.ring.name() + " vs " + b.ring.name());
}

QExpansion qexp_add(const QExpansion& a, const QExpansion& b) {
    require_same_ring(a, b);
    long P = std::min(a.prec(), b.prec());
    long l = std::min(a.lead, b.lead);
    if (l >= P) return QExpansion::zero(a.ring, P);
    std::vector<mpq_class> c(P - l);
    for (long n = l; n < P; ++n) {
        if (n >= a.lead && n < a.prec()) c[n - l] += a.coeffs[n - a.lead];
        if (n >= b.lead && n < b.prec()) c[n - l] += b.coeffs[n - b.lead];
    }
    return QExpansion::make(a.ring, l, std::move(c));
}

QExpansion qexp_scalar_mul(const mpq_class& s, const QExpansion& a) {
    if (s == 0) return QExpansion::zero(a.ring, a.prec());
    std::vector<mpq_class> c(a.coeffs);
    for (auto& x : c) x *= s;
    return QExpansion::make(a.ring, a.lead, std::move(c));
}

QExpansion qexp_sub(const QExpansion& a, const QExpansion& b) {
    return qexp_add(a, qexp_scalar_mul(-1, b));
}

std::vector<mpq_class> convolve_school(const std::vector<mpq_class>& a,
                                       const std::vector<mpq_class>& b, long out_len) {
    std::vector<mpq_class> c(out_len);
    mpq_class t;
    for (size_t i = 0; i < a.size() && (long)i < out_len; ++i) {
        if (a[i] == 0) continue;
        long jmax = std::min((long)b.size(), out_len - (long)i);
        for (long j = 0; j < jmax; ++j) {
            t = a[i] * b[j];
            c[i + j] += t;
        }
    }
    return c;
}

static std::vector<mpq_class> kara_rec(const std::vector<mpq_class>& a,
                                       const std::vector<mpq_class>& b) {
    size_t n = std::max(a.size(), b.size());
    if (n <= 64 || a.size() <= 1 || b.size() <= 1)
        return convolve_school(a, b, (long)(a.size() + b.size()) - 1);
    size_t h = (n + 1) / 2;
    auto lo = [&](const std::vector<mpq_class>& v) {
        return std::vector<mpq_class>(v.begin(), v.begin() + std::min(h, v.size()));
    };
    auto hi = [&](const std::vector<mpq_class>& v) {
        if (v.size() <= h) return std::vector<mpq_class>{mpq_class(0)};
        return std::vector<mpq_class>(v.begin() + h, v.end());
    };
    std::vector<mpq_class> a0 = lo(a), a1 = hi(a), b0 = lo(b), b1 = hi(b);
    std::vector<mpq_class> z0 = kara_rec(a0, b0), z2 = kara_rec(a1, b1);
    std::vector<mpq_class> sa(std::max(a0.size(), a1.size())), sb(std::max(b0.size(), b1.size()));
    for (size_t i = 0; i < sa.size(); ++i) {
        if (i < a0.size()) sa[i] += a0[i];
        if (i < a1.size()) sa[i] += a1[i];
    }
    for (size_t i = 0; i < sb.size(); ++i) {
        if (i < b0.size()) sb[i] += b0[i];
        if (i < b1.size()) sb[i] += b1[i];
    }
    std::vector<mpq_class> z1 = kara_rec(sa, sb);
    for (size_t i = 0; i < z1.size(); ++i) {
        if (i < z0.size()) z1[i] -= z0[i];
        if (i < z2.size()) z1[i] -= z2[i];
    }
    std::vector<mpq_class> c(a.size() + b.size() - 1);
    for (size_t i = 0; i < z0.size() && i < c.size(); ++i) c[i] += z0[i];
    for (size_t i = 0; i < z1.size(); ++i)
        if (i + h < c.size()) c[i + h] += z1[i];
    for (size_t i = 0; i < z2.size(); ++i)
        if (i + 2 * h < c.size()) c[i + 2 * h] += z2[i];
    return c;
}

std::vector<mpq_class> convolve_karatsuba(const std::vector<mpq_class>& a,
                                          const std::vector<mpq_class>& b, long out_len) {
    std::vector<mpq_class> full = kara_rec(a, b);
    full.resize(out_len);
    return full;
}

QExpansion qexp_mul(const QExpansion& a, const QExpansion& b) {
    require_same_ring(a, b);
    long P = std::min(a.prec() + b.lead, b.prec() + a.lead);
    if (a.is_zero() || b.is_zero()) return QExpansion::zero(a.ring, P);
    long l = a.lead + b.lead;
    long out_len = P - l;
    std::vector<mpq_class> c;
    if (std::min(a.coeffs.size(), b.coeffs.size()) > 2048)
        c = convolve_karatsuba(a.coeffs, b.coeffs, out_len);
    else
        c = convolve_school(a.coeffs, b.coeffs, out_len);
    return QExpansion::make(a.ring, l, std::move(c));
}

static bool is_unit_in(const CoefficientRing& R, const mpq_class& c) {
    if (c == 0) return false;
    switch (R.kind) {
        case RingKind::QQ:
        case RingKind::Fp: return true;
        case RingKind::ZZ: return c == 1 || c == -1;
        case RingKind::ZInvN: return R.contains(1 / c) && R.contains(c);
    }
    return false;
}

QExpansion qexp_invert(const QExpansion& a) {
    if (a.is_zero()) throw std::domain_error("cannot invert the zero series");
    if (!is_unit_in(a.ring, a.coeffs[0]))
        throw std::domain_error("leading coefficient " + a.coeffs[0].get_str() +
                                " is not a unit in " + a.ring.name());
    size_t len = a.coeffs.size();
    std::vector<mpq_class> b(len);
    mpq_class c0inv = 1 / a.coeffs[0];
    b[0] = c0inv;
    mpq_class s, t;
    for (size_t k = 1; k < len; ++k) {
        s = 0;
        for (size_t j = 1; j <= k; ++j) {
            if (a.coeffs[j] == 0) continue;
            t = a.coeffs[j] * b[k - j];
            s += t;
        }
        b[k] = -c0inv * s;
    }
    return QExpansion::make(a.ring, -a.lead, std::move(b));
}

QExpansion qexp_pow(const QExpansion& a, long e) {
    if (e < 0) return qexp_pow(qexp_invert(a), -e);
    if (e == 0) {
        // f^0 = 1 exactly; carry the operand's absolute precision
        long len = std::max(a.prec(), 1L);
        std::vector<mpq_class> c(len);
        c[0] = 1;
        return QExpansion::make(a.ring, 0, std::move(c));
    }
    QExpansion result = a, base = a;
    long bits = e;
    bool have = false;
    while (bits > 0) {
        if (bits & 1) {
            result = have ? qexp_mul(result, base) : base;
            have = true;
        }
        bits >>= 1;
        if (bits) base = qexp_mul(base, base);
    }
    return result;
}

long vp_of_truncation(const QExpansion& f, long p) {
    if (f.is_zero()) throw std::domain_error("valuation of zero truncation");
    bool any = false;
    long v = 0;
    for (const auto& c : f.coeffs) {
        if (c == 0) continue;
        long w = padic_val(c, p);
        if (!any || w < v) v = w;
        any = true;
    }
    if (!any) throw std::domain_error("valuation of zero truncation");
    return v;
}

QExpansion reduce_mod_p(const QExpansion& f, long p) {
    return f.change_ring(CoefficientRing::GF(p));
}

// prod_{n>=1}(1 - q^{dn}) via the pentagonal number theorem, relative length len.
static QExpansion euler_factor(long d, long len, CoefficientRing R) {
    std::vector<mpq_class> c(len);
    if (len > 0) c[0] = 1;
    for (long k = 1;; ++k) {
        long e1 = d * k * (3 * k - 1) / 2;
        long e2 = d * k * (3 * k + 1) / 2;
        if (e1 >= len && e2 >= len) break;
        mpq_class sign = (k % 2) ? -1 : 1;
        if (e1 < len) c[e1] += sign;
        if (e2 < len) c[e2] += sign;
    }
    return QExpansion::make(R, 0, std::move(c));
}

QExpansion eta_product_expansion(const std::map<long, long>& r, long prec,
                                 CoefficientRing R) {
    long num = 0;
    for (auto [d, rd] : r) {
        if (d <= 0) throw std::invalid_argument("eta argument multiplier must be positive");
        num += d * rd;
    }
    if (num % 24 != 0)
        throw std::invalid_argument("eta product leading exponent is not integral");
    long s = num / 24;
    long len = prec - s;
    if (len <= 0) return QExpansion::zero(R, prec);
    std::vector<mpq_class> one(len);
    one[0] = 1;
    QExpansion acc = QExpansion::make(R, 0, std::move(one));
    for (auto [d, rd] : r) {
        if (rd == 0) continue;
        QExpansion f = euler_factor(d, len, R);
        acc = qexp_mul(acc, qexp_pow(f, rd));
    }
    acc.lead += s;
    return acc;
}

}  // namespace modgrade
