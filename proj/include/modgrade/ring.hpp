// Coefficient rings for q-expansions: Z, Z[1/N], Q, F_p.
#pragma once
#include <gmpxx.h>
#include <string>
#include <stdexcept>

namespace modgrade {

enum class RingKind { ZZ, ZInvN, QQ, Fp };

struct CoefficientRing {
    RingKind kind = RingKind::QQ;
    long param = 0;  // the N of Z[1/N], or the p of F_p

    static CoefficientRing Z() { return {RingKind::ZZ, 0}; }
    static CoefficientRing Q() { return {RingKind::QQ, 0}; }
    static CoefficientRing ZInv(long N) {
        if (N <= 0) throw std::invalid_argument("Z[1/N] needs N >= 1");
        return {RingKind::ZInvN, N};
    }
    static CoefficientRing GF(long p) {
        if (p < 2) throw std::invalid_argument("F_p needs a prime p");
        return {RingKind::Fp, p};
    }

    bool operator==(const CoefficientRing&) const = default;

    // True if the canonical rational c lies in this ring.
    bool contains(const mpq_class& c) const;
    // Ring-specific normalization (reduces mod p for F_p); throws on non-membership.
    mpq_class normalize(const mpq_class& c) const;

    bool is_field() const { return kind == RingKind::QQ || kind == RingKind::Fp; }
    std::string name() const;
};

// v_p of a nonzero rational (may be negative); throws on zero.
long padic_val(const mpq_class& c, long p);

// Representative in [0, p) of a rational with p-integral denominator.
mpz_class mod_p(const mpq_class& c, long p);

}  // namespace modgrade
