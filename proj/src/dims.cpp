#include "modgrade/dims.hpp"
#include <numeric>
#include <vector>

namespace modgrade {

GroupSpec GroupSpec::gamma0(long N) {
    if (N < 1) throw std::invalid_argument("level must be positive");
    if (N == 1) return level1();
    return {GroupKind::Gamma0, N};
}

GroupSpec GroupSpec::gamma1(long N) {
    if (N < 1) throw std::invalid_argument("level must be positive");
    if (N == 1) return level1();
    return {GroupKind::Gamma1, N};
}

std::string GroupSpec::name() const {
    switch (kind) {
        case GroupKind::Level1: return "SL2(Z)";
        case GroupKind::Gamma0: return "Gamma0(" + std::to_string(N) + ")";
        case GroupKind::Gamma1: return "Gamma1(" + std::to_string(N) + ")";
    }
    return "?";
}

static std::vector<std::pair<long, int>> factor(long n) {
    std::vector<std::pair<long, int>> f;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.push_back({p, e});
        }
    if (n > 1) f.push_back({n, 1});
    return f;
}

static long euler_phi(long n) {
    long r = n;
    for (auto [p, e] : factor(n)) r = r / p * (p - 1);
    return r;
}

long index_in_sl2(const GroupSpec& g) {
    switch (g.kind) {
        case GroupKind::Level1: return 1;
        case GroupKind::Gamma0: {
            long mu = g.N;
            for (auto [p, e] : factor(g.N)) mu = mu / p * (p + 1);
            return mu;
        }
        case GroupKind::Gamma1: {
            // N^2 prod (1 - 1/p^2)
            long mu = g.N * g.N;
            for (auto [p, e] : factor(g.N)) mu = mu / (p * p) * (p * p - 1);
            return mu;
        }
    }
    return 0;
}

long sturm_bound(const GroupSpec& g, long k) {
    if (k < 0) throw std::invalid_argument("negative weight");
    return k * index_in_sl2(g) / 12 + 1;
}

// elliptic point counts and cusp counts for Gamma0(N)
static long nu2_gamma0(long N) {
    if (N % 4 == 0) return 0;
    long r = 1;
    for (auto [p, e] : factor(N)) {
        if (p == 2) continue;
        r *= 1 + ((p % 4 == 1) ? 1 : -1);
    }
    return r;
}

static long nu3_gamma0(long N) {
    if (N % 9 == 0) return 0;
    long r = 1;
    for (auto [p, e] : factor(N)) {
        if (p == 3) continue;
        r *= 1 + ((p % 3 == 1) ? 1 : -1);
    }
    return r;
}

static long cusps_gamma0(long N) {
    long s = 0;
    for (long d = 1; d <= N; ++d)
        if (N % d == 0) s += euler_phi(std::gcd(d, N / d));
    return s;
}

static long cusps_gamma1(long N) {
    // valid for N >= 5 (all cusps regular)
    long s = 0;
    for (long d = 1; d <= N; ++d)
        if (N % d == 0) s += euler_phi(d) * euler_phi(N / d);
    return s / 2;
}

long genus_gamma0(long N) {
    if (N == 1) return 0;
    long mu = index_in_sl2(GroupSpec::gamma0(N));
    long twelve_g = 12 + mu - 3 * nu2_gamma0(N) - 4 * nu3_gamma0(N) - 6 * cusps_gamma0(N);
    if (twelve_g % 12 != 0) throw std::logic_error("genus formula inconsistency");
    return twelve_g / 12;
}

long genus_gamma1(long N) {
    if (N < 5) throw std::invalid_argument("Gamma1 genus formula implemented for N >= 5");
    long mu = index_in_sl2(GroupSpec::gamma1(N));
    long t24 = 24 + mu - 12 * cusps_gamma1(N);
    if (t24 % 24 != 0) throw std::logic_error("genus formula inconsistency");
    return t24 / 24;
}

static long dim_level1(long k) {
    if (k < 0 || k % 2) return 0;
    if (k % 12 == 2) return k / 12;
    return k / 12 + 1;
}

long dimension_formula(const GroupSpec& g, long k) {
    if (k == 1) throw std::invalid_argument("weight 1 unsupported");
    if (k < 0) return 0;
    if (k == 0) return 1;
    switch (g.kind) {
        case GroupKind::Level1: return dim_level1(k);
        case GroupKind::Gamma0: {
            if (k % 2) return 0;
            long gen = genus_gamma0(g.N);
            return (k - 1) * (gen - 1) + (k / 2) * cusps_gamma0(g.N) +
                   nu2_gamma0(g.N) * (k / 4) + nu3_gamma0(g.N) * (k / 3);
        }
        case GroupKind::Gamma1: {
            if (g.N < 5)
                throw std::invalid_argument("Gamma1 pipeline requires N >= 5");
            long gen = genus_gamma1(g.N);
            long eps = cusps_gamma1(g.N);
            long twice = 2 * (k - 1) * (gen - 1) + k * eps;
            if (twice % 2 != 0) throw std::logic_error("dimension formula inconsistency");
            return twice / 2;
        }
    }
    return 0;
}

long default_prec(const GroupSpec& g, long k) { return 4 * sturm_bound(g, k); }

}  // namespace modgrade
