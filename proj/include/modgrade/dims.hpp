// Group indices, Sturm bounds, and dimension formulas for M_k.
#pragma once
#include <string>
#include <stdexcept>

namespace modgrade {

enum class GroupKind { Level1, Gamma0, Gamma1 };

struct GroupSpec {
    GroupKind kind = GroupKind::Level1;
    long N = 1;

    static GroupSpec level1() { return {GroupKind::Level1, 1}; }
    static GroupSpec gamma0(long N);
    static GroupSpec gamma1(long N);
    bool operator==(const GroupSpec&) const = default;
    std::string name() const;
};

// Index of the group in SL2(Z).
long index_in_sl2(const GroupSpec& g);

// floor(k * index / 12) + 1: agreement to this many coefficients implies equality.
long sturm_bound(const GroupSpec& g, long k);

// dim_Q M_k(group, Q); k = 1 unsupported, odd k on Gamma0/level 1 gives 0.
long dimension_formula(const GroupSpec& g, long k);

long genus_gamma0(long N);
long genus_gamma1(long N);

// Default working precision for space construction at weight k.
long default_prec(const GroupSpec& g, long k);

}  // namespace modgrade
