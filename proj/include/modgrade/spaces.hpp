// Assembly of canonical integral bases of M_k and the process-wide space cache.
#pragma once
#include "modgrade/eisenstein.hpp"
#include "modgrade/forms.hpp"
#include <stdexcept>
#include <string>

namespace modgrade {

struct SpanningError : std::runtime_error {
    long achieved = 0, required = 0;
    SpanningError(const std::string& msg, long a, long r)
        : std::runtime_error(msg), achieved(a), required(r) {}
};

// Rational coordinates of f in the basis, solved on coefficients up to the
// Sturm bound; throws if f is outside the span or precision is insufficient.
std::vector<mpq_class> express_in_basis(const QExpansion& f, const SpaceBasis& basis);

// Canonicalize a spanning candidate set: saturate the coefficient lattice,
// put it in Hermite form, and carry Atkin-Lehner images (when every candidate
// has one) through the same linear maps. Throws SpanningError when the
// candidates do not reach dimension_formula(group, k).
SpaceBasis canonicalize_candidates(GroupSpec group, long k, CoefficientRing ring,
                                   const std::vector<ModularForm>& cands, long prec,
                                   BasisOrigin origin, long p_for_tags = 0);

// Built-in spanning: Eisenstein families, products of two lower-weight
// Eisenstein forms, eta quotients, V-images. Throws SpanningError with a
// fixture diagnosis when the candidates fall short of the dimension.
SpaceBasis span_space(GroupSpec group, long k, CoefficientRing ring, long prec);

// The raw candidate list span_space draws from (before canonicalization).
std::vector<ModularForm> builtin_candidates(GroupSpec group, long k, long prec);

// Fixture file name for a space, e.g. "gamma1_11_k2.json".
std::string fixture_file_name(GroupSpec group, long k);
// Fixture directory resolution: explicit dir, else MODGRADE_FIXTURES, else "fixtures".
std::string fixture_dir(const std::string& override_dir = "");

// Cached access: fixture file when present, else built-in spanning.
// prec = 0 means default_prec(group, k). Safe for concurrent readers.
const SpaceBasis& get_space(GroupSpec group, long k, CoefficientRing ring, long prec = 0,
                            const std::string& fixtures = "");
void clear_space_cache();

}  // namespace modgrade
