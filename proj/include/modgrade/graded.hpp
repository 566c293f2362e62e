// Weight-by-weight generators, relation census, and graded presentations.
#pragma once
#include "modgrade/forms.hpp"
#include <map>
#include <string>
#include <vector>

namespace modgrade {

// Exponent vectors ordered graded-lexicographically: first by total weight,
// then lexicographically with earlier variables more significant.
using Exponents = std::vector<long>;

long monomial_weight(const std::vector<long>& weights, const Exponents& e);
bool graded_lex_less(const std::vector<long>& weights, const Exponents& a, const Exponents& b);

// All exponent vectors of total weight exactly k, ascending graded-lex.
std::vector<Exponents> weight_monomials(const std::vector<long>& weights, long k);

// Homogeneous weighted polynomial; terms keyed by exponent vector.
struct WeightedPolynomial {
    CoefficientRing ring = CoefficientRing::Q();
    std::vector<long> weights;
    std::map<Exponents, mpq_class> terms;

    long degree() const;  // common weight of the terms; 0 when empty
    bool is_homogeneous() const;
    // Leading term under graded-lex (largest monomial).
    const Exponents& leading_monomial() const;
    const mpq_class& leading_coeff() const;
    // Divide by content and make the leading coefficient positive.
    void normalize_content();
};

struct GeneratorInfo {
    ModularForm form;
    long weight = 0;
    std::string name;
};

struct GradedPresentation {
    GroupSpec group;
    CoefficientRing ring = CoefficientRing::Q();
    std::vector<GeneratorInfo> generators;
    std::vector<WeightedPolynomial> relations;
    std::map<long, long> census;  // degree -> number of minimal relations
    std::vector<long> gen_weights() const;
};

struct FoundGenerators {
    // ascending weight; new generators chosen at that weight
    std::vector<std::pair<long, std::vector<ModularForm>>> by_weight;
    std::map<long, SpaceBasis> ambients;  // the full space basis used per weight
    std::vector<long> weights() const;  // flattened, ascending
};

// Weight-by-weight generator search: at each weight the module generated by
// products of previously chosen generators is completed to the full integral
// basis; completion rows (missing or non-unit Hermite pivots over the ring)
// become new generators.
FoundGenerators find_generators(GroupSpec group, CoefficientRing ring, long max_weight,
                                long prec = 0, const std::string& fixtures = "");

// Minimal relations per degree for the chosen generators, ascending degree.
// Kernel vectors are exact over the ring; the count of minimal generators of
// the relation ideal in each degree is certified with 62-bit prime ranks.
struct RelationCensus {
    std::vector<WeightedPolynomial> relations;
    std::map<long, long> census;
};
RelationCensus find_relations(const FoundGenerators& gens, GroupSpec group,
                              CoefficientRing ring, long degree_lo, long degree_hi,
                              const std::string& fixtures = "");

GradedPresentation compute_presentation(GroupSpec group, CoefficientRing ring,
                                        long gen_weight_cap, long rel_degree_cap,
                                        const std::string& fixtures = "");

// Substitute generator expansions into the polynomial (for soundness checks).
QExpansion evaluate_polynomial(const WeightedPolynomial& poly,
                               const std::vector<ModularForm>& gens, long prec);

}  // namespace modgrade
