// Buchberger bases for weighted-homogeneous relation ideals: classical
// interreduced monic bases over the field rings, and strong bases (S- and
// gcd-polynomials) over the integral rings, where reduction to zero decides
// ideal membership.
#pragma once
#include "modgrade/graded.hpp"

namespace modgrade {

// Normal form of f against G (shared ring and weights). Over a field no term
// of the result is divisible by a leading term of G; over an integral ring
// coefficients are additionally reduced modulo the leading coefficients
// (strong reduction), so membership in the span of a strong basis gives 0.
WeightedPolynomial reduce(const WeightedPolynomial& f, const std::vector<WeightedPolynomial>& G);

// Buchberger over Q or F_p; output monic and interreduced. A positive
// degree_cap truncates the computation: S-pairs whose lcm exceeds the cap are
// skipped, which for homogeneous inputs returns the basis of the ideal in
// degrees <= cap. degree_cap = 0 means the maximum input degree.
std::vector<WeightedPolynomial> buchberger_field(std::vector<WeightedPolynomial> G,
                                                 long degree_cap = 0);

// Strong basis over Z or Z[1/N] (inputs are unit-scaled to primitive integer
// polynomials; a strong basis over Z is one over Z[1/N] a fortiori). Both
// S-polynomials and gcd-polynomials within the cap reduce to zero.
std::vector<WeightedPolynomial> strong_gb_euclidean(std::vector<WeightedPolynomial> G,
                                                    long degree_cap = 0);

}  // namespace modgrade
