// Line-oriented JSON space and presentation files.
#pragma once
#include "modgrade/forms.hpp"
#include "modgrade/graded.hpp"
#include <stdexcept>
#include <string>

namespace modgrade {

struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Write a basis: one header line, then one JSON object per form. Rationals
// are serialized as "a/b" strings, integers in decimal.
void write_space_file(const SpaceBasis& basis, const std::string& path);

// Read and validate: schema, dimension against the formula, integrality for
// integral rings, precision at least the Sturm bound; the lattice is
// saturated and Hermite-canonicalized on load, with Atkin-Lehner images
// carried through the same transformations.
SpaceBasis ingest_basis(const std::string& path, CoefficientRing ring);

void write_presentation_file(const GradedPresentation& pres, const std::string& path);
GradedPresentation read_presentation_file(const std::string& path);

// Serialization helpers shared by the CLI.
std::string ring_token(const CoefficientRing& R);
CoefficientRing parse_ring_token(const std::string& tok, long level);

}  // namespace modgrade
