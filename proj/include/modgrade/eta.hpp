// Eta quotients on Gamma0(N): Ligozat admissibility and the T-form.
#pragma once
#include "modgrade/forms.hpp"
#include <map>

namespace modgrade {

// Order of vanishing of prod eta(dz)^{r_d} at the cusp 1/c of Gamma0(N),
// scaled by 24 (returned as an exact rational times 1/24 avoided: exact mpq).
mpq_class eta_cusp_order(long N, const std::map<long, long>& r, long c);

// Validates the Ligozat criteria (integral even weight, trivial character,
// congruence conditions, nonnegative order at every cusp) and builds the form.
ModularForm eta_quotient_form(long N, const std::map<long, long>& r, long prec);

// T = (eta(pz)^p / eta(z))^2 of weight p-1 on Gamma0(p), lead (p^2-1)/12,
// with its tilde image attached as a closed eta form.
ModularForm t_form(long p, long prec);

}  // namespace modgrade
