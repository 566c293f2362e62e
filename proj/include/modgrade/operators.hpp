// Degeneracy, Atkin-Lehner tilde, trace, valuation, and filtration operators.
#pragma once
#include "modgrade/forms.hpp"

namespace modgrade {

QExpansion v_expansion(const QExpansion& f, long p);
QExpansion u_expansion(const QExpansion& f, long p);

// V: level raising, n -> pn on exponents; level-1 inputs are tagged VImage.
ModularForm v_operator(const ModularForm& f, long p);
// U: n -> coefficient a_{pn}.
ModularForm u_operator(const ModularForm& f, long p);

// tilde(f) = p^{k/2} f|W_p, computed from the form's tag. The result carries
// an explicit tag for its own tilde (p^k times f), so tilde is closed.
ModularForm tilde(const ModularForm& f, long p);

// Form arithmetic that propagates tilde tags (tilde is multiplicative and
// linear in fixed weight).
ModularForm mul_forms(const ModularForm& f, const ModularForm& g, long p_for_tags = 0);
ModularForm add_forms(const ModularForm& f, const ModularForm& g, long p_for_tags = 0);
ModularForm scalar_form(const mpq_class& c, const ModularForm& f);

// epsilon * p^{-1} (eta(z)^p / eta(pz))^2; epsilon = +1, pinned by the
// leading-coefficient congruence p * T~ = 1 (mod p).
ModularForm t_tilde_closed_form(long p, long prec);
// The sign a quad-precision complex evaluation of the involution at z = 2i
// finds for the analytically normalized slash; reported for cross-checking.
int t_tilde_sign_oracle(long p);
// The sign predicted by the closed-form multiplier exponent; agrees with the
// oracle, and both can differ from the congruence-pinned +1 when p = 3 mod 4.
int t_tilde_sign_formula(long p);

// tr(f) = f + p^{1-k/2} U_p(f|W_p); asserted to lie in M_k(SL2(Z)).
ModularForm trace_to_level1(const ModularForm& f, long p);

struct VpPair {
    long vp_f;
    long vp_tilde;
};
VpPair vp_pair(const ModularForm& f, long p);

// Smallest k' = k mod (p-1), 0 <= k' <= k, admitting a level-1 lift of F mod p.
long filtration_w_p(const ModularForm& F, long p);

}  // namespace modgrade
