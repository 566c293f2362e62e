// Congruence lifting to level 1, the E* form, the Gamma0(p) T/S
// decomposition, the weight-(p-1) witness, and the generator-weight harness.
#pragma once
#include "modgrade/forms.hpp"
#include <string>
#include <vector>

namespace modgrade {

// E_{p-1} - p^{p-1} V(E_{p-1}); weight p-1 on Gamma0(p), constant term
// 1 - p^{p-1}, congruent to 1 mod p.
ModularForm estar(long p, long prec);

// For f on Gamma0(p) with v_p(f) = 0 and v_p(tilde f) = k + a, the level-1
// form g of weight k - a(p-1) with f = g mod p (coefficients in [0, p)).
// The congruence is checked across weights by multiplying the lower-weight
// side with powers of E_{p-1} and comparing at the Gamma0(p) Sturm bound.
ModularForm congruent_level1_form(const ModularForm& f, long p);

// p * T~ = 1 (mod p) at the weight-(p-1) Sturm bound.
bool verify_ptcor(long p, long prec);

// f = sum_{i=1}^{a} T^i V(f_i) + f0 with each f_i of level 1 and weight
// k - i(p-1), and v_p(tilde f0) >= 0.
struct Decomposition {
    long p = 0;
    long a = 0;
    ModularForm f0;
    std::vector<ModularForm> fs;  // fs[i-1] = f_i, weight k - i(p-1)
};
Decomposition decompose_gamma0p(const ModularForm& f, long p);

// Why weight p-1 is unavoidable over Z: T has (v_p(T), v_p(T~)) = (0, -1)
// while every integral form of weight <= p-3 keeps v_p(tilde f) >= v_p(f).
struct GenZWitness {
    long p = 0;
    long vp_t = 0;
    long vp_t_tilde = 0;
    long forms_checked = 0;   // fixture forms of weight <= p-3
    bool closure_holds = false;
};
GenZWitness genz_witness(long p, const std::string& fixtures = "");

// Generator weights of M(Gamma0(p), Z) up to kmax, their membership in
// {2, 4, 6, p-1}, and the analogous weights for the subalgebra
// S = {f : v_p(tilde f) >= 0}.
struct ConjectureReport {
    long p = 0;
    std::vector<long> weights;
    bool weights_in_set = false;
    bool one_top_weight = false;
    std::vector<long> s_weights;
    long s_max_weight = 0;
};
ConjectureReport conjecture_harness(long p, long kmax, const std::string& fixtures = "");

}  // namespace modgrade
