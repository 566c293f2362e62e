#include "modgrade/groebner.hpp"
#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace modgrade {

namespace {

bool divides(const Exponents& a, const Exponents& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponents expsub(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Exponents explcm(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

bool field_ring(const CoefficientRing& r) { return r.is_field(); }

mpq_class norm_coeff(const CoefficientRing& r, const mpq_class& c) {
    if (r.kind != RingKind::Fp) return c;
    if (c.get_den() != 1) throw std::logic_error("fractional coefficient over F_p");
    mpz_class m;
    mpz_mod(m.get_mpz_t(), c.get_num_mpz_t(), mpz_class(r.param).get_mpz_t());
    return mpq_class(m);
}

mpq_class coeff_div(const CoefficientRing& r, const mpq_class& a, const mpq_class& b) {
    if (r.kind != RingKind::Fp) return a / b;
    mpz_class inv, p(r.param);
    if (mpz_invert(inv.get_mpz_t(), b.get_num_mpz_t(), p.get_mpz_t()) == 0)
        throw std::logic_error("non-invertible leading coefficient over F_p");
    return norm_coeff(r, mpq_class(a.get_num() * inv));
}

// f -= c * x^shift * g
void axpy(WeightedPolynomial& f, const mpq_class& c, const Exponents& shift,
          const WeightedPolynomial& g) {
    for (const auto& [m, gc] : g.terms) {
        Exponents t(m.size());
        for (size_t i = 0; i < m.size(); ++i) t[i] = m[i] + shift[i];
        auto it = f.terms.find(t);
        mpq_class v = norm_coeff(f.ring, (it == f.terms.end() ? mpq_class(0) : it->second) - c * gc);
        if (v == 0) {
            if (it != f.terms.end()) f.terms.erase(it);
        } else if (it != f.terms.end()) {
            it->second = v;
        } else {
            f.terms.emplace(std::move(t), v);
        }
    }
}

struct Basis {
    CoefficientRing ring;
    std::vector<long> weights;
    std::vector<WeightedPolynomial> elts;
    std::vector<Exponents> lts;
    std::vector<mpq_class> lcs;
};

// One strong-reduction pass on the term at monomial m; returns true if the
// term changed. Over a field the term is eliminated outright.
bool reduce_term(WeightedPolynomial& f, const Basis& B, const Exponents& m) {
    mpq_class c = f.terms.at(m);
    for (size_t i = 0; i < B.elts.size(); ++i) {
        if (!divides(B.lts[i], m)) continue;
        mpq_class q;
        if (field_ring(B.ring)) {
            q = coeff_div(B.ring, c, B.lcs[i]);
        } else {
            // floor division: remainder in [0, lc)
            mpz_class fq;
            mpz_fdiv_q(fq.get_mpz_t(), c.get_num_mpz_t(), B.lcs[i].get_num_mpz_t());
            if (fq == 0) continue;
            q = mpq_class(fq);
        }
        axpy(f, q, expsub(m, B.lts[i]), B.elts[i]);
        return true;
    }
    return false;
}

WeightedPolynomial reduce_full(WeightedPolynomial f, const Basis& B) {
    // scan terms from the graded-lex top down; a reduction can only introduce
    // terms strictly below the one rewritten
    while (true) {
        std::vector<Exponents> order;
        order.reserve(f.terms.size());
        for (const auto& [m, c] : f.terms) order.push_back(m);
        std::sort(order.begin(), order.end(), [&](const Exponents& a, const Exponents& b) {
            return graded_lex_less(B.weights, b, a);
        });
        bool changed = false;
        for (const auto& m : order) {
            if (!f.terms.count(m)) continue;
            while (f.terms.count(m) && reduce_term(f, B, m)) changed = true;
        }
        if (!changed) return f;
    }
}

void make_primitive(WeightedPolynomial& g) {
    g.normalize_content();
}

void make_monic(WeightedPolynomial& g) {
    if (g.terms.empty()) return;
    mpq_class lc = g.leading_coeff();
    for (auto& [m, c] : g.terms) c = norm_coeff(g.ring, coeff_div(g.ring, c, lc));
}

struct PairQueue {
    // (lcm degree, i, j) in normal strategy order
    std::set<std::tuple<long, long, long, int>> q;  // kind 0 = S-pair, 1 = gcd-pair
};

std::vector<WeightedPolynomial> buchberger_impl(std::vector<WeightedPolynomial> G0,
                                                long degree_cap, bool euclidean) {
    std::vector<WeightedPolynomial> in;
    for (auto& g : G0)
        if (!g.terms.empty()) in.push_back(std::move(g));
    if (in.empty()) return {};
    Basis B;
    B.ring = in[0].ring;
    B.weights = in[0].weights;
    long cap = degree_cap;
    for (const auto& g : in) cap = std::max(cap, g.degree());

    PairQueue pq;
    auto push_elt = [&](WeightedPolynomial g) {
        if (euclidean)
            make_primitive(g);
        else
            make_monic(g);
        long j = (long)B.elts.size();
        Exponents lj = g.leading_monomial();
        for (long i = 0; i < j; ++i) {
            Exponents L = explcm(B.lts[(size_t)i], lj);
            bool coprime = true;
            for (size_t v = 0; v < L.size(); ++v)
                if (B.lts[(size_t)i][v] > 0 && lj[v] > 0) coprime = false;
            long dl = monomial_weight(B.weights, L);
            if (dl <= cap && !coprime) pq.q.insert({dl, i, j, 0});
            if (euclidean) {
                // gcd-pairs matter whenever neither leading coefficient
                // divides the other; degree of the pair is the lcm degree
                const mpq_class &a = B.lcs[(size_t)i], &b = g.leading_coeff();
                if (!mpz_divisible_p(b.get_num_mpz_t(), a.get_num_mpz_t()) &&
                    !mpz_divisible_p(a.get_num_mpz_t(), b.get_num_mpz_t()) && dl <= cap)
                    pq.q.insert({dl, i, j, 1});
            }
        }
        B.lts.push_back(lj);
        B.lcs.push_back(g.leading_coeff());
        B.elts.push_back(std::move(g));
    };

    std::sort(in.begin(), in.end(), [&](const WeightedPolynomial& a, const WeightedPolynomial& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return graded_lex_less(B.weights, a.leading_monomial(), b.leading_monomial());
    });
    for (auto& g : in) push_elt(std::move(g));

    while (!pq.q.empty()) {
        auto [dl, i, j, kind] = *pq.q.begin();
        pq.q.erase(pq.q.begin());
        const auto &fi = B.elts[(size_t)i], &fj = B.elts[(size_t)j];
        Exponents L = explcm(B.lts[(size_t)i], B.lts[(size_t)j]);
        WeightedPolynomial h;
        h.ring = B.ring;
        h.weights = B.weights;
        if (kind == 0) {
            mpq_class ci, cj;
            if (euclidean) {
                mpz_class l;
                mpz_lcm(l.get_mpz_t(), B.lcs[(size_t)i].get_num_mpz_t(),
                        B.lcs[(size_t)j].get_num_mpz_t());
                ci = mpq_class(l) / B.lcs[(size_t)i];
                cj = mpq_class(l) / B.lcs[(size_t)j];
            } else {
                ci = coeff_div(B.ring, mpq_class(1), B.lcs[(size_t)i]);
                cj = coeff_div(B.ring, mpq_class(1), B.lcs[(size_t)j]);
            }
            axpy(h, -ci, expsub(L, B.lts[(size_t)i]), fi);
            axpy(h, cj, expsub(L, B.lts[(size_t)j]), fj);
        } else {
            mpz_class g, a, b;
            mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(),
                       B.lcs[(size_t)i].get_num_mpz_t(), B.lcs[(size_t)j].get_num_mpz_t());
            axpy(h, mpq_class(-a), expsub(L, B.lts[(size_t)i]), fi);
            axpy(h, mpq_class(-b), expsub(L, B.lts[(size_t)j]), fj);
        }
        h = reduce_full(std::move(h), B);
        if (!h.terms.empty()) push_elt(std::move(h));
    }

    // interreduce: drop elements whose leading term is reducible by another
    // survivor, then put tails in normal form
    std::vector<char> keep(B.elts.size(), 1);
    for (size_t i = 0; i < B.elts.size(); ++i)
        for (size_t j = 0; j < B.elts.size(); ++j) {
            if (i == j || !keep[i] || !keep[j]) continue;
            bool red = divides(B.lts[j], B.lts[i]) &&
                       (!euclidean ||
                        mpz_divisible_p(B.lcs[i].get_num_mpz_t(), B.lcs[j].get_num_mpz_t()));
            bool tie = B.lts[i] == B.lts[j] &&
                       (!euclidean || B.lcs[i] == B.lcs[j]);
            if (red && (!tie || j < i)) keep[i] = 0;
        }
    Basis out;
    out.ring = B.ring;
    out.weights = B.weights;
    for (size_t i = 0; i < B.elts.size(); ++i)
        if (keep[i]) {
            out.elts.push_back(B.elts[i]);
            out.lts.push_back(B.lts[i]);
            out.lcs.push_back(B.lcs[i]);
        }
    std::vector<WeightedPolynomial> result;
    for (size_t i = 0; i < out.elts.size(); ++i) {
        Basis others;
        others.ring = out.ring;
        others.weights = out.weights;
        for (size_t j = 0; j < out.elts.size(); ++j)
            if (j != i) {
                others.elts.push_back(out.elts[j]);
                others.lts.push_back(out.lts[j]);
                others.lcs.push_back(out.lcs[j]);
            }
        WeightedPolynomial r = reduce_full(out.elts[i], others);
        if (r.terms.empty()) continue;  // can happen only through coefficient interplay
        if (euclidean)
            make_primitive(r);
        else
            make_monic(r);
        result.push_back(std::move(r));
    }
    std::sort(result.begin(), result.end(),
              [&](const WeightedPolynomial& a, const WeightedPolynomial& b) {
                  if (a.degree() != b.degree()) return a.degree() < b.degree();
                  return graded_lex_less(B.weights, a.leading_monomial(), b.leading_monomial());
              });
    return result;
}

}  // namespace

WeightedPolynomial reduce(const WeightedPolynomial& f, const std::vector<WeightedPolynomial>& G) {
    Basis B;
    B.ring = f.ring;
    B.weights = f.weights;
    for (const auto& g : G) {
        if (g.terms.empty()) continue;
        B.elts.push_back(g);
        B.lts.push_back(g.leading_monomial());
        B.lcs.push_back(g.leading_coeff());
    }
    return reduce_full(f, B);
}

std::vector<WeightedPolynomial> buchberger_field(std::vector<WeightedPolynomial> G,
                                                 long degree_cap) {
    for (auto& g : G) {
        if (g.terms.empty()) continue;
        if (!g.ring.is_field())
            throw std::invalid_argument("buchberger_field needs a field ring");
        if (g.ring.kind == RingKind::Fp) {
            for (auto it = g.terms.begin(); it != g.terms.end();) {
                it->second = norm_coeff(g.ring, it->second);
                it = it->second == 0 ? g.terms.erase(it) : std::next(it);
            }
        }
    }
    return buchberger_impl(std::move(G), degree_cap, false);
}

std::vector<WeightedPolynomial> strong_gb_euclidean(std::vector<WeightedPolynomial> G,
                                                    long degree_cap) {
    for (auto& g : G) {
        if (g.terms.empty()) continue;
        if (g.ring.is_field())
            throw std::invalid_argument("strong_gb_euclidean needs Z or Z[1/N]");
        g.normalize_content();  // unit scaling into a primitive integer polynomial
    }
    return buchberger_impl(std::move(G), degree_cap, true);
}

}  // namespace modgrade
