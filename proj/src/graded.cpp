#include "modgrade/graded.hpp"
#include "modgrade/intmat.hpp"
#include "modgrade/modp.hpp"
#include "modgrade/operators.hpp"
#include "modgrade/spaces.hpp"
#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace modgrade {

long monomial_weight(const std::vector<long>& weights, const Exponents& e) {
    long w = 0;
    for (size_t i = 0; i < e.size(); ++i) w += weights[i] * e[i];
    return w;
}

bool graded_lex_less(const std::vector<long>& weights, const Exponents& a, const Exponents& b) {
    long wa = monomial_weight(weights, a), wb = monomial_weight(weights, b);
    if (wa != wb) return wa < wb;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

std::vector<Exponents> weight_monomials(const std::vector<long>& weights, long k) {
    std::vector<Exponents> out;
    Exponents cur(weights.size(), 0);
    // depth-first over variables; remaining weight must be expressible
    std::function<void(size_t, long)> rec = [&](size_t i, long rem) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        if (i == weights.size()) return;
        long wmax = rem / weights[i];
        for (long e = wmax; e >= 0; --e) {
            cur[i] = e;
            rec(i + 1, rem - e * weights[i]);
        }
        cur[i] = 0;
    };
    if (k >= 0) rec(0, k);
    std::sort(out.begin(), out.end(),
              [&](const Exponents& a, const Exponents& b) { return graded_lex_less(weights, a, b); });
    return out;
}

long WeightedPolynomial::degree() const {
    if (terms.empty()) return 0;
    return monomial_weight(weights, terms.begin()->first);
}

bool WeightedPolynomial::is_homogeneous() const {
    long d = degree();
    for (const auto& [e, c] : terms)
        if (monomial_weight(weights, e) != d) return false;
    return true;
}

const Exponents& WeightedPolynomial::leading_monomial() const {
    if (terms.empty()) throw std::logic_error("leading term of the zero polynomial");
    auto best = terms.begin();
    for (auto it = std::next(terms.begin()); it != terms.end(); ++it)
        if (graded_lex_less(weights, best->first, it->first)) best = it;
    return best->first;
}

const mpq_class& WeightedPolynomial::leading_coeff() const {
    return terms.at(leading_monomial());
}

void WeightedPolynomial::normalize_content() {
    if (terms.empty()) return;
    mpz_class den = 1;
    for (const auto& [e, c] : terms) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_class g = 0;
    for (const auto& [e, c] : terms) {
        mpq_class s = c * den;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
    }
    if (g == 0) return;
    mpq_class scale = mpq_class(den) / mpq_class(g);
    if (leading_coeff() < 0) scale = -scale;
    for (auto& [e, c] : terms) c *= scale;
}

std::vector<long> GradedPresentation::gen_weights() const {
    std::vector<long> w;
    for (const auto& g : generators) w.push_back(g.weight);
    return w;
}

std::vector<long> FoundGenerators::weights() const {
    std::vector<long> w;
    for (const auto& [k, forms] : by_weight)
        for (size_t i = 0; i < forms.size(); ++i) w.push_back(k);
    return w;
}

namespace {

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool ring_unit(const CoefficientRing& ring, const mpz_class& u) {
    if (u == 0) return false;
    switch (ring.kind) {
        case RingKind::QQ: return true;
        case RingKind::ZZ: return u == 1 || u == -1;
        case RingKind::Fp: return mpz_divisible_ui_p(u.get_mpz_t(), ring.param) == 0;
        case RingKind::ZInvN: {
            mpz_class v = abs(u);
            mpz_class g;
            while (v != 1) {
                mpz_gcd_ui(g.get_mpz_t(), v.get_mpz_t(), (unsigned long)ring.param);
                if (g == 1) return false;
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
            }
            return true;
        }
    }
    return false;
}

// ---- packed monomials ---------------------------------------------------
// Keys compare in graded-lex order: total weight in the top bits, then the
// variables with earlier index more significant. Dense layout when the full
// exponent table fits; else a sparse layout of at most four (var, exp)
// factors with exponents <= 7.
struct MonCodec {
    std::vector<long> weights;
    long cap;
    bool dense = false;
    int fbits = 0;

    MonCodec(std::vector<long> w, long cap_) : weights(std::move(w)), cap(cap_) {
        long minw = cap;
        for (long x : weights) minw = std::min(minw, x);
        long maxe = minw > 0 ? cap / minw : 0;
        fbits = 1;
        while ((1L << fbits) <= maxe) ++fbits;
        long total = (long)weights.size() * fbits + 10;
        dense = total <= 64;
    }

    uint64_t encode(const Exponents& e) const {
        long w = monomial_weight(weights, e);
        if (dense) {
            uint64_t key = (uint64_t)w;
            for (size_t i = 0; i < e.size(); ++i) key = (key << fbits) | (uint64_t)e[i];
            return key;
        }
        uint64_t key = (uint64_t)w << 40;
        int slot = 0;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (slot == 4 || e[i] > 7 || i >= 127)
                throw std::invalid_argument(
                    "degree cap too large for the packed census engine at this level");
            uint64_t f = ((uint64_t)(127 - i) << 3) | (uint64_t)e[i];
            key |= f << (30 - 10 * slot);
            ++slot;
        }
        return key;
    }

    Exponents decode(uint64_t key) const {
        Exponents e(weights.size(), 0);
        if (dense) {
            for (size_t i = e.size(); i-- > 0;) {
                e[i] = (long)(key & ((1ULL << fbits) - 1));
                key >>= fbits;
            }
            return e;
        }
        for (int slot = 0; slot < 4; ++slot) {
            uint64_t f = (key >> (30 - 10 * slot)) & 0x3FF;
            if (f == 0) continue;
            long var = 127 - (long)(f >> 3);
            e[(size_t)var] = (long)(f & 7);
        }
        return e;
    }

    long weight_of(uint64_t key) const {
        return dense ? (long)(key >> (fbits * (long)weights.size())) : (long)(key >> 40);
    }
};

// ---- mod-q degree-truncated Buchberger closure --------------------------
struct GBEngine {
    Fq F;
    const MonCodec* C;
    long min_lt_deg = 1L << 30;

    struct Elt {
        uint64_t lt;
        long deg;
        std::vector<std::pair<uint64_t, uint64_t>> tail;  // monic: lt coefficient is 1
    };
    std::vector<Elt> elts;
    std::unordered_map<uint64_t, long> lt_index;

    struct SPair {
        uint64_t lcm;
        long i, j;
    };
    std::multimap<long, SPair> queue;
    std::set<std::pair<long, long>> processed;

    using Poly = std::map<uint64_t, uint64_t, std::greater<uint64_t>>;

    static Exponents expsub(const Exponents& a, const Exponents& b) {
        Exponents r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
        return r;
    }

    long find_divisor_weighted(const Exponents& m, long ignore_a = -1, long ignore_b = -1) const {
        // enumerate divisors of m of weight >= min_lt_deg and look them up
        std::vector<size_t> supp;
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) supp.push_back(i);
        Exponents d(m.size(), 0);
        long best = -1;
        std::function<void(size_t)> rec = [&](size_t s) {
            if (best >= 0) return;
            if (s == supp.size()) {
                long w = monomial_weight(C->weights, d);
                if (w < min_lt_deg) return;
                auto it = lt_index.find(C->encode(d));
                if (it != lt_index.end() && it->second != ignore_a && it->second != ignore_b)
                    best = it->second;
                return;
            }
            for (long e = m[supp[s]]; e >= 0 && best < 0; --e) {
                d[supp[s]] = e;
                rec(s + 1);
            }
            d[supp[s]] = 0;
        };
        rec(0);
        return best;
    }

    bool covered(const Exponents& m) const { return find_divisor_weighted(m) >= 0; }

    void reduce(Poly& poly, std::vector<std::pair<uint64_t, uint64_t>>& out) const {
        out.clear();
        while (!poly.empty()) {
            auto it = poly.begin();
            uint64_t mkey = it->first, c = it->second;
            poly.erase(it);
            if (c == 0) continue;
            Exponents m = C->decode(mkey);
            long idx = find_divisor_weighted(m);
            if (idx < 0) {
                out.emplace_back(mkey, c);
                continue;
            }
            const Elt& r = elts[(size_t)idx];
            Exponents shift = expsub(m, C->decode(r.lt));
            for (const auto& [t, tc] : r.tail) {
                Exponents prod = C->decode(t);
                for (size_t v = 0; v < prod.size(); ++v) prod[v] += shift[v];
                uint64_t key = C->encode(prod);
                uint64_t& slot = poly[key];
                slot = F.sub(slot, F.mul(c, tc));
                if (slot == 0) poly.erase(key);
            }
        }
    }

    void add_element(uint64_t lt, std::vector<std::pair<uint64_t, uint64_t>> tail, long deg) {
        long j = (long)elts.size();
        Exponents lj = C->decode(lt);
        for (long i = 0; i < j; ++i) {
            Exponents li = C->decode(elts[(size_t)i].lt);
            Exponents lcm(li.size());
            bool coprime = true;
            long wl = 0;
            for (size_t v = 0; v < li.size(); ++v) {
                lcm[v] = std::max(li[v], lj[v]);
                if (li[v] > 0 && lj[v] > 0) coprime = false;
                wl += lcm[v] * C->weights[v];
            }
            if (coprime) continue;  // product criterion
            if (wl > cap_degree) continue;
            queue.insert({wl, SPair{C->encode(lcm), i, j}});
        }
        elts.push_back(Elt{lt, deg, std::move(tail)});
        lt_index[lt] = j;
        min_lt_deg = std::min(min_lt_deg, deg);
    }

    long cap_degree = 1L << 30;

    // Normalize terms to monic form with the graded-lex largest first.
    void add_from_terms(std::vector<std::pair<uint64_t, uint64_t>> terms) {
        if (terms.empty()) return;
        std::sort(terms.begin(), terms.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        uint64_t inv = F.inv(terms[0].second);
        uint64_t lt = terms[0].first;
        for (auto& [t, c] : terms) c = F.mul(c, inv);
        add_element(lt, std::move(terms), C->weight_of(lt));
    }

    void process_degree(long d) {
        while (true) {
            auto it = queue.begin();
            if (it == queue.end() || it->first > d) break;
            SPair sp = it->second;
            queue.erase(it);
            auto mark = std::minmax(sp.i, sp.j);
            processed.insert(mark);
            // chain criterion: a third element dividing the lcm whose pairs
            // with both ends were already handled
            Exponents L = C->decode(sp.lcm);
            long k = find_divisor_weighted(L, sp.i, sp.j);
            if (k >= 0) {
                auto a = std::minmax(sp.i, k), b = std::minmax(sp.j, k);
                if (processed.count(a) && processed.count(b)) continue;
            }
            Poly poly;
            auto accumulate = [&](long idx, int sign) {
                const Elt& g = elts[(size_t)idx];
                Exponents shift = expsub(L, C->decode(g.lt));
                for (const auto& [t, tc] : g.tail) {
                    Exponents prod = C->decode(t);
                    for (size_t v = 0; v < prod.size(); ++v) prod[v] += shift[v];
                    uint64_t key = C->encode(prod);
                    uint64_t& slot = poly[key];
                    slot = sign > 0 ? F.add(slot, tc) : F.sub(slot, tc);
                    if (slot == 0) poly.erase(key);
                }
            };
            accumulate(sp.i, +1);
            accumulate(sp.j, -1);
            std::vector<std::pair<uint64_t, uint64_t>> red;
            reduce(poly, red);
            if (!red.empty()) add_from_terms(std::move(red));
        }
    }

    std::vector<uint64_t> lt_set() const {
        std::vector<uint64_t> v;
        for (const auto& e : elts) v.push_back(e.lt);
        std::sort(v.begin(), v.end());
        return v;
    }
};

// Rational echelon with combination tracking for kernel extraction.
struct TrackedEchelon {
    long ncols;
    struct Row {
        std::vector<mpq_class> v;
        std::vector<mpq_class> comb;  // over inserted row indices
        long pivot;
    };
    std::vector<Row> rows;
    long inserted = 0;

    explicit TrackedEchelon(long n) : ncols(n) {}

    // returns the kernel combination when the row is dependent
    bool insert(std::vector<mpq_class> v, std::vector<mpq_class>& kernel_comb) {
        std::vector<mpq_class> comb(inserted + 1);
        comb[inserted] = 1;
        ++inserted;
        for (const auto& r : rows) {
            if (v[r.pivot] == 0) continue;
            mpq_class c = v[r.pivot] / r.v[r.pivot];
            for (long j = 0; j < ncols; ++j)
                if (r.v[j] != 0) v[j] -= c * r.v[j];
            if (r.comb.size() > comb.size()) comb.resize(r.comb.size());
            for (size_t j = 0; j < r.comb.size(); ++j)
                if (r.comb[j] != 0) comb[j] -= c * r.comb[j];
        }
        long pivot = -1;
        for (long j = 0; j < ncols; ++j)
            if (v[j] != 0) {
                pivot = j;
                break;
            }
        if (pivot < 0) {
            kernel_comb = std::move(comb);
            return false;
        }
        rows.push_back(Row{std::move(v), std::move(comb), pivot});
        return true;
    }
};

QExpansion monomial_series(const std::vector<ModularForm>& gens, const Exponents& e, long prec) {
    QExpansion acc;
    bool first = true;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        QExpansion f = qexp_pow(gens[i].expansion.truncated(
                                    std::min(prec, gens[i].expansion.prec())),
                                e[i]);
        acc = first ? f : qexp_mul(acc, f);
        first = false;
    }
    if (first) {
        std::vector<mpq_class> c((size_t)prec);
        c[0] = 1;
        return QExpansion::make(CoefficientRing::Q(), 0, std::move(c));
    }
    return acc.truncated(std::min(prec, acc.prec()));
}

}  // namespace

FoundGenerators find_generators(GroupSpec group, CoefficientRing ring, long max_weight,
                                long prec, const std::string& fixtures) {
    if (prec <= 0) prec = sturm_bound(group, max_weight) + 1;
    long ptags = group.kind == GroupKind::Gamma0 && is_prime_long(group.N) ? group.N : 0;
    std::vector<std::pair<ModularForm, long>> gens;  // form, weight
    FoundGenerators out;
    auto& ambient = out.ambients;

    long kstart = group.kind == GroupKind::Level1 ? 4 : 2;
    long step = group.kind == GroupKind::Gamma1 ? 1 : 2;
    for (long k = kstart; k <= max_weight; k += step) {
        if (k == 1 || dimension_formula(group, k) == 0) continue;
        long dim = dimension_formula(group, k);

        std::vector<ModularForm> prods;
        for (const auto& [g, w] : gens) {
            auto it = ambient.find(k - w);
            if (it == ambient.end()) continue;
            for (const auto& b : it->second.forms) prods.push_back(mul_forms(g, b, ptags));
        }

        SpaceBasis amb;
        std::filesystem::path file =
            std::filesystem::path(fixture_dir(fixtures)) / fixture_file_name(group, k);
        if (group.kind != GroupKind::Level1 && std::filesystem::exists(file)) {
            amb = get_space(group, k, ring, prec, fixtures);
        } else {
            std::vector<ModularForm> cands = prods;
            for (auto& f : builtin_candidates(group, k, prec)) cands.push_back(std::move(f));
            amb = canonicalize_candidates(group, k, ring, cands, prec, BasisOrigin::BuiltIn, ptags);
        }

        IntMat X((long)prods.size(), dim);
        for (long i = 0; i < (long)prods.size(); ++i) {
            auto x = express_in_basis(prods[(size_t)i].expansion, amb);
            mpz_class den = 1;
            for (const auto& c : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
            if (ring.kind == RingKind::ZZ && den != 1)
                throw std::logic_error("integral product with fractional lattice coordinates");
            if (ring.kind == RingKind::ZInvN && !ring_unit(ring, den))
                throw std::logic_error("product coordinates outside Z[1/N]");
            for (long j = 0; j < dim; ++j) {
                mpq_class s = x[(size_t)j] * den;
                X.at(i, j) = s.get_num();
            }
        }

        std::vector<ModularForm> newgens;
        while (true) {
            long bad = -1;
            if (X.rows == 0) {
                bad = 0;
            } else {
                HNFResult H = hnf(X);
                std::vector<long> pivot_at(dim, -1);
                for (long r = 0; r < H.rank; ++r) pivot_at[H.pivot_cols[(size_t)r]] = r;
                for (long j = 0; j < dim && bad < 0; ++j) {
                    if (pivot_at[j] < 0 || !ring_unit(ring, H.H.at(pivot_at[j], j))) bad = j;
                }
            }
            if (bad < 0) break;
            IntMat X2(X.rows + 1, dim);
            for (long i = 0; i < X.rows; ++i)
                for (long j = 0; j < dim; ++j) X2.at(i, j) = X.at(i, j);
            X2.at(X.rows, bad) = 1;
            X = std::move(X2);
            newgens.push_back(amb.forms[(size_t)bad]);
        }
        if (!newgens.empty()) out.by_weight.push_back({k, newgens});
        for (const auto& g : newgens) gens.push_back({g, k});
        ambient[k] = std::move(amb);
    }
    return out;
}

RelationCensus find_relations(const FoundGenerators& found, GroupSpec group,
                              CoefficientRing ring, long degree_lo, long degree_hi,
                              const std::string& fixtures) {
    (void)fixtures;
    RelationCensus out;
    std::vector<ModularForm> gens;
    for (const auto& [k, forms] : found.by_weight)
        for (const auto& f : forms) gens.push_back(f);
    std::vector<long> weights = found.weights();
    if (gens.empty()) return out;

    long need = sturm_bound(group, degree_hi) + 1;
    for (const auto& g : gens)
        if (g.expansion.prec() < need)
            throw std::invalid_argument("generator precision below the relation-degree Sturm bound");

    MonCodec codec(weights, degree_hi);
    GBEngine eng[2];
    for (int s = 0; s < 2; ++s) {
        eng[s].F = Fq{kCertPrimes[s]};
        eng[s].C = &codec;
        eng[s].cap_degree = degree_hi;
    }

    long minw = *std::min_element(weights.begin(), weights.end());
    for (long d = std::max(degree_lo, 2 * minw); d <= degree_hi; ++d) {
        auto mons = weight_monomials(weights, d);
        if (mons.empty()) continue;
        for (int s = 0; s < 2; ++s) eng[s].process_degree(d);
        if (eng[0].lt_set() != eng[1].lt_set())
            throw std::logic_error("certificate primes disagree on the leading-term ideal");

        std::vector<Exponents> std_mons;
        for (const auto& m : mons)
            if (!eng[0].covered(m)) std_mons.push_back(m);

        long dim = dimension_formula(group, d);
        long s_d = sturm_bound(group, d) + 1;
        TrackedEchelon ech(s_d);
        std::vector<std::vector<mpq_class>> kernels;
        for (const auto& m : std_mons) {
            QExpansion f = monomial_series(gens, m, s_d);
            std::vector<mpq_class> row((size_t)s_d);
            for (long n = 0; n < s_d; ++n) row[(size_t)n] = f.coeff(n);
            std::vector<mpq_class> comb;
            if (!ech.insert(std::move(row), comb)) {
                comb.resize(std_mons.size());
                kernels.push_back(std::move(comb));
            }
        }
        long rank = (long)ech.rows.size();
        if (rank != dim) {
            std::ostringstream os;
            os << "generator products have rank " << rank << " but dim M_" << d << "("
               << group.name() << ") = " << dim;
            throw SpanningError(os.str(), rank, dim);
        }

        // echelonize the kernel vectors by graded-lex leading monomial
        std::map<long, std::vector<mpq_class>, std::greater<long>> by_lead;
        for (auto kv : kernels) {
            while (true) {
                long lead = -1;
                for (long j = (long)kv.size() - 1; j >= 0; --j)
                    if (kv[(size_t)j] != 0) {
                        lead = j;
                        break;
                    }
                if (lead < 0) throw std::logic_error("dependent kernel vectors at one degree");
                auto it = by_lead.find(lead);
                if (it == by_lead.end()) {
                    by_lead.emplace(lead, std::move(kv));
                    break;
                }
                mpq_class c = kv[(size_t)lead] / it->second[(size_t)lead];
                for (size_t j = 0; j < kv.size(); ++j)
                    if (it->second[j] != 0) kv[j] -= c * it->second[j];
            }
        }

        long count = 0;
        for (auto& [lead, kv] : by_lead) {
            WeightedPolynomial rel;
            rel.ring = ring;
            rel.weights = weights;
            for (size_t j = 0; j < kv.size(); ++j)
                if (kv[j] != 0) rel.terms[std_mons[j]] = kv[j];
            rel.normalize_content();
            std::vector<std::pair<uint64_t, uint64_t>> terms[2];
            for (const auto& [e, c] : rel.terms)
                for (int s = 0; s < 2; ++s)
                    terms[s].emplace_back(codec.encode(e), eng[s].F.from_mpq(c));
            for (int s = 0; s < 2; ++s) eng[s].add_from_terms(std::move(terms[s]));
            out.relations.push_back(std::move(rel));
            ++count;
        }
        if (count > 0) out.census[d] = count;
    }
    return out;
}

GradedPresentation compute_presentation(GroupSpec group, CoefficientRing ring,
                                        long gen_weight_cap, long rel_degree_cap,
                                        const std::string& fixtures) {
    long prec = sturm_bound(group, std::max(gen_weight_cap, rel_degree_cap)) + 1;
    FoundGenerators gens = find_generators(group, ring, gen_weight_cap, prec, fixtures);
    RelationCensus rels = find_relations(gens, group, ring, 2, rel_degree_cap, fixtures);
    GradedPresentation pres;
    pres.group = group;
    pres.ring = ring;
    long idx = 1;
    for (const auto& [k, forms] : gens.by_weight)
        for (const auto& f : forms) {
            GeneratorInfo gi;
            gi.form = f;
            gi.weight = k;
            gi.name = "x" + std::to_string(idx++);
            pres.generators.push_back(std::move(gi));
        }
    pres.relations = std::move(rels.relations);
    pres.census = std::move(rels.census);
    return pres;
}

QExpansion evaluate_polynomial(const WeightedPolynomial& poly,
                               const std::vector<ModularForm>& gens, long prec) {
    QExpansion acc = QExpansion::zero(CoefficientRing::Q(), prec);
    for (const auto& [e, c] : poly.terms)
        acc = qexp_add(acc, qexp_scalar_mul(c, monomial_series(gens, e, prec)));
    return acc;
}

}  // namespace modgrade
