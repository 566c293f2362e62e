#include "modgrade/io.hpp"
#include "modgrade/intmat.hpp"
#include "modgrade/operators.hpp"
#include "modgrade/spaces.hpp"
#include <json.hpp>
#include <fstream>
#include <sstream>

namespace modgrade {

using ordered_json = nlohmann::ordered_json;

namespace {

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::string q_str(const mpq_class& c) { return c.get_str(); }

mpq_class parse_q(const std::string& s) {
    mpq_class c;
    if (c.set_str(s, 10) != 0) throw IngestError("bad rational literal: " + s);
    c.canonicalize();
    return c;
}

std::string group_token(const GroupSpec& g) {
    switch (g.kind) {
        case GroupKind::Level1: return "level1";
        case GroupKind::Gamma0: return "gamma0";
        case GroupKind::Gamma1: return "gamma1";
    }
    return "";
}

GroupSpec parse_group(const std::string& tok, long level) {
    if (tok == "level1") return GroupSpec::level1();
    if (tok == "gamma0") return GroupSpec::gamma0(level);
    if (tok == "gamma1") return GroupSpec::gamma1(level);
    throw IngestError("unknown group token: " + tok);
}

ordered_json coeff_array(const QExpansion& e) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : e.coeffs) arr.push_back(q_str(c));
    return arr;
}

QExpansion parse_expansion(const ordered_json& j, CoefficientRing ring) {
    long lead = j.at("lead").get<long>();
    std::vector<mpq_class> c;
    for (const auto& s : j.at("coeffs")) c.push_back(parse_q(s.get<std::string>()));
    return QExpansion::make(ring, lead, std::move(c));
}

ordered_json line_of(const ModularForm& f) {
    ordered_json j;
    j["lead"] = f.expansion.lead;
    j["coeffs"] = coeff_array(f.expansion);
    j["provenance"] = provenance_name(f.prov);
    if (f.al.kind == ALKind::EigenSign) {
        j["al"] = ordered_json{{"kind", "eigen-sign"}, {"sign", f.al.sign}};
    } else if (f.al.kind == ALKind::ExplicitImage || f.al.kind == ALKind::EtaClosedForm) {
        j["al"] = ordered_json{{"kind", "explicit-image"},
                               {"lead", f.al.image->lead},
                               {"coeffs", coeff_array(*f.al.image)}};
    } else if (f.al.kind == ALKind::Level1Origin) {
        j["al"] = ordered_json{{"kind", "level1-origin"}};
    } else if (f.al.kind == ALKind::VImage) {
        j["al"] = ordered_json{{"kind", "v-image"}};
    }
    return j;
}

}  // namespace

std::string ring_token(const CoefficientRing& R) {
    switch (R.kind) {
        case RingKind::QQ: return "q";
        case RingKind::ZZ: return "z";
        case RingKind::ZInvN: return "z-inv-level";
        case RingKind::Fp: return "fp:" + std::to_string(R.param);
    }
    return "";
}

CoefficientRing parse_ring_token(const std::string& tok, long level) {
    if (tok == "q") return CoefficientRing::Q();
    if (tok == "z") return CoefficientRing::Z();
    if (tok == "z-inv-level") return CoefficientRing::ZInv(level);
    if (tok.rfind("fp:", 0) == 0) return CoefficientRing::GF(std::stol(tok.substr(3)));
    throw IngestError("unknown ring token: " + tok);
}

void write_space_file(const SpaceBasis& basis, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot open " + path + " for writing");
    ordered_json hdr;
    hdr["format"] = 1;
    hdr["type"] = "space";
    hdr["group"] = group_token(basis.group);
    hdr["level"] = basis.group.N;
    hdr["weight"] = basis.k;
    hdr["ring"] = ring_token(basis.ring);
    hdr["prec"] = basis.dim() == 0 ? 0 : basis.prec();
    hdr["forms"] = basis.dim();
    out << hdr.dump() << "\n";
    for (const auto& f : basis.forms) out << line_of(f).dump() << "\n";
}

SpaceBasis ingest_basis(const std::string& path, CoefficientRing ring) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open fixture " + path);
    std::string line;
    if (!std::getline(in, line)) throw IngestError(path + ": empty file");
    ordered_json hdr;
    try {
        hdr = ordered_json::parse(line);
    } catch (const std::exception& e) {
        throw IngestError(path + ": bad header: " + e.what());
    }
    if (hdr.value("type", "") != "space" || hdr.value("format", 0) != 1)
        throw IngestError(path + ": not a version-1 space file");
    GroupSpec group = parse_group(hdr.at("group").get<std::string>(), hdr.at("level").get<long>());
    long k = hdr.at("weight").get<long>();
    long prec = hdr.at("prec").get<long>();
    long count = hdr.at("forms").get<long>();

    long dim = dimension_formula(group, k);
    if (count != dim) {
        std::ostringstream os;
        os << path << ": dimension mismatch: file has " << count << " forms, dim M_" << k << "("
           << group.name() << ") = " << dim;
        throw IngestError(os.str());
    }
    long need = sturm_bound(group, k) + 1;
    if (dim > 0 && prec < need) {
        std::ostringstream os;
        os << path << ": precision " << prec << " below the Sturm requirement " << need;
        throw IngestError(os.str());
    }

    bool integral_ring = ring.kind == RingKind::ZZ || ring.kind == RingKind::ZInvN;
    std::vector<ModularForm> cands;
    for (long i = 0; i < count; ++i) {
        if (!std::getline(in, line)) throw IngestError(path + ": truncated form table");
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const std::exception& e) {
            throw IngestError(path + ": bad form record: " + e.what());
        }
        QExpansion e = parse_expansion(j, CoefficientRing::Q());
        if (e.prec() < prec) throw IngestError(path + ": form shorter than the stated precision");
        if (integral_ring)
            for (const auto& c : e.coeffs)
                if (!CoefficientRing::Z().contains(c) &&
                    !(ring.kind == RingKind::ZInvN && ring.contains(c)))
                    throw IngestError(path + ": non-integral coefficient " + q_str(c) +
                                      " for ring " + ring_token(ring));
        ALTag tag = ALTag::unknown();
        if (j.contains("al")) {
            const auto& a = j.at("al");
            std::string kind = a.at("kind").get<std::string>();
            if (kind == "eigen-sign")
                tag = ALTag::eigen(a.at("sign").get<int>());
            else if (kind == "explicit-image")
                tag = ALTag::explicit_image(parse_expansion(a, CoefficientRing::Q()));
            else if (kind == "level1-origin")
                tag = ALTag::level1_origin();
            else if (kind == "v-image")
                tag = ALTag::v_image();
            else
                throw IngestError(path + ": unknown al kind " + kind);
        }
        cands.push_back(ModularForm::make(group, k, std::move(e), Provenance::Ingested,
                                          std::move(tag)));
    }

    long p_tags = 0;
    if (group.kind == GroupKind::Gamma0 && is_prime_long(group.N)) {
        p_tags = group.N;
        for (const auto& f : cands)
            if (f.al.kind == ALKind::Unknown) p_tags = 0;
    }
    SpaceBasis basis;
    try {
        basis = canonicalize_candidates(group, k, ring, cands, prec, BasisOrigin::Ingested, p_tags);
    } catch (const SpanningError& e) {
        throw IngestError(path + ": " + e.what());
    }

    // Exact involution certificate: the tilde matrix squares to p^k.
    if (p_tags > 0 && dim > 0) {
        long p = p_tags;
        QMat W(dim, dim);
        for (long i = 0; i < dim; ++i) {
            auto x = express_in_basis(*basis.forms[i].al.image, basis);
            for (long j = 0; j < dim; ++j) W.at(i, j) = x[j];
        }
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), (unsigned long)p, (unsigned long)k);
        for (long i = 0; i < dim; ++i)
            for (long j = 0; j < dim; ++j) {
                mpq_class s = 0;
                for (long l = 0; l < dim; ++l) s += W.at(i, l) * W.at(l, j);
                mpq_class want = i == j ? mpq_class(pk) : mpq_class(0);
                if (s != want)
                    throw IngestError(path + ": Atkin-Lehner images fail the involution check");
            }
    }
    return basis;
}

void write_presentation_file(const GradedPresentation& pres, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot open " + path + " for writing");
    ordered_json hdr;
    hdr["format"] = 1;
    hdr["type"] = "presentation";
    hdr["group"] = group_token(pres.group);
    hdr["level"] = pres.group.N;
    hdr["ring"] = ring_token(pres.ring);
    hdr["generators"] = pres.generators.size();
    hdr["relations"] = pres.relations.size();
    out << hdr.dump() << "\n";
    for (const auto& g : pres.generators) {
        ordered_json j;
        j["gen"] = g.name;
        j["weight"] = g.weight;
        j["lead"] = g.form.expansion.lead;
        ordered_json dig = ordered_json::array();
        long take = std::min<long>(8, (long)g.form.expansion.coeffs.size());
        for (long i = 0; i < take; ++i) dig.push_back(q_str(g.form.expansion.coeffs[i]));
        j["digest"] = dig;
        out << j.dump() << "\n";
    }
    for (const auto& r : pres.relations) {
        ordered_json j;
        j["degree"] = r.degree();
        ordered_json terms = ordered_json::array();
        for (const auto& [e, c] : r.terms) {
            ordered_json t = ordered_json::array();
            t.push_back(ordered_json(e));
            t.push_back(q_str(c));
            terms.push_back(t);
        }
        j["terms"] = terms;
        out << j.dump() << "\n";
    }
    ordered_json cj;
    ordered_json census;
    for (const auto& [d, n] : pres.census) census[std::to_string(d)] = n;
    cj["census"] = census;
    out << cj.dump() << "\n";
}

GradedPresentation read_presentation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw IngestError(path + ": empty file");
    ordered_json hdr = ordered_json::parse(line);
    if (hdr.value("type", "") != "presentation" || hdr.value("format", 0) != 1)
        throw IngestError(path + ": not a version-1 presentation file");
    GradedPresentation pres;
    pres.group = parse_group(hdr.at("group").get<std::string>(), hdr.at("level").get<long>());
    pres.ring = parse_ring_token(hdr.at("ring").get<std::string>(), pres.group.N);
    long ngen = hdr.at("generators").get<long>();
    long nrel = hdr.at("relations").get<long>();
    std::vector<long> weights;
    for (long i = 0; i < ngen; ++i) {
        if (!std::getline(in, line)) throw IngestError(path + ": truncated generator table");
        ordered_json j = ordered_json::parse(line);
        GeneratorInfo g;
        g.name = j.at("gen").get<std::string>();
        g.weight = j.at("weight").get<long>();
        weights.push_back(g.weight);
        std::vector<mpq_class> dig;
        for (const auto& s : j.at("digest")) dig.push_back(parse_q(s.get<std::string>()));
        g.form = ModularForm::make(pres.group, g.weight,
                                   QExpansion::make(CoefficientRing::Q(),
                                                    j.at("lead").get<long>(), std::move(dig)),
                                   Provenance::Ingested);
        pres.generators.push_back(std::move(g));
    }
    for (long i = 0; i < nrel; ++i) {
        if (!std::getline(in, line)) throw IngestError(path + ": truncated relation table");
        ordered_json j = ordered_json::parse(line);
        WeightedPolynomial r;
        r.ring = pres.ring;
        r.weights = weights;
        for (const auto& t : j.at("terms")) {
            Exponents e = t.at(0).get<Exponents>();
            r.terms[e] = parse_q(t.at(1).get<std::string>());
        }
        pres.relations.push_back(std::move(r));
        pres.census[pres.relations.back().degree()]++;
    }
    if (!std::getline(in, line)) throw IngestError(path + ": missing census line");
    ordered_json cj = ordered_json::parse(line);
    std::map<long, long> claimed;
    for (auto it = cj.at("census").begin(); it != cj.at("census").end(); ++it)
        claimed[std::stol(it.key())] = it.value().get<long>();
    if (claimed != pres.census)
        throw IngestError(path + ": census does not match the relation table");
    return pres;
}

}  // namespace modgrade
