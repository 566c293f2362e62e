#include <doctest.h>
#include "modgrade/io.hpp"
#include "modgrade/spaces.hpp"
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace modgrade;

namespace {

std::string tmp_path(const char* name) {
    return std::string("/tmp/modgrade_io_") + name + ".json";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spew(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    out << body;
}

}  // namespace

TEST_CASE("space file round-trip is lossless") {
    SpaceBasis b = get_space(GroupSpec::level1(), 12, CoefficientRing::Z());
    std::string path = tmp_path("level1_12");
    write_space_file(b, path);
    SpaceBasis r = ingest_basis(path, CoefficientRing::Z());
    REQUIRE(r.dim() == b.dim());
    CHECK(r.group.N == b.group.N);
    CHECK(r.k == 12);
    CHECK(r.origin == BasisOrigin::Ingested);
    for (long i = 0; i < b.dim(); ++i) {
        CHECK(r.forms[(size_t)i].expansion.agrees_with(b.forms[(size_t)i].expansion,
                                                       b.prec()));
    }
    // writing the ingested basis again reproduces the bytes except provenance
    std::string path2 = tmp_path("level1_12_again");
    write_space_file(r, path2);
    SpaceBasis r2 = ingest_basis(path2, CoefficientRing::Z());
    for (long i = 0; i < b.dim(); ++i)
        CHECK(r2.forms[(size_t)i].expansion.agrees_with(r.forms[(size_t)i].expansion,
                                                        r.prec()));
    std::remove(path.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("ingest rejects a dimension mismatch") {
    SpaceBasis b = get_space(GroupSpec::gamma1(5), 2, CoefficientRing::Z());
    REQUIRE(b.dim() == 3);
    std::string path = tmp_path("dim_mismatch");
    write_space_file(b, path);
    // drop the last form line but leave the header claiming the full count
    std::string body = slurp(path);
    size_t cut = body.rfind('\n', body.size() - 2);
    spew(path, body.substr(0, cut + 1));
    CHECK_THROWS_AS(ingest_basis(path, CoefficientRing::Z()), IngestError);

    // header count fixed to the number of lines still mismatches the formula
    std::istringstream in(slurp(path));
    std::string hdr, rest, line;
    std::getline(in, hdr);
    while (std::getline(in, line)) rest += line + "\n";
    size_t pos = hdr.find("\"forms\":3");
    REQUIRE(pos != std::string::npos);
    hdr.replace(pos, 9, "\"forms\":2");
    spew(path, hdr + "\n" + rest);
    CHECK_THROWS_WITH_AS(ingest_basis(path, CoefficientRing::Z()),
                         doctest::Contains("dimension mismatch"), IngestError);
    std::remove(path.c_str());
}

TEST_CASE("ingest rejects sub-Sturm precision") {
    SpaceBasis b = get_space(GroupSpec::level1(), 12, CoefficientRing::Z());
    SpaceBasis low = b;
    for (auto& f : low.forms) {
        f.expansion = f.expansion.truncated(2);
        f.al = ALTag{};
    }
    std::string path = tmp_path("low_prec");
    write_space_file(low, path);
    CHECK_THROWS_WITH_AS(ingest_basis(path, CoefficientRing::Z()),
                         doctest::Contains("precision"), IngestError);
    std::remove(path.c_str());
}

TEST_CASE("ingest rejects garbage and wrong headers") {
    std::string path = tmp_path("garbage");
    spew(path, "not json at all\n");
    CHECK_THROWS_AS(ingest_basis(path, CoefficientRing::Q()), IngestError);
    spew(path, "{\"type\":\"presentation\",\"format\":1}\n");
    CHECK_THROWS_AS(ingest_basis(path, CoefficientRing::Q()), IngestError);
    CHECK_THROWS_AS(ingest_basis(tmp_path("nonexistent_file"), CoefficientRing::Q()),
                    IngestError);
    std::remove(path.c_str());
}

TEST_CASE("ingest rejects non-integral entries over Z") {
    SpaceBasis b = get_space(GroupSpec::level1(), 4, CoefficientRing::Z());
    std::string path = tmp_path("non_integral");
    write_space_file(b, path);
    std::string body = slurp(path);
    size_t pos = body.find("\"240\"");
    REQUIRE(pos != std::string::npos);
    body.replace(pos, 5, "\"1/2\"");
    spew(path, body);
    CHECK_THROWS_AS(ingest_basis(path, CoefficientRing::Z()), IngestError);
    std::remove(path.c_str());
}

TEST_CASE("presentation file round-trip") {
    auto pres = compute_presentation(GroupSpec::level1(), CoefficientRing::Z(), 12, 12);
    std::string path = tmp_path("pres_level1");
    write_presentation_file(pres, path);
    GradedPresentation r = read_presentation_file(path);
    CHECK(r.gen_weights() == pres.gen_weights());
    REQUIRE(r.relations.size() == pres.relations.size());
    bool same_terms = r.relations[0].terms == pres.relations[0].terms;
    CHECK(same_terms);
    bool same_census = r.census == pres.census;
    CHECK(same_census);
    // a doctored census line is rejected
    std::string body = slurp(path);
    size_t pos = body.find("\"12\":1");
    REQUIRE(pos != std::string::npos);
    body.replace(pos, 6, "\"12\":2");
    spew(path, body);
    CHECK_THROWS_AS(read_presentation_file(path), IngestError);
    std::remove(path.c_str());
}

TEST_CASE("ring tokens round-trip") {
    CHECK(ring_token(CoefficientRing::Q()) == "q");
    CHECK(ring_token(CoefficientRing::Z()) == "z");
    CHECK(parse_ring_token("q", 5).kind == RingKind::QQ);
    CHECK(parse_ring_token("z", 5).kind == RingKind::ZZ);
    CoefficientRing zi = parse_ring_token("z-inv-level", 7);
    CHECK(zi.kind == RingKind::ZInvN);
    CHECK(zi.param == 7);
    CHECK(ring_token(zi) == "z-inv-level");
    CoefficientRing fp = parse_ring_token("fp:13", 1);
    CHECK(fp.kind == RingKind::Fp);
    CHECK(fp.param == 13);
    CHECK(ring_token(fp) == "fp:13");
    CHECK_THROWS(parse_ring_token("octonions", 1));
}
