#include <doctest.h>
#include "modgrade/graded.hpp"
#include "modgrade/operators.hpp"
#include "modgrade/spaces.hpp"
#include <algorithm>

using namespace modgrade;

TEST_CASE("weight monomial enumeration") {
    // weights (2,2,3), k = 6: x1^3, x1^2 x2, x1 x2^2, x2^3, x3^2
    auto m = weight_monomials({2, 2, 3}, 6);
    CHECK(m.size() == 5);
    // weights (4,6), k = 12: x1^3 and x2^2
    auto m2 = weight_monomials({4, 6}, 12);
    REQUIRE(m2.size() == 2);
    CHECK(m2[0] == Exponents{0, 2});
    CHECK(m2[1] == Exponents{3, 0});
    CHECK(graded_lex_less({4, 6}, m2[0], m2[1]));
}

TEST_CASE("level 1 presentation over Q is free on E4 and E6") {
    auto pres = compute_presentation(GroupSpec::level1(), CoefficientRing::Q(), 12, 12);
    REQUIRE(pres.generators.size() == 2);
    CHECK(pres.gen_weights() == std::vector<long>{4, 6});
    CHECK(pres.relations.empty());
}

TEST_CASE("level 1 presentation over Z") {
    auto pres = compute_presentation(GroupSpec::level1(), CoefficientRing::Z(), 12, 12);
    REQUIRE(pres.generators.size() == 3);
    std::vector<long> w = pres.gen_weights();
    CHECK(w == std::vector<long>{4, 6, 12});
    REQUIRE(pres.relations.size() == 1);
    const auto& rel = pres.relations[0];
    CHECK(rel.degree() == 12);
    CHECK(rel.is_homogeneous());
    // x1^3 - x2^2 - 1728 x3 up to sign/content
    REQUIRE(rel.terms.size() == 3);
    mpq_class c3 = rel.terms.at(Exponents{3, 0, 0});
    mpq_class c2 = rel.terms.at(Exponents{0, 2, 0});
    mpq_class cd = rel.terms.at(Exponents{0, 0, 1});
    CHECK(c2 / c3 == -1);
    CHECK(cd / c3 == -1728);
    // the relation really vanishes on the generators
    std::vector<ModularForm> gens;
    for (const auto& g : pres.generators) gens.push_back(g.form);
    QExpansion v = evaluate_polynomial(rel, gens, 20);
    for (long n = 0; n < 20; ++n) CHECK(v.coeff(n) == 0);
}

TEST_CASE("level 1 generators over Z need the discriminant form") {
    auto found = find_generators(GroupSpec::level1(), CoefficientRing::Z(), 12);
    auto w = found.weights();
    CHECK(w == std::vector<long>{4, 6, 12});
    // over Q the cusp form at weight 12 is already a polynomial in E4, E6
    auto foundq = find_generators(GroupSpec::level1(), CoefficientRing::Q(), 12);
    CHECK(foundq.weights() == std::vector<long>{4, 6});
}

TEST_CASE("gamma1(5) presentation matches the expected table row") {
    GroupSpec g = GroupSpec::gamma1(5);
    auto pres = compute_presentation(g, CoefficientRing::Q(), 3, 6);
    CHECK(pres.generators.size() == 7);
    auto w = pres.gen_weights();
    CHECK(std::count(w.begin(), w.end(), 2) == 3);
    CHECK(std::count(w.begin(), w.end(), 3) == 4);
    CHECK(pres.census[4] == 1);
    CHECK(pres.census[5] == 6);
    CHECK(pres.census[6] == 10);
    long total = 0;
    for (auto [d, c] : pres.census) total += c;
    CHECK(total == 17);
    // every relation vanishes on the generators
    std::vector<ModularForm> gens;
    for (const auto& gi : pres.generators) gens.push_back(gi.form);
    for (const auto& rel : pres.relations) {
        QExpansion v = evaluate_polynomial(rel, gens, 12);
        for (long n = 0; n < 12; ++n) CHECK(v.coeff(n) == 0);
    }
}

TEST_CASE("gamma1(6) and gamma1(7) censuses") {
    {
        auto pres = compute_presentation(GroupSpec::gamma1(6), CoefficientRing::Q(), 3, 6);
        CHECK(pres.generators.size() == 7);
        CHECK(pres.census[4] == 1);
        CHECK(pres.census[5] == 6);
        CHECK(pres.census[6] == 10);
    }
    {
        auto pres = compute_presentation(GroupSpec::gamma1(7), CoefficientRing::Q(), 3, 6);
        CHECK(pres.generators.size() == 12);
        CHECK(pres.census[4] == 6);
        CHECK(pres.census[5] == 24);
        CHECK(pres.census[6] == 28);
    }
}

TEST_CASE("gamma0(11) generator weights over Z") {
    auto found = find_generators(GroupSpec::gamma0(11), CoefficientRing::Z(), 10);
    CHECK(found.weights() == std::vector<long>{2, 2, 4, 6, 10});
}
