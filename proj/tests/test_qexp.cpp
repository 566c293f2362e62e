#include <doctest.h>
#include "modgrade/qexp.hpp"

using namespace modgrade;

static QExpansion delta(long prec) {
    return eta_product_expansion({{1, 24}}, prec);
}

TEST_CASE("discriminant series matches the classical tau values") {
    QExpansion d = delta(10);
    CHECK(d.lead == 1);
    std::vector<long> tau = {1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643};
    for (size_t i = 0; i < tau.size(); ++i) CHECK(d.coeff((long)i + 1) == tau[i]);
}

TEST_CASE("euler product inverse is the partition generating function") {
    QExpansion e = eta_product_expansion({{1, -24}}, 8);  // q^{-1} * sum p_24-ish
    // eta(z)^{-24} has lead -1; product with Delta must be 1
    QExpansion d = delta(10);
    QExpansion prod = qexp_mul(d, e);
    CHECK(prod.lead == 0);
    CHECK(prod.coeff(0) == 1);
    for (long n = 1; n < prod.prec(); ++n) CHECK(prod.coeff(n) == 0);
}

TEST_CASE("geometric series inversion") {
    QExpansion f = QExpansion::make(CoefficientRing::Z(), 0,
                                    {mpq_class(1), mpq_class(-1)});
    // extend precision: 1 - q known to high order
    std::vector<mpq_class> c(50);
    c[0] = 1; c[1] = -1;
    f = QExpansion::make(CoefficientRing::Z(), 0, std::move(c));
    QExpansion g = qexp_invert(f);
    for (long n = 0; n < 50; ++n) CHECK(g.coeff(n) == 1);
}

TEST_CASE("precision bookkeeping") {
    QExpansion a = QExpansion::make(CoefficientRing::Q(), 2, {mpq_class(3), mpq_class(1)});
    CHECK(a.prec() == 4);
    QExpansion z = qexp_sub(a, a);
    CHECK(z.is_zero());
    CHECK(z.prec() == 4);
    CHECK_THROWS(a.coeff(4));
    QExpansion b = QExpansion::make(CoefficientRing::Q(), 0, {mpq_class(1), mpq_class(5)});
    QExpansion ab = qexp_mul(a, b);
    CHECK(ab.lead == 2);
    CHECK(ab.prec() == 4);  // min(4 + 0, 2 + 2)
    CHECK(ab.coeff(2) == 3);
    CHECK(ab.coeff(3) == 16);
}

TEST_CASE("ring membership is enforced") {
    CHECK_THROWS(QExpansion::make(CoefficientRing::Z(), 0, {mpq_class(1, 2)}));
    CHECK_NOTHROW(QExpansion::make(CoefficientRing::ZInv(6), 0, {mpq_class(5, 12)}));
    CHECK_THROWS(QExpansion::make(CoefficientRing::ZInv(6), 0, {mpq_class(1, 5)}));
    QExpansion f = QExpansion::make(CoefficientRing::GF(5), 0, {mpq_class(7), mpq_class(1, 2)});
    CHECK(f.coeff(0) == 2);
    CHECK(f.coeff(1) == 3);  // 1/2 = 3 mod 5
}

TEST_CASE("valuations of truncations") {
    QExpansion f = QExpansion::make(CoefficientRing::Q(), 0,
                                    {mpq_class(50), mpq_class(1, 5), mpq_class(75)});
    CHECK(vp_of_truncation(f, 5) == -1);
    CHECK(padic_val(mpq_class(250), 5) == 3);
    CHECK(padic_val(mpq_class(3, 125), 5) == -3);
}

TEST_CASE("karatsuba path agrees with schoolbook bit for bit") {
    long n = 2600;
    std::vector<mpq_class> av(n), bv(n);
    unsigned long s = 12345;
    auto rnd = [&]() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return (long)((s >> 33) % 2001) - 1000;
    };
    for (long i = 0; i < n; ++i) { av[i] = rnd(); bv[i] = rnd(); }
    av[0] = 1; bv[0] = 1;
    auto school = convolve_school(av, bv, n);
    auto kara = convolve_karatsuba(av, bv, n);
    REQUIRE(school.size() == kara.size());
    for (long i = 0; i < n; ++i) CHECK(school[i] == kara[i]);
}

TEST_CASE("powers and inverse powers") {
    QExpansion e4 = QExpansion::make(
        CoefficientRing::Q(), 0,
        {mpq_class(1), mpq_class(240), mpq_class(2160), mpq_class(6720), mpq_class(17520)});
    QExpansion sq = qexp_pow(e4, 2);
    CHECK(sq.coeff(1) == 480);
    CHECK(sq.coeff(2) == 61920);  // E8 coefficient
    QExpansion inv2 = qexp_pow(e4, -2);
    QExpansion one = qexp_mul(sq, inv2);
    CHECK(one.coeff(0) == 1);
    for (long k = 1; k < one.prec(); ++k) CHECK(one.coeff(k) == 0);
}
