#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ltf/multiseries.hpp"

using namespace ltf;

namespace {

// tensors of the powers of the L-linear coordinate l = t1 + u t2 on the
// unramified quadratic over Q_3, expanded by hand with exact binomials
MultiSeries<PadicElement> linear_power(const FieldPtr& F, long long power, long long trunc) {
    MultiSeries<PadicElement> f(F->zero(), 2, trunc);
    PadicElement u = F->unram_gen();
    for (long long b = 0; b <= power; ++b) {
        std::vector<long long> exp{power - b, b};
        f.set_coeff(exp, F->from_integer(binomial(power, b)) * u.pow_int(b));
    }
    return f;
}

} // namespace

TEST_CASE("linear coordinate and its powers pass") {
    auto F = make_field(3, 2, 1);
    std::vector<PadicElement> basis{F->one(), F->unram_gen()};

    for (long long k : {0, 1, 2, 3}) {
        auto f = linear_power(F, k, 3);
        auto res = scalar_restriction_check(f, basis, 3);
        CHECK(res.ok);
    }

    // an L-linear combination of powers also passes
    auto f = linear_power(F, 0, 3);
    for (long long k : {1, 2, 3}) {
        auto g = linear_power(F, k, 3).scalar_mul(F->from_integer(k) + F->unram_gen());
        f = f + g;
    }
    CHECK(scalar_restriction_check(f, basis, 3).ok);
}

TEST_CASE("coordinate projections fail with a located violation") {
    auto F = make_field(3, 2, 1);
    std::vector<PadicElement> basis{F->one(), F->unram_gen()};

    // f = t1: the recurrence forces c_{(0,1)} = u c_{(1,0)} but c_{(0,1)} = 0
    MultiSeries<PadicElement> f(F->zero(), 2, 3);
    f.set_coeff({1, 0}, F->one());
    auto res = scalar_restriction_check(f, basis, 3);
    CHECK(!res.ok);
    REQUIRE(res.violation_index.has_value());
    CHECK(*res.violation_index == std::vector<long long>{0, 0});
    CHECK(res.violation_coordinate == 2);

    // perturbing an analytic function breaks it
    auto g = linear_power(F, 2, 3);
    g.set_coeff({0, 1}, g.coeff({0, 1}) + F->one());
    CHECK(!scalar_restriction_check(g, basis, 3).ok);
}

TEST_CASE("accepted space is exactly the span of linear powers (order 2)") {
    auto F = make_field(3, 2, 1);
    std::vector<PadicElement> basis{F->one(), F->unram_gen()};
    // all 6 monomial tensors of total degree <= 2: only the constant passes,
    // every pure monomial of positive degree fails the recurrence
    for (long long a = 0; a <= 2; ++a)
        for (long long b = 0; a + b <= 2; ++b) {
            MultiSeries<PadicElement> f(F->zero(), 2, 2);
            f.set_coeff({a, b}, F->one());
            bool expect = (a == 0 && b == 0);
            CHECK(scalar_restriction_check(f, basis, 2).ok == expect);
        }
    // l^2 plus anything outside the span breaks
    auto l2 = linear_power(F, 2, 2);
    auto bad = l2;
    bad.set_coeff({1, 0}, bad.coeff({1, 0}) + F->one());
    CHECK(!scalar_restriction_check(bad, basis, 2).ok);
}

TEST_CASE("input validation") {
    auto F = make_field(3, 2, 1);
    std::vector<PadicElement> basis{F->one(), F->unram_gen()};
    MultiSeries<PadicElement> f(F->zero(), 2, 1);
    CHECK_THROWS_AS(scalar_restriction_check(f, basis, 3), std::invalid_argument);  // incomplete

    std::vector<PadicElement> bad1{F->unram_gen(), F->one()};  // v_1 != 1
    MultiSeries<PadicElement> g(F->zero(), 2, 2);
    CHECK_THROWS_AS(scalar_restriction_check(g, bad1, 2), std::invalid_argument);

    // non-unit discriminant: {1, 3u}
    std::vector<PadicElement> bad2{F->one(), F->from_integer(3) * F->unram_gen()};
    CHECK_THROWS_AS(scalar_restriction_check(g, bad2, 2), std::invalid_argument);
}

TEST_CASE("basis discriminant valuations") {
    auto F = make_field(3, 2, 1);
    CHECK(basis_discriminant_valuation({F->one(), F->unram_gen()}) == Rat(0));
    CHECK(basis_discriminant_valuation({F->one(), F->from_integer(3) * F->unram_gen()}) == Rat(2));

    // ramified quadratic: {1, pi} has ord(disc(X^2 - 3)) = ord(-4*(-3)) = 1
    std::vector<std::vector<long long>> x2m3{{-3}, {}, {1}};
    auto R = make_field(3, 1, 2, 64, nullptr, &x2m3);
    CHECK(basis_discriminant_valuation({R->one(), R->pi()}) == Rat(1));
}
