#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ltf/lubin_tate.hpp"

using namespace ltf;

namespace {

const Rat TOL(20);

bool series_eq(const PadicSeries& a, const PadicSeries& b, Rat tol = TOL) {
    long long n = std::min(a.trunc(), b.trunc());
    for (long long k = 0; k <= n; ++k)
        if (!equal_at(a[k], b[k], tol)) return false;
    return true;
}

bool bivar_zero(const PadicBivar& a, Rat tol = TOL) {
    for (size_t k = 0; k < a.size(); ++k)
        if (!a.coeff_at(k).is_zero_at(tol)) return false;
    return true;
}

bool trivar_zero(const PadicTrivar& a, Rat tol = TOL) {
    for (size_t k = 0; k < a.size(); ++k)
        if (!a.coeff_at(k).is_zero_at(tol)) return false;
    return true;
}

GroupPtr default_group(long long p, long long f, long long e, long long N = 12) {
    FieldPtr F;
    if (e == 2) {
        std::vector<std::vector<long long>> eis{{-p}, {}, {1}};
        F = make_field(p, f, e, 64, nullptr, &eis);
    } else {
        F = make_field(p, f, e, 64);
    }
    return make_lt_group(F, F->pi(), nullptr, N);
}

} // namespace

TEST_CASE("construction and frobenius validation") {
    auto q2 = make_field(2, 1, 1);
    auto G2 = make_lt_group(q2, q2->pi(), nullptr, 10);
    CHECK(equal_at(G2->frobenius_poly()[1], q2->from_integer(2), TOL));
    CHECK(equal_at(G2->frobenius_poly()[2], q2->one(), TOL));

    auto q3 = make_field(3, 1, 1);
    auto G3 = make_lt_group(q3, q3->pi(), nullptr, 10);
    CHECK(G3->frobenius_poly().size() == 4);  // 3Z + Z^3

    // custom Frobenius pi Z + pi Z^2 + Z^q is accepted
    PadicPoly custom{q3->zero(), q3->from_integer(3), q3->from_integer(3), q3->one()};
    CHECK_NOTHROW(make_lt_group(q3, q3->pi(), &custom, 10));

    // bad linear term
    PadicPoly bad1{q3->zero(), q3->one(), q3->zero(), q3->one()};
    CHECK_THROWS_AS(make_lt_group(q3, q3->pi(), &bad1, 10), std::invalid_argument);
    // unit coefficient violates f = Z^q mod pi
    PadicPoly bad2{q3->zero(), q3->from_integer(3), q3->one(), q3->one()};
    CHECK_THROWS_AS(make_lt_group(q3, q3->pi(), &bad2, 10), std::invalid_argument);
    // pi of wrong valuation
    CHECK_THROWS_AS(make_lt_group(q3, q3->from_integer(9), nullptr, 10), std::invalid_argument);
}

TEST_CASE("multiplicative disguise group law is X + Y + XY") {
    // oracle: F0 = X + Y + XY satisfies F0 = X+Y mod deg 2 and
    // f(F0) = F0(f,f) for f = 2Z + Z^2 = (1+Z)^2 - 1; uniqueness of the
    // Lubin-Tate law then forces group_law() == F0.
    auto q2 = make_field(2, 1, 1);
    auto G = make_lt_group(q2, q2->pi(), nullptr, 12);
    PadicBivar F0(q2->zero(), 2, 12);
    F0.set_coeff({1, 0}, q2->one());
    F0.set_coeff({0, 1}, q2->one());
    F0.set_coeff({1, 1}, q2->one());
    PadicSeries f = G->frobenius_series(12);
    CHECK(bivar_zero(eval_poly_bivar(G->frobenius_poly(), F0) - substitute_univariates(F0, f, f)));

    const PadicBivar& F = G->group_law();
    CHECK(bivar_zero(F - F0));
}

TEST_CASE("group law axioms") {
    for (auto G : {default_group(2, 1, 1, 8), default_group(3, 1, 1, 8), default_group(3, 1, 2, 8)}) {
        const PadicBivar& F = G->group_law();
        auto fld = G->field();
        // identities at 0: F(X,0) = X means coeff {k,0} = [k=1]
        for (long long k = 0; k <= F.trunc(); ++k) {
            PadicElement expect = (k == 1) ? fld->one() : fld->zero();
            CHECK(equal_at(F.coeff({k, 0}), expect, TOL));
            CHECK(equal_at(F.coeff({0, k}), expect, TOL));
        }
        // symmetry
        for (size_t flat = 0; flat < F.size(); ++flat) {
            auto e = F.exponents()[flat];
            CHECK(equal_at(F.coeff(e), F.coeff({e[1], e[0]}), TOL));
        }
        // associativity mod deg N+1
        PadicTrivar lhs = compose_left(F, F);
        PadicTrivar rhs = compose_right(F, F);
        CHECK(trivar_zero(lhs - rhs));
        // integrality
        for (size_t flat = 0; flat < F.size(); ++flat) {
            auto v = F.coeff_at(flat).valuation();
            CHECK((!v || *v >= 0));
        }
    }
}

TEST_CASE("endomorphisms") {
    auto q2 = make_field(2, 1, 1);
    auto G = make_lt_group(q2, q2->pi(), nullptr, 10);

    PadicSeries one = G->endomorphism(q2->one());
    CHECK(series_eq(one, PadicSeries::identity(q2->zero(), 10)));

    // [pi] = f
    PadicSeries fr = G->endomorphism(q2->pi());
    CHECK(series_eq(fr, G->frobenius_series(10)));

    // multiplicative disguise: [-1] = (1+Z)^(-1) - 1, geometric series oracle
    PadicSeries geo(q2->zero(), 10);
    for (long long k = 1; k <= 10; ++k) geo.at(k) = q2->from_integer(k % 2 == 1 ? -1 : 1);
    PadicSeries minus = G->endomorphism(-q2->one());
    CHECK(series_eq(minus, geo));

    // o-module identities on a sample
    auto q3 = make_field(3, 1, 1);
    auto G3 = make_lt_group(q3, q3->pi(), nullptr, 10);
    PadicElement a = q3->from_integer(2), b = q3->pi();
    PadicSeries ga = G3->endomorphism(a), gb = G3->endomorphism(b);
    CHECK(series_eq(compose(ga, gb), G3->endomorphism(a * b)));
    const PadicBivar& F = G3->group_law();
    // F([a](Z), [b](Z)) = [a+b](Z), built as a univariate via powers
    PadicSeries acc(q3->zero(), 10);
    {
        std::vector<PadicSeries> pa{PadicSeries::constant(q3->zero(), q3->one(), 10)};
        std::vector<PadicSeries> pb = pa;
        for (long long k = 1; k <= 10; ++k) {
            pa.push_back(pa[k - 1] * ga);
            pb.push_back(pb[k - 1] * gb);
        }
        for (size_t flat = 0; flat < F.size(); ++flat) {
            auto e = F.exponents()[flat];
            if (F.coeff_at(flat).is_zero_to_precision()) continue;
            acc = acc + (pa[e[0]] * pb[e[1]]).scalar_mul(F.coeff_at(flat));
        }
    }
    CHECK(series_eq(acc, G3->endomorphism(a + b)));

    CHECK_THROWS_AS(G3->endomorphism(q3->from_rational(BigRat(1, 3))), std::invalid_argument);
}

TEST_CASE("formal log and exp") {
    auto q2 = make_field(2, 1, 1, 80);
    auto G = make_lt_group(q2, q2->pi(), nullptr, 12);
    const PadicSeries& lg = G->formal_log();
    // multiplicative disguise: log_G = log(1+Z)
    for (long long n = 1; n <= 12; ++n)
        CHECK(equal_at(lg[n], q2->from_rational(BigRat(n % 2 == 1 ? 1 : -1, n)), TOL));

    // exp o log = Z
    PadicSeries round = compose(G->formal_exp(), lg);
    CHECK(series_eq(round, PadicSeries::identity(q2->zero(), 12)));

    // log(F(X,Y)) = log X + log Y as a bivariate identity
    const PadicBivar& F = G->group_law();
    PadicBivar lgF(q2->zero(), 2, 12);
    {
        PadicBivar pw(q2->zero(), 2, 12);
        pw.set_coeff({0, 0}, q2->one());
        for (long long k = 1; k <= 12; ++k) {
            pw = pw * F;
            if (!lg[k].is_zero_to_precision()) lgF = lgF + pw.scalar_mul(lg[k]);
        }
    }
    PadicBivar expect(q2->zero(), 2, 12);
    for (long long k = 1; k <= 12; ++k) {
        expect.set_coeff({k, 0}, lg[k]);
        expect.set_coeff({0, k}, lg[k]);
    }
    CHECK(bivar_zero(lgF - expect));

    // log_G o [pi] = pi log_G for the default Q_3 group, both sides independent
    auto q3 = make_field(3, 1, 1, 80);
    auto G3 = make_lt_group(q3, q3->pi(), nullptr, 12);
    PadicSeries lhs = compose(G3->formal_log(), G3->frobenius_series(12));
    PadicSeries rhs = G3->formal_log().scalar_mul(q3->pi());
    CHECK(series_eq(lhs, rhs));
}

TEST_CASE("high-order log route agrees with the invariant-differential route") {
    for (auto G : {default_group(3, 1, 1, 10), default_group(2, 1, 1, 10), default_group(3, 1, 2, 10)}) {
        CHECK(series_eq(G->formal_log_at(10), G->formal_log()));
        // and the reversion pair
        CHECK(series_eq(G->formal_exp_at(10), G->formal_exp()));
        // beyond the group truncation it still satisfies log(f(Z)) = pi log(Z)
        PadicSeries lg = G->formal_log_at(20);
        PadicSeries lhs = compose(lg, G->frobenius_series(20));
        CHECK(series_eq(lhs, lg.scalar_mul(G->pi()), TOL));
    }
}

TEST_CASE("invariant derivation") {
    auto q2 = make_field(2, 1, 1, 80);
    auto G = make_lt_group(q2, q2->pi(), nullptr, 12);
    // d log_G = 1
    PadicSeries dl = G->invariant_derivation(G->formal_log());
    CHECK(equal_at(dl[0], q2->one(), TOL));
    for (long long k = 1; k <= dl.trunc(); ++k) CHECK(dl[k].is_zero_at(TOL));

    // multiplicative disguise: d = (1+Z) d/dZ, so dZ = 1 + Z
    PadicSeries z = PadicSeries::identity(q2->zero(), 12);
    PadicSeries dz = G->invariant_derivation(z);
    CHECK(equal_at(dz[0], q2->one(), TOL));
    CHECK(equal_at(dz[1], q2->one(), TOL));
    for (long long k = 2; k <= dz.trunc(); ++k) CHECK(dz[k].is_zero_at(TOL));
    // d(Z^2) has zero constant term
    PadicSeries z2 = PadicSeries::monomial(q2->zero(), q2->one(), 2, 12);
    CHECK(G->invariant_derivation(z2)[0].is_zero_at(TOL));
}

TEST_CASE("torsion valuations") {
    auto G3 = default_group(3, 1, 1, 10);
    auto t1 = torsion_valuations(*G3, 1);
    REQUIRE(t1.size() == 1);
    CHECK(t1[0] == std::pair<Rat, long long>{Rat(1, 2), 2});

    auto t2 = torsion_valuations(*G3, 2);
    REQUIRE(t2.size() == 1);
    CHECK(t2[0] == std::pair<Rat, long long>{Rat(1, 6), 6});

    auto G2 = default_group(2, 1, 1, 10);
    auto s1 = torsion_valuations(*G2, 1);
    REQUIRE(s1.size() == 1);
    CHECK(s1[0] == std::pair<Rat, long long>{Rat(1), 1});  // the point -2

    // expected law over a ramified field: 1/(e q^(n-1)(q-1)), q^n - q^(n-1) roots
    auto GR = default_group(3, 1, 2, 10);
    for (long long n = 1; n <= 3; ++n) {
        auto t = torsion_valuations(*GR, n);
        long long qn1 = 1;
        for (long long k = 0; k < n - 1; ++k) qn1 *= 3;
        REQUIRE(t.size() == 1);
        CHECK(t[0].first == Rat(1, 2 * qn1 * 2));
        CHECK(t[0].second == qn1 * 2);
    }

    CHECK_THROWS_AS(torsion_valuations(*G3, 12), std::invalid_argument);
}

TEST_CASE("disk preimage law") {
    auto G3 = default_group(3, 1, 1, 10);
    // threshold q/(e(q-1)) = 3/2
    auto d1 = disk_preimage_law(*G3, Rat(1, 2));
    CHECK(d1.single_slope);
    CHECK(d1.threshold == Rat(3, 2));
    REQUIRE(d1.root_valuations.size() == 1);
    CHECK(d1.root_valuations[0].first == Rat(1, 6));  // v_r / q

    auto d2 = disk_preimage_law(*G3, Rat(1));
    CHECK(d2.single_slope);
    CHECK(d2.root_valuations[0].first == Rat(1, 3));

    auto d3 = disk_preimage_law(*G3, Rat(2));
    CHECK(!d3.single_slope);
    REQUIRE(d3.root_valuations.size() == 2);
    CHECK(d3.root_valuations[0] == std::pair<Rat, long long>{Rat(1, 2), 2});
    CHECK(d3.root_valuations[1] == std::pair<Rat, long long>{Rat(1), 1});

    // regime boundary is exact
    CHECK(disk_preimage_law(*G3, Rat(3, 2)).single_slope);
    CHECK(!disk_preimage_law(*G3, Rat(3, 2) + Rat(1, 100)).single_slope);

    CHECK_THROWS_AS(disk_preimage_law(*G3, Rat(0)), std::invalid_argument);
}

TEST_CASE("gm hom series") {
    auto q2 = make_field(2, 1, 1, 80);
    auto G = make_lt_group(q2, q2->pi(), nullptr, 12);

    PeriodSeries zero = gm_hom_series(*G, q2->zero(), 8);
    for (long long k = 0; k <= 8; ++k) CHECK(zero[k].is_zero_at(TOL));

    // disguise with the grading collapsed at s = 0: a = 1 gives exactly Z
    PeriodSeries one = gm_hom_series(*G, q2->one(), 8);
    CHECK(equal_at(one[1].collapse_multiplicative(), q2->one(), TOL));
    for (long long k = 2; k <= 8; ++k)
        CHECK(one[k].collapse_multiplicative().is_zero_at(TOL));
}
