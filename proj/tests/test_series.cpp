#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ltf/series.hpp"

using namespace ltf;

namespace {

const Rat TOL(20);
using QSeries = TruncSeries<BigRat>;

QSeries qser(std::vector<long long> coeffs) {
    std::vector<BigRat> c;
    for (long long x : coeffs) c.emplace_back(x);
    return QSeries(BigRat(0), std::move(c));
}

bool eq(const QSeries& a, const QSeries& b) {
    if (a.trunc() != b.trunc()) return false;
    for (long long k = 0; k <= a.trunc(); ++k)
        if (a[k] != b[k]) return false;
    return true;
}

BigRat catalan(long long n) { return BigRat(binomial(2 * n, n), BigInt(n + 1)); }

} // namespace

TEST_CASE("series arithmetic basics") {
    QSeries a = qser({1, 1, 0, 0});   // 1 + Z
    QSeries b = qser({1, -1, 0, 0});  // 1 - Z
    CHECK(eq(a * b, qser({1, 0, -1, 0})));
    CHECK((a - a).is_zero());

    QSeries h = qser({0, 1, 1, 0, 0});  // Z + Z^2 at trunc 4
    CHECK(eq(h * h, qser({0, 0, 1, 2, 1})));
}

TEST_CASE("composition") {
    QSeries g = qser({2, 3, 5, 7});
    QSeries z = QSeries::identity(BigRat(0), 3);
    CHECK(eq(compose(g, z), g));

    QSeries sq = qser({0, 0, 1, 0, 0});
    QSeries h = qser({0, 1, 1, 0, 0});
    CHECK(eq(compose(sq, h), qser({0, 0, 1, 2, 1})));

    CHECK_THROWS_AS(compose(g, qser({1, 1, 0, 0})), std::invalid_argument);

    // associativity modulo truncation on fixed cubic samples
    QSeries f1 = qser({0, 1, -2, 3, 0, 1, 0, 0, 2});
    QSeries f2 = qser({0, 2, 1, -1, 0, 0, 1, 0, 0});
    QSeries f3 = qser({0, -1, 0, 5, 1, 0, 0, 2, 0});
    CHECK(eq(compose(compose(f1, f2), f3), compose(f1, compose(f2, f3))));
}

TEST_CASE("reversion") {
    QSeries z = QSeries::identity(BigRat(0), 6);
    CHECK(eq(reversion(z), z));

    // Catalan oracle: the inverse of Z + Z^2 has coefficients (-1)^(n+1) C_(n-1)
    QSeries h = qser({0, 1, 1, 0, 0});
    QSeries k = reversion(h);
    for (long long n = 1; n <= 4; ++n) {
        BigRat expect = (n % 2 == 1 ? catalan(n - 1) : -catalan(n - 1));
        CHECK(k[n] == expect);
    }
    CHECK(eq(k.truncated(4), qser({0, 1, -1, 2, -5})));
    CHECK(compose(h, k).coeffs()[1] == BigRat(1));
    CHECK(eq(compose(h, k), QSeries::identity(BigRat(0), 4)));

    // reversion of log(1+Z) is exp(Z) - 1, coefficients 1/n!
    long long N = 8;
    QSeries lg(BigRat(0), N);
    for (long long n = 1; n <= N; ++n) lg.at(n) = BigRat(n % 2 == 1 ? 1 : -1, n);
    QSeries ex = reversion(lg);
    for (long long n = 1; n <= N; ++n) CHECK(ex[n] == BigRat(1, factorial(n)));

    // reversion(h) o h = Z for an admissible test set
    for (auto hh : {qser({0, 1, 2, 3, 4, 5}), qser({0, -1, 1, 0, 2, 0}), qser({0, 1, 0, 0, 0, 7})}) {
        CHECK(eq(compose(reversion(hh), hh), QSeries::identity(BigRat(0), 5)));
        CHECK(eq(compose(hh, reversion(hh)), QSeries::identity(BigRat(0), 5)));
    }

    CHECK_THROWS(reversion(qser({0, 0, 1, 0})));  // non-invertible linear coefficient
}

TEST_CASE("exp and log") {
    QSeries zero = QSeries(BigRat(0), 6);
    CHECK(series_exp_minus_one(zero).is_zero());

    QSeries z = QSeries::identity(BigRat(0), 8);
    QSeries lg = series_log_one_plus(z);
    for (long long n = 1; n <= 8; ++n) CHECK(lg[n] == BigRat(n % 2 == 1 ? 1 : -1, n));

    QSeries round = series_exp_minus_one(lg);
    CHECK(eq(round, z));
    CHECK(eq(series_log_one_plus(series_exp_minus_one(z)), z));

    CHECK_THROWS_AS(series_exp_minus_one(qser({1, 1})), std::invalid_argument);
}

TEST_CASE("exp over p-adic coefficients reports precision shortfall") {
    auto q2 = make_field(2, 1, 1, 6);  // tiny budget: ord_2(8!) = 7 > 6
    TruncSeries<PadicElement> h(q2->zero(), 8);
    h.at(1) = q2->one();
    CHECK_THROWS_AS(series_exp_minus_one(h), PrecisionError);

    auto q2big = make_field(2, 1, 1, 64);
    TruncSeries<PadicElement> h2(q2big->zero(), 8);
    h2.at(1) = q2big->one();
    auto e = series_exp_minus_one(h2);
    CHECK(equal_at(e[8], q2big->from_rational(BigRat(1, factorial(8))), TOL));
}

TEST_CASE("gauss norms") {
    auto q3 = make_field(3, 1, 1);
    // ||Z^m||_(0,n) = p^(-mn/e)
    for (long long m : {0, 1, 2, 5})
        for (long long n : {1, 2, 3}) {
            TruncSeries<PadicElement> f =
                TruncSeries<PadicElement>::monomial(q3->zero(), q3->one(), m, 6);
            CHECK(*gauss_norm(f, n).exponent == Rat(m * n));
        }

    // ||binom(Y,2)||_(0,1) over Q_3: coefficients -1/2, 1/2, exponent 1
    TruncSeries<PadicElement> b2(q3->zero(), 2);
    b2.at(1) = q3->from_rational(BigRat(-1, 2));
    b2.at(2) = q3->from_rational(BigRat(1, 2));
    auto g = gauss_norm(b2, 1);
    CHECK(*g.exponent == Rat(1));
    CHECK(g.exact);

    // seminorm: w(f g) >= w(f) + w(g), equality on monomials
    TruncSeries<PadicElement> f1 = TruncSeries<PadicElement>::monomial(
        q3->zero(), q3->from_integer(6), 2, 6);
    TruncSeries<PadicElement> f2 = TruncSeries<PadicElement>::monomial(
        q3->zero(), q3->from_integer(2), 3, 6);
    auto w1 = *gauss_norm(f1, 1).exponent, w2 = *gauss_norm(f2, 1).exponent;
    CHECK(*gauss_norm(f1 * f2, 1).exponent == w1 + w2);
    auto s = b2 * b2;
    CHECK(*gauss_norm(s, 1).exponent >= 2 * *gauss_norm(b2, 1).exponent);
}

TEST_CASE("local functions") {
    auto q3 = make_field(3, 1, 1);
    // x^2 restricted to the three cosets a + 3 Z_3: expansions (a + t)^2
    std::vector<std::pair<PadicElement, TruncSeries<PadicElement>>> branches;
    for (long long a : {0, 1, 2}) {
        TruncSeries<PadicElement> f(q3->zero(), 2);
        f.at(0) = q3->from_integer(a * a);
        f.at(1) = q3->from_integer(2 * a);
        f.at(2) = q3->one();
        branches.emplace_back(q3->from_integer(a), f);
    }
    LocalFunction lf = make_local_function(q3, 1, branches);
    CHECK(*lf.branch_norm(0).exponent == Rat(2));  // ||t^2||_{0,1}
    CHECK(*lf.branch_norm(1).exponent == Rat(0));  // constant term 1 dominates

    branches.pop_back();
    CHECK_THROWS_AS(make_local_function(q3, 1, branches), std::invalid_argument);
}
