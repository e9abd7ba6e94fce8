#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vvaf/qseries.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace vvaf;
using std::numbers::pi;

namespace {

const cplx I(0, 1);

// Direct product/sum definitions, independent of the series code.
cplx eta_direct(cplx tau) {
    cplx p = std::exp(I * pi * tau / 12.0);
    for (int n = 1; n < 400; ++n) p *= 1.0 - std::exp(2.0 * pi * I * tau * static_cast<double>(n));
    return p;
}

cplx theta_direct(int variant, cplx tau) {
    cplx s = 0.0;
    for (int n = -60; n <= 60; ++n) {
        const double x = variant == 2 ? n + 0.5 : n;
        const double sign = (variant == 4 && (n % 2 != 0)) ? -1.0 : 1.0;
        s += sign * std::exp(I * pi * tau * x * x);
    }
    return s;
}

FracQSeries random_series(std::mt19937_64& rng, std::int64_t denom, std::int64_t start, std::size_t len) {
    std::normal_distribution<double> g;
    std::vector<cplx> c(len);
    for (auto& v : c) v = {g(rng), g(rng)};
    return FracQSeries(1, denom, start, c, start + static_cast<std::int64_t>(len));
}

double max_diff_below(const FracQSeries& a, const FracQSeries& b, const Rational& order) {
    double worst = 0.0;
    const std::int64_t d = std::lcm(a.denom(), b.denom());
    const Rational lo = std::min(a.exponent(0), b.exponent(0));
    for (Rational e = lo; e < order; e += Rational(1, d)) worst = std::max(worst, std::abs(a.coeff(e) - b.coeff(e)));
    return worst;
}

}  // namespace

TEST_CASE("eta coefficients") {
    const FracQSeries eta = eta_series(12);
    const int expect[12] = {1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0};
    for (int j = 0; j < 12; ++j) CHECK(eta.coeff(Rational(1, 24) + j) == cplx(expect[j], 0));
    CHECK(eta.leading_exponent() == Rational(1, 24));
    REQUIRE(eta.order());
    CHECK(*eta.order() >= Rational(12));
}

TEST_CASE("eta at i matches the closed form") {
    const double closed = std::tgamma(0.25) / (2.0 * std::pow(pi, 0.75));
    const SeriesValue v = eta_series(40).evaluate(I);
    CHECK(std::abs(v.value - closed) < 1e-14);
    CHECK(std::abs(closed - 0.76822540) < 1e-7);
    CHECK(v.tail < 1e-14);
}

TEST_CASE("eta translation phase") {
    const FracQSeries eta = eta_series(40);
    const cplx ratio = eta.evaluate(cplx(1, 2)).value / eta.evaluate(cplx(0, 2)).value;
    CHECK(std::abs(ratio - std::polar(1.0, pi / 12)) < 1e-14);
}

TEST_CASE("eta powers use exact integers") {
    const FracQSeries delta = eta_power_series(24, 20);
    CHECK(delta.coeff(1) == cplx(1, 0));
    CHECK(delta.coeff(2) == cplx(-24, 0));
    CHECK(delta.coeff(3) == cplx(252, 0));
    CHECK(delta.coeff(4) == cplx(-1472, 0));
    CHECK(delta.coeff(5) == cplx(4830, 0));
    CHECK(delta.coeff(11) == cplx(534612, 0));
    // η³ is Jacobi's Σ(−1)ⁿ(2n+1)q^{(2n+1)²/8}.
    const FracQSeries e3 = eta_power_series(3, 10);
    CHECK(e3.coeff(Rational(1, 8)) == cplx(1, 0));
    CHECK(e3.coeff(Rational(9, 8)) == cplx(-3, 0));
    CHECK(e3.coeff(Rational(25, 8)) == cplx(5, 0));
    CHECK(e3.coeff(Rational(49, 8)) == cplx(-7, 0));
    CHECK(e3.coeff(Rational(17, 8)) == cplx(0, 0));
    // Power by repeated multiplication.
    FracQSeries p = FracQSeries::constant(1.0);
    for (int r = 0; r < 5; ++r) p = p * eta_series(15);
    CHECK(max_diff_below(p, eta_power_series(5, 15), Rational(15)) < 1e-9);
}

TEST_CASE("theta series") {
    const FracQSeries t3 = theta_series(3, 10);
    CHECK(t3.coeff(0) == cplx(1, 0));
    CHECK(t3.coeff(Rational(1, 2)) == cplx(2, 0));
    CHECK(t3.coeff(2) == cplx(2, 0));
    CHECK(t3.coeff(1) == cplx(0, 0));
    const FracQSeries t2 = theta_series(2, 10);
    CHECK(t2.leading_exponent() == Rational(1, 8));
    CHECK(t2.coeff(Rational(1, 8)) == cplx(2, 0));
    CHECK(theta_series(4, 10).coeff(Rational(1, 2)) == cplx(-2, 0));

    const double closed = std::pow(pi, 0.25) / std::tgamma(0.75);
    CHECK(std::abs(t3.evaluate(I).value - closed) < 1e-14);
    CHECK(std::abs(closed - 1.08643481) < 1e-8);

    for (int v : {2, 3, 4})
        for (cplx tau : {cplx(0.1, 0.8), cplx(-0.4, 1.3), cplx(0.5, 0.5)})
            CHECK(std::abs(theta_series(v, 40).evaluate(tau).value - theta_direct(v, tau)) < 1e-12);
    for (cplx tau : {cplx(0.1, 0.8), cplx(-0.4, 1.3)})
        CHECK(std::abs(eta_series(60).evaluate(tau).value - eta_direct(tau)) < 1e-13);
}

TEST_CASE("series arithmetic") {
    const FracQSeries eta = eta_series(20);
    const FracQSeries one = eta * (FracQSeries::constant(1.0) / eta);
    REQUIRE(one.order());
    CHECK(*one.order() >= Rational(19));
    CHECK(one.coeff(0) == cplx(1, 0));
    CHECK(max_diff_below(one, FracQSeries::constant(1.0), *one.order()) < 1e-12);

    const FracQSeries r3 = theta_series(3, 20) / eta;
    CHECK(r3.leading_exponent() == Rational(-1, 24));
    CHECK(std::abs(r3.coeff(Rational(-1, 24)) - 1.0) < 1e-15);
    const FracQSeries r2 = theta_series(2, 20) / eta;
    CHECK(r2.leading_exponent() == Rational(1, 12));
    CHECK(std::abs(r2.coeff(Rational(1, 12)) - 2.0) < 1e-15);

    const FracQSeries sum = FracQSeries::monomial(1.0, Rational(1, 2)) + FracQSeries::monomial(1.0, Rational(1, 3));
    CHECK(sum.denom() % 6 == 0);
    CHECK(sum.coeff(Rational(1, 2)) == cplx(1, 0));
    CHECK(sum.coeff(Rational(1, 3)) == cplx(1, 0));
    CHECK(sum.is_exact());

    CHECK_THROWS(FracQSeries::constant(1.0) / FracQSeries::zero());
}

TEST_CASE("truncation order is tracked") {
    const FracQSeries a = eta_series(8), b = theta_series(3, 5);
    const FracQSeries p = a * b;
    REQUIRE(p.order());
    // min(8 + 1/24 + 0, 5 + 1/24)
    CHECK(*p.order() == Rational(5) + Rational(1, 24));
    const FracQSeries big = eta_series(30) * theta_series(3, 30);
    CHECK(max_diff_below(p, big, *p.order()) < 1e-12);

    const FracQSeries q = theta_series(3, 12) / eta_series(12);
    const FracQSeries qbig = theta_series(3, 30) / eta_series(30);
    REQUIRE(q.order());
    CHECK(max_diff_below(q, qbig, *q.order()) < 1e-9);
    const FracQSeries s = a + b;
    REQUIRE(s.order());
    CHECK(*s.order() == Rational(5));
}

TEST_CASE("multiplication is associative and commutative") {
    std::mt19937_64 rng(17);
    for (int n = 0; n < 20; ++n) {
        const FracQSeries a = random_series(rng, 2, -1, 20), b = random_series(rng, 3, 0, 25),
                          c = random_series(rng, 4, 1, 30);
        const FracQSeries ab = a * b, ba = b * a;
        REQUIRE(ab.order());
        CHECK(max_diff_below(ab, ba, *ab.order()) < 1e-12);
        const FracQSeries l = (a * b) * c, r = a * (b * c);
        REQUIRE(l.order());
        CHECK(*l.order() == *r.order());
        CHECK(max_diff_below(l, r, *l.order()) < 1e-12);
    }
}

TEST_CASE("normalization is canonical") {
    const FracQSeries s(1, 4, 2, {1.0, 0.0, 3.0, 0.0, 5.0}, FracQSeries::kExact);
    const FracQSeries n = s.normalized();
    CHECK(n.denom() == 2);
    CHECK(n.coeff(Rational(1, 2)) == cplx(1, 0));
    CHECK(n.coeff(1) == cplx(3, 0));
    CHECK(n.coeff(Rational(3, 2)) == cplx(5, 0));
    CHECK(n.normalized().denom() == n.denom());
    CHECK(s.regrid(12).coeff(1) == cplx(3, 0));
}

TEST_CASE("evaluation") {
    CHECK(FracQSeries::zero().evaluate(I).value == cplx(0, 0));
    CHECK_THROWS_AS(eta_series(10).evaluate(cplx(0, 1e-4)), std::domain_error);
    CHECK_THROWS_AS(eta_series(10).evaluate(cplx(0, -1)), std::domain_error);
    // Tail estimate bounds the truncation error.
    const FracQSeries short_eta = eta_series(3);
    const cplx tau(0.1, 0.3);
    const SeriesValue v = short_eta.evaluate(tau);
    CHECK(std::abs(v.value - eta_direct(tau)) <= 10.0 * v.tail);
    CHECK(v.tail > 0.0);
}

TEST_CASE("logarithmic expansions") {
    CHECK(LogQExpansion().evaluate(I).value == cplx(0, 0));
    const LogQExpansion e({LogTerm{1, FracQSeries::monomial(1.0, Rational(1))}});
    const cplx expect = 2.0 * pi * I * I * std::exp(-2.0 * pi);
    CHECK(std::abs(e.evaluate(I).value - expect) < 1e-15);
    CHECK(e.max_log_power() == 1);
    CHECK_FALSE(e.is_pure());

    // (τ/h)·q̃ equals (log q̃ / 2πi)·q̃.
    const LogQExpansion u = LogQExpansion(FracQSeries::monomial(1.0, Rational(1))).times_u_power(1);
    const cplx tau(0.3, 0.9);
    CHECK(std::abs(u.evaluate(tau).value - tau * std::exp(2.0 * pi * I * tau)) < 1e-15);

    const LogQExpansion merged({LogTerm{0, FracQSeries::constant(1.0)}, LogTerm{0, FracQSeries::constant(2.0)}});
    CHECK(merged.terms().size() == 1);
    CHECK(merged.term(0)->coeff(0) == cplx(3, 0));

    const LogQExpansion z = (u + u.scaled(-1.0)).pruned(1e-12);
    CHECK(z.is_zero());
}
