#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vvaf/form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace vvaf;
using std::numbers::pi;

namespace {

const cplx I(0, 1);

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

std::vector<cplx> grid(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.6, 2.0);
    std::vector<cplx> out;
    for (int i = 0; i < count; ++i) out.emplace_back(ux(rng), uy(rng));
    return out;
}

LogQExpansion monomial_u(cplx c, Rational e, int u_power, int h) {
    return LogQExpansion(FracQSeries::monomial(c, e, h)).times_u_power(u_power);
}

}  // namespace

TEST_CASE("theta-eta evaluation agrees with direct summation") {
    const VVAF x = theta_eta_vvaf(60);
    for (cplx tau : {I, cplx(0.2, 0.7), cplx(-0.45, 1.6)}) {
        const Vector v = x.evaluate(tau).value;
        const cplx e = eta_direct(tau);
        CHECK(std::abs(v(0) - theta_direct(2, tau) / e) < 1e-10);
        CHECK(std::abs(v(1) - theta_direct(3, tau) / e) < 1e-10);
        CHECK(std::abs(v(2) - theta_direct(4, tau) / e) < 1e-10);
    }
}

TEST_CASE("transformation law") {
    const VVAF x = theta_eta_vvaf(60);
    CHECK(check_transformation(x, SL2Z::T(), {cplx(0, 2)}).residual < 1e-12);
    CHECK(check_transformation(x, SL2Z::S(), {cplx(0, 2)}).residual < 1e-8);
    const VVAF y = eta4_theta_vvaf(60);
    CHECK(check_transformation(y, SL2Z::S(), {cplx(0.5, 2)}).residual < 1e-8);
    const SL2Z tsts = SL2Z::T() * SL2Z::S() * SL2Z::T(-1) * SL2Z::S();
    CHECK(check_transformation(x, tsts, grid(10, 1)).residual < 1e-8);
    CHECK(check_transformation(y, tsts, grid(10, 2)).residual < 1e-8);
    const VVAF d = delta_vvaf(60);
    CHECK(check_transformation(d, SL2Z::S(), grid(10, 3)).residual < 1e-10);
    const VVAF s2 = sym2_delta_vvaf(60);
    CHECK(check_transformation(s2, SL2Z::S(), grid(10, 4)).residual < 1e-10);

    // A form with the wrong representation fails.
    const VVAF wrong(0, theta_eta_twist_rep(), x.components());
    CHECK(check_transformation(wrong, SL2Z::S(), {cplx(0, 2)}).residual > 0.1);
}

TEST_CASE("translation consistency for every built-in") {
    for (const auto& name : builtin_vvaf_names()) {
        const VVAF x = builtin_vvaf(name, 40);
        const TransformCheck tc = check_transformation(x, SL2Z::T(x.width()), grid(20, 5));
        INFO(name);
        CHECK(tc.points == 20);
        CHECK(tc.residual <= 1e-10 + 10.0 * tc.max_tail);
    }
}

TEST_CASE("assembly errors and flags") {
    const VVAF x = theta_eta_vvaf(20);
    CHECK_THROWS_AS(VVAF(0, theta_eta_rep(), {x.components()[0]}), std::invalid_argument);
    CHECK_THROWS_AS(VVAF(1, theta_eta_rep(), x.components()), std::invalid_argument);
    CHECK_FALSE(x.holomorphic());
    CHECK_FALSE(x.cusp_form());
    CHECK(x.admissible());

    const VVAF y = eta4_theta_vvaf(20);
    CHECK(y.cusp_form());
    CHECK(y.holomorphic());
    const auto lead = y.leading_exponents();
    REQUIRE(lead.size() == 3);
    CHECK(*lead[0] == Rational(1, 4));
    CHECK(*lead[1] == Rational(1, 8));
    CHECK(*lead[2] == Rational(1, 8));

    const VVAF d = delta_vvaf(20);
    CHECK(d.cusp_form());
    CHECK(d.weight() == 12);

    const VVAF s2 = sym2_delta_vvaf(20);
    CHECK(s2.logarithmic());
    CHECK(s2.cusp_form());
    CHECK_FALSE(s2.admissible());

    const VVAF z(0, theta_eta_rep(), std::vector<LogQExpansion>(3));
    CHECK(z.is_zero());
}

TEST_CASE("mu offsets of theta-eta") {
    std::vector<double> mus = theta_eta_vvaf(20).mu_offsets();
    std::sort(mus.begin(), mus.end());
    REQUIRE(mus.size() == 3);
    CHECK(mus[0] == doctest::Approx(1.0 / 12));
    CHECK(mus[1] == doctest::Approx(11.0 / 24));
    CHECK(mus[2] == doctest::Approx(23.0 / 24));
}

TEST_CASE("coefficients") {
    const VVAF x = theta_eta_vvaf(20);
    const FourierCoefficients fc = x.coefficients(20);
    CHECK(fc.n_min == -1);
    // c_0 of θ₂/η is the q^{1/12} coefficient 2; c_{-1} of θ₃/η is the q^{-1/24} coefficient 1.
    CHECK(std::abs(fc.c[1](0) - 2.0) < 1e-15);
    CHECK(std::abs(fc.c[0](1) - 1.0) < 1e-15);
    CHECK_THROWS_AS(x.coefficients(25), std::out_of_range);

    const FourierCoefficients dc = delta_vvaf(10).coefficients(10);
    CHECK(dc.n_min == 1);
    CHECK(std::abs(dc.c[1](0) + 24.0) < 1e-12);
    CHECK(std::abs(dc.c[2](0) - 252.0) < 1e-12);
}

TEST_CASE("coefficient integral") {
    CHECK(coefficient_integral([](cplx) { return cplx(0); }, 3, 0.0, 1.0, 64) == cplx(0, 0));

    const FracQSeries eta = eta_series(40);
    auto f = [&](cplx tau) { return eta.evaluate(tau).value; };
    CHECK(std::abs(coefficient_integral(f, 1, 1.0 / 24, 1.0, 256) + 1.0) < 1e-10);
    CHECK(std::abs(coefficient_integral(f, 0, 1.0 / 24, 1.0, 256) - 1.0) < 1e-10);

    const VVAF x = theta_eta_vvaf(40);
    auto g = [&](cplx tau) { return x.evaluate(tau).value(0); };
    CHECK(std::abs(coefficient_integral(g, 0, 1.0 / 12, 1.0, 256) - 2.0) < 1e-10);

    // Height independence for heights where rounding is not amplified past the tolerance.
    for (int n = 0; n < 10; ++n) {
        const cplx a = coefficient_integral(f, n, 1.0 / 24, 0.1, 256);
        const cplx b = coefficient_integral(f, n, 1.0 / 24, 0.2, 256);
        CHECK(std::abs(a - b) < 1e-9);
        CHECK(std::abs(a - eta.coeff(Rational(1, 24) + n)) < 1e-9);
    }
}

TEST_CASE("integral extraction reproduces symbolic coefficients") {
    const VVAF x = theta_eta_vvaf(150);
    const FourierCoefficients fc = x.coefficients(20);
    for (double y : {0.05, 0.08}) {
        const std::vector<Vector> v = fourier_by_integral(x, -1, 19, y, 256);
        REQUIRE(v.size() == 21);
        double worst = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, (v[i] - fc.c[i]).cwiseAbs().maxCoeff());
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("log recoupling") {
    const cplx lambda = std::polar(1.0, 2 * pi / 3);
    // m(λ) = 1: identity.
    const std::vector<LogQExpansion> one = {LogQExpansion(FracQSeries::monomial(1.0, Rational(1, 3)))};
    const auto id = log_recouple(Recouple::Forward, one, lambda);
    REQUIRE(id.size() == 1);
    CHECK(std::abs(id[0].evaluate(I).value - one[0].evaluate(I).value) < 1e-15);

    for (int h : {1, 2}) {
        // X₀ = q̃^{1/3}, X₁ = (τ/h)·q̃^{1/3}: X(τ+h) = λ(I+L)X(τ).
        const std::vector<LogQExpansion> block = {monomial_u(1.0, Rational(1, 3), 0, h),
                                                  monomial_u(1.0, Rational(1, 3), 1, h)};
        const auto pure = log_recouple(Recouple::Forward, block, lambda, h);
        REQUIRE(pure.size() == 2);
        for (const auto& p : pure) CHECK(p.is_pure());
        // h̃₁ = X₁ − binom(τ/h, 1)·X₀ = 0.
        CHECK(pure[1].pruned(1e-14).is_zero());
        for (cplx tau : grid(5, 8)) {
            const cplx a = pure[0].evaluate(tau + static_cast<double>(h)).value;
            CHECK(std::abs(a - lambda * pure[0].evaluate(tau).value) < 1e-12);
        }
        const auto back = log_recouple(Recouple::Backward, pure, lambda, h);
        for (cplx tau : grid(20, 9))
            for (int i = 0; i < 2; ++i)
                CHECK(std::abs(back[static_cast<std::size_t>(i)].evaluate(tau).value -
                               block[static_cast<std::size_t>(i)].evaluate(tau).value) < 1e-12);
    }

    // A three-block built from pure expansions satisfies the block action and round-trips.
    const std::vector<LogQExpansion> p3 = {monomial_u(1.0, Rational(1, 3), 0, 1), monomial_u(0.5, Rational(4, 3), 0, 1),
                                           monomial_u(-0.25, Rational(7, 3), 0, 1)};
    const auto b3 = log_recouple(Recouple::Backward, p3, lambda);
    for (cplx tau : grid(10, 10)) {
        Vector now(3), next(3);
        for (int i = 0; i < 3; ++i) {
            now(i) = b3[static_cast<std::size_t>(i)].evaluate(tau).value;
            next(i) = b3[static_cast<std::size_t>(i)].evaluate(tau + 1.0).value;
        }
        for (int i = 0; i < 3; ++i) CHECK(std::abs(next(i) - lambda * (now(i) + (i ? now(i - 1) : 0.0))) < 1e-12);
    }
    const auto r3 = log_recouple(Recouple::Forward, b3, lambda);
    for (cplx tau : grid(10, 11))
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(r3[static_cast<std::size_t>(i)].evaluate(tau).value -
                           p3[static_cast<std::size_t>(i)].evaluate(tau).value) < 1e-12);

    // Inputs that do not follow the block action are rejected.
    const std::vector<LogQExpansion> bad = {monomial_u(1.0, Rational(1, 3), 0, 1), monomial_u(1.0, Rational(1, 5), 0, 1)};
    CHECK_THROWS_AS(log_recouple(Recouple::Forward, bad, lambda), std::invalid_argument);
}
