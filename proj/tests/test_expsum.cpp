#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vvaf/expsum.hpp"

#include <cmath>
#include <numbers>

using namespace vvaf;
using std::numbers::pi;

TEST_CASE("theta parsing") {
    const Theta a = Theta::parse("2/6");
    CHECK(a.p == 1);
    CHECK(a.q == 3);
    const Theta b = Theta::parse("0.7");
    CHECK(b.p == 7);
    CHECK(b.q == 10);
    const Theta c = Theta::parse("1/-4");
    CHECK(c.p == -1);
    CHECK(c.q == 4);
    CHECK(Theta::parse("0").value() == 0.0);
    CHECK(Theta::parse("0.7071067811865475").value() == doctest::Approx(std::sqrt(0.5)));
    CHECK(Theta::parse("3/7").to_string() == "3/7");
    CHECK_THROWS_AS(Theta::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Theta::parse("1/0"), std::invalid_argument);
}

TEST_CASE("unit phase is exact modulo one") {
    const Theta t{1, 3};
    CHECK(std::abs(unit_phase(3, t) - 1.0) < 1e-15);
    CHECK(std::abs(unit_phase(1, t) - std::polar(1.0, 2 * pi / 3)) < 1e-15);
    CHECK(std::abs(unit_phase(-1, t) - std::polar(1.0, -2 * pi / 3)) < 1e-15);
    // Large n is reduced before rounding.
    CHECK(std::abs(unit_phase(3000000000000001LL, t) - unit_phase(1, t)) < 1e-15);
}

TEST_CASE("theta zero gives partial sums of coefficients") {
    const VVAF x = eta4_theta_vvaf(200);
    const FourierCoefficients c = x.coefficients(200);
    for (std::int64_t cut : {1, 10, 57, 200}) {
        Vector s = Vector::Zero(3);
        for (std::int64_t n = std::max<std::int64_t>(0, c.n_min); n < cut; ++n) s += c.c[static_cast<std::size_t>(n - c.n_min)];
        CHECK((exp_sum(x, Theta{}, cut) - s).norm() < 1e-12 * std::max(1.0, s.norm()));
    }
}

TEST_CASE("Delta at one half is an alternating sum of tau") {
    const VVAF d = delta_vvaf(20);
    // Σ_{n<10} (−1)ⁿτ(n)
    const double tau[10] = {0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643};
    double expect = 0.0;
    for (int n = 1; n < 10; ++n) expect += (n % 2 ? -1.0 : 1.0) * tau[n];
    const Vector s = exp_sum(d, Theta{1, 2}, 10);
    CHECK(std::abs(s(0) - expect) < 1e-9);
}

TEST_CASE("zero form, conjugation, periodicity and additivity") {
    const VVAF z(2, theta_eta_twist_rep(), std::vector<LogQExpansion>(3));
    CHECK(exp_sum(z, Theta{1, 3}, 50).norm() == 0.0);

    const VVAF d = delta_vvaf(500);
    const FourierCoefficients c = d.coefficients(500);
    const cplx base = exp_sum(c, Theta{2, 7}, 400)(0);
    // Real coefficients: S(−θ) = conj S(θ).
    CHECK(std::abs(exp_sum(c, Theta{-2, 7}, 400)(0) - std::conj(base)) < 1e-12 * std::abs(base));
    // Period one in θ.
    CHECK(std::abs(exp_sum(c, Theta{9, 7}, 400)(0) - base) < 1e-12 * std::abs(base));
    // Sums over the q residues of e(n/q) vanish: Σ_θ S(θ) = q·Σ_{q|n} c_n.
    cplx total = 0.0;
    for (int p = 0; p < 5; ++p) total += exp_sum(c, Theta{p, 5}, 400)(0);
    cplx expect = 0.0;
    for (std::int64_t n = 5; n < 400; n += 5) expect += 5.0 * c.c[static_cast<std::size_t>(n - c.n_min)](0);
    CHECK(std::abs(total - expect) < 1e-9 * std::abs(expect));
}

TEST_CASE("slot sums add up") {
    const VVAF x = sym2_delta_vvaf(300);
    const FourierCoefficients c = x.coefficients(300);
    const Theta t{1, 3};
    const auto slots = exp_sum_slots(c, t, 300);
    Vector tot = Vector::Zero(x.dim());
    for (const auto& s : slots) tot(s.component) += s.sum;
    CHECK((tot - exp_sum(c, t, 300)).norm() < 1e-9 * std::max(1.0, tot.norm()));
}

TEST_CASE("out of range cutoffs throw") {
    const VVAF d = delta_vvaf(50);
    CHECK_THROWS_AS(exp_sum(d, Theta{1, 3}, 1000), std::out_of_range);
    CHECK_THROWS_AS(bound_scan(d, {}, {100}, 0.0), std::invalid_argument);
}

TEST_CASE("bound scan") {
    for (const char* name : {"eta4-theta", "delta"}) {
        const VVAF x = builtin_vvaf(name, 2000);
        const ExpSumScan s = bound_scan(x, default_thetas(), default_cutoffs(), 0.0);
        INFO(name);
        CHECK(s.cells.size() == default_thetas().size() * default_cutoffs().size());
        CHECK(s.exponent == doctest::Approx(x.weight() / 2.0));
        CHECK(s.verdict == Verdict::Pass);
        CHECK(s.ratio_large <= 3.0 * s.ratio_small);
    }
}
