#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vvaf/lfunc.hpp"

#include <cmath>
#include <numbers>

using namespace vvaf;
using std::numbers::pi;

namespace {

// τ(n) from (n−1)τ(n) = −24·Σ_{k<n} σ(k)τ(n−k), the logarithmic derivative of q∏(1−qⁿ)^24.
std::vector<double> ramanujan_tau(int n_max) {
    std::vector<long double> sigma(static_cast<std::size_t>(n_max) + 1, 0.0L), tau(sigma);
    for (int d = 1; d <= n_max; ++d)
        for (int m = d; m <= n_max; m += d) sigma[static_cast<std::size_t>(m)] += d;
    tau[1] = 1.0L;
    for (int n = 2; n <= n_max; ++n) {
        long double acc = 0.0L;
        for (int k = 1; k < n; ++k) acc += sigma[static_cast<std::size_t>(k)] * tau[static_cast<std::size_t>(n - k)];
        tau[static_cast<std::size_t>(n)] = -24.0L * acc / (n - 1);
    }
    return std::vector<double>(tau.begin(), tau.end());
}

cplx dirichlet_direct(const std::vector<double>& coeff, cplx s) {
    cplx sum = 0.0;
    for (std::size_t n = 1; n < coeff.size(); ++n) sum += coeff[n] * std::exp(-s * std::log(static_cast<double>(n)));
    return sum;
}

}  // namespace

TEST_CASE("gamma function") {
    CHECK(std::abs(vvaf::gamma(cplx(5, 0)) - 24.0) < 1e-12);
    CHECK(std::abs(vvaf::gamma(cplx(0.5, 0)) - std::sqrt(pi)) < 1e-14);
    for (cplx z : {cplx(0.3, 1.2), cplx(4.5, -3.0), cplx(-1.7, 0.4), cplx(9.0, 2.0)}) {
        const cplx lhs = vvaf::gamma(z + 1.0), rhs = z * vvaf::gamma(z);
        CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-13);
    }
    for (double x : {0.25, 1.7, 3.3, 12.5}) CHECK(std::abs(vvaf::gamma(cplx(x, 0)).real() - std::tgamma(x)) / std::tgamma(x) < 1e-13);
    // |Γ(1/2+it)|² = π/cosh(πt).
    const double t = 2.5;
    CHECK(std::norm(vvaf::gamma(cplx(0.5, t))) == doctest::Approx(pi / std::cosh(pi * t)).epsilon(1e-12));
}

TEST_CASE("zero form has vanishing L-values") {
    const VVAF z(12, trivial_rep(1), std::vector<LogQExpansion>(1));
    CHECK(completed_L(z, cplx(7, 0)).value.norm() == 0.0);
    CHECK(completed_L_sum(z, cplx(7, 0)).value.norm() == 0.0);
}

TEST_CASE("Dirichlet series of Delta against direct summation") {
    const std::vector<double> tau = ramanujan_tau(3000);
    CHECK(tau[2] == -24.0);
    CHECK(tau[12] == -370944.0);
    const VVAF d = delta_vvaf(3000);
    for (cplx s : {cplx(8, 0), cplx(9, 2)}) {
        const LValue l = dirichlet_L(d, s);
        CHECK(l.rigorous);
        const cplx ref = dirichlet_direct(tau, s);
        CHECK(std::abs(l.value(0) - ref) < 1e-6 * std::abs(ref) + l.error);
    }
}

TEST_CASE("Mellin integral of Delta matches the completed Dirichlet series") {
    const VVAF d = delta_vvaf(2000);
    for (cplx s : {cplx(8, 0), cplx(7, 0), cplx(6, 3)}) {
        const LValue a = completed_L(d, s);
        const LValue b = completed_L_sum(d, s);
        INFO(s);
        CHECK(std::abs(a.value(0) - b.value(0)) < 1e-6 * std::max(1.0, std::abs(a.value(0))));
    }
    // (2π)^{−s}Γ(s)L(s) in the region of absolute convergence.
    const cplx s(8, 0);
    const cplx direct = std::pow(2 * pi, -8.0) * std::tgamma(8.0) * dirichlet_L(d, s).value(0);
    CHECK(std::abs(completed_L(d, s).value(0) - direct) < 1e-8 * std::abs(direct));
}

TEST_CASE("split independence and conjugate symmetry") {
    const VVAF d = delta_vvaf(2000);
    for (cplx s : {cplx(6, 0), cplx(5, 2), cplx(6, 3)}) {
        const cplx a = completed_L(d, s, 0.7).value(0), b = completed_L(d, s, 1.3).value(0);
        CHECK(std::abs(a - b) < 1e-7 * std::max(1.0, std::abs(a)));
    }
    // Real coefficients: Λ(s̄) = conj Λ(s).
    CHECK(std::abs(completed_L(d, cplx(6, -3)).value(0) - std::conj(completed_L(d, cplx(6, 3)).value(0))) < 1e-10);

    const VVAF e = eta4_theta_vvaf(2000);
    const LValue a = completed_L(e, cplx(1, 0), 0.8), b = completed_L(e, cplx(1, 0), 1.25);
    CHECK((a.value - b.value).norm() < 1e-7);
    CHECK(a.error < 1e-6);
}

TEST_CASE("functional equation") {
    const VVAF d = delta_vvaf(2000);
    for (cplx s : {cplx(6, 0), cplx(7, 0), cplx(5, 0), cplx(6.5, 2)}) {
        const FEResidual r = functional_equation_residual(d, s);
        INFO(s);
        CHECK(r.plus < 1e-6);
        CHECK(r.minus > 1e-4);
        CHECK(r.selected == 1);
    }
    // Λ(s) = (−1)^{k/2}Λ(k−s) for level one: on the line Re s = 6 this forces Λ real.
    const cplx v = completed_L(d, cplx(6, 3)).value(0);
    CHECK(std::abs(v.imag()) < 1e-10 * std::max(1.0, std::abs(v)));

    const VVAF e = eta4_theta_vvaf(2000);
    const FEResidual r = functional_equation_residual(e, cplx(1, 2));
    CHECK(std::min(r.plus, r.minus) < 1e-6);
    CHECK(std::max(r.plus, r.minus) > 1e-4);
    CHECK(r.selected != 0);
}

TEST_CASE("method agreement outside the half-plane") {
    const VVAF d = delta_vvaf(2000);
    const cplx s(6, 1);
    const LValue sum = completed_L_sum(d, s);
    const LValue mel = completed_L(d, s);
    CHECK_FALSE(sum.rigorous);
    CHECK_FALSE(sum.warnings.empty());
    CHECK(std::abs(sum.value(0) - mel.value(0)) < 1e-5 * std::abs(mel.value(0)) + sum.error);
}

TEST_CASE("continuity in s") {
    const VVAF d = delta_vvaf(1000);
    const cplx a = completed_L(d, cplx(6, 1)).value(0);
    const cplx b = completed_L(d, cplx(6, 1.001)).value(0);
    CHECK(std::abs(a - b) < 1e-2 * std::abs(a));
    CHECK(std::abs(a - b) > 0.0);
}

TEST_CASE("non-cusp forms are rejected") {
    const VVAF x = theta_eta_vvaf(40);
    CHECK_THROWS_AS(completed_L(x, cplx(2, 0)), std::invalid_argument);
    CHECK_THROWS_AS(dirichlet_L(x, cplx(2, 0)), std::invalid_argument);
    CHECK_THROWS_AS(completed_L(delta_vvaf(40), cplx(7, 0), 0.0), std::invalid_argument);
}
