#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vvaf/repr.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace vvaf;
using std::numbers::pi;

namespace {

const cplx I(0, 1);

bool contains_eigenvalue(const std::vector<JordanBlock>& blocks, cplx v, double tol) {
    for (const auto& b : blocks)
        if (std::abs(b.lambda - v) < tol) return true;
    return false;
}

double rel_dev(const Matrix& a, const Matrix& b) { return max_abs(a - b) / std::max(1.0, max_abs(b)); }

}  // namespace

TEST_CASE("relation validation") {
    CHECK(validate(theta_eta_rep()).pass);
    CHECK(validate(theta_eta_rep()).s_deviation < 1e-14);
    CHECK(validate(theta_eta_rep()).st_deviation < 1e-14);
    CHECK(validate(nonpoly_rep(I)).pass);
    CHECK(validate(sym2_rep()).pass);
    CHECK(validate(theta_eta_twist_rep()).pass);
    CHECK(validate(trivial_rep(4)).pass);

    Matrix t(2, 2);
    t << 1, 1, 0, 1;
    const ValidationReport bad = validate(Representation(Matrix::Identity(2, 2), t));
    CHECK_FALSE(bad.pass);
    CHECK(bad.s_deviation == 0.0);
    // (st)³ = t³ = (1,3;0,1), off by 3 in one entry.
    CHECK(bad.st_deviation == doctest::Approx(3.0));
}

TEST_CASE("evaluation") {
    const Representation rho = theta_eta_rep();
    CHECK(max_abs(rho.evaluate(SL2Z()) - Matrix::Identity(3, 3)) == 0.0);
    const Matrix t = rho.mat_t();
    CHECK(max_abs(rho.evaluate(SL2Z::T(5)) - t * t * t * t * t) < 1e-14);
    const Matrix alt = rho.mat_t() * rho.mat_s() * rho.mat_t_inv() * rho.mat_s();
    CHECK(max_abs(rho.evaluate(SL2Z(2, 1, 1, 1)) - alt) < 1e-14);
    CHECK(max_abs(rho.t_power(-7) * rho.t_power(7) - Matrix::Identity(3, 3)) < 1e-13);
}

TEST_CASE("homomorphism on random pairs for every built-in") {
    std::mt19937_64 rng(5);
    for (const auto& name : {"theta-eta", "theta-eta-twist", "sym2", "trivial"}) {
        const Representation rho = builtin(name);
        double worst = 0.0;
        for (int n = 0; n < 500; ++n) {
            const SL2Z a = random_element(rng, 200), b = random_element(rng, 200);
            worst = std::max(worst, rel_dev(rho.evaluate(a * b), rho.evaluate(a) * rho.evaluate(b)));
        }
        INFO(name);
        CHECK(worst < 1e-8);
    }
    const Representation np = nonpoly_rep(I);
    double worst = 0.0;
    for (int n = 0; n < 500; ++n) {
        const SL2Z a = random_word_element(rng, 6), b = random_word_element(rng, 6);
        worst = std::max(worst, rel_dev(np.evaluate(a * b), np.evaluate(a) * np.evaluate(b)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("subgroup evaluation rejects outside elements") {
    const Representation r = trivial_rep(1, Subgroup::gamma(2));
    CHECK_NOTHROW(r.evaluate(SL2Z::T(2)));
    CHECK_THROWS_AS(r.evaluate(SL2Z::T(1)), std::invalid_argument);
}

TEST_CASE("mu") {
    CHECK(mu(1.0).value == 0.0);
    CHECK(mu(-1.0).value == 0.5);
    const MuValue m = mu(-std::polar(1.0, -pi / 12));
    REQUIRE(m.exact);
    CHECK(m.exact->first == 11);
    CHECK(m.exact->second == 24);
    CHECK_THROWS_AS(mu(2.0), std::invalid_argument);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < 200; ++n) {
        const double x = u(rng);
        CHECK(std::abs(mu(std::polar(1.0, 2 * pi * x)).value - x) < 1e-12);
    }
    // irrational angles come back as floats
    CHECK_FALSE(mu(std::polar(1.0, 2 * pi * 0.123456789123)).exact.has_value());
}

TEST_CASE("jordan form") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2;
    d(1, 1) = 3;
    JordanData jd = jordan_form(d);
    REQUIRE(jd.blocks.size() == 2);
    CHECK(jd.blocks[0].size == 1);
    CHECK(jd.blocks[1].size == 1);
    CHECK(contains_eigenvalue(jd.blocks, 2.0, 1e-12));
    CHECK(contains_eigenvalue(jd.blocks, 3.0, 1e-12));

    Matrix u(2, 2);
    u << 1, 1, 0, 1;
    jd = jordan_form(u);
    REQUIRE(jd.blocks.size() == 1);
    CHECK(jd.blocks[0].size == 2);
    CHECK(std::abs(jd.blocks[0].lambda - 1.0) < 1e-12);

    Matrix r(2, 2);
    r << 0, 1, -1, 0;
    jd = jordan_form(r);
    REQUIRE(jd.blocks.size() == 2);
    CHECK(contains_eigenvalue(jd.blocks, I, 1e-12));
    CHECK(contains_eigenvalue(jd.blocks, -I, 1e-12));

    for (const auto& name : builtin_names()) {
        const Representation rho = builtin(name);
        for (const Matrix& m : {rho.mat_s(), rho.mat_t()}) {
            const JordanData j = jordan_form(m);
            INFO(name);
            CHECK(j.reliable);
            CHECK(max_abs(j.P * j.J * j.P.inverse() - m) <= 1e-7 * std::max(1.0, m.norm()));
        }
    }
}

TEST_CASE("admissibility and polynomial growth") {
    CHECK(is_admissible(theta_eta_rep()));
    CHECK_FALSE(is_admissible(sym2_rep()));
    CHECK(is_admissible(trivial_rep(1)));
    Matrix s1(1, 1), t1(1, 1);
    s1(0, 0) = -1.0;
    t1(0, 0) = std::polar(1.0, 2 * pi / 3);
    CHECK(is_admissible(Representation(s1, t1)));

    CHECK(is_polynomial_growth(theta_eta_rep()));
    CHECK_FALSE(is_polynomial_growth(nonpoly_rep(I)));
    CHECK(is_polynomial_growth(sym2_rep()));
    CHECK(is_polynomial_growth(trivial_rep(2)));
}

TEST_CASE("parabolic power norms") {
    const ParabolicNorms triv = parabolic_power_norms(trivial_rep(1), 50);
    for (double v : triv.norms) CHECK(v == doctest::Approx(1.0));
    CHECK(std::abs(triv.slope) < 1e-12);

    const ParabolicNorms s2 = parabolic_power_norms(sym2_rep(), 200);
    CHECK(s2.slope <= 2.1);
    CHECK(s2.slope > 1.5);

    const ParabolicNorms np = parabolic_power_norms(nonpoly_rep(I), 60);
    CHECK(np.exp_rate == doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)).epsilon(0.02));
}

TEST_CASE("theta-eta built-in eigenvalues") {
    const JordanData jd = jordan_form(theta_eta_rep().mat_t());
    REQUIRE(jd.blocks.size() == 3);
    CHECK(contains_eigenvalue(jd.blocks, std::polar(1.0, pi / 6), 1e-12));
    CHECK(contains_eigenvalue(jd.blocks, std::polar(1.0, -pi / 12), 1e-12));
    CHECK(contains_eigenvalue(jd.blocks, -std::polar(1.0, -pi / 12), 1e-12));
}

TEST_CASE("nonpoly closed form") {
    const Representation rho = nonpoly_rep(I);
    const cplx l1 = rho.mat_t()(0, 0), l2 = rho.mat_t()(1, 1), l3 = rho.mat_t()(2, 2);
    CHECK(std::abs(l1 * l2 + l3 * l3) < 1e-14);
    CHECK(std::abs(1.0 / (l1 * l2 * (l1 - l2)) - I) < 1e-14);
    CHECK(std::abs(l1 - I * (1 + std::sqrt(5.0)) / 2.0) < 1e-14);
    CHECK(std::abs(l2 - I * (std::sqrt(5.0) - 1) / 2.0) < 1e-14);

    std::vector<std::string> warnings;
    nonpoly_rep(I * 2.0, &warnings);
    CHECK(warnings.empty());
    const Representation r2 = nonpoly_rep(cplx(0.5, 1), &warnings);
    CHECK(warnings.size() == 1);
    CHECK(validate(r2).pass);
    CHECK_THROWS_AS(nonpoly_rep(0.0), std::invalid_argument);
}

TEST_CASE("sym2 is a single unipotent block") {
    const JordanData jd = jordan_form(sym2_rep().mat_t());
    REQUIRE(jd.blocks.size() == 1);
    CHECK(jd.blocks[0].size == 3);
}

TEST_CASE("induction") {
    const Representation same = induce(theta_eta_rep(), {SL2Z()});
    CHECK(max_abs(same.mat_s() - theta_eta_rep().mat_s()) == 0.0);
    CHECK(max_abs(same.mat_t() - theta_eta_rep().mat_t()) == 0.0);

    const Subgroup g2 = Subgroup::gamma(2);
    const auto reps = left_transversal(g2);
    const Representation ind = induce(trivial_rep(1, g2), reps);
    CHECK(ind.dim() == 6);
    CHECK(validate(ind).pass);
    for (const Matrix& m : {ind.mat_s(), ind.mat_t()}) {
        for (int i = 0; i < 6; ++i) {
            int row = 0, col = 0;
            for (int j = 0; j < 6; ++j) {
                const cplx r = m(i, j), c = m(j, i);
                CHECK((std::abs(r) < 1e-15 || std::abs(r - 1.0) < 1e-15));
                row += std::abs(r) > 0.5;
                col += std::abs(c) > 0.5;
            }
            CHECK(row == 1);
            CHECK(col == 1);
        }
    }
    for (const auto& b : jordan_form(ind.mat_t()).blocks) CHECK(std::abs(std::abs(b.lambda) - 1.0) < 1e-12);
    CHECK(is_polynomial_growth(trivial_rep(1, g2)) == is_polynomial_growth(ind));

    std::mt19937_64 rng(9);
    for (int n = 0; n < 50; ++n) {
        const SL2Z a = random_element(rng, 100), b = random_element(rng, 100);
        CHECK(max_abs(ind.evaluate(a * b) - ind.evaluate(a) * ind.evaluate(b)) < 1e-12);
        CHECK(max_abs(ind.evaluate(a) - induced_block_matrix(trivial_rep(1, g2), reps, a)) < 1e-12);
    }

    std::vector<SL2Z> bad = reps;
    bad[1] = bad[2];
    CHECK_THROWS_AS(induce(trivial_rep(1, g2), bad), std::invalid_argument);
    bad = reps;
    bad.pop_back();
    CHECK_THROWS_AS(induce(trivial_rep(1, g2), bad), std::invalid_argument);
}

TEST_CASE("growth exponent") {
    SamplerConfig cfg;
    cfg.word_samples = 200;
    cfg.matrix_samples = 200;
    const GrowthFit triv = growth_exponent(trivial_rep(1), cfg);
    CHECK(triv.classification == GrowthClass::Polynomial);
    CHECK(std::abs(triv.alpha_emp) < 1e-12);

    const GrowthFit te = growth_exponent(theta_eta_rep(), cfg);
    CHECK(te.classification == GrowthClass::Polynomial);
    CHECK(te.alpha_emp <= 0.05);
    CHECK(te.unitary);
    CHECK(te.seed == cfg.seed);

    const GrowthFit np = growth_exponent(nonpoly_rep(I), cfg);
    CHECK(np.classification == GrowthClass::Exponential);
    CHECK(np.tn_rate == doctest::Approx(0.4812).epsilon(0.02));

    const GrowthFit s2 = growth_exponent(sym2_rep(), cfg);
    CHECK(s2.classification == GrowthClass::Polynomial);
    CHECK(s2.alpha_emp > 0.5);

    // Same seed, same samples.
    const GrowthFit again = growth_exponent(sym2_rep(), cfg);
    CHECK(again.alpha_emp == s2.alpha_emp);
    CHECK(again.max_ratio == s2.max_ratio);
}

TEST_CASE("parameter parsing") {
    CHECK(parse_complex("i") == I);
    CHECK(parse_complex("-2.5i") == cplx(0, -2.5));
    CHECK(parse_complex("1-2i") == cplx(1, -2));
    CHECK(parse_complex("3") == cplx(3, 0));
    CHECK(parse_complex("1e-3+1e2i") == cplx(1e-3, 100));
    CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
    const Params p = parse_params({"a=i", "m=3"});
    CHECK(p.at("a") == I);
    CHECK(p.at("m") == cplx(3, 0));
    CHECK_THROWS_AS(parse_params({"a"}), std::invalid_argument);
    CHECK_THROWS_AS(builtin("nope"), std::invalid_argument);
    CHECK(builtin("trivial", parse_params({"m=3"})).dim() == 3);
    CHECK(builtin("trivial", parse_params({"gamma=2"})).group().kind() == Subgroup::Kind::Gamma);
}

TEST_CASE("direct sum is block diagonal") {
    const Representation d = direct_sum(theta_eta_rep(), trivial_rep(1));
    CHECK(d.dim() == 4);
    CHECK(validate(d).pass);
    CHECK(std::abs(d.mat_t()(3, 3) - 1.0) == 0.0);
    CHECK(std::abs(d.mat_t()(0, 3)) == 0.0);
}
