#pragma once

#include "vvaf/moebius.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vvaf {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// ρ on `group`, given by the images of s and t of a representation of PSL2(Z)
// (restricted to `group` when it is a proper subgroup).
class Representation {
public:
    Representation(Matrix s, Matrix t, Subgroup group = Subgroup::full());

    int dim() const { return static_cast<int>(s_.rows()); }
    const Matrix& mat_s() const { return s_; }
    const Matrix& mat_t() const { return t_; }
    const Matrix& mat_t_inv() const { return t_inv_; }
    const Subgroup& group() const { return group_; }

    Matrix evaluate(const SL2Z& g) const;
    Matrix evaluate(const Word& w) const;
    // Image of t^n for any integer n (binary powering).
    Matrix t_power(std::int64_t n) const;

    void enable_memo();
    bool memo_enabled() const { return memo_ != nullptr; }

private:
    struct Memo;
    Matrix s_, t_, t_inv_;
    Subgroup group_;
    std::shared_ptr<Memo> memo_;
};

struct ValidationReport {
    double s_deviation;   // max |(ρ(s)²−I)_ij|
    double st_deviation;  // max |((ρ(s)ρ(t))³−I)_ij|
    bool pass;
    std::string detail;
};
ValidationReport validate(const Representation& rho, double tol = 1e-10);

struct MuValue {
    double value;
    std::optional<std::pair<std::int64_t, std::int64_t>> exact;  // p/q in lowest terms
};
MuValue mu(cplx lambda);

struct JordanBlock {
    cplx lambda;
    int size;
};

struct JordanData {
    Matrix P;  // M = P·J·P⁻¹ with J upper-triangular Jordan form
    Matrix J;
    std::vector<JordanBlock> blocks;
    double tol;
    double reconstruction_error;  // max entry of |P·J·P⁻¹ − M|
    bool reliable;
    std::string diagnostic;
};
JordanData jordan_form(const Matrix& m, double tol = 1e-8);

bool is_admissible(const Representation& rho);
bool is_polynomial_growth(const Representation& rho);

struct ParabolicNorms {
    std::vector<double> norms;  // ‖ρ(t_∞ⁿ)‖_F, n = 1..nmax
    double slope;               // log-log fit over the upper half of the range
    double exp_rate;            // log‖ρ(t_∞^nmax)‖ / nmax
};
ParabolicNorms parabolic_power_norms(const Representation& rho, int nmax);

// Images of the parabolic generators of each cusp class.
std::vector<Matrix> parabolic_images(const Representation& rho);

Representation induce(const Representation& rho, const std::vector<SL2Z>& reps);
// Block matrix of the induced representation at x, built directly from the block formula.
Matrix induced_block_matrix(const Representation& rho, const std::vector<SL2Z>& reps, const SL2Z& x);

enum class GrowthClass { Polynomial, Exponential };
std::string to_string(GrowthClass g);

struct SamplerConfig {
    std::uint64_t seed = 20240917;
    int word_samples = 400;
    int max_word_length = 30;
    int matrix_samples = 400;
    std::int64_t max_entry = 1000000;
};

struct GrowthSample {
    double group_norm;
    double rep_norm;
    double sharp_ratio;  // ‖ρ(γ)‖ / ((c²+d²)^{α/2}·max(⌊|a/c|⌋^{m−1}, 1)); NaN when c = 0
};

struct GrowthFit {
    GrowthClass classification;
    double alpha_emp;
    double fit_residual;
    double max_ratio;        // max ‖ρ(γ)‖ / ‖γ‖^{α_emp}
    double sharp_max_ratio;  // max over samples with c ≠ 0
    std::size_t samples;
    bool unitary;
    double tn_rate;          // log‖ρ(tⁿ)‖/n at n = 60
    std::uint64_t seed;
    std::vector<GrowthSample> data;
};
GrowthFit growth_exponent(const Representation& rho, const SamplerConfig& cfg = {});

bool is_unitary(const Representation& rho, double tol = 1e-10);

using Params = std::map<std::string, cplx>;
Params parse_params(const std::vector<std::string>& kv);
cplx parse_complex(const std::string& text);

Representation theta_eta_rep();
// Weight-2 twist of theta-eta: s ↦ −ρ(s), t ↦ e^{πi/3}ρ(t).
Representation theta_eta_twist_rep();
Representation nonpoly_rep(cplx a, std::vector<std::string>* warnings = nullptr);
Representation sym2_rep();
Representation trivial_rep(int m = 1, const Subgroup& group = Subgroup::full());
// Block-diagonal ρ₁ ⊕ ρ₂ on the group of ρ₁.
Representation direct_sum(const Representation& a, const Representation& b);

Representation builtin(const std::string& name, const Params& params = {},
                       std::vector<std::string>* warnings = nullptr);
std::vector<std::string> builtin_names();

double max_abs(const Matrix& m);

}  // namespace vvaf
