#pragma once

#include "vvaf/fit.hpp"
#include "vvaf/form.hpp"

#include <functional>
#include <string>
#include <vector>

namespace vvaf {

enum class Verdict { Pass, Fail, Degenerate };
std::string to_string(Verdict v);

enum class GrowthTarget { Auto, Holomorphic, Cusp };

struct EffectiveAlpha {
    double alpha;      // 0 when ρ is unitary, else the fitted exponent
    double alpha_log;  // alpha + m, used for logarithmic forms
    bool unitary;
    GrowthFit fit;
};
EffectiveAlpha effective_alpha(const Representation& rho, const SamplerConfig& cfg = {});

struct GrowthReport {
    std::string target_name;  // "k+2alpha" or "k/2+alpha"
    double target;
    double alpha;             // α entering the target
    std::string alpha_used;   // "alpha" or "alpha+m"
    double target_alpha;      // target under α
    double target_alpha_m;    // target under α+m
    double beta;              // fitted log-log slope
    double fit_residual;
    double ratio_start;       // max ‖c_n‖/n^target over [N/2, 3N/4)
    double ratio_top;         // same over [3N/4, N]
    double max_ratio;
    std::int64_t n_lo, n_hi;
    std::size_t points;
    Verdict verdict;
    std::vector<std::pair<std::int64_t, double>> samples;  // (n, ‖c_n‖)
};
GrowthReport coefficient_growth_report(const VVAF& x, std::int64_t n, double alpha,
                                       GrowthTarget target = GrowthTarget::Auto);
GrowthReport coefficient_growth_report(const FourierCoefficients& c, int k, int m, bool logarithmic,
                                       bool cusp, std::int64_t n, double alpha, GrowthTarget target);

struct MeanSquareReport {
    std::vector<double> partial_sums;  // Σ_{1≤n≤M}‖c_n‖², M = 1..N
    double slope;
    double fit_residual;
    double target;
    Verdict verdict;
};
MeanSquareReport mean_square(const VVAF& x, std::int64_t n, double alpha);
MeanSquareReport mean_square(const FourierCoefficients& c, std::int64_t n, double target);

struct SupnormReport {
    double exponent;
    double max_low;   // max y^e‖X‖ over y < 1
    double max_high;  // over y ≥ 1
    double max_all;
    double max_tail;
    std::size_t points;
    Verdict verdict;
};
// nx × ny grid over 0 ≤ x ≤ h, y log-spaced in [y_min, y_max].
SupnormReport supnorm_scan(const VVAF& x, double exponent, int nx = 40, int ny = 40, double y_min = 0.05,
                           double y_max = 10.0);

using Evaluator = std::function<Vector(cplx)>;

struct BlockCheck {
    std::vector<int> indices;
    double constant;
    std::size_t violations;
    bool pass;
};

struct ConverseReport {
    bool fe_ok;
    double fe_residual;
    bool zeta_ok;
    double zeta_low, zeta_high;  // max of the weighted norm below / above y = 1
    double exponent;             // 2ζ − k
    double constant;             // C from the smallest 10% of samples
    std::size_t samples;
    std::size_t violations;      // ratio > 10·C
    bool pass;
    std::vector<BlockCheck> blocks;  // invariant coordinate blocks of ρ
    BlockCheck restricted;           // ρ restricted to the span of the sampled X values
    std::uint64_t seed;
};
// Checks ‖ρ(γ)‖ ≤ C‖γ‖^{2ζ−k} on sampled γ; max_log is the largest power of |τ| in the growth hypothesis.
ConverseReport converse_growth_check(const Evaluator& x, const Representation& rho, int k, double zeta,
                                     int max_log = 0, const SamplerConfig& cfg = {});
ConverseReport converse_growth_check(const VVAF& x, double zeta, const SamplerConfig& cfg = {});

enum class VanishingDecision { Inactive, Consistent, Inconsistent };
std::string to_string(VanishingDecision d);
VanishingDecision vanishing_check(int k, double alpha, const Evaluator& x);
VanishingDecision vanishing_check(int k, double alpha, const VVAF& x);

}  // namespace vvaf
