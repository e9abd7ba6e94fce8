#pragma once

#include "vvaf/form.hpp"

#include <string>
#include <vector>

namespace vvaf {

// Γ(z) by a Lanczos approximation (g = 7, 9 terms), reflection for Re z < 1/2.
cplx gamma(cplx z);

enum class LMethod { TruncatedSum, SplitMellin };
std::string to_string(LMethod m);

struct LValue {
    cplx s;
    Vector value;
    LMethod method;
    double error;
    bool rigorous;            // tail bound valid in Re s > k/2+α+1
    std::int64_t terms;       // largest exponent used (sum) or panels (quadrature)
    double split;             // Y₀ for split-Mellin
    std::vector<double> smoothing;  // cutoffs x used outside the convergence half-plane
    std::vector<std::string> warnings;
};

struct SumConfig {
    std::int64_t terms = 0;  // 0: everything stored in the expansion
    double alpha = 0.0;      // α of the representation (α+m is applied for logarithmic forms)
    int levels = 4;          // Richardson levels for the smoothed sum
};

// Σ_j Σ_n X_[j,n]/(n+μ)^{s+j} per component.
LValue dirichlet_L(const VVAF& x, cplx s, const SumConfig& cfg = {});
// Σ_j (−1)^j(2π)^{−s}Γ(s+j)·Σ_n X_[j,n]/(n+μ)^{s+j}, the Mellin transform of the expansion.
LValue completed_L_sum(const VVAF& x, cplx s, const SumConfig& cfg = {});

struct QuadConfig {
    double panel = 0.5;
    int max_panels = 4000;
};
// ∫₀^∞ X(ihy)y^{s−1}dy with ∫₀^{Y₀} mapped through S.
LValue completed_L(const VVAF& x, cplx s, double y0 = 1.0, const QuadConfig& q = {});

struct FEResidual {
    cplx s;
    double plus;   // ‖ρ(S)Λ̃(s) − (hi)^{−k}h^{2k−2s}Λ̃(k−s)‖
    double minus;  // ‖ρ(S)Λ̃(s) + (hi)^{−k}h^{2k−2s}Λ̃(k−s)‖
    int selected;  // +1, −1, or 0 when neither or both vanish
    double error;
};
// Λ̃(k−s) uses split 1.2·Y₀, so agreement depends on X transforming under S.
FEResidual functional_equation_residual(const VVAF& x, cplx s, double y0 = 1.0, double tol = 1e-6);

}  // namespace vvaf
