#pragma once

#include "vvaf/qseries.hpp"
#include "vvaf/repr.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vvaf {

struct VectorValue {
    Vector value;
    double tail;
};

// Coefficients of one (component, log power) slot, indexed by n = ⌊exponent⌋.
struct Slot {
    int component;
    int j;
    std::vector<cplx> c;  // c[n − n_min]
};

struct FourierCoefficients {
    std::int64_t n_min = 0;
    std::vector<Vector> c;  // c[n − n_min], summed over slots
    std::vector<Slot> slots;
};

// Vector-valued form of even weight k for `rep`, one LogQExpansion per component.
class VVAF {
public:
    VVAF(int k, Representation rep, std::vector<LogQExpansion> components);

    int weight() const { return k_; }
    const Representation& rep() const { return rep_; }
    int dim() const { return rep_.dim(); }
    const std::vector<LogQExpansion>& components() const { return comps_; }
    int width() const { return h_; }

    bool holomorphic() const { return holomorphic_; }
    bool cusp_form() const { return cusp_; }
    bool logarithmic() const { return logarithmic_; }
    bool is_zero() const;
    // Smallest truncation order over all stored series; empty when every series is exact.
    std::optional<Rational> truncation_order() const;
    // Lowest occupied exponent per component (empty for zero components).
    std::vector<std::optional<Rational>> leading_exponents() const;

    // Jordan data of ρ(t^h); diagonal when ρ is admissible.
    const JordanData& diagonalizer() const { return jordan_; }
    bool admissible() const { return admissible_; }
    // μ of each eigencomponent (admissible case).
    std::vector<double> mu_offsets() const;

    VectorValue evaluate(cplx tau) const;
    FourierCoefficients coefficients(std::int64_t nmax) const;

private:
    int k_;
    Representation rep_;
    std::vector<LogQExpansion> comps_;
    int h_ = 1;
    bool holomorphic_ = true, cusp_ = true, logarithmic_ = false, admissible_ = false;
    JordanData jordan_;
};

struct TransformCheck {
    double residual;  // max ‖j(γ,τ)^{−k}X(γτ) − ρ(γ)X(τ)‖
    double max_tail;
    std::size_t points;
};
TransformCheck check_transformation(const VVAF& x, const SL2Z& g, const std::vector<cplx>& taus);

// (1/T)·Σ_m f(x_m+iy)·e(−(n+μ)(x_m+iy)/h), x_m = hm/T.
cplx coefficient_integral(const std::function<cplx(cplx)>& f, std::int64_t n, double mu, double y, int samples,
                          int h = 1);
// Coefficients c_n, n0 ≤ n ≤ n1, of an admissible form from one set of samples on Im τ = y.
std::vector<Vector> fourier_by_integral(const VVAF& x, std::int64_t n0, std::int64_t n1, double y, int samples);

enum class Recouple { Forward, Backward };
// Forward: X_i ↦ Σ_j (−1)^j·binom(τ/h+j−1, j)·X_{i−j}; Backward: h̃_i ↦ Σ_j binom(τ/h, j)·h̃_{i−j}.
// Inputs transform as X(τ+h) = λ(I+L)X(τ) with L the lower shift.
std::vector<LogQExpansion> log_recouple(Recouple direction, const std::vector<LogQExpansion>& block, cplx lambda,
                                        int h = 1);

VVAF theta_eta_vvaf(int n);
VVAF eta4_theta_vvaf(int n);
VVAF delta_vvaf(int n);
// Δ·(τ², τ, 1), weight 10 for the symmetric square.
VVAF sym2_delta_vvaf(int n);
VVAF builtin_vvaf(const std::string& name, int n);
std::vector<std::string> builtin_vvaf_names();

}  // namespace vvaf
