#pragma once

#include "vvaf/form.hpp"
#include "vvaf/growth.hpp"

#include <string>
#include <vector>

namespace vvaf {

// θ = p/q as an exact rational, so e(nθ) is reduced mod 1 before rounding.
struct Theta {
    std::int64_t p = 0;
    std::int64_t q = 1;
    double value() const { return static_cast<double>(p) / static_cast<double>(q); }
    bool operator==(const Theta&) const = default;
    // Parses "p/q", a decimal, or "1/sqrt2" style decimals; decimals become p/10^digits.
    static Theta parse(const std::string& text);
    std::string to_string() const;
};

// e(nθ) = exp(2πi·nθ) with nθ reduced mod 1 exactly.
cplx unit_phase(std::int64_t n, const Theta& theta);

// Σ_{0≤n<cutoff} c_n·e(nθ) per component.
Vector exp_sum(const FourierCoefficients& c, const Theta& theta, std::int64_t cutoff);
Vector exp_sum(const VVAF& x, const Theta& theta, std::int64_t cutoff);

struct SlotSum {
    int component;
    int j;
    cplx sum;
};
// Per (component, log power) sums; their total over j is exp_sum.
std::vector<SlotSum> exp_sum_slots(const FourierCoefficients& c, const Theta& theta, std::int64_t cutoff);

struct ExpSumCell {
    Theta theta;
    std::int64_t cutoff;
    Vector sum;
    double ratio;  // ‖S‖/(X^{σ(k/2+α)}·log X)
};

struct ExpSumScan {
    std::vector<Theta> thetas;
    std::vector<std::int64_t> cutoffs;
    std::vector<ExpSumCell> cells;
    int sigma;
    double exponent;  // σ(k/2+α)
    double ratio_small;  // max over θ at the smallest cutoff
    double ratio_large;  // max over θ at the largest cutoff
    Verdict verdict;
};
ExpSumScan bound_scan(const VVAF& x, const std::vector<Theta>& thetas, const std::vector<std::int64_t>& cutoffs,
                      double alpha);

// θ ∈ {0, 1/3, 0.7071067811865475, 0.7}.
std::vector<Theta> default_thetas();
// X ∈ {100, 200, 500, 1000, 2000}.
std::vector<std::int64_t> default_cutoffs();

}  // namespace vvaf
