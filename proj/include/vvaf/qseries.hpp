#pragma once

#include "vvaf/moebius.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace vvaf {

using Rational = boost::rational<std::int64_t>;

struct SeriesValue {
    cplx value;
    double tail;  // estimate of the neglected remainder
};

// Σ_j c_j q̃^{(start+j)/D}, q̃ = exp(2πiτ/h), exact for exponents below stop/D.
class FracQSeries {
public:
    // stop sentinel for series known exactly (finitely many terms).
    static constexpr std::int64_t kExact = std::int64_t(1) << 52;

    FracQSeries() = default;
    FracQSeries(int h, std::int64_t denom, std::int64_t start, std::vector<cplx> coeffs, std::int64_t stop);

    static FracQSeries zero(int h = 1);
    static FracQSeries constant(cplx c, int h = 1);
    static FracQSeries monomial(cplx c, Rational exponent, int h = 1);

    int width() const { return h_; }
    std::int64_t denom() const { return denom_; }
    std::int64_t start() const { return start_; }
    std::int64_t stop() const { return stop_; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }

    bool is_exact() const { return stop_ >= kExact; }
    bool is_zero() const;
    // Exponents strictly below this value carry exact coefficients.
    std::optional<Rational> order() const;
    Rational exponent(std::size_t j) const { return Rational(start_ + static_cast<std::int64_t>(j), denom_); }
    cplx coeff(const Rational& e) const;
    std::vector<std::pair<Rational, cplx>> terms() const;
    // Lowest exponent whose coefficient exceeds rel·(largest nearby coefficient).
    std::optional<Rational> leading_exponent(double rel = 1e-11) const;
    double max_abs_coeff() const { return max_abs_; }

    SeriesValue evaluate(cplx tau) const;
    SeriesValue evaluate(cplx tau, const Rational& cap) const;

    FracQSeries regrid(std::int64_t new_denom) const;
    FracQSeries truncated(const Rational& order) const;
    FracQSeries normalized() const;
    FracQSeries scaled(cplx c) const;

private:
    int h_ = 1;
    std::int64_t denom_ = 1;
    std::int64_t start_ = 0;
    std::vector<cplx> coeffs_;
    std::int64_t stop_ = kExact;
    double max_abs_ = 0.0;
};

enum class SeriesOp { Mul, Div, Add, Scale };

// Scale expects g to be a constant series.
FracQSeries combine(SeriesOp op, const FracQSeries& f, const FracQSeries& g);
FracQSeries operator*(const FracQSeries& f, const FracQSeries& g);
FracQSeries operator/(const FracQSeries& f, const FracQSeries& g);
FracQSeries operator+(const FracQSeries& f, const FracQSeries& g);
FracQSeries operator-(const FracQSeries& f, const FracQSeries& g);

// η(τ) = q^{1/24}∏(1−qⁿ), exact for exponents < N + 1/24.
FracQSeries eta_series(int n);
// η^r for r ≥ 0 from exact integer arithmetic.
FracQSeries eta_power_series(int r, int n);
// θ₂, θ₃, θ₄ with θ₃ = Σ exp(πiτn²); exact for exponents < N.
FracQSeries theta_series(int variant, int n);

struct LogTerm {
    int j;  // power of log q̃
    FracQSeries series;
};

// Σ_j (log q̃)^j · series_j with log q̃ = 2πiτ/h.
class LogQExpansion {
public:
    LogQExpansion() = default;
    explicit LogQExpansion(FracQSeries pure);
    explicit LogQExpansion(std::vector<LogTerm> terms);

    const std::vector<LogTerm>& terms() const { return terms_; }
    const FracQSeries* term(int j) const;
    int max_log_power() const;
    bool is_pure() const { return max_log_power() <= 0; }
    bool is_zero() const;
    int width() const;

    SeriesValue evaluate(cplx tau) const;

    // Multiply by (τ/h)^p = (log q̃ / 2πi)^p.
    LogQExpansion times_u_power(int p) const;
    LogQExpansion scaled(cplx c) const;
    // Drop log terms whose coefficients are all below tol·scale.
    LogQExpansion pruned(double tol) const;

    friend LogQExpansion operator+(const LogQExpansion& a, const LogQExpansion& b);

private:
    std::vector<LogTerm> terms_;  // sorted by j, distinct
};

}  // namespace vvaf
