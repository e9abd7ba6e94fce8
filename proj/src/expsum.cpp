#include "vvaf/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace vvaf {

Theta Theta::parse(const std::string& text) {
    Theta t;
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            t.p = std::stoll(text.substr(0, slash));
            t.q = std::stoll(text.substr(slash + 1));
        } else {
            auto dot = text.find('.');
            std::string digits = text;
            std::int64_t q = 1;
            if (dot != std::string::npos) {
                digits = text.substr(0, dot) + text.substr(dot + 1);
                const std::size_t frac = text.size() - dot - 1;
                if (frac > 17) throw std::invalid_argument("too many digits");
                for (std::size_t i = 0; i < frac; ++i) q *= 10;
            }
            t.p = std::stoll(digits);
            t.q = q;
        }
    } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed theta: " + text);
    }
    if (t.q == 0) throw std::invalid_argument("theta denominator is zero");
    if (t.q < 0) {
        t.p = -t.p;
        t.q = -t.q;
    }
    const std::int64_t g = std::gcd(t.p, t.q);
    if (g > 1) {
        t.p /= g;
        t.q /= g;
    }
    return t;
}

std::string Theta::to_string() const { return std::to_string(p) + "/" + std::to_string(q); }

cplx unit_phase(std::int64_t n, const Theta& theta) {
    __int128 r = static_cast<__int128>(n) * theta.p % theta.q;
    if (r < 0) r += theta.q;
    const double f = static_cast<double>(static_cast<std::int64_t>(r)) / static_cast<double>(theta.q);
    return std::polar(1.0, 2.0 * std::numbers::pi * f);
}

Vector exp_sum(const FourierCoefficients& c, const Theta& theta, std::int64_t cutoff) {
    const auto dim = c.c.empty() ? Eigen::Index(0) : c.c.front().size();
    Vector out = Vector::Zero(dim);
    for (std::int64_t n = std::max<std::int64_t>(0, c.n_min); n < cutoff; ++n) {
        const std::int64_t idx = n - c.n_min;
        if (idx >= static_cast<std::int64_t>(c.c.size())) throw std::out_of_range("exp_sum: cutoff beyond stored coefficients");
        out += unit_phase(n, theta) * c.c[static_cast<std::size_t>(idx)];
    }
    return out;
}

Vector exp_sum(const VVAF& x, const Theta& theta, std::int64_t cutoff) {
    return exp_sum(x.coefficients(std::max<std::int64_t>(cutoff - 1, 0)), theta, cutoff);
}

std::vector<SlotSum> exp_sum_slots(const FourierCoefficients& c, const Theta& theta, std::int64_t cutoff) {
    std::vector<SlotSum> out;
    for (const auto& s : c.slots) {
        cplx acc = 0.0;
        for (std::int64_t n = std::max<std::int64_t>(0, c.n_min); n < cutoff; ++n) {
            const std::int64_t idx = n - c.n_min;
            if (idx >= static_cast<std::int64_t>(s.c.size())) throw std::out_of_range("exp_sum: cutoff beyond stored coefficients");
            acc += unit_phase(n, theta) * s.c[static_cast<std::size_t>(idx)];
        }
        out.push_back({s.component, s.j, acc});
    }
    return out;
}

ExpSumScan bound_scan(const VVAF& x, const std::vector<Theta>& thetas, const std::vector<std::int64_t>& cutoffs,
                      double alpha) {
    if (cutoffs.empty() || thetas.empty()) throw std::invalid_argument("bound_scan: empty grid");
    ExpSumScan scan;
    scan.thetas = thetas;
    scan.cutoffs = cutoffs;
    std::sort(scan.cutoffs.begin(), scan.cutoffs.end());
    scan.sigma = x.cusp_form() ? 1 : 2;
    const double a = x.logarithmic() ? alpha + x.dim() : alpha;
    scan.exponent = scan.sigma * (x.weight() / 2.0 + a);
    const FourierCoefficients c = x.coefficients(std::max<std::int64_t>(scan.cutoffs.back() - 1, 0));
    scan.ratio_small = scan.ratio_large = 0.0;
    for (const auto& th : thetas) {
        for (std::int64_t X : scan.cutoffs) {
            Vector s = exp_sum(c, th, X);
            const double xd = static_cast<double>(X);
            const double ratio = s.norm() / (std::pow(xd, scan.exponent) * std::log(xd));
            scan.cells.push_back({th, X, s, ratio});
            if (X == scan.cutoffs.front()) scan.ratio_small = std::max(scan.ratio_small, ratio);
            if (X == scan.cutoffs.back()) scan.ratio_large = std::max(scan.ratio_large, ratio);
        }
    }
    scan.verdict = scan.ratio_large <= 3.0 * scan.ratio_small ? Verdict::Pass : Verdict::Fail;
    return scan;
}

std::vector<Theta> default_thetas() {
    return {Theta{0, 1}, Theta{1, 3}, Theta::parse("0.7071067811865475"), Theta{7, 10}};
}

std::vector<std::int64_t> default_cutoffs() { return {100, 200, 500, 1000, 2000}; }

}  // namespace vvaf
