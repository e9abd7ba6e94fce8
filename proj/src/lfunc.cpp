#include "vvaf/lfunc.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vvaf {

namespace {

constexpr double kPi = std::numbers::pi;

struct Term {
    int comp;
    int j;
    double log_e;
    cplx c;
};

struct Gathered {
    std::vector<Term> terms;
    double limit;         // exponents strictly below this are included
    std::int64_t n_last;  // largest n with all slots complete
    int max_j;
};

Gathered gather(const VVAF& x, std::int64_t cap) {
    Gathered g{{}, 0.0, 0, 0};
    Rational lim(0);
    if (auto o = x.truncation_order()) {
        lim = *o;
    } else {
        Rational hi(1);
        for (const auto& c : x.components())
            for (const auto& t : c.terms())
                for (const auto& [e, v] : t.series.terms()) hi = std::max(hi, e + 1);
        lim = hi;
    }
    std::int64_t n_last = static_cast<std::int64_t>(std::floor(boost::rational_cast<double>(lim))) - 1;
    if (cap > 0 && cap < n_last) n_last = cap;
    g.n_last = n_last;
    g.limit = static_cast<double>(n_last + 1);
    for (int i = 0; i < x.dim(); ++i)
        for (const auto& t : x.components()[static_cast<std::size_t>(i)].terms())
            for (const auto& [e, v] : t.series.terms()) {
                if (boost::rational_cast<double>(e) >= g.limit) break;
                if (std::abs(v) == 0.0) continue;
                if (e <= 0) throw std::invalid_argument("L-function requires a cusp form");
                g.terms.push_back({i, t.j, std::log(boost::rational_cast<double>(e)), v});
                g.max_j = std::max(g.max_j, t.j);
            }
    return g;
}

// Σ weight_j·c·e^{−(s+j)}·exp(−e/x); x = 0 means no smoothing.
Vector weighted_sum(const Gathered& g, int dim, cplx s, const std::vector<cplx>& weight, double x) {
    Vector out = Vector::Zero(dim);
    for (const auto& t : g.terms) {
        cplx v = t.c * std::exp(-(s + static_cast<double>(t.j)) * t.log_e);
        if (x > 0.0) v *= std::exp(-std::exp(t.log_e) / x);
        out(t.comp) += weight[static_cast<std::size_t>(t.j)] * v;
    }
    return out;
}

LValue sum_impl(const VVAF& x, cplx s, const SumConfig& cfg, bool completed) {
    if (!x.cusp_form() && !x.is_zero()) throw std::invalid_argument("L-function requires a cusp form");
    LValue out{s, Vector::Zero(x.dim()), LMethod::TruncatedSum, 0.0, false, 0, 0.0, {}, {}};
    Gathered g = gather(x, cfg.terms);
    out.terms = g.n_last;
    std::vector<cplx> weight(static_cast<std::size_t>(g.max_j + 1), 1.0);
    if (completed)
        for (int j = 0; j <= g.max_j; ++j)
            weight[static_cast<std::size_t>(j)] =
                (j % 2 == 0 ? 1.0 : -1.0) * std::pow(2.0 * kPi, -s) * gamma(s + static_cast<double>(j));

    const double a = x.logarithmic() ? cfg.alpha + x.dim() : cfg.alpha;
    const double beta = x.weight() / 2.0 + a;
    const double sigma = s.real();
    if (sigma > beta + 1.0) {
        out.value = weighted_sum(g, x.dim(), s, weight, 0.0);
        // Tail from |c_n| ≤ C·n^β with C measured on the stored range.
        const FourierCoefficients fc = x.coefficients(g.n_last);
        double c = 0.0;
        for (std::size_t i = 0; i < fc.c.size(); ++i) {
            std::int64_t n = fc.n_min + static_cast<std::int64_t>(i);
            if (n >= 1) c = std::max(c, fc.c[i].cwiseAbs().maxCoeff() / std::pow(static_cast<double>(n), beta));
        }
        double wmax = 0.0;
        for (const auto& w : weight) wmax = std::max(wmax, std::abs(w));
        const double nn = static_cast<double>(std::max<std::int64_t>(g.n_last, 1));
        out.error = wmax * c * std::pow(nn, beta - sigma + 1.0) / (sigma - beta - 1.0);
        out.rigorous = true;
        return out;
    }

    out.warnings.push_back("outside Re(s) > k/2+alpha+1: smoothed sum with Richardson extrapolation, heuristic error");
    const int levels = std::max(cfg.levels, 2);
    const double x_max = g.limit / 36.0;
    std::vector<std::vector<Vector>> table(static_cast<std::size_t>(levels));
    for (int i = 0; i < levels; ++i) {
        const double xi = x_max / std::pow(2.0, levels - 1 - i);
        out.smoothing.push_back(xi);
        table[static_cast<std::size_t>(i)].push_back(weighted_sum(g, x.dim(), s, weight, xi));
        for (int m = 1; m <= i; ++m) {
            const double f = std::pow(2.0, m);
            const auto& row = table[static_cast<std::size_t>(i)];
            const auto& prev = table[static_cast<std::size_t>(i - 1)];
            table[static_cast<std::size_t>(i)].push_back((f * row[static_cast<std::size_t>(m - 1)] -
                                                           prev[static_cast<std::size_t>(m - 1)]) /
                                                          (f - 1.0));
        }
    }
    const auto& last = table.back();
    out.value = last.back();
    out.error = (last.back() - last[last.size() - 2]).norm();
    return out;
}

template <int N>
struct GaussRule {
    std::vector<double> x, w;
    GaussRule() {
        const auto& a = boost::math::quadrature::gauss<double, N>::abscissa();
        const auto& b = boost::math::quadrature::gauss<double, N>::weights();
        for (std::size_t i = 0; i < a.size(); ++i) {
            x.push_back(a[i]);
            w.push_back(b[i]);
            if (a[i] != 0.0) {
                x.push_back(-a[i]);
                w.push_back(b[i]);
            }
        }
    }
};

struct Integral {
    Vector value;
    double error;
    int panels;
};

// ∫_a^∞ f(y)·y^{p} dy for an exponentially decaying f.
Integral integrate_tail(const std::function<Vector(double)>& f, int dim, double a, cplx p, const QuadConfig& q) {
    static const GaussRule<30> hi;
    static const GaussRule<20> lo;
    Integral out{Vector::Zero(dim), 0.0, 0};
    int quiet = 0;
    for (int k = 0; k < q.max_panels; ++k) {
        const double left = a + k * q.panel, half = q.panel / 2.0, mid = left + half;
        Vector vh = Vector::Zero(dim), vl = Vector::Zero(dim);
        for (std::size_t i = 0; i < hi.x.size(); ++i) {
            const double y = mid + half * hi.x[i];
            vh += hi.w[i] * std::exp(p * std::log(y)) * f(y);
        }
        for (std::size_t i = 0; i < lo.x.size(); ++i) {
            const double y = mid + half * lo.x[i];
            vl += lo.w[i] * std::exp(p * std::log(y)) * f(y);
        }
        vh *= half;
        vl *= half;
        out.value += vh;
        out.error += (vh - vl).norm();
        out.panels = k + 1;
        if (vh.norm() <= 1e-18 * out.value.norm() || vh.norm() == 0.0) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
    }
    return out;
}

}  // namespace

cplx gamma(cplx z) {
    static const std::array<double, 9> p = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                             771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma(1.0 - z));
    z -= 1.0;
    cplx a = p[0];
    const cplx t = z + 7.5;
    for (int i = 1; i < 9; ++i) a += p[static_cast<std::size_t>(i)] / (z + static_cast<double>(i));
    return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * a;
}

std::string to_string(LMethod m) { return m == LMethod::TruncatedSum ? "truncated-sum" : "split-mellin"; }

LValue dirichlet_L(const VVAF& x, cplx s, const SumConfig& cfg) { return sum_impl(x, s, cfg, false); }

LValue completed_L_sum(const VVAF& x, cplx s, const SumConfig& cfg) { return sum_impl(x, s, cfg, true); }

LValue completed_L(const VVAF& x, cplx s, double y0, const QuadConfig& q) {
    if (!x.cusp_form() && !x.is_zero()) throw std::invalid_argument("completed_L: integral diverges for a non-cusp form");
    if (!x.rep().group().contains(SL2Z::S())) throw std::invalid_argument("completed_L: S is not in the group");
    if (y0 <= 0.0) throw std::invalid_argument("completed_L: split point must be positive");
    const double h = x.width();
    const int k = x.weight();
    auto f = [&](double y) { return x.evaluate(cplx(0.0, h * y)).value; };
    Integral i1 = integrate_tail(f, x.dim(), y0, s - 1.0, q);
    Integral i2 = integrate_tail(f, x.dim(), 1.0 / (h * h * y0), static_cast<double>(k) - s - 1.0, q);
    const cplx factor = std::pow(cplx(0.0, 1.0), k) * std::exp((static_cast<double>(k) - 2.0 * s) * std::log(h));
    const Matrix rs = x.rep().evaluate(SL2Z::S());
    LValue out{s, i1.value + factor * (rs * i2.value), LMethod::SplitMellin, 0.0, false, i1.panels + i2.panels, y0,
               {}, {}};
    out.error = i1.error + std::abs(factor) * max_abs(rs) * x.dim() * i2.error;
    return out;
}

FEResidual functional_equation_residual(const VVAF& x, cplx s, double y0, double tol) {
    const double h = x.width();
    const int k = x.weight();
    LValue a = completed_L(x, s, y0);
    LValue b = completed_L(x, static_cast<double>(k) - s, 1.2 * y0);
    const cplx factor = std::pow(cplx(0.0, h), -k) * std::exp((2.0 * k - 2.0 * s) * std::log(h));
    const Vector lhs = x.rep().evaluate(SL2Z::S()) * a.value;
    FEResidual r{s, (lhs - factor * b.value).norm(), (lhs + factor * b.value).norm(), 0, a.error + b.error};
    const bool p = r.plus < tol, m = r.minus < tol;
    r.selected = (p && !m) ? 1 : (m && !p) ? -1 : 0;
    return r;
}

}  // namespace vvaf
