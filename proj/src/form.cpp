#include "vvaf/form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vvaf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOccupied = 1e-11;

std::int64_t floor_rat(const Rational& r) {
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

double expansion_scale(const LogQExpansion& e) {
    double s = 0.0;
    for (const auto& t : e.terms()) s = std::max(s, t.series.max_abs_coeff());
    return s;
}

std::optional<Rational> lowest_occupied(const LogQExpansion& e) {
    const double scale = expansion_scale(e);
    std::optional<Rational> lo;
    for (const auto& t : e.terms())
        for (const auto& [ex, c] : t.series.terms())
            if (std::abs(c) > kOccupied * scale) {
                if (!lo || ex < *lo) lo = ex;
                break;
            }
    return lo;
}

// Coefficients of the polynomial binom(u+a, j) in u, a ∈ {0, j−1}: ∏_{i}(u+a−i)/j!.
std::vector<double> binom_poly(int j, int shift) {
    std::vector<double> p{1.0};
    for (int i = 0; i < j; ++i) {
        const double c = static_cast<double>(shift - i);
        std::vector<double> q(p.size() + 1, 0.0);
        for (std::size_t d = 0; d < p.size(); ++d) {
            q[d + 1] += p[d];
            q[d] += c * p[d];
        }
        p = std::move(q);
    }
    double f = 1.0;
    for (int i = 2; i <= j; ++i) f *= i;
    for (auto& x : p) x /= f;
    return p;
}

LogQExpansion times_poly(const LogQExpansion& e, const std::vector<double>& poly, double sign) {
    LogQExpansion out;
    bool first = true;
    for (std::size_t d = 0; d < poly.size(); ++d) {
        if (poly[d] == 0.0) continue;
        LogQExpansion piece = e.times_u_power(static_cast<int>(d)).scaled(sign * poly[d]);
        out = first ? piece : out + piece;
        first = false;
    }
    return out;
}

}  // namespace

VVAF::VVAF(int k, Representation rep, std::vector<LogQExpansion> components)
    : k_(k), rep_(std::move(rep)), comps_(std::move(components)) {
    if (k % 2 != 0) throw std::invalid_argument("VVAF: weight must be even");
    if (static_cast<int>(comps_.size()) != rep_.dim())
        throw std::invalid_argument("VVAF: component count does not match the representation dimension");
    h_ = static_cast<int>(cusp_width(rep_.group(), Cusp::infinity()));
    for (auto& c : comps_) {
        if (c.terms().empty()) c = LogQExpansion(FracQSeries::zero(h_));
        if (!c.is_zero() && c.width() != h_)
            throw std::invalid_argument("VVAF: expansion width differs from the cusp width at infinity");
        if (c.max_log_power() > 0) logarithmic_ = true;
    }
    for (const auto& c : comps_) {
        auto lo = lowest_occupied(c);
        if (!lo) continue;
        if (*lo < 0) holomorphic_ = false;
        if (*lo <= 0) cusp_ = false;
    }
    jordan_ = jordan_form(rep_.t_power(h_));
    admissible_ = jordan_.reliable &&
                  std::all_of(jordan_.blocks.begin(), jordan_.blocks.end(), [](const JordanBlock& b) { return b.size == 1; });
}

bool VVAF::is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const LogQExpansion& e) { return e.is_zero(); });
}

std::optional<Rational> VVAF::truncation_order() const {
    std::optional<Rational> o;
    for (const auto& c : comps_)
        for (const auto& t : c.terms())
            if (auto to = t.series.order(); to && (!o || *to < *o)) o = to;
    return o;
}

std::vector<std::optional<Rational>> VVAF::leading_exponents() const {
    std::vector<std::optional<Rational>> out;
    for (const auto& c : comps_) out.push_back(lowest_occupied(c));
    return out;
}

std::vector<double> VVAF::mu_offsets() const {
    std::vector<double> out;
    for (Eigen::Index i = 0; i < jordan_.J.rows(); ++i) {
        cplx l = jordan_.J(i, i);
        out.push_back(mu(l / std::abs(l)).value);
    }
    return out;
}

VectorValue VVAF::evaluate(cplx tau) const {
    VectorValue out{Vector::Zero(dim()), 0.0};
    for (int i = 0; i < dim(); ++i) {
        SeriesValue v = comps_[static_cast<std::size_t>(i)].evaluate(tau);
        out.value(i) = v.value;
        out.tail = std::max(out.tail, v.tail);
    }
    return out;
}

FourierCoefficients VVAF::coefficients(std::int64_t nmax) const {
    if (auto o = truncation_order(); o && *o < Rational(nmax + 1))
        throw std::out_of_range("coefficients requested beyond the truncation order");
    FourierCoefficients out;
    bool any = false;
    std::int64_t n_min = 0;
    for (const auto& c : comps_)
        for (const auto& t : c.terms()) {
            auto ts = t.series.terms();
            if (ts.empty()) continue;
            std::int64_t f = floor_rat(ts.front().first);
            n_min = any ? std::min(n_min, f) : f;
            any = true;
        }
    if (!any) n_min = 0;
    n_min = std::min(n_min, nmax);
    out.n_min = n_min;
    const auto len = static_cast<std::size_t>(nmax - n_min + 1);
    out.c.assign(len, Vector::Zero(dim()));
    for (int i = 0; i < dim(); ++i) {
        for (const auto& t : comps_[static_cast<std::size_t>(i)].terms()) {
            Slot slot{i, t.j, std::vector<cplx>(len, 0.0)};
            bool occupied = false;
            for (const auto& [ex, c] : t.series.terms()) {
                std::int64_t n = floor_rat(ex);
                if (n > nmax) break;
                slot.c[static_cast<std::size_t>(n - n_min)] += c;
                out.c[static_cast<std::size_t>(n - n_min)](i) += c;
                occupied = true;
            }
            if (occupied) out.slots.push_back(std::move(slot));
        }
    }
    return out;
}

TransformCheck check_transformation(const VVAF& x, const SL2Z& g, const std::vector<cplx>& taus) {
    if (!x.rep().group().contains(g)) throw std::invalid_argument("check_transformation: element outside the group");
    const Matrix rg = x.rep().evaluate(g);
    TransformCheck out{0.0, 0.0, taus.size()};
    for (const cplx& tau : taus) {
        VectorValue a = x.evaluate(apply(g, tau));
        VectorValue b = x.evaluate(tau);
        cplx jf = std::pow(j_factor(g, tau), -x.weight());
        Vector r = jf * a.value - rg * b.value;
        out.residual = std::max(out.residual, r.norm());
        out.max_tail = std::max({out.max_tail, std::abs(jf) * a.tail, max_abs(rg) * b.tail});
    }
    return out;
}

cplx coefficient_integral(const std::function<cplx(cplx)>& f, std::int64_t n, double mu, double y, int samples,
                          int h) {
    if (samples < 1) throw std::invalid_argument("coefficient_integral: samples must be positive");
    const double e = static_cast<double>(n) + mu;
    cplx acc = 0.0;
    for (int m = 0; m < samples; ++m) {
        const double x = static_cast<double>(h) * m / samples;
        const cplx tau(x, y);
        acc += f(tau) * std::exp(cplx(0.0, -kTwoPi) * e * tau / static_cast<double>(h));
    }
    return acc / static_cast<double>(samples);
}

std::vector<Vector> fourier_by_integral(const VVAF& x, std::int64_t n0, std::int64_t n1, double y, int samples) {
    if (!x.admissible()) throw std::invalid_argument("fourier_by_integral: form is not admissible");
    const Matrix& P = x.diagonalizer().P;
    const Matrix Pinv = P.inverse();
    const auto mus = x.mu_offsets();
    const int h = x.width();
    std::vector<Vector> ys;
    ys.reserve(static_cast<std::size_t>(samples));
    for (int m = 0; m < samples; ++m)
        ys.push_back(Pinv * x.evaluate(cplx(static_cast<double>(h) * m / samples, y)).value);
    std::vector<Vector> out;
    for (std::int64_t n = n0; n <= n1; ++n) {
        Vector v(x.dim());
        for (int l = 0; l < x.dim(); ++l) {
            const double e = static_cast<double>(n) + mus[static_cast<std::size_t>(l)];
            cplx acc = 0.0;
            for (int m = 0; m < samples; ++m) {
                const cplx tau(static_cast<double>(h) * m / samples, y);
                acc += ys[static_cast<std::size_t>(m)](l) * std::exp(cplx(0.0, -kTwoPi) * e * tau / static_cast<double>(h));
            }
            v(l) = acc / static_cast<double>(samples);
        }
        out.push_back(P * v);
    }
    return out;
}

std::vector<LogQExpansion> log_recouple(Recouple direction, const std::vector<LogQExpansion>& block, cplx lambda,
                                        int h) {
    const int m = static_cast<int>(block.size());
    std::vector<LogQExpansion> out;
    for (int i = 0; i < m; ++i) {
        LogQExpansion acc;
        bool first = true;
        for (int j = 0; j <= i; ++j) {
            const auto& src = block[static_cast<std::size_t>(i - j)];
            if (src.is_zero() || src.terms().empty()) continue;
            LogQExpansion piece = direction == Recouple::Forward
                                      ? times_poly(src, binom_poly(j, j - 1), (j % 2 == 0) ? 1.0 : -1.0)
                                      : times_poly(src, binom_poly(j, 0), 1.0);
            acc = first ? piece : acc + piece;
            first = false;
        }
        if (first) acc = LogQExpansion(FracQSeries::zero(h));
        out.push_back(acc.pruned(1e-12));
    }
    if (direction == Recouple::Forward) {
        const cplx tau0(0.137, 0.93);
        for (const auto& e : out) {
            if (!e.is_pure()) throw std::invalid_argument("log_recouple: inputs not closed under the block action");
            SeriesValue a = e.evaluate(tau0 + static_cast<double>(h));
            SeriesValue b = e.evaluate(tau0);
            double scale = std::max({std::abs(a.value), std::abs(b.value), 1e-300});
            if (std::abs(a.value - lambda * b.value) > 1e-8 * scale + a.tail + b.tail)
                throw std::invalid_argument("log_recouple: inputs not closed under the block action");
        }
    }
    return out;
}

VVAF theta_eta_vvaf(int n) {
    FracQSeries eta = eta_series(n + 2);
    std::vector<LogQExpansion> comps;
    for (int v : {2, 3, 4}) comps.emplace_back((theta_series(v, n + 2) / eta).truncated(Rational(n + 1)));
    return VVAF(0, theta_eta_rep(), std::move(comps));
}

VVAF eta4_theta_vvaf(int n) {
    FracQSeries eta3 = eta_power_series(3, n + 1);
    std::vector<LogQExpansion> comps;
    for (int v : {2, 3, 4}) comps.emplace_back((eta3 * theta_series(v, n + 1)).truncated(Rational(n + 1)));
    return VVAF(2, theta_eta_twist_rep(), std::move(comps));
}

VVAF delta_vvaf(int n) {
    return VVAF(12, trivial_rep(1), {LogQExpansion(eta_power_series(24, n).truncated(Rational(n + 1)))});
}

VVAF sym2_delta_vvaf(int n) {
    FracQSeries d = eta_power_series(24, n).truncated(Rational(n + 1));
    const cplx u = 1.0 / cplx(0.0, kTwoPi);
    std::vector<LogQExpansion> comps;
    comps.emplace_back(std::vector<LogTerm>{{2, d.scaled(u * u)}});
    comps.emplace_back(std::vector<LogTerm>{{1, d.scaled(u)}});
    comps.emplace_back(d);
    return VVAF(10, sym2_rep(), std::move(comps));
}

VVAF builtin_vvaf(const std::string& name, int n) {
    if (n < 1) throw std::invalid_argument("truncation order must be positive");
    if (name == "theta-eta") return theta_eta_vvaf(n);
    if (name == "eta4-theta") return eta4_theta_vvaf(n);
    if (name == "delta") return delta_vvaf(n);
    if (name == "sym2-delta") return sym2_delta_vvaf(n);
    throw std::invalid_argument("unknown builtin form: " + name);
}

std::vector<std::string> builtin_vvaf_names() { return {"theta-eta", "eta4-theta", "delta", "sym2-delta"}; }

}  // namespace vvaf
