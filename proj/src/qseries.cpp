#include "vvaf/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace vvaf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t floor_div64(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ceil_div64(std::int64_t a, std::int64_t b) { return -floor_div64(-a, b); }

std::int64_t sat(std::int64_t x) { return x >= FracQSeries::kExact / 2 ? FracQSeries::kExact : x; }

struct Nz {
    std::int64_t off;
    cplx c;
};

std::vector<Nz> nonzeros(const std::vector<cplx>& v) {
    std::vector<Nz> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != cplx(0.0, 0.0)) out.push_back({static_cast<std::int64_t>(i), v[i]});
    return out;
}

void require_same_width(const FracQSeries& f, const FracQSeries& g) {
    if (f.width() != g.width()) throw std::invalid_argument("series widths differ");
}

FracQSeries mul(const FracQSeries& f0, const FracQSeries& g0) {
    require_same_width(f0, g0);
    const std::int64_t L = std::lcm(f0.denom(), g0.denom());
    FracQSeries f = f0.regrid(L), g = g0.regrid(L);
    const std::int64_t start = f.start() + g.start();
    std::int64_t stop = std::min(sat(f.start() + g.stop()), sat(g.start() + f.stop()));
    if (f.coeffs().empty() || g.coeffs().empty())
        return FracQSeries(f.width(), L, start, {}, std::max(stop, start)).normalized();
    std::int64_t len = static_cast<std::int64_t>(f.coeffs().size() + g.coeffs().size()) - 1;
    if (stop < FracQSeries::kExact) len = std::min(len, stop - start);
    len = std::max<std::int64_t>(len, 0);
    std::vector<cplx> out(static_cast<std::size_t>(len));
    auto nf = nonzeros(f.coeffs()), ng = nonzeros(g.coeffs());
    for (const auto& a : nf) {
        for (const auto& b : ng) {
            std::int64_t k = a.off + b.off;
            if (k >= len) break;
            out[static_cast<std::size_t>(k)] += a.c * b.c;
        }
    }
    return FracQSeries(f.width(), L, start, std::move(out), stop).normalized();
}

FracQSeries add(const FracQSeries& f0, const FracQSeries& g0) {
    require_same_width(f0, g0);
    const std::int64_t L = std::lcm(f0.denom(), g0.denom());
    FracQSeries f = f0.regrid(L), g = g0.regrid(L);
    const std::int64_t stop = std::min(f.stop(), g.stop());
    std::int64_t start = std::min(f.start(), g.start());
    std::int64_t end = std::max(f.start() + static_cast<std::int64_t>(f.coeffs().size()),
                                g.start() + static_cast<std::int64_t>(g.coeffs().size()));
    end = std::min(end, stop);
    start = std::min(start, end);
    std::vector<cplx> out(static_cast<std::size_t>(end - start));
    for (const FracQSeries* s : {&f, &g}) {
        for (std::size_t j = 0; j < s->coeffs().size(); ++j) {
            std::int64_t idx = s->start() + static_cast<std::int64_t>(j);
            if (idx >= end) break;
            out[static_cast<std::size_t>(idx - start)] += s->coeffs()[j];
        }
    }
    return FracQSeries(f.width(), L, start, std::move(out), stop).normalized();
}

FracQSeries div(const FracQSeries& f0, const FracQSeries& g0) {
    require_same_width(f0, g0);
    const std::int64_t L = std::lcm(f0.denom(), g0.denom());
    FracQSeries f = f0.regrid(L), g = g0.regrid(L);
    auto ng = nonzeros(g.coeffs());
    if (ng.empty()) throw std::domain_error("division by series with zero leading coefficient");
    const std::int64_t lead = ng.front().off;
    const std::int64_t g_lead = g.start() + lead;
    const cplx c0 = ng.front().c;
    const bool monomial = ng.size() == 1;

    std::int64_t lu;  // length of the inverse on the relative grid
    std::int64_t ustop;
    if (!g.is_exact()) {
        lu = g.stop() - g_lead;
        ustop = -g_lead + lu;
    } else if (monomial) {
        lu = 1;
        ustop = FracQSeries::kExact;
    } else if (!f.is_exact()) {
        lu = std::max<std::int64_t>(f.stop() - f.start(), 1);
        ustop = -g_lead + lu;
    } else {
        throw std::invalid_argument("division of exact series by an exact non-monomial needs a truncation order");
    }

    std::int64_t step = 0;
    for (const auto& t : ng) step = std::gcd(step, t.off - lead);
    if (step == 0) step = 1;
    std::vector<cplx> u(static_cast<std::size_t>(std::max<std::int64_t>(lu, 1)));
    u[0] = 1.0 / c0;
    for (std::int64_t k = step; k < lu; k += step) {
        cplx acc = 0.0;
        for (std::size_t t = 1; t < ng.size(); ++t) {
            std::int64_t j = ng[t].off - lead;
            if (j > k) break;
            acc += ng[t].c * u[static_cast<std::size_t>(k - j)];
        }
        u[static_cast<std::size_t>(k)] = -acc / c0;
    }
    FracQSeries inv(g.width(), L, -g_lead, std::move(u), ustop);
    return mul(f, inv);
}

}  // namespace

// ---- FracQSeries ----

FracQSeries::FracQSeries(int h, std::int64_t denom, std::int64_t start, std::vector<cplx> coeffs, std::int64_t stop)
    : h_(h), denom_(denom), start_(start), coeffs_(std::move(coeffs)), stop_(sat(stop)) {
    if (h < 1) throw std::invalid_argument("FracQSeries: width must be positive");
    if (denom < 1) throw std::invalid_argument("FracQSeries: denominator must be positive");
    if (stop_ < start_) stop_ = start_;
    if (!is_exact() && static_cast<std::int64_t>(coeffs_.size()) > stop_ - start_)
        coeffs_.resize(static_cast<std::size_t>(stop_ - start_));
    for (const auto& c : coeffs_) max_abs_ = std::max(max_abs_, std::abs(c));
}

FracQSeries FracQSeries::zero(int h) { return FracQSeries(h, 1, 0, {}, kExact); }
FracQSeries FracQSeries::constant(cplx c, int h) { return FracQSeries(h, 1, 0, {c}, kExact); }

FracQSeries FracQSeries::monomial(cplx c, Rational e, int h) {
    return FracQSeries(h, e.denominator(), e.numerator(), {c}, kExact);
}

bool FracQSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const cplx& c) { return c == cplx(0.0, 0.0); });
}

std::optional<Rational> FracQSeries::order() const {
    if (is_exact()) return std::nullopt;
    return Rational(stop_, denom_);
}

cplx FracQSeries::coeff(const Rational& e) const {
    std::int64_t num = e.numerator() * denom_;
    if (num % e.denominator() != 0) return 0.0;
    std::int64_t idx = num / e.denominator() - start_;
    if (idx < 0 || idx >= static_cast<std::int64_t>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<std::size_t>(idx)];
}

std::vector<std::pair<Rational, cplx>> FracQSeries::terms() const {
    std::vector<std::pair<Rational, cplx>> out;
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
        if (coeffs_[j] != cplx(0.0, 0.0)) out.emplace_back(exponent(j), coeffs_[j]);
    return out;
}

std::optional<Rational> FracQSeries::leading_exponent(double rel) const {
    auto ts = terms();
    if (ts.empty()) return std::nullopt;
    Rational window = ts.front().first + 1;
    double scale = 0.0;
    for (const auto& [e, c] : ts) {
        if (e > window) break;
        scale = std::max(scale, std::abs(c));
    }
    for (const auto& [e, c] : ts)
        if (std::abs(c) > rel * scale) return e;
    return std::nullopt;
}

SeriesValue FracQSeries::evaluate(cplx tau) const {
    return evaluate(tau, Rational(std::numeric_limits<std::int64_t>::max() / 4, 1));
}

SeriesValue FracQSeries::evaluate(cplx tau, const Rational& cap) const {
    if (tau.imag() <= 0) throw std::domain_error("evaluate: tau must lie in the upper half plane");
    const double r = std::exp(-kTwoPi * tau.imag() / h_);
    if (r > 0.995) throw std::domain_error("evaluate: |q| > 0.995, truncation error uncontrolled");
    const double amax = max_abs_coeff();
    const double capd = boost::rational_cast<double>(cap);
    cplx sum = 0.0;
    const cplx phase_unit = cplx(0.0, kTwoPi) * tau / static_cast<double>(h_);
    std::size_t end = coeffs_.size();
    bool cut = false;
    double cut_tail = 0.0;
    double last_e = 0.0;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        const double e = static_cast<double>(start_ + static_cast<std::int64_t>(j)) / static_cast<double>(denom_);
        if (e >= capd) {
            end = j;
            cut = true;
            break;
        }
        const cplx& c = coeffs_[j];
        if (c == cplx(0.0, 0.0)) continue;
        const double re = std::pow(r, e);
        const double bound = amax * re / (1.0 - r);
        if (bound < 1e-17 * std::abs(sum) && e > 0) {
            cut_tail = bound;
            end = j;
            break;
        }
        sum += c * std::exp(phase_unit * e);
        last_e = e;
    }
    (void)last_e;
    double tail = cut_tail;
    bool reached_end = end == coeffs_.size();
    if ((reached_end && !is_exact()) || cut) {
        // Remainder from the unknown (or excluded) part: geometric bound from the trailing coefficients.
        std::size_t lo = end - std::min<std::size_t>(end, std::max<std::size_t>(end / 4, 1));
        double a = 0.0;
        for (std::size_t j = lo; j < end; ++j) a = std::max(a, std::abs(coeffs_[j]));
        double e_stop = cut ? capd : static_cast<double>(stop_) / static_cast<double>(denom_);
        tail += a * std::pow(r, e_stop) / (1.0 - r);
    }
    return {sum, tail};
}

FracQSeries FracQSeries::regrid(std::int64_t new_denom) const {
    if (new_denom % denom_ != 0) throw std::invalid_argument("regrid: new denominator must be a multiple");
    const std::int64_t f = new_denom / denom_;
    if (f == 1) return *this;
    std::vector<cplx> out;
    if (!coeffs_.empty()) {
        out.assign((coeffs_.size() - 1) * static_cast<std::size_t>(f) + 1, cplx(0.0, 0.0));
        for (std::size_t j = 0; j < coeffs_.size(); ++j) out[j * static_cast<std::size_t>(f)] = coeffs_[j];
    }
    return FracQSeries(h_, new_denom, start_ * f, std::move(out), is_exact() ? kExact : stop_ * f);
}

FracQSeries FracQSeries::truncated(const Rational& ord) const {
    std::int64_t new_stop = ceil_div64(ord.numerator() * denom_, ord.denominator());
    return FracQSeries(h_, denom_, start_, coeffs_, std::min(stop_, new_stop));
}

FracQSeries FracQSeries::normalized() const {
    std::size_t first = 0, last = coeffs_.size();
    while (first < last && coeffs_[first] == cplx(0.0, 0.0)) ++first;
    while (last > first && coeffs_[last - 1] == cplx(0.0, 0.0)) --last;
    if (first == last) return FracQSeries(h_, denom_, is_exact() ? 0 : stop_, {}, stop_);
    std::int64_t g = denom_;
    if (!is_exact()) g = std::gcd(g, stop_);
    for (std::size_t j = first; j < last; ++j)
        if (coeffs_[j] != cplx(0.0, 0.0)) g = std::gcd(g, start_ + static_cast<std::int64_t>(j));
    g = std::abs(g);
    if (g == 0) g = 1;
    const std::int64_t s0 = start_ + static_cast<std::int64_t>(first);
    std::vector<cplx> out;
    out.reserve((last - first) / static_cast<std::size_t>(g) + 1);
    for (std::size_t j = first; j < last; j += static_cast<std::size_t>(g)) out.push_back(coeffs_[j]);
    return FracQSeries(h_, denom_ / g, s0 / g, std::move(out), is_exact() ? kExact : stop_ / g);
}

FracQSeries FracQSeries::scaled(cplx c) const {
    std::vector<cplx> out = coeffs_;
    for (auto& x : out) x *= c;
    return FracQSeries(h_, denom_, start_, std::move(out), stop_);
}

FracQSeries combine(SeriesOp op, const FracQSeries& f, const FracQSeries& g) {
    switch (op) {
        case SeriesOp::Mul: return mul(f, g);
        case SeriesOp::Div: return div(f, g);
        case SeriesOp::Add: return add(f, g);
        case SeriesOp::Scale: {
            auto ts = g.terms();
            if (ts.size() > 1 || (ts.size() == 1 && ts[0].first != 0))
                throw std::invalid_argument("scale: second operand must be a constant");
            return f.scaled(ts.empty() ? cplx(0.0, 0.0) : ts[0].second);
        }
    }
    throw std::invalid_argument("combine: unknown operation");
}

FracQSeries operator*(const FracQSeries& f, const FracQSeries& g) { return combine(SeriesOp::Mul, f, g); }
FracQSeries operator/(const FracQSeries& f, const FracQSeries& g) { return combine(SeriesOp::Div, f, g); }
FracQSeries operator+(const FracQSeries& f, const FracQSeries& g) { return combine(SeriesOp::Add, f, g); }
FracQSeries operator-(const FracQSeries& f, const FracQSeries& g) { return add(f, g.scaled(-1.0)); }

// ---- built-in series ----

FracQSeries eta_power_series(int r, int n) {
    if (r < 0) throw std::invalid_argument("eta_power_series: exponent must be nonnegative");
    if (n < 1) throw std::invalid_argument("eta_power_series: order must be positive");
    using i128 = __int128;
    const std::size_t len = static_cast<std::size_t>(n);
    // ∏(1−qⁿ) by Euler's pentagonal theorem, ∏(1−qⁿ)³ by Jacobi's identity.
    std::vector<std::pair<std::size_t, i128>> e1, e3;
    for (std::int64_t k = 0;; ++k) {
        bool any = false;
        for (std::int64_t kk : {k, -k}) {
            if (k == 0 && kk != 0) continue;
            if (k != 0 && kk == k && false) continue;
            std::int64_t p = kk * (3 * kk - 1) / 2;
            if (p < static_cast<std::int64_t>(len)) {
                e1.emplace_back(static_cast<std::size_t>(p), (k % 2 == 0) ? 1 : -1);
                any = true;
            }
            if (k == 0) break;
        }
        if (!any) break;
    }
    for (std::int64_t m = 0; m * (m + 1) / 2 < static_cast<std::int64_t>(len); ++m)
        e3.emplace_back(static_cast<std::size_t>(m * (m + 1) / 2), (m % 2 == 0 ? 1 : -1) * (2 * m + 1));
    std::sort(e1.begin(), e1.end());

    std::vector<i128> acc(len, 0);
    acc[0] = 1;
    auto times = [&](const std::vector<std::pair<std::size_t, i128>>& sp) {
        std::vector<i128> out(len, 0);
        for (std::size_t i = 0; i < len; ++i) {
            if (acc[i] == 0) continue;
            for (const auto& [off, c] : sp) {
                if (i + off >= len) break;
                i128 prod, sum;
                if (__builtin_mul_overflow(acc[i], c, &prod) || __builtin_add_overflow(out[i + off], prod, &sum))
                    throw std::overflow_error("eta_power_series: 128-bit overflow");
                out[i + off] = sum;
            }
        }
        acc.swap(out);
    };
    for (int i = 0; i < r / 3; ++i) times(e3);
    for (int i = 0; i < r % 3; ++i) times(e1);

    std::vector<cplx> coeffs(len * 24 - 23, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < len; ++i) coeffs[i * 24] = static_cast<double>(acc[i]);
    return FracQSeries(1, 24, r, std::move(coeffs), 24 * static_cast<std::int64_t>(n) + r).normalized();
}

FracQSeries eta_series(int n) { return eta_power_series(1, n); }

FracQSeries theta_series(int variant, int n) {
    if (n < 1) throw std::invalid_argument("theta_series: order must be positive");
    if (variant == 2) {
        const std::int64_t stop = 8 * static_cast<std::int64_t>(n);
        std::vector<cplx> c;
        for (std::int64_t m = 0; (2 * m + 1) * (2 * m + 1) < stop; ++m) {
            std::size_t idx = static_cast<std::size_t>((2 * m + 1) * (2 * m + 1) - 1);
            c.resize(idx + 1);
            c[idx] = 2.0;
        }
        return FracQSeries(1, 8, 1, std::move(c), stop).normalized();
    }
    if (variant == 3 || variant == 4) {
        const std::int64_t stop = 2 * static_cast<std::int64_t>(n);
        std::vector<cplx> c;
        for (std::int64_t m = 0; m * m < stop; ++m) {
            std::size_t idx = static_cast<std::size_t>(m * m);
            c.resize(idx + 1);
            double sign = (variant == 4 && m % 2 == 1) ? -1.0 : 1.0;
            c[idx] = m == 0 ? 1.0 : 2.0 * sign;
        }
        return FracQSeries(1, 2, 0, std::move(c), stop).normalized();
    }
    throw std::invalid_argument("theta_series: variant must be 2, 3 or 4");
}

// ---- LogQExpansion ----

LogQExpansion::LogQExpansion(FracQSeries pure) { terms_.push_back({0, std::move(pure)}); }

LogQExpansion::LogQExpansion(std::vector<LogTerm> terms) {
    std::sort(terms.begin(), terms.end(), [](const LogTerm& a, const LogTerm& b) { return a.j < b.j; });
    for (auto& t : terms) {
        if (t.j < 0) throw std::invalid_argument("LogQExpansion: negative log power");
        if (!terms_.empty() && terms_.back().j == t.j)
            terms_.back().series = terms_.back().series + t.series;
        else
            terms_.push_back(std::move(t));
    }
    for (std::size_t i = 1; i < terms_.size(); ++i)
        if (terms_[i].series.width() != terms_[0].series.width())
            throw std::invalid_argument("LogQExpansion: mixed widths");
}

const FracQSeries* LogQExpansion::term(int j) const {
    for (const auto& t : terms_)
        if (t.j == j) return &t.series;
    return nullptr;
}

int LogQExpansion::max_log_power() const {
    int m = -1;
    for (const auto& t : terms_)
        if (!t.series.is_zero()) m = std::max(m, t.j);
    return m;
}

bool LogQExpansion::is_zero() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const LogTerm& t) { return t.series.is_zero(); });
}

int LogQExpansion::width() const { return terms_.empty() ? 1 : terms_.front().series.width(); }

SeriesValue LogQExpansion::evaluate(cplx tau) const {
    SeriesValue out{0.0, 0.0};
    const cplx logq = cplx(0.0, kTwoPi) * tau / static_cast<double>(width());
    for (const auto& t : terms_) {
        SeriesValue v = t.series.evaluate(tau);
        cplx f = std::pow(logq, t.j);
        out.value += f * v.value;
        out.tail += std::abs(f) * v.tail;
    }
    return out;
}

LogQExpansion LogQExpansion::times_u_power(int p) const {
    if (p < 0) throw std::invalid_argument("times_u_power: negative power");
    const cplx f = std::pow(cplx(0.0, kTwoPi), -p);
    std::vector<LogTerm> out;
    for (const auto& t : terms_) out.push_back({t.j + p, t.series.scaled(f)});
    return LogQExpansion(std::move(out));
}

LogQExpansion LogQExpansion::scaled(cplx c) const {
    std::vector<LogTerm> out;
    for (const auto& t : terms_) out.push_back({t.j, t.series.scaled(c)});
    return LogQExpansion(std::move(out));
}

LogQExpansion LogQExpansion::pruned(double tol) const {
    double scale = 0.0;
    for (const auto& t : terms_) scale = std::max(scale, t.series.max_abs_coeff());
    std::vector<LogTerm> out;
    for (const auto& t : terms_) {
        if (t.series.max_abs_coeff() <= tol * scale) continue;
        std::vector<cplx> c = t.series.coeffs();
        for (auto& x : c)
            if (std::abs(x) <= tol * scale) x = 0.0;
        out.push_back({t.j, FracQSeries(t.series.width(), t.series.denom(), t.series.start(), std::move(c),
                                        t.series.stop())
                                .normalized()});
    }
    return LogQExpansion(std::move(out));
}

LogQExpansion operator+(const LogQExpansion& a, const LogQExpansion& b) {
    std::vector<LogTerm> all = a.terms_;
    all.insert(all.end(), b.terms_.begin(), b.terms_.end());
    return LogQExpansion(std::move(all));
}

}  // namespace vvaf
