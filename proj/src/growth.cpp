#include "vvaf/growth.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace vvaf {

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return out;
}

struct RatioStats {
    double constant;
    std::size_t violations;
};

// C from the smallest 10% of samples by ‖γ‖; violations are ratios above 10·C.
RatioStats ratio_stats(const std::vector<std::pair<double, double>>& norm_ratio) {
    if (norm_ratio.empty()) return {0.0, 0};
    auto sorted = norm_ratio;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t low = std::max<std::size_t>(1, sorted.size() / 10);
    double c = 0.0;
    for (std::size_t i = 0; i < low; ++i) c = std::max(c, sorted[i].second);
    std::size_t v = 0;
    for (const auto& [g, r] : sorted)
        if (!(r <= 10.0 * c)) ++v;
    return {c, v};
}

std::vector<std::vector<int>> coordinate_blocks(const Representation& rho) {
    const int m = rho.dim();
    std::vector<int> parent(static_cast<std::size_t>(m));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
        return i;
    };
    const double tol = 1e-12 * std::max(1.0, std::max(max_abs(rho.mat_s()), max_abs(rho.mat_t())));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (std::abs(rho.mat_s()(i, j)) > tol || std::abs(rho.mat_t()(i, j)) > tol)
                parent[static_cast<std::size_t>(find(i))] = find(j);
    std::vector<std::vector<int>> blocks;
    std::vector<int> roots;
    for (int i = 0; i < m; ++i) {
        int r = find(i);
        auto it = std::find(roots.begin(), roots.end(), r);
        if (it == roots.end()) {
            roots.push_back(r);
            blocks.push_back({i});
        } else {
            blocks[static_cast<std::size_t>(it - roots.begin())].push_back(i);
        }
    }
    return blocks;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Degenerate: return "DEGENERATE";
    }
    return "?";
}

std::string to_string(VanishingDecision d) {
    switch (d) {
        case VanishingDecision::Inactive: return "inactive";
        case VanishingDecision::Consistent: return "consistent";
        case VanishingDecision::Inconsistent: return "inconsistent";
    }
    return "?";
}

EffectiveAlpha effective_alpha(const Representation& rho, const SamplerConfig& cfg) {
    EffectiveAlpha out{};
    out.fit = growth_exponent(rho, cfg);
    out.unitary = out.fit.unitary;
    out.alpha = out.unitary ? 0.0 : out.fit.alpha_emp;
    out.alpha_log = out.alpha + rho.dim();
    return out;
}

GrowthReport coefficient_growth_report(const FourierCoefficients& c, int k, int m, bool logarithmic, bool cusp,
                                       std::int64_t n, double alpha, GrowthTarget target) {
    GrowthReport r{};
    if (target == GrowthTarget::Auto) target = cusp ? GrowthTarget::Cusp : GrowthTarget::Holomorphic;
    const bool b = target == GrowthTarget::Cusp;
    r.target_name = b ? "k/2+alpha" : "k+2alpha";
    auto tgt = [&](double a) { return b ? k / 2.0 + a : k + 2.0 * a; };
    r.target_alpha = tgt(alpha);
    r.target_alpha_m = tgt(alpha + m);
    r.alpha_used = logarithmic ? "alpha+m" : "alpha";
    r.alpha = logarithmic ? alpha + m : alpha;
    r.target = tgt(r.alpha);
    r.n_lo = std::max<std::int64_t>(1, n / 2);
    r.n_hi = n;

    std::vector<std::pair<std::int64_t, double>> all;
    double scale = 0.0;
    for (std::int64_t i = r.n_lo; i <= r.n_hi; ++i) {
        std::int64_t idx = i - c.n_min;
        if (idx < 0 || idx >= static_cast<std::int64_t>(c.c.size())) continue;
        double v = c.c[static_cast<std::size_t>(idx)].cwiseAbs().maxCoeff();
        all.emplace_back(i, v);
        scale = std::max(scale, v);
    }
    std::vector<double> lx, ly;
    const std::int64_t split = r.n_lo + (r.n_hi - r.n_lo) / 2;
    for (const auto& [i, v] : all) {
        if (v <= 1e-12 * scale || v == 0.0) continue;
        r.samples.emplace_back(i, v);
        lx.push_back(std::log(static_cast<double>(i)));
        ly.push_back(std::log(v));
        double ratio = v / std::pow(static_cast<double>(i), r.target);
        (i < split ? r.ratio_start : r.ratio_top) = std::max(i < split ? r.ratio_start : r.ratio_top, ratio);
        r.max_ratio = std::max(r.max_ratio, ratio);
    }
    r.points = lx.size();
    if (r.points < 2) {
        r.verdict = Verdict::Degenerate;
        return r;
    }
    LineFit f = fit_line(lx, ly);
    r.beta = f.slope;
    r.fit_residual = f.rms_residual;
    r.verdict = (r.ratio_top <= 10.0 * r.ratio_start && r.beta <= r.target + 0.15) ? Verdict::Pass : Verdict::Fail;
    return r;
}

GrowthReport coefficient_growth_report(const VVAF& x, std::int64_t n, double alpha, GrowthTarget target) {
    return coefficient_growth_report(x.coefficients(n), x.weight(), x.dim(), x.logarithmic(), x.cusp_form(), n, alpha,
                                     target);
}

MeanSquareReport mean_square(const FourierCoefficients& c, std::int64_t n, double target) {
    MeanSquareReport r{};
    r.target = target;
    double acc = 0.0;
    for (std::int64_t i = std::min<std::int64_t>(c.n_min, 1); i <= n; ++i) {
        std::int64_t idx = i - c.n_min;
        if (idx >= 0 && idx < static_cast<std::int64_t>(c.c.size())) acc += c.c[static_cast<std::size_t>(idx)].squaredNorm();
        if (i >= 1) r.partial_sums.push_back(acc);
    }
    std::vector<double> lx, ly;
    for (std::int64_t mm = std::max<std::int64_t>(1, n / 2); mm <= n; ++mm) {
        double p = r.partial_sums[static_cast<std::size_t>(mm - 1)];
        if (p <= 0.0) continue;
        lx.push_back(std::log(static_cast<double>(mm)));
        ly.push_back(std::log(p));
    }
    if (lx.size() < 2) {
        r.verdict = Verdict::Degenerate;
        return r;
    }
    LineFit f = fit_line(lx, ly);
    r.slope = f.slope;
    r.fit_residual = f.rms_residual;
    r.verdict = r.slope <= target + 0.3 ? Verdict::Pass : Verdict::Fail;
    return r;
}

MeanSquareReport mean_square(const VVAF& x, std::int64_t n, double alpha) {
    const double a = x.logarithmic() ? alpha + x.dim() : alpha;
    const double target = x.cusp_form() ? x.weight() + 2.0 * a : 2.0 * x.weight() + 4.0 * a;
    return mean_square(x.coefficients(n), n, target);
}

SupnormReport supnorm_scan(const VVAF& x, double exponent, int nx, int ny, double y_min, double y_max) {
    SupnormReport r{};
    r.exponent = exponent;
    const double h = x.width();
    for (double y : log_grid(y_min, y_max, ny)) {
        for (int i = 0; i < nx; ++i) {
            const double xx = nx == 1 ? 0.0 : h * i / (nx - 1);
            VectorValue v = x.evaluate(cplx(xx, y));
            const double w = std::pow(y, exponent) * v.value.norm();
            (y < 1.0 ? r.max_low : r.max_high) = std::max(y < 1.0 ? r.max_low : r.max_high, w);
            r.max_tail = std::max(r.max_tail, std::pow(y, exponent) * v.tail);
            ++r.points;
        }
    }
    r.max_all = std::max(r.max_low, r.max_high);
    r.verdict = r.max_low <= 10.0 * r.max_high ? Verdict::Pass : Verdict::Fail;
    return r;
}

ConverseReport converse_growth_check(const Evaluator& x, const Representation& rho, int k, double zeta, int max_log,
                                     const SamplerConfig& cfg) {
    ConverseReport r{};
    r.seed = cfg.seed;
    r.exponent = 2.0 * zeta - k;
    const Subgroup& grp = rho.group();
    const long h = cusp_width(grp, Cusp::infinity());

    // Functional equation on a few points.
    r.fe_ok = true;
    for (const SL2Z& g : {SL2Z::S(), SL2Z::T(h), SL2Z::T(h) * SL2Z::S() * SL2Z::T(-h)}) {
        if (!grp.contains(g)) continue;
        const Matrix rg = rho.evaluate(g);
        for (cplx tau : {cplx(0.1, 1.1), cplx(-0.3, 0.9), cplx(0.45, 1.3)}) {
            Vector lhs = std::pow(j_factor(g, tau), -k) * x(apply(g, tau));
            Vector rhs = rg * x(tau);
            double res = (lhs - rhs).norm();
            r.fe_residual = std::max(r.fe_residual, res);
            if (res > 1e-8 * std::max(lhs.norm(), rhs.norm()) + 1e-14) r.fe_ok = false;
        }
    }

    // Growth hypothesis ‖X‖ ≪ max_j |τ|^j·y^{−ζ} on the strip.
    std::vector<Vector> values;
    for (double y : log_grid(0.05, 10.0, 24)) {
        for (int i = 0; i < 24; ++i) {
            cplx tau(static_cast<double>(h) * i / 23.0, y);
            Vector v = x(tau);
            if (values.size() < 64 && i % 4 == 0) values.push_back(v);
            double w = std::pow(y, zeta) * v.norm() / std::max(1.0, std::pow(std::abs(tau), max_log));
            (y < 1.0 ? r.zeta_low : r.zeta_high) = std::max(y < 1.0 ? r.zeta_low : r.zeta_high, w);
        }
    }
    r.zeta_ok = r.zeta_low <= 10.0 * r.zeta_high;

    std::mt19937_64 rng(cfg.seed);
    std::vector<SL2Z> samples;
    const int total = cfg.word_samples + cfg.matrix_samples;
    for (int i = 0; i < total * 4 && static_cast<int>(samples.size()) < total; ++i) {
        SL2Z g = random_word_element(rng, cfg.max_word_length);
        if (!g.is_identity() && grp.contains(g)) samples.push_back(g);
    }
    r.samples = samples.size();

    auto check = [&](const std::function<double(const Matrix&)>& norm) {
        std::vector<std::pair<double, double>> nr;
        for (const auto& g : samples) {
            double gn = g.frobenius_norm();
            nr.emplace_back(gn, norm(rho.evaluate(g)) / std::pow(gn, r.exponent));
        }
        return ratio_stats(nr);
    };

    RatioStats full = check([](const Matrix& m) { return m.norm(); });
    r.constant = full.constant;
    r.violations = full.violations;
    r.pass = r.fe_ok && r.zeta_ok && r.violations == 0;

    auto blocks = coordinate_blocks(rho);
    if (blocks.size() > 1) {
        for (const auto& b : blocks) {
            RatioStats st = check([&](const Matrix& m) {
                Matrix sub(b.size(), b.size());
                for (std::size_t i = 0; i < b.size(); ++i)
                    for (std::size_t j = 0; j < b.size(); ++j) sub(i, j) = m(b[i], b[j]);
                return sub.norm();
            });
            r.blocks.push_back({b, st.constant, st.violations, st.violations == 0});
        }
    }

    Matrix vals(rho.dim(), static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) vals.col(static_cast<Eigen::Index>(i)) = values[i];
    Eigen::JacobiSVD<Matrix> svd(vals, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-8 * std::max(sv(0), 1e-300)) ++rank;
    if (rank > 0) {
        Matrix q = svd.matrixU().leftCols(rank);
        RatioStats st = check([&](const Matrix& m) { return (q.adjoint() * m * q).norm(); });
        std::vector<int> idx(static_cast<std::size_t>(rank));
        std::iota(idx.begin(), idx.end(), 0);
        r.restricted = {idx, st.constant, st.violations, st.violations == 0};
    }
    return r;
}

ConverseReport converse_growth_check(const VVAF& x, double zeta, const SamplerConfig& cfg) {
    int max_log = 0;
    for (const auto& c : x.components()) max_log = std::max(max_log, c.max_log_power());
    return converse_growth_check([&](cplx tau) { return x.evaluate(tau).value; }, x.rep(), x.weight(), zeta, max_log,
                                 cfg);
}

VanishingDecision vanishing_check(int k, double alpha, const Evaluator& x) {
    if (!(k + 2.0 * alpha < 0.0)) return VanishingDecision::Inactive;
    for (double y : {0.5, 1.0, 2.0, 4.0})
        for (int i = 0; i < 8; ++i)
            if (x(cplx(i / 8.0, y)).norm() >= 1e-8) return VanishingDecision::Inconsistent;
    return VanishingDecision::Consistent;
}

VanishingDecision vanishing_check(int k, double alpha, const VVAF& x) {
    return vanishing_check(k, alpha, [&](cplx tau) { return x.evaluate(tau).value; });
}

}  // namespace vvaf
