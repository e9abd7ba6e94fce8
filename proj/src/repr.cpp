#include "vvaf/repr.hpp"

#include "vvaf/fit.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace vvaf {

struct Representation::Memo {
    std::mutex mu;
    std::unordered_map<std::string, Matrix> cache;
};

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Representation::Representation(Matrix s, Matrix t, Subgroup group)
    : s_(std::move(s)), t_(std::move(t)), group_(std::move(group)) {
    if (s_.rows() != s_.cols() || t_.rows() != t_.cols() || s_.rows() != t_.rows() || s_.rows() == 0)
        throw std::invalid_argument("Representation: generator images must be square of equal size");
    for (const Matrix* m : {&s_, &t_}) {
        Eigen::JacobiSVD<Matrix> svd(*m);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) <= 1e-10 * sv(0))
            throw std::invalid_argument("Representation: generator image is numerically singular");
    }
    t_inv_ = t_.inverse();
}

void Representation::enable_memo() {
    if (!memo_) memo_ = std::make_shared<Memo>();
}

Matrix Representation::t_power(std::int64_t n) const {
    const int m = dim();
    Matrix result = Matrix::Identity(m, m);
    Matrix base = n < 0 ? t_inv_ : t_;
    std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

Matrix Representation::evaluate(const Word& w) const {
    const int m = dim();
    Matrix r = Matrix::Identity(m, m);
    for (const auto& l : w) {
        if (l.gen == 's') {
            if (abs(l.exp) % 2 == 1) r = r * s_;
        } else {
            if (abs(l.exp) > std::numeric_limits<std::int64_t>::max())
                throw std::out_of_range("Representation: exponent exceeds 64 bits");
            r = r * t_power(l.exp.convert_to<std::int64_t>());
        }
    }
    return r;
}

Matrix Representation::evaluate(const SL2Z& g) const {
    if (!group_.contains(g))
        throw std::invalid_argument("Representation: " + g.to_string() + " is not in " + group_.name());
    Word w = word_decompose(g);
    if (!memo_) return evaluate(w);
    std::string key = to_string(w);
    {
        std::lock_guard<std::mutex> lock(memo_->mu);
        auto it = memo_->cache.find(key);
        if (it != memo_->cache.end()) return it->second;
    }
    Matrix r = evaluate(w);
    std::lock_guard<std::mutex> lock(memo_->mu);
    memo_->cache.emplace(key, r);
    return r;
}

ValidationReport validate(const Representation& rho, double tol) {
    const int m = rho.dim();
    Matrix id = Matrix::Identity(m, m);
    Matrix st = rho.mat_s() * rho.mat_t();
    double ds = max_abs(rho.mat_s() * rho.mat_s() - id);
    double dst = max_abs(st * st * st - id);
    ValidationReport r{ds, dst, ds < tol && dst < tol, ""};
    if (ds >= tol) r.detail += "s^2 != I; ";
    if (dst >= tol) r.detail += "(st)^3 != I; ";
    if (r.pass) r.detail = "ok";
    return r;
}

MuValue mu(cplx lambda) {
    if (std::abs(std::abs(lambda) - 1.0) > 1e-8)
        throw std::invalid_argument("mu: eigenvalue is not on the unit circle");
    double x = std::arg(lambda) / (2.0 * std::numbers::pi);
    if (x < 0) x += 1.0;
    if (x >= 1.0) x -= 1.0;
    for (std::int64_t q = 1; q <= 1000; ++q) {
        std::int64_t p = std::llround(x * static_cast<double>(q));
        double ang = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(q);
        if (std::abs(lambda - std::polar(1.0, ang)) < 1e-10) {
            p %= q;
            return {static_cast<double>(p) / static_cast<double>(q), std::make_pair(p, q)};
        }
    }
    return {x, std::nullopt};
}

std::vector<Matrix> parabolic_images(const Representation& rho) {
    if (rho.group().is_full()) return {rho.mat_t()};
    std::vector<Matrix> out;
    for (const auto& cc : cusp_classes(rho.group())) out.push_back(rho.evaluate(cc.parabolic));
    return out;
}

bool is_admissible(const Representation& rho) {
    for (const auto& p : parabolic_images(rho)) {
        JordanData jd = jordan_form(p);
        if (!jd.reliable) throw std::runtime_error("is_admissible: " + jd.diagnostic);
        for (const auto& b : jd.blocks)
            if (b.size != 1) return false;
    }
    return true;
}

bool is_polynomial_growth(const Representation& rho) {
    for (const auto& p : parabolic_images(rho)) {
        JordanData jd = jordan_form(p);
        for (const auto& b : jd.blocks)
            if (std::abs(std::abs(b.lambda) - 1.0) > 1e-8) return false;
    }
    return true;
}

ParabolicNorms parabolic_power_norms(const Representation& rho, int nmax) {
    Matrix step = rho.mat_t();
    if (!rho.group().is_full()) step = rho.t_power(cusp_width(rho.group(), Cusp::infinity()));
    ParabolicNorms out{{}, 0.0, 0.0};
    Matrix p = Matrix::Identity(rho.dim(), rho.dim());
    for (int n = 1; n <= nmax; ++n) {
        p = p * step;
        out.norms.push_back(p.norm());
    }
    if (nmax >= 2) {
        std::vector<double> x, y;
        for (int n = (nmax + 1) / 2; n <= nmax; ++n) {
            x.push_back(std::log(static_cast<double>(n)));
            y.push_back(std::log(out.norms[n - 1]));
        }
        out.slope = fit_line(x, y).slope;
    }
    if (nmax >= 1) out.exp_rate = std::log(out.norms.back()) / nmax;
    return out;
}

Matrix induced_block_matrix(const Representation& rho, const std::vector<SL2Z>& reps, const SL2Z& x) {
    const int m = rho.dim();
    const int d = static_cast<int>(reps.size());
    Matrix out = Matrix::Zero(d * m, d * m);
    for (int i = 0; i < d; ++i) {
        SL2Z left = reps[i].inverse() * x;
        for (int j = 0; j < d; ++j) {
            SL2Z y = left * reps[j];
            if (rho.group().contains(y)) out.block(i * m, j * m, m, m) = rho.evaluate(y);
        }
    }
    return out;
}

Representation induce(const Representation& rho, const std::vector<SL2Z>& reps) {
    const Subgroup& h = rho.group();
    if (reps.empty() || !reps[0].is_identity())
        throw std::invalid_argument("induce: first coset representative must be the identity");
    if (static_cast<long>(reps.size()) != h.index())
        throw std::invalid_argument("induce: transversal size differs from the index");
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            if (h.contains(reps[i].inverse() * reps[j]))
                throw std::invalid_argument("induce: representatives " + std::to_string(i) + " and " +
                                            std::to_string(j) + " share a coset");
    return Representation(induced_block_matrix(rho, reps, SL2Z::S()),
                          induced_block_matrix(rho, reps, SL2Z::T(1)));
}

std::string to_string(GrowthClass g) { return g == GrowthClass::Polynomial ? "polynomial" : "exponential"; }

bool is_unitary(const Representation& rho, double tol) {
    const int m = rho.dim();
    Matrix id = Matrix::Identity(m, m);
    return max_abs(rho.mat_s().adjoint() * rho.mat_s() - id) < tol &&
           max_abs(rho.mat_t().adjoint() * rho.mat_t() - id) < tol;
}

GrowthFit growth_exponent(const Representation& rho, const SamplerConfig& cfg) {
    GrowthFit out{};
    out.seed = cfg.seed;
    out.unitary = is_unitary(rho);
    out.tn_rate = parabolic_power_norms(rho, 60).exp_rate;
    if (!is_polynomial_growth(rho)) {
        out.classification = GrowthClass::Exponential;
        out.alpha_emp = std::numeric_limits<double>::infinity();
        return out;
    }
    out.classification = GrowthClass::Polynomial;

    std::vector<SL2Z> right;
    if (!rho.group().is_full())
        for (const auto& r : left_transversal(rho.group())) right.push_back(r.inverse());
    auto into_group = [&](const SL2Z& x) -> SL2Z {
        if (right.empty()) return x;
        for (const auto& r : right) {
            SL2Z y = x * r.inverse();
            if (rho.group().contains(y)) return y;
        }
        throw std::runtime_error("growth_exponent: element outside every coset");
    };

    std::mt19937_64 rng(cfg.seed);
    std::vector<SL2Z> samples;
    for (int i = 0; i < cfg.word_samples; ++i) samples.push_back(into_group(random_word_element(rng, cfg.max_word_length)));
    for (int i = 0; i < cfg.matrix_samples; ++i) samples.push_back(into_group(random_element(rng, cfg.max_entry)));

    std::vector<double> lx, ly;
    for (const auto& g : samples) {
        if (g.is_identity()) continue;
        double gn = g.frobenius_norm();
        double rn = rho.evaluate(g).norm();
        out.data.push_back({gn, rn, std::numeric_limits<double>::quiet_NaN()});
        lx.push_back(std::log(gn));
        ly.push_back(std::log(rn));
    }
    LineFit f = fit_line(lx, ly);
    out.alpha_emp = f.slope;
    out.fit_residual = f.rms_residual;
    out.samples = out.data.size();

    const double a_sharp = std::max(out.alpha_emp, 0.0) / 2.0;
    const int m = rho.dim();
    std::size_t k = 0;
    for (const auto& g : samples) {
        if (g.is_identity()) continue;
        auto& s = out.data[k++];
        out.max_ratio = std::max(out.max_ratio, s.rep_norm / std::pow(s.group_norm, out.alpha_emp));
        if (g.c() != 0) {
            double a = to_double(g.a()), c = to_double(g.c()), d = to_double(g.d());
            double fl = std::floor(std::abs(a / c));
            double denom = std::pow(c * c + d * d, a_sharp) * std::max(std::pow(fl, m - 1), 1.0);
            s.sharp_ratio = s.rep_norm / denom;
            out.sharp_max_ratio = std::max(out.sharp_max_ratio, s.sharp_ratio);
        }
    }
    return out;
}

// ---- built-ins ----

cplx parse_complex(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    auto num = [&](const std::string& t, double unit) -> double {
        if (t.empty() || t == "+") return unit;
        if (t == "-") return -unit;
        std::size_t pos = 0;
        double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("bad complex literal: " + text);
        return v;
    };
    char last = s.back();
    if (last != 'i' && last != 'j') return {num(s, 1.0), 0.0};
    std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, num(body, 1.0)};
    return {num(body.substr(0, split), 1.0), num(body.substr(split), 1.0)};
}

Params parse_params(const std::vector<std::string>& kv) {
    Params p;
    for (const auto& item : kv) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("parameter must be key=value: " + item);
        p[item.substr(0, eq)] = parse_complex(item.substr(eq + 1));
    }
    return p;
}

Representation theta_eta_rep() {
    using std::numbers::pi;
    Matrix s = Matrix::Zero(3, 3);
    s(0, 2) = s(1, 1) = s(2, 0) = 1.0;
    Matrix t = Matrix::Zero(3, 3);
    t(0, 0) = std::polar(1.0, pi / 6);
    t(1, 2) = t(2, 1) = std::polar(1.0, -pi / 12);
    return Representation(s, t);
}

Representation theta_eta_twist_rep() {
    Representation r = theta_eta_rep();
    return Representation(-r.mat_s(), std::polar(1.0, std::numbers::pi / 3) * r.mat_t());
}

Representation nonpoly_rep(cplx a, std::vector<std::string>* warnings) {
    if (std::abs(a) == 0.0) throw std::invalid_argument("nonpoly: a must be nonzero");
    if (std::abs(a.real()) > 1e-15 && warnings)
        warnings->push_back("nonpoly: a is not purely imaginary; non-unitarity argument does not apply");
    cplx inv = 1.0 / a;
    const cplx root = std::sqrt(inv * inv - 4.0);
    cplx l2 = (inv + root) / 2.0, l1 = l2 - inv;
    if (std::abs(l1) < std::abs(l2)) {
        l2 = (inv - root) / 2.0;
        l1 = l2 - inv;
    }
    Matrix s(3, 3);
    s << a, -(a + 1.0), 1.0,
         a - 1.0, -a, 1.0,
         0.0, 0.0, 1.0;
    Matrix t = Matrix::Zero(3, 3);
    t(0, 0) = l1;
    t(1, 1) = l2;
    t(2, 2) = 1.0;
    return Representation(s, t);
}

Representation sym2_rep() {
    // Action of (a b; c d) on (x², xy, y²): rows (a², 2ab, b²), (ac, ad+bc, bd), (c², 2cd, d²).
    Matrix s(3, 3), t(3, 3);
    s << 0, 0, 1,
         0, -1, 0,
         1, 0, 0;
    t << 1, 2, 1,
         0, 1, 1,
         0, 0, 1;
    return Representation(s, t);
}

Representation trivial_rep(int m, const Subgroup& group) {
    return Representation(Matrix::Identity(m, m), Matrix::Identity(m, m), group);
}

Representation direct_sum(const Representation& a, const Representation& b) {
    const int m = a.dim(), n = b.dim();
    Matrix s = Matrix::Zero(m + n, m + n), t = Matrix::Zero(m + n, m + n);
    s.topLeftCorner(m, m) = a.mat_s();
    s.bottomRightCorner(n, n) = b.mat_s();
    t.topLeftCorner(m, m) = a.mat_t();
    t.bottomRightCorner(n, n) = b.mat_t();
    return Representation(s, t, a.group());
}

std::vector<std::string> builtin_names() {
    return {"theta-eta", "theta-eta-twist", "nonpoly", "sym2", "trivial", "delta-multiplier-weight-12-trivial"};
}

Representation builtin(const std::string& name, const Params& params, std::vector<std::string>* warnings) {
    auto get = [&](const std::string& k, cplx dflt) {
        auto it = params.find(k);
        return it == params.end() ? dflt : it->second;
    };
    if (name == "theta-eta") return theta_eta_rep();
    if (name == "theta-eta-twist") return theta_eta_twist_rep();
    if (name == "nonpoly") return nonpoly_rep(get("a", cplx(0.0, 1.0)), warnings);
    if (name == "sym2") return sym2_rep();
    if (name == "trivial" || name == "delta-multiplier-weight-12-trivial") {
        int m = static_cast<int>(std::lround(get("m", 1.0).real()));
        Subgroup g = Subgroup::full();
        if (params.count("gamma")) g = Subgroup::gamma(std::lround(params.at("gamma").real()));
        if (params.count("gamma0")) g = Subgroup::gamma0(std::lround(params.at("gamma0").real()));
        return trivial_rep(m, g);
    }
    throw std::invalid_argument("unknown builtin representation: " + name);
}

}  // namespace vvaf
