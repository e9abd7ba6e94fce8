#include "vvaf/io.hpp"

#include <cmath>
#include <limits>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vvaf {

namespace {

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s.empty() || s.find_first_not_of("+-0123456789") != std::string::npos)
            throw std::invalid_argument("malformed integer: " + s);
        return Int(s);
    }
    throw std::invalid_argument("expected an integer or a decimal string");
}

json int_to_json(const Int& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    throw std::invalid_argument("complex entries must be [re, im]");
}

json rational_to_json(const Rational& r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); }

json group_to_json(const Subgroup& g) {
    switch (g.kind()) {
        case Subgroup::Kind::Full: return "PSL2Z";
        case Subgroup::Kind::Gamma: return json{{"gamma", g.level()}};
        case Subgroup::Kind::Gamma0: return json{{"gamma0", g.level()}};
        case Subgroup::Kind::Custom: return g.name();
    }
    return "PSL2Z";
}

Subgroup group_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "PSL2Z") return Subgroup::full();
        throw std::invalid_argument("unknown group: " + j.get<std::string>());
    }
    if (j.is_object()) {
        if (j.contains("gamma")) return Subgroup::gamma(j.at("gamma").get<long>());
        if (j.contains("gamma0")) return Subgroup::gamma0(j.at("gamma0").get<long>());
    }
    throw std::invalid_argument("group must be \"PSL2Z\", {\"gamma\":N} or {\"gamma0\":N}");
}

json opt_rational(const std::optional<Rational>& r) { return r ? rational_to_json(*r) : json(nullptr); }

json finite(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

json to_json(const SL2Z& g) {
    return json::array({json::array({int_to_json(g.a()), int_to_json(g.b())}),
                        json::array({int_to_json(g.c()), int_to_json(g.d())})});
}

SL2Z sl2z_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2)
        throw std::invalid_argument("group element must be [[a,b],[c,d]]");
    return SL2Z(int_from_json(j[0][0]), int_from_json(j[0][1]), int_from_json(j[1][0]), int_from_json(j[1][1]));
}

json to_json(const Word& w) {
    json out = json::array();
    for (const auto& l : w) out.push_back({{"gen", std::string(1, l.gen)}, {"exp", int_to_json(l.exp)}});
    return out;
}

Word word_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("word must be a list");
    Word w;
    for (const auto& l : j) {
        const std::string g = l.at("gen").get<std::string>();
        if (g != "s" && g != "t") throw std::invalid_argument("word generator must be s or t");
        w.push_back({g[0], int_from_json(l.at("exp"))});
    }
    return w;
}

json to_json(const Matrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(cplx_to_json(m(i, k)));
        out.push_back(row);
    }
    return out;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty list of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw std::invalid_argument("matrix must be square");
        for (Eigen::Index k = 0; k < n; ++k) m(i, k) = cplx_from_json(row[static_cast<std::size_t>(k)]);
    }
    return m;
}

json to_json(const Representation& rho) {
    return {{"m", rho.dim()}, {"s", to_json(rho.mat_s())}, {"t", to_json(rho.mat_t())}, {"group", group_to_json(rho.group())}};
}

Representation representation_from_json(const json& j) {
    Matrix s = matrix_from_json(j.at("s"));
    Matrix t = matrix_from_json(j.at("t"));
    if (j.contains("m") && j.at("m").get<int>() != s.rows())
        throw std::invalid_argument("representation: m does not match the matrix size");
    if (s.rows() != t.rows()) throw std::invalid_argument("representation: s and t sizes differ");
    return Representation(s, t, j.contains("group") ? group_from_json(j.at("group")) : Subgroup::full());
}

json to_json(const FracQSeries& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs()) coeffs.push_back(cplx_to_json(c));
    return {{"width", s.width()},
            {"denom", s.denom()},
            {"start", s.start()},
            {"stop", s.is_exact() ? json(nullptr) : json(s.stop())},
            {"coeffs", coeffs}};
}

FracQSeries series_from_json(const json& j) {
    std::vector<cplx> c;
    for (const auto& v : j.at("coeffs")) c.push_back(cplx_from_json(v));
    const std::int64_t stop = j.at("stop").is_null() ? FracQSeries::kExact : j.at("stop").get<std::int64_t>();
    return FracQSeries(j.at("width").get<int>(), j.at("denom").get<std::int64_t>(), j.at("start").get<std::int64_t>(),
                       std::move(c), stop);
}

json to_json(const VVAF& x) {
    json comps = json::array();
    for (const auto& c : x.components()) {
        json terms = json::array();
        for (const auto& t : c.terms()) terms.push_back({{"j", t.j}, {"series", to_json(t.series)}});
        comps.push_back(terms);
    }
    return {{"weight", x.weight()},
            {"representation", to_json(x.rep())},
            {"components", comps},
            {"flags", {{"holomorphic", x.holomorphic()}, {"cusp_form", x.cusp_form()}, {"logarithmic", x.logarithmic()}}},
            {"truncation_order", opt_rational(x.truncation_order())}};
}

VVAF vvaf_from_json(const json& j) {
    std::vector<LogQExpansion> comps;
    for (const auto& c : j.at("components")) {
        std::vector<LogTerm> terms;
        for (const auto& t : c) terms.push_back({t.at("j").get<int>(), series_from_json(t.at("series"))});
        comps.emplace_back(std::move(terms));
    }
    return VVAF(j.at("weight").get<int>(), representation_from_json(j.at("representation")), std::move(comps));
}

json to_json(const ValidationReport& r) {
    return {{"s_deviation", r.s_deviation}, {"st_deviation", r.st_deviation}, {"pass", r.pass}, {"detail", r.detail}};
}

json to_json(const JordanData& d) {
    json blocks = json::array();
    for (const auto& b : d.blocks) blocks.push_back({{"lambda", cplx_to_json(b.lambda)}, {"size", b.size}});
    return {{"blocks", blocks},
            {"tol", d.tol},
            {"reconstruction_error", finite(d.reconstruction_error)},
            {"reliable", d.reliable},
            {"diagnostic", d.diagnostic}};
}

json to_json(const GrowthFit& f, bool with_samples) {
    json out = {{"classification", to_string(f.classification)},
                {"alpha_emp", finite(f.alpha_emp)},
                {"fit_residual", f.fit_residual},
                {"max_ratio", f.max_ratio},
                {"sharp_max_ratio", f.sharp_max_ratio},
                {"samples", f.samples},
                {"unitary", f.unitary},
                {"tn_rate", f.tn_rate},
                {"seed", f.seed}};
    if (with_samples) {
        json s = json::array();
        for (const auto& d : f.data)
            s.push_back({{"group_norm", d.group_norm}, {"rep_norm", d.rep_norm}, {"sharp_ratio", finite(d.sharp_ratio)}});
        out["data"] = s;
    }
    return out;
}

json to_json(const GrowthReport& r) {
    json samples = json::array();
    for (const auto& [n, v] : r.samples) samples.push_back(json::array({n, v}));
    return {{"target_name", r.target_name},
            {"target", r.target},
            {"alpha", r.alpha},
            {"alpha_used", r.alpha_used},
            {"target_alpha", r.target_alpha},
            {"target_alpha_m", r.target_alpha_m},
            {"beta", r.beta},
            {"fit_residual", r.fit_residual},
            {"ratio_start", r.ratio_start},
            {"ratio_top", r.ratio_top},
            {"max_ratio", r.max_ratio},
            {"n_lo", r.n_lo},
            {"n_hi", r.n_hi},
            {"points", r.points},
            {"verdict", to_string(r.verdict)},
            {"samples", samples}};
}

json to_json(const MeanSquareReport& r) {
    return {{"partial_sums", r.partial_sums},
            {"slope", r.slope},
            {"fit_residual", r.fit_residual},
            {"target", r.target},
            {"verdict", to_string(r.verdict)}};
}

json to_json(const SupnormReport& r) {
    return {{"exponent", r.exponent}, {"max_low", r.max_low}, {"max_high", r.max_high}, {"max_all", r.max_all},
            {"max_tail", r.max_tail}, {"points", r.points},     {"verdict", to_string(r.verdict)}};
}

json to_json(const ConverseReport& r) {
    auto block = [](const BlockCheck& b) {
        return json{{"indices", b.indices}, {"constant", b.constant}, {"violations", b.violations}, {"pass", b.pass}};
    };
    json blocks = json::array();
    for (const auto& b : r.blocks) blocks.push_back(block(b));
    return {{"fe_ok", r.fe_ok},         {"fe_residual", r.fe_residual}, {"zeta_ok", r.zeta_ok},
            {"zeta_low", r.zeta_low},   {"zeta_high", r.zeta_high},     {"exponent", r.exponent},
            {"constant", r.constant},   {"samples", r.samples},         {"violations", r.violations},
            {"pass", r.pass},           {"blocks", blocks},             {"restricted", block(r.restricted)},
            {"seed", r.seed}};
}

json to_json(const LValue& v) {
    json vals = json::array();
    for (Eigen::Index i = 0; i < v.value.size(); ++i) vals.push_back(cplx_to_json(v.value(i)));
    return {{"s", cplx_to_json(v.s)},     {"value", vals},          {"method", to_string(v.method)},
            {"error", v.error},           {"rigorous", v.rigorous}, {"terms", v.terms},
            {"split", v.split},           {"smoothing", v.smoothing}, {"warnings", v.warnings}};
}

json to_json(const FEResidual& r) {
    return {{"s", cplx_to_json(r.s)}, {"residual_plus", r.plus}, {"residual_minus", r.minus},
            {"selected", r.selected}, {"error", r.error}};
}

json to_json(const ExpSumScan& s) {
    json cells = json::array();
    for (const auto& c : s.cells) {
        json sum = json::array();
        for (Eigen::Index i = 0; i < c.sum.size(); ++i) sum.push_back(cplx_to_json(c.sum(i)));
        cells.push_back({{"theta", c.theta.to_string()}, {"X", c.cutoff}, {"sum", sum}, {"ratio", c.ratio}});
    }
    json th = json::array();
    for (const auto& t : s.thetas) th.push_back(t.to_string());
    return {{"thetas", th},           {"cutoffs", s.cutoffs},         {"sigma", s.sigma},
            {"exponent", s.exponent}, {"ratio_small", s.ratio_small}, {"ratio_large", s.ratio_large},
            {"verdict", to_string(s.verdict)}, {"cells", cells}};
}

std::string series_csv(const VVAF& x) {
    std::ostringstream out;
    out << "component,log_power,exponent_num,exponent_den,re,im\n";
    for (int i = 0; i < x.dim(); ++i)
        for (const auto& t : x.components()[static_cast<std::size_t>(i)].terms())
            for (const auto& [e, c] : t.series.terms())
                out << i << ',' << t.j << ',' << e.numerator() << ',' << e.denominator() << ',' << format_double(c.real())
                    << ',' << format_double(c.imag()) << '\n';
    return out.str();
}

std::string lvalues_csv(const std::vector<LValue>& values) {
    std::ostringstream out;
    out << "s_re,s_im,component,value_re,value_im,err\n";
    for (const auto& v : values)
        for (Eigen::Index i = 0; i < v.value.size(); ++i)
            out << format_double(v.s.real()) << ',' << format_double(v.s.imag()) << ',' << i << ','
                << format_double(v.value(i).real()) << ',' << format_double(v.value(i).imag()) << ','
                << format_double(v.error) << '\n';
    return out.str();
}

std::string fe_csv(const std::vector<FEResidual>& rows) {
    std::ostringstream out;
    out << "s_re,s_im,residual_plus,residual_minus,selected\n";
    for (const auto& r : rows)
        out << format_double(r.s.real()) << ',' << format_double(r.s.imag()) << ',' << format_double(r.plus) << ','
            << format_double(r.minus) << ',' << r.selected << '\n';
    return out.str();
}

std::string expsum_csv(const ExpSumScan& s) {
    std::ostringstream out;
    out << "theta,X,component,sum_re,sum_im,ratio\n";
    for (const auto& c : s.cells)
        for (Eigen::Index i = 0; i < c.sum.size(); ++i)
            out << c.theta.to_string() << ',' << c.cutoff << ',' << i << ',' << format_double(c.sum(i).real()) << ','
                << format_double(c.sum(i).imag()) << ',' << format_double(c.ratio) << '\n';
    return out.str();
}

std::string growth_csv(const GrowthReport& r) {
    std::ostringstream out;
    out << "n,norm,bound\n";
    for (const auto& [n, v] : r.samples)
        out << n << ',' << format_double(v) << ',' << format_double(std::pow(static_cast<double>(n), r.target)) << '\n';
    return out.str();
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
}

}  // namespace vvaf
