#include "vvaf/cli.hpp"

#include "vvaf/io.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vvaf::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    if (trim(s).empty()) return out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    return out;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F f) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + f(v[i]);
    return out;
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos == v.size()) return x;
    } catch (const std::logic_error&) {
    }
    throw std::invalid_argument(key + ": expected an integer, got '" + v + "'");
}

double parse_real(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos == v.size()) return x;
    } catch (const std::logic_error&) {
    }
    throw std::invalid_argument(key + ": expected a number, got '" + v + "'");
}

std::string format_cplx(cplx z) {
    const std::string im = format_double(z.imag());
    return format_double(z.real()) + (im[0] == '-' ? "" : "+") + im + "i";
}

std::string format_real(double v) { return format_double(v); }

struct Key {
    std::string name;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, const std::string&)> set;
};

const std::vector<Key>& key_table() {
    static const std::vector<Key> table = [] {
        std::vector<Key> t;
        auto str = [&](const char* name, std::string RunConfig::*f) {
            t.push_back({name, [f](const RunConfig& c) { return c.*f; },
                         [f](RunConfig& c, const std::string& v) { c.*f = v; }});
        };
        auto choice = [&](const char* name, std::string RunConfig::*f, std::vector<std::string> allowed) {
            t.push_back({name, [f](const RunConfig& c) { return c.*f; },
                         [f, name = std::string(name), allowed](RunConfig& c, const std::string& v) {
                             if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
                                 throw std::invalid_argument(name + ": unsupported value '" + v + "'");
                             c.*f = v;
                         }});
        };
        auto integer = [&](const char* name, auto RunConfig::*f, std::int64_t lo) {
            t.push_back({name, [f](const RunConfig& c) { return std::to_string(c.*f); },
                         [f, name = std::string(name), lo](RunConfig& c, const std::string& v) {
                             const std::int64_t x = parse_int(name, v);
                             if (x < lo) throw std::invalid_argument(name + ": must be at least " + std::to_string(lo));
                             c.*f = static_cast<std::remove_reference_t<decltype(c.*f)>>(x);
                         }});
        };
        auto real = [&](const char* name, double RunConfig::*f) {
            t.push_back({name, [f](const RunConfig& c) { return format_real(c.*f); },
                         [f, name = std::string(name)](RunConfig& c, const std::string& v) {
                             const double x = parse_real(name, v);
                             if (!(x > 0.0)) throw std::invalid_argument(name + ": must be positive");
                             c.*f = x;
                         }});
        };
        auto cplx_list = [&](const char* name, std::vector<cplx> RunConfig::*f) {
            t.push_back({name, [f](const RunConfig& c) { return join(c.*f, format_cplx); },
                         [f](RunConfig& c, const std::string& v) {
                             (c.*f).clear();
                             for (const auto& item : split_list(v)) (c.*f).push_back(parse_complex(item));
                         }});
        };
        str("builtin", &RunConfig::builtin);
        str("input", &RunConfig::input);
        t.push_back({"params", [](const RunConfig& c) { return join(c.params, [](const std::string& s) { return s; }); },
                     [](RunConfig& c, const std::string& v) {
                         c.params = split_list(v);
                         parse_params(c.params);
                     }});
        integer("N", &RunConfig::N, 1);
        t.push_back({"seed", [](const RunConfig& c) { return std::to_string(c.seed); },
                     [](RunConfig& c, const std::string& v) {
                         try {
                             std::size_t pos = 0;
                             const unsigned long long x = std::stoull(v, &pos);
                             if (pos == v.size() && v.find('-') == std::string::npos) {
                                 c.seed = x;
                                 return;
                             }
                         } catch (const std::logic_error&) {
                         }
                         throw std::invalid_argument("seed: expected a non-negative integer, got '" + v + "'");
                     }});
        integer("word_samples", &RunConfig::word_samples, 0);
        integer("max_word_length", &RunConfig::max_word_length, 1);
        integer("matrix_samples", &RunConfig::matrix_samples, 0);
        integer("max_entry", &RunConfig::max_entry, 2);
        real("relation_tol", &RunConfig::relation_tol);
        real("transform_tol", &RunConfig::transform_tol);
        real("fe_tol", &RunConfig::fe_tol);
        integer("points", &RunConfig::points, 2);
        real("split", &RunConfig::split);
        real("quad_panel", &RunConfig::quad_panel);
        integer("quad_max_panels", &RunConfig::quad_max_panels, 1);
        t.push_back({"alpha", [](const RunConfig& c) { return c.alpha; },
                     [](RunConfig& c, const std::string& v) {
                         if (v != "auto") parse_real("alpha", v);
                         c.alpha = v;
                     }});
        choice("target", &RunConfig::target, {"auto", "holomorphic", "cusp"});
        choice("method", &RunConfig::method, {"split-mellin", "truncated-sum", "dirichlet"});
        cplx_list("s", &RunConfig::s);
        cplx_list("s_grid", &RunConfig::s_grid);
        t.push_back({"thetas", [](const RunConfig& c) { return join(c.thetas, [](const Theta& th) { return th.to_string(); }); },
                     [](RunConfig& c, const std::string& v) {
                         c.thetas.clear();
                         for (const auto& item : split_list(v)) c.thetas.push_back(Theta::parse(item));
                     }});
        t.push_back({"cutoffs",
                     [](const RunConfig& c) { return join(c.cutoffs, [](std::int64_t x) { return std::to_string(x); }); },
                     [](RunConfig& c, const std::string& v) {
                         c.cutoffs.clear();
                         for (const auto& item : split_list(v)) {
                             const std::int64_t x = parse_int("cutoffs", item);
                             if (x < 2) throw std::invalid_argument("cutoffs: each cutoff must be at least 2");
                             c.cutoffs.push_back(x);
                         }
                     }});
        str("out_dir", &RunConfig::out_dir);
        choice("format", &RunConfig::format, {"json", "csv"});
        return t;
    }();
    return table;
}

const Key& find_key(const std::string& name) {
    for (const auto& k : key_table())
        if (k.name == name) return k;
    throw std::invalid_argument("unknown config key: " + name);
}

json config_json(const RunConfig& cfg) {
    json j = json::object();
    for (const auto& k : key_table()) j[k.name] = k.get(cfg);
    return j;
}

SamplerConfig sampler(const RunConfig& cfg) {
    return {cfg.seed, cfg.word_samples, cfg.max_word_length, cfg.matrix_samples, cfg.max_entry};
}

struct Artifact {
    std::string name;
    json report;
    std::string csv;
    bool fail = false;
};

int emit(const RunConfig& cfg, Artifact a, std::ostream& out, std::ostream& err) {
    a.report["config"] = config_json(cfg);
    a.report["seed"] = cfg.seed;
    const std::string text = cfg.format == "csv" ? a.csv : a.report.dump(2) + "\n";
    if (cfg.out_dir.empty()) {
        out << text;
    } else {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);
        const fs::path path = fs::path(cfg.out_dir) / (a.name + "." + cfg.format);
        std::ofstream(path, std::ios::binary) << text;
        std::ofstream(fs::path(cfg.out_dir) / (a.name + ".config"), std::ios::binary) << cfg.to_text();
        out << "wrote " << path.string() << "\n";
    }
    if (a.fail) err << a.name << ": FAIL\n";
    return a.fail ? 1 : 0;
}

Representation load_rep(const RunConfig& cfg, std::vector<std::string>& warnings) {
    if (!cfg.input.empty()) return representation_from_json(read_json_file(cfg.input));
    if (cfg.builtin.empty()) throw std::invalid_argument("one of --builtin or --input is required");
    return builtin(cfg.builtin, parse_params(cfg.params), &warnings);
}

VVAF load_form(const RunConfig& cfg, std::int64_t min_terms = 0) {
    if (!cfg.input.empty()) return vvaf_from_json(read_json_file(cfg.input));
    if (cfg.builtin.empty()) throw std::invalid_argument("one of --builtin or --input is required");
    const std::int64_t n = std::max(cfg.N, min_terms);
    if (n > 1000000) throw std::invalid_argument("truncation order above 10^6");
    return builtin_vvaf(cfg.builtin, static_cast<int>(n));
}

struct AlphaChoice {
    double value;
    std::string source;
};

AlphaChoice resolve_alpha(const RunConfig& cfg, const Representation& rho) {
    if (cfg.alpha != "auto") return {parse_real("alpha", cfg.alpha), "config"};
    return {effective_alpha(rho, sampler(cfg)).alpha, "fitted"};
}

GrowthTarget parse_target(const std::string& t) {
    if (t == "holomorphic") return GrowthTarget::Holomorphic;
    if (t == "cusp") return GrowthTarget::Cusp;
    return GrowthTarget::Auto;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

Artifact repr_check(const RunConfig& cfg) {
    std::vector<std::string> warnings;
    const Representation rho = load_rep(cfg, warnings);
    const ValidationReport v = validate(rho, cfg.relation_tol);
    const long h = cusp_width(rho.group(), Cusp::infinity());
    const JordanData jd = jordan_form(rho.t_power(h));
    json eig = json::array();
    std::ostringstream csv;
    csv << "lambda_re,lambda_im,block_size,mu\n";
    for (const auto& b : jd.blocks) {
        json m = nullptr;
        std::string mu_text;
        if (std::abs(std::abs(b.lambda) - 1.0) <= 1e-10) {
            const MuValue mv = mu(b.lambda);
            m = mv.value;
            mu_text = format_double(mv.value);
        }
        eig.push_back({{"lambda", cplx_json(b.lambda)}, {"block_size", b.size}, {"mu", m}});
        csv << format_double(b.lambda.real()) << ',' << format_double(b.lambda.imag()) << ',' << b.size << ','
            << mu_text << '\n';
    }
    json admissible = nullptr;
    if (jd.reliable) admissible = is_admissible(rho);
    json report = {{"command", "repr check"},
                   {"dim", rho.dim()},
                   {"group", to_json(rho)["group"]},
                   {"width", h},
                   {"validation", to_json(v)},
                   {"t_jordan", to_json(jd)},
                   {"eigenvalues", eig},
                   {"admissible", admissible},
                   {"polynomial_growth", is_polynomial_growth(rho)},
                   {"unitary", is_unitary(rho)},
                   {"warnings", warnings},
                   {"verdict", v.pass ? "PASS" : "FAIL"}};
    return {"repr-check", report, csv.str(), !v.pass};
}

Artifact repr_growth(const RunConfig& cfg) {
    std::vector<std::string> warnings;
    const Representation rho = load_rep(cfg, warnings);
    const GrowthFit fit = growth_exponent(rho, sampler(cfg));
    json report = {{"command", "repr growth"}, {"fit", to_json(fit, true)},
                   {"classification", to_string(fit.classification)}, {"warnings", warnings}};
    std::ostringstream csv;
    csv << "group_norm,rep_norm,sharp_ratio\n";
    for (const auto& d : fit.data)
        csv << format_double(d.group_norm) << ',' << format_double(d.rep_norm) << ','
            << (std::isnan(d.sharp_ratio) ? std::string() : format_double(d.sharp_ratio)) << '\n';
    return {"repr-growth", report, csv.str(), false};
}

json form_summary(const VVAF& x) {
    json lead = json::array();
    for (const auto& e : x.leading_exponents())
        lead.push_back(e ? json(std::to_string(e->numerator()) + "/" + std::to_string(e->denominator())) : json(nullptr));
    const auto order = x.truncation_order();
    return {{"weight", x.weight()},
            {"dim", x.dim()},
            {"width", x.width()},
            {"holomorphic", x.holomorphic()},
            {"cusp_form", x.cusp_form()},
            {"logarithmic", x.logarithmic()},
            {"admissible", x.admissible()},
            {"leading_exponents", lead},
            {"truncation_order",
             order ? json(std::to_string(order->numerator()) + "/" + std::to_string(order->denominator())) : json(nullptr)}};
}

Artifact vvaf_coeffs(const RunConfig& cfg) {
    const VVAF x = load_form(cfg);
    const FourierCoefficients fc = x.coefficients(cfg.N);
    json rows = json::array();
    for (std::size_t i = 0; i < fc.c.size(); ++i) {
        json v = json::array();
        for (Eigen::Index k = 0; k < fc.c[i].size(); ++k) v.push_back(cplx_json(fc.c[i](k)));
        rows.push_back({{"n", fc.n_min + static_cast<std::int64_t>(i)}, {"c", v}});
    }
    json report = {{"command", "vvaf coeffs"}, {"form", form_summary(x)}, {"n_min", fc.n_min}, {"coefficients", rows}};
    if (x.admissible()) report["mu"] = x.mu_offsets();
    if (x.logarithmic()) {
        json slots = json::array();
        for (const auto& s : fc.slots) {
            json c = json::array();
            for (const auto& v : s.c) c.push_back(cplx_json(v));
            slots.push_back({{"component", s.component}, {"log_power", s.j}, {"c", c}});
        }
        report["slots"] = slots;
    }
    return {"vvaf-coeffs", report, series_csv(x), false};
}

Artifact vvaf_transform_check(const RunConfig& cfg) {
    const VVAF x = load_form(cfg);
    const long h = x.width();
    std::vector<cplx> taus;
    for (int i = 0; i < cfg.points; ++i) {
        const double u = static_cast<double>(i) / (cfg.points - 1);
        const double w = static_cast<double>((7 * i) % cfg.points) / (cfg.points - 1);
        taus.emplace_back(-0.5 + u, 0.8 + 1.2 * w);
    }
    const std::vector<std::pair<std::string, SL2Z>> gammas = {
        {"s", SL2Z::S()},
        {"t^" + std::to_string(h), SL2Z::T(h)},
        {"t s t^-1 s", SL2Z::T() * SL2Z::S() * SL2Z::T(-1) * SL2Z::S()}};
    json checks = json::array();
    std::ostringstream csv;
    csv << "gamma,residual,max_tail,pass\n";
    bool fail = false;
    for (const auto& [name, g] : gammas) {
        if (!x.rep().group().contains(g)) continue;
        const TransformCheck tc = check_transformation(x, g, taus);
        const bool pass = tc.residual < cfg.transform_tol + tc.max_tail;
        fail = fail || !pass;
        checks.push_back({{"gamma", name}, {"matrix", to_json(g)}, {"residual", tc.residual},
                          {"max_tail", tc.max_tail}, {"points", tc.points}, {"pass", pass}});
        csv << name << ',' << format_double(tc.residual) << ',' << format_double(tc.max_tail) << ','
            << (pass ? "PASS" : "FAIL") << '\n';
    }
    json report = {{"command", "vvaf transform-check"}, {"form", form_summary(x)}, {"checks", checks},
                   {"verdict", fail ? "FAIL" : "PASS"}};
    return {"vvaf-transform-check", report, csv.str(), fail};
}

Artifact vvaf_growth(const RunConfig& cfg) {
    const VVAF x = load_form(cfg);
    const AlphaChoice a = resolve_alpha(cfg, x.rep());
    const GrowthReport g = coefficient_growth_report(x, cfg.N, a.value, parse_target(cfg.target));
    const VanishingDecision van = vanishing_check(x.weight(), a.value, x);
    json report = {{"command", "vvaf growth"}, {"form", form_summary(x)}, {"alpha_source", a.source},
                   {"growth", to_json(g)}, {"vanishing", to_string(van)}};
    bool fail = g.verdict == Verdict::Fail || van == VanishingDecision::Inconsistent;
    if (x.cusp_form() && !x.is_zero()) {
        const SupnormReport sn = supnorm_scan(x, x.weight() / 2.0 + g.alpha);
        report["supnorm"] = to_json(sn);
        fail = fail || sn.verdict == Verdict::Fail;
    }
    report["verdict"] = fail ? "FAIL" : to_string(g.verdict);
    return {"vvaf-growth", report, growth_csv(g), fail};
}

Artifact vvaf_meansq(const RunConfig& cfg) {
    const VVAF x = load_form(cfg);
    const AlphaChoice a = resolve_alpha(cfg, x.rep());
    const MeanSquareReport m = mean_square(x, cfg.N, a.value);
    std::ostringstream csv;
    csv << "M,partial_sum\n";
    for (std::size_t i = 0; i < m.partial_sums.size(); ++i) csv << i + 1 << ',' << format_double(m.partial_sums[i]) << '\n';
    json report = {{"command", "vvaf meansq"}, {"form", form_summary(x)}, {"alpha_source", a.source},
                   {"alpha", a.value}, {"meansq", to_json(m)}, {"verdict", to_string(m.verdict)}};
    return {"vvaf-meansq", report, csv.str(), m.verdict == Verdict::Fail};
}

Artifact lfunc_eval(const RunConfig& cfg) {
    const VVAF x = load_form(cfg);
    std::vector<cplx> pts = cfg.s;
    const double k2 = x.weight() / 2.0;
    if (pts.empty()) pts = {k2 + 1.0, k2 + 2.0, cplx(k2, 3.0)};
    json values = json::array();
    std::vector<LValue> out;
    json report = {{"command", "lfunc eval"}, {"form", form_summary(x)}, {"method", cfg.method}};
    SumConfig sc;
    if (cfg.method != "split-mellin") {
        const AlphaChoice a = resolve_alpha(cfg, x.rep());
        sc.alpha = a.value;
        report["alpha_source"] = a.source;
        report["alpha"] = a.value;
    }
    for (cplx s : pts) {
        LValue v = cfg.method == "split-mellin"   ? completed_L(x, s, cfg.split, {cfg.quad_panel, cfg.quad_max_panels})
                   : cfg.method == "truncated-sum" ? completed_L_sum(x, s, sc)
                                                   : dirichlet_L(x, s, sc);
        values.push_back(to_json(v));
        out.push_back(std::move(v));
    }
    report["values"] = values;
    return {"lfunc-eval", report, lvalues_csv(out), false};
}

Artifact lfunc_fe_scan(const RunConfig& cfg) {
    const VVAF x = load_form(cfg);
    std::vector<cplx> pts = cfg.s_grid;
    if (pts.empty())
        for (int j = 0; j < 10; ++j) pts.emplace_back(x.weight() / 2.0 + 0.5, 0.25 * j);
    std::vector<FEResidual> rows;
    json res = json::array();
    for (cplx s : pts) {
        rows.push_back(functional_equation_residual(x, s, cfg.split, cfg.fe_tol));
        res.push_back(to_json(rows.back()));
    }
    const int sel = rows.front().selected;
    bool uniform = sel != 0;
    for (const auto& r : rows) uniform = uniform && r.selected == sel;
    json report = {{"command", "lfunc fe-scan"},
                   {"form", form_summary(x)},
                   {"residuals", res},
                   {"selected_sign", uniform ? json(sel > 0 ? "+" : "-") : json(nullptr)},
                   {"verdict", uniform ? "PASS" : "FAIL"}};
    return {"lfunc-fe-scan", report, fe_csv(rows), !uniform};
}

Artifact expsum_scan(const RunConfig& cfg) {
    if (cfg.cutoffs.empty() || cfg.thetas.empty()) throw std::invalid_argument("expsum scan needs thetas and cutoffs");
    const std::int64_t need = *std::max_element(cfg.cutoffs.begin(), cfg.cutoffs.end());
    const VVAF x = load_form(cfg, need);
    const AlphaChoice a = resolve_alpha(cfg, x.rep());
    const ExpSumScan s = bound_scan(x, cfg.thetas, cfg.cutoffs, a.value);
    json report = {{"command", "expsum scan"}, {"form", form_summary(x)}, {"alpha_source", a.source},
                   {"alpha", a.value}, {"scan", to_json(s)}, {"verdict", to_string(s.verdict)}};
    return {"expsum-scan", report, expsum_csv(s), s.verdict == Verdict::Fail};
}

struct Flag {
    std::string flag;
    std::string key;
    std::string help;
    bool multi = false;
};

const std::vector<Flag>& flags() {
    static const std::vector<Flag> f = {
        {"--builtin", "builtin", "built-in representation or form"},
        {"--input", "input", "JSON input file"},
        {"--param", "params", "key=value parameter for a built-in", true},
        {"-N,--terms", "N", "truncation order"},
        {"--seed", "seed", "sampler seed"},
        {"--out-dir", "out_dir", "directory for artifacts (default: stdout)"},
        {"--format", "format", "json or csv"},
        {"--alpha", "alpha", "growth exponent of the representation, or auto"},
        {"--target", "target", "auto, holomorphic or cusp"},
        {"--method", "method", "split-mellin, truncated-sum or dirichlet"},
        {"--s", "s", "evaluation point", true},
        {"--s-grid", "s_grid", "functional-equation scan point", true},
        {"--theta", "thetas", "theta as p/q or decimal", true},
        {"--cutoff", "cutoffs", "exponential-sum cutoff X", true},
        {"--split", "split", "split point Y0"},
        {"--points", "points", "number of transform-check points"},
        {"--relation-tol", "relation_tol", "relation tolerance"},
        {"--transform-tol", "transform_tol", "transformation tolerance"},
        {"--fe-tol", "fe_tol", "functional-equation tolerance"},
        {"--word-samples", "word_samples", "random words in the growth fit"},
        {"--max-word-length", "max_word_length", "maximum random word length"},
        {"--matrix-samples", "matrix_samples", "random matrices in the growth fit"},
        {"--max-entry", "max_entry", "maximum entry of random matrices"},
        {"--quad-panel", "quad_panel", "quadrature panel width"},
        {"--quad-max-panels", "quad_max_panels", "quadrature panel limit"},
    };
    return f;
}

struct Leaf {
    std::string name;
    std::function<Artifact(const RunConfig&)> action;
    CLI::App* app = nullptr;
    std::map<std::string, std::string> single;
    std::map<std::string, std::vector<std::string>> multi;
    std::map<std::string, CLI::Option*> opts;
    std::string config_path;
    CLI::Option* config_opt = nullptr;
    bool dump = false;
};

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) { find_key(key).set(*this, trim(value)); }

std::string RunConfig::to_text() const {
    std::string out;
    for (const auto& k : key_table()) out += k.name + " = " + k.get(*this) + "\n";
    return out;
}

RunConfig RunConfig::from_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

std::vector<std::string> RunConfig::keys() {
    std::vector<std::string> out;
    for (const auto& k : key_table()) out.push_back(k.name);
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Vector-valued automorphic forms for PSL2(Z): representations, expansions, growth, L-functions, "
                 "exponential sums.",
                 "vvaf"};
    app.require_subcommand(1);
    std::vector<std::unique_ptr<Leaf>> leaves;
    auto group = [&](const std::string& name, const std::string& help) {
        auto* g = app.add_subcommand(name, help);
        g->require_subcommand(1);
        return g;
    };
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                    std::function<Artifact(const RunConfig&)> action) {
        auto l = std::make_unique<Leaf>();
        l->name = name;
        l->action = std::move(action);
        l->app = parent->add_subcommand(name, help);
        for (const auto& f : flags()) {
            if (f.multi)
                l->opts[f.key] = l->app->add_option(f.flag, l->multi[f.key], f.help);
            else
                l->opts[f.key] = l->app->add_option(f.flag, l->single[f.key], f.help);
        }
        l->config_opt = l->app->add_option("--config", l->config_path, "key = value config file");
        l->app->add_flag("--dump-config", l->dump, "print the effective config and exit");
        leaves.push_back(std::move(l));
    };
    auto* repr = group("repr", "representations");
    leaf(repr, "check", "validate relations and report the T-spectrum", repr_check);
    leaf(repr, "growth", "empirical growth exponent", repr_growth);
    auto* form = group("vvaf", "vector-valued forms");
    leaf(form, "coeffs", "Fourier coefficients", vvaf_coeffs);
    leaf(form, "transform-check", "transformation law at sample points", vvaf_transform_check);
    leaf(form, "growth", "coefficient growth, sup-norm and vanishing checks", vvaf_growth);
    leaf(form, "meansq", "mean-square coefficient bound", vvaf_meansq);
    auto* lf = group("lfunc", "L-functions");
    leaf(lf, "eval", "completed L-values", lfunc_eval);
    leaf(lf, "fe-scan", "functional-equation residuals for both signs", lfunc_fe_scan);
    auto* ex = group("expsum", "exponential sums");
    leaf(ex, "scan", "bound scan over theta and cutoff grids", expsum_scan);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    for (const auto& l : leaves) {
        if (!l->app->parsed()) continue;
        try {
            RunConfig cfg;
            if (l->config_opt->count()) cfg = RunConfig::load(l->config_path);
            for (const auto& f : flags()) {
                if (!l->opts[f.key]->count()) continue;
                if (f.multi)
                    cfg.set(f.key, join(l->multi[f.key], [](const std::string& s) { return s; }));
                else
                    cfg.set(f.key, l->single[f.key]);
            }
            if (l->dump) {
                out << cfg.to_text();
                return 0;
            }
            return emit(cfg, l->action(cfg), out, err);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return 2;
}

}  // namespace vvaf::cli
