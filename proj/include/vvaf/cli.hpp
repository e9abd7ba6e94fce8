#pragma once

#include "vvaf/expsum.hpp"
#include "vvaf/moebius.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace vvaf::cli {

// Knobs for one invocation. Text form is `key = value` per line, `#` starts a comment,
// lists are comma separated.
struct RunConfig {
    std::string builtin;              // built-in name; repr names for `repr`, form names otherwise
    std::string input;                // JSON file: representation for `repr`, form bundle otherwise
    std::vector<std::string> params;  // key=value pairs for parametrized built-ins
    std::int64_t N = 100;             // truncation: coefficients 0..N are exact
    std::uint64_t seed = 20240917;
    int word_samples = 400;
    int max_word_length = 30;
    int matrix_samples = 400;
    std::int64_t max_entry = 1000000;
    double relation_tol = 1e-10;      // per-entry deviation for s² = I and (st)³ = I
    double transform_tol = 1e-8;      // transformation residual, added to the tail estimate
    double fe_tol = 1e-6;             // functional-equation residual
    int points = 10;                  // sample points for transform-check
    double split = 1.0;               // Y₀ for split-Mellin
    double quad_panel = 0.5;
    int quad_max_panels = 4000;
    std::string alpha = "auto";       // "auto" fits α from ρ, otherwise a number
    std::string target = "auto";      // auto | holomorphic | cusp
    std::string method = "split-mellin";  // split-mellin | truncated-sum | dirichlet
    std::vector<cplx> s;              // lfunc eval points; empty: k/2+1, k/2+2, k/2+3i
    std::vector<cplx> s_grid;         // fe-scan points; empty: k/2+0.5+0.25j·i, j = 0..9
    std::vector<Theta> thetas = default_thetas();
    std::vector<std::int64_t> cutoffs = default_cutoffs();
    std::string out_dir;              // empty: artifact goes to stdout
    std::string format = "json";      // json | csv

    bool operator==(const RunConfig&) const = default;

    // Throws std::invalid_argument on an unknown key or malformed value.
    void set(const std::string& key, const std::string& value);
    std::string to_text() const;
    static RunConfig from_text(const std::string& text);
    static RunConfig load(const std::string& path);
    static std::vector<std::string> keys();
};

// Exit codes: 0 success, 1 a FAIL verdict, 2 usage or input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vvaf::cli
