#pragma once

#include "vvaf/expsum.hpp"
#include "vvaf/form.hpp"
#include "vvaf/growth.hpp"
#include "vvaf/lfunc.hpp"
#include "vvaf/repr.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace vvaf {

using json = nlohmann::json;

json to_json(const SL2Z& g);
SL2Z sl2z_from_json(const json& j);
json to_json(const Word& w);
Word word_from_json(const json& j);

json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);
json to_json(const Representation& rho);
Representation representation_from_json(const json& j);

json to_json(const FracQSeries& s);
FracQSeries series_from_json(const json& j);
// Bundle: weight, representation, components as lists of log terms, flags, truncation order.
json to_json(const VVAF& x);
VVAF vvaf_from_json(const json& j);

json to_json(const ValidationReport& r);
json to_json(const JordanData& d);
json to_json(const GrowthFit& f, bool with_samples = false);
json to_json(const GrowthReport& r);
json to_json(const MeanSquareReport& r);
json to_json(const SupnormReport& r);
json to_json(const ConverseReport& r);
json to_json(const LValue& v);
json to_json(const FEResidual& r);
json to_json(const ExpSumScan& s);

std::string format_double(double v);

// component,log_power,exponent_num,exponent_den,re,im
std::string series_csv(const VVAF& x);
// s_re,s_im,component,value_re,value_im,err
std::string lvalues_csv(const std::vector<LValue>& values);
// s_re,s_im,residual_plus,residual_minus,selected
std::string fe_csv(const std::vector<FEResidual>& rows);
// theta,X,component,sum_re,sum_im,ratio
std::string expsum_csv(const ExpSumScan& s);
// n,norm,bound
std::string growth_csv(const GrowthReport& r);

json read_json_file(const std::string& path);

}  // namespace vvaf
