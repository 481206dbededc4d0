#pragma once

// JSON and CSV encodings of functions, results and reports.

#include <string>
#include <string_view>

#include <json.hpp>

#include "openmult/function.hpp"
#include "openmult/graph_factorizer.hpp"
#include "openmult/interval_factorizer.hpp"
#include "openmult/inversion_scheme.hpp"
#include "openmult/openness_probe.hpp"
#include "openmult/pointwise_factorizer.hpp"

namespace openmult::io {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

/// "%.17g": round-trips every double.
std::string exact_decimal(double x);

json to_json(Complex z);
Complex complex_from_json(const json& j);

json to_json(const IntervalDomain& d);
json to_json(const GridFunction& f);
json to_json(const FiniteSpaceFunction& f);
json to_json(const GraphDomain& d);
json to_json(const GraphFunction& f);

/// Domain type taken from "domain.type" ("interval", "finite", "graph").
std::string domain_type(const json& j);
GridFunction grid_from_json(const json& j);
FiniteSpaceFunction finite_from_json(const json& j);
GraphFunction graph_from_json(const json& j);

/// Rows "t,re,im" with an optional header; t must be uniformly spaced.
GridFunction grid_from_csv(std::string_view text);

json to_json(const IntervalCover& c);
json to_json(const FactorizationResult& r);
json to_json(const GraphFactorization& r);

json to_json(const DiagonalAlgebraElement& a);
DiagonalAlgebraElement diagonal_from_json(const json& j);
DiagonalModel diagonal_model_from_json(const json& j);

json to_json(const SchemeParams& p);
json to_json(const SchemeStep& s, const ClaimCheck& c);
/// One JSON object per line, one line per iteration.
std::string trace_to_json_lines(const SchemeTrace& trace, const ClaimReport& claims);
std::string trace_to_csv(const SchemeTrace& trace, const ClaimReport& claims);

json to_json(const ProbeReport& r);
std::string probe_curve_csv(const ProbeReport& r);

/// CSV t,d1_re,d1_im,d2_re,d2_im.
std::string result_csv(const FactorizationResult& r);

}  // namespace openmult::io
