#pragma once

#include "bz/curve_complex.hpp"
#include "bz/degeneration.hpp"
#include "bz/measure.hpp"
#include "bz/nc_model.hpp"
#include "bz/one_forms.hpp"

#include "json.hpp"

#include <string>

namespace bz::io {

using json = nlohmann::json;

/// Reads and parses a JSON file; throws InvalidInput on I/O or syntax errors.
json read_json_file(const std::string& path);
/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

Rational rational_from_json(const json& j, const std::string& what);

json graph_to_json(const MetricGraph& g);
MetricGraph graph_from_json(const json& j);

// A model file is a graph file whose vertices carry "multiplicity" (edges may
// omit "length"; if present it must match the model).
bool is_model_json(const json& j);
json model_to_json(const NCModel& m);
NCModel model_from_json(const json& j);

json blowup_to_json(const BlowupOp& op);
BlowupOp blowup_from_json(const json& j);

json measure_to_json(const MetricGraph& g, const Measure& mu);

json curve_complex_to_json(const CurveComplex& c);
json cc_measure_to_json(const CurveComplex& c, const CCMeasure& mu);
json fiber_measure_to_json(const MetricGraph& g, const CurveComplex& c, const FiberMeasure& mu);

json chart_to_json(const degen::NodalChart& chart);
degen::NodalChart chart_from_json(const json& j);

}  // namespace bz::io
