#pragma once

#include <string>

#include "signsel/ccdf.hpp"
#include "signsel/experiment.hpp"

namespace signsel {

// Curve points as CSV text: header "metric_db,ccdf", then one "%.17g,%.17g"
// row per point. For the SE metric the first column holds ln ζ.
std::string ccdf_csv(const CcdfCurve& curve);

// Writes ccdf_csv to `path` and summary_json to `<path>.meta.json`.
// Throws IoError naming the path on failure.
void emit_results(const RunResult& result, const std::string& path);

// Parses CSV written by emit_results; sample_count is left 0. Throws IoError.
CcdfCurve read_ccdf_csv(const std::string& path);

}  // namespace signsel
