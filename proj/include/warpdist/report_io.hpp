#pragma once

#include <string>

#include "warpdist/analysis.hpp"

namespace warpdist {

/// Stable serialization of a convergence report. Identical reports produce
/// byte-identical output.
std::string report_to_json(const ConvergenceReport& report);
std::string report_to_csv(const ConvergenceReport& report);

/// Writes a whole file, throwing resource_error on failure.
void write_text_file(const std::string& path, const std::string& contents);

/// %.12g formatting used by all emitters.
std::string format_number(double v);

}  // namespace warpdist
