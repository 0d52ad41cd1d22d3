#pragma once

#include <ostream>
#include <string>

#include "roughmild/mild.hpp"

namespace roughmild {

// one metric per line, key = value
void write_report_text(const SolverReport& rep, std::ostream& out);

// machine-readable document with fields iterations, increments[], ratios[],
// residual, horizon, beta, halvings, converged
std::string report_json(const SolverReport& rep);
void write_report_json(const SolverReport& rep, const std::string& file);

}  // namespace roughmild
