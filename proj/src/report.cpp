#include "roughmild/report.hpp"

#include <fstream>

#include <json.hpp>

namespace roughmild {

void write_report_text(const SolverReport& rep, std::ostream& out) {
  out << "converged = " << (rep.converged ? "true" : "false") << "\n";
  out << "iterations = " << rep.iterations << "\n";
  out << "residual = " << rep.residual << "\n";
  out << "horizon = " << rep.horizon << "\n";
  out << "beta = " << rep.beta << "\n";
  out << "halvings = " << rep.halvings << "\n";
  for (size_t i = 0; i < rep.increments.size(); ++i)
    out << "increment." << i << " = " << rep.increments[i] << "\n";
  for (size_t i = 0; i < rep.ratios.size(); ++i)
    out << "ratio." << i << " = " << rep.ratios[i] << "\n";
  if (!rep.divergence_reason.empty()) out << "divergence_reason = " << rep.divergence_reason << "\n";
}

std::string report_json(const SolverReport& rep) {
  nlohmann::ordered_json j;
  j["converged"] = rep.converged;
  j["iterations"] = rep.iterations;
  j["increments"] = rep.increments;
  j["ratios"] = rep.ratios;
  j["residual"] = rep.residual;
  j["horizon"] = rep.horizon;
  j["beta"] = rep.beta;
  j["halvings"] = rep.halvings;
  if (!rep.divergence_reason.empty()) j["divergence_reason"] = rep.divergence_reason;
  return j.dump(2) + "\n";
}

void write_report_json(const SolverReport& rep, const std::string& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("write_report_json: cannot open " + file);
  out << report_json(rep);
}

}  // namespace roughmild
