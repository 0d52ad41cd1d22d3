#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "roughmild/mild.hpp"
#include "roughmild/rng.hpp"

namespace roughmild {

// random state with coordinates damped like lambda^{-gamma/2}; gamma mixes
// diffuse and spectrally concentrated draws
Vec sample_decaying_state(const SpectralOperator& A, double gamma, CounterRng& rng);

struct AuditItem {
  std::string name;
  double worst_ratio = 0.0;  // measured / declared; must stay <= 1
  double fitted_constant = 0.0;
  bool pass = false;
  std::string witness;  // description of the worst sample
};

struct AuditReport {
  bool pass = false;
  std::vector<AuditItem> items;
};

// Samples random states and verifies every declared growth and Lipschitz
// bound of the problem: the local Lipschitz and growth bounds of Q against
// K1/K2, the two Lipschitz bounds of the smoothed noise coefficient, the
// operator-norm difference bound, and the smoothed-value growth bound.
AuditReport condition_audit(const ProblemSpec& spec, int samples, std::uint64_t seed);

std::string format_audit(const AuditReport& report);

}  // namespace roughmild
