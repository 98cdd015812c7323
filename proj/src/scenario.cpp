#include "pcvi/scenario.hpp"

#include <cmath>
#include <limits>

namespace pcvi {

void DesignQuery::validate() const {
  if (target < 1) throw ContractViolation("design target must be a positive integer");
  if (ell_max < 1 || n_max < 0 || n_min < 0 || n_min > n_max)
    throw ContractViolation("design bounds must satisfy ell_max >= 1, 0 <= n_min <= n_max");
  if (ell_max > 10000 || n_max > 10000)
    throw ContractViolation("design bounds above 1e4 are not supported");
}

std::vector<DesignSolution> solve_design(const DesignQuery& query) {
  query.validate();
  std::vector<DesignSolution> solutions;
  for (int ell = 1; ell <= query.ell_max; ++ell) {
    for (int n = query.n_min; n <= query.n_max; ++n) {
      const long multiplier = 2L * ell * (2L * n + 1L);
      if (multiplier == query.target) solutions.push_back({ell, n});
    }
  }
  return solutions;
}

double latitude_factor(double phi) {
  // cos(phi) evaluated as sin(pi/2 - phi): exact zero at the representable
  // pi/2 and exact one at phi = 0.
  return std::sin(kPi / 2.0 - phi);
}

ScenarioResult earth_scenario(int ell, int n_inverters, double phi, double frame_rate) {
  if (ell < 1) throw ContractViolation("scenario charge must be >= 1");
  if (n_inverters < 0) throw ContractViolation("scenario element count must be >= 0");

  ScenarioResult res;
  res.latitude_factor = latitude_factor(phi);
  res.delta_omega = 2.0 * ell * (2 * n_inverters + 1) * frame_rate * res.latitude_factor;
  res.theta_dot = res.delta_omega / (2.0 * ell);
  res.spot_count = 2 * ell;
  res.alternation_count = 2 * n_inverters + 1;
  if (res.theta_dot == 0.0) {
    res.transit_period = std::numeric_limits<double>::infinity();
  } else {
    res.transit_period = (kPi / ell) / std::abs(res.theta_dot);
  }
  return res;
}

double CoherenceSpec::visibility(double path_difference) const {
  if (!(linewidth > 0.0)) throw ContractViolation("linewidth must be positive");
  return std::exp(-std::abs(path_difference) / coherence_length());
}

CoherenceVerdict coherence_check(const CoherenceSpec& spec, double interferometer_length) {
  if (!(spec.linewidth > 0.0)) throw ContractViolation("linewidth must be positive");
  if (interferometer_length < 0.0)
    throw ContractViolation("interferometer length must be non-negative");
  CoherenceVerdict verdict;
  verdict.coherence_length = spec.coherence_length();
  if (interferometer_length == 0.0) {
    verdict.feasible = true;
    verdict.margin = std::numeric_limits<double>::infinity();
    return verdict;
  }
  verdict.margin = verdict.coherence_length / (2.0 * interferometer_length);
  verdict.feasible = verdict.margin > 1.0;
  return verdict;
}

double pc_fringe_argument(double delta_L, double d_omega, bool conjugated, double k) {
  if (conjugated) return (d_omega / kSpeedOfLight) * delta_L;
  return 2.0 * k * delta_L;
}

} // namespace pcvi
