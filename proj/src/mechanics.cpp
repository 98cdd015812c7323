#include "pcvi/mechanics.hpp"

#include <cmath>
#include <cstdlib>

namespace pcvi {

double pcm_recoil_torque(double power, double omega_f, double omega_b, int ell) {
  return std::abs(ell) * power * (1.0 / omega_f + 1.0 / omega_b);
}

double dove_prism_torque(double power, double omega_f, double omega_b, int ell) {
  return 2.0 * pcm_recoil_torque(power, omega_f, omega_b, ell);
}

double retro_prism_torque(double power, double omega_f, double omega_b, int ell) {
  return 2.0 * std::abs(ell) * power * (1.0 / omega_f - 1.0 / omega_b);
}

double radiation_pressure(double power) {
  if (power < 0.0) throw ContractViolation("beam power must be non-negative");
  return 2.0 * power / kSpeedOfLight;
}

double prism_spinup(int ell_z_in, double moment_of_inertia, double omega_spin) {
  if (!(moment_of_inertia > 0.0))
    throw ContractViolation("moment of inertia must be positive");
  return omega_spin + 2.0 * ell_z_in * kHbar / moment_of_inertia;
}

std::vector<ElementLoads> ledger_loads(const SegmentLedger& ledger,
                                       const std::vector<OpticalElement>& elements,
                                       const BeamPower& beam) {
  std::vector<ElementLoads> loads(elements.size());
  const double flux = beam.power > 0.0
                          ? beam.photon_rate(ledger.segments.front().fwd.carrier_omega)
                          : 0.0;
  for (const ElementEvent& ev : ledger.events) {
    // Angular momentum handed to the element per photon, in units of hbar.
    const double impulse = static_cast<double>(ev.ell_in - ev.ell_out);
    ElementLoads& load = loads[ev.element_index];
    load.angular_impulse_per_photon += impulse;
    load.torque += impulse * kHbar * flux;
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (is_terminal(elements[i].kind)) loads[i].force_z = radiation_pressure(beam.power);
  }
  return loads;
}

} // namespace pcvi
