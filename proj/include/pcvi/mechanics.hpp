#pragma once

#include <vector>

#include "pcvi/chain.hpp"

namespace pcvi {

struct BeamPower {
  double power = 0.0; // W

  // Photon number flux for a given carrier, 1/s.
  double photon_rate(double omega) const { return power / (kHbar * omega); }
};

struct ElementLoads {
  double torque = 0.0;                     // N m, signed about +Z
  double force_z = 0.0;                    // N, along +Z
  double angular_impulse_per_photon = 0.0; // units of hbar, signed
};

// Recoil torque magnitude on the conjugating mirror under CW power P:
//   |T_pc| = |ell| P (1/omega_f + 1/omega_b)
double pcm_recoil_torque(double power, double omega_f, double omega_b, int ell);

// A transmissive inverter is passed twice per round trip and feels twice the
// mirror torque.
double dove_prism_torque(double power, double omega_f, double omega_b, int ell);

// Residual prism torque in the ordinary-retroreflector configuration, where
// the two passes nearly cancel: 2 |ell| P (1/omega_f - 1/omega_b).
double retro_prism_torque(double power, double omega_f, double omega_b, int ell);

// Radiation pressure on the terminal mirror, 2P/c, independent of charge.
double radiation_pressure(double power);

// Spin-rate change from a single photon inversion: Omega' = Omega + 2 ell_z hbar / I_zz.
double prism_spinup(int ell_z_in, double moment_of_inertia, double omega_spin);

// Steady-state CW loads per chain element, from the ledger's per-passage
// angular-momentum transfers. One photon flux, taken at the input carrier, is
// applied to every event so the element torques balance the photon OAM
// turnover identically.
std::vector<ElementLoads> ledger_loads(const SegmentLedger& ledger,
                                       const std::vector<OpticalElement>& elements,
                                       const BeamPower& beam);

} // namespace pcvi
