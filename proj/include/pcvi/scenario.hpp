#pragma once

#include <optional>
#include <vector>

#include "pcvi/constants.hpp"
#include "pcvi/errors.hpp"

namespace pcvi {

// Integer design target: find charges and element counts with
// 4 ell (N + 1/2) = 2 ell (2N + 1) = M.
struct DesignQuery {
  long target = 0;   // M, positive integer
  int ell_max = 10;
  int n_max = 10;
  int n_min = 0;     // set to 1 to exclude the bare-mirror family

  void validate() const;
};

struct DesignSolution {
  int ell = 0;
  int n_inverters = 0;
  bool operator==(const DesignSolution&) const = default;
};

// Exhaustive enumeration over 1 <= ell <= ell_max, n_min <= N <= n_max.
// Doubles as its own oracle; bounds above 1e4 are rejected.
std::vector<DesignSolution> solve_design(const DesignQuery& query);

struct ScenarioResult {
  double delta_omega = 0.0;      // rad/s
  double theta_dot = 0.0;        // rad/s
  int spot_count = 0;            // 2 ell
  double transit_period = 0.0;   // s per spot crossing; +inf when static
  int alternation_count = 0;     // 2N + 1
  double latitude_factor = 0.0;  // cos(phi)
};

// Rotation-sensing figures for an (ell, N) chain in a frame spinning at
// frame_rate (Earth rate by default), with the spin axis tilted by phi from
// the interferometer axis:
//   delta_omega   = 4 ell (N + 1/2) frame_rate cos(phi)
//   theta_dot     = delta_omega / (2 ell)
//   transit       = (pi / ell) / |theta_dot|
double latitude_factor(double phi);
ScenarioResult earth_scenario(int ell, int n_inverters, double phi,
                              double frame_rate = kEarthSpinRate);

struct CoherenceSpec {
  double linewidth = 0.0;  // Delta omega, rad/s

  double coherence_length() const { return kTwoPi * kSpeedOfLight / linewidth; }
  // Fringe contrast after a path mismatch, Lorentzian-line model.
  double visibility(double path_difference) const;
};

struct CoherenceVerdict {
  bool feasible = false;
  double coherence_length = 0.0; // m
  double margin = 0.0;           // L_c / (2 L)
};

// Feasible iff the coherence length exceeds the doubled interferometer length.
CoherenceVerdict coherence_check(const CoherenceSpec& spec, double interferometer_length);

// Interference phase from a path mismatch. A conjugating mirror compensates
// the optical path, leaving only (delta_omega / c) * delta_L; an ordinary
// (Michelson) mirror leaves the full 2 k delta_L.
double pc_fringe_argument(double delta_L, double d_omega, bool conjugated,
                          double k = kTwoPi / kDefaultWavelength);

} // namespace pcvi
