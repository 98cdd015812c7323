#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pcvi/chain.hpp"
#include "pcvi/vortex.hpp"

namespace pcvi {

enum class BeamsplitterSide { Above, Below };

struct DetectorWindow {
  int id = 0;
  double theta_min = 0.0; // rad, window is [theta_min, theta_max) mod 2pi
  double theta_max = 0.0;
  double r_min = 0.0;     // m
  double r_max = 0.0;
  BeamsplitterSide side = BeamsplitterSide::Above;

  bool contains(double theta, double r, BeamsplitterSide s) const;
  bool overlaps(const DetectorWindow& other) const;
};

struct DetectionEvent {
  double x = 0.0;               // m
  double y = 0.0;               // m
  double z = 0.0;               // m
  double t = 0.0;               // s
  BeamsplitterSide side = BeamsplitterSide::Above;
  std::optional<int> detector_id;
  std::optional<int> helix_index;      // 0 .. 2|ell|-1, helical segments
  std::optional<long> toroidal_index;  // axial fringe cell, toroidal segments
};

struct DetectionRecord {
  std::vector<DetectionEvent> events; // one event per emission, time-ordered
  std::uint64_t seed = 0;
  double plane_z = 0.0;
  bool which_way_tagged = false;
};

struct SamplerConfig {
  std::size_t n_photons = 0;
  std::uint64_t seed = 0;
  double rate = 1e6;            // mean emission rate, 1/s
  double plane_z = 0.0;         // transverse sampling plane, m
  bool single_photon = true;
  bool which_way_tag = false;   // drop the cross term (incoherent sum)
  bool volumetric = false;      // also sample z across the segment (toroidal)
  std::vector<DetectorWindow> windows;
};

struct CoincidenceStats {
  std::map<int, std::size_t> counts;                      // per window
  std::map<std::pair<int, int>, std::size_t> coincidences; // per window pair
  std::map<std::pair<int, int>, double> g2_zero;           // NaN when no data
  double visibility = 0.0;                                  // (max-min)/(max+min)
  std::size_t n_events = 0;
};

// Draws i.i.d. detection positions from the normalized transverse intensity
// of the segment at plane_z. The radial coordinate is sampled exactly (the
// charge-|ell| ring density is a Gamma(|ell|+1) variate in 2 r^2 / (d0^2 L));
// only the azimuthal fringe factor needs rejection, with acceptance bounded
// below by (1+R^2)/(1+R)^2 >= 1/2. Timestamps form a Poisson process at
// config.rate and enter the fringe phase, so the pattern rotates while it is
// being sampled. Identical seeds give bit-identical records.
DetectionRecord sample_events(const Segment& segment, const BeamGeometry& geom,
                              const SamplerConfig& config);

// Index of the azimuthal lobe containing theta at time t, for a pattern with
// cross-term phase two_ell*theta + d_omega*t + phase0. Events exactly on a
// nodal line tie-break toward the lower index.
int assign_helix(double theta, double t, int two_ell, double d_omega, double phase0);

// Axial fringe cell of a toroidal pattern: floor((z - z_ref) / (lambda/2)).
long assign_toroidal(double z, double z_ref, double wavelength);

// Window counts, pairwise coincidences within the gate (same emission only;
// a single-photon record never produces one), pulsed g2(0) estimates, and a
// fringe-visibility estimate from a 360-bin azimuthal histogram.
CoincidenceStats coincidences(const DetectionRecord& record,
                              const std::vector<DetectorWindow>& windows,
                              double gate);

// Azimuthal histogram of all events (bin 0 starts at theta = 0).
std::vector<std::size_t> azimuthal_histogram(const DetectionRecord& record, int bins);

// Helix-lobe occupancy counts; size 2|ell|.
std::vector<std::size_t> helix_occupancy(const DetectionRecord& record, int two_ell_abs);

} // namespace pcvi
