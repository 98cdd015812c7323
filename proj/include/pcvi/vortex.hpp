#pragma once

#include <complex>
#include <cstdlib>

#include "pcvi/constants.hpp"
#include "pcvi/errors.hpp"

namespace pcvi {

enum class Direction { ForwardZ, BackwardZ };

// One leg of the counter-propagating pair. The angular frequency is stored as
// a fixed carrier plus an accumulated shift: rotational Doppler shifts are
// 10-16 orders of magnitude below an optical carrier, and keeping them in a
// separate accumulator preserves them exactly through a chain traversal.
struct PhotonState {
  double carrier_omega = kTwoPi * kSpeedOfLight / kDefaultWavelength; // rad/s
  double omega_shift = 0.0;  // rad/s, accumulated by element interactions
  int ell_z = 0;             // signed OAM projection on lab +Z, units of hbar
  Direction direction = Direction::ForwardZ;
  double amplitude = 1.0;    // field scale, dimensionless

  double omega() const { return carrier_omega + omega_shift; }
  double wavenumber() const { return omega() / kSpeedOfLight; }
};

PhotonState make_photon(double omega, int ell_z, Direction direction,
                        double amplitude = 1.0);

// Transverse/axial geometry shared by both legs. The Rayleigh range is always
// derived from (wavelength, d0); it is never stored separately.
struct BeamGeometry {
  double d0 = 1e-3;                        // vortex radius, m
  double wavelength = kDefaultWavelength;  // m
  double z_pc = 0.0;                       // mirror entrance window, m

  double wavenumber() const { return kTwoPi / wavelength; }
  double rayleigh_range() const { return wavenumber() * d0 * d0; }
  void validate() const;
};

struct PatternClass {
  enum class Kind { Helical, Toroidal, UniformNoCrossTerm };
  Kind kind = Kind::UniformNoCrossTerm;
  int fringe_count = 0; // 2|ell| for helical, 0 otherwise

  bool operator==(const PatternClass&) const = default;
};

const char* to_string(PatternClass::Kind kind);

// omega_b - omega_f, computed shift-first so the carrier never swamps it.
double delta_omega(const PhotonState& fwd, const PhotonState& bwd);

// Complex envelope of a charge-|ell| vortex beam, evaluated at axial offset
// z' = z - z_pc from the mirror window:
//
//   (r/d0)^|ell| exp[-r^2 / (d0^2 (1 + i z'/zR))] / (1 + i z'/zR)^(|ell|+1)
//
// The (|ell|+1) power keeps the transverse integral of the squared envelope
// independent of z' for every charge, not just ell = 0.
std::complex<double> vortex_envelope(const BeamGeometry& geom, int abs_ell,
                                     double z_prime, double r);

// Normalized intensity envelope shared by both closed-form patterns:
//   2^(|ell|+1) (r/d0)^(2|ell|) exp[-2 r^2/(d0^2 L)] / (pi |ell|! d0^2 L^(|ell|+1)),
// L = 1 + z'^2/zR^2. Its transverse-plane integral is exactly 1 at every z'.
double ring_intensity_envelope(const BeamGeometry& geom, int abs_ell,
                               double z_prime, double r);

// Complex field of one leg at (z, r, theta, t). The propagation phase is
// referenced to the mirror window (the conjugate leg retraces the forward
// wavefronts, so the fringes of the pair are pinned there): the forward leg
// carries +k*(z_pc - z), the backward leg -k*(z_pc - z).
std::complex<double> lg_field(const PhotonState& state, const BeamGeometry& geom,
                              double z, double r, double theta, double t);

// Twisted-fringe intensity of a conjugate pair (ell_f = -ell_b != 0):
//   scale * amp^2 * envelope * [1 + R^2 + 2R cos(d_omega t - (k_f+k_b) z' + 2 ell theta)]
// R is the backward/forward field-amplitude ratio. Throws unless the pair is
// conjugate.
double helical_intensity(const PhotonState& fwd, const PhotonState& bwd,
                         const BeamGeometry& geom, double mirror_ratio,
                         double z, double r, double theta, double t,
                         double scale = 1.0);

// Ring-stack intensity of an equal-charge pair (ell_f = ell_b):
//   scale * amp^2 * envelope * [1 + R^2 + 2R cos(d_omega t - (k_f+k_b) z')]
// No theta dependence. Throws on a conjugate pair with ell != 0.
double toroidal_intensity(const PhotonState& fwd, const PhotonState& bwd,
                          const BeamGeometry& geom, double mirror_ratio,
                          double z, double r, double t, double scale = 1.0);

// Single-beam envelope intensity (no cross term), used when one amplitude
// vanishes or a which-way tag removed the coherence.
double single_beam_intensity(const PhotonState& state, const BeamGeometry& geom,
                             double z, double r, double scale = 1.0);

// Dispatch rule between the two closed forms. Opposite signs (ell != 0) give
// a helical pattern with 2|ell| fringes, equal signs a toroidal one; a
// vanishing amplitude on either side leaves no cross term at all. Mismatched
// |ell| is a contract violation.
PatternClass classify_pattern(const PhotonState& fwd, const PhotonState& bwd);

} // namespace pcvi
