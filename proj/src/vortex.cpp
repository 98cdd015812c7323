#include "pcvi/vortex.hpp"

#include <cmath>
#include <string>

namespace pcvi {

PhotonState make_photon(double omega, int ell_z, Direction direction,
                        double amplitude) {
  if (!(omega > 0.0))
    throw ContractViolation("photon carrier frequency must be positive");
  if (amplitude < 0.0)
    throw ContractViolation("photon amplitude must be non-negative");
  PhotonState s;
  s.carrier_omega = omega;
  s.omega_shift = 0.0;
  s.ell_z = ell_z;
  s.direction = direction;
  s.amplitude = amplitude;
  return s;
}

void BeamGeometry::validate() const {
  if (!(d0 > 0.0)) throw ContractViolation("beam geometry: d0 must be positive");
  if (!(wavelength > 0.0))
    throw ContractViolation("beam geometry: wavelength must be positive");
}

const char* to_string(PatternClass::Kind kind) {
  switch (kind) {
    case PatternClass::Kind::Helical: return "helical";
    case PatternClass::Kind::Toroidal: return "toroidal";
    case PatternClass::Kind::UniformNoCrossTerm: return "uniform";
  }
  return "?";
}

double delta_omega(const PhotonState& fwd, const PhotonState& bwd) {
  return (bwd.carrier_omega - fwd.carrier_omega) + (bwd.omega_shift - fwd.omega_shift);
}

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

} // namespace

std::complex<double> vortex_envelope(const BeamGeometry& geom, int abs_ell,
                                     double z_prime, double r) {
  const std::complex<double> q(1.0, z_prime / geom.rayleigh_range());
  const double radial = (abs_ell == 0) ? 1.0 : std::pow(r / geom.d0, abs_ell);
  const std::complex<double> gauss = std::exp(-(r * r) / (geom.d0 * geom.d0 * q));
  return radial * gauss / std::pow(q, abs_ell + 1);
}

double ring_intensity_envelope(const BeamGeometry& geom, int abs_ell,
                               double z_prime, double r) {
  const double zr = geom.rayleigh_range();
  const double spread = 1.0 + (z_prime / zr) * (z_prime / zr);
  const double d0sq = geom.d0 * geom.d0;
  const double radial =
      (abs_ell == 0) ? 1.0 : std::pow(r * r / d0sq, abs_ell);
  const double norm = std::pow(2.0, abs_ell + 1) /
                      (kPi * factorial(abs_ell) * d0sq * std::pow(spread, abs_ell + 1));
  return norm * radial * std::exp(-2.0 * r * r / (d0sq * spread));
}

std::complex<double> lg_field(const PhotonState& state, const BeamGeometry& geom,
                              double z, double r, double theta, double t) {
  const double zeta = geom.z_pc - z; // axial distance from the mirror window
  const double sign = (state.direction == Direction::ForwardZ) ? 1.0 : -1.0;
  const double phase =
      -state.omega() * t + sign * state.wavenumber() * zeta + state.ell_z * theta;
  const std::complex<double> env =
      vortex_envelope(geom, std::abs(state.ell_z), z - geom.z_pc, r);
  return state.amplitude * env * std::polar(1.0, phase);
}

namespace {

double check_ratio(double mirror_ratio) {
  if (mirror_ratio < 0.0 || mirror_ratio > 1.0)
    throw ContractViolation("mirror amplitude ratio must lie in [0, 1]");
  return mirror_ratio;
}

} // namespace

double helical_intensity(const PhotonState& fwd, const PhotonState& bwd,
                         const BeamGeometry& geom, double mirror_ratio,
                         double z, double r, double theta, double t,
                         double scale) {
  if (fwd.ell_z != -bwd.ell_z || fwd.ell_z == 0)
    throw ContractViolation(
        "helical pattern requires a conjugate pair: ell_f = -ell_b != 0");
  const double R = check_ratio(mirror_ratio);
  const int two_ell = fwd.ell_z - bwd.ell_z;
  const double z_prime = z - geom.z_pc;
  const double k_sum = (fwd.omega() + bwd.omega()) / kSpeedOfLight;
  const double arg = delta_omega(fwd, bwd) * t - k_sum * z_prime + two_ell * theta;
  const double bracket = 1.0 + R * R + 2.0 * R * std::cos(arg);
  const double env = ring_intensity_envelope(geom, std::abs(fwd.ell_z), z_prime, r);
  return scale * fwd.amplitude * fwd.amplitude * env * bracket;
}

double toroidal_intensity(const PhotonState& fwd, const PhotonState& bwd,
                          const BeamGeometry& geom, double mirror_ratio,
                          double z, double r, double t, double scale) {
  if (fwd.ell_z != bwd.ell_z)
    throw ContractViolation("toroidal pattern requires equal charges: ell_f = ell_b");
  const double R = check_ratio(mirror_ratio);
  const double z_prime = z - geom.z_pc;
  const double k_sum = (fwd.omega() + bwd.omega()) / kSpeedOfLight;
  const double arg = delta_omega(fwd, bwd) * t - k_sum * z_prime;
  const double bracket = 1.0 + R * R + 2.0 * R * std::cos(arg);
  const double env = ring_intensity_envelope(geom, std::abs(fwd.ell_z), z_prime, r);
  return scale * fwd.amplitude * fwd.amplitude * env * bracket;
}

double single_beam_intensity(const PhotonState& state, const BeamGeometry& geom,
                             double z, double r, double scale) {
  const double env =
      ring_intensity_envelope(geom, std::abs(state.ell_z), z - geom.z_pc, r);
  return scale * state.amplitude * state.amplitude * env;
}

PatternClass classify_pattern(const PhotonState& fwd, const PhotonState& bwd) {
  if (std::abs(fwd.ell_z) != std::abs(bwd.ell_z))
    throw ContractViolation("pattern classification requires equal |ell| on both legs");
  if (fwd.amplitude == 0.0 || bwd.amplitude == 0.0)
    return {PatternClass::Kind::UniformNoCrossTerm, 0};
  if (fwd.ell_z == bwd.ell_z) return {PatternClass::Kind::Toroidal, 0};
  return {PatternClass::Kind::Helical, 2 * std::abs(fwd.ell_z)};
}

} // namespace pcvi
