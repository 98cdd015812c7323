#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pcvi/vortex.hpp"

namespace pcvi {

enum class ElementKind {
  DovePrism,
  HelicalWaveplate,
  CylindricalLensPair,
  PhaseConjugatingMirror,
  Retroreflector,
  Beamsplitter,
};

const char* to_string(ElementKind kind);
std::optional<ElementKind> element_kind_from_string(const std::string& name);

// Transmissive kinds that flip the sign of the OAM projection. They share one
// ledger rule; the kind only matters for reporting.
bool is_oam_inverting(ElementKind kind);
bool is_terminal(ElementKind kind);

struct OpticalElement {
  ElementKind kind = ElementKind::DovePrism;
  double z_pos = 0.0;             // m
  double spin_rate = 0.0;         // signed angular velocity about lab +Z, rad/s
  double efficiency = 1.0;        // power efficiency in [0, 1]
  double moment_of_inertia = 5e-8; // I_zz, kg m^2 (1 g disc of 1 cm radius)
  double bias_shift = 0.0;        // constant mirror frequency offset, rad/s
  double split_ratio = 0.5;       // beamsplitter pickoff fraction, render-only

  void validate() const;
};

// Result of a transmissive pass. The element picks up 2*ell_z*hbar of angular
// momentum per photon, which nudges its spin rate.
struct TransmitResult {
  PhotonState out;
  double spin_after = 0.0;
};

struct ReflectResult {
  PhotonState out;
  double spin_after = 0.0;
};

// Lab-frame rule applied by every OAM-inverting interaction, transmissive or
// phase-conjugating: ell_z flips sign and the photon frequency changes by
//   d_omega = -2 ell_z_in * Omega_element            (kinematic part)
//           - 2 ell_z_in^2 * hbar / I_zz             (recoil, exact mode only)
// The recoil term follows from closing the energy/angular-momentum budget of
// the photon-element pair exactly; it is ~1e-27 Hz for bench-scale elements.
TransmitResult transmit_oam_inverter(const PhotonState& in, const OpticalElement& elem,
                                     bool exact_recoil = false);

// Conjugating reflection: direction reverses, ell_z flips, frequency follows
// the same inversion rule plus the configurable bias offset, amplitude scales
// by sqrt(efficiency). Forward input only.
ReflectResult reflect_pcm(const PhotonState& in, const OpticalElement& elem,
                          bool exact_recoil = false);

// Ordinary retroreflection: direction reverses, ell_z and omega are kept,
// amplitude scales by sqrt(efficiency).
ReflectResult reflect_retro(const PhotonState& in, const OpticalElement& elem);

// Ordered single-arm chain: entrance beamsplitter at the smallest z, exactly
// one terminal mirror (conjugating or ordinary) at the largest z, any number
// of OAM-inverting elements in between. Immutable after validation.
struct Chain {
  std::vector<OpticalElement> elements; // ascending z_pos
  BeamGeometry geometry;                // z_pc is synced to the terminal z_pos
  PhotonState input;                    // forward state entering at the beamsplitter
  bool exact_recoil = false;

  void validate();
  const OpticalElement& terminal() const { return elements.back(); }
};

// Rotating-vehicle semantics: the frame rate adds to every element spin.
Chain with_frame_rate(Chain chain, double frame_rate);

struct ElementEvent {
  std::size_t element_index = 0;
  ElementKind kind = ElementKind::DovePrism;
  int ell_in = 0;
  int ell_out = 0;
  double spin_before = 0.0;       // rad/s
  double spin_after = 0.0;        // rad/s
  double d_omega_applied = 0.0;   // rad/s, includes recoil and bias
  double bias_applied = 0.0;      // rad/s
  double omega_before = 0.0;      // rad/s, absolute
  double omega_after = 0.0;       // rad/s, absolute
  double moment_of_inertia = 0.0; // kg m^2
};

struct Segment {
  double z_min = 0.0;
  double z_max = 0.0;
  PhotonState fwd;
  PhotonState bwd;
  double delta_omega = 0.0;              // omega_b - omega_f, rad/s
  PatternClass pattern;
  std::optional<double> theta_dot;       // delta_omega / (ell_f - ell_b), helical only
};

struct SegmentLedger {
  std::vector<Segment> segments;     // segments[0] is the entrance segment
  std::vector<ElementEvent> events;  // in traversal order
  int alternation_count = 0;         // OAM sign flips per round trip
  double net_delta_omega = 0.0;      // entrance-segment delta_omega, rad/s
  BeamGeometry geometry;
  bool exact_recoil = false;
};

// Walks the chain forward to the terminal mirror and back, applying the
// element rules event by event (no closed-form shortcut), and fills the
// per-segment pair states, frequency splits, pattern classes and rotation
// rates. In exact-recoil mode element spins persist between the two passes.
SegmentLedger run_chain(const Chain& chain);

// Builder for the accumulating configuration: terminal conjugating mirror
// spinning at +Omega (index n = 0) and n_inverters transmissive elements with
// alternating spins (-1)^n Omega, element n = 1 adjacent to the mirror.
Chain alternating_chain(int n_inverters, int ell, double omega_spin,
                        BeamGeometry geometry, double spacing = 0.1,
                        double carrier_omega = 0.0, double amplitude = 1.0,
                        double mirror_efficiency = 1.0);

} // namespace pcvi
