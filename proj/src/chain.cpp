#include "pcvi/chain.hpp"

#include <cmath>
#include <cstdlib>

namespace pcvi {

const char* to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::DovePrism: return "dove_prism";
    case ElementKind::HelicalWaveplate: return "helical_waveplate";
    case ElementKind::CylindricalLensPair: return "cylindrical_lens_pair";
    case ElementKind::PhaseConjugatingMirror: return "pcm";
    case ElementKind::Retroreflector: return "retroreflector";
    case ElementKind::Beamsplitter: return "beamsplitter";
  }
  return "?";
}

std::optional<ElementKind> element_kind_from_string(const std::string& name) {
  if (name == "dove_prism") return ElementKind::DovePrism;
  if (name == "helical_waveplate") return ElementKind::HelicalWaveplate;
  if (name == "cylindrical_lens_pair") return ElementKind::CylindricalLensPair;
  if (name == "pcm") return ElementKind::PhaseConjugatingMirror;
  if (name == "retroreflector") return ElementKind::Retroreflector;
  if (name == "beamsplitter") return ElementKind::Beamsplitter;
  return std::nullopt;
}

bool is_oam_inverting(ElementKind kind) {
  return kind == ElementKind::DovePrism || kind == ElementKind::HelicalWaveplate ||
         kind == ElementKind::CylindricalLensPair;
}

bool is_terminal(ElementKind kind) {
  return kind == ElementKind::PhaseConjugatingMirror ||
         kind == ElementKind::Retroreflector;
}

void OpticalElement::validate() const {
  if (efficiency < 0.0 || efficiency > 1.0)
    throw ContractViolation("element efficiency must lie in [0, 1]");
  if (!(moment_of_inertia > 0.0))
    throw ContractViolation("element moment of inertia must be positive");
  if (split_ratio < 0.0 || split_ratio > 1.0)
    throw ContractViolation("beamsplitter split ratio must lie in [0, 1]");
}

namespace {

// Shared inversion bookkeeping for prisms and the conjugating mirror.
struct InversionStep {
  double d_omega;     // applied to the photon
  double spin_after;  // applied to the element
};

InversionStep invert_step(int ell_in, const OpticalElement& elem, bool exact_recoil) {
  InversionStep step;
  step.d_omega = -2.0 * ell_in * elem.spin_rate;
  if (exact_recoil) {
    const double recoil_rate = kHbar / elem.moment_of_inertia;
    step.d_omega -= 2.0 * static_cast<double>(ell_in) * ell_in * recoil_rate;
    step.spin_after = elem.spin_rate + 2.0 * ell_in * recoil_rate;
  } else {
    step.spin_after = elem.spin_rate;
  }
  return step;
}

void check_positive_omega(const PhotonState& s, const char* where) {
  if (!(s.omega() > 0.0))
    throw ContractViolation(std::string("non-positive photon frequency after ") + where);
}

} // namespace

TransmitResult transmit_oam_inverter(const PhotonState& in, const OpticalElement& elem,
                                     bool exact_recoil) {
  if (!is_oam_inverting(elem.kind))
    throw ContractViolation("transmit_oam_inverter requires an OAM-inverting element");
  elem.validate();
  const InversionStep step = invert_step(in.ell_z, elem, exact_recoil);
  TransmitResult res;
  res.out = in;
  res.out.ell_z = -in.ell_z;
  res.out.omega_shift = in.omega_shift + step.d_omega;
  res.spin_after = step.spin_after;
  check_positive_omega(res.out, "transmissive inversion");
  return res;
}

ReflectResult reflect_pcm(const PhotonState& in, const OpticalElement& elem,
                          bool exact_recoil) {
  if (elem.kind != ElementKind::PhaseConjugatingMirror)
    throw ContractViolation("reflect_pcm requires a phase-conjugating mirror");
  if (in.direction != Direction::ForwardZ)
    throw ContractViolation("reflect_pcm: backward input photon");
  elem.validate();
  const InversionStep step = invert_step(in.ell_z, elem, exact_recoil);
  ReflectResult res;
  res.out = in;
  res.out.direction = Direction::BackwardZ;
  res.out.ell_z = -in.ell_z;
  res.out.omega_shift = in.omega_shift + step.d_omega + elem.bias_shift;
  res.out.amplitude = in.amplitude * std::sqrt(elem.efficiency);
  res.spin_after = step.spin_after;
  check_positive_omega(res.out, "conjugating reflection");
  return res;
}

ReflectResult reflect_retro(const PhotonState& in, const OpticalElement& elem) {
  if (elem.kind != ElementKind::Retroreflector)
    throw ContractViolation("reflect_retro requires a retroreflector");
  if (in.direction != Direction::ForwardZ)
    throw ContractViolation("reflect_retro: backward input photon");
  elem.validate();
  ReflectResult res;
  res.out = in;
  res.out.direction = Direction::BackwardZ;
  res.out.amplitude = in.amplitude * std::sqrt(elem.efficiency);
  res.spin_after = elem.spin_rate;
  return res;
}

void Chain::validate() {
  geometry.validate();
  if (elements.size() < 2)
    throw ContractViolation("chain needs at least a beamsplitter and a terminal mirror");
  if (elements.front().kind != ElementKind::Beamsplitter)
    throw ContractViolation("chain must start with the entrance beamsplitter");
  if (!is_terminal(elements.back().kind))
    throw ContractViolation("chain must end with a terminal mirror (pcm or retroreflector)");
  for (std::size_t i = 0; i + 1 < elements.size(); ++i) {
    if (!(elements[i].z_pos < elements[i + 1].z_pos))
      throw ContractViolation("chain element positions must be strictly increasing");
  }
  for (std::size_t i = 1; i + 1 < elements.size(); ++i) {
    if (!is_oam_inverting(elements[i].kind))
      throw ContractViolation("interior chain elements must be OAM-inverting");
  }
  for (const auto& e : elements) e.validate();
  if (input.direction != Direction::ForwardZ)
    throw ContractViolation("chain input photon must travel forward");
  geometry.z_pc = elements.back().z_pos;
}

Chain with_frame_rate(Chain chain, double frame_rate) {
  for (auto& e : chain.elements) e.spin_rate += frame_rate;
  return chain;
}

SegmentLedger run_chain(const Chain& chain) {
  Chain c = chain;   // local copy; spins may evolve in exact-recoil mode
  c.validate();

  const std::size_t n_elems = c.elements.size();
  const std::size_t n_segs = n_elems - 1;

  SegmentLedger ledger;
  ledger.geometry = c.geometry;
  ledger.exact_recoil = c.exact_recoil;
  ledger.segments.resize(n_segs);

  std::vector<PhotonState> fwd_states(n_segs);
  std::vector<PhotonState> bwd_states(n_segs);

  auto record = [&](std::size_t idx, const PhotonState& before, const PhotonState& after,
                    double spin_before, double spin_after, double bias) {
    ElementEvent ev;
    ev.element_index = idx;
    ev.kind = c.elements[idx].kind;
    ev.ell_in = before.ell_z;
    ev.ell_out = after.ell_z;
    ev.spin_before = spin_before;
    ev.spin_after = spin_after;
    ev.d_omega_applied = after.omega_shift - before.omega_shift;
    ev.bias_applied = bias;
    ev.omega_before = before.omega();
    ev.omega_after = after.omega();
    ev.moment_of_inertia = c.elements[idx].moment_of_inertia;
    ledger.events.push_back(ev);
    if (after.ell_z != before.ell_z) ++ledger.alternation_count;
  };

  // Forward pass: beamsplitter is a passive pickoff, interior elements invert.
  PhotonState state = c.input;
  fwd_states[0] = state;
  for (std::size_t i = 1; i + 1 < n_elems; ++i) {
    const double spin_before = c.elements[i].spin_rate;
    TransmitResult tr = transmit_oam_inverter(state, c.elements[i], c.exact_recoil);
    record(i, state, tr.out, spin_before, tr.spin_after, 0.0);
    if (c.exact_recoil) c.elements[i].spin_rate = tr.spin_after;
    state = tr.out;
    fwd_states[i] = state;
  }

  // Terminal reflection.
  {
    const std::size_t t = n_elems - 1;
    const double spin_before = c.elements[t].spin_rate;
    ReflectResult rr;
    double bias = 0.0;
    if (c.elements[t].kind == ElementKind::PhaseConjugatingMirror) {
      rr = reflect_pcm(state, c.elements[t], c.exact_recoil);
      bias = c.elements[t].bias_shift;
    } else {
      rr = reflect_retro(state, c.elements[t]);
    }
    record(t, state, rr.out, spin_before, rr.spin_after, bias);
    if (c.exact_recoil) c.elements[t].spin_rate = rr.spin_after;
    state = rr.out;
    bwd_states[n_segs - 1] = state;
  }

  // Backward pass.
  for (std::size_t i = n_elems - 2; i >= 1; --i) {
    const double spin_before = c.elements[i].spin_rate;
    TransmitResult tr = transmit_oam_inverter(state, c.elements[i], c.exact_recoil);
    record(i, state, tr.out, spin_before, tr.spin_after, 0.0);
    if (c.exact_recoil) c.elements[i].spin_rate = tr.spin_after;
    state = tr.out;
    bwd_states[i - 1] = state;
  }

  for (std::size_t s = 0; s < n_segs; ++s) {
    Segment& seg = ledger.segments[s];
    seg.z_min = c.elements[s].z_pos;
    seg.z_max = c.elements[s + 1].z_pos;
    seg.fwd = fwd_states[s];
    seg.bwd = bwd_states[s];
    seg.delta_omega = delta_omega(seg.fwd, seg.bwd);
    seg.pattern = classify_pattern(seg.fwd, seg.bwd);
    if (seg.pattern.kind == PatternClass::Kind::Helical) {
      seg.theta_dot = seg.delta_omega / static_cast<double>(seg.fwd.ell_z - seg.bwd.ell_z);
    } else {
      seg.theta_dot = std::nullopt;
    }
  }

  ledger.net_delta_omega = ledger.segments.front().delta_omega;
  return ledger;
}

Chain alternating_chain(int n_inverters, int ell, double omega_spin,
                        BeamGeometry geometry, double spacing,
                        double carrier_omega, double amplitude,
                        double mirror_efficiency) {
  if (n_inverters < 0)
    throw ContractViolation("alternating_chain: element count must be non-negative");
  if (ell == 0) throw ContractViolation("alternating_chain: charge must be non-zero");
  if (!(spacing > 0.0))
    throw ContractViolation("alternating_chain: element spacing must be positive");

  Chain chain;
  chain.geometry = geometry;
  if (carrier_omega <= 0.0)
    carrier_omega = kTwoPi * kSpeedOfLight / geometry.wavelength;
  chain.input = make_photon(carrier_omega, ell, Direction::ForwardZ, amplitude);

  OpticalElement bs;
  bs.kind = ElementKind::Beamsplitter;
  bs.z_pos = 0.0;
  chain.elements.push_back(bs);

  // Element n sits n slots away from the mirror; the mirror itself is n = 0.
  for (int n = n_inverters; n >= 1; --n) {
    OpticalElement prism;
    prism.kind = ElementKind::DovePrism;
    prism.z_pos = spacing * static_cast<double>(n_inverters - n + 1);
    prism.spin_rate = (n % 2 == 0) ? omega_spin : -omega_spin;
    chain.elements.push_back(prism);
  }

  OpticalElement pcm;
  pcm.kind = ElementKind::PhaseConjugatingMirror;
  pcm.z_pos = spacing * static_cast<double>(n_inverters + 1);
  pcm.spin_rate = omega_spin;
  pcm.efficiency = mirror_efficiency;
  chain.elements.push_back(pcm);

  chain.validate();
  return chain;
}

} // namespace pcvi
