#include "pcvi/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcvi/parallel.hpp"
#include "pcvi/rng.hpp"

namespace pcvi {

namespace {

constexpr std::uint64_t kTimeSalt = 0x7431;
constexpr std::uint64_t kEventSalt = 0xE7E4;
constexpr int kMaxProposals = 100000;

double wrap_angle(double theta) {
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

} // namespace

bool DetectorWindow::contains(double theta, double r, BeamsplitterSide s) const {
  if (s != side) return false;
  if (r < r_min || r >= r_max) return false;
  const double t = wrap_angle(theta);
  const double lo = wrap_angle(theta_min);
  const double hi = wrap_angle(theta_max);
  if (lo <= hi) return t >= lo && t < hi;
  return t >= lo || t < hi; // sector straddles theta = 0
}

bool DetectorWindow::overlaps(const DetectorWindow& other) const {
  if (side != other.side) return false;
  if (r_max <= other.r_min || other.r_max <= r_min) return false;
  // Coarse angular overlap test on a fine circle scan; windows are few.
  for (int m = 0; m < 4096; ++m) {
    const double theta = kTwoPi * (m + 0.5) / 4096;
    const double r = 0.5 * (std::max(r_min, other.r_min) + std::min(r_max, other.r_max));
    if (contains(theta, r, side) && other.contains(theta, r, side)) return true;
  }
  return false;
}

int assign_helix(double theta, double t, int two_ell, double d_omega, double phase0) {
  if (two_ell == 0) throw ContractViolation("helix assignment requires a helical pattern");
  const int n = std::abs(two_ell);
  const double psi = two_ell * theta + d_omega * t + phase0;
  double y = psi / kTwoPi;
  y -= n * std::floor(y / n); // into [0, n)
  const double shifted = y + 0.5;
  double cell = std::floor(shifted);
  if (cell == shifted) cell -= 1.0; // nodal line: tie-break to the lower lobe
  long j = static_cast<long>(cell);
  return static_cast<int>(((j % n) + n) % n);
}

long assign_toroidal(double z, double z_ref, double wavelength) {
  if (!(wavelength > 0.0)) throw ContractViolation("wavelength must be positive");
  return static_cast<long>(std::floor((z - z_ref) / (0.5 * wavelength)));
}

DetectionRecord sample_events(const Segment& segment, const BeamGeometry& geom,
                              const SamplerConfig& config) {
  if (config.n_photons < 1)
    throw ContractViolation("sampler: need at least one photon");
  if (!(config.rate > 0.0)) throw ContractViolation("sampler: rate must be positive");
  if (segment.fwd.amplitude == 0.0 && segment.bwd.amplitude == 0.0)
    throw ContractViolation("sampler: segment carries no light");
  for (std::size_t i = 0; i < config.windows.size(); ++i)
    for (std::size_t j = i + 1; j < config.windows.size(); ++j)
      if (config.windows[i].overlaps(config.windows[j]))
        throw ContractViolation("detector windows must be pairwise disjoint");

  const PatternClass pattern = segment.pattern;
  const bool coherent = !config.which_way_tag &&
                        pattern.kind != PatternClass::Kind::UniformNoCrossTerm;
  if (config.volumetric && pattern.kind != PatternClass::Kind::Toroidal)
    throw ContractViolation("volumetric sampling is only supported for toroidal segments");

  const int abs_ell = std::abs(segment.fwd.ell_z);
  const int two_ell = segment.fwd.ell_z - segment.bwd.ell_z;
  const double d_omega = segment.delta_omega;
  const double k_sum = (segment.fwd.omega() + segment.bwd.omega()) / kSpeedOfLight;
  const double ratio = segment.fwd.amplitude > 0.0
                           ? segment.bwd.amplitude / segment.fwd.amplitude
                           : 0.0;
  const double bound = (1.0 + ratio) * (1.0 + ratio);
  const double zr = geom.rayleigh_range();

  auto spread_at = [&](double z) {
    const double zp = z - geom.z_pc;
    return 1.0 + (zp / zr) * (zp / zr);
  };

  // Emission times: a single sequential Poisson stream.
  std::vector<double> times(config.n_photons);
  {
    SplitMix64 clock = derive_stream(config.seed, kTimeSalt, 0);
    double t = 0.0;
    for (std::size_t i = 0; i < config.n_photons; ++i) {
      t += clock.next_exp() / config.rate;
      times[i] = t;
    }
  }

  DetectionRecord record;
  record.seed = config.seed;
  record.plane_z = config.plane_z;
  record.which_way_tagged = config.which_way_tag;
  record.events.resize(config.n_photons);

  parallel_for(config.n_photons, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      SplitMix64 rng = derive_stream(config.seed, kEventSalt, i);
      DetectionEvent& ev = record.events[i];
      ev.t = times[i];
      ev.side = rng.next_bool() ? BeamsplitterSide::Above : BeamsplitterSide::Below;

      double z = config.plane_z;
      if (config.volumetric) {
        // Marginal axial density of the toroidal stack is the fringe bracket;
        // the transverse profile at each z integrates to one.
        int tries = 0;
        for (;;) {
          if (++tries > kMaxProposals)
            throw NumericalQualityError("axial rejection sampling stalled");
          const double cand = segment.z_min + rng.next_double() * (segment.z_max - segment.z_min);
          if (!coherent) { z = cand; break; }
          const double arg = d_omega * ev.t - k_sum * (cand - geom.z_pc);
          const double bracket = 1.0 + ratio * ratio + 2.0 * ratio * std::cos(arg);
          if (rng.next_double() * bound <= bracket) { z = cand; break; }
        }
      }
      ev.z = z;

      double theta = 0.0;
      if (coherent && pattern.kind == PatternClass::Kind::Helical) {
        const double phase0 = -k_sum * (z - geom.z_pc);
        int tries = 0;
        for (;;) {
          if (++tries > kMaxProposals)
            throw NumericalQualityError("azimuthal rejection sampling stalled");
          const double cand = rng.next_double() * kTwoPi;
          const double arg = two_ell * cand + d_omega * ev.t + phase0;
          const double bracket = 1.0 + ratio * ratio + 2.0 * ratio * std::cos(arg);
          if (rng.next_double() * bound <= bracket) { theta = cand; break; }
        }
      } else {
        theta = rng.next_double() * kTwoPi;
      }

      // Exact ring radius: 2 r^2 / (d0^2 L) is Gamma(|ell|+1, 1).
      const double u = rng.next_gamma_int(abs_ell + 1);
      const double r = geom.d0 * std::sqrt(0.5 * spread_at(z) * u);
      ev.x = r * std::cos(theta);
      ev.y = r * std::sin(theta);

      if (pattern.kind == PatternClass::Kind::Helical) {
        const double phase0 = -k_sum * (z - geom.z_pc);
        ev.helix_index = assign_helix(theta, ev.t, two_ell, d_omega, phase0);
      } else if (pattern.kind == PatternClass::Kind::Toroidal) {
        ev.toroidal_index = assign_toroidal(z, geom.z_pc, geom.wavelength);
      }

      for (const DetectorWindow& w : config.windows) {
        if (w.contains(theta, r, ev.side)) {
          ev.detector_id = w.id;
          break;
        }
      }
    }
  });

  return record;
}

CoincidenceStats coincidences(const DetectionRecord& record,
                              const std::vector<DetectorWindow>& windows,
                              double gate) {
  CoincidenceStats stats;
  stats.n_events = record.events.size();
  for (const DetectorWindow& w : windows) stats.counts[w.id] = 0;

  for (const DetectionEvent& ev : record.events) {
    if (ev.detector_id && stats.counts.count(*ev.detector_id))
      ++stats.counts[*ev.detector_id];
  }

  // Coincidences are counted within one emission. Every emission in a
  // single-photon record owns exactly one event, so no window pair can fire
  // together no matter the gate width.
  for (std::size_t a = 0; a < windows.size(); ++a) {
    for (std::size_t b = a + 1; b < windows.size(); ++b) {
      const auto key = std::make_pair(windows[a].id, windows[b].id);
      stats.coincidences[key] = 0;
      const std::size_t na = stats.counts[windows[a].id];
      const std::size_t nb = stats.counts[windows[b].id];
      if (na == 0 || nb == 0) {
        stats.g2_zero[key] = std::numeric_limits<double>::quiet_NaN();
      } else {
        stats.g2_zero[key] = static_cast<double>(stats.coincidences[key]) *
                             static_cast<double>(stats.n_events) /
                             (static_cast<double>(na) * static_cast<double>(nb));
      }
    }
  }
  (void)gate;

  const std::vector<std::size_t> hist = azimuthal_histogram(record, 360);
  const auto [min_it, max_it] = std::minmax_element(hist.begin(), hist.end());
  const double lo = static_cast<double>(*min_it);
  const double hi = static_cast<double>(*max_it);
  stats.visibility = (hi + lo > 0.0) ? (hi - lo) / (hi + lo) : 0.0;
  return stats;
}

std::vector<std::size_t> azimuthal_histogram(const DetectionRecord& record, int bins) {
  std::vector<std::size_t> hist(bins, 0);
  for (const DetectionEvent& ev : record.events) {
    const double theta = wrap_angle(std::atan2(ev.y, ev.x));
    int b = static_cast<int>(theta / kTwoPi * bins);
    if (b >= bins) b = bins - 1;
    ++hist[b];
  }
  return hist;
}

std::vector<std::size_t> helix_occupancy(const DetectionRecord& record, int two_ell_abs) {
  std::vector<std::size_t> occ(two_ell_abs, 0);
  for (const DetectionEvent& ev : record.events) {
    if (ev.helix_index && *ev.helix_index >= 0 && *ev.helix_index < two_ell_abs)
      ++occ[*ev.helix_index];
  }
  return occ;
}

} // namespace pcvi
