#include "pcvi/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pcvi/parallel.hpp"

namespace pcvi {

void GridSpec::validate() const {
  if (nx < 16 || ny < 16)
    throw ContractViolation("grid must have at least 16 samples per axis");
  if (!(extent > 0.0)) throw ContractViolation("grid extent must be positive");
}

double InterferenceField::sample(std::size_t frame, double x, double y) const {
  double fx = (x + extent) / dx() - 0.5;
  double fy = (y + extent) / dy() - 0.5;
  fx = std::clamp(fx, 0.0, static_cast<double>(nx - 1));
  fy = std::clamp(fy, 0.0, static_cast<double>(ny - 1));
  const int ix0 = std::min(nx - 2, static_cast<int>(fx));
  const int iy0 = std::min(ny - 2, static_cast<int>(fy));
  const double tx = fx - ix0;
  const double ty = fy - iy0;
  const double v00 = value(frame, ix0, iy0);
  const double v10 = value(frame, ix0 + 1, iy0);
  const double v01 = value(frame, ix0, iy0 + 1);
  const double v11 = value(frame, ix0 + 1, iy0 + 1);
  return v00 * (1 - tx) * (1 - ty) + v10 * tx * (1 - ty) + v01 * (1 - tx) * ty +
         v11 * tx * ty;
}

double InterferenceField::peak_ring_radius() const {
  const double zr = geom.rayleigh_range();
  const double zp = z - geom.z_pc;
  const double spread = 1.0 + (zp / zr) * (zp / zr);
  const int abs_ell = std::abs(fwd.ell_z);
  return geom.d0 * std::sqrt(0.5 * spread * std::max(abs_ell, 1));
}

std::vector<InterferenceField> render(const Segment& segment, const BeamGeometry& geom,
                                      const GridSpec& grid, int segment_index,
                                      double scale) {
  grid.validate();
  if (grid.z_planes.empty()) throw ContractViolation("render: no z planes requested");
  if (grid.t_frames.empty()) throw ContractViolation("render: no time frames requested");

  const PatternClass pattern = segment.pattern;
  if (pattern.kind == PatternClass::Kind::Helical) {
    // Azimuthal Nyquist check at the nominal ring r = d0: the pixel pitch must
    // resolve half an azimuthal fringe period there.
    const double pitch_angle = (2.0 * grid.extent / grid.nx) / geom.d0;
    const double half_period = kPi / pattern.fringe_count;
    if (pitch_angle >= half_period) {
      std::ostringstream msg;
      msg << "grid too coarse for " << pattern.fringe_count
          << " azimuthal fringes: pixel pitch at r=d0 is " << pitch_angle
          << " rad, limit " << half_period << " rad";
      throw NumericalQualityError(msg.str());
    }
  }

  const double ratio = (segment.fwd.amplitude > 0.0)
                           ? segment.bwd.amplitude / segment.fwd.amplitude
                           : 0.0;

  std::vector<InterferenceField> fields;
  fields.reserve(grid.z_planes.size());
  for (double z : grid.z_planes) {
    InterferenceField field;
    field.nx = grid.nx;
    field.ny = grid.ny;
    field.extent = grid.extent;
    field.z = z;
    field.times = grid.t_frames;
    field.pattern = pattern;
    field.fwd = segment.fwd;
    field.bwd = segment.bwd;
    field.geom = geom;
    field.segment_index = segment_index;
    field.frames.assign(grid.t_frames.size(),
                        std::vector<double>(static_cast<std::size_t>(grid.nx) * grid.ny));

    for (std::size_t f = 0; f < grid.t_frames.size(); ++f) {
      const double t = grid.t_frames[f];
      std::vector<double>& data = field.frames[f];
      parallel_for(static_cast<std::size_t>(grid.ny), [&](std::size_t row0, std::size_t row1) {
        for (std::size_t iy = row0; iy < row1; ++iy) {
          const double y = field.pixel_y(static_cast<int>(iy));
          for (int ix = 0; ix < grid.nx; ++ix) {
            const double x = field.pixel_x(ix);
            const double r = std::hypot(x, y);
            double v = 0.0;
            switch (pattern.kind) {
              case PatternClass::Kind::Helical:
                v = helical_intensity(segment.fwd, segment.bwd, geom, ratio, z, r,
                                      std::atan2(y, x), t, scale);
                break;
              case PatternClass::Kind::Toroidal:
                v = toroidal_intensity(segment.fwd, segment.bwd, geom, ratio, z, r, t,
                                       scale);
                break;
              case PatternClass::Kind::UniformNoCrossTerm: {
                const PhotonState& beam =
                    segment.fwd.amplitude > 0.0 ? segment.fwd : segment.bwd;
                v = single_beam_intensity(beam, geom, z, r, scale);
                break;
              }
            }
            data[iy * grid.nx + ix] = v;
          }
        }
      });
    }
    fields.push_back(std::move(field));
  }
  return fields;
}

std::vector<double> make_time_frames(const Segment& segment, int n_frames,
                                     double t_start) {
  if (n_frames < 1) throw ContractViolation("frame count must be positive");
  double dt = 1.0;
  if (segment.theta_dot && *segment.theta_dot != 0.0) {
    const int abs_ell = std::abs(segment.fwd.ell_z);
    dt = (kPi / (8.0 * abs_ell)) / std::abs(*segment.theta_dot);
  }
  std::vector<double> times(n_frames);
  for (int i = 0; i < n_frames; ++i) times[i] = t_start + i * dt;
  return times;
}

namespace {

// Azimuthal intensity profile on a centered ring, bilinear-sampled.
std::vector<double> ring_profile(const InterferenceField& field, std::size_t frame,
                                 double radius, int n_samples) {
  std::vector<double> profile(n_samples);
  for (int m = 0; m < n_samples; ++m) {
    const double theta = kTwoPi * m / n_samples;
    profile[m] = field.sample(frame, radius * std::cos(theta), radius * std::sin(theta));
  }
  return profile;
}

} // namespace

double estimate_rotation_rate(const InterferenceField& field) {
  if (field.frames.size() < 3)
    throw ContractViolation("rotation estimate needs at least 3 frames");
  if (field.pattern.kind != PatternClass::Kind::Helical)
    throw ContractViolation("rotation estimate requires a helical pattern");

  const int two_ell = field.fwd.ell_z - field.bwd.ell_z;
  const int abs_two_ell = std::abs(two_ell);
  const double ring = field.peak_ring_radius();

  constexpr int kRingSamples = 1024;
  const double bin = kTwoPi / kRingSamples;
  // Unambiguous shift window: half an azimuthal fringe period.
  const double max_shift = kPi / abs_two_ell;
  const int max_bins = std::max(2, static_cast<int>(std::floor(max_shift / bin)) - 1);

  std::vector<std::vector<double>> profiles(field.frames.size());
  for (std::size_t f = 0; f < field.frames.size(); ++f) {
    profiles[f] = ring_profile(field, f, ring, kRingSamples);
    const double mean =
        std::accumulate(profiles[f].begin(), profiles[f].end(), 0.0) / kRingSamples;
    for (double& v : profiles[f]) v -= mean;
  }

  double rate_sum = 0.0;
  std::size_t rate_count = 0;
  for (std::size_t f = 0; f + 1 < field.frames.size(); ++f) {
    const std::vector<double>& a = profiles[f];
    const std::vector<double>& b = profiles[f + 1];
    const double dt = field.times[f + 1] - field.times[f];
    if (!(dt != 0.0)) throw ContractViolation("frame times must be strictly ordered");

    // C(j) = sum_m b[(m - j) mod M] a[m]; the peak j solves
    // b(theta - j*bin) ~ a(theta).
    std::vector<double> corr(2 * max_bins + 1);
    for (int j = -max_bins; j <= max_bins; ++j) {
      double c = 0.0;
      for (int m = 0; m < kRingSamples; ++m) {
        const int shifted = ((m - j) % kRingSamples + kRingSamples) % kRingSamples;
        c += b[shifted] * a[m];
      }
      corr[j + max_bins] = c;
    }
    const auto peak_it = std::max_element(corr.begin(), corr.end());
    int peak = static_cast<int>(peak_it - corr.begin());
    if (peak == 0 || peak == 2 * max_bins) {
      throw NumericalQualityError(
          "inter-frame rotation at the aliasing limit; shorten the frame cadence");
    }
    const double cm = corr[peak - 1], c0 = corr[peak], cp = corr[peak + 1];
    const double denom = cm - 2.0 * c0 + cp;
    const double frac = (denom != 0.0) ? 0.5 * (cm - cp) / denom : 0.0;
    const double shift = (peak - max_bins + frac) * bin;
    if (std::abs(shift) >= 0.95 * max_shift)
      throw NumericalQualityError(
          "inter-frame rotation too close to the pi/(2 ell) ambiguity window");
    rate_sum += shift / dt;
    ++rate_count;
  }
  return rate_sum / static_cast<double>(rate_count);
}

SpotSet find_spots(const InterferenceField& field, double ring_radius,
                   std::size_t frame, double projection_angle) {
  SpotSet spots;
  spots.expected = field.pattern.fringe_count;

  constexpr int kRingSamples = 2048;
  const std::vector<double> profile = ring_profile(field, frame, ring_radius, kRingSamples);
  const auto [min_it, max_it] = std::minmax_element(profile.begin(), profile.end());
  const double lo = *min_it, hi = *max_it;
  if (!(hi > lo)) return spots; // flat ring: no spots
  const double threshold = 0.5 * (lo + hi);

  // Contiguous above-threshold runs with wraparound; one centroid per run.
  std::vector<char> above(kRingSamples);
  for (int m = 0; m < kRingSamples; ++m) above[m] = profile[m] > threshold;
  int start = 0;
  while (start < kRingSamples && above[start]) ++start;
  if (start == kRingSamples) return spots; // everything above: no structure

  int m = start;
  for (int step = 0; step < kRingSamples; ++step) {
    m = (start + step) % kRingSamples;
    if (!above[m]) continue;
    double sum_w = 0.0, sum_sin = 0.0, sum_cos = 0.0;
    while (above[m]) {
      const double theta = kTwoPi * m / kRingSamples;
      const double w = profile[m] - lo;
      sum_w += w;
      sum_sin += w * std::sin(theta);
      sum_cos += w * std::cos(theta);
      above[m] = 0;
      m = (m + 1) % kRingSamples;
    }
    if (sum_w > 0.0) {
      const double theta_c = std::atan2(sum_sin, sum_cos);
      spots.theta.push_back(theta_c);
      spots.xy.emplace_back(ring_radius * std::cos(theta_c),
                            ring_radius * std::sin(theta_c) * std::cos(projection_angle));
    }
  }
  return spots;
}

double grid_power(const InterferenceField& field, std::size_t frame) {
  const std::vector<double>& data = field.frames[frame];
  const double total = std::accumulate(data.begin(), data.end(), 0.0);
  return total * field.dx() * field.dy();
}

} // namespace pcvi
