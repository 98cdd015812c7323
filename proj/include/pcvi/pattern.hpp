#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pcvi/chain.hpp"
#include "pcvi/vortex.hpp"

namespace pcvi {

struct GridSpec {
  int nx = 256;
  int ny = 256;
  double extent = 0.0;            // half-width, m; grid spans [-extent, extent]
  std::vector<double> z_planes;   // m
  std::vector<double> t_frames;   // s

  void validate() const;          // nx, ny >= 16, extent > 0
};

// Sampled intensity of one ledger segment at one z plane, over a stack of
// time frames sharing the grid. Pixel (ix, iy) is the cell center
// x = -extent + (ix + 1/2) dx, same for y.
struct InterferenceField {
  int nx = 0;
  int ny = 0;
  double extent = 0.0;
  double z = 0.0;
  std::vector<double> times;
  std::vector<std::vector<double>> frames; // frames[f][iy * nx + ix]
  PatternClass pattern;
  PhotonState fwd, bwd;
  BeamGeometry geom;
  int segment_index = 0;

  double dx() const { return 2.0 * extent / nx; }
  double dy() const { return 2.0 * extent / ny; }
  double pixel_x(int ix) const { return -extent + (ix + 0.5) * dx(); }
  double pixel_y(int iy) const { return -extent + (iy + 0.5) * dy(); }
  double value(std::size_t frame, int ix, int iy) const {
    return frames[frame][static_cast<std::size_t>(iy) * nx + ix];
  }
  // Bilinear sample at (x, y); clamps at the border.
  double sample(std::size_t frame, double x, double y) const;

  // Radius of the bright ring at this plane: d0 sqrt(|ell| L / 2).
  double peak_ring_radius() const;
};

struct SpotSet {
  std::vector<double> theta;                   // centroid angles, rad
  std::vector<std::pair<double, double>> xy;   // centroid positions, m
  int expected = 0;                            // 2|ell| for helical input
  int found() const { return static_cast<int>(theta.size()); }
  bool count_ok() const { return found() == expected; }
};

// Evaluates the closed-form intensity of the segment on the grid, one field
// per z plane. No numerical beam propagation is involved, so the frames are
// exact up to floating point. Rejects grids too coarse to resolve the
// azimuthal fringes at the bright ring (Nyquist check).
std::vector<InterferenceField> render(const Segment& segment, const BeamGeometry& geom,
                                      const GridSpec& grid, int segment_index = 0,
                                      double scale = 1.0);

// Frame times with an inter-frame pattern rotation of pi/(8 ell), which keeps
// any spin rate far from the aliasing limit. Static patterns get a 1 s cadence.
std::vector<double> make_time_frames(const Segment& segment, int n_frames,
                                     double t_start = 0.0);

// Signed pattern rotation rate from the frame stack, by azimuthal
// cross-correlation on the bright ring with sub-sample peak interpolation.
// The returned rate satisfies frame(theta, t) ~ frame(theta - rate dt, t + dt),
// matching the ledger convention theta_dot = delta_omega / (ell_f - ell_b).
// Needs >= 3 frames and a helical pattern; rejects when the inter-frame shift
// reaches the pi/(2 ell) ambiguity limit.
double estimate_rotation_rate(const InterferenceField& field);

// Locates the azimuthal intensity lobes on the given ring of one frame.
// projection_angle squashes the reported y coordinates by cos(angle) for an
// off-axis (elliptical) viewing geometry; 0 keeps the circle.
SpotSet find_spots(const InterferenceField& field, double ring_radius,
                   std::size_t frame = 0, double projection_angle = 0.0);

// Discrete transverse integral (sum * pixel area) of one frame.
double grid_power(const InterferenceField& field, std::size_t frame = 0);

} // namespace pcvi
