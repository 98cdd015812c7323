#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pcvi/chain.hpp"
#include "pcvi/sampler.hpp"

namespace pcvi {

struct BeamConfig {
  double wavelength = kDefaultWavelength; // m
  double d0 = 1e-3;                       // m
  double power = 0.0;                     // W
  int ell = 1;
  double amplitude = 1.0;
};

struct ElementConfig {
  ElementKind kind = ElementKind::DovePrism;
  double z = 0.0;                    // m
  double spin_rate = 0.0;            // rad/s
  double efficiency = 1.0;
  double moment_of_inertia = 5e-8;   // kg m^2
  double bias_shift = 0.0;           // rad/s
  double split_ratio = 0.5;
};

struct ChainConfig {
  double frame_rate = 0.0;           // rad/s, added to every element spin
  bool exact_recoil = false;
  std::vector<ElementConfig> elements;
};

struct GridConfig {
  int nx = 256;
  int ny = 256;
  double extent = 4e-3;              // m
  std::vector<double> z_planes;      // m
  int frames = 16;
  int pgm_bits = 8;                  // 8 or 16
};

struct WindowConfig {
  int id = 0;
  std::string side = "above";
  double theta_min = 0.0;
  double theta_max = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;
};

struct McConfig {
  std::uint64_t n_photons = 100000;
  std::uint64_t seed = 1;
  double rate = 1e6;                 // Hz
  double plane_z = 0.0;              // m
  int segment = 0;
  double gate = 1e-9;                // s
  bool single_photon = true;
  bool which_way_tag = false;
  bool volumetric = false;
  std::vector<WindowConfig> windows;
};

struct ScenarioConfig {
  long target = 24;
  int ell_max = 10;
  int n_max = 10;
  int n_min = 1;
  double latitude = 0.0;             // rad
  double frame_rate = kEarthSpinRate;
};

struct SetupConfig {
  BeamConfig beam;
  std::optional<ChainConfig> chain;
  std::optional<GridConfig> grid;
  std::optional<McConfig> mc;
  std::optional<ScenarioConfig> scenario;
};

// Parse/serialize with per-field diagnostics ("chain.elements[2].kind: ...").
SetupConfig parse_config(const nlohmann::json& j);
SetupConfig load_config(const std::string& path);
nlohmann::json config_to_json(const SetupConfig& config);

// Assembles the runnable chain: elements sorted as given, frame rate applied,
// geometry from the beam section, forward input photon at the carrier.
Chain build_chain(const SetupConfig& config);

std::vector<DetectorWindow> build_windows(const McConfig& mc);

} // namespace pcvi
