#include "pcvi/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace pcvi {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config: " + path + ": " + what);
}

const json& member(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double get_number(const json& j, const std::string& path, const char* key) {
  const json& v = member(j, path, key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double get_number_or(const json& j, const std::string& path, const char* key,
                     double fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get_number(j, path, key);
}

long get_integer(const json& j, const std::string& path, const char* key) {
  const json& v = member(j, path, key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<long>();
}

long get_integer_or(const json& j, const std::string& path, const char* key,
                    long fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get_integer(j, path, key);
}

bool get_bool_or(const json& j, const std::string& path, const char* key, bool fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_boolean()) fail(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

std::string get_string(const json& j, const std::string& path, const char* key) {
  const json& v = member(j, path, key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

BeamConfig parse_beam(const json& j) {
  BeamConfig beam;
  beam.wavelength = get_number(j, "beam", "wavelength_m");
  beam.d0 = get_number(j, "beam", "d0_m");
  beam.power = get_number_or(j, "beam", "power_w", 0.0);
  beam.ell = static_cast<int>(get_integer(j, "beam", "ell"));
  beam.amplitude = get_number_or(j, "beam", "amplitude", 1.0);
  if (!(beam.wavelength > 0.0)) fail("beam.wavelength_m", "must be positive");
  if (!(beam.d0 > 0.0)) fail("beam.d0_m", "must be positive");
  if (beam.power < 0.0) fail("beam.power_w", "must be non-negative");
  if (beam.amplitude < 0.0) fail("beam.amplitude", "must be non-negative");
  return beam;
}

ChainConfig parse_chain(const json& j) {
  ChainConfig chain;
  chain.frame_rate = get_number_or(j, "chain", "frame_rate_rad_per_s", 0.0);
  chain.exact_recoil = get_bool_or(j, "chain", "exact_recoil", false);
  const json& elems = member(j, "chain", "elements");
  if (!elems.is_array() || elems.empty()) fail("chain.elements", "expected a non-empty array");
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const std::string path = "chain.elements[" + std::to_string(i) + "]";
    const json& e = elems[i];
    if (!e.is_object()) fail(path, "expected an object");
    ElementConfig ec;
    const std::string kind = get_string(e, path, "kind");
    const auto parsed = element_kind_from_string(kind);
    if (!parsed) fail(path + ".kind", "unknown element kind '" + kind + "'");
    ec.kind = *parsed;
    ec.z = get_number(e, path, "z_m");
    ec.spin_rate = get_number_or(e, path, "spin_rate_rad_per_s", 0.0);
    ec.efficiency = get_number_or(e, path, "efficiency", 1.0);
    ec.moment_of_inertia = get_number_or(e, path, "moment_of_inertia_kg_m2", 5e-8);
    ec.bias_shift = get_number_or(e, path, "bias_shift_rad_per_s", 0.0);
    ec.split_ratio = get_number_or(e, path, "split_ratio", 0.5);
    if (ec.efficiency < 0.0 || ec.efficiency > 1.0)
      fail(path + ".efficiency", "must lie in [0, 1]");
    if (!(ec.moment_of_inertia > 0.0))
      fail(path + ".moment_of_inertia_kg_m2", "must be positive");
    chain.elements.push_back(ec);
  }
  return chain;
}

GridConfig parse_grid(const json& j) {
  GridConfig grid;
  grid.nx = static_cast<int>(get_integer_or(j, "grid", "nx", 256));
  grid.ny = static_cast<int>(get_integer_or(j, "grid", "ny", 256));
  grid.extent = get_number(j, "grid", "extent_m");
  const json& planes = member(j, "grid", "z_planes_m");
  if (!planes.is_array() || planes.empty())
    fail("grid.z_planes_m", "expected a non-empty array of numbers");
  for (std::size_t i = 0; i < planes.size(); ++i) {
    if (!planes[i].is_number())
      fail("grid.z_planes_m[" + std::to_string(i) + "]", "expected a number");
    grid.z_planes.push_back(planes[i].get<double>());
  }
  grid.frames = static_cast<int>(get_integer_or(j, "grid", "frames", 16));
  grid.pgm_bits = static_cast<int>(get_integer_or(j, "grid", "pgm_bits", 8));
  if (grid.nx < 16 || grid.ny < 16) fail("grid.nx", "grid must be at least 16x16");
  if (!(grid.extent > 0.0)) fail("grid.extent_m", "must be positive");
  if (grid.frames < 1) fail("grid.frames", "must be positive");
  if (grid.pgm_bits != 8 && grid.pgm_bits != 16) fail("grid.pgm_bits", "must be 8 or 16");
  return grid;
}

McConfig parse_mc(const json& j) {
  McConfig mc;
  mc.n_photons = static_cast<std::uint64_t>(get_integer(j, "mc", "n_photons"));
  mc.seed = static_cast<std::uint64_t>(get_integer(j, "mc", "seed"));
  mc.rate = get_number_or(j, "mc", "rate_hz", 1e6);
  mc.plane_z = get_number(j, "mc", "plane_z_m");
  mc.segment = static_cast<int>(get_integer_or(j, "mc", "segment", 0));
  mc.gate = get_number_or(j, "mc", "gate_s", 1e-9);
  mc.single_photon = get_bool_or(j, "mc", "single_photon", true);
  mc.which_way_tag = get_bool_or(j, "mc", "which_way_tag", false);
  mc.volumetric = get_bool_or(j, "mc", "volumetric", false);
  if (mc.n_photons < 1) fail("mc.n_photons", "must be at least 1");
  if (!(mc.rate > 0.0)) fail("mc.rate_hz", "must be positive");
  if (j.contains("windows")) {
    const json& windows = j.at("windows");
    if (!windows.is_array()) fail("mc.windows", "expected an array");
    for (std::size_t i = 0; i < windows.size(); ++i) {
      const std::string path = "mc.windows[" + std::to_string(i) + "]";
      const json& w = windows[i];
      WindowConfig wc;
      wc.id = static_cast<int>(get_integer(w, path, "id"));
      wc.side = get_string(w, path, "side");
      if (wc.side != "above" && wc.side != "below")
        fail(path + ".side", "must be 'above' or 'below'");
      wc.theta_min = get_number(w, path, "theta_min_rad");
      wc.theta_max = get_number(w, path, "theta_max_rad");
      wc.r_min = get_number(w, path, "r_min_m");
      wc.r_max = get_number(w, path, "r_max_m");
      mc.windows.push_back(wc);
    }
  }
  return mc;
}

ScenarioConfig parse_scenario(const json& j) {
  ScenarioConfig sc;
  sc.target = get_integer_or(j, "scenario", "target", 24);
  sc.ell_max = static_cast<int>(get_integer_or(j, "scenario", "ell_max", 10));
  sc.n_max = static_cast<int>(get_integer_or(j, "scenario", "n_max", 10));
  sc.n_min = static_cast<int>(get_integer_or(j, "scenario", "n_min", 1));
  sc.latitude = get_number_or(j, "scenario", "latitude_rad", 0.0);
  sc.frame_rate = get_number_or(j, "scenario", "frame_rate_rad_per_s", kEarthSpinRate);
  return sc;
}

} // namespace

SetupConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  SetupConfig config;
  config.beam = parse_beam(member(j, "", "beam"));
  if (j.contains("chain")) config.chain = parse_chain(j.at("chain"));
  if (j.contains("grid")) config.grid = parse_grid(j.at("grid"));
  if (j.contains("mc")) config.mc = parse_mc(j.at("mc"));
  if (j.contains("scenario")) config.scenario = parse_scenario(j.at("scenario"));
  return config;
}

SetupConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return parse_config(j);
}

json config_to_json(const SetupConfig& config) {
  json j;
  j["beam"] = {{"wavelength_m", config.beam.wavelength},
               {"d0_m", config.beam.d0},
               {"power_w", config.beam.power},
               {"ell", config.beam.ell},
               {"amplitude", config.beam.amplitude}};
  if (config.chain) {
    json elems = json::array();
    for (const ElementConfig& e : config.chain->elements) {
      elems.push_back({{"kind", to_string(e.kind)},
                       {"z_m", e.z},
                       {"spin_rate_rad_per_s", e.spin_rate},
                       {"efficiency", e.efficiency},
                       {"moment_of_inertia_kg_m2", e.moment_of_inertia},
                       {"bias_shift_rad_per_s", e.bias_shift},
                       {"split_ratio", e.split_ratio}});
    }
    j["chain"] = {{"frame_rate_rad_per_s", config.chain->frame_rate},
                  {"exact_recoil", config.chain->exact_recoil},
                  {"elements", std::move(elems)}};
  }
  if (config.grid) {
    j["grid"] = {{"nx", config.grid->nx},
                 {"ny", config.grid->ny},
                 {"extent_m", config.grid->extent},
                 {"z_planes_m", config.grid->z_planes},
                 {"frames", config.grid->frames},
                 {"pgm_bits", config.grid->pgm_bits}};
  }
  if (config.mc) {
    json windows = json::array();
    for (const WindowConfig& w : config.mc->windows) {
      windows.push_back({{"id", w.id},
                         {"side", w.side},
                         {"theta_min_rad", w.theta_min},
                         {"theta_max_rad", w.theta_max},
                         {"r_min_m", w.r_min},
                         {"r_max_m", w.r_max}});
    }
    j["mc"] = {{"n_photons", config.mc->n_photons},
               {"seed", config.mc->seed},
               {"rate_hz", config.mc->rate},
               {"plane_z_m", config.mc->plane_z},
               {"segment", config.mc->segment},
               {"gate_s", config.mc->gate},
               {"single_photon", config.mc->single_photon},
               {"which_way_tag", config.mc->which_way_tag},
               {"volumetric", config.mc->volumetric},
               {"windows", std::move(windows)}};
  }
  if (config.scenario) {
    j["scenario"] = {{"target", config.scenario->target},
                     {"ell_max", config.scenario->ell_max},
                     {"n_max", config.scenario->n_max},
                     {"n_min", config.scenario->n_min},
                     {"latitude_rad", config.scenario->latitude},
                     {"frame_rate_rad_per_s", config.scenario->frame_rate}};
  }
  return j;
}

Chain build_chain(const SetupConfig& config) {
  if (!config.chain) throw ConfigError("config: chain section is required for this command");
  Chain chain;
  chain.geometry.d0 = config.beam.d0;
  chain.geometry.wavelength = config.beam.wavelength;
  chain.exact_recoil = config.chain->exact_recoil;
  const double carrier = kTwoPi * kSpeedOfLight / config.beam.wavelength;
  chain.input =
      make_photon(carrier, config.beam.ell, Direction::ForwardZ, config.beam.amplitude);
  for (const ElementConfig& e : config.chain->elements) {
    OpticalElement elem;
    elem.kind = e.kind;
    elem.z_pos = e.z;
    elem.spin_rate = e.spin_rate + config.chain->frame_rate;
    elem.efficiency = e.efficiency;
    elem.moment_of_inertia = e.moment_of_inertia;
    elem.bias_shift = e.bias_shift;
    elem.split_ratio = e.split_ratio;
    chain.elements.push_back(elem);
  }
  chain.validate();
  return chain;
}

std::vector<DetectorWindow> build_windows(const McConfig& mc) {
  std::vector<DetectorWindow> windows;
  for (const WindowConfig& w : mc.windows) {
    DetectorWindow dw;
    dw.id = w.id;
    dw.theta_min = w.theta_min;
    dw.theta_max = w.theta_max;
    dw.r_min = w.r_min;
    dw.r_max = w.r_max;
    dw.side = (w.side == "above") ? BeamsplitterSide::Above : BeamsplitterSide::Below;
    windows.push_back(dw);
  }
  return windows;
}

} // namespace pcvi
