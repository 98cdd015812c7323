// pcvi -- command line front end for the phase-conjugating vortex
// interferometer engine: ledger simulation, pattern rendering, single-photon
// Monte Carlo, and rotation-sensing design.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"

#include "pcvi/chain.hpp"
#include "pcvi/config.hpp"
#include "pcvi/io.hpp"
#include "pcvi/mechanics.hpp"
#include "pcvi/pattern.hpp"
#include "pcvi/sampler.hpp"
#include "pcvi/scenario.hpp"

namespace fs = std::filesystem;
using namespace pcvi;

namespace {

std::string opt_int(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string();
}

void write_ledger_csv(const std::string& path, const SegmentLedger& ledger,
                      const std::vector<OpticalElement>& elements, double power) {
  const std::vector<ElementLoads> loads =
      ledger_loads(ledger, elements, BeamPower{power});

  CsvWriter csv(path);
  csv.row({"row_kind", "segment_index", "z_min_m", "z_max_m", "omega_f_rad_per_s",
           "omega_b_rad_per_s", "ell_f_hbar", "ell_b_hbar", "delta_omega_rad_per_s",
           "pattern_class", "theta_dot_rad_per_s", "element_index", "element_kind",
           "spin_before_rad_per_s", "spin_after_rad_per_s", "d_omega_applied_rad_per_s",
           "bias_applied_rad_per_s", "angular_impulse_hbar", "torque_n_m", "force_z_n"});

  for (std::size_t s = 0; s < ledger.segments.size(); ++s) {
    const Segment& seg = ledger.segments[s];
    csv.row({"segment", std::to_string(s), format_double(seg.z_min),
             format_double(seg.z_max), format_double(seg.fwd.omega()),
             format_double(seg.bwd.omega()), std::to_string(seg.fwd.ell_z),
             std::to_string(seg.bwd.ell_z), format_double(seg.delta_omega),
             to_string(seg.pattern.kind),
             seg.theta_dot ? format_double(*seg.theta_dot) : std::string(), "", "", "",
             "", "", "", "", "", ""});
  }
  for (const ElementEvent& ev : ledger.events) {
    const ElementLoads& load = loads[ev.element_index];
    csv.row({"element", "", "", "", format_double(ev.omega_before),
             format_double(ev.omega_after), std::to_string(ev.ell_in),
             std::to_string(ev.ell_out), "", "", "", std::to_string(ev.element_index),
             to_string(ev.kind), format_double(ev.spin_before),
             format_double(ev.spin_after), format_double(ev.d_omega_applied),
             format_double(ev.bias_applied),
             format_double(static_cast<double>(ev.ell_in - ev.ell_out)),
             format_double(load.torque), format_double(load.force_z)});
  }
}

int pick_segment(const SegmentLedger& ledger, int requested) {
  if (requested < 0 || requested >= static_cast<int>(ledger.segments.size()))
    throw ConfigError("segment index " + std::to_string(requested) +
                      " out of range (chain has " +
                      std::to_string(ledger.segments.size()) + " segments)");
  return requested;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
  const SetupConfig config = load_config(config_path);
  const Chain chain = build_chain(config);
  const SegmentLedger ledger = run_chain(chain);

  fs::create_directories(out_dir);
  const std::string ledger_path = (fs::path(out_dir) / "ledger.csv").string();
  write_ledger_csv(ledger_path, ledger, chain.elements, config.beam.power);

  ManifestBuilder manifest("simulate", config_to_json(config));
  manifest.add_output(ledger_path);
  manifest.add_result("net_delta_omega_rad_per_s", ledger.net_delta_omega);
  manifest.add_result("alternation_count", static_cast<long>(ledger.alternation_count));
  const std::string manifest_path = (fs::path(out_dir) / "manifest.json").string();
  manifest.write(manifest_path);

  std::cout << "segments: " << ledger.segments.size()
            << "  net delta_omega: " << format_double(ledger.net_delta_omega)
            << " rad/s  alternations: " << ledger.alternation_count << "\n"
            << "ledger: " << ledger_path << "\n";
  return 0;
}

int cmd_render(const std::string& config_path, const std::string& out_dir,
               int segment_index, std::optional<int> frames_override) {
  const SetupConfig config = load_config(config_path);
  if (!config.grid) throw ConfigError("config: grid section is required for render");
  const Chain chain = build_chain(config);
  const SegmentLedger ledger = run_chain(chain);
  const int seg_idx = pick_segment(ledger, segment_index);
  const Segment& segment = ledger.segments[seg_idx];

  GridSpec grid;
  grid.nx = config.grid->nx;
  grid.ny = config.grid->ny;
  grid.extent = config.grid->extent;
  grid.z_planes = config.grid->z_planes;
  const int n_frames = frames_override.value_or(config.grid->frames);
  grid.t_frames = make_time_frames(segment, n_frames);

  const std::vector<InterferenceField> fields =
      render(segment, ledger.geometry, grid, seg_idx);

  fs::create_directories(out_dir);
  ManifestBuilder manifest("render", config_to_json(config));

  // One normalization for the whole sequence so rotation stays visible.
  double peak = 0.0;
  for (const auto& field : fields)
    for (const auto& frame : field.frames)
      peak = std::max(peak, *std::max_element(frame.begin(), frame.end()));
  if (peak <= 0.0) peak = 1.0;

  for (std::size_t p = 0; p < fields.size(); ++p) {
    const InterferenceField& field = fields[p];
    for (std::size_t f = 0; f < field.frames.size(); ++f) {
      std::vector<double> scaled(field.frames[f]);
      for (double& v : scaled) v /= peak;
      char name[64];
      std::snprintf(name, sizeof(name), "frame_p%02zu_f%04zu.pgm", p, f);
      const std::string frame_path = (fs::path(out_dir) / name).string();
      write_pgm(frame_path, field.nx, field.ny, scaled, config.grid->pgm_bits);
      manifest.add_output(frame_path);
    }
  }

  const std::string spots_path = (fs::path(out_dir) / "spots.csv").string();
  {
    CsvWriter csv(spots_path);
    csv.row({"plane_index", "frame_index", "spot_index", "theta_rad", "x_m", "y_m"});
    if (segment.pattern.kind == PatternClass::Kind::Helical) {
      for (std::size_t p = 0; p < fields.size(); ++p) {
        const SpotSet spots = find_spots(fields[p], fields[p].peak_ring_radius(), 0);
        for (int s = 0; s < spots.found(); ++s) {
          csv.row({std::to_string(p), "0", std::to_string(s),
                   format_double(spots.theta[s]), format_double(spots.xy[s].first),
                   format_double(spots.xy[s].second)});
        }
      }
    }
  }
  manifest.add_output(spots_path);

  if (segment.pattern.kind == PatternClass::Kind::Helical) {
    manifest.add_result("spot_count_expected",
                        static_cast<long>(segment.pattern.fringe_count));
    if (n_frames >= 3) {
      manifest.add_result("theta_dot_estimate_rad_per_s",
                          estimate_rotation_rate(fields.front()));
    }
    if (segment.theta_dot)
      manifest.add_result("theta_dot_ledger_rad_per_s", *segment.theta_dot);
  } else {
    manifest.add_result("spot_finder", std::string("not-applicable"));
  }

  const std::string manifest_path = (fs::path(out_dir) / "manifest.json").string();
  manifest.write(manifest_path);
  std::cout << "rendered " << fields.size() << " plane(s) x " << n_frames
            << " frame(s) of segment " << seg_idx << " ("
            << to_string(segment.pattern.kind) << ")\n";
  return 0;
}

int cmd_mc(const std::string& config_path, const std::string& out_dir,
           std::optional<std::uint64_t> seed_override,
           std::optional<int> segment_override) {
  const SetupConfig config = load_config(config_path);
  if (!config.mc) throw ConfigError("config: mc section is required for mc");
  const Chain chain = build_chain(config);
  const SegmentLedger ledger = run_chain(chain);
  const int seg_idx =
      pick_segment(ledger, segment_override.value_or(config.mc->segment));
  const Segment& segment = ledger.segments[seg_idx];

  SamplerConfig sampler;
  sampler.n_photons = config.mc->n_photons;
  sampler.seed = seed_override.value_or(config.mc->seed);
  sampler.rate = config.mc->rate;
  sampler.plane_z = config.mc->plane_z;
  sampler.single_photon = config.mc->single_photon;
  sampler.which_way_tag = config.mc->which_way_tag;
  sampler.volumetric = config.mc->volumetric;
  sampler.windows = build_windows(*config.mc);

  const DetectionRecord record = sample_events(segment, ledger.geometry, sampler);
  const CoincidenceStats stats = coincidences(record, sampler.windows, config.mc->gate);

  fs::create_directories(out_dir);
  const std::string events_path = (fs::path(out_dir) / "events.csv").string();
  {
    CsvWriter csv(events_path);
    csv.row({"x_m", "y_m", "z_m", "t_s", "detector_id", "helix_index", "toroidal_index"});
    for (const DetectionEvent& ev : record.events) {
      csv.row({format_double(ev.x), format_double(ev.y), format_double(ev.z),
               format_double(ev.t), opt_int(ev.detector_id), opt_int(ev.helix_index),
               ev.toroidal_index ? std::to_string(*ev.toroidal_index) : std::string()});
    }
  }

  const std::string stats_path = (fs::path(out_dir) / "stats.csv").string();
  {
    CsvWriter csv(stats_path);
    csv.row({"stat", "window_a", "window_b", "value_dimensionless"});
    csv.row({"n_events", "", "", std::to_string(stats.n_events)});
    csv.row({"visibility_vhat", "", "", format_double(stats.visibility)});
    for (const auto& [id, count] : stats.counts)
      csv.row({"count", std::to_string(id), "", std::to_string(count)});
    for (const auto& [pair, count] : stats.coincidences)
      csv.row({"coincidences", std::to_string(pair.first), std::to_string(pair.second),
               std::to_string(count)});
    for (const auto& [pair, g2] : stats.g2_zero)
      csv.row({"g2_zero", std::to_string(pair.first), std::to_string(pair.second),
               std::isnan(g2) ? std::string("no-data") : format_double(g2)});
  }

  ManifestBuilder manifest("mc", config_to_json(config));
  manifest.set_seed(sampler.seed);
  manifest.add_output(events_path);
  manifest.add_output(stats_path);
  manifest.add_result("visibility_vhat", stats.visibility);
  manifest.add_result("n_events", static_cast<long>(stats.n_events));
  const std::string manifest_path = (fs::path(out_dir) / "manifest.json").string();
  manifest.write(manifest_path);

  std::cout << "sampled " << record.events.size() << " events (seed " << sampler.seed
            << "), visibility " << format_double(stats.visibility) << "\n";
  return 0;
}

int cmd_solve(const std::string& config_path, const std::string& out_dir, long target,
              std::optional<double> latitude) {
  SetupConfig config;
  if (!config_path.empty()) config = load_config(config_path);
  ScenarioConfig sc = config.scenario.value_or(ScenarioConfig{});
  if (target > 0) sc.target = target;
  if (latitude) sc.latitude = *latitude;

  DesignQuery query;
  query.target = sc.target;
  query.ell_max = sc.ell_max;
  query.n_max = sc.n_max;
  query.n_min = sc.n_min;
  const std::vector<DesignSolution> filtered = solve_design(query);

  // The unfiltered family (N = 0 allowed) is reported alongside.
  DesignQuery unfiltered_query = query;
  unfiltered_query.n_min = 0;
  const std::vector<DesignSolution> unfiltered = solve_design(unfiltered_query);

  fs::create_directories(out_dir);
  const std::string report_path = (fs::path(out_dir) / "report.csv").string();
  {
    CsvWriter csv(report_path);
    csv.row({"ell", "n_inverters", "delta_omega_rad_per_s", "theta_dot_rad_per_s",
             "spot_count", "transit_period_s", "alternation_count",
             "latitude_factor_cos"});
    for (const DesignSolution& sol : unfiltered) {
      const ScenarioResult res =
          earth_scenario(sol.ell, sol.n_inverters, sc.latitude, sc.frame_rate);
      csv.row({std::to_string(sol.ell), std::to_string(sol.n_inverters),
               format_double(res.delta_omega), format_double(res.theta_dot),
               std::to_string(res.spot_count), format_double(res.transit_period),
               std::to_string(res.alternation_count),
               format_double(res.latitude_factor)});
    }
  }

  std::cout << "design target M = " << sc.target << " with 1 <= ell <= " << sc.ell_max
            << ", " << sc.n_min << " <= N <= " << sc.n_max << "\n";
  if (filtered.empty()) std::cout << "  no solutions in the filtered domain\n";
  for (const DesignSolution& sol : filtered) {
    const ScenarioResult res =
        earth_scenario(sol.ell, sol.n_inverters, sc.latitude, sc.frame_rate);
    std::cout << "  ell=" << sol.ell << " N=" << sol.n_inverters << ": delta_omega="
              << format_double(res.delta_omega) << " rad/s, " << res.spot_count
              << " spots, transit ";
    if (std::isinf(res.transit_period))
      std::cout << "infinite (static pattern)";
    else
      std::cout << format_double(res.transit_period) << " s";
    std::cout << ", " << res.alternation_count << " alternations per round trip\n";
  }
  if (unfiltered.size() > filtered.size()) {
    std::cout << "  (unfiltered, N=0 allowed:";
    for (const DesignSolution& sol : unfiltered)
      std::cout << " (ell=" << sol.ell << ",N=" << sol.n_inverters << ")";
    std::cout << ")\n";
  }

  ManifestBuilder manifest("solve", config_to_json(config));
  manifest.add_output(report_path);
  manifest.add_result("n_solutions_filtered", static_cast<long>(filtered.size()));
  manifest.add_result("n_solutions_unfiltered", static_cast<long>(unfiltered.size()));
  const std::string manifest_path = (fs::path(out_dir) / "manifest.json").string();
  manifest.write(manifest_path);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"phase-conjugating vortex interferometer simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> frames;
  int segment = 0;
  std::optional<int> mc_segment;
  long target = 0;
  std::optional<double> latitude;

  auto* sim = app.add_subcommand("simulate", "run the element chain and write the ledger");
  sim->add_option("--config", config_path, "setup file (JSON)")->required();
  sim->add_option("--out", out_dir, "output directory");

  auto* ren = app.add_subcommand("render", "render one ledger segment to PGM frames");
  ren->add_option("--config", config_path, "setup file (JSON)")->required();
  ren->add_option("--out", out_dir, "output directory");
  ren->add_option("--segment", segment, "ledger segment index (0 = entrance)");
  ren->add_option("--frames", [&frames](const std::vector<std::string>& v) {
        frames = std::stoi(v.front());
        return true;
      }, "frame count override");

  auto* mc = app.add_subcommand("mc", "sample single-photon detection events");
  mc->add_option("--config", config_path, "setup file (JSON)")->required();
  mc->add_option("--out", out_dir, "output directory");
  mc->add_option("--seed", [&seed](const std::vector<std::string>& v) {
        seed = std::stoull(v.front());
        return true;
      }, "override the Monte Carlo seed");
  mc->add_option("--segment", [&mc_segment](const std::vector<std::string>& v) {
        mc_segment = std::stoi(v.front());
        return true;
      }, "ledger segment index override");

  auto* solve = app.add_subcommand("solve", "enumerate (ell, N) designs for a target multiplier");
  solve->add_option("--config", config_path, "setup file (JSON, optional)");
  solve->add_option("--out", out_dir, "output directory");
  solve->add_option("--target", target, "target multiplier M = 4 ell (N + 1/2)");
  solve->add_option("--latitude", [&latitude](const std::vector<std::string>& v) {
        latitude = std::stod(v.front());
        return true;
      }, "axis-to-rotation-axis angle, rad (enters cos)");

  // The frame_rate_rad_per_s field in the chain section models a rotating
  // vehicle by adding the rate to every element spin.
  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(config_path, out_dir);
    if (ren->parsed()) return cmd_render(config_path, out_dir, segment, frames);
    if (mc->parsed()) return cmd_mc(config_path, out_dir, seed, mc_segment);
    if (solve->parsed()) return cmd_solve(config_path, out_dir, target, latitude);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalQualityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
