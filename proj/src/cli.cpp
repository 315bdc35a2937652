#include "origami/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "origami/config.hpp"
#include "origami/errors.hpp"
#include "origami/log_io.hpp"
#include "origami/numeric_text.hpp"
#include "origami/plot.hpp"

namespace origami::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config, log, calibration, out, plot;
  std::optional<std::uint64_t> seed;
  std::string reconstructed, truth;
};

RunConfig load(const Options& o) {
  RunConfig c = load_config(o.config);
  if (o.seed) {
    c.seed = *o.seed;
    c.sensor.noise.seed = *o.seed;
  }
  return c;
}

template <class Writer>
std::string render(Writer&& w) {
  std::ostringstream os;
  w(os);
  return os.str();
}

SensorLog load_log(const std::string& path) {
  std::istringstream is(read_file(path));
  return read_log(is);
}

CalibrationRecord load_calibration(const std::string& path) {
  std::istringstream is(read_file(path));
  return read_calibration(is);
}

Trajectory load_trajectory(const std::string& path) {
  std::istringstream is(read_file(path));
  return read_trajectory(is);
}

std::string error_report(const PathErrorReport& r) {
  std::ostringstream os;
  os << "rmse_m=" << text::format_fixed(r.rmse, 9) << '\n'
     << "max_m=" << text::format_fixed(r.max_error, 9) << '\n'
     << "rmse_x_m=" << text::format_fixed(r.rmse_x, 9) << '\n'
     << "rmse_y_m=" << text::format_fixed(r.rmse_y, 9) << '\n'
     << "rmse_z_m=" << text::format_fixed(r.rmse_z, 9) << '\n';
  return os.str();
}

CalibrationRecord calibrate_from_log(const SensorLog& log, const RunConfig& c) {
  if (!log.truth) throw FormatError("calibration log needs ground-truth tendon lengths");
  std::array<std::vector<CalibrationSample>, 3> samples;
  for (std::size_t i = 0; i < log.size(); ++i)
    for (std::size_t ch = 0; ch < 3; ++ch) {
      double r = 0.0;
      try {
        r = bridge_invert(log.volts[ch][i], c.sensor.bridge);
      } catch (const OutOfRange&) {
        continue;
      }
      samples[ch].push_back({r, log.truth->tendon_lengths[i][ch] - c.geometry.base_length});
    }
  const double L0 = c.geometry.base_length;
  return calibrate(samples, {L0, L0, L0}, c.calibration.fit);
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const RunConfig c = load(o);
  require_sections(c, {"geometry", "sensor", "protocol"});
  const GroundTruthRun run = simulate_run(c.protocol, c.geometry, c.sensor);
  const fs::path log_path = o.out.empty() ? fs::path(c.output.log) : fs::path(o.out);
  auto echo_path = log_path;
  echo_path += ".config";
  const std::string log_text = render([&](std::ostream& os) { write_log(os, run.log); });
  write_file_atomic(echo_path, format_config(c));
  write_file_atomic(log_path, log_text);
  out << "wrote " << run.log.size() << " samples to " << log_path.string() << '\n';
  return 0;
}

int cmd_calibrate(const Options& o, std::ostream& out) {
  const RunConfig c = load(o);
  CalibrationRecord rec;
  if (!o.log.empty()) {
    require_sections(c, {"geometry", "sensor"});
    rec = calibrate_from_log(load_log(o.log), c);
  } else {
    require_sections(c, {"geometry", "sensor", "calibration"});
    rec = calibrate_from_sweep(c.geometry, c.sensor, c.calibration);
  }
  const fs::path path = o.out.empty() ? fs::path(c.output.calibration) : fs::path(o.out);
  write_file_atomic(path, render([&](std::ostream& os) { write_calibration(os, rec); }));
  out << fit_report(rec);
  return 0;
}

int cmd_reconstruct(const Options& o, std::ostream& out) {
  const RunConfig c = load(o);
  require_sections(c, {"geometry", "sensor", "filter", "reconstruction"});
  const SensorLog log = load_log(o.log);
  const CalibrationRecord rec = load_calibration(o.calibration);
  const Trajectory traj = reconstruct_path(log, c.sensor.bridge, rec, c.reconstruction());
  const fs::path path = o.out.empty() ? fs::path(c.output.trajectory) : fs::path(o.out);
  write_file_atomic(path, render([&](std::ostream& os) { write_trajectory(os, traj); }));
  const std::string plot = o.plot.empty() ? c.output.plot : o.plot;
  if (!plot.empty()) {
    std::optional<Trajectory> ref;
    if (log.truth) ref = truth_trajectory(log);
    write_file_atomic(plot, trajectory_svg(traj, ref));
  }
  out << "wrote " << traj.size() << " poses to " << path.string() << '\n';
  return 0;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  const Trajectory a = load_trajectory(o.reconstructed);
  const Trajectory b = load_trajectory(o.truth);
  out << error_report(path_error(a, b));
  return 0;
}

int cmd_demo(const Options& o, std::ostream& out) {
  const RunConfig c = load(o);
  require_sections(c, {"geometry", "sensor", "protocol", "filter", "reconstruction", "calibration"});
  const fs::path dir = o.out.empty() ? fs::path("demo_out") : fs::path(o.out);
  fs::create_directories(dir);

  const GroundTruthRun run = simulate_run(c.protocol, c.geometry, c.sensor);
  const CalibrationRecord rec = calibrate_from_sweep(c.geometry, c.sensor, c.calibration);
  const Trajectory traj = reconstruct_path(run.log, c.sensor.bridge, rec, c.reconstruction());
  const Trajectory truth = truth_trajectory(run.log);
  const PathErrorReport err = path_error(traj, truth);
  const double diameter = trajectory_diameter(truth);
  const double bound = c.max_rmse_fraction * diameter;

  std::ostringstream report;
  report << error_report(err) << "diameter_m=" << text::format_fixed(diameter, 9) << '\n'
         << "bound_m=" << text::format_fixed(bound, 9) << '\n'
         << "within_bound=" << (err.rmse <= bound ? "true" : "false") << '\n';

  write_file_atomic(dir / "config.ini", format_config(c));
  write_file_atomic(dir / "log.csv", render([&](std::ostream& os) { write_log(os, run.log); }));
  write_file_atomic(dir / "calibration.txt",
                    render([&](std::ostream& os) { write_calibration(os, rec); }));
  write_file_atomic(dir / "trajectory.csv",
                    render([&](std::ostream& os) { write_trajectory(os, traj); }));
  write_file_atomic(dir / "trajectory.svg", trajectory_svg(traj, truth));
  write_file_atomic(dir / "report.txt", report.str());
  out << fit_report(rec) << report.str();
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tendon-sensing origami manipulator: simulate, calibrate, reconstruct, evaluate"};
  app.require_subcommand(1);
  Options o;

  auto* sim = app.add_subcommand("simulate", "Simulate a protocol and write a sensor log");
  sim->add_option("--config", o.config, "Run configuration")->required();
  sim->add_option("--out", o.out, "Log path (default: [output] log)");
  sim->add_option("--seed", o.seed, "Noise seed (overrides [run] seed)");

  auto* cal = app.add_subcommand("calibrate", "Fit the resistance-to-length maps");
  cal->add_option("--config", o.config, "Run configuration")->required();
  cal->add_option("--log", o.log, "Calibrate from a log with ground truth instead of a sweep");
  cal->add_option("--out", o.out, "Calibration path (default: [output] calibration)");
  cal->add_option("--seed", o.seed, "Noise seed (overrides [run] seed)");

  auto* rec = app.add_subcommand("reconstruct", "Reconstruct the end-effector path from a log");
  rec->add_option("--config", o.config, "Run configuration")->required();
  rec->add_option("--log", o.log, "Sensor log")->required();
  rec->add_option("--calibration", o.calibration, "Calibration file")->required();
  rec->add_option("--out", o.out, "Trajectory path (default: [output] trajectory)");
  rec->add_option("--plot", o.plot, "SVG plot path");

  auto* eval = app.add_subcommand("evaluate", "Compare a reconstructed path with ground truth");
  eval->add_option("reconstructed", o.reconstructed, "Reconstructed trajectory CSV")->required();
  eval->add_option("truth", o.truth, "Truth trajectory CSV or log with ground truth")->required();

  auto* demo = app.add_subcommand("demo", "simulate + calibrate + reconstruct + evaluate");
  demo->add_option("--config", o.config, "Run configuration")->required();
  demo->add_option("--out", o.out, "Output directory (default: demo_out)");
  demo->add_option("--seed", o.seed, "Noise seed (overrides [run] seed)");

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (sim->parsed()) return cmd_simulate(o, out);
    if (cal->parsed()) return cmd_calibrate(o, out);
    if (rec->parsed()) return cmd_reconstruct(o, out);
    if (eval->parsed()) return cmd_evaluate(o, out);
    if (demo->parsed()) return cmd_demo(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace origami::cli
