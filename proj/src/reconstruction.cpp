#include "origami/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "origami/errors.hpp"
#include "origami/kernels/formulas.hpp"
#include "origami/kernels/kernels.hpp"

namespace origami {
namespace {

namespace f = kernels::formula;

void check_calibration(const CalibrationRecord& calib) {
  validate(calib);
  if (calib.tendons.size() != 3)
    throw InvalidArgument("calibration has " + std::to_string(calib.tendons.size()) +
                          " tendons, log has 3 channels");
}

void check_window(const FilterSpec& spec, std::size_t n) {
  if (spec.window == 0 || spec.window % 2 == 0)
    throw InvalidArgument("filter window must be odd and >= 1");
  if (spec.window > n)
    throw InvalidArgument("filter window " + std::to_string(spec.window) +
                          " exceeds series length " + std::to_string(n));
}

void check_invalid(const std::array<std::size_t, 3>& invalid, std::size_t n, double max_fraction) {
  for (std::size_t ch = 0; ch < 3; ++ch) {
    if (static_cast<double>(invalid[ch]) > max_fraction * static_cast<double>(n))
      throw OutOfRange("channel " + std::to_string(ch + 1) + ": " +
                       std::to_string(invalid[ch]) + " of " + std::to_string(n) +
                       " bridge samples outside the reachable band");
  }
}

double to_length(double mapped, const TendonCalibration& t, LengthMode mode) {
  return mode == LengthMode::delta ? t.base_length + mapped : mapped;
}

std::pair<ConfigState, Point3> solve_pose(const std::array<double, 3>& l,
                                          const ReconstructionOptions& o) {
  const ConfigState c = joint_to_config(TendonLengths{l, o.d});
  return {c, forward_kinematics_discrete(c, o.n_links)};
}

}  // namespace

double SensorLog::sample_rate() const {
  if (t.size() < 2) return 0.0;
  return static_cast<double>(t.size() - 1) / (t.back() - t.front());
}

void validate(const SensorLog& log) {
  const std::size_t n = log.t.size();
  if (n == 0) throw InvalidArgument("sensor log is empty");
  for (const auto& ch : log.volts)
    if (ch.size() != n) throw InvalidArgument("sensor log channels differ in length");
  if (log.codes)
    for (const auto& ch : *log.codes)
      if (ch.size() != n) throw InvalidArgument("sensor log code channels differ in length");
  if (log.truth) {
    const auto& g = *log.truth;
    if (g.tendon_lengths.size() != n || g.configs.size() != n || g.tips.size() != n)
      throw InvalidArgument("ground-truth channels differ in length from sensor channels");
  }
  for (std::size_t i = 1; i < n; ++i)
    if (!(log.t[i] > log.t[i - 1])) throw InvalidArgument("log timestamps must increase");
}

void validate(const Trajectory& traj) {
  if (traj.points.size() != traj.t.size() || traj.configs.size() != traj.t.size())
    throw InvalidArgument("trajectory series differ in length");
  for (std::size_t i = 1; i < traj.t.size(); ++i)
    if (!(traj.t[i] > traj.t[i - 1])) throw InvalidArgument("trajectory timestamps must increase");
}

std::vector<double> filter_signal(std::span<const double> series, const FilterSpec& spec) {
  check_window(spec, series.size());
  std::vector<double> out(series.size());
  kernels::moving_average(series, spec.window, out);
  return out;
}

LengthReconstruction reconstruct_lengths(const SensorLog& log, const BridgeParams& bridge,
                                         const CalibrationRecord& calib,
                                         const ReconstructionOptions& options) {
  validate(log);
  validate(bridge);
  check_calibration(calib);
  const std::size_t n = log.size();
  check_window(options.filter, n);

  LengthReconstruction out;
  out.lengths.resize(n);
  std::vector<double> filtered(n), resistance(n), mapped(n);
  std::vector<std::uint8_t> valid(n);
  for (std::size_t ch = 0; ch < 3; ++ch) {
    const auto& tc = calib.tendons[ch];
    kernels::moving_average(log.volts[ch], options.filter.window, filtered);
    out.invalid[ch] = kernels::bridge_invert(filtered, bridge.r1, bridge.r2, bridge.r4,
                                             bridge.v_in, resistance, valid);
    double last = tc.range.r_max;
    for (std::size_t i = 0; i < n; ++i) {
      if (valid[i]) last = resistance[i];
      else resistance[i] = last;
    }
    kernels::cubic_map(resistance, cubic_params(tc, options.clamp), mapped);
    for (std::size_t i = 0; i < n; ++i) out.lengths[i][ch] = to_length(mapped[i], tc, options.mode);
  }
  check_invalid(out.invalid, n, options.max_invalid_fraction);
  return out;
}

Trajectory reconstruct_path(const SensorLog& log, const BridgeParams& bridge,
                            const CalibrationRecord& calib, const ReconstructionOptions& options) {
  const LengthReconstruction lengths = reconstruct_lengths(log, bridge, calib, options);
  Trajectory traj;
  traj.t = log.t;
  traj.points.reserve(log.size());
  traj.configs.reserve(log.size());
  for (const auto& l : lengths.lengths) {
    const auto [c, p] = solve_pose(l, options);
    traj.configs.push_back(c);
    traj.points.push_back(p);
  }
  return traj;
}

PathErrorReport path_error(const Trajectory& reconstructed, const Trajectory& truth) {
  validate(reconstructed);
  validate(truth);
  const std::size_t n = reconstructed.size();
  if (n != truth.size())
    throw InvalidArgument("trajectory lengths differ: " + std::to_string(n) + " vs " +
                          std::to_string(truth.size()));
  if (n == 0) throw InvalidArgument("path_error: empty trajectories");
  for (std::size_t i = 0; i < n; ++i) {
    const double ta = reconstructed.t[i], tb = truth.t[i];
    if (std::abs(ta - tb) > 1e-9 * std::max(1.0, std::abs(tb)))
      throw InvalidArgument("trajectory timestamps are not aligned at sample " +
                            std::to_string(i));
  }
  auto split = [](const std::vector<Point3>& pts) {
    std::array<std::vector<double>, 3> xyz;
    for (auto& v : xyz) v.reserve(pts.size());
    for (const auto& p : pts) {
      xyz[0].push_back(p.x);
      xyz[1].push_back(p.y);
      xyz[2].push_back(p.z);
    }
    return xyz;
  };
  const auto a = split(reconstructed.points);
  const auto b = split(truth.points);
  const auto s = kernels::squared_error_sums({a[0], a[1], a[2]}, {b[0], b[1], b[2]});
  const double nn = static_cast<double>(n);
  PathErrorReport r;
  r.rmse = std::sqrt((s.x + s.y + s.z) / nn);
  r.max_error = std::sqrt(s.max_sq);
  r.rmse_x = std::sqrt(s.x / nn);
  r.rmse_y = std::sqrt(s.y / nn);
  r.rmse_z = std::sqrt(s.z / nn);
  return r;
}

Trajectory truth_trajectory(const SensorLog& log) {
  validate(log);
  if (!log.truth) throw InvalidArgument("log has no ground-truth channels");
  return Trajectory{log.t, log.truth->tips, log.truth->configs};
}

double trajectory_diameter(const Trajectory& traj) {
  double best = 0.0;
  for (std::size_t i = 0; i < traj.points.size(); ++i)
    for (std::size_t j = i + 1; j < traj.points.size(); ++j)
      best = std::max(best, (traj.points[i] - traj.points[j]).norm());
  return best;
}

StreamingReconstructor::StreamingReconstructor(BridgeParams bridge, CalibrationRecord calib,
                                               ReconstructionOptions options)
    : bridge_(bridge), calib_(std::move(calib)), options_(options) {
  validate(bridge_);
  check_calibration(calib_);
  if (options_.filter.window == 0 || options_.filter.window % 2 == 0)
    throw InvalidArgument("filter window must be odd and >= 1");
  for (std::size_t ch = 0; ch < 3; ++ch) last_valid_[ch] = calib_.tendons[ch].range.r_max;
}

std::vector<StreamingReconstructor::Sample> StreamingReconstructor::push(
    double t, const std::array<double, 3>& volts) {
  const std::size_t half = options_.filter.window / 2;
  if (pushed_ > 0 && !(t > last_t_)) throw InvalidArgument("stream timestamps must increase");
  if (pushed_ == 0) {
    for (std::size_t ch = 0; ch < 3; ++ch) window_[ch].assign(half, volts[ch]);
  }
  for (std::size_t ch = 0; ch < 3; ++ch) window_[ch].push_back(volts[ch]);
  times_.push_back(t);
  last_t_ = t;
  last_volts_ = volts;
  ++pushed_;

  std::vector<Sample> out;
  if (auto s = emit()) out.push_back(*s);
  return out;
}

std::vector<StreamingReconstructor::Sample> StreamingReconstructor::finish() {
  if (pushed_ < options_.filter.window)
    throw InvalidArgument("filter window " + std::to_string(options_.filter.window) +
                          " exceeds series length " + std::to_string(pushed_));
  std::vector<Sample> out;
  while (emitted_ < pushed_) {
    for (std::size_t ch = 0; ch < 3; ++ch) window_[ch].push_back(last_volts_[ch]);
    if (auto s = emit()) out.push_back(*s);
  }
  check_invalid(invalid_, pushed_, options_.max_invalid_fraction);
  return out;
}

std::optional<StreamingReconstructor::Sample> StreamingReconstructor::emit() {
  const std::size_t w = options_.filter.window;
  if (window_[0].size() < w) return std::nullopt;
  const double ratio = bridge_.r2 / (bridge_.r1 + bridge_.r2);
  std::array<double, 3> lengths{};
  std::vector<double> buf(w);
  for (std::size_t ch = 0; ch < 3; ++ch) {
    std::copy(window_[ch].begin(), window_[ch].end(), buf.begin());
    window_[ch].pop_front();
    const double v = f::centered_mean(buf.data(), w, buf[w / 2]);
    const double k = f::bridge_k(v, ratio, bridge_.v_in);
    if (k > 0.0 && k < 1.0) {
      last_valid_[ch] = f::bridge_resistance(k, bridge_.r4);
    } else {
      ++invalid_[ch];
    }
    const auto& tc = calib_.tendons[ch];
    double x = f::normalized(last_valid_[ch], tc.range.r_min, tc.range.r_max - tc.range.r_min);
    if (options_.clamp) x = f::clamp01(x);
    const double mapped = tc.map.offset + tc.map.scale * f::horner(x, tc.map.a, tc.map.b,
                                                                   tc.map.c, tc.map.d);
    lengths[ch] = to_length(mapped, tc, options_.mode);
  }
  Sample s;
  s.t = times_.front();
  times_.pop_front();
  std::tie(s.config, s.point) = solve_pose(lengths, options_);
  ++emitted_;
  return s;
}

}  // namespace origami
