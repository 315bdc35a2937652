#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "origami/errors.hpp"
#include "origami/kernels/kernels.hpp"
#include "origami/reconstruction.hpp"
#include "origami/simulator.hpp"
#include "test_support.hpp"

namespace origami {
namespace {

using testing::Draw;

SensorConfig ideal_sensor() {
  SensorConfig s;
  s.adc.reset();
  s.noise.sigma = 0.0;
  return s;
}

ReconstructionOptions options_for(const ManipulatorGeometry& g, std::size_t window) {
  ReconstructionOptions o;
  o.filter.window = window;
  o.d = g.d;
  o.n_links = g.n_links;
  return o;
}

TEST(Filter, Examples) {
  const std::vector<double> x{0.3, -1.0, 2.0, 5.0};
  EXPECT_EQ(filter_signal(x, {1}), x);
  const std::vector<double> dc(50, 2.37);
  EXPECT_EQ(filter_signal(dc, {21}), dc);
  EXPECT_EQ(filter_signal(std::vector<double>{0, 0, 3, 0, 0}, {3}),
            (std::vector<double>{0, 1, 1, 1, 0}));
  EXPECT_THROW(filter_signal(x, {2}), InvalidArgument);
  EXPECT_THROW(filter_signal(x, {0}), InvalidArgument);
  EXPECT_THROW(filter_signal(x, {5}), InvalidArgument);
}

TEST(Filter, PreservesDcForArbitraryLevels) {
  Draw draw(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<double> dc(37, draw.uniform(-10, 10));
    EXPECT_EQ(filter_signal(dc, {2 * static_cast<std::size_t>(draw.uniform(0, 18)) + 1}), dc);
  }
}

TEST(Reconstruct, StraightPoseIsFixedPoint) {
  const ManipulatorGeometry g;
  const auto s = ideal_sensor();
  ActuationProtocol p;
  p.kind = ProtocolKind::constant;
  p.duration = 2.0;
  const auto run = simulate_run(p, g, s);
  const auto calib = calibrate_from_sweep(g, s);
  const auto lengths = reconstruct_lengths(run.log, s.bridge, calib, options_for(g, 21));
  for (const auto& row : lengths.lengths)
    for (double l : row) EXPECT_NEAR(l, g.base_length, 1e-9);
  const auto traj = reconstruct_path(run.log, s.bridge, calib, options_for(g, 21));
  for (const auto& pt : traj.points) {
    EXPECT_NEAR(pt.x, 0.0, 1e-9);
    EXPECT_NEAR(pt.y, 0.0, 1e-9);
    EXPECT_NEAR(pt.z, g.base_length, 1e-9);
  }
}

TEST(Reconstruct, PerfectInformationCyclic) {
  const ManipulatorGeometry g;
  const auto s = ideal_sensor();
  const auto run = simulate_run(ActuationProtocol{}, g, s);
  const auto calib = calibrate_from_sweep(g, s);
  const auto traj = reconstruct_path(run.log, s.bridge, calib, options_for(g, 1));
  const auto err = path_error(traj, truth_trajectory(run.log));
  EXPECT_LE(err.rmse, 1e-6);
  EXPECT_LE(err.max_error, 1e-6);
}

TEST(Reconstruct, SaturatedLogIsRejected) {
  const ManipulatorGeometry g;
  const auto s = ideal_sensor();
  ActuationProtocol p;
  p.duration = 2.0;
  auto run = simulate_run(p, g, s);
  for (std::size_t i = 0; i < run.log.size(); i += 2) run.log.volts[0][i] = 4.9;
  const auto calib = calibrate_from_sweep(g, s);
  EXPECT_THROW(reconstruct_lengths(run.log, s.bridge, calib, options_for(g, 1)), OutOfRange);
}

TEST(Reconstruct, FewSaturatedSamplesHoldLastValid) {
  const ManipulatorGeometry g;
  const auto s = ideal_sensor();
  ActuationProtocol p;
  p.kind = ProtocolKind::constant;
  p.duration = 1.0;
  auto run = simulate_run(p, g, s);
  run.log.volts[1][0] = 4.9;
  run.log.volts[1][10] = -4.9;
  const auto calib = calibrate_from_sweep(g, s);
  const auto rec = reconstruct_lengths(run.log, s.bridge, calib, options_for(g, 1));
  EXPECT_EQ(rec.invalid[1], 2u);
  EXPECT_EQ(rec.invalid[0], 0u);
  EXPECT_NEAR(rec.lengths[0][1], g.base_length, 1e-9);
  EXPECT_EQ(rec.lengths[10][1], rec.lengths[9][1]);
}

TEST(Reconstruct, RequiresThreeTendons) {
  const ManipulatorGeometry g;
  const auto s = ideal_sensor();
  ActuationProtocol p;
  p.duration = 1.0;
  const auto run = simulate_run(p, g, s);
  auto calib = calibrate_from_sweep(g, s);
  calib.tendons.pop_back();
  EXPECT_THROW(reconstruct_lengths(run.log, s.bridge, calib, options_for(g, 1)), InvalidArgument);
}

TEST(Reconstruct, QuantizationFloorWithinJacobianBound) {
  // Without noise and filtering, each length error is bounded by half an ADC
  // step mapped through the local bridge and cubic slopes.
  const ManipulatorGeometry g;
  auto s = ideal_sensor();
  const auto calib = calibrate_from_sweep(g, s);
  s.adc = AdcModel{};
  const auto run = simulate_run(ActuationProtocol{}, g, s);
  const auto rec = reconstruct_lengths(run.log, s.bridge, calib, options_for(g, 1));
  const double half_step = 0.5 * s.adc->v_ref / 1023.0;
  const auto& truth = *run.log.truth;
  for (std::size_t i = 0; i < run.log.size(); ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      const double l = truth.tendon_lengths[i][k];
      const double r = length_to_resistance(l + g.tendon_slack_length, s.resistor);
      // dV/dR = v_in r4/(r4+R)^2, dl/dR = 1/lambda.
      const double dv_dr = s.bridge.v_in * s.bridge.r4 / std::pow(s.bridge.r4 + r, 2);
      const double bound = 1.05 * half_step / dv_dr / s.resistor.lambda;
      EXPECT_LE(std::abs(rec.lengths[i][k] - l), bound) << i << "," << k;
    }
  }
}

TEST(Reconstruct, ErrorGrowsWithNoise) {
  const ManipulatorGeometry g;
  const auto calib = calibrate_from_sweep(g, ideal_sensor());
  double prev = -1.0;
  for (double sigma : {0.0, 0.001, 0.005, 0.010}) {
    double total = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SensorConfig s;
      s.noise = {sigma, seed};
      const auto run = simulate_run(ActuationProtocol{}, g, s);
      const auto traj = reconstruct_path(run.log, s.bridge, calib, options_for(g, 21));
      total += path_error(traj, truth_trajectory(run.log)).rmse;
    }
    EXPECT_GE(total, prev) << sigma;
    prev = total;
  }
}

Trajectory make_traj(std::size_t n, Draw& draw) {
  Trajectory t;
  for (std::size_t i = 0; i < n; ++i) {
    t.t.push_back(0.02 * static_cast<double>(i));
    t.points.push_back({draw.uniform(-0.05, 0.05), draw.uniform(-0.05, 0.05), draw.uniform(0, 0.1)});
    t.configs.push_back({});
  }
  return t;
}

TEST(PathError, Examples) {
  Draw draw(32);
  const auto a = make_traj(50, draw);
  const auto zero = path_error(a, a);
  EXPECT_EQ(zero.rmse, 0.0);
  EXPECT_EQ(zero.max_error, 0.0);
  auto b = a;
  for (auto& p : b.points) p.x += 1e-3;
  const auto off = path_error(b, a);
  EXPECT_NEAR(off.rmse, 1e-3, 1e-15);
  EXPECT_NEAR(off.max_error, 1e-3, 1e-15);
  EXPECT_NEAR(off.rmse_x, 1e-3, 1e-15);
  EXPECT_NEAR(off.rmse_y, 0.0, 1e-15);
  EXPECT_NEAR(off.rmse_z, 0.0, 1e-15);
}

TEST(PathError, MatchesBruteForce) {
  Draw draw(33);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(draw.uniform(1, 300));
    const auto a = make_traj(n, draw);
    auto b = make_traj(n, draw);
    double sx = 0, sy = 0, sz = 0, mx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto d = a.points[i] - b.points[i];
      sx += d.x * d.x;
      sy += d.y * d.y;
      sz += d.z * d.z;
      mx = std::max(mx, d.norm());
    }
    const double nn = static_cast<double>(n);
    const auto r = path_error(a, b);
    EXPECT_NEAR(r.rmse, std::sqrt((sx + sy + sz) / nn), 1e-12);
    EXPECT_NEAR(r.rmse_x, std::sqrt(sx / nn), 1e-12);
    EXPECT_NEAR(r.rmse_y, std::sqrt(sy / nn), 1e-12);
    EXPECT_NEAR(r.rmse_z, std::sqrt(sz / nn), 1e-12);
    EXPECT_NEAR(r.max_error, mx, 1e-12);
  }
}

TEST(PathError, RejectsMisalignment) {
  Draw draw(34);
  const auto a = make_traj(10, draw);
  auto b = make_traj(11, draw);
  EXPECT_THROW(path_error(a, b), InvalidArgument);
  b = a;
  b.t[3] += 0.001;
  EXPECT_THROW(path_error(a, b), InvalidArgument);
}

TEST(Diameter, Examples) {
  Trajectory t;
  t.t = {0, 1, 2};
  t.points = {{0, 0, 0}, {0.03, 0, 0}, {0, 0.04, 0}};
  t.configs.resize(3);
  EXPECT_NEAR(trajectory_diameter(t), 0.05, 1e-15);
}

bool same_traj(const Trajectory& a, const std::vector<StreamingReconstructor::Sample>& s) {
  if (a.size() != s.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double lhs[] = {a.t[i], a.points[i].x, a.points[i].y, a.points[i].z,
                          a.configs[i].theta, a.configs[i].phi, a.configs[i].length};
    const double rhs[] = {s[i].t, s[i].point.x, s[i].point.y, s[i].point.z,
                          s[i].config.theta, s[i].config.phi, s[i].config.length};
    if (std::memcmp(lhs, rhs, sizeof lhs) != 0) return false;
  }
  return true;
}

TEST(Streaming, MatchesBatchBitForBit) {
  const ManipulatorGeometry g;
  SensorConfig s;
  s.noise = {0.005, 9};
  const auto run = simulate_run(ActuationProtocol{}, g, s);
  const auto calib = calibrate_from_sweep(g, ideal_sensor());
  for (std::size_t window : {1u, 3u, 21u}) {
    const auto opts = options_for(g, window);
    const auto batch = reconstruct_path(run.log, s.bridge, calib, opts);
    StreamingReconstructor stream(s.bridge, calib, opts);
    std::vector<StreamingReconstructor::Sample> out;
    for (std::size_t i = 0; i < run.log.size(); ++i) {
      auto got = stream.push(run.log.t[i], {run.log.volts[0][i], run.log.volts[1][i], run.log.volts[2][i]});
      out.insert(out.end(), got.begin(), got.end());
    }
    auto tail = stream.finish();
    out.insert(out.end(), tail.begin(), tail.end());
    EXPECT_TRUE(same_traj(batch, out)) << "window " << window;
  }
}

TEST(Streaming, RejectsNonIncreasingTime) {
  const ManipulatorGeometry g;
  const auto calib = calibrate_from_sweep(g, ideal_sensor());
  StreamingReconstructor stream(BridgeParams{}, calib, options_for(g, 3));
  stream.push(0.0, {0, 0, 0});
  EXPECT_THROW(stream.push(0.0, {0, 0, 0}), InvalidArgument);
}

TEST(Backends, ReconstructionIsBackendIndependent) {
  const ManipulatorGeometry g;
  SensorConfig s;
  s.noise = {0.005, 4};
  const auto run = simulate_run(ActuationProtocol{}, g, s);
  const auto calib = calibrate_from_sweep(g, ideal_sensor());
  kernels::set_backend(kernels::Backend::scalar);
  const auto ref = reconstruct_path(run.log, s.bridge, calib, options_for(g, 21));
  for (auto b : kernels::available_backends()) {
    kernels::set_backend(b);
    const auto got = reconstruct_path(run.log, s.bridge, calib, options_for(g, 21));
    for (std::size_t i = 0; i < ref.size(); ++i) {
      EXPECT_EQ(got.points[i].x, ref.points[i].x);
      EXPECT_EQ(got.points[i].z, ref.points[i].z);
    }
  }
  kernels::reset_backend();
}

}  // namespace
}  // namespace origami
