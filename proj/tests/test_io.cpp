#include <gtest/gtest.h>

#include <clocale>
#include <cstring>
#include <sstream>

#include "origami/config.hpp"
#include "origami/errors.hpp"
#include "origami/log_io.hpp"
#include "origami/numeric_text.hpp"
#include "origami/simulator.hpp"

namespace origami {
namespace {

TEST(Config, DemoRoundTrip) {
  const auto c = load_config(ORIGAMI_DEMO_CONFIG);
  EXPECT_EQ(c.protocol.kind, ProtocolKind::cyclic);
  EXPECT_EQ(c.filter.window, 21u);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.sensor.noise.seed, 42u);
  ASSERT_TRUE(c.sensor.adc.has_value());
  EXPECT_EQ(c.sensor.adc->bits, 10);
  const auto text = format_config(c);
  const auto again = parse_config(text);
  EXPECT_EQ(format_config(again), text);
  EXPECT_EQ(again.protocol.amplitude, c.protocol.amplitude);
  EXPECT_EQ(again.calibration.max_theta, c.calibration.max_theta);
}

TEST(Config, StrictParsing) {
  EXPECT_THROW(parse_config("[geometry]\nbogus=1\n"), FormatError);
  EXPECT_THROW(parse_config("[nowhere]\n"), FormatError);
  EXPECT_THROW(parse_config("[geometry]\nd=abc\n"), FormatError);
  EXPECT_THROW(parse_config("[geometry]\nd=0.02\n[geometry]\n"), FormatError);
  EXPECT_THROW(parse_config("d=0.02\n"), FormatError);
  EXPECT_THROW(parse_config("[protocol]\nkind=spiral\n"), FormatError);
  const auto c = parse_config("# comment\n[geometry]\nd=0.03\n");
  EXPECT_EQ(c.geometry.d, 0.03);
  EXPECT_EQ(c.geometry.base_length, 0.1);
  EXPECT_THROW(require_sections(c, {"geometry", "sensor"}), FormatError);
  EXPECT_NO_THROW(require_sections(c, {"geometry"}));
  EXPECT_FALSE(parse_config("[sensor]\nadc_bits=0\n").sensor.adc.has_value());
}

SensorLog sample_log(bool codes, bool truth) {
  SensorConfig s;
  s.noise.seed = 3;
  if (!codes) s.adc.reset();
  ActuationProtocol p;
  p.duration = 1.0;
  auto log = simulate_run(p, ManipulatorGeometry{}, s).log;
  if (!truth) log.truth.reset();
  return log;
}

void expect_same(const SensorLog& a, const SensorLog& b) {
  EXPECT_EQ(a.t, b.t);
  EXPECT_EQ(a.volts, b.volts);
  EXPECT_EQ(a.codes.has_value(), b.codes.has_value());
  if (a.codes && b.codes) {
    EXPECT_EQ(*a.codes, *b.codes);
  }
  ASSERT_EQ(a.truth.has_value(), b.truth.has_value());
  if (a.truth) {
    EXPECT_EQ(a.truth->tendon_lengths, b.truth->tendon_lengths);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a.truth->tips[i].x, b.truth->tips[i].x);
      EXPECT_EQ(a.truth->configs[i].phi, b.truth->configs[i].phi);
    }
  }
}

TEST(Log, RoundTripAllVariants) {
  for (bool codes : {false, true}) {
    for (bool truth : {false, true}) {
      const auto log = sample_log(codes, truth);
      std::stringstream ss;
      write_log(ss, log);
      std::stringstream copy(ss.str());
      const auto back = read_log(copy);
      expect_same(log, back);
      std::stringstream again;
      write_log(again, back);
      EXPECT_EQ(again.str(), ss.str());
    }
  }
}

TEST(Log, RejectsMalformedInput) {
  std::stringstream missing("t,v1,v2\n0,0,0\n");
  EXPECT_THROW(read_log(missing), FormatError);
  std::stringstream truncated("t,v1,v2,v3\n0,0,0,0\n0.02,0.1,0.");
  EXPECT_THROW(read_log(truncated), FormatError);
  std::stringstream short_row("t,v1,v2,v3\n0,0,0\n");
  EXPECT_THROW(read_log(short_row), FormatError);
  std::stringstream junk("t,v1,v2,v3\n0,0,x,0\n");
  EXPECT_THROW(read_log(junk), FormatError);
  std::stringstream empty("");
  EXPECT_THROW(read_log(empty), FormatError);
}

TEST(Trajectory, RoundTripAndLogFallback) {
  const auto log = sample_log(true, true);
  const auto traj = truth_trajectory(log);
  std::stringstream ss;
  write_trajectory(ss, traj);
  std::stringstream copy(ss.str());
  const auto back = read_trajectory(copy);
  ASSERT_EQ(back.size(), traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    EXPECT_EQ(back.points[i].x, traj.points[i].x);
    EXPECT_EQ(back.points[i].z, traj.points[i].z);
    EXPECT_EQ(back.configs[i].length, traj.configs[i].length);
  }
  std::stringstream logtext;
  write_log(logtext, log);
  std::stringstream copy2(logtext.str());
  const auto from_log = read_trajectory(copy2);
  EXPECT_EQ(from_log.points.back().y, traj.points.back().y);
  std::stringstream no_truth;
  write_log(no_truth, sample_log(true, false));
  std::stringstream copy3(no_truth.str());
  EXPECT_THROW(read_trajectory(copy3), FormatError);
}

TEST(Calibration, RoundTrip) {
  SensorConfig s;
  s.noise.seed = 8;
  SweepOptions o;
  o.averaging = 4;
  const auto rec = calibrate_from_sweep(ManipulatorGeometry{}, s, o);
  std::stringstream ss;
  write_calibration(ss, rec);
  std::stringstream copy(ss.str());
  const auto back = read_calibration(copy);
  ASSERT_EQ(back.tendons.size(), 3u);
  EXPECT_EQ(back.mode, rec.mode);
  EXPECT_EQ(back.rmse, rec.rmse);
  EXPECT_EQ(back.r_squared, rec.r_squared);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.tendons[i].map.a, rec.tendons[i].map.a);
    EXPECT_EQ(back.tendons[i].map.d, rec.tendons[i].map.d);
    EXPECT_EQ(back.tendons[i].range.r_min, rec.tendons[i].range.r_min);
    EXPECT_EQ(back.tendons[i].base_length, rec.tendons[i].base_length);
  }
  std::stringstream again;
  write_calibration(again, back);
  EXPECT_EQ(again.str(), ss.str());
}

TEST(Calibration, RejectsBadFiles) {
  std::stringstream wrong_version("# origami resistance-to-length calibration\nversion=2\n");
  EXPECT_THROW(read_calibration(wrong_version), FormatError);
  std::stringstream garbage("hello\n");
  EXPECT_THROW(read_calibration(garbage), FormatError);
}

TEST(NumericText, ShortestRoundTrip) {
  for (double v : {0.1, -2.5e-300, 1.0 / 3.0, 10.5, 0.0, 123456789.125}) {
    EXPECT_EQ(text::parse_double(text::format_double(v)).value(), v);
  }
  EXPECT_EQ(text::format_double(-0.0), "0");
  EXPECT_EQ(text::format_fixed(0.001, 9), "0.001000000");
  EXPECT_FALSE(text::parse_double("1,5").has_value());
  EXPECT_FALSE(text::parse_double("").has_value());
  EXPECT_FALSE(text::parse_double("2.5x").has_value());
  EXPECT_EQ(text::parse_double("+2.5").value(), 2.5);
}

TEST(NumericText, LocaleIndependent) {
  const char* old = std::setlocale(LC_ALL, nullptr);
  const std::string saved = old ? old : "C";
  const char* de = std::setlocale(LC_ALL, "de_DE.UTF-8");
  if (!de) de = std::setlocale(LC_NUMERIC, "fr_FR.UTF-8");
  EXPECT_EQ(text::format_double(2.5), "2.5");
  EXPECT_EQ(text::parse_double("2.5").value(), 2.5);
  const auto c = parse_config("[geometry]\nd=0.025\n");
  EXPECT_EQ(c.geometry.d, 0.025);
  std::setlocale(LC_ALL, saved.c_str());
}

}  // namespace
}  // namespace origami
