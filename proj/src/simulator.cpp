#include "origami/simulator.hpp"

#include <cmath>
#include <random>
#include <string>

#include "origami/errors.hpp"
#include "origami/kernels/kernels.hpp"

namespace origami {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t channel) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(channel)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (std::uint64_t{words[1]} << 32) | words[0];
}

std::size_t first_masked(const std::array<bool, 3>& mask) {
  for (std::size_t i = 0; i < 3; ++i)
    if (mask[i]) return i;
  throw InvalidArgument("protocol mask selects no tendon");
}

std::vector<double> ideal_bridge_volts(const std::vector<double>& active_lengths,
                                       const SensorConfig& s) {
  std::vector<double> r(active_lengths.size()), v(active_lengths.size());
  kernels::length_to_resistance(active_lengths, s.resistor.lambda, s.resistor.r_contact, r);
  kernels::bridge_forward(r, s.bridge.r1, s.bridge.r2, s.bridge.r4, s.bridge.v_in, v);
  return v;
}

}  // namespace

void validate(const ManipulatorGeometry& g) {
  if (!(g.base_length > 0.0) || !(g.d > 0.0) || !(g.tendon_slack_length > 0.0) ||
      !std::isfinite(g.base_length) || !std::isfinite(g.d) ||
      !std::isfinite(g.tendon_slack_length))
    throw InvalidArgument("geometry lengths must be positive");
  if (g.n_links < 1) throw InvalidArgument("geometry needs n_links >= 1");
}

void validate(const ActuationProtocol& p) {
  if (!(p.duration > 0.0) || !(p.sample_rate > 0.0) || !std::isfinite(p.duration) ||
      !std::isfinite(p.sample_rate))
    throw InvalidArgument("protocol duration and sample rate must be > 0");
  if (!(p.frequency >= 0.0) || !std::isfinite(p.frequency))
    throw InvalidArgument("protocol frequency must be >= 0");
  if (!std::isfinite(p.phase_shift) || !std::isfinite(p.amplitude))
    throw InvalidArgument("protocol phase and amplitude must be finite");
  if (p.kind == ProtocolKind::increasing_amplitude && p.frequency <= 0.0)
    throw InvalidArgument("increasing-amplitude protocol needs frequency > 0");
  if (p.kind != ProtocolKind::constant) first_masked(p.mask);
}

void validate(const SensorConfig& s) {
  validate(s.resistor);
  validate(s.bridge);
  if (s.adc) validate(*s.adc);
  validate(s.noise);
  if (!std::isfinite(s.v_offset)) throw InvalidArgument("voltage offset must be finite");
}

std::size_t sample_count(const ActuationProtocol& p) {
  validate(p);
  return static_cast<std::size_t>(std::llround(p.duration * p.sample_rate));
}

std::array<double, 3> single_tendon_bend(double theta, std::size_t tendon,
                                         const ManipulatorGeometry& g) {
  if (tendon > 2) throw InvalidArgument("tendon index must be 0, 1 or 2");
  const ConfigState c{theta, normalize_angle(tendon_station(tendon)), g.base_length};
  const TendonLengths l = config_to_joint(c, g.d);
  return {g.base_length - l.l[0], g.base_length - l.l[1], g.base_length - l.l[2]};
}

CommandSeries protocol_to_commands(const ActuationProtocol& p, const ManipulatorGeometry& g) {
  validate(g);
  const std::size_t n = sample_count(p);
  CommandSeries cs;
  cs.t.resize(n);
  cs.pulls.assign(n, {0.0, 0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) cs.t[k] = static_cast<double>(k) / p.sample_rate;

  switch (p.kind) {
    case ProtocolKind::constant:
      break;
    case ProtocolKind::cyclic: {
      // Pull amplitude 2 d theta gives a constant bend theta for a 2pi/3 shift.
      const double pull = 2.0 * g.d * p.amplitude;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < 3; ++i)
          if (p.mask[i]) {
            const double arg = kTwoPi * p.frequency * cs.t[k] - static_cast<double>(i) * p.phase_shift;
            cs.pulls[k][i] = 0.5 * pull * (1.0 - std::cos(arg));
          }
      break;
    }
    case ProtocolKind::increasing_amplitude: {
      const std::size_t tendon = first_masked(p.mask);
      for (std::size_t k = 0; k < n; ++k) {
        const double cycles = cs.t[k] * p.frequency;
        const auto cycle = static_cast<std::size_t>(std::floor(cycles));
        if (cycle >= kIncreasingPeaks.size()) continue;
        const double theta = kIncreasingPeaks[cycle] * 0.5 * (1.0 - std::cos(kTwoPi * cycles));
        cs.pulls[k] = single_tendon_bend(theta, tendon, g);
      }
      break;
    }
    case ProtocolKind::tendon_combination:
      for (auto& row : cs.pulls)
        for (std::size_t i = 0; i < 3; ++i) row[i] = p.mask[i] ? p.amplitude : 0.0;
      break;
  }
  return cs;
}

PlantState plant_step(const std::array<double, 3>& pulls, const ManipulatorGeometry& g) {
  validate(g);
  TendonLengths raw;
  raw.d = g.d;
  for (std::size_t i = 0; i < 3; ++i) {
    raw.l[i] = g.base_length - pulls[i];
    if (!(raw.l[i] > 0.0))
      throw Infeasible("command collapses tendon " + std::to_string(i + 1));
  }
  PlantState s;
  s.config = joint_to_config(raw);
  if (!(s.config.theta * g.d < s.config.length))
    throw Infeasible("commanded bend exceeds theta * d < L");
  try {
    s.tendons = config_to_joint(s.config, g.d);
  } catch (const InvalidArgument& e) {
    throw Infeasible(e.what());
  }
  s.tip = forward_kinematics_discrete(s.config, g.n_links);
  return s;
}

ChannelMeasurement measure_channel(std::span<const double> ideal_volts, const SensorConfig& s,
                                   std::size_t channel, std::uint64_t stream) {
  validate(s);
  ChannelMeasurement m;
  m.volts.assign(ideal_volts.begin(), ideal_volts.end());
  if (s.adc) {
    std::vector<double> shifted(m.volts.size());
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = m.volts[i] + s.v_offset;
    m.codes.resize(shifted.size());
    kernels::adc_quantize(shifted, s.adc->v_ref, s.adc->bits, m.codes, m.volts);
    for (double& v : m.volts) v -= s.v_offset;
  }
  const NoiseModel noise{s.noise.sigma, derive_seed(s.noise.seed, stream, channel)};
  m.volts = add_noise(m.volts, noise);
  return m;
}

GroundTruthRun simulate_run(const ActuationProtocol& p, const ManipulatorGeometry& g,
                            const SensorConfig& s) {
  validate(s);
  const CommandSeries cs = protocol_to_commands(p, g);
  const std::size_t n = cs.t.size();

  GroundTruthRun run;
  run.protocol = p;
  run.geometry = g;
  run.seed = s.noise.seed;
  run.log.t = cs.t;
  GroundTruth truth;
  truth.tendon_lengths.reserve(n);
  truth.configs.reserve(n);
  truth.tips.reserve(n);
  std::array<std::vector<double>, 3> active;
  for (auto& a : active) a.reserve(n);
  for (const auto& pulls : cs.pulls) {
    const PlantState st = plant_step(pulls, g);
    truth.tendon_lengths.push_back(st.tendons.l);
    truth.configs.push_back(st.config);
    truth.tips.push_back(st.tip);
    for (std::size_t i = 0; i < 3; ++i) active[i].push_back(st.tendons.l[i] + g.tendon_slack_length);
  }

  if (s.adc) run.log.codes.emplace();
  for (std::size_t ch = 0; ch < 3; ++ch) {
    ChannelMeasurement m = measure_channel(ideal_bridge_volts(active[ch], s), s, ch);
    run.log.volts[ch] = std::move(m.volts);
    if (s.adc) (*run.log.codes)[ch] = std::move(m.codes);
  }
  run.log.truth = std::move(truth);
  return run;
}

std::array<std::vector<CalibrationSample>, 3> calibration_sweep(const ManipulatorGeometry& g,
                                                                const SensorConfig& s,
                                                                const SweepOptions& o) {
  validate(g);
  validate(s);
  if (o.steps < 2) throw InvalidArgument("calibration sweep needs >= 2 steps");
  if (o.averaging < 1) throw InvalidArgument("calibration averaging must be >= 1");
  if (!(o.max_theta > 0.0)) throw InvalidArgument("calibration sweep angle must be > 0");

  std::array<std::vector<CalibrationSample>, 3> out;
  for (std::size_t k = 0; k < 3; ++k) {
    std::vector<double> active, change;
    for (std::size_t step = 0; step < o.steps; ++step) {
      const double theta =
          o.max_theta * static_cast<double>(step) / static_cast<double>(o.steps - 1);
      const PlantState st = plant_step(single_tendon_bend(theta, k, g), g);
      change.push_back(st.tendons.l[k] - g.base_length);
      for (std::size_t r = 0; r < o.averaging; ++r)
        active.push_back(st.tendons.l[k] + g.tendon_slack_length);
    }
    const ChannelMeasurement m = measure_channel(ideal_bridge_volts(active, s), s, k, 1);
    for (std::size_t step = 0; step < o.steps; ++step) {
      double v = 0.0;
      for (std::size_t r = 0; r < o.averaging; ++r) v += m.volts[step * o.averaging + r];
      v /= static_cast<double>(o.averaging);
      out[k].push_back({bridge_invert(v, s.bridge), change[step]});
    }
  }
  return out;
}

CalibrationRecord calibrate_from_sweep(const ManipulatorGeometry& g, const SensorConfig& s,
                                       const SweepOptions& o) {
  return calibrate(calibration_sweep(g, s, o), {g.base_length, g.base_length, g.base_length},
                   o.fit);
}

}  // namespace origami
