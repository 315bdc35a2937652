#pragma once

// Synthetic ground truth and sensor logs: actuation protocols, an idealized
// quasi-static plant that projects tendon lengths onto the constant-curvature
// manifold, and the resistive sensor chain.

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "origami/calibration.hpp"
#include "origami/kinematics.hpp"
#include "origami/reconstruction.hpp"
#include "origami/sensing.hpp"

namespace origami {

/// Unit-cell dimensions of the fold pattern [m]; metadata only.
struct FoldPattern {
  double a1 = 0.050, a2 = 0.078, a3 = 0.028, h0 = 0.0035, h1 = 0.0195;
};

struct ManipulatorGeometry {
  double base_length = 0.1;           ///< straight-pose segment length L0 [m]
  double d = 0.02;                    ///< tendon offset [m]
  std::size_t n_links = kDefaultLinks;
  double tendon_slack_length = 0.2;   ///< routed thread outside the segment [m]
  FoldPattern fold;
};

enum class ProtocolKind { cyclic, increasing_amplitude, tendon_combination, constant };

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

/// Peak bend angles of the increasing-amplitude validation protocol.
inline constexpr std::array<double, 4> kIncreasingPeaks{
    deg_to_rad(20.0), deg_to_rad(25.0), deg_to_rad(30.0), deg_to_rad(35.0)};

/// `amplitude` is the peak bend angle [rad] for cyclic motion and the pull
/// [m] for tendon combinations; the increasing-amplitude protocol uses
/// kIncreasingPeaks on the lowest tendon in `mask`.
struct ActuationProtocol {
  ProtocolKind kind = ProtocolKind::cyclic;
  double frequency = 0.0625;                       ///< [Hz]
  double phase_shift = 2.0 * std::numbers::pi / 3.0;  ///< between consecutive tendons [rad]
  double amplitude = deg_to_rad(30.0);
  double duration = 16.0;     ///< [s]
  double sample_rate = 50.0;  ///< [Hz]
  std::array<bool, 3> mask{true, true, true};
};

void validate(const ManipulatorGeometry& g);
void validate(const ActuationProtocol& p);

/// Length reductions of the three tendons over time.
struct CommandSeries {
  std::vector<double> t;
  std::vector<std::array<double, 3>> pulls;  ///< [m], positive shortens
};

/// Sample count of a protocol: round(duration * sample_rate).
std::size_t sample_count(const ActuationProtocol& p);

CommandSeries protocol_to_commands(const ActuationProtocol& p, const ManipulatorGeometry& g);

/// Pulls that bend the segment by `theta` toward tendon `tendon` (0-based)
/// at constant arc length L0; the other two tendons pay out.
std::array<double, 3> single_tendon_bend(double theta, std::size_t tendon,
                                         const ManipulatorGeometry& g);

struct PlantState {
  TendonLengths tendons;
  ConfigState config;
  Point3 tip;
};

/// l_i = L0 - pull_i, projected through joint_to_config / config_to_joint.
/// Throws Infeasible when a tendon collapses or theta * d >= L.
PlantState plant_step(const std::array<double, 3>& pulls, const ManipulatorGeometry& g);

struct SensorConfig {
  TendonResistorModel resistor;
  BridgeParams bridge;
  std::optional<AdcModel> adc = AdcModel{};  ///< nullopt disables quantization
  double v_offset = 2.5;  ///< added before the ADC and removed after [V]
  NoiseModel noise;
};

void validate(const SensorConfig& s);

/// Bridge voltages seen by the host for one channel.
struct ChannelMeasurement {
  std::vector<double> volts;
  std::vector<std::int32_t> codes;  ///< empty without ADC
};

/// Ideal bridge voltage -> offset + ADC -> noise. Noise for `channel` uses a
/// seed derived from (noise.seed, stream, channel).
ChannelMeasurement measure_channel(std::span<const double> ideal_volts, const SensorConfig& s,
                                   std::size_t channel, std::uint64_t stream = 0);

struct GroundTruthRun {
  SensorLog log;
  ActuationProtocol protocol;
  ManipulatorGeometry geometry;
  std::uint64_t seed = 0;
};

GroundTruthRun simulate_run(const ActuationProtocol& p, const ManipulatorGeometry& g,
                            const SensorConfig& s);

struct SweepOptions {
  double max_theta = deg_to_rad(30.0);
  std::size_t steps = 20;
  std::size_t averaging = 1;  ///< readings averaged per quasi-static step
  FitMode fit = FitMode::per_tendon;
};

/// Bends toward each tendon in turn from straight to `max_theta` and records
/// (measured resistance, tendon length change) for that tendon.
std::array<std::vector<CalibrationSample>, 3> calibration_sweep(const ManipulatorGeometry& g,
                                                                const SensorConfig& s,
                                                                const SweepOptions& o = {});

/// calibration_sweep followed by calibrate() with straight-pose base lengths.
CalibrationRecord calibrate_from_sweep(const ManipulatorGeometry& g, const SensorConfig& s,
                                       const SweepOptions& o = {});

}  // namespace origami
