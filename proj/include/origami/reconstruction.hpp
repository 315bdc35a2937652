#pragma once

// Sensor readings -> tendon lengths -> arc parameters -> end-effector path.
//
// Per channel: centered moving average on the bridge voltage, bridge
// inversion, hold-last-valid for saturated samples, normalized cubic map,
// then joint_to_config and the discrete chain per sample.

#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "origami/calibration.hpp"
#include "origami/kinematics.hpp"
#include "origami/sensing.hpp"

namespace origami {

struct GroundTruth {
  std::vector<std::array<double, 3>> tendon_lengths;  ///< [m]
  std::vector<ConfigState> configs;
  std::vector<Point3> tips;
};

/// Bridge output time series for the three tendons.
struct SensorLog {
  std::vector<double> t;                         ///< [s], strictly increasing
  std::array<std::vector<double>, 3> volts;      ///< bridge output [V]
  std::optional<std::array<std::vector<std::int32_t>, 3>> codes;  ///< ADC codes
  std::optional<GroundTruth> truth;

  std::size_t size() const { return t.size(); }
  double sample_rate() const;  ///< mean rate over the log [Hz]
};

/// Throws InvalidArgument on unequal channel lengths or non-increasing time.
void validate(const SensorLog& log);

struct Trajectory {
  std::vector<double> t;
  std::vector<Point3> points;
  std::vector<ConfigState> configs;

  std::size_t size() const { return t.size(); }
};

void validate(const Trajectory& traj);

/// Centered moving average; `window` odd, >= 1.
struct FilterSpec {
  std::size_t window = 21;
};

enum class LengthMode {
  delta,     ///< map output is a length change added to the straight-pose length
  absolute,  ///< map output is the tendon length itself
};

struct ReconstructionOptions {
  FilterSpec filter;
  LengthMode mode = LengthMode::delta;
  bool clamp = false;  ///< clamp normalized resistance to the calibrated range
  double max_invalid_fraction = 0.1;
  double d = 0.02;  ///< tendon offset [m]
  std::size_t n_links = kDefaultLinks;
};

struct LengthReconstruction {
  std::vector<std::array<double, 3>> lengths;  ///< [m]
  std::array<std::size_t, 3> invalid{};        ///< saturated samples per channel
};

struct PathErrorReport {
  double rmse = 0.0;      ///< [m]
  double max_error = 0.0; ///< [m]
  double rmse_x = 0.0, rmse_y = 0.0, rmse_z = 0.0;
};

/// Throws InvalidArgument on an even or zero window, or a window longer than
/// the series.
std::vector<double> filter_signal(std::span<const double> series, const FilterSpec& spec);

LengthReconstruction reconstruct_lengths(const SensorLog& log, const BridgeParams& bridge,
                                         const CalibrationRecord& calib,
                                         const ReconstructionOptions& options);

Trajectory reconstruct_path(const SensorLog& log, const BridgeParams& bridge,
                            const CalibrationRecord& calib, const ReconstructionOptions& options);

/// Pointwise Euclidean comparison. Throws InvalidArgument on length or
/// timestamp mismatch.
PathErrorReport path_error(const Trajectory& reconstructed, const Trajectory& truth);

/// Trajectory built from a log's ground-truth channels.
Trajectory truth_trajectory(const SensorLog& log);

/// Largest distance between any two points of the trajectory [m].
double trajectory_diameter(const Trajectory& traj);

/// Sample-by-sample form of reconstruct_path. Each output appears once the
/// filter window around it is complete; finish() drains the tail. The
/// concatenated output equals reconstruct_path on the same samples bit for bit.
class StreamingReconstructor {
 public:
  StreamingReconstructor(BridgeParams bridge, CalibrationRecord calib,
                         ReconstructionOptions options);

  struct Sample {
    double t = 0.0;
    ConfigState config;
    Point3 point;
  };

  std::vector<Sample> push(double t, const std::array<double, 3>& volts);

  /// Flushes the remaining samples. Throws InvalidArgument if fewer samples
  /// than the window arrived, OutOfRange if too many were saturated.
  std::vector<Sample> finish();

  std::size_t invalid_count(std::size_t channel) const { return invalid_[channel]; }

 private:
  std::optional<Sample> emit();

  BridgeParams bridge_;
  CalibrationRecord calib_;
  ReconstructionOptions options_;
  std::array<std::deque<double>, 3> window_;
  std::deque<double> times_;
  std::array<double, 3> last_valid_{};
  std::array<std::size_t, 3> invalid_{};
  std::size_t pushed_ = 0;
  std::size_t emitted_ = 0;
  std::array<double, 3> last_volts_{};
  double last_t_ = 0.0;
};

}  // namespace origami
