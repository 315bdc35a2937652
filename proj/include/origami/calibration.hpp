#pragma once

// Resistance -> tendon length calibration: per-tendon normalization of the
// resistance variation and a least-squares cubic over the normalized value.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "origami/kernels/kernels.hpp"

namespace origami {

struct NormalizationRange {
  double r_min = 0.0;  ///< [Ohm]
  double r_max = 1.0;  ///< [Ohm]
};

/// l = offset + scale * (a + b r + c r^2 + d r^3), r normalized resistance.
/// The coefficients are in map units; `scale` converts them to meters.
struct CubicMap {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double scale = 1.0;   ///< [m / map unit]
  double offset = 0.0;  ///< [m]
};

/// Coefficients reported for the physical prototype (unified over tendons).
inline constexpr CubicMap kPrototypeCubic{0.102, -0.172, -0.205, -0.173, 1.0, 0.0};

struct CalibrationSample {
  double resistance = 0.0;     ///< [Ohm]
  double length_change = 0.0;  ///< [m] (or absolute length, see LengthMode)
};

struct CubicFit {
  CubicMap map;
  double r_squared = 0.0;
  double rmse = 0.0;  ///< [m]
  std::size_t samples = 0;
};

enum class FitMode { per_tendon, shared };

struct TendonCalibration {
  NormalizationRange range;
  CubicMap map;
  double base_length = 0.0;  ///< straight-pose tendon length [m]
  double r_squared = 0.0;
  double rmse = 0.0;  ///< [m]
};

struct CalibrationRecord {
  FitMode mode = FitMode::per_tendon;
  std::vector<TendonCalibration> tendons;
  double r_squared = 0.0;  ///< worst tendon
  double rmse = 0.0;       ///< pooled over all samples [m]
};

void validate(const NormalizationRange& r);
void validate(const CalibrationRecord& r);

/// clamp((r - r_min)/(r_max - r_min), 0, 1).
double normalize_resistance(double r, const NormalizationRange& range);

/// Horner evaluation of the map at a normalized resistance.
double eval_cubic(const CubicMap& map, double r_norm);

/// Sample range [min R, max R]. Throws InvalidArgument if degenerate.
NormalizationRange range_of(std::span<const CalibrationSample> samples);

/// Least-squares cubic over (unclamped) normalized resistance.
/// Throws InvalidArgument on empty input and RankDeficient with fewer than
/// four distinct normalized resistances.
CubicFit fit_cubic(std::span<const CalibrationSample> samples, const NormalizationRange& range);

/// Builds a record from per-tendon samples; ranges are taken from the samples.
CalibrationRecord calibrate(const std::array<std::vector<CalibrationSample>, 3>& samples,
                            const std::array<double, 3>& base_lengths,
                            FitMode mode = FitMode::per_tendon);

/// Per-tendon summary with a fixed field order. Throws InvalidArgument on an
/// empty record.
std::string fit_report(const CalibrationRecord& record);

/// Kernel parameters for one tendon's map.
kernels::CubicParams cubic_params(const TendonCalibration& t, bool clamp);

}  // namespace origami
