#pragma once

// Batch arithmetic kernels with a scalar reference and SIMD variants chosen
// at runtime from the host CPU. All element-wise kernels return the same bits
// on every backend; squared_error_sums differs only in summation order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace origami::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);

/// True if the backend is compiled in and the CPU supports it.
bool backend_available(Backend b);

/// Backend used by the free functions below.
Backend active_backend();

/// Overrides runtime selection (tests, benchmarking). Throws InvalidArgument
/// if the backend is unavailable.
void set_backend(Backend b);

/// Returns to the best available backend.
void reset_backend();

std::vector<Backend> available_backends();

struct CubicParams {
  double r_min = 0.0;
  double r_max = 1.0;
  bool clamp = true;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double scale = 1.0;
  double offset = 0.0;
};

struct SquaredErrorSums {
  double x = 0.0, y = 0.0, z = 0.0;  // per-axis sums of squared differences
  double max_sq = 0.0;               // largest pointwise squared distance
};

struct XyzView {
  std::span<const double> x, y, z;
};

void length_to_resistance(std::span<const double> length, double lambda, double r_contact,
                          std::span<double> out);

void bridge_forward(std::span<const double> r_x, double r1, double r2, double r4, double v_in,
                    std::span<double> out);

/// Writes r_x for each voltage; samples with k outside (0, 1) get NaN and a
/// zero in `valid`. Returns the number of invalid samples.
std::size_t bridge_invert(std::span<const double> v_out, double r1, double r2, double r4,
                          double v_in, std::span<double> out, std::span<std::uint8_t> valid);

/// Quantizes `v` (clamped to [0, v_ref]) with round-half-up and converts back.
void adc_quantize(std::span<const double> v, double v_ref, int bits, std::span<std::int32_t> codes,
                  std::span<double> out);

/// offset + scale * cubic((r - r_min)/(r_max - r_min)), optionally clamped.
void cubic_map(std::span<const double> r, const CubicParams& p, std::span<double> out);

/// Centered moving average with symmetric edge replication; `window` odd.
void moving_average(std::span<const double> in, std::size_t window, std::span<double> out);

SquaredErrorSums squared_error_sums(const XyzView& a, const XyzView& b);

}  // namespace origami::kernels
