#pragma once

// Per-element formulas shared by the scalar API and the scalar kernels. The
// SIMD variants replicate these operation by operation so every backend
// produces identical bits.

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace origami::kernels::formula {

inline double resistance(double length, double lambda, double r_contact) {
  return lambda * length + r_contact;
}

/// v_in * (r2/(r1+r2) - r4/(r4+r_x)); `ratio` is r2/(r1+r2).
inline double bridge_voltage(double r_x, double ratio, double r4, double v_in) {
  return v_in * (ratio - r4 / (r4 + r_x));
}

/// Bridge balance term k = r2/(r1+r2) - v_out/v_in.
inline double bridge_k(double v_out, double ratio, double v_in) {
  return ratio - v_out / v_in;
}

inline double bridge_resistance(double k, double r4) {
  return r4 * ((1.0 - k) / k);
}

inline double adc_code(double v, double v_ref, double max_code) {
  double c = v < 0.0 ? 0.0 : v;
  c = c > v_ref ? v_ref : c;
  return std::floor((c / v_ref) * max_code + 0.5);
}

inline double adc_volts(double code, double v_ref, double max_code) {
  return (code * v_ref) / max_code;
}

inline double normalized(double r, double r_min, double span) {
  return (r - r_min) / span;
}

inline double clamp01(double x) {
  double c = x < 0.0 ? 0.0 : x;
  return c > 1.0 ? 1.0 : c;
}

inline double horner(double x, double a, double b, double c, double d) {
  return a + x * (b + x * (c + x * d));
}

}  // namespace origami::kernels::formula

namespace origami::kernels::formula {

/// Mean of `w` consecutive samples, accumulated as deviations from the
/// window's center sample so constant input passes through unchanged.
inline double centered_mean(const double* window, std::size_t w, double center) {
  double acc = 0.0;
  for (std::size_t k = 0; k < w; ++k) acc += window[k] - center;
  return center + acc / static_cast<double>(w);
}

}  // namespace origami::kernels::formula
