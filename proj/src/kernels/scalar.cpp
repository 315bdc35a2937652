#include <cmath>
#include <limits>

#include "internal.hpp"
#include "origami/kernels/formulas.hpp"

namespace origami::kernels::detail {
namespace {

namespace f = formula;

void length_to_resistance(const double* len, std::size_t n, double lambda, double r_contact,
                          double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = f::resistance(len[i], lambda, r_contact);
}

void bridge_forward(const double* r, std::size_t n, double ratio, double r4, double v_in,
                    double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = f::bridge_voltage(r[i], ratio, r4, v_in);
}

std::size_t bridge_invert(const double* v, std::size_t n, double ratio, double r4, double v_in,
                          double* out, std::uint8_t* valid) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = f::bridge_k(v[i], ratio, v_in);
    const bool ok = k > 0.0 && k < 1.0;
    valid[i] = ok ? 1 : 0;
    out[i] = ok ? f::bridge_resistance(k, r4) : std::numeric_limits<double>::quiet_NaN();
    bad += ok ? 0 : 1;
  }
  return bad;
}

void adc_quantize(const double* v, std::size_t n, double v_ref, double max_code,
                  std::int32_t* codes, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double c = f::adc_code(v[i], v_ref, max_code);
    codes[i] = static_cast<std::int32_t>(c);
    out[i] = f::adc_volts(c, v_ref, max_code);
  }
}

void cubic_map(const double* r, std::size_t n, const CubicParams& p, double* out) {
  const double span = p.r_max - p.r_min;
  for (std::size_t i = 0; i < n; ++i) {
    double x = f::normalized(r[i], p.r_min, span);
    if (p.clamp) x = f::clamp01(x);
    out[i] = p.offset + p.scale * f::horner(x, p.a, p.b, p.c, p.d);
  }
}

void moving_average_padded(const double* padded, std::size_t n, std::size_t window,
                           double* out) {
  const std::size_t half = window / 2;
  for (std::size_t i = 0; i < n; ++i)
    out[i] = f::centered_mean(padded + i, window, padded[i + half]);
}

SquaredErrorSums squared_error_sums(const double* ax, const double* ay, const double* az,
                                    const double* bx, const double* by, const double* bz,
                                    std::size_t n) {
  SquaredErrorSums s;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = ax[i] - bx[i];
    const double dy = ay[i] - by[i];
    const double dz = az[i] - bz[i];
    const double ex = dx * dx, ey = dy * dy, ez = dz * dz;
    s.x += ex;
    s.y += ey;
    s.z += ez;
    const double d2 = ex + ey + ez;
    if (d2 > s.max_sq) s.max_sq = d2;
  }
  return s;
}

}  // namespace

const Table& scalar_table() {
  static const Table t{length_to_resistance, bridge_forward, bridge_invert, adc_quantize,
                       cubic_map,            moving_average_padded, squared_error_sums};
  return t;
}

}  // namespace origami::kernels::detail
