#include <immintrin.h>

#include <cmath>
#include <limits>

#include "internal.hpp"
#include "origami/kernels/formulas.hpp"

namespace origami::kernels::detail {
namespace {

namespace f = formula;
constexpr std::size_t kLanes = 4;

void length_to_resistance(const double* len, std::size_t n, double lambda, double r_contact,
                          double* out) {
  const __m256d vl = _mm256_set1_pd(lambda);
  const __m256d vc = _mm256_set1_pd(r_contact);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d x = _mm256_loadu_pd(len + i);
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(vl, x), vc));
  }
  for (; i < n; ++i) out[i] = f::resistance(len[i], lambda, r_contact);
}

void bridge_forward(const double* r, std::size_t n, double ratio, double r4, double v_in,
                    double* out) {
  const __m256d vratio = _mm256_set1_pd(ratio);
  const __m256d vr4 = _mm256_set1_pd(r4);
  const __m256d vin = _mm256_set1_pd(v_in);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d x = _mm256_loadu_pd(r + i);
    const __m256d q = _mm256_div_pd(vr4, _mm256_add_pd(vr4, x));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(vin, _mm256_sub_pd(vratio, q)));
  }
  for (; i < n; ++i) out[i] = f::bridge_voltage(r[i], ratio, r4, v_in);
}

std::size_t bridge_invert(const double* v, std::size_t n, double ratio, double r4, double v_in,
                          double* out, std::uint8_t* valid) {
  const __m256d vratio = _mm256_set1_pd(ratio);
  const __m256d vr4 = _mm256_set1_pd(r4);
  const __m256d vin = _mm256_set1_pd(v_in);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d nan = _mm256_set1_pd(std::numeric_limits<double>::quiet_NaN());
  std::size_t bad = 0;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d x = _mm256_loadu_pd(v + i);
    const __m256d k = _mm256_sub_pd(vratio, _mm256_div_pd(x, vin));
    const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(k, zero, _CMP_GT_OQ),
                                     _mm256_cmp_pd(k, one, _CMP_LT_OQ));
    const __m256d r = _mm256_mul_pd(vr4, _mm256_div_pd(_mm256_sub_pd(one, k), k));
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(nan, r, ok));
    const int mask = _mm256_movemask_pd(ok);
    for (std::size_t l = 0; l < kLanes; ++l) {
      const bool lane_ok = (mask >> l) & 1;
      valid[i + l] = lane_ok ? 1 : 0;
      bad += lane_ok ? 0 : 1;
    }
  }
  for (; i < n; ++i) {
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
  const __m256d vref = _mm256_set1_pd(v_ref);
  const __m256d vmax = _mm256_set1_pd(max_code);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d c = _mm256_loadu_pd(v + i);
    c = _mm256_blendv_pd(c, zero, _mm256_cmp_pd(c, zero, _CMP_LT_OQ));
    c = _mm256_blendv_pd(c, vref, _mm256_cmp_pd(c, vref, _CMP_GT_OQ));
    const __m256d code =
        _mm256_floor_pd(_mm256_add_pd(_mm256_mul_pd(_mm256_div_pd(c, vref), vmax), half));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(codes + i), _mm256_cvttpd_epi32(code));
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_mul_pd(code, vref), vmax));
  }
  for (; i < n; ++i) {
    const double c = f::adc_code(v[i], v_ref, max_code);
    codes[i] = static_cast<std::int32_t>(c);
    out[i] = f::adc_volts(c, v_ref, max_code);
  }
}

void cubic_map(const double* r, std::size_t n, const CubicParams& p, double* out) {
  const double span = p.r_max - p.r_min;
  const __m256d vmin = _mm256_set1_pd(p.r_min);
  const __m256d vspan = _mm256_set1_pd(span);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d a = _mm256_set1_pd(p.a), b = _mm256_set1_pd(p.b);
  const __m256d c = _mm256_set1_pd(p.c), d = _mm256_set1_pd(p.d);
  const __m256d scale = _mm256_set1_pd(p.scale), offset = _mm256_set1_pd(p.offset);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d x = _mm256_div_pd(_mm256_sub_pd(_mm256_loadu_pd(r + i), vmin), vspan);
    if (p.clamp) {
      x = _mm256_blendv_pd(x, zero, _mm256_cmp_pd(x, zero, _CMP_LT_OQ));
      x = _mm256_blendv_pd(x, one, _mm256_cmp_pd(x, one, _CMP_GT_OQ));
    }
    __m256d h = _mm256_add_pd(c, _mm256_mul_pd(x, d));
    h = _mm256_add_pd(b, _mm256_mul_pd(x, h));
    h = _mm256_add_pd(a, _mm256_mul_pd(x, h));
    _mm256_storeu_pd(out + i, _mm256_add_pd(offset, _mm256_mul_pd(scale, h)));
  }
  for (; i < n; ++i) {
    double x = f::normalized(r[i], p.r_min, span);
    if (p.clamp) x = f::clamp01(x);
    out[i] = p.offset + p.scale * f::horner(x, p.a, p.b, p.c, p.d);
  }
}

void moving_average_padded(const double* padded, std::size_t n, std::size_t window,
                           double* out) {
  const std::size_t half = window / 2;
  const __m256d w = _mm256_set1_pd(static_cast<double>(window));
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d center = _mm256_loadu_pd(padded + i + half);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < window; ++k)
      acc = _mm256_add_pd(acc, _mm256_sub_pd(_mm256_loadu_pd(padded + i + k), center));
    _mm256_storeu_pd(out + i, _mm256_add_pd(center, _mm256_div_pd(acc, w)));
  }
  for (; i < n; ++i) out[i] = f::centered_mean(padded + i, window, padded[i + half]);
}

double hsum(__m256d v) {
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

double hmax(__m256d v) {
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, v);
  double m = lanes[0];
  for (std::size_t l = 1; l < kLanes; ++l) m = lanes[l] > m ? lanes[l] : m;
  return m;
}

SquaredErrorSums squared_error_sums(const double* ax, const double* ay, const double* az,
                                    const double* bx, const double* by, const double* bz,
                                    std::size_t n) {
  __m256d sx = _mm256_setzero_pd(), sy = _mm256_setzero_pd(), sz = _mm256_setzero_pd();
  __m256d smax = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(ax + i), _mm256_loadu_pd(bx + i));
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ay + i), _mm256_loadu_pd(by + i));
    const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(az + i), _mm256_loadu_pd(bz + i));
    const __m256d ex = _mm256_mul_pd(dx, dx);
    const __m256d ey = _mm256_mul_pd(dy, dy);
    const __m256d ez = _mm256_mul_pd(dz, dz);
    sx = _mm256_add_pd(sx, ex);
    sy = _mm256_add_pd(sy, ey);
    sz = _mm256_add_pd(sz, ez);
    smax = _mm256_max_pd(smax, _mm256_add_pd(_mm256_add_pd(ex, ey), ez));
  }
  SquaredErrorSums s{hsum(sx), hsum(sy), hsum(sz), hmax(smax)};
  for (; i < n; ++i) {
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

const Table& avx2_table() {
  static const Table t{length_to_resistance, bridge_forward, bridge_invert, adc_quantize,
                       cubic_map,            moving_average_padded, squared_error_sums};
  return t;
}

}  // namespace origami::kernels::detail
