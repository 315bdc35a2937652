#include <algorithm>
#include <atomic>
#include <string>

#include "internal.hpp"
#include "origami/errors.hpp"

namespace origami::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(ORIGAMI_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend best_backend() { return cpu_has_avx2() ? Backend::avx2 : Backend::scalar; }

std::atomic<Backend>& selected() {
  static std::atomic<Backend> b{best_backend()};
  return b;
}

const detail::Table& table() {
#if defined(ORIGAMI_HAVE_AVX2)
  if (selected().load(std::memory_order_relaxed) == Backend::avx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw InvalidArgument(std::string(what) + ": output size does not match input size");
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2: return cpu_has_avx2();
  }
  return false;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::scalar};
  if (backend_available(Backend::avx2)) out.push_back(Backend::avx2);
  return out;
}

Backend active_backend() { return selected().load(); }

void set_backend(Backend b) {
  if (!backend_available(b))
    throw InvalidArgument("kernel backend '" + std::string(backend_name(b)) + "' is not available");
  selected().store(b);
}

void reset_backend() { selected().store(best_backend()); }

void length_to_resistance(std::span<const double> length, double lambda, double r_contact,
                          std::span<double> out) {
  require_same(length.size(), out.size(), "length_to_resistance");
  table().length_to_resistance(length.data(), length.size(), lambda, r_contact, out.data());
}

void bridge_forward(std::span<const double> r_x, double r1, double r2, double r4, double v_in,
                    std::span<double> out) {
  require_same(r_x.size(), out.size(), "bridge_forward");
  table().bridge_forward(r_x.data(), r_x.size(), r2 / (r1 + r2), r4, v_in, out.data());
}

std::size_t bridge_invert(std::span<const double> v_out, double r1, double r2, double r4,
                          double v_in, std::span<double> out, std::span<std::uint8_t> valid) {
  require_same(v_out.size(), out.size(), "bridge_invert");
  require_same(v_out.size(), valid.size(), "bridge_invert");
  return table().bridge_invert(v_out.data(), v_out.size(), r2 / (r1 + r2), r4, v_in, out.data(),
                               valid.data());
}

void adc_quantize(std::span<const double> v, double v_ref, int bits,
                  std::span<std::int32_t> codes, std::span<double> out) {
  require_same(v.size(), out.size(), "adc_quantize");
  require_same(v.size(), codes.size(), "adc_quantize");
  if (bits < 1 || bits > 24) throw InvalidArgument("adc_quantize: bits must be in [1, 24]");
  const double max_code = static_cast<double>((std::int64_t{1} << bits) - 1);
  table().adc_quantize(v.data(), v.size(), v_ref, max_code, codes.data(), out.data());
}

void cubic_map(std::span<const double> r, const CubicParams& p, std::span<double> out) {
  require_same(r.size(), out.size(), "cubic_map");
  table().cubic_map(r.data(), r.size(), p, out.data());
}

void moving_average(std::span<const double> in, std::size_t window, std::span<double> out) {
  require_same(in.size(), out.size(), "moving_average");
  if (window == 0 || window % 2 == 0)
    throw InvalidArgument("moving_average: window must be odd and >= 1");
  if (in.empty()) return;
  const std::size_t half = window / 2;
  std::vector<double> padded(in.size() + 2 * half);
  std::fill_n(padded.begin(), half, in.front());
  std::copy(in.begin(), in.end(), padded.begin() + static_cast<std::ptrdiff_t>(half));
  std::fill(padded.end() - static_cast<std::ptrdiff_t>(half), padded.end(), in.back());
  table().moving_average_padded(padded.data(), in.size(), window, out.data());
}

SquaredErrorSums squared_error_sums(const XyzView& a, const XyzView& b) {
  const std::size_t n = a.x.size();
  for (auto s : {a.y.size(), a.z.size(), b.x.size(), b.y.size(), b.z.size()})
    require_same(n, s, "squared_error_sums");
  return table().squared_error_sums(a.x.data(), a.y.data(), a.z.data(), b.x.data(), b.y.data(),
                                    b.z.data(), n);
}

}  // namespace origami::kernels
