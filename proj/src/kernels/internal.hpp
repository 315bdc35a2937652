#pragma once

#include <cstddef>
#include <cstdint>

#include "origami/kernels/kernels.hpp"

namespace origami::kernels::detail {

// Raw-pointer entry points; lengths are validated by the dispatching wrappers.
struct Table {
  void (*length_to_resistance)(const double*, std::size_t, double, double, double*);
  void (*bridge_forward)(const double*, std::size_t, double, double, double, double*);
  std::size_t (*bridge_invert)(const double*, std::size_t, double, double, double, double*,
                               std::uint8_t*);
  void (*adc_quantize)(const double*, std::size_t, double, double, std::int32_t*, double*);
  void (*cubic_map)(const double*, std::size_t, const CubicParams&, double*);
  // `padded` has n + window - 1 samples; out[i] averages padded[i .. i+window).
  void (*moving_average_padded)(const double*, std::size_t, std::size_t, double*);
  SquaredErrorSums (*squared_error_sums)(const double*, const double*, const double*,
                                         const double*, const double*, const double*,
                                         std::size_t);
};

const Table& scalar_table();
#if defined(ORIGAMI_HAVE_AVX2)
const Table& avx2_table();
#endif

}  // namespace origami::kernels::detail
