#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include "origami/errors.hpp"
#include "origami/kernels/kernels.hpp"
#include "test_support.hpp"

namespace origami::kernels {
namespace {

using testing::Draw;

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

class BackendGuard {
 public:
  ~BackendGuard() { reset_backend(); }
};

std::vector<double> random_series(Draw& draw, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = draw.uniform(lo, hi);
  return v;
}

// Sizes around the vector width so every tail path runs.
const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 63, 64, 65, 1001};

TEST(Backends, ScalarAlwaysAvailable) {
  EXPECT_TRUE(backend_available(Backend::scalar));
  EXPECT_EQ(backend_name(Backend::scalar), "scalar");
  EXPECT_EQ(backend_name(Backend::avx2), "avx2");
  BackendGuard guard;
  set_backend(Backend::scalar);
  EXPECT_EQ(active_backend(), Backend::scalar);
  const auto all = available_backends();
  EXPECT_FALSE(all.empty());
  EXPECT_EQ(all.front(), Backend::scalar);
}

TEST(Backends, UnavailableBackendRejected) {
  if (backend_available(Backend::avx2)) GTEST_SKIP() << "avx2 present on this host";
  EXPECT_THROW(set_backend(Backend::avx2), InvalidArgument);
}

TEST(Kernels, SizeMismatchRejected) {
  std::vector<double> in(4), out(3);
  EXPECT_THROW(length_to_resistance(in, 1.0, 0.0, out), InvalidArgument);
  EXPECT_THROW(moving_average(in, 3, out), InvalidArgument);
  std::vector<std::int32_t> codes(4);
  std::vector<double> out4(4);
  EXPECT_THROW(adc_quantize(in, 5.0, 0, codes, out4), InvalidArgument);
  EXPECT_THROW(adc_quantize(in, 5.0, 25, codes, out4), InvalidArgument);
}

// Runs `fn` under every backend and checks bitwise equality with scalar.
template <class Fn>
void expect_equivalent(Fn fn) {
  BackendGuard guard;
  set_backend(Backend::scalar);
  const auto ref = fn();
  for (Backend b : available_backends()) {
    set_backend(b);
    const auto got = fn();
    EXPECT_TRUE(same_bits(ref, got)) << backend_name(b);
  }
}

TEST(Equivalence, LengthToResistance) {
  Draw draw(1);
  for (std::size_t n : kSizes) {
    const auto l = random_series(draw, n, 0.0, 0.5);
    expect_equivalent([&] {
      std::vector<double> out(n);
      length_to_resistance(l, 100.0 / 3.0, 0.37, out);
      return out;
    });
  }
}

TEST(Equivalence, BridgeForwardAndInverse) {
  Draw draw(2);
  for (std::size_t n : kSizes) {
    const auto r = random_series(draw, n, 0.1, 50.0);
    expect_equivalent([&] {
      std::vector<double> out(n);
      bridge_forward(r, 10.0, 12.0, 9.0, 5.0, out);
      return out;
    });
    // Include voltages far outside the invertible range.
    auto v = random_series(draw, n, -6.0, 6.0);
    expect_equivalent([&] {
      std::vector<double> out(n);
      std::vector<std::uint8_t> valid(n);
      const auto bad = bridge_invert(v, 10.0, 12.0, 9.0, 5.0, out, valid);
      std::size_t counted = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!valid[i]) {
          ++counted;
          EXPECT_TRUE(std::isnan(out[i]));
        }
      }
      EXPECT_EQ(bad, counted);
      // NaN payloads can differ, so compare a canonical form.
      for (auto& x : out)
        if (std::isnan(x)) x = -1.0;
      out.insert(out.end(), valid.begin(), valid.end());
      return out;
    });
  }
}

TEST(Equivalence, AdcQuantize) {
  Draw draw(3);
  for (std::size_t n : kSizes) {
    auto v = random_series(draw, n, -1.0, 6.0);
    // Exact half-step boundaries exercise round-half-up.
    for (std::size_t i = 0; i < n; i += 5) v[i] = (static_cast<double>(i % 1023) + 0.5) * 5.0 / 1023.0;
    for (int bits : {1, 8, 10, 12, 24}) {
      expect_equivalent([&] {
        std::vector<std::int32_t> codes(n);
        std::vector<double> out(n);
        adc_quantize(v, 5.0, bits, codes, out);
        out.insert(out.end(), codes.begin(), codes.end());
        return out;
      });
    }
  }
}

TEST(Equivalence, CubicMap) {
  Draw draw(4);
  for (std::size_t n : kSizes) {
    const auto r = random_series(draw, n, 8.0, 12.0);
    for (bool clamp : {true, false}) {
      const CubicParams p{9.0, 11.0, clamp, 0.1, -0.2, 0.05, -0.01, 0.3, 0.1};
      expect_equivalent([&] {
        std::vector<double> out(n);
        cubic_map(r, p, out);
        return out;
      });
    }
  }
}

TEST(Equivalence, MovingAverage) {
  Draw draw(5);
  for (std::size_t n : kSizes) {
    if (n == 0) continue;
    const auto x = random_series(draw, n, -1.0, 1.0);
    for (std::size_t w : {1u, 3u, 5u, 21u, 101u}) {
      if (w > n) continue;
      expect_equivalent([&] {
        std::vector<double> out(n);
        moving_average(x, w, out);
        return out;
      });
    }
  }
}

TEST(Equivalence, SquaredErrorSums) {
  Draw draw(6);
  for (std::size_t n : kSizes) {
    const auto ax = random_series(draw, n, -1, 1), ay = random_series(draw, n, -1, 1),
               az = random_series(draw, n, -1, 1), bx = random_series(draw, n, -1, 1),
               by = random_series(draw, n, -1, 1), bz = random_series(draw, n, -1, 1);
    const XyzView a{ax, ay, az}, b{bx, by, bz};
    BackendGuard guard;
    set_backend(Backend::scalar);
    const auto ref = squared_error_sums(a, b);
    double bx_sum = 0, max_sq = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bx_sum += (ax[i] - bx[i]) * (ax[i] - bx[i]);
      const double sq = (ax[i] - bx[i]) * (ax[i] - bx[i]) + (ay[i] - by[i]) * (ay[i] - by[i]) +
                        (az[i] - bz[i]) * (az[i] - bz[i]);
      max_sq = std::max(max_sq, sq);
    }
    EXPECT_NEAR(ref.x, bx_sum, 1e-12 * std::max(1.0, bx_sum));
    EXPECT_NEAR(ref.max_sq, max_sq, 1e-15);
    for (Backend be : available_backends()) {
      set_backend(be);
      const auto got = squared_error_sums(a, b);
      EXPECT_NEAR(got.x, ref.x, 1e-12 * std::max(1.0, ref.x));
      EXPECT_NEAR(got.y, ref.y, 1e-12 * std::max(1.0, ref.y));
      EXPECT_NEAR(got.z, ref.z, 1e-12 * std::max(1.0, ref.z));
      EXPECT_EQ(got.max_sq, ref.max_sq);
    }
  }
}

TEST(MovingAverageKernel, ImpulseAndEdges) {
  const std::vector<double> x{0, 0, 3, 0, 0};
  std::vector<double> out(5);
  moving_average(x, 3, out);
  EXPECT_EQ(out, (std::vector<double>{0, 1, 1, 1, 0}));
  const std::vector<double> ramp{1, 2, 3};
  moving_average(ramp, 3, out = std::vector<double>(3));
  EXPECT_DOUBLE_EQ(out[0], 4.0 / 3.0);  // (1 + 1 + 2)/3 with replication
  EXPECT_DOUBLE_EQ(out[2], 8.0 / 3.0);
}

}  // namespace
}  // namespace origami::kernels
