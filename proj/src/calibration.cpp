#include "origami/calibration.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "origami/errors.hpp"
#include "origami/kernels/formulas.hpp"
#include "origami/numeric_text.hpp"

namespace origami {
namespace {

namespace f = kernels::formula;
using text::format_double;

struct SumSquares {
  double res = 0.0, tot = 0.0;
  std::size_t n = 0;
};

SumSquares sum_squares(std::span<const CalibrationSample> samples,
                       const NormalizationRange& range, const CubicMap& map) {
  SumSquares s;
  s.n = samples.size();
  double mean = 0.0;
  for (const auto& smp : samples) mean += smp.length_change;
  mean /= static_cast<double>(samples.size());
  const double span = range.r_max - range.r_min;
  for (const auto& smp : samples) {
    const double pred = eval_cubic(map, f::normalized(smp.resistance, range.r_min, span));
    const double e = pred - smp.length_change;
    const double dev = smp.length_change - mean;
    s.res += e * e;
    s.tot += dev * dev;
  }
  return s;
}

double r_squared_of(const SumSquares& s) {
  if (s.tot == 0.0) return s.res == 0.0 ? 1.0 : 0.0;
  return std::clamp(1.0 - s.res / s.tot, 0.0, 1.0);
}

const char* mode_name(FitMode m) { return m == FitMode::shared ? "shared" : "per-tendon"; }

}  // namespace

void validate(const NormalizationRange& r) {
  if (!std::isfinite(r.r_min) || !std::isfinite(r.r_max) || !(r.r_max > r.r_min))
    throw InvalidArgument("normalization range needs r_max > r_min");
}

void validate(const CalibrationRecord& r) {
  if (r.tendons.empty()) throw InvalidArgument("calibration record has no tendons");
  for (const auto& t : r.tendons) {
    validate(t.range);
    if (t.map.scale == 0.0) throw InvalidArgument("cubic map scale must be non-zero");
  }
}

double normalize_resistance(double r, const NormalizationRange& range) {
  validate(range);
  return f::clamp01(f::normalized(r, range.r_min, range.r_max - range.r_min));
}

double eval_cubic(const CubicMap& map, double r_norm) {
  return map.offset + map.scale * f::horner(r_norm, map.a, map.b, map.c, map.d);
}

NormalizationRange range_of(std::span<const CalibrationSample> samples) {
  if (samples.empty()) throw InvalidArgument("no calibration samples");
  const auto [lo, hi] = std::minmax_element(
      samples.begin(), samples.end(),
      [](const auto& a, const auto& b) { return a.resistance < b.resistance; });
  NormalizationRange r{lo->resistance, hi->resistance};
  validate(r);
  return r;
}

CubicFit fit_cubic(std::span<const CalibrationSample> samples, const NormalizationRange& range) {
  if (samples.empty()) throw InvalidArgument("fit_cubic: no samples");
  validate(range);
  const double span = range.r_max - range.r_min;
  const auto n = static_cast<Eigen::Index>(samples.size());

  std::vector<double> xs;
  xs.reserve(samples.size());
  for (const auto& s : samples) {
    if (!std::isfinite(s.resistance) || !std::isfinite(s.length_change))
      throw InvalidArgument("fit_cubic: non-finite sample");
    xs.push_back(f::normalized(s.resistance, range.r_min, span));
  }
  std::vector<double> distinct = xs;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 4)
    throw RankDeficient("fit_cubic: need at least 4 distinct resistances, got " +
                        std::to_string(distinct.size()));

  Eigen::MatrixXd vander(n, 4);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = xs[static_cast<std::size_t>(i)];
    vander(i, 0) = 1.0;
    vander(i, 1) = x;
    vander(i, 2) = x * x;
    vander(i, 3) = x * x * x;
    y(i) = samples[static_cast<std::size_t>(i)].length_change;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vander);
  if (qr.rank() < 4) throw RankDeficient("fit_cubic: Vandermonde system is rank deficient");
  const Eigen::Vector4d coef = qr.solve(y);

  CubicFit fit;
  fit.map = {coef(0), coef(1), coef(2), coef(3), 1.0, 0.0};
  fit.samples = samples.size();
  const SumSquares ss = sum_squares(samples, range, fit.map);
  fit.r_squared = r_squared_of(ss);
  fit.rmse = std::sqrt(ss.res / static_cast<double>(ss.n));
  return fit;
}

CalibrationRecord calibrate(const std::array<std::vector<CalibrationSample>, 3>& samples,
                            const std::array<double, 3>& base_lengths, FitMode mode) {
  CalibrationRecord rec;
  rec.mode = mode;
  rec.tendons.resize(3);
  for (std::size_t i = 0; i < 3; ++i) {
    rec.tendons[i].range = range_of(samples[i]);
    rec.tendons[i].base_length = base_lengths[i];
  }

  if (mode == FitMode::per_tendon) {
    for (std::size_t i = 0; i < 3; ++i) {
      const CubicFit fit = fit_cubic(samples[i], rec.tendons[i].range);
      rec.tendons[i].map = fit.map;
    }
  } else {
    // One map over all tendons: map each sample into the unit range of its
    // own tendon, then fit on the pooled set.
    std::vector<CalibrationSample> pooled;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& r = rec.tendons[i].range;
      for (const auto& s : samples[i])
        pooled.push_back({f::normalized(s.resistance, r.r_min, r.r_max - r.r_min),
                          s.length_change});
    }
    const CubicFit fit = fit_cubic(pooled, NormalizationRange{0.0, 1.0});
    for (auto& t : rec.tendons) t.map = fit.map;
  }

  double pooled_res = 0.0;
  std::size_t pooled_n = 0;
  rec.r_squared = 1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    auto& t = rec.tendons[i];
    const SumSquares ss = sum_squares(samples[i], t.range, t.map);
    t.r_squared = r_squared_of(ss);
    t.rmse = std::sqrt(ss.res / static_cast<double>(ss.n));
    pooled_res += ss.res;
    pooled_n += ss.n;
    rec.r_squared = std::min(rec.r_squared, t.r_squared);
  }
  rec.rmse = std::sqrt(pooled_res / static_cast<double>(pooled_n));
  return rec;
}

std::string fit_report(const CalibrationRecord& record) {
  validate(record);
  std::ostringstream os;
  os << "calibration fit=" << mode_name(record.mode) << " tendons=" << record.tendons.size()
     << "\n";
  for (std::size_t i = 0; i < record.tendons.size(); ++i) {
    const auto& t = record.tendons[i];
    os << "tendon " << i + 1 << ": r_min=" << format_double(t.range.r_min)
       << " r_max=" << format_double(t.range.r_max)
       << " base_length=" << format_double(t.base_length) << " a=" << format_double(t.map.a)
       << " b=" << format_double(t.map.b) << " c=" << format_double(t.map.c)
       << " d=" << format_double(t.map.d) << " scale=" << format_double(t.map.scale)
       << " offset=" << format_double(t.map.offset) << " r_squared=" << format_double(t.r_squared)
       << " rmse_m=" << format_double(t.rmse) << "\n";
  }
  os << "overall: r_squared=" << format_double(record.r_squared)
     << " rmse_m=" << format_double(record.rmse) << "\n";
  return os.str();
}

kernels::CubicParams cubic_params(const TendonCalibration& t, bool clamp) {
  return {t.range.r_min, t.range.r_max, clamp,       t.map.a,   t.map.b,
          t.map.c,       t.map.d,       t.map.scale, t.map.offset};
}

}  // namespace origami
