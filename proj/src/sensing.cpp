#include "origami/sensing.hpp"

#include <cmath>
#include <random>
#include <string>

#include "origami/errors.hpp"
#include "origami/kernels/formulas.hpp"

namespace origami {

namespace f = kernels::formula;

void validate(const TendonResistorModel& m) {
  if (!(m.lambda > 0.0) || !std::isfinite(m.lambda))
    throw InvalidArgument("resistance per length must be > 0");
  if (!(m.r_contact >= 0.0) || !std::isfinite(m.r_contact))
    throw InvalidArgument("contact resistance must be >= 0");
}

void validate(const BridgeParams& p) {
  for (double r : {p.r1, p.r2, p.r4})
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("bridge resistors must be > 0");
  if (!(p.v_in > 0.0) || !std::isfinite(p.v_in))
    throw InvalidArgument("bridge supply must be > 0");
}

void validate(const AdcModel& a) {
  if (a.bits < 1 || a.bits > 24) throw InvalidArgument("ADC bits must be in [1, 24]");
  if (!(a.v_ref > 0.0) || !std::isfinite(a.v_ref))
    throw InvalidArgument("ADC reference must be > 0");
}

void validate(const NoiseModel& n) {
  if (!(n.sigma >= 0.0) || !std::isfinite(n.sigma))
    throw InvalidArgument("noise sigma must be >= 0");
}

double length_to_resistance(double length, const TendonResistorModel& model) {
  validate(model);
  if (!(length > 0.0)) throw InvalidArgument("tendon length must be > 0");
  return f::resistance(length, model.lambda, model.r_contact);
}

double bridge_forward(double r_x, const BridgeParams& p) {
  validate(p);
  if (!(r_x > 0.0)) throw InvalidArgument("bridge resistance must be > 0");
  return f::bridge_voltage(r_x, p.r2 / (p.r1 + p.r2), p.r4, p.v_in);
}

double bridge_invert(double v_out, const BridgeParams& p) {
  validate(p);
  const double k = f::bridge_k(v_out, p.r2 / (p.r1 + p.r2), p.v_in);
  if (!(k > 0.0 && k < 1.0))
    throw OutOfRange("bridge voltage " + std::to_string(v_out) +
                     " V is outside the reachable band (k = " + std::to_string(k) + ")");
  return f::bridge_resistance(k, p.r4);
}

AdcSample adc_quantize(double v, const AdcModel& adc) {
  validate(adc);
  const double max_code = static_cast<double>((std::int64_t{1} << adc.bits) - 1);
  const double code = f::adc_code(v, adc.v_ref, max_code);
  return {static_cast<std::int32_t>(code), f::adc_volts(code, adc.v_ref, max_code)};
}

std::vector<double> add_noise(std::span<const double> series, const NoiseModel& noise) {
  validate(noise);
  std::vector<double> out(series.begin(), series.end());
  if (noise.sigma == 0.0) return out;
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> dist(0.0, noise.sigma);
  for (double& v : out) v += dist(rng);
  return out;
}

}  // namespace origami
