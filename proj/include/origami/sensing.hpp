#pragma once

// Tendon-as-resistor model, Wheatstone bridge (both directions), ADC
// quantization and additive Gaussian voltage noise.
//
// Resistance depends on active length only; no operation here takes tendon
// force as an input.

#include <cstdint>
#include <span>
#include <vector>

namespace origami {

/// R = lambda * l + r_contact.
struct TendonResistorModel {
  double lambda = 100.0 / 3.0;  ///< [Ohm/m]; 10 Ohm per 0.30 m of thread
  double r_contact = 0.0;       ///< [Ohm]
};

/// Known bridge resistors; r1/r2 form the reference branch and r4 is paired
/// with the tendon.
struct BridgeParams {
  double r1 = 10.0, r2 = 10.0, r4 = 10.0;  ///< [Ohm]
  double v_in = 5.0;                        ///< [V]
};

struct AdcModel {
  int bits = 10;
  double v_ref = 5.0;  ///< [V]
};

struct NoiseModel {
  double sigma = 0.005;  ///< [V]
  std::uint64_t seed = 0;
};

struct AdcSample {
  std::int32_t code = 0;
  double volts = 0.0;
};

void validate(const TendonResistorModel& m);
void validate(const BridgeParams& p);
void validate(const AdcModel& a);
void validate(const NoiseModel& n);

double length_to_resistance(double length, const TendonResistorModel& model);

/// v_in * (r2/(r1+r2) - r4/(r4+r_x)).
double bridge_forward(double r_x, const BridgeParams& p);

/// Inverse bridge: r4 * (1 - k)/k with k = r2/(r1+r2) - v_out/v_in.
/// Throws OutOfRange when k is not in (0, 1).
double bridge_invert(double v_out, const BridgeParams& p);

/// Round-half-up quantization of clamp(v, 0, v_ref) to 2^bits - 1 steps.
AdcSample adc_quantize(double v, const AdcModel& adc);

/// Adds independent N(0, sigma^2) draws from a generator seeded with
/// `noise.seed`; identical seeds give identical output.
std::vector<double> add_noise(std::span<const double> series, const NoiseModel& noise);

}  // namespace origami
