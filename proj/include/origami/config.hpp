#pragma once

// Run configuration: flat sectioned key=value text.
//
//   [geometry]
//   d=0.02
//   ...
//
// '#' starts a comment line. Unknown sections or keys are errors; keys left
// out of a present section keep their defaults.

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>

#include "origami/reconstruction.hpp"
#include "origami/simulator.hpp"

namespace origami {

struct OutputPaths {
  std::string log = "run_log.csv";
  std::string calibration = "calibration.txt";
  std::string trajectory = "trajectory.csv";
  std::string plot;  ///< empty: no SVG
};

struct RunConfig {
  ManipulatorGeometry geometry;
  SensorConfig sensor;
  ActuationProtocol protocol;
  FilterSpec filter;
  LengthMode length_mode = LengthMode::delta;
  bool clamp = false;
  double max_invalid_fraction = 0.1;
  SweepOptions calibration;
  OutputPaths output;
  std::uint64_t seed = 1;
  double max_rmse_fraction = 0.05;  ///< demo bound, fraction of trajectory diameter

  std::set<std::string> sections;  ///< sections present in the source text

  /// Reconstruction options derived from geometry + filter + reconstruction.
  ReconstructionOptions reconstruction() const;
};

/// Throws FormatError on syntax errors, unknown sections/keys or bad values.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text with every key, in a fixed order; parse_config(format_config(c))
/// reproduces c.
std::string format_config(const RunConfig& c);

/// Throws FormatError naming the first missing section.
void require_sections(const RunConfig& c, std::initializer_list<std::string_view> names);

std::string_view protocol_kind_name(ProtocolKind k);

}  // namespace origami
