#pragma once

#include <optional>
#include <string>

#include "origami/reconstruction.hpp"

namespace origami {

/// Static SVG with XY and XZ projections of the path, plus the reference
/// path (dashed) when given.
std::string trajectory_svg(const Trajectory& path, const std::optional<Trajectory>& reference = {});

}  // namespace origami
