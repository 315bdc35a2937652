#pragma once

// CSV logs and trajectories, and the versioned calibration file.
//
// Log header (fixed order; optional groups appear together or not at all):
//   t,v1,v2,v3[,code1,code2,code3][,l1,l2,l3,theta,phi,L,x,y,z]
// Trajectory header:
//   t,x,y,z,theta,phi,L

#include <filesystem>
#include <iosfwd>
#include <string>

#include "origami/calibration.hpp"
#include "origami/reconstruction.hpp"

namespace origami {

void write_log(std::ostream& os, const SensorLog& log);
SensorLog read_log(std::istream& is);

void write_trajectory(std::ostream& os, const Trajectory& traj);

/// Accepts a trajectory file or a log with ground-truth columns.
Trajectory read_trajectory(std::istream& is);

void write_calibration(std::ostream& os, const CalibrationRecord& record);
CalibrationRecord read_calibration(std::istream& is);

/// Writes `contents` to a sibling temp file and renames it into place, so the
/// target is either complete or untouched.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace origami
