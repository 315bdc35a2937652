#pragma once

#include <stdexcept>
#include <string>

namespace origami {

/// Argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bridge voltage outside the physically reachable band (saturated or
/// disconnected sensor).
class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Fewer than four distinct abscissae for a cubic fit.
class RankDeficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tendon commands that collapse a tendon or exceed the bend limit.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed config, log, trajectory or calibration file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace origami
