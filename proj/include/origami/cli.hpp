#pragma once

#include <iosfwd>

namespace origami::cli {

/// Entry point of the `origami` tool: simulate | calibrate | reconstruct |
/// evaluate | demo. Returns 0 iff the requested artifacts were fully written.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace origami::cli
