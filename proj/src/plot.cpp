#include "origami/plot.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>

#include "origami/numeric_text.hpp"

namespace origami {
namespace {

constexpr double kPane = 360.0;
constexpr double kMargin = 40.0;

struct Bounds {
  double lo_u = std::numeric_limits<double>::infinity(), hi_u = -lo_u;
  double lo_v = lo_u, hi_v = -lo_u;

  void add(double u, double v) {
    lo_u = std::min(lo_u, u);
    hi_u = std::max(hi_u, u);
    lo_v = std::min(lo_v, v);
    hi_v = std::max(hi_v, v);
  }
};

using Axis = double (*)(const Point3&);

void polyline(std::ostringstream& os, const Trajectory& traj, Axis u, Axis v, const Bounds& b,
              double x0, const char* style) {
  // Equal scaling on both axes so the path shape is not distorted.
  const double span = std::max({b.hi_u - b.lo_u, b.hi_v - b.lo_v, 1e-9});
  const double k = (kPane - 2 * kMargin) / span;
  os << "<polyline fill=\"none\" " << style << " points=\"";
  for (const auto& p : traj.points) {
    const double px = x0 + kMargin + (u(p) - b.lo_u) * k;
    const double py = kPane - kMargin - (v(p) - b.lo_v) * k;
    os << text::format_fixed(px, 2) << ',' << text::format_fixed(py, 2) << ' ';
  }
  os << "\"/>\n";
}

}  // namespace

std::string trajectory_svg(const Trajectory& path, const std::optional<Trajectory>& reference) {
  const std::array<std::pair<Axis, Axis>, 2> panes{{
      {[](const Point3& p) { return p.x; }, [](const Point3& p) { return p.y; }},
      {[](const Point3& p) { return p.x; }, [](const Point3& p) { return p.z; }},
  }};
  const std::array<const char*, 2> titles{"XY projection", "XZ projection"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * kPane << "\" height=\""
     << kPane << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t i = 0; i < panes.size(); ++i) {
    const auto [u, v] = panes[i];
    Bounds b;
    for (const auto& p : path.points) b.add(u(p), v(p));
    if (reference)
      for (const auto& p : reference->points) b.add(u(p), v(p));
    const double x0 = static_cast<double>(i) * kPane;
    os << "<rect x=\"" << x0 + 1 << "\" y=\"1\" width=\"" << kPane - 2 << "\" height=\""
       << kPane - 2 << "\" fill=\"white\" stroke=\"#888\"/>\n";
    os << "<text x=\"" << x0 + kMargin << "\" y=\"24\">" << titles[i] << "</text>\n";
    if (reference) polyline(os, *reference, u, v, b, x0, "stroke=\"#999\" stroke-dasharray=\"4 3\"");
    polyline(os, path, u, v, b, x0, "stroke=\"#c0392b\" stroke-width=\"1.5\"");
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace origami
