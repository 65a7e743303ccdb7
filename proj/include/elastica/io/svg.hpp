#ifndef ELASTICA_IO_SVG_HPP
#define ELASTICA_IO_SVG_HPP

#include <algorithm>
#include <limits>
#include <ostream>
#include <vector>

#include "elastica/dynamics.hpp"
#include "elastica/io/csv.hpp"

namespace elastica::io {

/// Planar projections (x, u_k) as SVG, one <path> per arc. The viewBox is
/// the data extent padded by 5%; the stroke is 0.5% of the extent. The u
/// axis points up.
inline void write_svg(std::ostream& os, const std::vector<const GeodesicArc*>& arcs) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, umin = xmin, umax = -xmin;
  for (const auto* arc : arcs)
    for (const auto& a : arc->samples()) {
      const auto p = project_plane(a.q);
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      umin = std::min(umin, p.u);
      umax = std::max(umax, p.u);
    }
  double extent = std::max({xmax - xmin, umax - umin, 1e-9});
  const double pad = 0.05 * extent;
  const double vx = xmin - pad, vy = -(umax + pad);
  const double vw = (xmax - xmin) + 2 * pad, vh = (umax - umin) + 2 * pad;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(vx) << ' ' << format_double(vy) << ' '
     << format_double(vw) << ' ' << format_double(vh) << "\">\n";
  for (const auto* arc : arcs) {
    os << "  <path fill=\"none\" stroke=\"black\" stroke-width=\"" << format_double(0.005 * extent) << "\" d=\"";
    bool first = true;
    for (const auto& a : arc->samples()) {
      const auto p = project_plane(a.q);
      os << (first ? "M" : " L") << format_double(p.x) << ',' << format_double(-p.u);
      first = false;
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
}

inline void write_svg(std::ostream& os, const GeodesicArc& arc) { write_svg(os, std::vector<const GeodesicArc*>{&arc}); }

}  // namespace elastica::io

#endif  // ELASTICA_IO_SVG_HPP
