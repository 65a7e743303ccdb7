#ifndef ELASTICA_GALLERY_HPP
#define ELASTICA_GALLERY_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "elastica/analysis.hpp"
#include "elastica/dynamics.hpp"
#include "elastica/synthesis.hpp"

namespace elastica {

struct ConvictParams {
  int k = 2;
  double a = 1.0;
  double alpha = 1.0;
};

/// F(x) = x^k / a^k - alpha, so the curvature k x^{k-1} / a^k is
/// proportional to x^{k-1}.
inline FProfile convict_profile(const ConvictParams& params) {
  if (params.k < 2) throw std::invalid_argument("convict_profile: k must be >= 2");
  if (!(params.a > 0.0)) throw std::invalid_argument("convict_profile: a must be positive");
  const Polynomial F = Polynomial::monomial(static_cast<std::size_t>(params.k), std::pow(params.a, -params.k)) - params.alpha;
  return FProfile(F, JetDim{params.k});
}

/// Profiles whose band [-1, 1] has two critical ends, giving geodesics that
/// are graphs over x. Odd m: F = -(x^m - m x)/(m-1); even m = 2j:
/// F = -(x^m - j x^2)/(1-j).
inline FProfile graph_profile(int m) {
  if (m < 3) throw std::invalid_argument("graph_profile: order must be >= 3");
  Polynomial F;
  if (m % 2 == 1) {
    F = (-1.0 / (m - 1)) * (Polynomial::monomial(static_cast<std::size_t>(m)) - Polynomial::monomial(1, m));
  } else {
    const int j = m / 2;
    F = (-1.0 / (1 - j)) * (Polynomial::monomial(static_cast<std::size_t>(m)) - Polynomial::monomial(2, j));
  }
  return FProfile(F, JetDim{m});
}

/// Spec seeding a synthesized arc from a profile at anchor x.
inline CurvatureSpec spec_from_profile(const FProfile& prof, double anchor_x, int sigma = 1) {
  return CurvatureSpec{prof.p(), anchor_x, prof.F()(anchor_x), sigma};
}

/// Scaled residual of kappa^2 = (k^2 / a^2) (P_2 + alpha)^{(2k-2)/k} on the
/// samples with x >= 0; each residual is divided by max(1, |rhs|).
inline double theta_ode_defect(const GeodesicArc& arc, const ConvictParams& params) {
  const int k = params.k;
  const double a = params.a;
  double worst = 0.0;
  for (const auto& s : arc.samples()) {
    if (s.q.x < 0.0) continue;
    double base = s.P.P(2) + params.alpha;
    if (base < 0.0) {
      if (base < -1e-9) throw std::domain_error("theta_ode_defect: P_2 + alpha < 0 (domain exit)");
      base = 0.0;
    }
    const double rhs = (double(k) * k / (a * a)) * std::pow(base, (2.0 * k - 2.0) / k);
    worst = std::max(worst, std::abs(s.kappa * s.kappa - rhs) / std::max(1.0, std::abs(rhs)));
  }
  return worst;
}

namespace detail {

inline bool segments_cross(double ax, double ay, double bx, double by, double cx, double cy, double dx, double dy) {
  auto orient = [](double px, double py, double qx, double qy, double rx, double ry) {
    return (qx - px) * (ry - py) - (qy - py) * (rx - px);
  };
  const double o1 = orient(ax, ay, bx, by, cx, cy), o2 = orient(ax, ay, bx, by, dx, dy);
  const double o3 = orient(cx, cy, dx, dy, ax, ay), o4 = orient(cx, cy, dx, dy, bx, by);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace detail

/// Number of proper crossings between non-adjacent segments of the planar
/// polyline (x, u_k) through samples with s in [s_from, s_to).
inline int self_intersections(const GeodesicArc& arc, double s_from, double s_to) {
  std::vector<PlanarPoint> pts;
  for (const auto& a : arc.samples())
    if (a.s >= s_from && a.s < s_to) pts.push_back(project_plane(a.q));
  int count = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double minx = std::min(pts[i].x, pts[i + 1].x), maxx = std::max(pts[i].x, pts[i + 1].x);
    const double minu = std::min(pts[i].u, pts[i + 1].u), maxu = std::max(pts[i].u, pts[i + 1].u);
    for (std::size_t j = i + 2; j + 1 < pts.size(); ++j) {
      if (std::max(pts[j].x, pts[j + 1].x) < minx || std::min(pts[j].x, pts[j + 1].x) > maxx) continue;
      if (std::max(pts[j].u, pts[j + 1].u) < minu || std::min(pts[j].u, pts[j + 1].u) > maxu) continue;
      if (detail::segments_cross(pts[i].x, pts[i].u, pts[i + 1].x, pts[i + 1].u, pts[j].x, pts[j].u, pts[j + 1].x,
                                 pts[j + 1].u))
        ++count;
    }
  }
  return count;
}

struct IntervalReport {
  BandInterval interval;
  MotionClass motion = MotionClass::Periodic;
  PeriodData period;
};

/// Classification report for every interval of a profile's band.
inline std::vector<IntervalReport> classify_profile(const FProfile& prof, double tol = 1e-11) {
  std::vector<IntervalReport> out;
  const auto band = decompose_band(prof);
  for (const auto& iv : band.intervals) {
    IntervalReport r;
    r.interval = iv;
    r.motion = classify(iv, prof.p());
    if (r.motion != MotionClass::Unbounded && r.motion != MotionClass::DegenerateVerticalLine)
      r.period = period_shift(prof, iv, tol);
    out.push_back(r);
  }
  return out;
}

struct GalleryCurve {
  std::string name;
  ConvictParams params;
  FProfile profile;
  GeodesicArc arc;
  std::vector<IntervalReport> reports;
  /// Class of the interval the arc lives in.
  MotionClass motion = MotionClass::Periodic;
  /// Crossings of the planar curve over one period starting at the rightmost
  /// turning point (periodic curves only).
  int self_intersections_per_period = 0;
};

/// The three classic k = 2 elastica (a = 1): convict curve (alpha = 1),
/// pseudo-sinusoid (alpha = 0), pseudo-lemniscate (alpha = 0.65222).
inline std::vector<GalleryCurve> figure1_suite(Tolerances tol = {1e-10, 1e-10}) {
  struct Item {
    const char* name;
    double alpha;
    double anchor;
  };
  const Item items[] = {{"convict", 1.0, 1.0}, {"pseudo_sinusoid", 0.0, 0.0}, {"pseudo_lemniscate", 0.65222, 0.0}};
  std::vector<GalleryCurve> out;
  for (const auto& it : items) {
    const ConvictParams params{2, 1.0, it.alpha};
    FProfile prof = convict_profile(params);
    const JetDim dim{2};
    JetPoint q0(dim);
    q0.x = it.anchor;
    const auto reports = classify_profile(prof);
    MotionClass motion = MotionClass::Periodic;
    double L = 0.0;
    for (const auto& r : reports)
      if (it.anchor >= r.interval.x0.x && it.anchor <= r.interval.x1.x) {
        motion = r.motion;
        L = r.period.finite ? r.period.L : 0.0;
      }
    const double span = L > 0.0 ? 2.0 * L : 30.0;
    GeodesicArc arc = synthesize(spec_from_profile(prof, it.anchor), dim, q0, span, tol, OutputGrid::by_count(4001));
    GalleryCurve c{it.name, params, prof, std::move(arc), reports, motion, 0};
    if (L > 0.0) {
      // start the period window at the rightmost turning point, clear of any crossing
      double s0 = 0.0, xmax = -std::numeric_limits<double>::infinity();
      for (const auto& a : c.arc.samples())
        if (a.s < L && a.q.x > xmax) {
          xmax = a.q.x;
          s0 = a.s;
        }
      c.self_intersections_per_period = self_intersections(c.arc, s0, s0 + L);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace elastica

#endif  // ELASTICA_GALLERY_HPP
