#ifndef ELASTICA_ANALYSIS_HPP
#define ELASTICA_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "elastica/dynamics.hpp"
#include "elastica/polynomial.hpp"
#include "elastica/roots.hpp"
#include "elastica/synthesis.hpp"

namespace elastica {

enum class EndpointKind {
  Regular,    // F = +-1 with F' != 0: turning point
  Critical,   // F = +-1 with F' == 0: relative equilibrium, reached in infinite time
  Truncated,  // band continues past the analysis window
};

enum class MotionClass {
  Periodic,
  AsymptoticOneLine,
  AsymptoticTwoLines,
  DegenerateVerticalLine,
  Unbounded,  // the band is cut by the window (constant F with |F| < 1)
};

inline const char* to_string(EndpointKind k) {
  switch (k) {
    case EndpointKind::Regular: return "Regular";
    case EndpointKind::Critical: return "Critical";
    case EndpointKind::Truncated: return "Truncated";
  }
  return "?";
}

inline const char* to_string(MotionClass c) {
  switch (c) {
    case MotionClass::Periodic: return "Periodic";
    case MotionClass::AsymptoticOneLine: return "AsymptoticOneLine";
    case MotionClass::AsymptoticTwoLines: return "AsymptoticTwoLines";
    case MotionClass::DegenerateVerticalLine: return "DegenerateVerticalLine";
    case MotionClass::Unbounded: return "Unbounded";
  }
  return "?";
}

struct BandEndpoint {
  double x = 0.0;
  int level = 0;  // +1 or -1; 0 for a truncated endpoint
  EndpointKind kind = EndpointKind::Regular;
  int multiplicity = 0;  // root order of F - level
  double dF = 0.0;       // F'(x), kept so near-degeneracy is visible
};

struct BandInterval {
  BandEndpoint x0, x1;
  [[nodiscard]] double width() const { return x1.x - x0.x; }
  [[nodiscard]] double mid() const { return 0.5 * (x0.x + x1.x); }
};

struct BandDecomposition {
  std::vector<BandInterval> intervals;
  /// Points where F = +-1 that are not attached to any interval.
  std::vector<BandEndpoint> isolated;
  std::pair<double, double> window{0.0, 0.0};
  /// True when the band is empty or consists only of isolated points.
  [[nodiscard]] bool degenerate() const { return intervals.empty(); }

  /// Interval containing x (closed), if any.
  [[nodiscard]] std::optional<BandInterval> containing(double x) const {
    for (const auto& iv : intervals)
      if (x >= iv.x0.x && x <= iv.x1.x) return iv;
    return std::nullopt;
  }
};

namespace detail {

inline bool is_critical(double dF, double d2F, double width) {
  return std::abs(dF) < 1e-10 * (1.0 + std::abs(d2F) * std::abs(width));
}

inline std::vector<double> roots_of_shifted(const Polynomial& F, double level, double a, double b) {
  return real_roots(F - level, a, b);
}

}  // namespace detail

/// Default analysis window: hull of the real roots of F^2 - 1 padded by 10%,
/// searched inside the Cauchy bounds of F - 1 and F + 1.
inline std::pair<double, double> default_window(const Polynomial& F) {
  if (F.degree() < 1) return {-1.0, 1.0};
  const double R = std::max(cauchy_bound(F - 1.0), cauchy_bound(F + 1.0));
  std::vector<double> r = detail::roots_of_shifted(F, 1.0, -R, R);
  const auto r2 = detail::roots_of_shifted(F, -1.0, -R, R);
  r.insert(r.end(), r2.begin(), r2.end());
  if (r.empty()) return {-R, R};
  const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
  const double pad = 0.1 * std::max(*hi - *lo, 1.0);
  return {*lo - pad, *hi + pad};
}

/// Intervals of F^{-1}([-1, 1]) within the window, split at every point where
/// F touches +-1.
inline BandDecomposition decompose_band(const FProfile& prof, std::pair<double, double> window) {
  const auto [a, b] = window;
  if (!(a < b)) throw std::invalid_argument("decompose_band: inverted window");
  const Polynomial& F = prof.F();
  BandDecomposition out;
  out.window = window;

  if (F.degree() < 1) {
    const double c = F(0.0);
    if (std::abs(c) < 1.0) {
      BandEndpoint e0{a, 0, EndpointKind::Truncated, 0, 0.0};
      BandEndpoint e1{b, 0, EndpointKind::Truncated, 0, 0.0};
      out.intervals.push_back({e0, e1});
    }
    return out;
  }

  struct Root {
    double x;
    int level;
  };
  std::vector<Root> roots;
  for (int level : {1, -1})
    for (double r : detail::roots_of_shifted(F, level, a, b)) roots.push_back({r, level});
  std::sort(roots.begin(), roots.end(), [](const Root& l, const Root& r) { return l.x < r.x; });

  const Polynomial dF = F.derivative(), d2F = dF.derivative();
  auto endpoint = [&](const Root& r, double width) {
    BandEndpoint e;
    e.x = r.x;
    e.level = r.level;
    e.dF = dF(r.x);
    e.kind = detail::is_critical(e.dF, d2F(r.x), width) ? EndpointKind::Critical : EndpointKind::Regular;
    e.multiplicity = detail::root_multiplicity(F - static_cast<double>(r.level), r.x);
    return e;
  };

  // breakpoints: window edges plus all roots
  std::vector<std::optional<Root>> pts;
  if (roots.empty() || roots.front().x > a) pts.emplace_back(std::nullopt);
  for (const auto& r : roots) pts.emplace_back(r);
  if (roots.empty() || roots.back().x < b) pts.emplace_back(std::nullopt);
  auto xof = [&](std::size_t i) {
    if (pts[i]) return pts[i]->x;
    return i == 0 ? a : b;
  };

  std::vector<bool> attached(roots.size(), false);
  const std::size_t offset = (roots.empty() || roots.front().x > a) ? 1 : 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = xof(i), hi = xof(i + 1);
    if (!(hi > lo)) continue;
    const double mid = 0.5 * (lo + hi);
    if (!(std::abs(F(mid)) < 1.0)) continue;
    const double width = hi - lo;
    BandInterval iv;
    iv.x0 = pts[i] ? endpoint(*pts[i], width) : BandEndpoint{lo, 0, EndpointKind::Truncated, 0, dF(lo)};
    iv.x1 = pts[i + 1] ? endpoint(*pts[i + 1], width) : BandEndpoint{hi, 0, EndpointKind::Truncated, 0, dF(hi)};
    if (pts[i]) attached[i - offset] = true;
    if (pts[i + 1]) attached[i + 1 - offset] = true;
    out.intervals.push_back(iv);
  }
  for (std::size_t j = 0; j < roots.size(); ++j)
    if (!attached[j]) out.isolated.push_back(endpoint(roots[j], 0.0));
  return out;
}

inline BandDecomposition decompose_band(const FProfile& prof) {
  return decompose_band(prof, default_window(prof.F()));
}

/// Motion type on a band interval from the vanishing of p = F' at its ends.
inline MotionClass classify(const BandInterval& iv, const Polynomial& p) {
  (void)p;  // endpoint kinds already encode p(x_i) == 0
  if (iv.x0.kind == EndpointKind::Truncated || iv.x1.kind == EndpointKind::Truncated) return MotionClass::Unbounded;
  if (!(iv.width() > 0.0)) return MotionClass::DegenerateVerticalLine;
  const int critical = (iv.x0.kind == EndpointKind::Critical) + (iv.x1.kind == EndpointKind::Critical);
  switch (critical) {
    case 0: return MotionClass::Periodic;
    case 1: return MotionClass::AsymptoticOneLine;
    default: return MotionClass::AsymptoticTwoLines;
  }
}

struct PeriodData {
  bool finite = false;
  double L = std::numeric_limits<double>::infinity();
  std::optional<double> tau;
  double action = 0.0;
  double error_estimate = 0.0;
};

class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double achieved) : std::runtime_error(what), achieved_(achieved) {}
  [[nodiscard]] double achieved() const { return achieved_; }

private:
  double achieved_;
};

namespace detail {

/// Integral of f over [0, pi/2]: adaptive Gauss-Kronrod, then tanh-sinh if
/// the estimate misses `tol`. Returns (value, error estimate).
template <class Fn>
std::pair<double, double> integrate_quarter(Fn f, double tol) {
  using boost::math::quadrature::gauss_kronrod;
  const double hi = std::numbers::pi / 2.0;
  double err = 0.0;
  const double v = gauss_kronrod<double, 31>::integrate(f, 0.0, hi, 20, 1e-14, &err);
  if (err <= tol) return {v, err};
  boost::math::quadrature::tanh_sinh<double> ts;
  double err2 = 0.0;
  const double v2 = ts.integrate(f, 0.0, hi, 1e-14, &err2);
  if (err2 <= tol) return {v2, err2};
  throw QuadratureError("quadrature tolerance not achieved", std::min(err, err2));
}

/// q(x) / ((x - x0)(x1 - x)) as a polynomial; q must vanish at x0 and x1.
inline Polynomial deflate(const Polynomial& q, double x0, double x1) {
  const Polynomial div = Polynomial{-x0, 1.0} * Polynomial{x1, -1.0};
  return q.divmod(div).first;
}

/// Connected component of {x : F(x)^2 <= c^2} that contains x_mid.
inline std::pair<double, double> level_component(const Polynomial& F, double c, double x_mid) {
  const double R = std::max(cauchy_bound(F - c), cauchy_bound(F + c)) + 1.0;
  std::vector<double> r = real_roots(F - c, -R, R);
  const auto r2 = real_roots(F + c, -R, R);
  r.insert(r.end(), r2.begin(), r2.end());
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  for (double x : r) {
    if (x <= x_mid) lo = std::max(lo, x);
    if (x >= x_mid) hi = std::min(hi, x);
  }
  return {lo, hi};
}

}  // namespace detail

/// Action 2 * integral of sqrt(2H - F^2) over the component of {F^2 <= 2H}
/// containing the interval (the loop integral of P_1 dx).
inline double action(const FProfile& prof, const BandInterval& iv, double H, double tol,
                     double* error_estimate = nullptr) {
  if (!(H > 0.0)) throw std::invalid_argument("action: H must be positive");
  const Polynomial& F = prof.F();
  const double c2 = 2.0 * H;
  if (F.degree() < 1 || iv.x0.kind == EndpointKind::Truncated || iv.x1.kind == EndpointKind::Truncated) {
    // integrate directly over the given interval
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    const double v = gauss_kronrod<double, 31>::integrate(
        [&](double x) { return std::sqrt(std::max(0.0, c2 - F(x) * F(x))); }, iv.x0.x, iv.x1.x, 20, 1e-14, &err);
    if (std::abs(F(iv.mid())) > std::sqrt(c2)) throw std::domain_error("action: empty admissible set");
    if (error_estimate) *error_estimate = 2.0 * err;
    return 2.0 * v;
  }
  const double c = std::sqrt(c2);
  if (std::abs(F(iv.mid())) > c) throw std::domain_error("action: empty admissible set");
  const auto [xa, xb] = detail::level_component(F, c, iv.mid());
  if (!std::isfinite(xa) || !std::isfinite(xb)) throw std::domain_error("action: unbounded admissible set");
  const Polynomial q = Polynomial::constant(c2) - F * F;
  const Polynomial g = detail::deflate(q, xa, xb);
  const double w = xb - xa;
  auto f = [&](double phi) {
    const double s = std::sin(phi), co = std::cos(phi);
    const double x = xa + w * s * s;
    return 4.0 * w * w * s * s * co * co * std::sqrt(std::max(0.0, g(x)));
  };
  const auto [v, err] = detail::integrate_quarter(f, tol);
  if (error_estimate) *error_estimate = err;
  return v;
}

/// Period L = int 2 dx / sqrt(1 - F^2) and shift tau = int 2 F dx / sqrt(1 - F^2)
/// over a band interval; infinite period when an endpoint is Critical.
inline PeriodData period_shift(const FProfile& prof, const BandInterval& iv, double tol) {
  if (!(iv.width() > 0.0)) throw std::invalid_argument("period_shift: degenerate interval");
  if (iv.x0.kind == EndpointKind::Truncated || iv.x1.kind == EndpointKind::Truncated)
    throw std::invalid_argument("period_shift: interval is not bounded by F = +-1");
  PeriodData out;
  double aerr = 0.0;
  out.action = action(prof, iv, 0.5, tol, &aerr);
  out.error_estimate = aerr;
  if (iv.x0.kind == EndpointKind::Critical || iv.x1.kind == EndpointKind::Critical) return out;

  const Polynomial& F = prof.F();
  const double x0 = iv.x0.x, w = iv.width();
  const Polynomial g = detail::deflate(Polynomial::constant(1.0) - F * F, x0, iv.x1.x);
  auto xat = [&](double phi) {
    const double s = std::sin(phi);
    return x0 + w * s * s;
  };
  const auto [L, eL] = detail::integrate_quarter([&](double phi) { return 4.0 / std::sqrt(g(xat(phi))); }, tol);
  const auto [T, eT] = detail::integrate_quarter(
      [&](double phi) {
        const double x = xat(phi);
        return 4.0 * F(x) / std::sqrt(g(x));
      },
      tol);
  out.finite = true;
  out.L = L;
  out.tau = T;
  out.error_estimate = std::max({aerr, eL, eT});
  return out;
}

/// Least-squares curvature polynomial kappa ~ p(x).
struct CurvatureFit {
  Polynomial p;
  double residual = 0.0;  // max |kappa - p(x)| over the whole arc
};

class InsufficientSpan : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Fit kappa against x on the longest run of samples with |dx/ds| >= 0.05 and
/// measure the residual over every sample of the arc.
inline CurvatureFit fit_curvature(const GeodesicArc& arc, int max_degree) {
  const auto& smp = arc.samples();
  std::size_t best_lo = 0, best_len = 0;
  for (std::size_t i = 0; i < smp.size();) {
    if (std::abs(smp[i].P.P(1)) < 0.05) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < smp.size() && std::abs(smp[j].P.P(1)) >= 0.05) ++j;
    if (j - i > best_len) {
      best_lo = i;
      best_len = j - i;
    }
    i = j;
  }
  const int ncoef = std::max(max_degree, 0) + 1;
  if (best_len < static_cast<std::size_t>(ncoef + 1))
    throw InsufficientSpan("fit_curvature: no sub-arc with enough x variation");

  double xmin = smp[best_lo].q.x, xmax = xmin;
  for (std::size_t i = best_lo; i < best_lo + best_len; ++i) {
    xmin = std::min(xmin, smp[i].q.x);
    xmax = std::max(xmax, smp[i].q.x);
  }
  const double m = 0.5 * (xmin + xmax);
  const double sc = 0.5 * (xmax - xmin);
  if (!(sc > 1e-12)) throw InsufficientSpan("fit_curvature: sub-arc has no x extent");

  Eigen::MatrixXd A(static_cast<Eigen::Index>(best_len), ncoef);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(best_len));
  for (std::size_t r = 0; r < best_len; ++r) {
    const double t = (smp[best_lo + r].q.x - m) / sc;
    double tp = 1.0;
    for (int c = 0; c < ncoef; ++c, tp *= t) A(static_cast<Eigen::Index>(r), c) = tp;
    rhs(static_cast<Eigen::Index>(r)) = smp[best_lo + r].kappa;
  }
  const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(rhs);

  // expand sum c_j ((x - m) / sc)^j in powers of x
  const Polynomial t{-m / sc, 1.0 / sc};
  Polynomial p;
  for (int c = ncoef - 1; c >= 0; --c) p = p * t + coef(c);
  CurvatureFit out;
  out.p = max_degree < 0 ? Polynomial{} : p;
  for (const auto& a : smp) out.residual = std::max(out.residual, std::abs(a.kappa - out.p(a.q.x)));
  return out;
}

struct PeriodicityDefect {
  double dx = 0.0;
  double du = 0.0;
};

/// max over s of |x(s+L) - x(s)| and |u_k(s+L) - u_k(s) - tau|.
inline PeriodicityDefect periodicity_defect(const GeodesicArc& arc, double L, double tau) {
  if (!std::isfinite(L) || !(L > 0.0)) throw std::invalid_argument("periodicity_defect: period must be finite");
  if (arc.s_end() - arc.s_begin() < L) throw std::invalid_argument("periodicity_defect: arc shorter than one period");
  const int k = arc.dim().k();
  PeriodicityDefect d;
  for (const auto& a : arc.samples()) {
    if (a.s + L > arc.s_end()) break;
    const ArcSample b = arc.at(a.s + L);
    d.dx = std::max(d.dx, std::abs(b.q.x - a.q.x));
    d.du = std::max(d.du, std::abs(b.q.u_at(k) - a.q.u_at(k) - tau));
  }
  return d;
}

/// First s > s_begin at which x returns to x(s_begin) moving in the same
/// direction; nullopt if it never does within the arc.
inline std::optional<double> first_return(const GeodesicArc& arc) {
  const auto& smp = arc.samples();
  const double x0 = smp.front().q.x;
  const double dir = smp.front().P.P(1);
  if (dir == 0.0) return std::nullopt;
  const double sg = dir > 0 ? 1.0 : -1.0;
  for (std::size_t i = 1; i + 1 < smp.size(); ++i) {
    const double d0 = sg * (smp[i].q.x - x0), d1 = sg * (smp[i + 1].q.x - x0);
    if (d0 < 0.0 && d1 >= 0.0) {
      double lo = smp[i].s, hi = smp[i + 1].s;
      for (int it = 0; it < 100 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sg * (arc.at(mid).q.x - x0) < 0.0) lo = mid;
        else hi = mid;
      }
      return 0.5 * (lo + hi);
    }
  }
  return std::nullopt;
}

}  // namespace elastica

#endif  // ELASTICA_ANALYSIS_HPP
