#ifndef ELASTICA_DYNAMICS_HPP
#define ELASTICA_DYNAMICS_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "elastica/core.hpp"
#include "elastica/ode.hpp"
#include "elastica/poisson.hpp"

namespace elastica {

struct GeodesicState {
  JetPoint q;
  ReducedMomenta P;
  double s = 0.0;
};

struct ArcSample {
  double s = 0.0;
  JetPoint q;
  ReducedMomenta P;
  double theta = 0.0;  // continuous heading of (P_1, P_2)
  double kappa = 0.0;  // -P_3
  double H = 0.0;
  std::vector<double> casimir_values;
};

/// Uniform output grid: either a fixed step or a fixed number of samples
/// (endpoints included).
struct OutputGrid {
  double step = 0.0;
  int count = 0;

  static OutputGrid by_step(double h) { return {h, 0}; }
  static OutputGrid by_count(int n) { return {0.0, n}; }
};

struct Tolerances {
  double rel = 1e-10;
  double abs = 1e-10;
};

/// Derivatives of the reduced momenta along the flow of H.
inline std::vector<double> reduced_rhs(const ReducedMomenta& P) {
  const int k = P.k();
  std::vector<double> d(static_cast<std::size_t>(k + 2), 0.0);
  d[0] = P.P(3) * P.P(2);
  d[1] = -P.P(3) * P.P(1);
  for (int i = 3; i <= k + 1; ++i) d[static_cast<std::size_t>(i - 1)] = -P.P(1) * P.P(i + 1);
  return d;
}

/// Velocity of the projected jet point: P_1 X_1 + P_2 X_2 in flat layout.
inline std::vector<double> position_rhs(const JetPoint& q, const ReducedMomenta& P) {
  return horizontal_velocity(q, P.P(1), P.P(2));
}

namespace detail {

// Packed state: [x, u_k..u_1, y | P_1..P_{k+2} | theta]
inline std::vector<double> pack(const JetPoint& q, const ReducedMomenta& P, double theta) {
  std::vector<double> y = q.flat();
  y.insert(y.end(), P.values().begin(), P.values().end());
  y.push_back(theta);
  return y;
}

inline void geodesic_field(int k, const std::vector<double>& y, std::vector<double>& dy) {
  const auto n = static_cast<std::size_t>(k + 2);
  const double* P = y.data() + n;  // P[0] = P_1
  // positions; flat index of u_j is k+1-j
  dy[0] = P[0];
  dy[1] = P[1];
  for (int i = 2; i <= k; ++i) dy[static_cast<std::size_t>(k + 2 - i)] = y[static_cast<std::size_t>(k + 1 - i)] * P[0];
  dy[n - 1] = y[n - 2] * P[0];
  // momenta
  double* dP = dy.data() + n;
  dP[0] = P[2] * P[1];
  dP[1] = -P[2] * P[0];
  for (std::size_t i = 2; i + 1 < n; ++i) dP[i] = -P[0] * P[i + 1];
  dP[n - 1] = 0.0;
  // heading
  dy[2 * n] = -P[2];
}

inline double rewrap(double theta, double p1, double p2) {
  if (std::hypot(p1, p2) < 1e-8) return theta;
  const double a = std::atan2(p2, p1);
  const double turns = std::round((theta - a) / (2.0 * std::numbers::pi));
  return a + turns * 2.0 * std::numbers::pi;
}

}  // namespace detail

/// Sampled geodesic together with its continuous (dense) representation.
class GeodesicArc {
public:
  GeodesicArc(JetDim dim, std::vector<ArcSample> samples, DenseSolution dense, Tolerances tol,
              double max_drift)
      : dim_(dim), cas_(casimirs(dim)), samples_(std::move(samples)), dense_(std::move(dense)), tol_(tol),
        max_drift_(max_drift) {}

  [[nodiscard]] JetDim dim() const { return dim_; }
  [[nodiscard]] const std::vector<ArcSample>& samples() const { return samples_; }
  [[nodiscard]] const Tolerances& tolerances() const { return tol_; }
  /// max over samples of |I(s) - I(0)| / max(1, |I(0)|) for H and every C_i.
  [[nodiscard]] double max_invariant_drift() const { return max_drift_; }
  [[nodiscard]] double s_begin() const { return samples_.front().s; }
  [[nodiscard]] double s_end() const { return samples_.back().s; }
  [[nodiscard]] bool has_dense() const { return !dense_.empty(); }
  [[nodiscard]] const DenseSolution& dense() const { return dense_; }

  /// Interpolated state at s (within the integrated span).
  [[nodiscard]] ArcSample at(double s) const {
    if (dense_.empty()) throw std::logic_error("GeodesicArc::at: no dense output");
    return make_sample(s, dense_(s), cas_);
  }

  static ArcSample make_sample(double s, const std::vector<double>& y, const CasimirSet& cas) {
    const int k = cas.k;
    const auto n = static_cast<std::size_t>(k + 2);
    ArcSample a;
    a.s = s;
    a.q = JetPoint::from_flat({y.begin(), y.begin() + static_cast<long>(n)});
    a.P = ReducedMomenta({y.begin() + static_cast<long>(n), y.begin() + static_cast<long>(2 * n)});
    a.theta = detail::rewrap(y[2 * n], a.P.P(1), a.P.P(2));
    a.kappa = -a.P.P(3);
    a.H = hamiltonian(a.P);
    a.casimir_values = cas.evaluate(a.P);
    return a;
  }

private:
  JetDim dim_;
  CasimirSet cas_;
  std::vector<ArcSample> samples_;
  DenseSolution dense_;
  Tolerances tol_;
  double max_drift_;
};

namespace detail {

inline void check_integrate_args(const GeodesicState& init, double s_end, Tolerances tol, OutputGrid grid) {
  const int k = init.q.k();
  if (k < 1 || init.P.k() != k) throw DimensionError("integrate: jet point and momenta disagree on k");
  if (!(tol.rel > 0.0) || !(tol.abs > 0.0)) throw std::invalid_argument("integrate: tolerances must be positive");
  if (s_end == init.s) throw std::invalid_argument("integrate: empty s-span");
  if (grid.step <= 0.0 && grid.count < 2) throw std::invalid_argument("integrate: output grid needs step > 0 or count >= 2");
}

inline double initial_heading(const ReducedMomenta& P) {
  return std::hypot(P.P(1), P.P(2)) > 0.0 ? std::atan2(P.P(2), P.P(1)) : 0.0;
}

inline OdeOptions ode_options(Tolerances tol) {
  OdeOptions opt;
  opt.rel_tol = tol.rel;
  opt.abs_tol = tol.abs;
  return opt;
}

/// Sample a dense solution covering [init.s, s_end] and measure invariant drift.
inline GeodesicArc sample_arc(const GeodesicState& init, double s_end, Tolerances tol, OutputGrid grid,
                              DenseSolution dense) {
  const JetDim dim{init.q.k()};
  const auto cas = casimirs(dim);
  const auto y0 = pack(init.q, init.P, initial_heading(init.P));
  const double span = s_end - init.s;
  int count = grid.count;
  if (grid.step > 0.0) count = static_cast<int>(std::floor(std::abs(span) / grid.step + 1e-9)) + 1;
  count = std::max(count, 2);
  const double ds = grid.step > 0.0 ? std::copysign(grid.step, span) : span / (count - 1);

  std::vector<ArcSample> samples;
  samples.reserve(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i < count; ++i) {
    const double s = (i == count - 1 && grid.step <= 0.0) ? s_end : init.s + ds * i;
    samples.push_back(GeodesicArc::make_sample(s, i == 0 ? y0 : dense(s), cas));
  }
  if (grid.step > 0.0 && std::abs(samples.back().s - s_end) > 1e-12 * std::max(1.0, std::abs(s_end)))
    samples.push_back(GeodesicArc::make_sample(s_end, dense(s_end), cas));

  const double H0 = samples.front().H;
  const auto C0 = samples.front().casimir_values;
  double drift = 0.0;
  for (const auto& a : samples) {
    drift = std::max(drift, std::abs(a.H - H0) / std::max(1.0, std::abs(H0)));
    for (std::size_t i = 0; i < C0.size(); ++i)
      drift = std::max(drift, std::abs(a.casimir_values[i] - C0[i]) / std::max(1.0, std::abs(C0[i])));
  }
  return GeodesicArc(dim, std::move(samples), std::move(dense), tol, drift);
}

/// Dense geodesic flow from `init` toward `s_end`, stopping early if `stop` fires.
inline DenseSolution flow(const GeodesicState& init, double s_end, Tolerances tol,
                          const DormandPrince::Stop& stop = {}) {
  const int k = init.q.k();
  const auto n = static_cast<std::size_t>(k + 2);
  auto rhs = [k](double, const std::vector<double>& y, std::vector<double>& dy) { geodesic_field(k, y, dy); };
  auto after = [n](double, std::vector<double>& y) { y[2 * n] = rewrap(y[2 * n], y[n], y[n + 1]); };
  return DormandPrince::solve(rhs, init.s, pack(init.q, init.P, initial_heading(init.P)), s_end, ode_options(tol),
                              after, stop);
}

}  // namespace detail

/// Integrate the geodesic flow from `init` to `s_end` and sample it on a
/// uniform grid using dense output.
inline GeodesicArc integrate(const GeodesicState& init, double s_end, Tolerances tol, OutputGrid grid) {
  detail::check_integrate_args(init, s_end, tol, grid);
  return detail::sample_arc(init, s_end, tol, grid, detail::flow(init, s_end, tol));
}

struct CurvatureSample {
  double s = 0.0;
  double x = 0.0;
  double kappa = 0.0;
};

struct CurvatureProfile {
  std::vector<CurvatureSample> samples;
  /// True when the projection has no x-motion at all (vertical line); the
  /// geometric cross-check is skipped then.
  bool degenerate = false;
  /// max |kappa - dtheta/ds| with dtheta/ds by central differences.
  double geometric_deviation = 0.0;
  /// Allowed deviation, max(1e-6, 10 h^2) for grid step h.
  double geometric_tolerance = 0.0;

  [[nodiscard]] bool consistent() const { return degenerate || geometric_deviation <= geometric_tolerance; }
};

inline CurvatureProfile curvature_along(const GeodesicArc& arc) {
  const auto& smp = arc.samples();
  if (smp.empty()) throw std::invalid_argument("curvature_along: empty arc");
  CurvatureProfile out;
  double max_p1 = 0.0;
  for (const auto& a : smp) {
    out.samples.push_back({a.s, a.q.x, a.kappa});
    max_p1 = std::max(max_p1, std::abs(a.P.P(1)));
  }
  out.degenerate = max_p1 < 1e-12;
  if (smp.size() >= 3) {
    const double h = std::abs(smp[1].s - smp[0].s);
    out.geometric_tolerance = std::max(1e-6, 10.0 * h * h);
    if (!out.degenerate) {
      for (std::size_t i = 1; i + 1 < smp.size(); ++i) {
        if (std::hypot(smp[i].P.P(1), smp[i].P.P(2)) < 1e-8) continue;
        const double dth = (smp[i + 1].theta - smp[i - 1].theta) / (smp[i + 1].s - smp[i - 1].s);
        out.geometric_deviation = std::max(out.geometric_deviation, std::abs(dth - smp[i].kappa));
      }
    }
  }
  return out;
}

}  // namespace elastica

#endif  // ELASTICA_DYNAMICS_HPP
