#ifndef ELASTICA_SYNTHESIS_HPP
#define ELASTICA_SYNTHESIS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "elastica/core.hpp"
#include "elastica/dynamics.hpp"
#include "elastica/polynomial.hpp"
#include "elastica/roots.hpp"

namespace elastica {

/// Curvature law kappa = p(x) plus the data fixing the antiderivative:
/// F(anchor_x) = duds_at_anchor, and the initial sign of dx/ds.
struct CurvatureSpec {
  Polynomial p;
  double anchor_x = 0.0;
  double duds_at_anchor = 0.0;
  int sigma0 = 1;
};

/// Slope profile F with F' = p and du/ds = F(x); derivatives F', ..., F^(k)
/// are cached (derivs[i] = F^(i), derivs[0] = F).
class FProfile {
public:
  FProfile(Polynomial F, JetDim dim) : dim_(dim) {
    if (F.degree() > dim.k())
      throw std::invalid_argument("FProfile: degree of F exceeds jet order " + std::to_string(dim.k()));
    derivs_.push_back(std::move(F));
    for (int i = 1; i <= dim.k(); ++i) derivs_.push_back(derivs_.back().derivative());
  }

  [[nodiscard]] JetDim dim() const { return dim_; }
  [[nodiscard]] const Polynomial& F() const { return derivs_[0]; }
  /// Curvature polynomial p = F'.
  [[nodiscard]] const Polynomial& p() const { return derivs_[1]; }
  [[nodiscard]] const Polynomial& derivative(int order) const {
    return derivs_.at(static_cast<std::size_t>(order));
  }

private:
  JetDim dim_;
  std::vector<Polynomial> derivs_;
};

inline FProfile build_profile(const CurvatureSpec& spec, JetDim dim) {
  if (spec.p.degree() > dim.k() - 1)
    throw std::invalid_argument("build_profile: curvature polynomial degree " + std::to_string(spec.p.degree()) +
                                " exceeds k-1 = " + std::to_string(dim.k() - 1));
  return FProfile(spec.p.antiderivative(spec.anchor_x, spec.duds_at_anchor), dim);
}

/// Reduced momenta seeded from the slope profile at x:
/// P_1 = sigma sqrt(1 - F^2), P_2 = F, P_{i+2} = (-1)^i F^(i) for i = 1..k.
inline ReducedMomenta momenta_from_F(const FProfile& prof, double x, int sigma) {
  const double f = prof.F()(x);
  if (std::abs(f) > 1.0)
    throw std::domain_error("momenta_from_F: |F(x)| > 1 outside the admissible band");
  const int k = prof.dim().k();
  ReducedMomenta P(prof.dim());
  P.P(1) = (sigma < 0 ? -1.0 : 1.0) * std::sqrt((1.0 - f) * (1.0 + f));
  P.P(2) = f;
  for (int i = 1; i <= k; ++i) P.P(i + 2) = ((i % 2 == 0) ? 1.0 : -1.0) * prof.derivative(i)(x);
  return P;
}

namespace detail {

/// Endpoint x_c of the band interval where F = level with F'(x_c) = 0.
/// There 1 - F^2 = (x - x_c)^mult g(x) with g > 0 near x_c.
struct CriticalEnd {
  double xc = 0.0;
  int mult = 2;
  Polynomial g;
};

/// Critical ends of the band interval around x (at most one per side).
inline std::vector<CriticalEnd> critical_ends(const FProfile& prof, double x) {
  const Polynomial& F = prof.F();
  std::vector<CriticalEnd> out;
  if (F.degree() < 1) return out;
  const double R = std::max(cauchy_bound(F - 1.0), cauchy_bound(F + 1.0)) + 1.0;
  struct Hit {
    double x;
    int level;
  };
  std::optional<Hit> left, right;
  for (int level : {1, -1})
    for (double r : real_roots(F - static_cast<double>(level), -R, R)) {
      if (r < x && (!left || r > left->x)) left = Hit{r, level};
      if (r > x && (!right || r < right->x)) right = Hit{r, level};
    }
  const Polynomial band = Polynomial{1.0} - F * F;
  for (const auto& h : {left, right}) {
    if (!h) continue;
    const int mult = root_multiplicity(F - static_cast<double>(h->level), h->x);
    if (mult < 2) continue;
    Polynomial g = band;
    for (int i = 0; i < mult; ++i) g = g.divmod(Polynomial{-h->x, 1.0}).first;
    out.push_back({h->x, mult, g});
  }
  return out;
}

/// State with momenta replaced by their values on the invariant curve P = P(x)
/// of an arc running monotonically into a critical end.
inline std::vector<double> on_tail_curve(const FProfile& prof, const CriticalEnd& end, double toward, double dir,
                                         const std::vector<double>& y) {
  const int k = prof.dim().k();
  const auto n = static_cast<std::size_t>(k + 2);
  const double x = y[0];
  const double r = end.xc - x;
  const double root = std::sqrt(std::max(end.g(x), 0.0));
  std::vector<double> z(y);
  if (end.mult == 2) z[n] = dir * r * root;  // smooth through x_c, which becomes attracting
  else z[n] = dir * toward * std::pow(std::max(toward * r, 0.0), 0.5 * end.mult) * root;
  z[n + 1] = prof.F()(x);
  for (int i = 1; i <= k; ++i)
    z[n + 1 + static_cast<std::size_t>(i)] = ((i % 2 == 0) ? 1.0 : -1.0) * prof.derivative(i)(x);
  return z;
}

}  // namespace detail

/// Geodesic whose planar projection has curvature p(x(s)), started at
/// `initial` (whose x must equal the anchor).
///
/// Arcs running into a critical end of their band approach it only
/// asymptotically; once the flow heads into such an end and is within 5% of
/// the band width, the remainder follows the invariant curve, on which the end
/// is attracting rather than a saddle.
inline GeodesicArc synthesize(const CurvatureSpec& spec, JetDim dim, const JetPoint& initial, double s_span,
                              Tolerances tol, OutputGrid grid) {
  if (spec.sigma0 != 1 && spec.sigma0 != -1) throw std::invalid_argument("synthesize: sigma must be +1 or -1");
  if (!(std::abs(spec.duds_at_anchor) < 1.0))
    throw std::invalid_argument("synthesize: anchor slope must satisfy |du/ds| < 1");
  if (initial.k() != dim.k()) throw DimensionError("synthesize: initial jet has wrong order");
  if (initial.x != spec.anchor_x) throw std::invalid_argument("synthesize: initial jet x must equal the anchor x");
  const FProfile prof = build_profile(spec, dim);
  const GeodesicState init{initial, momenta_from_F(prof, spec.anchor_x, spec.sigma0), 0.0};
  detail::check_integrate_args(init, s_span, tol, grid);

  const auto ends = detail::critical_ends(prof, spec.anchor_x);
  if (ends.empty()) return detail::sample_arc(init, s_span, tol, grid, detail::flow(init, s_span, tol));

  double lo = spec.anchor_x, hi = spec.anchor_x;
  for (const auto& e : ends) {
    lo = std::min(lo, e.xc);
    hi = std::max(hi, e.xc);
  }
  const double reach = 0.05 * std::max(hi - lo, 1e-3);
  const double dir = s_span > 0.0 ? 1.0 : -1.0;
  const auto n = static_cast<std::size_t>(dim.k() + 2);
  const detail::CriticalEnd* target = nullptr;
  auto stop = [&](double, const std::vector<double>& y) {
    for (const auto& e : ends) {
      const double r = e.xc - y[0];
      if (std::abs(r) < reach && dir * y[n] * r > 0.0) {
        target = &e;
        return true;
      }
    }
    return false;
  };
  DenseSolution dense = detail::flow(init, s_span, tol, stop);
  if (target) {
    const double s_switch = dense.t_end();
    if (dir * (s_span - s_switch) > 0.0) {
      const double toward = target->xc > dense(s_switch)[0] ? 1.0 : -1.0;
      const detail::CriticalEnd end = *target;
      const int k = dim.k();
      auto rhs = [&, end, toward, k](double, const std::vector<double>& y, std::vector<double>& dy) {
        detail::geodesic_field(k, detail::on_tail_curve(prof, end, toward, dir, y), dy);
      };
      // the field reads only positions, so momenta may be put back on the curve
      auto after = [&, end, toward](double, std::vector<double>& y) {
        y = detail::on_tail_curve(prof, end, toward, dir, y);
        y[2 * n] = detail::rewrap(y[2 * n], y[n], y[n + 1]);
      };
      OdeOptions opt = detail::ode_options(tol);
      const double rate = std::sqrt(std::max(end.g(end.xc), 0.0));
      if (end.mult == 2 && rate > 0.0) opt.h_max = 0.5 / rate;
      dense.append(DormandPrince::solve(rhs, s_switch, dense(s_switch), s_span, opt, after));
    }
  }
  return detail::sample_arc(init, s_span, tol, grid, std::move(dense));
}

/// max over samples of |P_2 - F| + |kappa - F'| + sum_i |P_{i+2} - (-1)^i F^(i)|.
inline double roundtrip_residual(const GeodesicArc& arc, const FProfile& prof) {
  const int k = prof.dim().k();
  if (arc.dim().k() != k) throw DimensionError("roundtrip_residual: arc and profile disagree on k");
  double worst = 0.0;
  for (const auto& a : arc.samples()) {
    const double x = a.q.x;
    double r = std::abs(a.P.P(2) - prof.F()(x)) + std::abs(a.kappa - prof.p()(x));
    for (int i = 1; i <= k; ++i)
      r += std::abs(a.P.P(i + 2) - ((i % 2 == 0) ? 1.0 : -1.0) * prof.derivative(i)(x));
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace elastica

#endif  // ELASTICA_SYNTHESIS_HPP
