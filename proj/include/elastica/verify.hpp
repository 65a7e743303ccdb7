#ifndef ELASTICA_VERIFY_HPP
#define ELASTICA_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "elastica/analysis.hpp"
#include "elastica/core.hpp"
#include "elastica/dynamics.hpp"
#include "elastica/gallery.hpp"
#include "elastica/io/svg.hpp"
#include "elastica/poisson.hpp"
#include "elastica/synthesis.hpp"

namespace elastica::verify {

/// Outcome of one invariant check: the worst measured value against its bound.
struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

  ReducedMomenta momenta(int k, double lo = -2.0, double hi = 2.0) {
    std::vector<double> v(static_cast<std::size_t>(k + 2));
    for (double& x : v) x = uniform(lo, hi);
    return ReducedMomenta(v);
  }

  /// Momenta on the level set H = 1/2.
  ReducedMomenta unit_momenta(int k) {
    auto P = momenta(k, -1.0, 1.0);
    const double th = uniform(-std::numbers::pi, std::numbers::pi);
    P.P(1) = std::cos(th);
    P.P(2) = std::sin(th);
    return P;
  }

private:
  std::mt19937_64 gen_;
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

inline int svd_rank(const Eigen::MatrixXd& m, double rel = 1e-9) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel * std::max(1.0, smax)) ++r;
  return r;
}

/// Algebraic least-squares circle through planar points: (radius, max radial residual).
inline std::pair<double, double> fit_circle(const std::vector<PlanarPoint>& pts) {
  Eigen::MatrixXd A(static_cast<Eigen::Index>(pts.size()), 3);
  Eigen::VectorXd b(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    A(r, 0) = pts[i].x;
    A(r, 1) = pts[i].u;
    A(r, 2) = 1.0;
    b(r) = -(pts[i].x * pts[i].x + pts[i].u * pts[i].u);
  }
  const Eigen::Vector3d c = A.colPivHouseholderQr().solve(b);
  const double cx = -c(0) / 2, cu = -c(1) / 2;
  const double R = std::sqrt(cx * cx + cu * cu - c(2));
  double worst = 0.0;
  for (const auto& p : pts) worst = std::max(worst, std::abs(std::hypot(p.x - cx, p.u - cu) - R));
  return {R, worst};
}

inline GeodesicArc synthesize_at(const FProfile& prof, double anchor, double span, int count, int sigma = 1,
                                 Tolerances tol = {1e-11, 1e-11}) {
  JetPoint q0(prof.dim());
  q0.x = anchor;
  return synthesize(spec_from_profile(prof, anchor, sigma), prof.dim(), q0, span, tol, OutputGrid::by_count(count));
}

/// Random profile of order k whose band interval around x = 0 is periodic
/// with period at most `max_period`.
inline FProfile random_periodic_profile(Sampler& rng, int k, double max_period) {
  for (;;) {
    std::vector<double> c{rng.uniform(-0.5, 0.5)};
    for (int i = 1; i <= k; ++i) c.push_back(rng.uniform(-1.0, 1.0));
    FProfile prof(Polynomial(c), JetDim{k});
    const auto iv = decompose_band(prof).containing(0.0);
    if (!iv || classify(*iv, prof.p()) != MotionClass::Periodic) continue;
    if (period_shift(prof, *iv, 1e-11).L <= max_period) return prof;
  }
}

inline int sign_flips(const GeodesicArc& arc) {
  int flips = 0;
  for (std::size_t i = 1; i < arc.samples().size(); ++i)
    if ((arc.samples()[i - 1].P.P(1) > 0.0) != (arc.samples()[i].P.P(1) > 0.0)) ++flips;
  return flips;
}

}  // namespace detail

/// Antisymmetry and Jacobi identity of the Poisson tensor (exact), and its
/// rank: 2 off Z_k = 0 and 0 on it.
inline Check bracket_structure(Sampler& rng, int samples = 1000) {
  Check c{"bracket structure", true, 0.0, 0.0, ""};
  int rank_errors = 0;
  for (int k = 1; k <= 6; ++k)
    for (int t = 0; t < samples; ++t) {
      auto Z = rng.momenta(k);
      if (t % 10 == 0)
        for (int i = 3; i <= k + 2; ++i) Z.P(i) = 0.0;  // a slice of the rank-0 stratum
      const auto B = poisson_tensor(Z);
      for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < B.n; ++j) c.measured = std::max(c.measured, std::abs(B(i, j) + B(j, i)));
      auto nested = [&](int a, int b, int cc) {
        const auto inner = structure_constant(b, cc, k);
        return inner ? inner->second * structure_bracket(a, inner->first, Z) : 0.0;
      };
      for (int a = 1; a <= k + 2; ++a)
        for (int b = a + 1; b <= k + 2; ++b)
          for (int cc = b + 1; cc <= k + 2; ++cc)
            c.measured = std::max(c.measured, std::abs(nested(a, b, cc) + nested(b, cc, a) + nested(cc, a, b)));
      const int rank = tensor_rank(Z, 1e-300);
      const bool zero_slice = Z.Zk_norm() == 0.0;
      if (rank != (zero_slice ? 0 : 2)) ++rank_errors;
      Eigen::MatrixXd m(B.n, B.n);
      for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < B.n; ++j) m(i, j) = B(i, j);
      if (!zero_slice && detail::svd_rank(m) != 2) ++rank_errors;
    }
  c.passed = c.measured == 0.0 && rank_errors == 0;
  c.detail = "k=1..6, " + std::to_string(samples) + " Z each; max antisymmetry/Jacobi residual " +
             detail::fmt(c.measured) + ", rank mismatches " + std::to_string(rank_errors);
  return c;
}

/// Shift-flow Casimirs: annihilation, independence, C_1 = P_{k+2}; reports the
/// defect of the reference closed-form family for i >= 3.
inline Check casimir_suite(Sampler& rng, int samples = 1000) {
  Check c{"Casimir suite", true, 0.0, 1e-12, ""};
  int rank_errors = 0, c1_errors = 0, low_order_errors = 0;
  double closed_form_defect = 0.0;
  for (int k = 1; k <= 6; ++k) {
    const auto set = casimirs(JetDim{k});
    for (int t = 0; t < samples; ++t) {
      const auto Z = rng.momenta(k);
      for (const auto& C : set.C) c.measured = std::max(c.measured, annihilation_defect(C, Z));
      if (set.C[0](Z.values()) != Z.P(k + 2)) ++c1_errors;
      if (k >= 2 && std::abs(casimir_closed_form(2, Z) - set.C[1](Z.values())) > 1e-12 * std::max(1.0, std::abs(set.C[1](Z.values()))))
        ++low_order_errors;
      if (t < 20) {
        auto W = Z;
        W.P(k + 2) = rng.uniform(0.5, 1.5);
        Eigen::MatrixXd J(k, k + 2);
        for (int i = 0; i < k; ++i) {
          const auto g = set.C[static_cast<std::size_t>(i)].gradient(W.values());
          for (int j = 0; j < k + 2; ++j) J(i, j) = g[static_cast<std::size_t>(j)];
        }
        if (detail::svd_rank(J) != k) ++rank_errors;
        for (int i = 3; i <= k; ++i)
          closed_form_defect = std::max(closed_form_defect, annihilation_defect(casimir_closed_form_poly(i, JetDim{k}), Z));
      }
    }
  }
  c.passed = c.measured < c.threshold && rank_errors == 0 && c1_errors == 0 && low_order_errors == 0;
  c.detail = "annihilation " + detail::fmt(c.measured) + ", rank/C_1/closed-form-i=2 mismatches " +
             std::to_string(rank_errors) + "/" + std::to_string(c1_errors) + "/" + std::to_string(low_order_errors) +
             "; closed-form family defect for i>=3: " + detail::fmt(closed_form_defect) + " (reported)";
  return c;
}

/// Relative drift of H and every Casimir along unit-speed geodesics.
inline Check conservation(Sampler& rng, int per_k = 20, double span = 100.0) {
  Check c{"conservation", true, 0.0, 1e-8, ""};
  for (int k = 1; k <= 4; ++k)
    for (int t = 0; t < per_k; ++t) {
      const auto arc = integrate({JetPoint(JetDim{k}), rng.unit_momenta(k), 0.0}, span, {1e-10, 1e-10},
                                 OutputGrid::by_count(1001));
      c.measured = std::max(c.measured, arc.max_invariant_drift());
    }
  c.passed = c.measured < c.threshold;
  c.detail = "k=1..4, " + std::to_string(per_k) + " arcs each over s in [0," + detail::fmt(span) + "]";
  return c;
}

/// k = 1: projections are circles of radius 1/|P_3|, and the closed form
/// (sin s, cos s - 1) for P = (1, 0, 1).
inline Check heisenberg(Sampler& rng, int arcs = 10) {
  Check c{"Heisenberg circles", true, 0.0, 1e-7, ""};
  double radius_err = 0.0, fit_resid = 0.0;
  for (int t = 0; t < arcs; ++t) {
    auto P = rng.unit_momenta(1);
    if (std::abs(P.P(3)) < 0.2) P.P(3) = std::copysign(0.2, P.P(3));
    const auto arc = integrate({JetPoint(JetDim{1}), P, 0.0}, 10.0, {1e-11, 1e-11}, OutputGrid::by_count(501));
    std::vector<PlanarPoint> pts;
    for (const auto& a : arc.samples()) pts.push_back(project_plane(a.q));
    const auto [R, resid] = detail::fit_circle(pts);
    radius_err = std::max(radius_err, std::abs(R - 1.0 / std::abs(P.P(3))));
    fit_resid = std::max(fit_resid, resid);
  }
  const auto arc = integrate({JetPoint(JetDim{1}), ReducedMomenta({1.0, 0.0, 1.0}), 0.0}, 2 * std::numbers::pi,
                             {1e-11, 1e-11}, OutputGrid::by_count(629));
  double pointwise = 0.0;
  for (const auto& a : arc.samples())
    pointwise = std::max({pointwise, std::abs(a.q.x - std::sin(a.s)), std::abs(a.q.u_at(1) - (std::cos(a.s) - 1.0))});
  c.measured = std::max(fit_resid, radius_err);
  c.passed = c.measured < c.threshold && pointwise < 1e-8;
  c.detail = "circle fit residual " + detail::fmt(fit_resid) + ", radius error " + detail::fmt(radius_err) +
             ", closed form deviation " + detail::fmt(pointwise) + " (< 1e-8)";
  return c;
}

/// Curvature along random arcs is a polynomial of degree k-1 in x, and not of
/// degree k-2.
inline Check curvature_law(Sampler& rng, int per_k = 5) {
  Check c{"curvature law kappa = p(x)", true, 0.0, 1e-6, ""};
  double low_fit = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= 4; ++k)
    for (int t = 0; t < per_k; ++t) {
      auto P = rng.unit_momenta(k);
      if (std::abs(P.P(k + 2)) < 0.5) P.P(k + 2) = std::copysign(0.5, P.P(k + 2));
      const auto arc = integrate({JetPoint(JetDim{k}), P, 0.0}, 30.0, {1e-11, 1e-11}, OutputGrid::by_count(3001));
      c.measured = std::max(c.measured, fit_curvature(arc, k - 1).residual);
      low_fit = std::min(low_fit, fit_curvature(arc, k - 2).residual);
    }
  c.passed = c.measured < c.threshold && low_fit > 1e4 * std::max(c.measured, 1e-12);
  c.detail = "degree k-1 residual " + detail::fmt(c.measured) + "; smallest degree k-2 residual " +
             detail::fmt(low_fit) + " (must exceed 1e4 x the degree k-1 residual)";
  return c;
}

/// Synthesized arcs reproduce P = P(x) from their profile across turning points.
inline Check roundtrip(Sampler& rng, int specs = 6) {
  Check c{"synthesis roundtrip", true, 0.0, 1e-6, ""};
  int fewest_flips = 1 << 30;
  for (int t = 0; t < specs; ++t) {
    const int k = 1 + t % 4;
    const auto prof = detail::random_periodic_profile(rng, k, 25.0);
    const auto arc = detail::synthesize_at(prof, 0.0, 50.0, 5001, t % 2 ? -1 : 1, {1e-10, 1e-10});
    c.measured = std::max(c.measured, roundtrip_residual(arc, prof));
    fewest_flips = std::min(fewest_flips, detail::sign_flips(arc));
  }
  c.passed = c.measured < c.threshold && fewest_flips >= 2;
  c.detail = std::to_string(specs) + " specs, k<=4, s-span 50; fewest P_1 sign flips " + std::to_string(fewest_flips);
  return c;
}

/// Quadrature period and shift against the line oracle and integrated arcs.
inline Check period_law(Sampler& rng, int random_profiles = 3) {
  Check c{"period law", true, 0.0, 1e-6, ""};
  const FProfile line(Polynomial{0.0, 1.0}, JetDim{1});
  const auto pd = period_shift(line, decompose_band(line).intervals.at(0), 1e-12);
  const double oracle = std::max(std::abs(pd.L - 2 * std::numbers::pi), std::abs(pd.tau.value_or(1.0)));
  std::vector<FProfile> profiles{FProfile(Polynomial{0.0, 0.0, 1.0}, JetDim{2})};
  for (int t = 0; t < random_profiles; ++t) profiles.push_back(detail::random_periodic_profile(rng, 2 + t % 3, 30.0));
  for (const auto& prof : profiles) {
    const auto iv = decompose_band(prof).containing(0.0);
    const auto p = period_shift(prof, *iv, 1e-12);
    const auto arc = detail::synthesize_at(prof, 0.0, 3.0 * p.L, 3001);
    const auto d = periodicity_defect(arc, p.L, *p.tau);
    c.measured = std::max({c.measured, d.dx, d.du});
  }
  c.passed = oracle < 1e-10 && c.measured < c.threshold;
  c.detail = "F=x: |L-2pi|, |tau| <= " + detail::fmt(oracle) + " (< 1e-10); x/u periodicity defect " +
             detail::fmt(c.measured) + " over " + std::to_string(profiles.size()) + " profiles";
  return c;
}

/// dI/dH at H = 1/2 against the quadrature period.
inline Check action_period(Sampler& rng, int profiles = 5) {
  Check c{"action-period relation", true, 0.0, 1e-4, ""};
  for (int t = 0; t < profiles; ++t) {
    const auto prof = detail::random_periodic_profile(rng, 1 + t % 4, 40.0);
    const auto iv = *decompose_band(prof).containing(0.0);
    const double L = period_shift(prof, iv, 1e-12).L;
    const double h = 1e-5;
    const double dI = (action(prof, iv, 0.5 + h, 1e-13) - action(prof, iv, 0.5 - h, 1e-13)) / (2 * h);
    c.measured = std::max(c.measured, std::abs(dI - L));
  }
  c.passed = c.measured < c.threshold;
  c.detail = std::to_string(profiles) + " periodic profiles, central difference step 1e-5";
  return c;
}

/// Convict and graph classification, confinement over a long span, and the
/// graph property of odd-order graph arcs.
inline Check classification() {
  Check c{"classification and confinement", true, 0.0, 1e-6, ""};
  bool classes_ok = true, monotone_ok = true;
  for (const auto& r : classify_profile(convict_profile({2, 1.0, 1.0})))
    classes_ok = classes_ok && r.motion == MotionClass::AsymptoticOneLine && !r.period.finite && std::isinf(r.period.L);
  for (int m : {3, 4, 5}) {
    const auto prof = graph_profile(m);
    const auto band = decompose_band(prof, {-1.0, 1.0});
    classes_ok = classes_ok && band.intervals.size() == 1 &&
                 classify(band.intervals[0], prof.p()) == MotionClass::AsymptoticTwoLines;
    const auto arc = detail::synthesize_at(prof, 0.0, 200.0, 4001);
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& a : arc.samples()) {
      c.measured = std::max({c.measured, a.q.x - 1.0, -1.0 - a.q.x});
      if (m % 2 == 1 && a.q.x < prev) monotone_ok = false;
      prev = a.q.x;
    }
  }
  c.passed = classes_ok && monotone_ok && c.measured <= c.threshold;
  c.detail = std::string("classes ") + (classes_ok ? "ok" : "WRONG") + ", odd graphs monotone " +
             (monotone_ok ? "yes" : "NO") + ", max excursion past [-1,1] " + detail::fmt(std::max(c.measured, 0.0));
  return c;
}

/// kappa^2 = (k^2/a^2) (P_2 + alpha)^{(2k-2)/k} on convict arcs, x >= 0.
inline Check theta_identity() {
  Check c{"theta-ODE identity", true, 0.0, 1e-8, ""};
  for (int k : {2, 3, 4})
    for (double a : {1.0, 2.0})
      for (double alpha : {0.0, 1.0}) {
        const ConvictParams params{k, a, alpha};
        const double anchor = a * std::pow(alpha, 1.0 / k);
        const auto arc = detail::synthesize_at(convict_profile(params), anchor, 20.0, 2001);
        c.measured = std::max(c.measured, theta_ode_defect(arc, params));
      }
  c.passed = c.measured < c.threshold;
  c.detail = "(k,a,alpha) in {2,3,4}x{1,2}x{0,1}";
  return c;
}

/// The three classic k = 2 curves: SVG output, classes, asymptote and crossings.
/// SVGs go to `out_dir` when it is non-empty.
inline Check figure1(const std::string& out_dir = "") {
  Check c{"three-curve gallery", true, 0.0, 0.0, ""};
  const auto suite = figure1_suite();
  bool svg_ok = true;
  for (const auto& g : suite) {
    std::ostringstream os;
    io::write_svg(os, g.arc);
    svg_ok = svg_ok && os.str().find("<path") != std::string::npos;
    if (!out_dir.empty()) {
      std::ofstream f(out_dir + "/" + g.name + ".svg");
      f << os.str();
      svg_ok = svg_ok && static_cast<bool>(f);
    }
  }
  const auto& convict = suite.at(0);
  bool one_line = !convict.reports.empty();
  for (const auto& r : convict.reports) {
    const int critical = (r.interval.x0.kind == EndpointKind::Critical) + (r.interval.x1.kind == EndpointKind::Critical);
    one_line = one_line && r.motion == MotionClass::AsymptoticOneLine && critical == 1;
  }
  const double asymptote_gap = std::abs(convict.arc.samples().back().q.x);
  const bool sinusoid = suite.at(1).motion == MotionClass::Periodic;
  const int crossings = suite.at(2).self_intersections_per_period;
  c.measured = crossings;
  c.threshold = 1;
  c.passed = svg_ok && one_line && asymptote_gap < 1e-6 && sinusoid && suite.at(2).motion == MotionClass::Periodic &&
             crossings == 1;
  c.detail = std::string("svg ") + (svg_ok ? "ok" : "FAILED") + "; alpha=1 one-line " + (one_line ? "yes" : "NO") +
             " (gap to x=0: " + detail::fmt(asymptote_gap) + "); alpha=0 periodic " + (sinusoid ? "yes" : "NO") +
             "; alpha=0.65222 crossings/period " + std::to_string(crossings);
  return c;
}

struct Suite {
  std::string name;
  std::function<Check(Sampler&)> run;
};

/// All checks in order; every check draws from one sampler seeded with `seed`.
inline std::vector<Suite> all_checks(const std::string& out_dir = "") {
  return {{"brackets", [](Sampler& r) { return bracket_structure(r); }},
          {"casimirs", [](Sampler& r) { return casimir_suite(r); }},
          {"conservation", [](Sampler& r) { return conservation(r); }},
          {"heisenberg", [](Sampler& r) { return heisenberg(r); }},
          {"curvature-law", [](Sampler& r) { return curvature_law(r); }},
          {"roundtrip", [](Sampler& r) { return roundtrip(r); }},
          {"period", [](Sampler& r) { return period_law(r); }},
          {"action", [](Sampler& r) { return action_period(r); }},
          {"classification", [](Sampler&) { return classification(); }},
          {"theta-ode", [](Sampler&) { return theta_identity(); }},
          {"figure1", [out_dir](Sampler&) { return figure1(out_dir); }}};
}

}  // namespace elastica::verify

#endif  // ELASTICA_VERIFY_HPP
