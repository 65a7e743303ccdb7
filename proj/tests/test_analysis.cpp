#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"

#include "elastica/analysis.hpp"
#include "elastica/synthesis.hpp"
#include "test_support.hpp"

namespace elastica {
namespace {

using std::numbers::pi;
using testing::uniform;

const Tolerances kTight{1e-11, 1e-11};

FProfile profile(std::vector<double> F, int k) { return FProfile(Polynomial(std::move(F)), JetDim{k}); }

GeodesicArc synthesize_from(const FProfile& prof, double anchor, double span, int count, int sigma = 1) {
  const CurvatureSpec spec{prof.p(), anchor, prof.F()(anchor), sigma};
  JetPoint q0(prof.dim());
  q0.x = anchor;
  return synthesize(spec, prof.dim(), q0, span, kTight, OutputGrid::by_count(count));
}

TEST(RealRoots, SimpleAndMultiple) {
  auto r = real_roots(Polynomial{-2.0, 0.0, 1.0}, -3, 3);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], -std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(r[1], std::sqrt(2.0), 1e-14);
  // (x - 1)^2 (x + 2)
  r = real_roots(Polynomial{2.0, -3.0, 0.0, 1.0}, -5, 5);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], -2.0, 1e-13);
  EXPECT_NEAR(r[1], 1.0, 1e-13);
  // roots on the window edges are kept
  r = real_roots(Polynomial{-1.0, 0.0, 1.0}, -1, 1);
  EXPECT_EQ(r.size(), 2u);
  EXPECT_TRUE(real_roots(Polynomial{1.0, 0.0, 1.0}, -5, 5).empty());
}

TEST(DecomposeBand, Line) {
  const auto band = decompose_band(profile({0, 1}, 1), {-2, 2});
  ASSERT_EQ(band.intervals.size(), 1u);
  const auto& iv = band.intervals[0];
  EXPECT_NEAR(iv.x0.x, -1, 1e-13);
  EXPECT_NEAR(iv.x1.x, 1, 1e-13);
  EXPECT_EQ(iv.x0.kind, EndpointKind::Regular);
  EXPECT_EQ(iv.x1.kind, EndpointKind::Regular);
  EXPECT_EQ(iv.x0.level, -1);
  EXPECT_EQ(iv.x1.level, 1);
}

TEST(DecomposeBand, ConvictSplitsAtTangency) {
  const auto band = decompose_band(profile({-1, 0, 1}, 2), {-3, 3});
  ASSERT_EQ(band.intervals.size(), 2u);
  const auto& a = band.intervals[0];
  const auto& b = band.intervals[1];
  EXPECT_NEAR(a.x0.x, -std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(a.x1.x, 0.0, 1e-13);
  EXPECT_NEAR(b.x0.x, 0.0, 1e-13);
  EXPECT_NEAR(b.x1.x, std::sqrt(2.0), 1e-13);
  EXPECT_EQ(a.x0.kind, EndpointKind::Regular);
  EXPECT_EQ(a.x1.kind, EndpointKind::Critical);
  EXPECT_EQ(b.x0.kind, EndpointKind::Critical);
  EXPECT_EQ(a.x1.level, -1);
  EXPECT_EQ(a.x1.multiplicity, 2);
  EXPECT_EQ(b.x1.level, 1);
  EXPECT_EQ(b.x1.multiplicity, 1);
}

TEST(DecomposeBand, DegenerateCases) {
  EXPECT_TRUE(decompose_band(profile({2}, 1), {-1, 1}).degenerate());
  EXPECT_TRUE(decompose_band(profile({1}, 1), {-1, 1}).degenerate());
  const auto whole = decompose_band(profile({0.5}, 1), {-1, 1});
  ASSERT_EQ(whole.intervals.size(), 1u);
  EXPECT_EQ(classify(whole.intervals[0], Polynomial{}), MotionClass::Unbounded);
  // F = x^2 + 1 touches the band at a single point
  const auto touch = decompose_band(profile({1, 0, 1}, 2), {-2, 2});
  EXPECT_TRUE(touch.degenerate());
  ASSERT_EQ(touch.isolated.size(), 1u);
  EXPECT_NEAR(touch.isolated[0].x, 0.0, 1e-12);
  EXPECT_THROW(decompose_band(profile({0, 1}, 1), {1, -1}), std::invalid_argument);
}

TEST(DecomposeBand, GraphProfileOnUnitWindow) {
  const auto band = decompose_band(profile({0, 1.5, 0, -0.5}, 3), {-1, 1});
  ASSERT_EQ(band.intervals.size(), 1u);
  EXPECT_EQ(band.intervals[0].x0.kind, EndpointKind::Critical);
  EXPECT_EQ(band.intervals[0].x1.kind, EndpointKind::Critical);
}

TEST(DecomposeBand, DenseSamplingOracle) {
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 1 + trial % 5;
    std::vector<double> c;
    const int deg = 1 + static_cast<int>(uniform(0, k));
    for (int i = 0; i <= deg; ++i) c.push_back(uniform(-2, 2));
    const FProfile prof(Polynomial(c), JetDim{std::max(k, deg)});
    const auto window = default_window(prof.F());
    const auto band = decompose_band(prof, window);
    const auto& F = prof.F();
    // |F| = 1 at an endpoint up to the conditioning of the root
    auto level_tol = [&](double x) { return 1e-10 + 1e-14 * std::max(1.0, std::abs(x)) * std::abs(prof.p()(x)); };
    for (const auto& iv : band.intervals) {
      if (iv.x0.kind != EndpointKind::Truncated) {
        EXPECT_NEAR(std::abs(F(iv.x0.x)), 1.0, level_tol(iv.x0.x));
      }
      if (iv.x1.kind != EndpointKind::Truncated) {
        EXPECT_NEAR(std::abs(F(iv.x1.x)), 1.0, level_tol(iv.x1.x));
      }
      for (int j = 1; j < 200; ++j) EXPECT_LE(std::abs(F(iv.x0.x + iv.width() * j / 200.0)), 1.0 + 1e-10);
    }
    const int n = 100000;
    for (int j = 0; j <= n; ++j) {
      const double x = window.first + (window.second - window.first) * j / n;
      if (std::abs(F(x)) >= 1.0 - 1e-9) continue;
      bool inside = false;
      for (const auto& iv : band.intervals) inside = inside || (x >= iv.x0.x && x <= iv.x1.x);
      ASSERT_TRUE(inside) << "x=" << x << " F=" << Polynomial(c).to_string();
    }
  }
}

TEST(Classify, Examples) {
  const auto line = decompose_band(profile({0, 1}, 1), {-2, 2});
  EXPECT_EQ(classify(line.intervals[0], Polynomial{1.0}), MotionClass::Periodic);
  const auto convict = decompose_band(profile({-1, 0, 1}, 2), {-3, 3});
  EXPECT_EQ(classify(convict.intervals[1], Polynomial{0, 2}), MotionClass::AsymptoticOneLine);
  const auto graph = decompose_band(profile({0, 1.5, 0, -0.5}, 3), {-3, 3});
  const auto iv = graph.containing(0.0);
  ASSERT_TRUE(iv);
  EXPECT_EQ(classify(*iv, Polynomial{1.5, 0, -1.5}), MotionClass::AsymptoticTwoLines);
}

TEST(PeriodShift, LineGivesTwoPi) {
  const auto prof = profile({0, 1}, 1);
  const auto band = decompose_band(prof, {-2, 2});
  const auto pd = period_shift(prof, band.intervals[0], 1e-12);
  ASSERT_TRUE(pd.finite);
  EXPECT_NEAR(pd.L, 2 * pi, 1e-10);
  ASSERT_TRUE(pd.tau);
  EXPECT_NEAR(*pd.tau, 0.0, 1e-10);
  EXPECT_NEAR(pd.action, pi, 1e-10);
  EXPECT_LE(pd.error_estimate, 1e-12);
}

TEST(PeriodShift, CriticalEndpointDiverges) {
  const auto prof = profile({-1, 0, 1}, 2);
  const auto band = decompose_band(prof, {-3, 3});
  const auto pd = period_shift(prof, band.intervals[1], 1e-10);
  EXPECT_FALSE(pd.finite);
  EXPECT_TRUE(std::isinf(pd.L));
  EXPECT_FALSE(pd.tau.has_value());
}

TEST(PeriodShift, ArcsineOracleForShiftedLine) {
  // F = (x - c)/w: L = 2 pi w, tau = 0
  const double c = 0.7, w = 2.5;
  const auto prof = profile({-c / w, 1 / w}, 1);
  const auto pd = period_shift(prof, decompose_band(prof).intervals.at(0), 1e-12);
  EXPECT_NEAR(pd.L, 2 * pi * w, 1e-10);
  EXPECT_NEAR(*pd.tau, 0.0, 1e-10);
}

TEST(PeriodShift, PseudoSinusoidMatchesSynthesizedArc) {
  const auto prof = profile({0, 0, 1}, 2);
  const auto iv = decompose_band(prof).containing(0.0);
  ASSERT_TRUE(iv);
  const auto pd = period_shift(prof, *iv, 1e-12);
  ASSERT_TRUE(pd.finite);
  const auto arc = synthesize_from(prof, 0.0, 3 * pd.L, 3001);
  const auto d = periodicity_defect(arc, pd.L, *pd.tau);
  EXPECT_LT(d.dx, 1e-6);
  EXPECT_LT(d.du, 1e-6);
  const auto ret = first_return(arc);
  ASSERT_TRUE(ret);
  EXPECT_NEAR(*ret, pd.L, 1e-6);
}

TEST(PeriodShift, RandomPeriodicProfilesMatchFirstReturn) {
  int done = 0;
  for (int trial = 0; trial < 200 && done < 5; ++trial) {
    const int k = 2 + trial % 3;
    std::vector<double> c{0.0};
    for (int i = 1; i <= k; ++i) c.push_back(uniform(-1, 1));
    c[0] = uniform(-0.5, 0.5);
    const FProfile prof(Polynomial(c), JetDim{k});
    const auto iv = decompose_band(prof).containing(0.0);
    if (!iv || classify(*iv, prof.p()) != MotionClass::Periodic) continue;
    const auto pd = period_shift(prof, *iv, 1e-11);
    if (pd.L > 60) continue;  // near-critical, keep the run short
    const auto arc = synthesize_from(prof, 0.0, 1.5 * pd.L, 3001);
    const auto ret = first_return(arc);
    ASSERT_TRUE(ret);
    EXPECT_NEAR(*ret, pd.L, 1e-6);
    const auto d = periodicity_defect(arc, pd.L, *pd.tau);
    EXPECT_LT(d.dx, 1e-6);
    EXPECT_LT(d.du, 1e-6);
    ++done;
  }
  EXPECT_EQ(done, 5);
}

TEST(Action, Examples) {
  const auto line = profile({0, 1}, 1);
  const auto iv = decompose_band(line, {-2, 2}).intervals[0];
  EXPECT_NEAR(action(line, iv, 0.5, 1e-12), pi, 1e-10);
  const auto flat = profile({}, 1);
  BandInterval unit{{0.0, 0, EndpointKind::Truncated, 0, 0.0}, {1.0, 0, EndpointKind::Truncated, 0, 0.0}};
  EXPECT_NEAR(action(flat, unit, 0.5, 1e-12), 2.0, 1e-12);
  const double h = 1e-5;
  const double dI = (action(line, iv, 0.5 + h, 1e-13) - action(line, iv, 0.5 - h, 1e-13)) / (2 * h);
  EXPECT_NEAR(dI, 2 * pi, 1e-4);
  EXPECT_THROW(action(line, iv, 0.0, 1e-10), std::invalid_argument);
  EXPECT_THROW(action(profile({3}, 1), unit, 0.5, 1e-10), std::domain_error);
}

TEST(Action, DerivativeIsPeriodForPolynomialProfiles) {
  for (const auto& F : {std::vector<double>{0, 0, 1}, std::vector<double>{-0.3, 0.4, 0.8},
                        std::vector<double>{0.1, 1, 0, -0.4}}) {
    const FProfile prof(Polynomial(F), JetDim{static_cast<int>(F.size()) - 1});
    const auto iv = decompose_band(prof).containing(0.0);
    ASSERT_TRUE(iv);
    ASSERT_EQ(classify(*iv, prof.p()), MotionClass::Periodic);
    const auto pd = period_shift(prof, *iv, 1e-12);
    const double h = 1e-5;
    const double dI = (action(prof, *iv, 0.5 + h, 1e-13) - action(prof, *iv, 0.5 - h, 1e-13)) / (2 * h);
    EXPECT_NEAR(dI, pd.L, 1e-4);
  }
}

TEST(FitCurvature, HeisenbergIsConstant) {
  const auto prof = profile({0, 1}, 1);
  const auto arc = synthesize_from(prof, 0.0, 10.0, 1001);
  const auto fit = fit_curvature(arc, 0);
  EXPECT_LE(fit.p.degree(), 0);
  EXPECT_NEAR(fit.p(0.0), 1.0, 1e-9);
  EXPECT_LT(fit.residual, 1e-8);
}

TEST(FitCurvature, StraightLine) {
  const auto arc = integrate({JetPoint(JetDim{2}), ReducedMomenta({1, 0, 0, 0}), 0.0}, 5.0, {}, OutputGrid::by_count(51));
  const auto fit = fit_curvature(arc, 1);
  EXPECT_LT(fit.residual, 1e-10);
  EXPECT_LT(fit.p.max_abs_coefficient(), 1e-10);
}

TEST(FitCurvature, ThirdOrderArcsAreQuadratic) {
  for (int trial = 0; trial < 5; ++trial) {
    const auto P = testing::random_unit_momenta(3);
    const auto arc = integrate({JetPoint(JetDim{3}), P, 0.0}, 30.0, kTight, OutputGrid::by_count(3001));
    EXPECT_LT(fit_curvature(arc, 2).residual, 1e-6);
  }
}

TEST(FitCurvature, ResidualTracksTolerance) {
  for (const auto& F : {std::vector<double>{0, 1}, std::vector<double>{0, 0, 1}, std::vector<double>{0.1, 0, 0.7}}) {
    const FProfile prof(Polynomial(F), JetDim{2});
    auto resid = [&](double tol) {
      const CurvatureSpec spec{prof.p(), 0.0, prof.F()(0.0), 1};
      const auto arc = synthesize(spec, prof.dim(), JetPoint(prof.dim()), 20.0, {tol, tol}, OutputGrid::by_count(2001));
      return fit_curvature(arc, 1).residual;
    };
    const double r8 = resid(1e-8), r9 = resid(5e-9);
    EXPECT_LE(r9, 2 * r8 + 1e-13);
  }
}

TEST(FitCurvature, InsufficientSpan) {
  const auto arc = integrate({JetPoint(JetDim{2}), ReducedMomenta({0, 1, 0, 0}), 0.0}, 5.0, {}, OutputGrid::by_count(51));
  EXPECT_THROW(fit_curvature(arc, 1), InsufficientSpan);
}

TEST(PeriodicityDefect, CircleAndErrors) {
  const auto prof = profile({0, 1}, 1);
  const auto arc = synthesize_from(prof, 0.0, 15.0, 1501);
  const auto d = periodicity_defect(arc, 2 * pi, 0.0);
  EXPECT_LT(d.dx, 1e-8);
  EXPECT_LT(d.du, 1e-8);
  EXPECT_THROW(periodicity_defect(arc, std::numeric_limits<double>::infinity(), 0.0), std::invalid_argument);
  EXPECT_THROW(periodicity_defect(arc, 20.0, 0.0), std::invalid_argument);
}

TEST(Confinement, OneLineArcApproachesCriticalEndpoint) {
  // convict F = x^2 - 1: interval [0, sqrt 2] with x = 0 critical
  const auto prof = profile({-1, 0, 1}, 2);
  const auto iv = decompose_band(prof).containing(1.0);
  ASSERT_TRUE(iv);
  const auto arc = synthesize_from(prof, 1.0, 8.0, 801, -1);
  double prev = 1.0 + 1e-12;
  for (const auto& a : arc.samples()) {
    EXPECT_GE(a.q.x, iv->x0.x - 1e-9);
    EXPECT_LT(a.q.x, prev);
    EXPECT_LT(a.P.P(1), 0.0);
    prev = a.q.x;
  }
  EXPECT_LT(arc.samples().back().q.x, 1e-4);
}

TEST(Confinement, PeriodicArcStaysInInterval) {
  const auto prof = profile({-0.2, 0.3, 0.5}, 2);
  const auto iv = decompose_band(prof).containing(0.0);
  ASSERT_TRUE(iv);
  ASSERT_EQ(classify(*iv, prof.p()), MotionClass::Periodic);
  const auto arc = synthesize_from(prof, 0.0, 50.0, 5001);
  double lo = 1e300, hi = -1e300;
  for (const auto& a : arc.samples()) {
    lo = std::min(lo, a.q.x);
    hi = std::max(hi, a.q.x);
  }
  EXPECT_GE(lo, iv->x0.x - 1e-8);
  EXPECT_LE(hi, iv->x1.x + 1e-8);
  EXPECT_NEAR(lo, iv->x0.x, 1e-3);
  EXPECT_NEAR(hi, iv->x1.x, 1e-3);
}

}  // namespace
}  // namespace elastica
