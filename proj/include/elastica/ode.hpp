#ifndef ELASTICA_ODE_HPP
#define ELASTICA_ODE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace elastica {

/// Raised when adaptive integration cannot proceed. `where()` is the
/// parameter value at which the failure happened.
class IntegrationError : public std::runtime_error {
public:
  enum class Kind { StepSizeUnderflow, NonFiniteState, TooManySteps };
  IntegrationError(Kind kind, double where, const std::string& what)
      : std::runtime_error(what), kind_(kind), where_(where) {}
  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double where() const { return where_; }

private:
  Kind kind_;
  double where_;
};

/// One accepted Dormand-Prince step with its continuous extension.
struct DenseSegment {
  double t0 = 0.0;
  double h = 0.0;
  std::vector<double> r1, r2, r3, r4, r5;

  /// Fourth-order interpolant at t within [t0, t0 + h].
  [[nodiscard]] std::vector<double> operator()(double t) const {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    std::vector<double> y(r1.size());
    for (std::size_t i = 0; i < y.size(); ++i)
      y[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
    return y;
  }
};

/// Piecewise continuous solution assembled from accepted steps.
class DenseSolution {
public:
  void push(DenseSegment seg) { segs_.push_back(std::move(seg)); }
  /// Append a continuation that starts where this solution ends.
  void append(const DenseSolution& tail) { segs_.insert(segs_.end(), tail.segs_.begin(), tail.segs_.end()); }
  [[nodiscard]] bool empty() const { return segs_.empty(); }
  [[nodiscard]] std::size_t size() const { return segs_.size(); }
  [[nodiscard]] double t_begin() const { return segs_.front().t0; }
  [[nodiscard]] double t_end() const { return segs_.back().t0 + segs_.back().h; }
  [[nodiscard]] const std::vector<DenseSegment>& segments() const { return segs_; }

  /// Interpolated state; t is clamped to the covered range.
  [[nodiscard]] std::vector<double> operator()(double t) const {
    if (segs_.empty()) throw std::logic_error("DenseSolution: empty");
    const bool forward = segs_.front().h > 0.0;
    // segments are ordered along the integration direction
    auto key = [forward](double v) { return forward ? v : -v; };
    const double kt = key(t);
    auto it = std::upper_bound(segs_.begin(), segs_.end(), kt,
                               [&](double v, const DenseSegment& s) { return v < key(s.t0); });
    if (it != segs_.begin()) --it;
    return (*it)(t);
  }

private:
  std::vector<DenseSegment> segs_;
};

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  double h_init = 0.0;  // 0: automatic
  double h_max = 0.0;   // 0: |t_end - t_0|
  long max_steps = 10'000'000;
};

/// Embedded Runge-Kutta 5(4) of Dormand and Prince with PI step control and
/// the 4th-order dense output of Hairer, Norsett & Wanner.
///
/// `rhs(t, y, dydt)` evaluates the vector field. `after_step(t, y)` may adjust
/// the accepted state in place (used to re-anchor wrapped angles); it must not
/// change components the vector field depends on. Integration ends early once
/// `stop(t, y)` holds after an accepted step.
class DormandPrince {
public:
  using Rhs = std::function<void(double, const std::vector<double>&, std::vector<double>&)>;
  using AfterStep = std::function<void(double, std::vector<double>&)>;
  using Stop = std::function<bool(double, const std::vector<double>&)>;

  static DenseSolution solve(const Rhs& rhs, double t0, const std::vector<double>& y0, double t_end,
                             const OdeOptions& opt, const AfterStep& after_step = {}, const Stop& stop = {}) {
    const std::size_t n = y0.size();
    const double dir = t_end >= t0 ? 1.0 : -1.0;
    const double span = std::abs(t_end - t0);
    const double h_max = opt.h_max > 0.0 ? opt.h_max : span;

    std::vector<double> y(y0), y1(n), ytmp(n), err(n);
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
    rhs(t0, y, k1);
    check_finite(k1, t0);

    double h = opt.h_init > 0.0 ? opt.h_init : initial_step(rhs, t0, y, k1, dir, h_max, opt);
    h = dir * std::min(std::abs(h), h_max);

    DenseSolution sol;
    double t = t0;
    double facold = 1e-4;
    bool reject = false;
    long steps = 0;
    while (dir * (t_end - t) > 0.0) {
      if (++steps > opt.max_steps)
        throw IntegrationError(IntegrationError::Kind::TooManySteps, t, "too many steps at s=" + fmt(t));
      if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
        throw IntegrationError(IntegrationError::Kind::StepSizeUnderflow, t,
                               "step size underflow at s=" + fmt(t));
      if (dir * (t + 1.01 * h - t_end) > 0.0) h = t_end - t;

      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
      rhs(t + c2 * h, ytmp, k2);
      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
      rhs(t + c3 * h, ytmp, k3);
      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      rhs(t + c4 * h, ytmp, k4);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      rhs(t + c5 * h, ytmp, k5);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      const double tph = t + h;
      rhs(tph, ytmp, k6);
      for (std::size_t i = 0; i < n; ++i)
        y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
      rhs(tph, y1, k7);

      double e2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sk = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y1[i]));
        e2 += (err[i] / sk) * (err[i] / sk);
      }
      const double errn = std::sqrt(e2 / static_cast<double>(n));
      if (!std::isfinite(errn)) {
        // Treat as a failed step; shrink hard.
        h *= 0.1;
        reject = true;
        continue;
      }

      const double fac11 = std::pow(errn, expo1);
      double fac = fac11 / std::pow(facold, beta);
      fac = std::max(facc2, std::min(facc1, fac / safe));
      double hnew = h / fac;

      if (errn <= 1.0) {
        facold = std::max(errn, 1e-4);
        check_finite(y1, tph);
        DenseSegment seg;
        seg.t0 = t;
        seg.h = h;
        seg.r1 = y;
        seg.r2.resize(n);
        seg.r3.resize(n);
        seg.r4.resize(n);
        seg.r5.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
          const double ydiff = y1[i] - y[i];
          const double bspl = h * k1[i] - ydiff;
          seg.r2[i] = ydiff;
          seg.r3[i] = bspl;
          seg.r4[i] = ydiff - h * k7[i] - bspl;
          seg.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
        }
        sol.push(std::move(seg));

        if (after_step) after_step(tph, y1);
        k1 = k7;
        y = y1;
        t = tph;
        if (std::abs(hnew) > h_max) hnew = dir * h_max;
        if (reject) hnew = dir * std::min(std::abs(hnew), std::abs(h));
        reject = false;
        if (stop && stop(t, y)) break;
      } else {
        hnew = h / std::min(facc1, fac11 / safe);
        reject = true;
      }
      h = hnew;
    }
    return sol;
  }

private:
  static std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  }
  static void check_finite(const std::vector<double>& v, double t) {
    for (double x : v)
      if (!std::isfinite(x))
        throw IntegrationError(IntegrationError::Kind::NonFiniteState, t, "non-finite state at s=" + fmt(t));
  }

  static double initial_step(const Rhs& rhs, double t0, const std::vector<double>& y0,
                             const std::vector<double>& f0, double dir, double h_max, const OdeOptions& opt) {
    const std::size_t n = y0.size();
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sk = opt.abs_tol + opt.rel_tol * std::abs(y0[i]);
      dnf += (f0[i] / sk) * (f0[i] / sk);
      dny += (y0[i] / sk) * (y0[i] / sk);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    h = std::min(h, h_max);
    std::vector<double> y1(n), f1(n);
    for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + dir * h * f0[i];
    rhs(t0 + dir * h, y1, f1);
    double der2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sk = opt.abs_tol + opt.rel_tol * std::abs(y0[i]);
      der2 += ((f1[i] - f0[i]) / sk) * ((f1[i] - f0[i]) / sk);
    }
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, std::abs(h) * 1e-3) : std::pow(0.01 / der12, 0.2);
    return std::min({100.0 * std::abs(h), h1, h_max});
  }

  static constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
  static constexpr double a21 = 0.2;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                          a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                          a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                          a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                          e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
  static constexpr double beta = 0.04, expo1 = 0.2 - beta * 0.75, safe = 0.9;
  static constexpr double facc1 = 1.0 / 0.2, facc2 = 1.0 / 10.0;
};

}  // namespace elastica

#endif  // ELASTICA_ODE_HPP
