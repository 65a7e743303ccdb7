#ifndef ELASTICA_ROOTS_HPP
#define ELASTICA_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "elastica/polynomial.hpp"

namespace elastica {

/// Sturm chain of a real polynomial, with floating-point remainders cleaned
/// relative to the dividend scale. The last element approximates gcd(f, f').
class SturmChain {
public:
  explicit SturmChain(const Polynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("SturmChain: zero polynomial");
    chain_.push_back(normalized(f));
    if (f.degree() == 0) return;
    chain_.push_back(normalized(f.derivative()));
    while (chain_.back().degree() > 0) {
      const Polynomial& a = chain_[chain_.size() - 2];
      const Polynomial& b = chain_.back();
      auto rem = a.divmod(b).second.chopped(1e-11 * a.max_abs_coefficient());
      if (rem.is_zero()) break;
      chain_.push_back(normalized(-1.0 * rem));
    }
  }

  [[nodiscard]] const std::vector<Polynomial>& chain() const { return chain_; }
  [[nodiscard]] const Polynomial& gcd() const { return chain_.back(); }

  [[nodiscard]] int sign_variations(double x) const {
    int v = 0;
    int last = 0;
    for (const auto& p : chain_) {
      const double val = p(x);
      // values inside the Horner rounding envelope carry no sign
      const double noise = 8.0 * std::numeric_limits<double>::epsilon() * magnitude(p, x);
      const int s = val > noise ? 1 : (val < -noise ? -1 : 0);
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  }

  /// Number of distinct real roots in (a, b].
  [[nodiscard]] int count(double a, double b) const { return sign_variations(a) - sign_variations(b); }

private:
  static double magnitude(const Polynomial& p, double x) {
    double m = 0.0;
    for (int i = p.degree(); i >= 0; --i) m = m * std::abs(x) + std::abs(p.coefficient(static_cast<std::size_t>(i)));
    return m;
  }

  static Polynomial normalized(const Polynomial& p) {
    const double m = p.max_abs_coefficient();
    return m > 0.0 ? (1.0 / m) * p : p;
  }

  std::vector<Polynomial> chain_;
};

namespace detail {

inline double bisect_sign_change(const Polynomial& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double refine_root(const Polynomial& f, const SturmChain& sc, double lo, double hi, int depth = 0) {
  const double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) != (fhi < 0.0)) return bisect_sign_change(f, lo, hi);
  // Even multiplicity: the root is also a root of gcd(f, f') with lower order.
  const Polynomial& g = sc.gcd();
  if (depth < 8 && g.degree() >= 1) {
    const SturmChain gc(g);
    if (gc.count(lo, hi) == 1) return refine_root(g, gc, lo, hi, depth + 1);
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sc.count(lo, mid) >= 1) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

inline void isolate(const Polynomial& f, const SturmChain& sc, double lo, double hi, int cnt,
                    std::vector<double>& out, int depth = 0) {
  if (cnt <= 0) return;
  if (cnt == 1) {
    out.push_back(refine_root(f, sc, lo, hi));
    return;
  }
  double mid = 0.5 * (lo + hi);
  if (depth > 200 || hi - lo <= 1e-14 * std::max(1.0, std::abs(mid))) {
    out.push_back(mid);  // unresolved cluster
    return;
  }
  if (f(mid) == 0.0) mid += 1e-3 * (hi - lo);  // keep split points off roots
  const int left = sc.count(lo, mid);
  isolate(f, sc, lo, mid, left, out, depth + 1);
  isolate(f, sc, mid, hi, cnt - left, out, depth + 1);
}

/// Multiplicity of the root x of g, judged by vanishing derivatives.
inline int root_multiplicity(const Polynomial& g, double x) {
  const double scale = 1.0 + g.max_abs_coefficient();
  int m = 1;
  Polynomial d = g.derivative();
  while (!d.is_zero() && std::abs(d(x)) < 1e-10 * scale) {
    ++m;
    d = d.derivative();
  }
  return m;
}

}  // namespace detail

/// Cauchy bound: every complex root z of f has |z| <= 1 + max |c_i / c_n|.
inline double cauchy_bound(const Polynomial& f) {
  if (f.degree() < 1) return 0.0;
  double m = 0.0;
  for (int i = 0; i < f.degree(); ++i) m = std::max(m, std::abs(f.coefficient(static_cast<std::size_t>(i)) / f.leading()));
  return 1.0 + m;
}

/// Distinct real roots of f in [a, b] (to within 1e-9 relative), ascending, each refined by bisection
/// (sign-change bisection, or bisection on gcd(f, f') for even multiplicity).
inline std::vector<double> real_roots(const Polynomial& f, double a, double b) {
  if (a > b) throw std::invalid_argument("real_roots: inverted window");
  std::vector<double> out;
  if (f.degree() < 1) return out;
  const SturmChain sc(f);
  // Isolate on a padded window so that multiple roots on the edges are not
  // evaluated inside their own rounding envelope.
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  const double pad = 1e-6 * scale, keep = 1e-9 * scale;
  std::vector<double> found;
  detail::isolate(f, sc, a - pad, b + pad, sc.count(a - pad, b + pad), found);
  for (double r : found)
    if (r >= a - keep && r <= b + keep) out.push_back(std::clamp(r, a, b));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace elastica

#endif  // ELASTICA_ROOTS_HPP
