#ifndef ELASTICA_MULTIPOLY_HPP
#define ELASTICA_MULTIPOLY_HPP

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace elastica {

/// Sparse polynomial in n variables with exact (double) coefficients.
/// Terms are keyed by exponent vectors of length n.
class MultiPoly {
public:
  using Exponents = std::vector<int>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t num_vars) : n_(num_vars) {}

  /// coef * z_i (0-based variable index).
  static MultiPoly variable(std::size_t num_vars, std::size_t i, double coef = 1.0) {
    MultiPoly p(num_vars);
    Exponents e(num_vars, 0);
    e.at(i) = 1;
    p.add_term(e, coef);
    return p;
  }

  [[nodiscard]] std::size_t num_vars() const { return n_; }
  [[nodiscard]] const std::map<Exponents, double>& terms() const { return terms_; }

  void add_term(const Exponents& e, double coef) {
    if (e.size() != n_) throw std::invalid_argument("MultiPoly: exponent length mismatch");
    if (coef == 0.0) return;
    auto [it, inserted] = terms_.emplace(e, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  [[nodiscard]] double operator()(std::span<const double> z) const {
    check(z);
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = c;
      for (std::size_t i = 0; i < n_; ++i)
        if (e[i]) t *= ipow(z[i], e[i]);
      acc += t;
    }
    return acc;
  }

  [[nodiscard]] MultiPoly partial(std::size_t var) const {
    MultiPoly d(n_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents f = e;
      f[var] -= 1;
      d.add_term(f, c * e[var]);
    }
    return d;
  }

  /// Exact gradient, evaluated termwise.
  [[nodiscard]] std::vector<double> gradient(std::span<const double> z) const {
    check(z);
    std::vector<double> g(n_, 0.0);
    for (std::size_t v = 0; v < n_; ++v) g[v] = partial(v)(z);
    return g;
  }

  /// Total degree of every term if homogeneous, -1 otherwise (or if empty).
  [[nodiscard]] int homogeneous_degree() const {
    int deg = -1;
    for (const auto& [e, c] : terms_) {
      int d = 0;
      for (int x : e) d += x;
      if (deg == -1) deg = d;
      else if (deg != d) return -1;
    }
    return deg;
  }

  /// True if the variable appears in some term.
  [[nodiscard]] bool depends_on(std::size_t var) const {
    for (const auto& [e, c] : terms_)
      if (e[var] != 0) return true;
    return false;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend MultiPoly operator*(double s, MultiPoly a) {
    for (auto& [e, c] : a.terms_) c *= s;
    return a;
  }

private:
  static double ipow(double b, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  }
  void check(std::span<const double> z) const {
    if (z.size() != n_) throw std::invalid_argument("MultiPoly: point has wrong dimension");
  }

  std::size_t n_ = 0;
  std::map<Exponents, double> terms_;
};

}  // namespace elastica

#endif  // ELASTICA_MULTIPOLY_HPP
