#ifndef ELASTICA_POLYNOMIAL_HPP
#define ELASTICA_POLYNOMIAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace elastica {

/// Real polynomial with ascending coefficients, c[0] + c[1] x + ... .
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// an empty coefficient vector and degree() == -1.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients)
      : c_(std::move(coefficients)) {
    trim();
  }
  Polynomial(std::initializer_list<double> coefficients)
      : c_(coefficients) {
    trim();
  }

  static Polynomial constant(double value) { return Polynomial({value}); }
  /// x^n scaled by `coef`.
  static Polynomial monomial(std::size_t n, double coef = 1.0) {
    std::vector<double> c(n + 1, 0.0);
    c[n] = coef;
    return Polynomial(std::move(c));
  }

  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] bool is_constant() const { return c_.size() <= 1; }
  [[nodiscard]] std::span<const double> coefficients() const { return c_; }
  [[nodiscard]] double coefficient(std::size_t i) const {
    return i < c_.size() ? c_[i] : 0.0;
  }
  [[nodiscard]] double leading() const { return c_.empty() ? 0.0 : c_.back(); }

  /// Horner evaluation.
  [[nodiscard]] double operator()(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  [[nodiscard]] Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      d[i - 1] = static_cast<double>(i) * c_[i];
    return Polynomial(std::move(d));
  }

  [[nodiscard]] Polynomial derivative(int order) const {
    Polynomial d = *this;
    for (int i = 0; i < order; ++i) d = d.derivative();
    return d;
  }

  /// Antiderivative G with G' = *this and G(anchor_x) = anchor_value.
  [[nodiscard]] Polynomial antiderivative(double anchor_x,
                                          double anchor_value) const {
    std::vector<double> a(c_.size() + 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
      a[i + 1] = c_[i] / static_cast<double>(i + 1);
    Polynomial g(std::move(a));
    const double shift = anchor_value - g(anchor_x);
    if (g.c_.empty()) g.c_.push_back(0.0);
    g.c_[0] += shift;
    g.trim();
    return g;
  }

  /// Largest coefficient magnitude, used as a scale for tolerances.
  [[nodiscard]] double max_abs_coefficient() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> r(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + (-1.0) * b;
  }
  friend Polynomial operator*(double s, const Polynomial& a) {
    std::vector<double> r(a.c_);
    for (double& v : r) v *= s;
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator+(const Polynomial& a, double s) {
    return a + Polynomial::constant(s);
  }
  friend Polynomial operator-(const Polynomial& a, double s) {
    return a + Polynomial::constant(-s);
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.c_ == b.c_;
  }

  /// Quotient and remainder of Euclidean division by a nonzero divisor.
  [[nodiscard]] std::pair<Polynomial, Polynomial> divmod(
      const Polynomial& divisor) const {
    std::vector<double> rem(c_);
    const auto& d = divisor.c_;
    if (rem.size() < d.size()) return {Polynomial{}, *this};
    std::vector<double> quot(rem.size() - d.size() + 1, 0.0);
    for (std::size_t i = quot.size(); i-- > 0;) {
      const double q = rem[i + d.size() - 1] / d.back();
      quot[i] = q;
      for (std::size_t j = 0; j < d.size(); ++j) rem[i + j] -= q * d[j];
      rem[i + d.size() - 1] = 0.0;
    }
    rem.resize(d.size() - 1);
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  /// Drop coefficients with |c| <= tol (absolute); used to clean remainders.
  [[nodiscard]] Polynomial chopped(double tol) const {
    std::vector<double> r(c_);
    for (double& v : r)
      if (std::abs(v) <= tol) v = 0.0;
    return Polynomial(std::move(r));
  }

  [[nodiscard]] std::string to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << "[";
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << c_[i];
    os << "]";
    return os.str();
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
  }

  std::vector<double> c_;
};

}  // namespace elastica

#endif  // ELASTICA_POLYNOMIAL_HPP
