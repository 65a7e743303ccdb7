#ifndef ELASTICA_CORE_HPP
#define ELASTICA_CORE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace elastica {

/// Raised when array lengths disagree with the jet order.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Jet order k of J^k (k >= 1). The manifold and its nilpotent algebra both
/// have dimension k + 2.
class JetDim {
public:
  explicit JetDim(int k) : k_(k) {
    if (k < 1) throw DimensionError("jet order must be >= 1, got " + std::to_string(k));
  }
  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] int n() const { return k_ + 2; }
  friend bool operator==(JetDim, JetDim) = default;

private:
  int k_;
};

/// Point (x, u_k, ..., u_1, y) of J^k. `u[i-1]` holds u_i.
struct JetPoint {
  double x = 0.0;
  std::vector<double> u;
  double y = 0.0;

  JetPoint() = default;
  explicit JetPoint(JetDim dim) : u(static_cast<std::size_t>(dim.k()), 0.0) {}
  JetPoint(double x_, std::vector<double> u_, double y_)
      : x(x_), u(std::move(u_)), y(y_) {}

  [[nodiscard]] int k() const { return static_cast<int>(u.size()); }
  [[nodiscard]] double u_at(int i) const { return u.at(static_cast<std::size_t>(i - 1)); }
  double& u_at(int i) { return u.at(static_cast<std::size_t>(i - 1)); }

  /// Flat canonical layout (x, u_k, ..., u_1, y).
  [[nodiscard]] std::vector<double> flat() const {
    std::vector<double> v;
    v.reserve(u.size() + 2);
    v.push_back(x);
    for (auto it = u.rbegin(); it != u.rend(); ++it) v.push_back(*it);
    v.push_back(y);
    return v;
  }
  static JetPoint from_flat(const std::vector<double>& v) {
    if (v.size() < 3) throw DimensionError("jet point needs at least 3 coordinates");
    JetPoint q;
    q.x = v.front();
    q.y = v.back();
    q.u.assign(v.rbegin() + 1, v.rend() - 1);
    return q;
  }
};

/// Cotangent fibre coordinates (p_x, p_1..p_k, p_y); `p[i-1]` is conjugate to u_i.
struct CanonicalMomenta {
  double px = 0.0;
  std::vector<double> p;
  double py = 0.0;

  [[nodiscard]] int k() const { return static_cast<int>(p.size()); }
  [[nodiscard]] double p_at(int i) const { return p.at(static_cast<std::size_t>(i - 1)); }
};

/// Left-trivialised momenta (P_1, ..., P_{k+2}); P(i) is 1-based.
class ReducedMomenta {
public:
  ReducedMomenta() = default;
  explicit ReducedMomenta(JetDim dim) : v_(static_cast<std::size_t>(dim.n()), 0.0) {}
  explicit ReducedMomenta(std::vector<double> values) : v_(std::move(values)) {
    if (v_.size() < 3) throw DimensionError("reduced momenta need k+2 >= 3 entries");
  }

  [[nodiscard]] int k() const { return static_cast<int>(v_.size()) - 2; }
  [[nodiscard]] int n() const { return static_cast<int>(v_.size()); }
  [[nodiscard]] double P(int i) const { return v_.at(static_cast<std::size_t>(i - 1)); }
  double& P(int i) { return v_.at(static_cast<std::size_t>(i - 1)); }
  [[nodiscard]] const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

  /// Z_k = (P_3, ..., P_{k+2}).
  [[nodiscard]] std::vector<double> Zk() const { return {v_.begin() + 2, v_.end()}; }
  [[nodiscard]] double Zk_norm() const {
    double s = 0.0;
    for (std::size_t i = 2; i < v_.size(); ++i) s += v_[i] * v_[i];
    return std::sqrt(s);
  }

private:
  std::vector<double> v_;
};

struct PlanarPoint {
  double x = 0.0;
  double u = 0.0;
};

/// Power functions of X_1, ..., X_{k+2} evaluated on a covector at q.
inline ReducedMomenta power_functions(const JetPoint& q, const CanonicalMomenta& m) {
  const int k = q.k();
  if (k < 1 || m.k() != k)
    throw DimensionError("power_functions: jet point has k=" + std::to_string(k) +
                         " but momenta have k=" + std::to_string(m.k()));
  ReducedMomenta P(JetDim{k});
  double p1 = m.px + q.u_at(1) * m.py;
  for (int i = 2; i <= k; ++i) p1 += q.u_at(i) * m.p_at(i - 1);
  P.P(1) = p1;
  P.P(2) = m.p_at(k);
  // P_3..P_{k+1} = p_{k-1}, ..., p_1
  for (int i = 3; i <= k + 1; ++i) P.P(i) = m.p_at(k + 2 - i);
  P.P(k + 2) = m.py;
  return P;
}

/// Sub-Riemannian kinetic energy H = (P_1^2 + P_2^2) / 2.
inline double hamiltonian(const ReducedMomenta& P) {
  return 0.5 * (P.P(1) * P.P(1) + P.P(2) * P.P(2));
}

inline PlanarPoint project_plane(const JetPoint& q) { return {q.x, q.u_at(q.k())}; }

/// a X_1(q) + b X_2(q) in the flat layout (x, u_k, ..., u_1, y).
inline std::vector<double> horizontal_velocity(const JetPoint& q, double a, double b) {
  const int k = q.k();
  std::vector<double> v(static_cast<std::size_t>(k + 2), 0.0);
  v[0] = a;
  v[1] = b;
  // flat index of u_j is k + 1 - j; u_{i-1}' = u_i a
  for (int i = 2; i <= k; ++i) v[static_cast<std::size_t>(k + 1 - (i - 1))] = q.u_at(i) * a;
  v[static_cast<std::size_t>(k + 1)] = q.u_at(1) * a;
  return v;
}

}  // namespace elastica

#endif  // ELASTICA_CORE_HPP
