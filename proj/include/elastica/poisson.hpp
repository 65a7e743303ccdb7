#ifndef ELASTICA_POISSON_HPP
#define ELASTICA_POISSON_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "elastica/core.hpp"
#include "elastica/multipoly.hpp"

namespace elastica {

// Lie-Poisson structure on the dual of the jet algebra. The only nonzero
// brackets are {P_1, P_i} = P_{i+1} for 2 <= i <= k+1 and their negatives.

/// {P_i, P_j} as a linear function: (m, c) meaning c * P_m, or nullopt for 0.
inline std::optional<std::pair<int, double>> structure_constant(int i, int j, int k) {
  const int n = k + 2;
  if (i < 1 || i > n || j < 1 || j > n)
    throw std::out_of_range("structure bracket index out of range [1, " + std::to_string(n) + "]");
  if (i == 1 && j >= 2 && j <= k + 1) return std::pair{j + 1, 1.0};
  if (j == 1 && i >= 2 && i <= k + 1) return std::pair{i + 1, -1.0};
  return std::nullopt;
}

/// {P_i, P_j} evaluated at Z.
inline double structure_bracket(int i, int j, const ReducedMomenta& Z) {
  const auto c = structure_constant(i, j, Z.k());
  return c ? c->second * Z.P(c->first) : 0.0;
}

/// Poisson tensor B(Z), B[i][j] = {P_i, P_j}; 0-based storage.
struct PoissonTensor {
  int n = 0;
  std::vector<double> entries;  // row-major n x n

  [[nodiscard]] double operator()(int row, int col) const {
    return entries[static_cast<std::size_t>(row * n + col)];
  }
  /// B v for a vector of length n.
  [[nodiscard]] std::vector<double> apply(const std::vector<double>& v) const {
    std::vector<double> r(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    return r;
  }
};

inline PoissonTensor poisson_tensor(const ReducedMomenta& Z) {
  PoissonTensor B;
  B.n = Z.n();
  B.entries.assign(static_cast<std::size_t>(B.n * B.n), 0.0);
  for (int i = 1; i <= B.n; ++i)
    for (int j = 1; j <= B.n; ++j)
      B.entries[static_cast<std::size_t>((i - 1) * B.n + (j - 1))] = structure_bracket(i, j, Z);
  return B;
}

/// Rank of B(Z): 2 when |Z_k| > tol, otherwise 0.
inline int tensor_rank(const ReducedMomenta& Z, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tensor_rank: tol must be positive");
  return Z.Zk_norm() > tol ? 2 : 0;
}

/// The k Casimir polynomials C_1..C_k on (P_1, ..., P_{k+2}).
struct CasimirSet {
  int k = 0;
  std::vector<MultiPoly> C;  // C[i-1] is C_i

  [[nodiscard]] std::vector<double> evaluate(const ReducedMomenta& Z) const {
    std::vector<double> out;
    out.reserve(C.size());
    for (const auto& c : C) out.push_back(c(Z.values()));
    return out;
  }
};

/// Casimirs built as invariants of the shift flow dP_m/dt = P_{m+1}
/// (2 <= m <= k+1), which is B(Z) applied to the P_1 row. C_i is
/// P_{k+2-i} transported to the time where P_{k+1} vanishes, times
/// P_{k+2}^{i-1}:
///   C_i = sum_{n=0}^{i} (-1)^n / n! * P_{k+2-i+n} P_{k+1}^n P_{k+2}^{i-1-n}
/// with the n = i term reducing to (-1)^i P_{k+1}^i / i!.
inline CasimirSet casimirs(JetDim dim) {
  const int k = dim.k();
  const auto nv = static_cast<std::size_t>(dim.n());
  const auto idx = [](int m) { return static_cast<std::size_t>(m - 1); };
  CasimirSet set;
  set.k = k;
  set.C.push_back(MultiPoly::variable(nv, idx(k + 2)));
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) {
    MultiPoly c(nv);
    factorial = 1.0;
    for (int n = 0; n <= i; ++n) {
      if (n > 0) factorial *= n;
      MultiPoly::Exponents e(nv, 0);
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      if (n < i) {
        e[idx(k + 2 - i + n)] += 1;
        e[idx(k + 2)] += i - 1 - n;
      }
      e[idx(k + 1)] += n;
      c.add_term(e, sign / factorial);
    }
    set.C.push_back(std::move(c));
  }
  return set;
}

/// Reference closed form for C_i (2 <= i <= k):
///   P_{k+2}^{i-1} P_{k+2-i}
///   + sum_{j=1}^{i-2} (-1)^j P_{k+2}^{i-(j+1)} P_{k+2-j} P_{k+1}^j / j!
///   + (-1)^{i-1} P_{k+1}^i / ((i-2)! i)
/// Kept for comparison with casimirs(); it is not annihilated by B for i >= 3.
inline MultiPoly casimir_closed_form_poly(int i, JetDim dim) {
  const int k = dim.k();
  if (i < 2 || i > k)
    throw std::out_of_range("casimir_closed_form: index must lie in [2, k]");
  const auto nv = static_cast<std::size_t>(dim.n());
  const auto idx = [](int m) { return static_cast<std::size_t>(m - 1); };
  MultiPoly c(nv);
  {
    MultiPoly::Exponents e(nv, 0);
    e[idx(k + 2)] += i - 1;
    e[idx(k + 2 - i)] += 1;
    c.add_term(e, 1.0);
  }
  double jfact = 1.0;
  for (int j = 1; j <= i - 2; ++j) {
    jfact *= j;
    MultiPoly::Exponents e(nv, 0);
    e[idx(k + 2)] += i - (j + 1);
    e[idx(k + 2 - j)] += 1;
    e[idx(k + 1)] += j;
    c.add_term(e, ((j % 2 == 0) ? 1.0 : -1.0) / jfact);
  }
  double tail = 1.0;
  for (int m = 2; m <= i - 2; ++m) tail *= m;
  tail *= i;
  MultiPoly::Exponents e(nv, 0);
  e[idx(k + 1)] += i;
  c.add_term(e, (((i - 1) % 2 == 0) ? 1.0 : -1.0) / tail);
  return c;
}

inline double casimir_closed_form(int i, const ReducedMomenta& Z) {
  return casimir_closed_form_poly(i, JetDim{Z.k()})(Z.values());
}

/// |B(Z) grad C(Z)| with the exact polynomial gradient.
inline double annihilation_defect(const MultiPoly& C, const ReducedMomenta& Z) {
  const auto g = C.gradient(Z.values());
  const auto r = poisson_tensor(Z).apply(g);
  double s = 0.0;
  for (double v : r) s += v * v;
  return std::sqrt(s);
}

/// |B(Z) grad C(Z)| with a central finite-difference gradient, relative step 1e-6.
inline double annihilation_defect(const std::function<double(const std::vector<double>&)>& C,
                                  const ReducedMomenta& Z) {
  std::vector<double> z = Z.values();
  std::vector<double> g(z.size(), 0.0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(z[i]));
    const double z0 = z[i];
    z[i] = z0 + h;
    const double fp = C(z);
    z[i] = z0 - h;
    const double fm = C(z);
    z[i] = z0;
    g[i] = (fp - fm) / (2.0 * h);
  }
  const auto r = poisson_tensor(Z).apply(g);
  double s = 0.0;
  for (double v : r) s += v * v;
  return std::sqrt(s);
}

}  // namespace elastica

#endif  // ELASTICA_POISSON_HPP
