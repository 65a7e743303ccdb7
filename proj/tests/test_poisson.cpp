#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "gtest/gtest.h"

#include "elastica/poisson.hpp"
#include "test_support.hpp"

namespace elastica {
namespace {

using testing::random_momenta;
using testing::uniform;

// Numerical rank by singular-value thresholding; independent of tensor_rank.
int svd_rank(const Eigen::MatrixXd& m, double rel = 1e-9) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel * std::max(1.0, smax)) ++r;
  return r;
}

Eigen::MatrixXd to_eigen(const PoissonTensor& B) {
  Eigen::MatrixXd m(B.n, B.n);
  for (int i = 0; i < B.n; ++i)
    for (int j = 0; j < B.n; ++j) m(i, j) = B(i, j);
  return m;
}

// {P_a, {P_b, P_c}} through the structure constants.
double nested(int a, int b, int c, const ReducedMomenta& Z) {
  const auto inner = structure_constant(b, c, Z.k());
  if (!inner) return 0.0;
  return inner->second * structure_bracket(a, inner->first, Z);
}

TEST(StructureBracket, Examples) {
  ReducedMomenta Z({0.3, 0.7, 5.0, 1.0});
  EXPECT_EQ(structure_bracket(1, 2, Z), 5.0);
  EXPECT_EQ(structure_bracket(2, 1, Z), -5.0);
  EXPECT_EQ(structure_bracket(1, 4, Z), 0.0);
  EXPECT_EQ(structure_bracket(3, 4, Z), 0.0);
  EXPECT_EQ(structure_bracket(1, 3, Z), 1.0);  // {P_1, P_{k+1}} = P_{k+2}
}

TEST(StructureBracket, IndexOutOfRangeThrows) {
  ReducedMomenta Z({0, 0, 0});
  EXPECT_THROW(structure_bracket(0, 1, Z), std::out_of_range);
  EXPECT_THROW(structure_bracket(1, 4, Z), std::out_of_range);
}

TEST(PoissonTensor, ZeroWhenZkVanishes) {
  ReducedMomenta Z({0.4, -2.0, 0.0, 0.0, 0.0});
  const auto B = poisson_tensor(Z);
  for (double v : B.entries) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(tensor_rank(Z, 1e-12), 0);
}

TEST(PoissonTensor, HeisenbergInstance) {
  ReducedMomenta Z({1.5, -0.5, 2.5});
  const auto B = poisson_tensor(Z);
  ASSERT_EQ(B.n, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double expected = (i == 0 && j == 1) ? 2.5 : (i == 1 && j == 0) ? -2.5 : 0.0;
      EXPECT_EQ(B(i, j), expected);
    }
}

TEST(PoissonTensor, AntisymmetricAndJacobi) {
  for (int k = 1; k <= 6; ++k)
    for (int trial = 0; trial < 100; ++trial) {
      const auto Z = random_momenta(k);
      const auto B = poisson_tensor(Z);
      for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < B.n; ++j) EXPECT_EQ(B(i, j) + B(j, i), 0.0);
      for (int a = 1; a <= k + 2; ++a)
        for (int b = a + 1; b <= k + 2; ++b)
          for (int c = b + 1; c <= k + 2; ++c)
            EXPECT_EQ(nested(a, b, c, Z) + nested(b, c, a, Z) + nested(c, a, b, Z), 0.0);
    }
}

TEST(TensorRank, MatchesSvdRank) {
  for (int k = 1; k <= 6; ++k)
    for (int trial = 0; trial < 200; ++trial) {
      auto Z = random_momenta(k);
      if (Z.Zk_norm() < 0.1) continue;
      EXPECT_EQ(tensor_rank(Z, 1e-9), 2);
      EXPECT_EQ(svd_rank(to_eigen(poisson_tensor(Z))), 2);
    }
  ReducedMomenta Z({0, 0, 0, 1.0});
  EXPECT_EQ(tensor_rank(Z, 1e-9), 2);
  EXPECT_THROW(tensor_rank(Z, 0.0), std::invalid_argument);
}

TEST(Casimirs, FirstIsTopMomentum) {
  for (int k = 1; k <= 6; ++k) {
    const auto set = casimirs(JetDim{k});
    ASSERT_EQ(static_cast<int>(set.C.size()), k);
    const auto Z = random_momenta(k);
    EXPECT_EQ(set.C[0](Z.values()), Z.P(k + 2));
  }
}

TEST(Casimirs, EngelSecondCasimir) {
  const auto set = casimirs(JetDim{2});
  ReducedMomenta Z({0.9, 1.0, 2.0, 3.0});
  EXPECT_DOUBLE_EQ(set.C[1](Z.values()), 1.0);
  // agrees with P_4 P_2 - P_3^2 / 2 everywhere
  for (int t = 0; t < 100; ++t) {
    const auto W = random_momenta(2);
    EXPECT_NEAR(set.C[1](W.values()), W.P(4) * W.P(2) - W.P(3) * W.P(3) / 2, 1e-13);
  }
}

TEST(Casimirs, AnnihilatedByPoissonTensor) {
  for (int k = 1; k <= 6; ++k) {
    const auto set = casimirs(JetDim{k});
    double worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
      const auto Z = random_momenta(k);
      for (const auto& c : set.C) worst = std::max(worst, annihilation_defect(c, Z));
    }
    EXPECT_LT(worst, 1e-12) << "k=" << k;
  }
}

TEST(Casimirs, DegreeAndSupport) {
  for (int k = 1; k <= 6; ++k) {
    const auto set = casimirs(JetDim{k});
    for (int i = 1; i <= k; ++i) {
      const auto& c = set.C[static_cast<std::size_t>(i - 1)];
      EXPECT_EQ(c.homogeneous_degree(), i);
      for (int m = 1; m < k + 2 - i; ++m) EXPECT_FALSE(c.depends_on(static_cast<std::size_t>(m - 1))) << i << " " << m;
      const auto Z = random_momenta(k);
      const double lambda = uniform(0.5, 2.0);
      std::vector<double> scaled = Z.values();
      for (double& v : scaled) v *= lambda;
      EXPECT_NEAR(c(scaled), std::pow(lambda, i) * c(Z.values()), 1e-10 * std::max(1.0, std::abs(c(scaled))));
    }
  }
}

TEST(Casimirs, FunctionallyIndependent) {
  for (int k = 1; k <= 6; ++k) {
    const auto set = casimirs(JetDim{k});
    for (int trial = 0; trial < 20; ++trial) {
      auto Z = random_momenta(k);
      Z.P(k + 2) = uniform(0.5, 1.5);
      Eigen::MatrixXd J(k, k + 2);
      for (int i = 0; i < k; ++i) {
        const auto g = set.C[static_cast<std::size_t>(i)].gradient(Z.values());
        for (int j = 0; j < k + 2; ++j) J(i, j) = g[static_cast<std::size_t>(j)];
      }
      EXPECT_EQ(svd_rank(J), k);
    }
  }
}

TEST(CasimirClosedForm, LowOrderValues) {
  EXPECT_DOUBLE_EQ(casimir_closed_form(2, ReducedMomenta({0.0, 1.0, 2.0, 3.0})), 1.0);
  EXPECT_DOUBLE_EQ(casimir_closed_form(3, ReducedMomenta({0.0, 0.0, 1.0, 1.0, 1.0, 1.0})), 1.0 / 3.0);
  EXPECT_THROW(casimir_closed_form(1, ReducedMomenta({0.0, 1.0, 2.0, 3.0})), std::out_of_range);
  EXPECT_THROW(casimir_closed_form(3, ReducedMomenta({0.0, 1.0, 2.0, 3.0})), std::out_of_range);
}

TEST(CasimirClosedForm, AgreesForSecondOrder) {
  for (int k = 2; k <= 6; ++k) {
    const auto set = casimirs(JetDim{k});
    for (int t = 0; t < 50; ++t) {
      const auto Z = random_momenta(k);
      EXPECT_NEAR(casimir_closed_form(2, Z), set.C[1](Z.values()), 1e-12);
    }
  }
}

TEST(CasimirClosedForm, HigherOrdersAreNotAnnihilated) {
  for (int k = 3; k <= 6; ++k)
    for (int i = 3; i <= k; ++i) {
      const auto c = casimir_closed_form_poly(i, JetDim{k});
      double worst = 0.0;
      for (int t = 0; t < 50; ++t) worst = std::max(worst, annihilation_defect(c, random_momenta(k)));
      EXPECT_GT(worst, 1e-3) << "k=" << k << " i=" << i;
    }
}

TEST(AnnihilationDefect, KnownValues) {
  ReducedMomenta Z({1.0, 0.0, 1.0, 0.0, 1.0});  // k = 3, P_3 = 1, P_5 = 1
  const auto top = MultiPoly::variable(5, 4);
  EXPECT_EQ(annihilation_defect(top, Z), 0.0);
  // H is not a Casimir. For k = 3 the rows of B grad H are
  // (P_3 P_2, -P_3 P_1, -P_4 P_1, -P_5 P_1, 0) = (0, -1, 0, -1, 0).
  MultiPoly H(5);
  H.add_term({2, 0, 0, 0, 0}, 0.5);
  H.add_term({0, 2, 0, 0, 0}, 0.5);
  EXPECT_DOUBLE_EQ(annihilation_defect(H, Z), std::sqrt(2.0));
  // k = 1, Z = (1, 0, 1): only (P_3 P_2, -P_3 P_1, 0) = (0, -1, 0) remains.
  MultiPoly H1(3);
  H1.add_term({2, 0, 0}, 0.5);
  H1.add_term({0, 2, 0}, 0.5);
  EXPECT_DOUBLE_EQ(annihilation_defect(H1, ReducedMomenta({1.0, 0.0, 1.0})), 1.0);
}

TEST(AnnihilationDefect, FiniteDifferenceModeMatchesExact) {
  const auto set = casimirs(JetDim{4});
  for (int t = 0; t < 20; ++t) {
    const auto Z = random_momenta(4);
    const auto& c = set.C[3];
    const double fd = annihilation_defect([&](const std::vector<double>& z) { return c(z); }, Z);
    EXPECT_LT(fd, 1e-6);
    const auto closed = casimir_closed_form_poly(4, JetDim{4});
    EXPECT_NEAR(annihilation_defect([&](const std::vector<double>& z) { return closed(z); }, Z),
                annihilation_defect(closed, Z), 1e-5);
  }
}

}  // namespace
}  // namespace elastica
