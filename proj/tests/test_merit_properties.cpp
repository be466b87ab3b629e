#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "sparse_lcp/merit.hpp"
#include "sparse_lcp/problems.hpp"

using namespace sparse_lcp;

namespace {

IndexSet all(int n) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  return IndexSet(idx, n);
}

// Draws from {0} and +-[1e-3, 10] so exact zeros and tiny products both occur.
double ncp_sample(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_real_distribution<double> mag(std::log(1e-3), std::log(10.0));
  const int k = kind(gen);
  if (k == 0) return 0.0;
  const double v = std::exp(mag(gen));
  return k == 1 ? -v : v;
}

// Scalar merit pieces written straight from their definitions.
double oracle_pair(const MeritModel& m, double a, double b) {
  switch (m.kind) {
    case MeritKind::PhiR: {
      const double ap = std::max(a, 0.0), bp = std::max(b, 0.0);
      return (std::pow(ap, m.r) * std::pow(bp, m.r) + std::pow(std::max(-a, 0.0), m.r) +
              std::pow(std::max(-b, 0.0), m.r)) / m.r;
    }
    case MeritKind::FischerBurmeister: {
      const double v = std::sqrt(a * a + b * b + m.smoothing_eps) - a - b;
      return 0.5 * v * v;
    }
    case MeritKind::Min: {
      const double v = a + b - std::sqrt((a - b) * (a - b) + m.smoothing_eps);
      return 0.5 * v * v;
    }
    case MeritKind::PsiII: {
      const double p = std::max(a * b, 0.0);
      return 0.5 * (p * p + std::pow(std::min(a, 0.0), 2) + std::pow(std::min(b, 0.0), 2));
    }
  }
  return 0.0;
}

double oracle_value(const MeritModel& m, const LcpInstance& inst, const VectorXd& x) {
  const VectorXd y = inst.M * x + inst.q;
  double total = 0.0;
  for (int i = 0; i < inst.n(); ++i) total += oracle_pair(m, x(i), y(i));
  return total;
}

LcpInstance random_instance(std::mt19937_64& gen, int n) {
  std::normal_distribution<double> N;
  MatrixXd M(n, n);
  VectorXd q(n);
  for (int i = 0; i < n; ++i) {
    q(i) = N(gen);
    for (int j = 0; j < n; ++j) M(i, j) = N(gen);
  }
  return LcpInstance(M, q);
}

// x with every |x_i| and |y_i| at least 1e-3: away from all kink sets.
VectorXd non_kink_point(std::mt19937_64& gen, const LcpInstance& inst) {
  std::normal_distribution<double> N;
  while (true) {
    VectorXd x(inst.n());
    for (int i = 0; i < inst.n(); ++i) x(i) = N(gen);
    const VectorXd y = inst.M * x + inst.q;
    if (x.cwiseAbs().minCoeff() >= 1e-3 && y.cwiseAbs().minCoeff() >= 1e-3) return x;
  }
}

const std::vector<MeritModel>& four_models() {
  static const std::vector<MeritModel> models = {
      MeritModel::phi_r(2), MeritModel::fischer_burmeister(), MeritModel::min(),
      MeritModel::psi_ii()};
  return models;
}

}  // namespace

TEST(NcpAxiom, ZeroExactlyOnComplementaryPairs) {
  std::mt19937_64 gen(2024);
  for (double r : {2.0, 2.5, 3.0, 4.0}) {
    for (int k = 0; k < 10000; ++k) {
      const double a = ncp_sample(gen), b = ncp_sample(gen);
      const bool complementary = a >= 0 && b >= 0 && std::abs(a * b) <= 1e-15;
      const double phi = phi_r_scalar(a, b, r);
      EXPECT_GE(phi, 0.0);
      EXPECT_EQ(phi == 0.0, complementary) << "a=" << a << " b=" << b << " r=" << r;
      const auto [ga, gb] = phi_r_grad_scalar(a, b, r);
      EXPECT_EQ(ga == 0.0 && gb == 0.0, phi == 0.0) << "a=" << a << " b=" << b << " r=" << r;
    }
  }
}

TEST(MeritValue, MatchesDefinitionsAndIsNonnegative) {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 50; ++trial) {
    const LcpInstance inst = random_instance(gen, 5);
    const VectorXd x = non_kink_point(gen, inst);
    for (const MeritModel& m : four_models()) {
      const double v = merit_value(m, inst, x).value;
      EXPECT_GE(v, 0.0);
      EXPECT_NEAR(v, oracle_value(m, inst, x), 1e-12 * std::max(1.0, v)) << m.name();
    }
    const double v25 = merit_value(MeritModel::phi_r(2.5), inst, x).value;
    EXPECT_NEAR(v25, oracle_value(MeritModel::phi_r(2.5), inst, x), 1e-12 * std::max(1.0, v25));
  }
}

TEST(MeritValue, PhiZeroOnConstructedSolutionsOnly) {
  for (int seed = 0; seed < 10; ++seed) {
    GeneratorSpec spec{ExampleKind::SdpUniform, 30, 3, 0, static_cast<std::uint64_t>(seed)};
    const LcpInstance inst = generate(spec);
    for (double r : {2.0, 2.5, 3.0}) {
      EXPECT_EQ(merit_value(MeritModel::phi_r(r), inst, *inst.ground_truth).value, 0.0);
      VectorXd off = *inst.ground_truth;
      off(0) += 0.01;
      EXPECT_GT(merit_value(MeritModel::phi_r(r), inst, off).value, 0.0);
    }
  }
}

TEST(MeritGradient, MatchesCentralDifferences) {
  std::mt19937_64 gen(77);
  std::vector<MeritModel> models = four_models();
  models.push_back(MeritModel::phi_r(2.5));
  models.push_back(MeritModel::phi_r(3));
  for (const MeritModel& m : models) {
    for (int point = 0; point < 100; ++point) {
      const LcpInstance inst = random_instance(gen, 6);
      const VectorXd x = non_kink_point(gen, inst);
      const VectorXd g = merit_gradient(m, inst, x);
      VectorXd fd(6);
      for (int i = 0; i < 6; ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
        VectorXd xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        fd(i) = (merit_value(m, inst, xp).value - merit_value(m, inst, xm).value) / (2 * h);
      }
      EXPECT_LE((g - fd).norm(), 1e-5 * (1.0 + g.norm())) << m.name() << " point " << point;
    }
  }
}

TEST(MeritHessian, SymmetricBlocks) {
  std::mt19937_64 gen(8);
  std::vector<MeritModel> models = four_models();
  models.push_back(MeritModel::phi_r(3));
  for (const MeritModel& m : models) {
    for (int trial = 0; trial < 30; ++trial) {
      const LcpInstance inst = random_instance(gen, 8);
      const VectorXd x = non_kink_point(gen, inst);
      const MatrixXd H = merit_hessian(m, inst, x, all(8), all(8));
      const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
      EXPECT_LE((H - H.transpose()).cwiseAbs().maxCoeff(), 1e-12 * scale) << m.name();
    }
  }
}

// With diagonal M >= 0 the merit separates into convex scalar pieces.
TEST(MeritHessian, PositiveSemidefiniteForNonnegativeDiagonalM) {
  std::mt19937_64 gen(13);
  std::normal_distribution<double> N;
  for (int trial = 0; trial < 20; ++trial) {
    VectorXd d(15), q(15);
    for (int i = 0; i < 15; ++i) {
      d(i) = std::abs(N(gen));
      q(i) = N(gen);
    }
    const LcpInstance inst(d.asDiagonal().toDenseMatrix(), q);
    for (double r : {2.0, 3.0}) {
      for (int point = 0; point < 20; ++point) {
        VectorXd x(15);
        for (int i = 0; i < 15; ++i) x(i) = N(gen);
        const MatrixXd H = merit_hessian(MeritModel::phi_r(r), inst, x, all(15), all(15));
        Eigen::SelfAdjointEigenSolver<MatrixXd> eig(H, Eigen::EigenvaluesOnly);
        EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-8);
      }
    }
  }
}

// For a general PSD M the merit is not convex. M = [[1,1],[1,1]], q = 0:
// f(0, 1.5) = 2.53125 and f(-1, 2) = 2.5, but at the midpoint (-0.5, 1.75)
// f = (0.25 + 1.75^2 * 1.25^2) / 2 = 2.517578125, above the chord value.
TEST(MeritHessian, NotConvexForGeneralPsdM) {
  MatrixXd M(2, 2);
  M << 1, 1, 1, 1;
  const LcpInstance inst(M, VectorXd::Zero(2));
  const MeritModel f2 = MeritModel::phi_r(2);
  const double fa = merit_value(f2, inst, Eigen::Vector2d(0, 1.5)).value;
  const double fb = merit_value(f2, inst, Eigen::Vector2d(-1, 2)).value;
  const double mid = merit_value(f2, inst, Eigen::Vector2d(-0.5, 1.75)).value;
  EXPECT_EQ(fa, 2.53125);
  EXPECT_EQ(fb, 2.5);
  EXPECT_EQ(mid, 2.517578125);
  EXPECT_GT(mid, 0.5 * (fa + fb));

  const MatrixXd H = merit_hessian(f2, inst, Eigen::Vector2d(-0.5, 1.75), all(2), all(2));
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(H, Eigen::EigenvaluesOnly);
  EXPECT_LT(eig.eigenvalues().minCoeff(), 0.0);
}

TEST(MeritHessian, MatchesGradientDifferencesForSmoothExponents) {
  std::mt19937_64 gen(21);
  std::normal_distribution<double> N;
  for (double r : {2.5, 3.0, 4.0}) {
    const MeritModel m = MeritModel::phi_r(r);
    for (int trial = 0; trial < 50; ++trial) {
      const LcpInstance inst = random_instance(gen, 6);
      const VectorXd x = non_kink_point(gen, inst);
      VectorXd v(6);
      for (int i = 0; i < 6; ++i) v(i) = N(gen);
      const double h = 1e-6;
      const VectorXd fd =
          (merit_gradient(m, inst, x + h * v) - merit_gradient(m, inst, x - h * v)) / (2 * h);
      const VectorXd Hv = merit_hessian(m, inst, x, all(6), all(6)) * v;
      EXPECT_LE((Hv - fd).norm(), 1e-4 * std::max(1.0, Hv.norm())) << "r " << r;
    }
  }
}
