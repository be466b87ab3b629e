#include <gtest/gtest.h>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <cstring>
#include <optional>
#include <random>

#include "sparse_lcp/merit.hpp"
#include "sparse_lcp/nhtp.hpp"
#include "sparse_lcp/problems.hpp"

using namespace sparse_lcp;

namespace {

// Second implementation of the documented generator pipeline, kept free of
// any library code so that drift in either one shows up.
struct OracleStream {
  std::uint64_t state;
  bool has_spare = false;
  double spare = 0.0;

  std::uint64_t word() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(word() >> 11) / 9007199254740992.0; }
  double normal() {
    if (has_spare) {
      has_spare = false;
      return spare;
    }
    const double u1 = uniform(), u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double ang = 2.0 * 3.14159265358979323846 * u2;
    spare = rad * std::sin(ang);
    has_spare = true;
    return rad * std::cos(ang);
  }
};

struct OracleInstance {
  std::vector<std::vector<double>> M;
  std::vector<double> q, x;
};

OracleInstance oracle_sdp(std::uint64_t seed, int n, int m, int s_star, bool gaussian) {
  OracleStream rng{seed};
  std::vector<std::vector<double>> Z(n, std::vector<double>(m));
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < n; ++i) Z[i][k] = gaussian ? rng.normal() : rng.uniform();
  OracleInstance out;
  out.M.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < m; ++k) acc += Z[i][k] * Z[j][k];
      out.M[i][j] = acc;
    }
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i >= 1; --i) {
    const int j = static_cast<int>(rng.uniform() * (i + 1));
    std::swap(perm[i], perm[j]);
  }
  out.x.assign(n, 0.0);
  for (int k = 0; k < s_star; ++k) out.x[perm[k]] = 0.1 + std::fabs(rng.normal());
  out.q.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double mx = 0.0;
    for (int j = 0; j < n; ++j)
      if (out.x[j] != 0.0) mx += out.M[i][j] * out.x[j];
    if (out.x[i] > 0.0) {
      out.q[i] = -mx;
    } else {
      out.q[i] = gaussian ? std::fabs(mx) : rng.uniform();
    }
  }
  return out;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

void expect_bit_identical(const LcpInstance& inst, const OracleInstance& o) {
  const int n = inst.n();
  for (int i = 0; i < n; ++i) {
    EXPECT_TRUE(same_bits(inst.q(i), o.q[i])) << "q " << i;
    EXPECT_TRUE(same_bits((*inst.ground_truth)(i), o.x[i])) << "x " << i;
    for (int j = 0; j < n; ++j) EXPECT_TRUE(same_bits(inst.M(i, j), o.M[i][j])) << i << "," << j;
  }
}

bool cholesky_psd(const MatrixXd& M) {
  const MatrixXd shifted = 0.5 * (M + M.transpose()) + 1e-10 * MatrixXd::Identity(M.rows(), M.rows());
  Eigen::LLT<MatrixXd> llt(shifted);
  return llt.info() == Eigen::Success;
}

}  // namespace

TEST(ZMatrix, SmallCases) {
  const LcpInstance two = gen_z_matrix(2);
  MatrixXd M2(2, 2);
  M2 << 0.5, -0.5, -0.5, 0.5;
  EXPECT_EQ(two.M, M2);
  EXPECT_EQ(two.q, Eigen::Vector2d(-0.5, 0.5));
  EXPECT_EQ(*two.ground_truth, Eigen::Vector2d(1, 0));

  const LcpInstance one = gen_z_matrix(1);
  EXPECT_EQ(one.M(0, 0), 0.0);
  EXPECT_EQ(one.q(0), 0.0);
  EXPECT_EQ((*one.ground_truth)(0), 1.0);
}

TEST(ZMatrix, SolutionAndClasses) {
  for (int n : {1, 2, 7, 100}) {
    const LcpInstance inst = gen_z_matrix(n);
    EXPECT_LE((inst.M * *inst.ground_truth + inst.q).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_TRUE(is_z_matrix(inst.M));
    EXPECT_TRUE(is_psd(inst.M));
    EXPECT_TRUE(inst.declared_classes.count(MatrixClass::Z));
  }
}

TEST(GenSdp, ConstructionProperties) {
  for (ExampleKind kind : {ExampleKind::SdpGaussian, ExampleKind::SdpUniform}) {
    for (int seed = 0; seed < 20; ++seed) {
      const GeneratorSpec spec{kind, 60, 1 + seed % 6, 0, static_cast<std::uint64_t>(seed)};
      const LcpInstance inst = generate(spec);
      const VectorXd& x = *inst.ground_truth;
      const VectorXd y = inst.M * x + inst.q;
      EXPECT_EQ(count_nonzeros(x), spec.s_star);
      EXPECT_GE(x.minCoeff(), 0.0);
      for (int i = 0; i < 60; ++i) {
        if (x(i) > 0) {
          EXPECT_GE(x(i), 0.1);
          EXPECT_NEAR(y(i), 0.0, 1e-12);
        } else {
          EXPECT_GE(y(i), -1e-12);
        }
      }
      EXPECT_NEAR(x.dot(y), 0.0, 1e-12);
      EXPECT_TRUE(is_psd(inst.M, 1e-8));
      for (double r : {2.0, 2.5, 3.0, 4.0})
        EXPECT_EQ(merit_value(MeritModel::phi_r(r), inst, x).value, 0.0);
      if (kind == ExampleKind::SdpUniform) EXPECT_GE(inst.M.minCoeff(), 0.0);
    }
  }
}

TEST(GenSdp, InnerDimensionDefaults) {
  EXPECT_EQ((GeneratorSpec{ExampleKind::SdpGaussian, 500, 5, 0, 0}.inner_dim()), 250);
  EXPECT_EQ((GeneratorSpec{ExampleKind::SdpUniform, 7, 1, 0, 0}.inner_dim()), 3);
  EXPECT_EQ((GeneratorSpec{ExampleKind::SdpUniformNoX, 500, 5, 0, 0}.inner_dim()), 125);
  EXPECT_EQ((GeneratorSpec{ExampleKind::SdpUniformNoX, 3, 1, 0, 0}.inner_dim()), 1);
  EXPECT_EQ((GeneratorSpec{ExampleKind::SdpGaussian, 10, 1, 4, 0}.inner_dim()), 4);
}

TEST(GenSdp, MatchesIndependentPipeline) {
  const LcpInstance a = generate(GeneratorSpec{ExampleKind::SdpGaussian, 4, 1, 2, 42});
  expect_bit_identical(a, oracle_sdp(42, 4, 2, 1, true));
  const LcpInstance b = generate(GeneratorSpec{ExampleKind::SdpUniform, 9, 3, 0, 7});
  expect_bit_identical(b, oracle_sdp(7, 9, 4, 3, false));
  const LcpInstance c = generate(GeneratorSpec{ExampleKind::SdpGaussian, 31, 4, 0, 123456789});
  expect_bit_identical(c, oracle_sdp(123456789, 31, 15, 4, true));
}

TEST(GenSdp, Deterministic) {
  const GeneratorSpec spec{ExampleKind::SdpGaussian, 50, 3, 0, 5};
  const LcpInstance a = generate(spec), b = generate(spec);
  EXPECT_EQ(a.M, b.M);
  EXPECT_EQ(a.q, b.q);
  EXPECT_EQ(*a.ground_truth, *b.ground_truth);
  const LcpInstance c = generate(GeneratorSpec{ExampleKind::SdpGaussian, 50, 3, 0, 6});
  EXPECT_NE(a.q, c.q);
}

TEST(GenSdpNox, Construction) {
  for (int seed = 0; seed < 20; ++seed) {
    const int s_star = 1 + seed % 10;
    const LcpInstance inst =
        generate(GeneratorSpec{ExampleKind::SdpUniformNoX, 40, s_star, 0, static_cast<std::uint64_t>(seed)});
    EXPECT_EQ((inst.q.array() < 0).count(), s_star);
    EXPECT_GE(inst.M.minCoeff(), 0.0);
    EXPECT_FALSE(inst.ground_truth.has_value());
    EXPECT_LE(inst.q.cwiseAbs().maxCoeff(), 1.0);
  }
}

// Complementary-basis enumeration over subsets of T: returns a solution of
// the LCP supported inside T, if one exists.
std::optional<VectorXd> solution_inside(const LcpInstance& inst, const std::vector<int>& T) {
  const int k = static_cast<int>(T.size());
  for (int mask = 0; mask < (1 << k); ++mask) {
    std::vector<int> S;
    for (int b = 0; b < k; ++b)
      if (mask >> b & 1) S.push_back(T[b]);
    VectorXd x = VectorXd::Zero(inst.n());
    if (!S.empty()) {
      MatrixXd A(S.size(), S.size());
      VectorXd rhs(S.size());
      for (size_t i = 0; i < S.size(); ++i) {
        rhs(i) = -inst.q(S[i]);
        for (size_t j = 0; j < S.size(); ++j) A(i, j) = inst.M(S[i], S[j]);
      }
      const VectorXd xs = A.fullPivLu().solve(rhs);
      for (size_t i = 0; i < S.size(); ++i) x(S[i]) = xs(i);
    }
    const VectorXd y = inst.M * x + inst.q;
    if (x.minCoeff() >= -1e-12 && y.minCoeff() >= -1e-10) return x;
  }
  return std::nullopt;
}

// With M a P_s matrix with nonnegative entries and at most s negative q
// entries, a solution supported on those entries exists.
TEST(GenSdpNox, PsPreconditionGivesSolvableInstances) {
  int verified = 0, solved = 0;
  for (int seed = 0; seed < 60; ++seed) {
    const int n = 12 + seed % 9;
    const int s_star = 1 + seed % 3;
    const LcpInstance inst =
        generate(GeneratorSpec{ExampleKind::SdpUniformNoX, n, s_star, 0, static_cast<std::uint64_t>(seed)});
    if (!is_ps_matrix(inst.M, s_star)) continue;
    ++verified;
    std::vector<int> T;
    for (int i = 0; i < n; ++i)
      if (inst.q(i) < 0) T.push_back(i);
    const auto x = solution_inside(inst, T);
    ASSERT_TRUE(x.has_value()) << "seed " << seed;
    EXPECT_LE(merit_value(MeritModel::phi_r(2), inst, *x).value, 1e-16);

    // Without a sparsity constraint NHTP finds a solution as well. At s = s*
    // it can stop at sparse stationary points that are not solutions.
    const SolveReport r = solve(inst, MeritModel::phi_r(2), SolverConfig::defaults_for(n, n));
    solved += r.objective <= 1e-8;
  }
  EXPECT_GE(verified, 20);
  EXPECT_GE(solved, 0.95 * verified);
}

TEST(Predicates, Examples) {
  EXPECT_TRUE(is_ps_matrix(MatrixXd::Identity(3, 3), 3));
  EXPECT_FALSE(is_ps_matrix(Eigen::Vector2d(1, -1).asDiagonal().toDenseMatrix(), 1));
  MatrixXd offdiag(2, 2);
  offdiag << 1, 0.5, 0.5, 1;
  EXPECT_FALSE(is_z_matrix(offdiag));
  EXPECT_TRUE(is_ps_matrix(offdiag, 2));
  MatrixXd singular(2, 2);
  singular << 1, 1, 1, 1;
  EXPECT_TRUE(is_ps_matrix(singular, 1));
  EXPECT_FALSE(is_ps_matrix(singular, 2));
  EXPECT_THROW(is_ps_matrix(MatrixXd::Identity(21, 21), 1), CombinatorialLimit);
}

TEST(Predicates, PsdAgreesWithCholesky) {
  std::mt19937_64 gen(17);
  std::normal_distribution<double> N;
  int psd = 0, not_psd = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 6;
    MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = N(gen);
    MatrixXd M = A * A.transpose();
    if (t % 2) M -= 0.5 * MatrixXd::Identity(n, n) * std::abs(N(gen));
    const bool expected = cholesky_psd(M);
    // Skip matrices sitting right on the boundary where the tolerances differ.
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(M);
    if (std::abs(eig.eigenvalues().minCoeff()) < 1e-6) continue;
    EXPECT_EQ(is_psd(M), expected) << "trial " << t;
    (expected ? psd : not_psd) += 1;
  }
  EXPECT_GT(psd, 20);
  EXPECT_GT(not_psd, 20);
}

TEST(IsSuccess, Examples) {
  const VectorXd x_star = Eigen::Vector3d(1, 0, 0);
  EXPECT_TRUE(is_success(x_star, x_star));
  EXPECT_FALSE(is_success(1.02 * x_star, x_star));
  EXPECT_TRUE(is_success(x_star + 0.005 * Eigen::Vector3d(1, 0, 0), x_star));
  EXPECT_THROW(is_success(x_star, VectorXd::Zero(3)), std::invalid_argument);
}

TEST(ParseExample, NamesAndNumbers) {
  EXPECT_EQ(parse_example("3"), ExampleKind::SdpUniform);
  EXPECT_EQ(parse_example("sdp-nox"), ExampleKind::SdpUniformNoX);
  for (ExampleKind k : {ExampleKind::ZMatrix, ExampleKind::SdpGaussian, ExampleKind::SdpUniform,
                        ExampleKind::SdpUniformNoX})
    EXPECT_EQ(parse_example(to_string(k)), k);
  EXPECT_THROW(parse_example("5"), std::invalid_argument);
}
