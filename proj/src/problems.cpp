#include "sparse_lcp/problems.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sparse_lcp/linalg.hpp"

namespace sparse_lcp {

std::uint64_t Rng::next_u64() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (spare_normal_) {
    const double v = *spare_normal_;
    spare_normal_.reset();
    return v;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

std::vector<int> Rng::permutation(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  for (int i = n - 1; i >= 1; --i) {
    const int j = static_cast<int>(uniform() * (i + 1));
    std::swap(p[i], p[j]);
  }
  return p;
}

std::string to_string(ExampleKind k) {
  switch (k) {
    case ExampleKind::ZMatrix: return "z";
    case ExampleKind::SdpGaussian: return "sdp-gaussian";
    case ExampleKind::SdpUniform: return "sdp-uniform";
    case ExampleKind::SdpUniformNoX: return "sdp-nox";
  }
  return "unknown";
}

ExampleKind parse_example(const std::string& name) {
  if (name == "z" || name == "1") return ExampleKind::ZMatrix;
  if (name == "sdp-gaussian" || name == "2") return ExampleKind::SdpGaussian;
  if (name == "sdp-uniform" || name == "3") return ExampleKind::SdpUniform;
  if (name == "sdp-nox" || name == "4") return ExampleKind::SdpUniformNoX;
  throw std::invalid_argument("unknown example '" + name +
                              "' (expected z, sdp-gaussian, sdp-uniform, sdp-nox)");
}

int GeneratorSpec::inner_dim() const {
  if (m > 0) return m;
  const int d = example == ExampleKind::SdpUniformNoX ? n / 4 : n / 2;
  return std::max(d, 1);
}

void GeneratorSpec::validate() const {
  if (n < 1) throw std::invalid_argument("GeneratorSpec: n must be >= 1");
  if (example == ExampleKind::ZMatrix) return;
  if (s_star < 1 || s_star > n) {
    throw std::invalid_argument("GeneratorSpec: s_star must lie in [1, n]");
  }
  if (m < 0 || m > n) throw std::invalid_argument("GeneratorSpec: m must lie in [1, n]");
}

namespace {

// Z is drawn column by column; M = Z Z^T accumulated over k in order.
MatrixXd gram_of_random_factor(Rng& rng, int n, int m, bool gaussian) {
  MatrixXd Z(n, m);
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < n; ++i) Z(i, k) = gaussian ? rng.normal() : rng.uniform();
  }
  const MatrixXd Zt = Z.transpose();  // contiguous rows of Z
  MatrixXd M(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = j; i < n; ++i) {
      double acc = 0.0;
      for (int k = 0; k < m; ++k) acc += Zt(k, i) * Zt(k, j);
      M(i, j) = acc;
      M(j, i) = acc;
    }
  }
  return M;
}

}  // namespace

LcpInstance gen_z_matrix(int n) {
  if (n < 1) throw std::invalid_argument("gen_z_matrix: n must be >= 1");
  const double inv = 1.0 / n;
  MatrixXd M = MatrixXd::Constant(n, n, -inv);
  for (int i = 0; i < n; ++i) M(i, i) = 1.0 - inv;
  VectorXd q = VectorXd::Constant(n, inv);
  q(0) = inv - 1.0;
  VectorXd truth = VectorXd::Zero(n);
  truth(0) = 1.0;
  return LcpInstance(std::move(M), std::move(q), std::move(truth),
                     {MatrixClass::Z, MatrixClass::PSD});
}

LcpInstance gen_sdp(const GeneratorSpec& spec) {
  spec.validate();
  const bool gaussian = spec.example == ExampleKind::SdpGaussian;
  if (!gaussian && spec.example != ExampleKind::SdpUniform) {
    throw std::invalid_argument("gen_sdp: example must be sdp-gaussian or sdp-uniform");
  }
  const int n = spec.n;
  Rng rng(spec.seed);
  MatrixXd M = gram_of_random_factor(rng, n, spec.inner_dim(), gaussian);

  std::vector<int> perm = rng.permutation(n);
  VectorXd truth = VectorXd::Zero(n);
  for (int k = 0; k < spec.s_star; ++k) truth(perm[k]) = 0.1 + std::abs(rng.normal());

  VectorXd Mx = VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    if (truth(j) == 0.0) continue;
    for (int i = 0; i < n; ++i) Mx(i) += M(i, j) * truth(j);
  }
  VectorXd q(n);
  for (int i = 0; i < n; ++i) {
    if (truth(i) > 0.0) {
      q(i) = -Mx(i);
    } else {
      q(i) = gaussian ? std::abs(Mx(i)) : rng.uniform();
    }
  }
  std::set<MatrixClass> classes{MatrixClass::PSD};
  if (!gaussian) classes.insert(MatrixClass::Nonnegative);
  return LcpInstance(std::move(M), std::move(q), std::move(truth), std::move(classes));
}

LcpInstance gen_sdp_nox(const GeneratorSpec& spec) {
  spec.validate();
  const int n = spec.n;
  Rng rng(spec.seed);
  MatrixXd M = gram_of_random_factor(rng, n, spec.inner_dim(), false);
  std::vector<int> perm = rng.permutation(n);
  std::vector<char> negative(n, 0);
  for (int k = 0; k < spec.s_star; ++k) negative[perm[k]] = 1;
  VectorXd q(n);
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    q(i) = negative[i] ? -u : u;
  }
  return LcpInstance(std::move(M), std::move(q), std::nullopt,
                     {MatrixClass::PSD, MatrixClass::Nonnegative});
}

LcpInstance generate(const GeneratorSpec& spec) {
  switch (spec.example) {
    case ExampleKind::ZMatrix: return gen_z_matrix(spec.n);
    case ExampleKind::SdpGaussian:
    case ExampleKind::SdpUniform: return gen_sdp(spec);
    case ExampleKind::SdpUniformNoX: return gen_sdp_nox(spec);
  }
  throw std::invalid_argument("generate: unknown example");
}

bool is_z_matrix(const MatrixXd& M) {
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      if (i != j && M(i, j) > 0.0) return false;
    }
  }
  return true;
}

bool is_psd(const MatrixXd& M, double tol) {
  if (M.rows() != M.cols()) throw std::invalid_argument("is_psd: M must be square");
  const MatrixXd sym = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= -tol;
}

bool is_ps_matrix(const MatrixXd& M, int s, double tol) {
  const int n = static_cast<int>(M.rows());
  if (M.cols() != n) throw std::invalid_argument("is_ps_matrix: M must be square");
  if (n > 20) throw CombinatorialLimit("is_ps_matrix: enumeration limited to n <= 20");
  if (s < 1 || s > n) throw std::invalid_argument("is_ps_matrix: s must lie in [1, n]");
  for (int order = 1; order <= s; ++order) {
    std::vector<int> idx(order);
    for (int k = 0; k < order; ++k) idx[k] = k;
    while (true) {
      if (!(gather(M, idx, idx).determinant() > tol)) return false;
      int k = order - 1;
      while (k >= 0 && idx[k] == n - order + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (int l = k + 1; l < order; ++l) idx[l] = idx[l - 1] + 1;
    }
  }
  return true;
}

bool is_success(const VectorXd& x, const VectorXd& x_star) {
  const double ref = x_star.norm();
  if (ref == 0.0) throw std::invalid_argument("is_success: x* must be nonzero");
  if (x.size() != x_star.size()) throw std::invalid_argument("is_success: size mismatch");
  return (x - x_star).norm() < 0.01 * ref;
}

}  // namespace sparse_lcp
