#include "sparse_lcp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace sparse_lcp {

namespace {

constexpr double kSingularRatio = 1e-12;

struct LuFactors {
  MatrixXd lu;
  std::vector<int> perm;
};

LuFactors factorize(const MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  const double norm_inf = A.cwiseAbs().rowwise().sum().maxCoeff();
  const double threshold = kSingularRatio * norm_inf;

  LuFactors f{A, std::vector<int>(n)};
  std::iota(f.perm.begin(), f.perm.end(), 0);
  MatrixXd& lu = f.lu;
  for (int k = 0; k < n; ++k) {
    Eigen::Index p = k;
    lu.col(k).tail(n - k).cwiseAbs().maxCoeff(&p);
    p += k;
    const double pivot = lu(p, k);
    if (!(std::abs(pivot) > threshold)) {
      throw SingularError("dense_solve: pivot " + std::to_string(pivot) +
                          " below threshold at column " + std::to_string(k));
    }
    if (p != k) {
      lu.row(k).swap(lu.row(p));
      std::swap(f.perm[k], f.perm[p]);
    }
    const int rest = n - k - 1;
    if (rest == 0) continue;
    lu.col(k).tail(rest) /= pivot;
    lu.bottomRightCorner(rest, rest).noalias() -=
        lu.col(k).tail(rest) * lu.row(k).tail(rest);
  }
  return f;
}

VectorXd substitute(const LuFactors& f, const VectorXd& b) {
  const int n = static_cast<int>(b.size());
  VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = b(f.perm[i]);
  for (int i = 0; i < n; ++i) {
    x(i) -= f.lu.row(i).head(i).dot(x.head(i));
  }
  for (int i = n - 1; i >= 0; --i) {
    x(i) -= f.lu.row(i).tail(n - i - 1).dot(x.tail(n - i - 1));
    x(i) /= f.lu(i, i);
  }
  return x;
}

}  // namespace

VectorXd dense_solve(const MatrixXd& A, const VectorXd& b) {
  if (A.rows() != A.cols() || A.rows() != b.size()) {
    throw std::invalid_argument("dense_solve: A must be square and conformal with b");
  }
  if (b.size() == 0) return VectorXd();
  const LuFactors f = factorize(A);
  VectorXd d = substitute(f, b);
  const VectorXd r = b - A * d;
  d += substitute(f, r);
  return d;
}

IndexSet top_s_by_magnitude(const VectorXd& z, int s) {
  const int n = static_cast<int>(z.size());
  if (s < 1 || s > n) {
    throw std::invalid_argument("top_s_by_magnitude: s must lie in [1, n]");
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto before = [&z](int a, int b) {
    const double za = std::abs(z(a));
    const double zb = std::abs(z(b));
    return za > zb || (za == zb && a < b);
  };
  std::nth_element(order.begin(), order.begin() + (s - 1), order.end(), before);
  order.resize(s);
  std::sort(order.begin(), order.end());
  return IndexSet(std::move(order), s);
}

VectorXd affine_map(const LcpInstance& inst, const VectorXd& x) {
  // Mx is accumulated first so that q = -Mx* cancels exactly at a planted
  // solution built with the same column order.
  VectorXd y = VectorXd::Zero(inst.n());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x(j) != 0.0) y.noalias() += x(j) * inst.M.col(j);
  }
  y += inst.q;
  return y;
}

MatrixXd gather(const MatrixXd& A, const std::vector<int>& rows,
                const std::vector<int>& cols) {
  MatrixXd out(rows.size(), cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    for (size_t i = 0; i < rows.size(); ++i) out(i, j) = A(rows[i], cols[j]);
  }
  return out;
}

VectorXd gather(const VectorXd& v, const std::vector<int>& idx) {
  VectorXd out(idx.size());
  for (size_t k = 0; k < idx.size(); ++k) out(k) = v(idx[k]);
  return out;
}

}  // namespace sparse_lcp
