#include "sparse_lcp/lemke.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>

#include "sparse_lcp/linalg.hpp"

namespace sparse_lcp {

namespace {

constexpr double kFeasibilitySlack = 1e-9;

// Column layout: w_0..w_{n-1}, z_0..z_{n-1}, z0, rhs.
struct Tableau {
  int n;
  MatrixXd body;
  std::vector<int> basis;  // column label occupying each row

  int w(int i) const { return i; }
  int z(int i) const { return n + i; }
  int z0() const { return 2 * n; }
  int rhs() const { return 2 * n + 1; }

  int complement(int label) const { return label < n ? label + n : label - n; }

  void pivot(int row, int col) {
    body.row(row) /= body(row, col);
    VectorXd factors = body.col(col);
    factors(row) = 0.0;
    const Eigen::RowVectorXd pivot_row = body.row(row);
    body.noalias() -= factors * pivot_row;
    for (int i = 0; i < n; ++i) {
      double& b = body(i, rhs());
      if (b < 0.0 && b > -kFeasibilitySlack) b = 0.0;
    }
    basis[row] = col;
  }

  bool complementary_except_z0() const {
    std::vector<int> seen(n, 0);
    for (int label : basis) {
      if (label == z0()) continue;
      if (++seen[label % n] > 1) return false;
    }
    return true;
  }
};

// Minimum-ratio row for the entering column; -1 when the column is unblocked.
int ratio_test(const Tableau& t, int col, double pivot_tol) {
  int best = -1;
  double best_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < t.n; ++i) {
    const double a = t.body(i, col);
    if (a <= pivot_tol) continue;
    const double ratio = t.body(i, t.rhs()) / a;
    const double tie_band = 1e-12 * std::max(1.0, std::abs(best_ratio));
    if (best < 0 || ratio < best_ratio - tie_band) {
      best = i;
      best_ratio = ratio;
    } else if (ratio <= best_ratio + tie_band && t.basis[i] == t.z0()) {
      best = i;
    }
  }
  return best;
}

// Re-solves M_BB z_B = -q_B on the basic z-set; returns false if the result
// is not feasible.
bool polish(const LcpInstance& inst, const std::vector<int>& basic_z,
            VectorXd& x) {
  if (basic_z.empty()) return true;
  VectorXd z;
  try {
    z = dense_solve(gather(inst.M, basic_z, basic_z), -gather(inst.q, basic_z));
  } catch (const SingularError&) {
    return false;
  }
  VectorXd candidate = VectorXd::Zero(inst.n());
  for (size_t k = 0; k < basic_z.size(); ++k) candidate(basic_z[k]) = z(k);
  if (candidate.minCoeff() < -kFeasibilitySlack) return false;
  if (affine_map(inst, candidate).minCoeff() < -kFeasibilitySlack) return false;
  x = candidate.cwiseMax(0.0);
  return true;
}

}  // namespace

std::string to_string(LemkeStatus s) {
  switch (s) {
    case LemkeStatus::Solved: return "Solved";
    case LemkeStatus::RayTermination: return "RayTermination";
    case LemkeStatus::PivotLimit: return "PivotLimit";
  }
  return "Unknown";
}

LemkeResult lemke_solve(const LcpInstance& inst, const LemkeOptions& options) {
  inst.validate();
  const auto start = std::chrono::steady_clock::now();
  const int n = inst.n();
  const int max_pivots = options.max_pivots > 0 ? options.max_pivots : 10 * n;
  LemkeResult result;
  auto finish = [&](LemkeStatus status) {
    result.status = status;
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  };

  Eigen::Index leave = 0;
  if (inst.q.minCoeff(&leave) >= 0.0) {
    result.x = VectorXd::Zero(n);
    return finish(LemkeStatus::Solved);
  }

  Tableau t{n, MatrixXd::Zero(n, 2 * n + 2), std::vector<int>(n)};
  t.body.leftCols(n).setIdentity();
  t.body.middleCols(n, n) = -inst.M;
  t.body.col(t.z0()).setConstant(-1.0);
  t.body.col(t.rhs()) = inst.q;
  for (int i = 0; i < n; ++i) t.basis[i] = t.w(i);

  t.pivot(static_cast<int>(leave), t.z0());
  result.pivots = 1;
  int entering = t.z(static_cast<int>(leave));

  while (result.pivots < max_pivots) {
    const int row = ratio_test(t, entering, options.pivot_tol);
    if (row < 0) return finish(LemkeStatus::RayTermination);
    const int leaving = t.basis[row];
    t.pivot(row, entering);
    ++result.pivots;
    assert(t.complementary_except_z0());

    if (leaving == t.z0()) {
      result.x = VectorXd::Zero(n);
      std::vector<int> basic_z;
      for (int i = 0; i < n; ++i) {
        const int label = t.basis[i];
        if (label >= n && label < 2 * n) {
          result.x(label - n) = std::max(t.body(i, t.rhs()), 0.0);
          basic_z.push_back(label - n);
        }
      }
      std::sort(basic_z.begin(), basic_z.end());
      polish(inst, basic_z, result.x);
      return finish(LemkeStatus::Solved);
    }
    entering = t.complement(leaving);
  }
  return finish(LemkeStatus::PivotLimit);
}

}  // namespace sparse_lcp
