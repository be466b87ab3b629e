#include "sparse_lcp/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sparse_lcp {

LcpInstance::LcpInstance(MatrixXd m, VectorXd q_vec,
                         std::optional<VectorXd> truth,
                         std::set<MatrixClass> classes)
    : M(std::move(m)),
      q(std::move(q_vec)),
      ground_truth(std::move(truth)),
      declared_classes(std::move(classes)) {
  validate();
}

void LcpInstance::validate() const {
  if (q.size() == 0) throw std::invalid_argument("LcpInstance: n must be >= 1");
  if (M.rows() != q.size() || M.cols() != q.size()) {
    throw std::invalid_argument("LcpInstance: M must be n x n with n = |q|");
  }
  if (ground_truth && ground_truth->size() != q.size()) {
    throw std::invalid_argument("LcpInstance: ground truth must have length n");
  }
}

IndexSet::IndexSet(std::vector<int> indices, int capacity)
    : indices_(std::move(indices)), capacity_(capacity) {
  if (static_cast<int>(indices_.size()) > capacity_) {
    throw std::invalid_argument("IndexSet: more indices than capacity");
  }
  for (size_t k = 0; k < indices_.size(); ++k) {
    if (indices_[k] < 0) throw std::invalid_argument("IndexSet: negative index");
    if (k > 0 && indices_[k] <= indices_[k - 1]) {
      throw std::invalid_argument("IndexSet: indices must be strictly increasing");
    }
  }
}

IndexSet IndexSet::from_unsorted(std::vector<int> indices, int capacity) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return IndexSet(std::move(indices), capacity);
}

bool IndexSet::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::vector<int> IndexSet::complement(int n) const {
  std::vector<int> out;
  out.reserve(n - indices_.size());
  auto it = indices_.begin();
  for (int i = 0; i < n; ++i) {
    if (it != indices_.end() && *it == i) {
      ++it;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (size_t k = 0; k < indices_.size(); ++k) {
    if (k) os << ',';
    os << indices_[k] + 1;
  }
  os << '}';
  return os.str();
}

SolverConfig SolverConfig::defaults_for(int n, int s) {
  SolverConfig c;
  c.s = s;
  c.eta = n <= 1000 ? 5.0 : 1.0;
  return c;
}

void SolverConfig::validate(int n) const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("SolverConfig: " + what);
  };
  if (s < 1 || s > n) fail("s must lie in [1, n]");
  if (!(eta > 0)) fail("eta must be positive");
  if (!(sigma > 0 && sigma < 0.5)) fail("sigma must lie in (0, 0.5)");
  if (!(beta > 0 && beta < 1)) fail("beta must lie in (0, 1)");
  if (!(gamma_active > 0) || !(gamma_inactive > 0)) fail("gamma must be positive");
  if (!(tol > 0) || !(obj_tol > 0)) fail("tolerances must be positive");
  if (max_iter < 1 || max_backtracks < 1) fail("iteration caps must be positive");
  if (!(stall_contraction > 0 && stall_contraction <= 1)) fail("stall_contraction must lie in (0, 1]");
  if (!(eta_shrink > 0 && eta_shrink < 1)) fail("eta_shrink must lie in (0, 1)");
  if (max_eta_shrinks < 0) fail("max_eta_shrinks must be >= 0");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::ResidualMet: return "ResidualMet";
    case Termination::ObjectiveStalled: return "ObjectiveStalled";
    case Termination::IterationCap: return "IterationCap";
    case Termination::LineSearchFailed: return "LineSearchFailed";
  }
  return "Unknown";
}

int count_nonzeros(const VectorXd& x, double threshold) {
  int count = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) > threshold) ++count;
  }
  return count;
}

int numerical_support_size(const VectorXd& x) {
  const double scale = x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
  return count_nonzeros(x, 1e-9 * std::max(1.0, scale));
}

}  // namespace sparse_lcp
