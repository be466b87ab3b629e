#pragma once

#include <Eigen/Core>

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparse_lcp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Matrix classes an instance may declare about its M. Advisory only; the
/// predicates in problems.hpp verify them.
enum class MatrixClass { Z, PSD, Ps, Nonnegative };

/// An LCP instance: find x >= 0 with Mx + q >= 0 and <x, Mx + q> = 0.
struct LcpInstance {
  MatrixXd M;
  VectorXd q;
  std::optional<VectorXd> ground_truth;
  std::set<MatrixClass> declared_classes;

  LcpInstance() = default;
  LcpInstance(MatrixXd m, VectorXd q_vec,
              std::optional<VectorXd> truth = std::nullopt,
              std::set<MatrixClass> classes = {});

  int n() const { return static_cast<int>(q.size()); }

  /// Throws std::invalid_argument when the shapes are inconsistent.
  void validate() const;
};

/// Sorted, duplicate-free subset of {0, ..., n-1} holding at most `capacity`
/// indices. Indices are 0-based in memory; user-facing output adds one.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::vector<int> indices, int capacity);

  /// Sorts and deduplicates before validating.
  static IndexSet from_unsorted(std::vector<int> indices, int capacity);

  const std::vector<int>& indices() const { return indices_; }
  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  int operator[](int k) const { return indices_[k]; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  bool contains(int i) const;

  /// Indices of {0, ..., n-1} not in this set, ascending.
  std::vector<int> complement(int n) const;

  /// One-based, comma separated, e.g. "{2,3}".
  std::string to_string() const;

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.indices_ == b.indices_;
  }

 private:
  std::vector<int> indices_;
  int capacity_ = 0;
};

/// Tunables of the Newton hard-thresholding solver.
struct SolverConfig {
  int s = 1;                     // sparsity budget
  double eta = 5.0;              // thresholding step
  double sigma = 1e-4;           // Armijo constant, (0, 0.5)
  double beta = 0.5;             // backtracking factor, (0, 1)
  double gamma_active = 1e-4;    // descent constant while x off T is nonzero
  double gamma_inactive = 1e-10; // descent constant while x off T is zero
  double tol = 1e-6;             // stationarity tolerance
  double obj_tol = 1e-6;         // relative objective-change tolerance
  double stall_contraction = 0.5; // steps with f_next < stall_contraction * f never count as stalls
  int max_iter = 2000;
  int max_backtracks = 50;
  double eta_shrink = 0.5;       // eta *= eta_shrink after a failed line search
  int max_eta_shrinks = 40;      // per iteration, before LineSearchFailed

  /// Defaults for a problem of size n: eta = 5 for n <= 1000, else 1.
  static SolverConfig defaults_for(int n, int s);

  /// Throws std::invalid_argument when a field is out of range for size n.
  void validate(int n) const;
};

enum class Termination {
  ResidualMet,
  ObjectiveStalled,
  IterationCap,
  LineSearchFailed
};

std::string to_string(Termination t);

struct SolveReport {
  VectorXd x;
  IndexSet support;  // working support containing supp(x)
  double objective = 0.0;
  double residual = 0.0;
  int iterations = 0;
  int backtracks_total = 0;
  int newton_steps = 0;
  double wall_time = 0.0;  // seconds
  double final_eta = 0.0;  // eta after any shrinking
  Termination termination = Termination::IterationCap;
};

/// Thrown by dense_solve when a pivot falls below the singularity threshold.
class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an enumeration-based predicate would be too expensive.
class CombinatorialLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of entries with |x_i| > threshold.
int count_nonzeros(const VectorXd& x, double threshold = 0.0);

/// Entries above 1e-9 * max(1, ||x||_inf); the support size reported by the
/// benchmarks, where round-off leftovers should not count.
int numerical_support_size(const VectorXd& x);

}  // namespace sparse_lcp
