#pragma once

#include <string>
#include <utility>

#include "sparse_lcp/types.hpp"

namespace sparse_lcp {

enum class MeritKind { PhiR, FischerBurmeister, Min, PsiII };

/// Which merit function to minimize. Every model is a separable sum
/// f(x) = sum_i psi(x_i, y_i) with y = Mx + q.
struct MeritModel {
  MeritKind kind = MeritKind::PhiR;
  double r = 2.0;                // exponent, PhiR only
  double smoothing_eps = 1e-10;  // sqrt(z) -> sqrt(z + eps), FB and Min only

  static MeritModel phi_r(double r);
  static MeritModel fischer_burmeister(double eps = 1e-10);
  static MeritModel min(double eps = 1e-10);
  static MeritModel psi_ii();

  /// Throws std::invalid_argument for r < 2 or a negative smoothing constant.
  void validate() const;

  /// Short label: "phi2", "phi2.5", "fb", "min", "psi2".
  std::string name() const;
};

/// Parses "phi" (with the given r), "fb", "min" or "psi2"/"psiii".
MeritModel parse_merit(const std::string& name, double r = 2.0);

struct MeritEval {
  double value = 0.0;
  VectorXd gradient;  // empty unless requested
  VectorXd y;         // Mx + q
};

/// (1/r) [a_+^r b_+^r + |a_-|^r + |b_-|^r]
double phi_r_scalar(double a, double b, double r);

/// Gradient of phi_r_scalar with respect to (a, b).
std::pair<double, double> phi_r_grad_scalar(double a, double b, double r);

MeritEval merit_value(const MeritModel& model, const LcpInstance& inst,
                      const VectorXd& x);

/// Value from a precomputed y = Mx + q.
double merit_value_at(const MeritModel& model, const VectorXd& x,
                      const VectorXd& y);

VectorXd merit_gradient(const MeritModel& model, const LcpInstance& inst,
                        const VectorXd& x);

/// Gradient from a precomputed y = Mx + q.
VectorXd merit_gradient_at(const MeritModel& model, const LcpInstance& inst,
                           const VectorXd& x, const VectorXd& y);

/// Value, gradient and y in one pass.
MeritEval merit_evaluate(const MeritModel& model, const LcpInstance& inst,
                         const VectorXd& x);

/// The (rows, cols) block of the Hessian, or of one fixed element of the
/// generalized Hessian where the merit is only once differentiable. At a kink
/// of a negative-part term the curvature 1 is taken. The full n x n matrix is
/// never formed.
MatrixXd merit_hessian(const MeritModel& model, const LcpInstance& inst,
                       const VectorXd& x, const IndexSet& rows,
                       const IndexSet& cols);

/// Same as merit_hessian with index lists and a precomputed y.
MatrixXd merit_hessian_at(const MeritModel& model, const LcpInstance& inst,
                          const VectorXd& x, const VectorXd& y,
                          const std::vector<int>& rows,
                          const std::vector<int>& cols);

}  // namespace sparse_lcp
