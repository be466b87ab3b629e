#pragma once

#include <functional>
#include <optional>

#include "sparse_lcp/merit.hpp"
#include "sparse_lcp/types.hpp"

namespace sparse_lcp {

/// Current iterate of the Newton hard-thresholding loop.
///
/// `T` is the working support picked at `x`; `T_prev` is the previous one and
/// always contains supp(x). `f`, `grad` and `y` are cached at `x`.
struct IterateState {
  VectorXd x;
  VectorXd y;
  VectorXd grad;
  double f = 0.0;
  IndexSet T;
  IndexSet T_prev;
  int k = 0;
};

/// Builds the starting state: hard-thresholds x0 to its s largest entries
/// when needed and completes supp(x0) with the lowest free indices to form
/// the initial previous support.
IterateState make_initial_state(const LcpInstance& inst, const MeritModel& model,
                                const VectorXd& x0, int s);

/// Indices of the s largest entries of |x - eta * grad|.
IndexSet select_support(const VectorXd& x, const VectorXd& grad, double eta, int s);

/// Restricted Newton direction on state.T, or nullopt when the system is
/// singular or the direction fails the sufficient-descent test. In the
/// latter case the caller takes fallback_direction.
std::optional<VectorXd> newton_direction(const IterateState& state,
                                         const MeritModel& model,
                                         const LcpInstance& inst,
                                         const SolverConfig& config);

/// -grad on T and -x off T.
VectorXd fallback_direction(const IterateState& state);

struct LineSearchStep {
  double alpha = 1.0;
  int backtracks = 0;
  VectorXd x_next;
  VectorXd y_next;
  double f_next = 0.0;
};

/// Armijo backtracking along the projected path x(alpha) that moves x_T by
/// alpha * d_T and zeroes x off T. nullopt after config.max_backtracks
/// reductions without sufficient decrease.
std::optional<LineSearchStep> line_search(const IterateState& state,
                                          const VectorXd& d,
                                          const MeritModel& model,
                                          const LcpInstance& inst,
                                          const SolverConfig& config);

/// ||(grad_T f, x_{T^c})|| + max_{i not in T} (|grad_i f| - x_(s) / eta)_+,
/// where x_(s) is the s-th largest |x_i|. Zero certifies stationarity.
double residual(const IterateState& state, const SolverConfig& config);

/// Progress record passed to the observer after each accepted step.
struct IterationInfo {
  int k = 0;                 // index of the step just taken (0-based)
  const VectorXd* x = nullptr;  // the new iterate
  double f_prev = 0.0;
  double f = 0.0;
  double alpha = 1.0;
  double residual = 0.0;     // residual at the iterate the step started from
  int backtracks = 0;
  bool newton = false;
  const IndexSet* T = nullptr;  // support used for the step
};

using IterationObserver = std::function<void(const IterationInfo&)>;

/// Newton hard-thresholding pursuit for min f(x) s.t. ||x||_0 <= s.
SolveReport solve(const LcpInstance& inst, const MeritModel& model,
                  const SolverConfig& config, const VectorXd& x0,
                  const IterationObserver& observer = {});

/// Same, starting from x0 = 0.
SolveReport solve(const LcpInstance& inst, const MeritModel& model,
                  const SolverConfig& config,
                  const IterationObserver& observer = {});

}  // namespace sparse_lcp
