#include "sparse_lcp/nhtp.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>

#include "sparse_lcp/linalg.hpp"

namespace sparse_lcp {

namespace {

// s-th largest entry of |x| (1-based s).
double sth_largest_magnitude(const VectorXd& x, int s) {
  std::vector<double> mags(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) mags[i] = std::abs(x(i));
  std::nth_element(mags.begin(), mags.begin() + (s - 1), mags.end(),
                   std::greater<>());
  return mags[s - 1];
}

double squared_norm_off(const VectorXd& x, const IndexSet& T) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) != 0.0 && !T.contains(static_cast<int>(i))) total += x(i) * x(i);
  }
  return total;
}

void evaluate_into(IterateState& st, const MeritModel& model,
                   const LcpInstance& inst) {
  st.y = affine_map(inst, st.x);
  st.f = merit_value_at(model, st.x, st.y);
  st.grad = merit_gradient_at(model, inst, st.x, st.y);
}

}  // namespace

IterateState make_initial_state(const LcpInstance& inst, const MeritModel& model,
                                const VectorXd& x0, int s) {
  const int n = inst.n();
  if (x0.size() != n) throw std::invalid_argument("solve: x0 must have length n");
  IterateState st;
  st.x = x0;
  if (count_nonzeros(x0) > s) {
    const IndexSet keep = top_s_by_magnitude(x0, s);
    st.x.setZero();
    for (int i : keep) st.x(i) = x0(i);
  }
  std::vector<int> prev;
  for (int i = 0; i < n; ++i) {
    if (st.x(i) != 0.0) prev.push_back(i);
  }
  for (int i = 0; i < n && static_cast<int>(prev.size()) < s; ++i) {
    if (st.x(i) == 0.0) prev.push_back(i);
  }
  st.T_prev = IndexSet::from_unsorted(std::move(prev), s);
  st.T = st.T_prev;
  evaluate_into(st, model, inst);
  return st;
}

IndexSet select_support(const VectorXd& x, const VectorXd& grad, double eta,
                        int s) {
  return top_s_by_magnitude(x - eta * grad, s);
}

std::optional<VectorXd> newton_direction(const IterateState& state,
                                         const MeritModel& model,
                                         const LcpInstance& inst,
                                         const SolverConfig& config) {
  const std::vector<int>& T = state.T.indices();
  std::vector<int> J;
  for (int j : state.T_prev) {
    if (!state.T.contains(j) && state.x(j) != 0.0) J.push_back(j);
  }

  const MatrixXd H_TT = merit_hessian_at(model, inst, state.x, state.y, T, T);
  VectorXd rhs = -gather(state.grad, T);
  if (!J.empty()) {
    rhs.noalias() +=
        merit_hessian_at(model, inst, state.x, state.y, T, J) * gather(state.x, J);
  }

  VectorXd d_T;
  try {
    d_T = dense_solve(H_TT, rhs);
  } catch (const SingularError&) {
    return std::nullopt;
  }
  if (!d_T.allFinite()) return std::nullopt;

  VectorXd d = -state.x;
  for (size_t k = 0; k < T.size(); ++k) d(T[k]) = d_T(k);

  const double off_sq = squared_norm_off(state.x, state.T);
  const double gamma = off_sq == 0.0 ? config.gamma_inactive : config.gamma_active;
  const double slope = gather(state.grad, T).dot(d_T);
  if (slope > -gamma * d.squaredNorm() + off_sq / (4.0 * config.eta)) {
    return std::nullopt;
  }
  return d;
}

VectorXd fallback_direction(const IterateState& state) {
  VectorXd d = -state.x;
  for (int i : state.T) d(i) = -state.grad(i);
  return d;
}

std::optional<LineSearchStep> line_search(const IterateState& state,
                                          const VectorXd& d,
                                          const MeritModel& model,
                                          const LcpInstance& inst,
                                          const SolverConfig& config) {
  const double slope = state.grad.dot(d);
  LineSearchStep step;
  step.x_next = VectorXd::Zero(state.x.size());
  double alpha = 1.0;
  for (int t = 0; t <= config.max_backtracks; ++t) {
    for (int i : state.T) step.x_next(i) = state.x(i) + alpha * d(i);
    step.y_next = affine_map(inst, step.x_next);
    step.f_next = merit_value_at(model, step.x_next, step.y_next);
    if (step.f_next <= state.f + config.sigma * alpha * slope) {
      step.alpha = alpha;
      step.backtracks = t;
      return step;
    }
    alpha *= config.beta;
  }
  return std::nullopt;
}

double residual(const IterateState& state, const SolverConfig& config) {
  const int n = static_cast<int>(state.x.size());
  double f_norm_sq = 0.0;
  for (int i : state.T) f_norm_sq += state.grad(i) * state.grad(i);
  f_norm_sq += squared_norm_off(state.x, state.T);

  const double xs = sth_largest_magnitude(state.x, config.s);
  double worst = 0.0;
  for (int i : state.T.complement(n)) {
    worst = std::max(worst, std::abs(state.grad(i)) - xs / config.eta);
  }
  return std::sqrt(f_norm_sq) + worst;
}

SolveReport solve(const LcpInstance& inst, const MeritModel& model,
                  const SolverConfig& config, const VectorXd& x0,
                  const IterationObserver& observer) {
  inst.validate();
  model.validate();
  config.validate(inst.n());
  const auto start = std::chrono::steady_clock::now();

  IterateState st = make_initial_state(inst, model, x0, config.s);
  SolveReport report;
  report.termination = Termination::IterationCap;
  bool residual_known = false;

  // A failed or non-decreasing step means eta is above the range where the
  // thresholded path is a descent path; shrink it and redo the iteration.
  SolverConfig work = config;
  bool stop = false;
  for (st.k = 0; st.k < config.max_iter; ++st.k) {
    std::optional<LineSearchStep> step;
    bool newton = false;
    double res = 0.0;
    work.eta = config.eta;
    for (int shrink = 0;; ++shrink) {
      st.T = select_support(st.x, st.grad, work.eta, work.s);
      res = residual(st, work);
      if (res <= work.tol) {
        report.termination = Termination::ResidualMet;
        report.residual = res;
        residual_known = true;
        stop = true;
        break;
      }

      std::optional<VectorXd> d = newton_direction(st, model, inst, work);
      newton = d.has_value();
      if (!newton) d = fallback_direction(st);
#ifndef NDEBUG
      if (newton) {
        const double off_sq = squared_norm_off(st.x, st.T);
        const double gamma = off_sq == 0.0 ? work.gamma_inactive : work.gamma_active;
        double slope = 0.0;
        for (int i : st.T) slope += st.grad(i) * (*d)(i);
        assert(slope <= -gamma * d->squaredNorm() + off_sq / (4.0 * work.eta));
      }
#endif
      step = line_search(st, *d, model, inst, work);
      if (step && step->f_next <= st.f) break;
      step.reset();
      if (shrink == work.max_eta_shrinks) {
        report.termination = Termination::LineSearchFailed;
        stop = true;
        break;
      }
      work.eta *= work.eta_shrink;
    }
    if (stop) break;

    const double f_prev = st.f;
    st.x = std::move(step->x_next);
    st.y = std::move(step->y_next);
    st.f = step->f_next;
    st.grad = merit_gradient_at(model, inst, st.x, st.y);
    st.T_prev = st.T;
    report.iterations += 1;
    report.backtracks_total += step->backtracks;
    if (newton) report.newton_steps += 1;

    if (observer) {
      IterationInfo info;
      info.k = st.k;
      info.x = &st.x;
      info.f_prev = f_prev;
      info.f = st.f;
      info.alpha = step->alpha;
      info.residual = res;
      info.backtracks = step->backtracks;
      info.newton = newton;
      info.T = &st.T_prev;
      observer(info);
    }

    const bool contracting = st.f < config.stall_contraction * f_prev;
    if (!contracting && std::abs(st.f - f_prev) < config.obj_tol * std::abs(f_prev)) {
      report.termination = Termination::ObjectiveStalled;
      break;
    }
  }

  if (!residual_known) {
    IterateState probe = st;
    probe.T = select_support(st.x, st.grad, work.eta, work.s);
    report.residual = residual(probe, work);
  }
  report.x = st.x;
  report.support = st.T_prev;
  report.objective = st.f;
  report.final_eta = work.eta;
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SolveReport solve(const LcpInstance& inst, const MeritModel& model,
                  const SolverConfig& config, const IterationObserver& observer) {
  return solve(inst, model, config, VectorXd::Zero(inst.n()), observer);
}

}  // namespace sparse_lcp
