#include "sparse_lcp/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparse_lcp {

TuningConfig TuningConfig::defaults_for(int n) {
  TuningConfig t;
  t.s0 = std::max(1, (n + 4999) / 5000);
  t.rho = std::max(2.0, std::log10(static_cast<double>(n)));
  t.eps = 1e-8;
  return t;
}

void TuningConfig::validate() const {
  if (s0 < 1) throw std::invalid_argument("TuningConfig: s0 must be >= 1");
  if (!(rho > 1.0)) throw std::invalid_argument("TuningConfig: rho must exceed 1");
  if (!(eps > 0.0)) throw std::invalid_argument("TuningConfig: eps must be positive");
  if (max_rounds < 1) throw std::invalid_argument("TuningConfig: max_rounds must be >= 1");
}

TuningReport nhtpt_solve(const LcpInstance& inst, const MeritModel& model,
                         const SolverConfig& config, const TuningConfig& tuning,
                         const IterationObserver& observer) {
  tuning.validate();
  const int n = inst.n();
  TuningReport out;
  std::optional<TuningReport> best;
  int s = std::min(tuning.s0, n);

  for (int round = 1; round <= tuning.max_rounds; ++round) {
    SolverConfig round_config = config;
    round_config.s = s;
    SolveReport report = solve(inst, model, round_config, observer);
    out.rounds = round;
    if (report.objective < tuning.eps) {
      out.report = std::move(report);
      out.final_s = s;
      out.accepted = true;
      return out;
    }
    if (!best || report.objective < best->report.objective) {
      best = TuningReport{std::move(report), round, s, false};
    }
    if (s == n) break;
    s = std::min(n, static_cast<int>(std::ceil(tuning.rho * s)));
  }

  best->rounds = out.rounds;
  best->report.termination = Termination::IterationCap;
  return *best;
}

std::optional<int> lemke_seeded_s(const LcpInstance& inst,
                                  const LemkeOptions& options) {
  const LemkeResult res = lemke_solve(inst, options);
  if (res.status != LemkeStatus::Solved) return std::nullopt;
  return numerical_support_size(res.x);
}

}  // namespace sparse_lcp
