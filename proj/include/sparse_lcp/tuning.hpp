#pragma once

#include <optional>

#include "sparse_lcp/lemke.hpp"
#include "sparse_lcp/nhtp.hpp"

namespace sparse_lcp {

/// Geometric sparsity-level schedule s_{l+1} = ceil(rho * s_l).
struct TuningConfig {
  int s0 = 1;
  double rho = 2.0;
  double eps = 1e-8;
  int max_rounds = 30;

  /// s0 = ceil(n / 5000) (at least 1), rho = max(2, log10 n), eps = 1e-8.
  static TuningConfig defaults_for(int n);

  void validate() const;
};

struct TuningReport {
  SolveReport report;
  int rounds = 0;   // NHTP invocations
  int final_s = 0;  // sparsity level of the returned report
  bool accepted = false;
};

/// Runs NHTP from x0 = 0 at s = s0, s1, ... until the merit value drops
/// below eps. Without acceptance the best report seen is returned with
/// termination IterationCap.
TuningReport nhtpt_solve(const LcpInstance& inst, const MeritModel& model,
                         const SolverConfig& config, const TuningConfig& tuning,
                         const IterationObserver& observer = {});

/// ||x_lemke||_0, an upper bound on a usable sparsity level. nullopt when
/// Lemke stops without a solution. May return 0 (q >= 0); callers clamp.
std::optional<int> lemke_seeded_s(const LcpInstance& inst,
                                  const LemkeOptions& options = {});

}  // namespace sparse_lcp
