#pragma once

#include "sparse_lcp/types.hpp"

namespace sparse_lcp {

enum class LemkeStatus { Solved, RayTermination, PivotLimit };

std::string to_string(LemkeStatus s);

struct LemkeResult {
  LemkeStatus status = LemkeStatus::RayTermination;
  VectorXd x;  // valid when status == Solved
  int pivots = 0;
  double wall_time = 0.0;
};

struct LemkeOptions {
  double pivot_tol = 1e-9;
  int max_pivots = 0;  // 0 selects 10 * n
};

/// Lemke's complementary pivoting method with covering vector e = (1, ..., 1).
///
/// Works on the tableau w - M z - e z0 = q. Minimum-ratio ties go to the
/// artificial variable z0 when it is among them, otherwise to the lowest row.
/// There is no lexicographic anti-cycling; the pivot cap bounds degenerate
/// cycling. On success the basic z-block is re-solved once from the original
/// data to remove accumulated pivoting error.
LemkeResult lemke_solve(const LcpInstance& inst, const LemkeOptions& options = {});

}  // namespace sparse_lcp
