#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparse_lcp/merit.hpp"
#include "sparse_lcp/nhtp.hpp"
#include "sparse_lcp/problems.hpp"

namespace sparse_lcp {

enum class Experiment {
  SuccessRateVsR,
  SuccessRateVsS,
  ScalingTable,
  SSelection,
  MeritComparison
};

std::string to_string(Experiment e);
Experiment parse_experiment(const std::string& name);

/// One point of an experiment grid. s = 0 means "use s_star".
struct GridCell {
  int n = 200;
  int s_star = 2;
  double r = 2.0;
  int s = 0;

  int sparsity() const { return s > 0 ? s : s_star; }
};

/// Parses "n=200,sstar=2,r=2;n=200,sstar=5,r=2.5,s=10". Keys: n, sstar, r, s.
std::vector<GridCell> parse_grid(const std::string& text);

struct ExperimentSpec {
  Experiment experiment = Experiment::SuccessRateVsR;
  ExampleKind example = ExampleKind::SdpGaussian;
  std::vector<GridCell> grid;
  int trials = 50;
  std::uint64_t base_seed = 0;  // trial t uses base_seed + t
  std::string output_path;      // CSV destination; empty keeps results in memory
  int parallel = 1;             // worker threads over trials
  bool record_timing = true;    // false writes 0 in time columns

  void validate() const;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
  /// Column index by name; throws std::out_of_range.
  size_t column(const std::string& name) const;
  double number(size_t row, const std::string& name) const;
};

/// Per-iteration checks made on every solve of a benchmark run.
struct InvariantTally {
  long iterations = 0;
  long descent_violations = 0;   // f(x^{k+1}) > f(x^k)
  long sparsity_violations = 0;  // ||x^{k+1}||_0 > s
  long support_violations = 0;   // supp(x^{k+1}) not inside T_k

  void merge(const InvariantTally& other);
  bool clean() const {
    return descent_violations == 0 && sparsity_violations == 0 &&
           support_violations == 0;
  }
};

/// f_2 values along one run, starting with f_2(x^0).
struct Trace {
  std::string merit;
  int n = 0;
  int trial = 0;
  std::vector<double> f2;
};

struct BenchOutput {
  CsvTable table;
  InvariantTally invariants;
  std::vector<Trace> traces;
};

/// Observer that records invariant violations into `tally`.
IterationObserver invariant_checker(InvariantTally& tally, int s);

/// Success rate of generate + NHTP + is_success over the trials of each cell.
/// Columns: n, s_star, r_or_s, success_rate, mean_time.
BenchOutput run_success_sweep(const ExperimentSpec& spec);

/// Trial averages per cell. Columns: method, n, rel_error_or_f2, time,
/// iterations, grad_norm_f2, support_size. rel_error_or_f2 is the relative
/// error when the example has a ground truth, f_2(x) otherwise.
BenchOutput run_scaling_table(const ExperimentSpec& spec);

/// All four merit functions from x0 = 0 on identical instances. Columns:
/// merit, n, f2_of_x, time, iterations (trial averages), plus f_2 traces.
BenchOutput run_merit_comparison(const ExperimentSpec& spec);

/// Lemke, NHTP with s = ||x_lemke||_0, and NHTPT per trial. Columns: method,
/// n, trial, f2, time, support_size, status.
BenchOutput run_s_selection(const ExperimentSpec& spec);

/// Dispatches on spec.experiment and writes the CSV (and trace files) when
/// spec.output_path is set.
BenchOutput run_experiment(const ExperimentSpec& spec);

/// Writes table to path and traces to "<path>.trace_<merit>_n<n>_t<trial>.txt".
void write_bench_output(const BenchOutput& out, const std::string& path);

}  // namespace sparse_lcp
