#include "sparse_lcp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <mutex>
#include <thread>

#include "sparse_lcp/instance_io.hpp"
#include "sparse_lcp/lemke.hpp"
#include "sparse_lcp/tuning.hpp"

namespace sparse_lcp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Runs body(t) for t in [0, trials) on `threads` workers. Results are written
// by index so the output does not depend on scheduling.
void for_each_trial(int trials, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, trials));
  if (threads == 1) {
    for (int t = 0; t < trials; ++t) body(t);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (int t = next++; t < trials; t = next++) {
        try {
          body(t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

LcpInstance make_instance(const ExperimentSpec& spec, const GridCell& cell, int trial) {
  GeneratorSpec g;
  g.example = spec.example;
  g.n = cell.n;
  g.s_star = cell.s_star;
  g.seed = spec.base_seed + static_cast<std::uint64_t>(trial);
  return generate(g);
}

std::string time_field(const ExperimentSpec& spec, double seconds) {
  return format_real(spec.record_timing ? seconds : 0.0);
}

double f2_of(const LcpInstance& inst, const VectorXd& x) {
  return merit_value(MeritModel::phi_r(2.0), inst, x).value;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::string r_label(double r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

struct TrialResult {
  SolveReport report;
  InvariantTally tally;
  std::vector<double> trace;
};

TrialResult run_nhtp(const LcpInstance& inst, const MeritModel& model, int s,
                     bool record_trace) {
  TrialResult out;
  SolverConfig config = SolverConfig::defaults_for(inst.n(), s);
  IterationObserver check = invariant_checker(out.tally, s);
  const MeritModel f2 = MeritModel::phi_r(2.0);
  if (record_trace) out.trace.push_back(f2_of(inst, VectorXd::Zero(inst.n())));
  out.report = solve(inst, model, config, [&](const IterationInfo& info) {
    check(info);
    if (record_trace) out.trace.push_back(merit_value(f2, inst, *info.x).value);
  });
  return out;
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::SuccessRateVsR: return "success-vs-r";
    case Experiment::SuccessRateVsS: return "success-vs-s";
    case Experiment::ScalingTable: return "scaling";
    case Experiment::SSelection: return "s-selection";
    case Experiment::MeritComparison: return "merit-comparison";
  }
  return "?";
}

Experiment parse_experiment(const std::string& name) {
  for (Experiment e : {Experiment::SuccessRateVsR, Experiment::SuccessRateVsS,
                       Experiment::ScalingTable, Experiment::SSelection,
                       Experiment::MeritComparison}) {
    if (to_string(e) == name) return e;
  }
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

std::vector<GridCell> parse_grid(const std::string& text) {
  std::vector<GridCell> cells;
  for (const std::string& cell_text : split(text, ';')) {
    GridCell cell;
    for (const std::string& kv : split(cell_text, ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("grid entry '" + kv + "' is not key=value");
      }
      const std::string key = trim(kv.substr(0, eq));
      const std::string val = trim(kv.substr(eq + 1));
      try {
        if (key == "n") cell.n = std::stoi(val);
        else if (key == "sstar") cell.s_star = std::stoi(val);
        else if (key == "r") cell.r = std::stod(val);
        else if (key == "s") cell.s = std::stoi(val);
        else throw std::invalid_argument("unknown grid key '" + key + "'");
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad grid entry '" + kv + "'");
      } catch (const std::out_of_range&) {
        throw std::invalid_argument("bad grid entry '" + kv + "'");
      }
    }
    cells.push_back(cell);
  }
  if (cells.empty()) throw std::invalid_argument("empty grid");
  return cells;
}

void ExperimentSpec::validate() const {
  if (grid.empty()) throw std::invalid_argument("experiment grid is empty");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (parallel < 1) throw std::invalid_argument("parallel must be >= 1");
  for (const GridCell& c : grid) {
    if (c.n < 1) throw std::invalid_argument("grid: n must be >= 1");
    if (c.s_star < 1 || c.s_star > c.n) throw std::invalid_argument("grid: need 1 <= sstar <= n");
    if (c.s < 0 || c.s > c.n) throw std::invalid_argument("grid: need 0 <= s <= n");
    if (!(c.r >= 2.0)) throw std::invalid_argument("grid: r must be >= 2");
  }
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << fields[i];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

size_t CsvTable::column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("no column '" + name + "'");
}

double CsvTable::number(size_t row, const std::string& name) const {
  return std::stod(rows.at(row).at(column(name)));
}

void InvariantTally::merge(const InvariantTally& other) {
  iterations += other.iterations;
  descent_violations += other.descent_violations;
  sparsity_violations += other.sparsity_violations;
  support_violations += other.support_violations;
}

IterationObserver invariant_checker(InvariantTally& tally, int s) {
  return [&tally, s](const IterationInfo& info) {
    ++tally.iterations;
    if (info.f > info.f_prev) ++tally.descent_violations;
    const VectorXd& x = *info.x;
    if (count_nonzeros(x) > s) ++tally.sparsity_violations;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x(i) != 0.0 && !info.T->contains(static_cast<int>(i))) {
        ++tally.support_violations;
        break;
      }
    }
  };
}

BenchOutput run_success_sweep(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.example == ExampleKind::SdpUniformNoX) {
    throw std::invalid_argument("success sweep needs an example with a ground truth");
  }
  BenchOutput out;
  out.table.header = {"n", "s_star", "r_or_s", "success_rate", "mean_time"};
  const bool vary_s = spec.experiment == Experiment::SuccessRateVsS;

  for (const GridCell& cell : spec.grid) {
    const MeritModel model = MeritModel::phi_r(cell.r);
    std::vector<TrialResult> results(spec.trials);
    std::vector<char> success(spec.trials, 0);
    for_each_trial(spec.trials, spec.parallel, [&](int t) {
      const LcpInstance inst = make_instance(spec, cell, t);
      results[t] = run_nhtp(inst, model, cell.sparsity(), false);
      success[t] = is_success(results[t].report.x, *inst.ground_truth);
    });
    int hits = 0;
    std::vector<double> times;
    for (int t = 0; t < spec.trials; ++t) {
      hits += success[t];
      times.push_back(results[t].report.wall_time);
      out.invariants.merge(results[t].tally);
    }
    out.table.rows.push_back(
        {std::to_string(cell.n), std::to_string(cell.s_star),
         vary_s ? std::to_string(cell.sparsity()) : r_label(cell.r),
         format_real(static_cast<double>(hits) / spec.trials),
         time_field(spec, mean(times))});
  }
  return out;
}

BenchOutput run_scaling_table(const ExperimentSpec& spec) {
  spec.validate();
  BenchOutput out;
  out.table.header = {"method", "n", "rel_error_or_f2", "time", "iterations",
                      "grad_norm_f2", "support_size"};
  const MeritModel f2 = MeritModel::phi_r(2.0);

  for (const GridCell& cell : spec.grid) {
    const MeritModel model = MeritModel::phi_r(cell.r);
    std::vector<TrialResult> results(spec.trials);
    std::vector<double> err(spec.trials), grad(spec.trials);
    for_each_trial(spec.trials, spec.parallel, [&](int t) {
      const LcpInstance inst = make_instance(spec, cell, t);
      results[t] = run_nhtp(inst, model, cell.sparsity(), false);
      const VectorXd& x = results[t].report.x;
      if (inst.ground_truth) {
        err[t] = (x - *inst.ground_truth).norm() / inst.ground_truth->norm();
      } else {
        err[t] = f2_of(inst, x);
      }
      grad[t] = merit_gradient(f2, inst, x).norm();
    });
    std::vector<double> times, iters, support;
    for (const TrialResult& r : results) {
      times.push_back(r.report.wall_time);
      iters.push_back(r.report.iterations);
      support.push_back(numerical_support_size(r.report.x));
      out.invariants.merge(r.tally);
    }
    out.table.rows.push_back({"NHTP_r" + r_label(cell.r), std::to_string(cell.n),
                              format_real(mean(err)), time_field(spec, mean(times)),
                              format_real(mean(iters)), format_real(mean(grad)),
                              format_real(mean(support))});
  }
  return out;
}

BenchOutput run_merit_comparison(const ExperimentSpec& spec) {
  spec.validate();
  BenchOutput out;
  out.table.header = {"merit", "n", "f2_of_x", "time", "iterations"};
  const std::vector<MeritModel> models = {
      MeritModel::phi_r(2.0), MeritModel::fischer_burmeister(1e-10),
      MeritModel::min(1e-10), MeritModel::psi_ii()};

  for (const GridCell& cell : spec.grid) {
    for (const MeritModel& model : models) {
      std::vector<TrialResult> results(spec.trials);
      std::vector<double> f2(spec.trials);
      for_each_trial(spec.trials, spec.parallel, [&](int t) {
        const LcpInstance inst = make_instance(spec, cell, t);
        results[t] = run_nhtp(inst, model, cell.sparsity(), true);
        f2[t] = f2_of(inst, results[t].report.x);
      });
      std::vector<double> times, iters;
      for (int t = 0; t < spec.trials; ++t) {
        times.push_back(results[t].report.wall_time);
        iters.push_back(results[t].report.iterations);
        out.invariants.merge(results[t].tally);
        out.traces.push_back({model.name(), cell.n, t, std::move(results[t].trace)});
      }
      out.table.rows.push_back({model.name(), std::to_string(cell.n),
                                format_real(mean(f2)), time_field(spec, mean(times)),
                                format_real(mean(iters))});
    }
  }
  return out;
}

BenchOutput run_s_selection(const ExperimentSpec& spec) {
  spec.validate();
  BenchOutput out;
  out.table.header = {"method", "n", "trial", "f2", "time", "support_size", "status"};

  for (const GridCell& cell : spec.grid) {
    const MeritModel model = MeritModel::phi_r(cell.r);
    std::vector<std::vector<std::vector<std::string>>> rows(spec.trials);
    std::vector<InvariantTally> tallies(spec.trials);
    for_each_trial(spec.trials, spec.parallel, [&](int t) {
      const LcpInstance inst = make_instance(spec, cell, t);
      const int n = inst.n();
      auto& r = rows[t];

      const LemkeResult lemke = lemke_solve(inst);
      int s = cell.sparsity();
      if (lemke.status == LemkeStatus::Solved) {
        const int support = numerical_support_size(lemke.x);
        s = std::clamp(support, 1, n);
        r.push_back({"Lemke", std::to_string(n), std::to_string(t),
                     format_real(f2_of(inst, lemke.x)), time_field(spec, lemke.wall_time),
                     std::to_string(support), to_string(lemke.status)});
      } else {
        r.push_back({"Lemke", std::to_string(n), std::to_string(t), "nan",
                     time_field(spec, lemke.wall_time), "0", to_string(lemke.status)});
      }

      const TrialResult fixed = run_nhtp(inst, model, s, false);
      tallies[t] = fixed.tally;
      r.push_back({"NHTP-fixed-s", std::to_string(n), std::to_string(t),
                   format_real(f2_of(inst, fixed.report.x)),
                   time_field(spec, fixed.report.wall_time),
                   std::to_string(numerical_support_size(fixed.report.x)),
                   to_string(fixed.report.termination)});

      const auto start = std::chrono::steady_clock::now();
      const TuningReport tuned =
          nhtpt_solve(inst, model, SolverConfig::defaults_for(n, 1),
                      TuningConfig::defaults_for(n));
      const double tuned_time =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      r.push_back({"NHTPT", std::to_string(n), std::to_string(t),
                   format_real(f2_of(inst, tuned.report.x)), time_field(spec, tuned_time),
                   std::to_string(numerical_support_size(tuned.report.x)),
                   tuned.accepted ? "Accepted" : "NotAccepted"});
    });
    for (int t = 0; t < spec.trials; ++t) {
      out.invariants.merge(tallies[t]);
      for (auto& row : rows[t]) out.table.rows.push_back(std::move(row));
    }
  }
  return out;
}

BenchOutput run_experiment(const ExperimentSpec& spec) {
  BenchOutput out;
  switch (spec.experiment) {
    case Experiment::SuccessRateVsR:
    case Experiment::SuccessRateVsS: out = run_success_sweep(spec); break;
    case Experiment::ScalingTable: out = run_scaling_table(spec); break;
    case Experiment::SSelection: out = run_s_selection(spec); break;
    case Experiment::MeritComparison: out = run_merit_comparison(spec); break;
  }
  if (!spec.output_path.empty()) write_bench_output(out, spec.output_path);
  return out;
}

void write_bench_output(const BenchOutput& out, const std::string& path) {
  {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    os << out.table.to_string();
  }
  for (const Trace& tr : out.traces) {
    const std::string name = path + ".trace_" + tr.merit + "_n" + std::to_string(tr.n) +
                             "_t" + std::to_string(tr.trial) + ".txt";
    std::ofstream os(name);
    if (!os) throw std::runtime_error("cannot open '" + name + "' for writing");
    for (size_t k = 0; k < tr.f2.size(); ++k) os << k << ' ' << format_real(tr.f2[k]) << '\n';
  }
}

}  // namespace sparse_lcp
