// sparse-lcp: generate, solve and benchmark sparse linear complementarity
// problems from the command line.
//
//   sparse-lcp gen --example sdp-gaussian --n 500 --sstar 5 --seed 7 --out a.lcp
//   sparse-lcp solve --instance a.lcp --s 5
//   sparse-lcp tune --instance a.lcp
//   sparse-lcp lemke --instance a.lcp
//   sparse-lcp bench --experiment success-vs-r --grid "n=200,sstar=2,r=2" --out r.csv
//
// Exit status: 0 on solver success, 2 when the solver fails (ray termination,
// line-search failure, iteration cap, no accepted sparsity level), 1 on usage
// or input errors.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "sparse_lcp/sparse_lcp.hpp"

using namespace sparse_lcp;

namespace {

enum class LogLevel { Off, Info, Trace };

LogLevel log_level() {
  const char* v = std::getenv("SPARSE_LCP_LOG");
  if (!v) return LogLevel::Off;
  const std::string s(v);
  if (s == "info") return LogLevel::Info;
  if (s == "trace") return LogLevel::Trace;
  return LogLevel::Off;
}

IterationObserver make_logger(LogLevel level) {
  if (level != LogLevel::Trace) return {};
  return [](const IterationInfo& info) {
    std::fprintf(stderr, "iter %4d  f %.6e  res %.3e  alpha %.3g  bt %d  %s\n", info.k + 1,
                 info.f, info.residual, info.alpha, info.backtracks,
                 info.newton ? "newton" : "gradient");
  };
}

void write_solution(const std::string& path, const VectorXd& x) {
  if (path.empty()) {
    write_vector(std::cout, x);
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_vector(os, x);
}

void print_report(const SolveReport& r) {
  std::cerr << "termination " << to_string(r.termination) << "\n"
            << "objective " << format_real(r.objective) << "\n"
            << "residual " << format_real(r.residual) << "\n"
            << "iterations " << r.iterations << "\n"
            << "newton_steps " << r.newton_steps << "\n"
            << "support " << r.support.to_string() << "\n"
            << "nnz " << numerical_support_size(r.x) << "\n"
            << "time " << format_real(r.wall_time) << "\n";
}

int exit_code(Termination t) {
  return t == Termination::ResidualMet || t == Termination::ObjectiveStalled ? 0 : 2;
}

struct SolveFlags {
  std::string instance;
  std::string merit = "phi";
  double r = 2.0;
  int s = 0;
  double eta = 0.0;
  double sigma = 1e-4;
  double beta = 0.5;
  double tol = 1e-6;
  int maxiter = 2000;
  std::string x0;
  bool warm_start_lemke = false;
  std::string out;
};

void add_solver_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--instance", f.instance, "instance file")->required();
  cmd->add_option("--merit", f.merit, "phi, fb, min or psi2");
  cmd->add_option("--r", f.r, "exponent of the phi merit (>= 2)");
  cmd->add_option("--eta", f.eta, "thresholding step (default 5 for n <= 1000, else 1)");
  cmd->add_option("--sigma", f.sigma, "Armijo constant");
  cmd->add_option("--beta", f.beta, "backtracking factor");
  cmd->add_option("--tol", f.tol, "stationarity tolerance");
  cmd->add_option("--maxiter", f.maxiter, "iteration cap");
  cmd->add_option("--out", f.out, "solution file (default stdout)");
}

SolverConfig make_config(const SolveFlags& f, int n, int s) {
  SolverConfig c = SolverConfig::defaults_for(n, s);
  if (f.eta > 0.0) c.eta = f.eta;
  c.sigma = f.sigma;
  c.beta = f.beta;
  c.tol = f.tol;
  c.max_iter = f.maxiter;
  c.validate(n);
  return c;
}

int run_solve(const SolveFlags& f) {
  const LcpInstance inst = read_instance_file(f.instance);
  const int n = inst.n();
  const MeritModel model = parse_merit(f.merit, f.r);
  int s = f.s;
  VectorXd x0 = VectorXd::Zero(n);
  if (f.warm_start_lemke) {
    const LemkeResult lem = lemke_solve(inst);
    if (lem.status != LemkeStatus::Solved) {
      std::cerr << "lemke warm start failed: " << to_string(lem.status) << "\n";
      return 2;
    }
    x0 = lem.x;
    if (s == 0) s = std::max(1, numerical_support_size(lem.x));
  }
  if (!f.x0.empty()) {
    x0 = read_vector_file(f.x0);
    if (x0.size() != n) throw std::runtime_error("x0 has the wrong length");
  }
  if (s == 0) throw CLI::ValidationError("--s", "required unless --warm-start-lemke is given");
  const SolverConfig config = make_config(f, n, s);
  const SolveReport r = solve(inst, model, config, x0, make_logger(log_level()));
  print_report(r);
  write_solution(f.out, r.x);
  return exit_code(r.termination);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse linear complementarity solver"};
  app.require_subcommand(1);

  GeneratorSpec gen;
  std::string gen_example = "sdp-gaussian";
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "write a generated instance");
  gen_cmd->add_option("--example", gen_example, "z, sdp-gaussian, sdp-uniform, sdp-nox (or 1-4)");
  gen_cmd->add_option("--n", gen.n, "dimension");
  gen_cmd->add_option("--m", gen.m, "inner dimension of Z (default n/2, n/4 for sdp-nox)");
  gen_cmd->add_option("--sstar", gen.s_star, "planted sparsity");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--out", gen_out, "output file (default stdout)");

  SolveFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "run NHTP at a fixed sparsity level");
  add_solver_flags(solve_cmd, solve_flags);
  solve_cmd->add_option("--s", solve_flags.s, "sparsity level");
  solve_cmd->add_option("--x0", solve_flags.x0, "starting point file");
  solve_cmd->add_flag("--warm-start-lemke", solve_flags.warm_start_lemke,
                      "start from the Lemke solution; its support size sets s when --s is absent");

  SolveFlags tune_flags;
  TuningConfig tuning;
  bool tune_s0 = false, tune_rho = false;
  auto* tune_cmd = app.add_subcommand("tune", "run NHTP over a growing sparsity schedule");
  add_solver_flags(tune_cmd, tune_flags);
  tune_cmd->add_option("--s0", tuning.s0, "initial sparsity level")->each([&](const std::string&) { tune_s0 = true; });
  tune_cmd->add_option("--rho", tuning.rho, "growth factor")->each([&](const std::string&) { tune_rho = true; });
  tune_cmd->add_option("--eps", tuning.eps, "acceptance threshold on the merit value");

  std::string lemke_instance, lemke_out;
  auto* lemke_cmd = app.add_subcommand("lemke", "solve with Lemke's method");
  lemke_cmd->add_option("--instance", lemke_instance, "instance file")->required();
  lemke_cmd->add_option("--out", lemke_out, "solution file (default stdout)");

  ExperimentSpec bench;
  std::string bench_experiment, bench_grid, bench_example = "sdp-gaussian";
  bool no_timing = false;
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark experiment");
  bench_cmd->add_option("--experiment", bench_experiment,
                        "success-vs-r, success-vs-s, scaling, s-selection, merit-comparison")
      ->required();
  bench_cmd->add_option("--grid", bench_grid, "cells like \"n=200,sstar=2,r=2;n=200,sstar=4\"")
      ->required();
  bench_cmd->add_option("--example", bench_example, "instance family");
  bench_cmd->add_option("--trials", bench.trials, "trials per cell");
  bench_cmd->add_option("--seed", bench.base_seed, "base seed; trial t uses seed + t");
  bench_cmd->add_option("--out", bench.output_path, "CSV file (default stdout)");
  bench_cmd->add_option("--parallel", bench.parallel, "worker threads");
  bench_cmd->add_flag("--no-timing", no_timing, "write 0 in time columns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*gen_cmd) {
      gen.example = parse_example(gen_example);
      const LcpInstance inst = generate(gen);
      if (gen_out.empty()) {
        write_instance(std::cout, inst);
      } else {
        write_instance_file(gen_out, inst);
      }
      return 0;
    }
    if (*solve_cmd) return run_solve(solve_flags);
    if (*tune_cmd) {
      const LcpInstance inst = read_instance_file(tune_flags.instance);
      const int n = inst.n();
      const TuningConfig defaults = TuningConfig::defaults_for(n);
      if (!tune_s0) tuning.s0 = defaults.s0;
      if (!tune_rho) tuning.rho = defaults.rho;
      const SolverConfig config = make_config(tune_flags, n, 1);
      const TuningReport t = nhtpt_solve(inst, parse_merit(tune_flags.merit, tune_flags.r),
                                         config, tuning, make_logger(log_level()));
      print_report(t.report);
      std::cerr << "rounds " << t.rounds << "\nfinal_s " << t.final_s << "\naccepted "
                << (t.accepted ? "yes" : "no") << "\n";
      write_solution(tune_flags.out, t.report.x);
      return t.accepted ? 0 : 2;
    }
    if (*lemke_cmd) {
      const LcpInstance inst = read_instance_file(lemke_instance);
      const LemkeResult r = lemke_solve(inst);
      std::cerr << "status " << to_string(r.status) << "\npivots " << r.pivots << "\ntime "
                << format_real(r.wall_time) << "\n";
      if (r.status != LemkeStatus::Solved) return 2;
      std::cerr << "f2 " << format_real(merit_value(MeritModel::phi_r(2.0), inst, r.x).value)
                << "\nnnz " << numerical_support_size(r.x) << "\n";
      write_solution(lemke_out, r.x);
      return 0;
    }
    if (*bench_cmd) {
      bench.experiment = parse_experiment(bench_experiment);
      bench.example = parse_example(bench_example);
      bench.grid = parse_grid(bench_grid);
      bench.record_timing = !no_timing;
      const BenchOutput out = run_experiment(bench);
      if (bench.output_path.empty()) std::cout << out.table.to_string();
      const InvariantTally& inv = out.invariants;
      std::cerr << "iterations checked " << inv.iterations << ", descent violations "
                << inv.descent_violations << ", sparsity violations "
                << inv.sparsity_violations << ", support violations "
                << inv.support_violations << "\n";
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
