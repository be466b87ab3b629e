#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sparse_lcp/sparse_lcp.hpp"

namespace py = pybind11;
using namespace sparse_lcp;

PYBIND11_MODULE(_sparse_lcp, m) {
  m.doc() = "Sparse linear complementarity solvers";

  py::enum_<Termination>(m, "Termination")
      .value("ResidualMet", Termination::ResidualMet)
      .value("ObjectiveStalled", Termination::ObjectiveStalled)
      .value("IterationCap", Termination::IterationCap)
      .value("LineSearchFailed", Termination::LineSearchFailed);

  py::enum_<LemkeStatus>(m, "LemkeStatus")
      .value("Solved", LemkeStatus::Solved)
      .value("RayTermination", LemkeStatus::RayTermination)
      .value("PivotLimit", LemkeStatus::PivotLimit);

  py::enum_<ExampleKind>(m, "ExampleKind")
      .value("ZMatrix", ExampleKind::ZMatrix)
      .value("SdpGaussian", ExampleKind::SdpGaussian)
      .value("SdpUniform", ExampleKind::SdpUniform)
      .value("SdpUniformNoX", ExampleKind::SdpUniformNoX);

  py::class_<LcpInstance>(m, "LcpInstance")
      .def(py::init([](const MatrixXd& M, const VectorXd& q, std::optional<VectorXd> truth) {
             LcpInstance inst(M, q, std::move(truth));
             inst.validate();
             return inst;
           }),
           py::arg("M"), py::arg("q"), py::arg("ground_truth") = std::nullopt)
      .def_readonly("M", &LcpInstance::M)
      .def_readonly("q", &LcpInstance::q)
      .def_readonly("ground_truth", &LcpInstance::ground_truth)
      .def_property_readonly("n", &LcpInstance::n);

  py::class_<MeritModel>(m, "MeritModel")
      .def_static("phi_r", &MeritModel::phi_r, py::arg("r") = 2.0)
      .def_static("fischer_burmeister", &MeritModel::fischer_burmeister, py::arg("eps") = 1e-10)
      .def_static("min", &MeritModel::min, py::arg("eps") = 1e-10)
      .def_static("psi_ii", &MeritModel::psi_ii)
      .def_static("parse", &parse_merit, py::arg("name"), py::arg("r") = 2.0)
      .def_readonly("r", &MeritModel::r)
      .def_property_readonly("name", &MeritModel::name)
      .def("__repr__", [](const MeritModel& mm) { return "MeritModel(" + mm.name() + ")"; });

  py::class_<SolverConfig>(m, "SolverConfig")
      .def_static("defaults_for", &SolverConfig::defaults_for, py::arg("n"), py::arg("s"))
      .def_readwrite("s", &SolverConfig::s)
      .def_readwrite("eta", &SolverConfig::eta)
      .def_readwrite("sigma", &SolverConfig::sigma)
      .def_readwrite("beta", &SolverConfig::beta)
      .def_readwrite("tol", &SolverConfig::tol)
      .def_readwrite("obj_tol", &SolverConfig::obj_tol)
      .def_readwrite("max_iter", &SolverConfig::max_iter)
      .def_readwrite("max_backtracks", &SolverConfig::max_backtracks);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("x", &SolveReport::x)
      .def_property_readonly("support",
                             [](const SolveReport& r) { return r.support.indices(); })
      .def_readonly("objective", &SolveReport::objective)
      .def_readonly("residual", &SolveReport::residual)
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("newton_steps", &SolveReport::newton_steps)
      .def_readonly("wall_time", &SolveReport::wall_time)
      .def_readonly("termination", &SolveReport::termination);

  py::class_<TuningReport>(m, "TuningReport")
      .def_readonly("report", &TuningReport::report)
      .def_readonly("rounds", &TuningReport::rounds)
      .def_readonly("final_s", &TuningReport::final_s)
      .def_readonly("accepted", &TuningReport::accepted);

  py::class_<LemkeResult>(m, "LemkeResult")
      .def_readonly("status", &LemkeResult::status)
      .def_readonly("x", &LemkeResult::x)
      .def_readonly("pivots", &LemkeResult::pivots);

  m.def(
      "generate",
      [](ExampleKind example, int n, int s_star, std::uint64_t seed, int inner_dim) {
        return generate(GeneratorSpec{example, n, s_star, inner_dim, seed});
      },
      py::arg("example"), py::arg("n"), py::arg("s_star") = 1, py::arg("seed") = 0,
      py::arg("m") = 0);

  m.def(
      "solve",
      [](const LcpInstance& inst, const MeritModel& model, const SolverConfig& config,
         std::optional<VectorXd> x0) {
        py::gil_scoped_release release;
        return solve(inst, model, config, x0 ? *x0 : VectorXd::Zero(inst.n()));
      },
      py::arg("inst"), py::arg("model"), py::arg("config"), py::arg("x0") = std::nullopt,
      "Newton hard-thresholding pursuit at a fixed sparsity level.");

  m.def(
      "nhtpt",
      [](const LcpInstance& inst, const MeritModel& model, int s0, std::optional<double> rho,
         double eps) {
        TuningConfig t = TuningConfig::defaults_for(inst.n());
        if (s0 > 0) t.s0 = s0;
        if (rho) t.rho = *rho;
        t.eps = eps;
        py::gil_scoped_release release;
        return nhtpt_solve(inst, model, SolverConfig::defaults_for(inst.n(), 1), t);
      },
      py::arg("inst"), py::arg("model"), py::arg("s0") = 0, py::arg("rho") = std::nullopt,
      py::arg("eps") = 1e-8, "Solve over a growing sparsity schedule.");

  m.def(
      "lemke",
      [](const LcpInstance& inst) {
        py::gil_scoped_release release;
        return lemke_solve(inst);
      },
      py::arg("inst"));

  m.def("lemke_seeded_s", [](const LcpInstance& inst) { return lemke_seeded_s(inst); },
        py::arg("inst"));

  m.def(
      "merit_value",
      [](const MeritModel& model, const LcpInstance& inst, const VectorXd& x) {
        return merit_value(model, inst, x).value;
      },
      py::arg("model"), py::arg("inst"), py::arg("x"));
  m.def("merit_gradient", &merit_gradient, py::arg("model"), py::arg("inst"), py::arg("x"));
  m.def("phi_r", &phi_r_scalar, py::arg("a"), py::arg("b"), py::arg("r"));
  m.def("is_success", &is_success, py::arg("x"), py::arg("x_star"));
  m.def("support_size", &numerical_support_size, py::arg("x"));
  m.def("read_instance", &read_instance_file, py::arg("path"));
  m.def("write_instance", &write_instance_file, py::arg("path"), py::arg("inst"));
}
