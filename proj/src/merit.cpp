#include "sparse_lcp/merit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sparse_lcp/linalg.hpp"

namespace sparse_lcp {

namespace {

// v^p for v > 0, zero otherwise. Small integer exponents stay exact.
inline double pos_pow(double v, double p) {
  if (v <= 0.0) return 0.0;
  if (p == 1.0) return v;
  if (p == 2.0) return v * v;
  if (p == 3.0) return v * v * v;
  if (p == 4.0) return (v * v) * (v * v);
  return std::exp(p * std::log(v));
}

struct PairGrad {
  double da;
  double db;
};

struct PairCurv {
  double aa;
  double ab;
  double bb;
};

double pair_value(const MeritModel& m, double a, double b) {
  switch (m.kind) {
    case MeritKind::PhiR:
      return phi_r_scalar(a, b, m.r);
    case MeritKind::FischerBurmeister: {
      const double phi = std::sqrt(a * a + b * b + m.smoothing_eps) - a - b;
      return 0.5 * phi * phi;
    }
    case MeritKind::Min: {
      const double d = a - b;
      const double phi = a + b - std::sqrt(d * d + m.smoothing_eps);
      return 0.5 * phi * phi;
    }
    case MeritKind::PsiII: {
      const double p = std::max(a * b, 0.0);
      const double an = std::min(a, 0.0);
      const double bn = std::min(b, 0.0);
      return 0.5 * (p * p + an * an + bn * bn);
    }
  }
  return 0.0;
}

PairGrad pair_grad(const MeritModel& m, double a, double b) {
  switch (m.kind) {
    case MeritKind::PhiR: {
      auto [da, db] = phi_r_grad_scalar(a, b, m.r);
      return {da, db};
    }
    case MeritKind::FischerBurmeister: {
      const double rho = std::sqrt(a * a + b * b + m.smoothing_eps);
      const double phi = rho - a - b;
      if (rho == 0.0) return {0.0, 0.0};
      return {phi * (a / rho - 1.0), phi * (b / rho - 1.0)};
    }
    case MeritKind::Min: {
      const double d = a - b;
      const double rho = std::sqrt(d * d + m.smoothing_eps);
      const double phi = a + b - rho;
      const double t = rho == 0.0 ? 0.0 : d / rho;
      return {phi * (1.0 - t), phi * (1.0 + t)};
    }
    case MeritKind::PsiII: {
      const double p = std::max(a * b, 0.0);
      return {p * b + std::min(a, 0.0), p * a + std::min(b, 0.0)};
    }
  }
  return {0.0, 0.0};
}

PairCurv pair_curv(const MeritModel& m, double a, double b) {
  switch (m.kind) {
    case MeritKind::PhiR: {
      const double r = m.r;
      const double ap = std::max(a, 0.0), an = std::max(-a, 0.0);
      const double bp = std::max(b, 0.0), bn = std::max(-b, 0.0);
      if (r == 2.0) {
        // Generalized Hessian element: curvature 1 on the kink a = 0 (b = 0).
        return {a > 0.0 ? bp * bp : 1.0, 2.0 * ap * bp, b > 0.0 ? ap * ap : 1.0};
      }
      return {(r - 1.0) * (pos_pow(ap, r - 2.0) * pos_pow(bp, r) + pos_pow(an, r - 2.0)),
              r * pos_pow(ap, r - 1.0) * pos_pow(bp, r - 1.0),
              (r - 1.0) * (pos_pow(ap, r) * pos_pow(bp, r - 2.0) + pos_pow(bn, r - 2.0))};
    }
    case MeritKind::FischerBurmeister: {
      const double rho = std::sqrt(a * a + b * b + m.smoothing_eps);
      if (rho == 0.0) return {1.0, 1.0, 1.0};
      const double phi = rho - a - b;
      const double fa = a / rho - 1.0, fb = b / rho - 1.0;
      const double rho3 = rho * rho * rho;
      return {fa * fa + phi * (b * b + m.smoothing_eps) / rho3,
              fa * fb - phi * a * b / rho3,
              fb * fb + phi * (a * a + m.smoothing_eps) / rho3};
    }
    case MeritKind::Min: {
      const double d = a - b;
      const double rho = std::sqrt(d * d + m.smoothing_eps);
      if (rho == 0.0) return {1.0, 1.0, 1.0};
      const double phi = a + b - rho;
      const double t = d / rho;
      const double fa = 1.0 - t, fb = 1.0 + t;
      const double k = m.smoothing_eps / (rho * rho * rho);
      return {fa * fa - phi * k, fa * fb + phi * k, fb * fb - phi * k};
    }
    case MeritKind::PsiII: {
      PairCurv c{0.0, 0.0, 0.0};
      if (a * b > 0.0) c = {b * b, 2.0 * a * b, a * a};
      if (a <= 0.0) c.aa += 1.0;
      if (b <= 0.0) c.bb += 1.0;
      return c;
    }
  }
  return {0.0, 0.0, 0.0};
}

}  // namespace

MeritModel MeritModel::phi_r(double r) {
  MeritModel m{MeritKind::PhiR, r, 0.0};
  m.validate();
  return m;
}

MeritModel MeritModel::fischer_burmeister(double eps) {
  MeritModel m{MeritKind::FischerBurmeister, 2.0, eps};
  m.validate();
  return m;
}

MeritModel MeritModel::min(double eps) {
  MeritModel m{MeritKind::Min, 2.0, eps};
  m.validate();
  return m;
}

MeritModel MeritModel::psi_ii() { return {MeritKind::PsiII, 2.0, 0.0}; }

void MeritModel::validate() const {
  if (kind == MeritKind::PhiR && !(r >= 2.0)) {
    throw std::invalid_argument("MeritModel: phi_r requires r >= 2");
  }
  if (!(smoothing_eps >= 0.0)) {
    throw std::invalid_argument("MeritModel: smoothing constant must be >= 0");
  }
}

std::string MeritModel::name() const {
  switch (kind) {
    case MeritKind::PhiR: {
      std::ostringstream os;
      os << "phi" << r;
      return os.str();
    }
    case MeritKind::FischerBurmeister: return "fb";
    case MeritKind::Min: return "min";
    case MeritKind::PsiII: return "psi2";
  }
  return "unknown";
}

MeritModel parse_merit(const std::string& name, double r) {
  if (name == "phi" || name == "phir" || name == "phi_r") return MeritModel::phi_r(r);
  if (name == "fb") return MeritModel::fischer_burmeister();
  if (name == "min") return MeritModel::min();
  if (name == "psi2" || name == "psiii" || name == "psi_ii") return MeritModel::psi_ii();
  throw std::invalid_argument("unknown merit '" + name +
                              "' (expected phi, fb, min or psi2)");
}

double phi_r_scalar(double a, double b, double r) {
  const double ap = std::max(a, 0.0), an = std::max(-a, 0.0);
  const double bp = std::max(b, 0.0), bn = std::max(-b, 0.0);
  return (pos_pow(ap, r) * pos_pow(bp, r) + pos_pow(an, r) + pos_pow(bn, r)) / r;
}

std::pair<double, double> phi_r_grad_scalar(double a, double b, double r) {
  const double ap = std::max(a, 0.0), an = std::max(-a, 0.0);
  const double bp = std::max(b, 0.0), bn = std::max(-b, 0.0);
  return {pos_pow(ap, r - 1.0) * pos_pow(bp, r) - pos_pow(an, r - 1.0),
          pos_pow(ap, r) * pos_pow(bp, r - 1.0) - pos_pow(bn, r - 1.0)};
}

double merit_value_at(const MeritModel& model, const VectorXd& x,
                      const VectorXd& y) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) total += pair_value(model, x(i), y(i));
  return total;
}

MeritEval merit_value(const MeritModel& model, const LcpInstance& inst,
                      const VectorXd& x) {
  MeritEval e;
  e.y = affine_map(inst, x);
  e.value = merit_value_at(model, x, e.y);
  return e;
}

VectorXd merit_gradient_at(const MeritModel& model, const LcpInstance& inst,
                           const VectorXd& x, const VectorXd& y) {
  const Eigen::Index n = x.size();
  VectorXd ga(n), gb(n);
  Eigen::Index nnz = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const PairGrad g = pair_grad(model, x(i), y(i));
    ga(i) = g.da;
    gb(i) = g.db;
    if (g.db != 0.0) ++nnz;
  }
  if (nnz * 8 < n) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (gb(k) != 0.0) ga.noalias() += gb(k) * inst.M.row(k).transpose();
    }
  } else {
    ga.noalias() += inst.M.transpose() * gb;
  }
  return ga;
}

VectorXd merit_gradient(const MeritModel& model, const LcpInstance& inst,
                        const VectorXd& x) {
  return merit_gradient_at(model, inst, x, affine_map(inst, x));
}

MeritEval merit_evaluate(const MeritModel& model, const LcpInstance& inst,
                         const VectorXd& x) {
  MeritEval e = merit_value(model, inst, x);
  e.gradient = merit_gradient_at(model, inst, x, e.y);
  return e;
}

MatrixXd merit_hessian_at(const MeritModel& model, const LcpInstance& inst,
                          const VectorXd& x, const VectorXd& y,
                          const std::vector<int>& rows,
                          const std::vector<int>& cols) {
  const Eigen::Index n = x.size();
  const MatrixXd& M = inst.M;
  VectorXd caa(n), cab(n), cbb(n);
  std::vector<int> active;
  for (Eigen::Index k = 0; k < n; ++k) {
    const PairCurv c = pair_curv(model, x(k), y(k));
    caa(k) = c.aa;
    cab(k) = c.ab;
    cbb(k) = c.bb;
    if (c.bb != 0.0) active.push_back(static_cast<int>(k));
  }

  // M^T Diag(bb) M restricted to (rows, cols), summing only over active k.
  const MatrixXd left = gather(M, active, rows);
  const MatrixXd right = gather(M, active, cols);
  const VectorXd weights = gather(cbb, active);
  MatrixXd H = left.transpose() * (weights.asDiagonal() * right);

  for (size_t i = 0; i < rows.size(); ++i) {
    const int ri = rows[i];
    for (size_t j = 0; j < cols.size(); ++j) {
      const int cj = cols[j];
      H(i, j) += cab(ri) * M(ri, cj) + M(cj, ri) * cab(cj);
      if (ri == cj) H(i, j) += caa(ri);
    }
  }
  return H;
}

MatrixXd merit_hessian(const MeritModel& model, const LcpInstance& inst,
                       const VectorXd& x, const IndexSet& rows,
                       const IndexSet& cols) {
  return merit_hessian_at(model, inst, x, affine_map(inst, x), rows.indices(),
                          cols.indices());
}

}  // namespace sparse_lcp
