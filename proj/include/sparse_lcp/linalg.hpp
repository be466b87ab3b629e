#pragma once

#include "sparse_lcp/types.hpp"

namespace sparse_lcp {

/// Solves A d = b by LU factorization with partial pivoting followed by one
/// step of iterative refinement. Throws SingularError when a pivot magnitude
/// drops below 1e-12 * ||A||_inf.
VectorXd dense_solve(const MatrixXd& A, const VectorXd& b);

/// The s indices of largest |z_i|, ties resolved toward the smaller index.
/// Result sorted ascending with capacity s.
IndexSet top_s_by_magnitude(const VectorXd& z, int s);

/// y = M x + q, touching only the columns where x is nonzero.
VectorXd affine_map(const LcpInstance& inst, const VectorXd& x);

/// Gathers the (rows, cols) block of A.
MatrixXd gather(const MatrixXd& A, const std::vector<int>& rows,
                const std::vector<int>& cols);

/// Gathers v at the given indices.
VectorXd gather(const VectorXd& v, const std::vector<int>& idx);

}  // namespace sparse_lcp
