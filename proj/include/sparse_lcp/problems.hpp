#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparse_lcp/types.hpp"

namespace sparse_lcp {

/// Reproducible random stream used by every generator.
///
/// Pipeline, fixed so that other implementations can reproduce instances bit
/// for bit:
///   * raw 64-bit words come from SplitMix64 seeded with GeneratorSpec::seed;
///   * uniform(): (word >> 11) * 2^-53, a double in [0, 1);
///   * normal(): Box-Muller on two consecutive uniforms u1, u2 with
///     r = sqrt(-2 ln(1 - u1)); returns r cos(2 pi u2) and caches
///     r sin(2 pi u2) for the next call;
///   * permutation(n): Fisher-Yates, for i = n-1 down to 1 swap i with
///     j = floor(uniform() * (i + 1)).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double uniform();
  double normal();
  std::vector<int> permutation(int n);

 private:
  std::uint64_t state_;
  std::optional<double> spare_normal_;
};

enum class ExampleKind { ZMatrix, SdpGaussian, SdpUniform, SdpUniformNoX };

std::string to_string(ExampleKind k);

/// Accepts "z", "sdp-gaussian", "sdp-uniform", "sdp-nox" or the numbers
/// "1".."4".
ExampleKind parse_example(const std::string& name);

struct GeneratorSpec {
  ExampleKind example = ExampleKind::SdpGaussian;
  int n = 100;
  int s_star = 1;
  int m = 0;  // 0 selects the example default: n/2, or n/4 for SdpUniformNoX
  std::uint64_t seed = 0;

  int inner_dim() const;
  void validate() const;
};

/// M = I - ee^T/n, q = e/n - e_1, unique sparse solution e_1.
LcpInstance gen_z_matrix(int n);

/// M = ZZ^T with Gaussian (SdpGaussian) or uniform [0,1) (SdpUniform) Z and a
/// planted s_star-sparse solution with entries 0.1 + |N(0,1)|.
///
/// Draw order: Z column by column, then the support permutation, then the
/// s_star magnitudes (placed at perm[0], perm[1], ...), then (uniform case)
/// one off-support q entry per index in ascending order. M(i,j) sums
/// Z(i,k) Z(j,k) over ascending k; (Mx*)_i sums M(i,j) x*_j over ascending j.
LcpInstance gen_sdp(const GeneratorSpec& spec);

/// M = ZZ^T with uniform Z (default m = n/4), q_i = -u on a random s_star-set
/// and +u elsewhere. No ground truth.
LcpInstance gen_sdp_nox(const GeneratorSpec& spec);

/// Dispatches on spec.example.
LcpInstance generate(const GeneratorSpec& spec);

bool is_z_matrix(const MatrixXd& M);

/// Smallest eigenvalue of the symmetric part is >= -tol.
bool is_psd(const MatrixXd& M, double tol = 1e-10);

/// Every principal minor of order <= s exceeds tol. Enumerates subsets, so
/// n > 20 throws CombinatorialLimit.
bool is_ps_matrix(const MatrixXd& M, int s, double tol = 1e-12);

/// ||x - x*|| < 0.01 ||x*||. Throws std::invalid_argument when x* = 0.
bool is_success(const VectorXd& x, const VectorXd& x_star);

}  // namespace sparse_lcp
