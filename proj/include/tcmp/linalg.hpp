#ifndef TCMP_LINALG_HPP
#define TCMP_LINALG_HPP

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

#include "tcmp/moments.hpp"
#include "tcmp/polynomial.hpp"

namespace tcmp {

/// Relative threshold (against the largest singular value or eigenvalue
/// magnitude) below which a value counts as zero.
inline constexpr double kDefaultRankTol = 1e-10;

struct RankReport {
  int rank = 0;
  std::vector<double> singular_values;  // descending
  double tolerance_used = kDefaultRankTol;
  /// Orthonormal kernel basis, one vector per column, ordered by ascending
  /// singular value. Each vector's first non-negligible entry is real positive.
  Eigen::MatrixXcd kernel_basis;

  Eigen::Index kernel_dimension() const noexcept { return kernel_basis.cols(); }
};

/// Frobenius norm of M - M*, relative to the Frobenius norm of M.
double relative_asymmetry(const Eigen::MatrixXcd& M);

/// Eigenvalues of (M + M*)/2, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& M);

/// True iff the smallest eigenvalue of the symmetrized matrix is at least
/// -tol * max|eigenvalue|. Throws NotHermitian when the relative asymmetry
/// exceeds tol.
bool is_psd(const Eigen::MatrixXcd& M, double tol = kDefaultRankTol);

/// Strict version: smallest eigenvalue > tol * max|eigenvalue|.
bool is_positive_definite(const Eigen::MatrixXcd& M, double tol = kDefaultRankTol);

/// Rank counts singular values > tol * sigma_max.
RankReport numerical_rank(const Eigen::MatrixXcd& M, double tol = kDefaultRankTol);

/// Determinants of the leading principal submatrices. Only a cross-check for
/// positivity: it is numerically fragile and is not used for decisions.
std::vector<Complex> leading_principal_minors(const Eigen::MatrixXcd& M);

struct SmuljanResult {
  bool psd = false;
  bool flat = false;
  std::optional<Eigen::MatrixXcd> W;  // set when B = A W is solvable
};

/// Positivity and flatness of [A B; B* C] from its blocks: psd iff A >= 0,
/// B = A W for some W, and C - W* A W >= 0; flat iff in addition
/// C = W* A W. Throws DimensionMismatch for non-conformable blocks.
SmuljanResult smuljan_test(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                           const Eigen::MatrixXcd& C, double tol = kDefaultRankTol);

/// True iff every relation p (and its conjugate) stays in the kernel after
/// multiplication by each monomial q with deg(pq) <= n. Throws NotARelation
/// when a supplied p is not itself in the kernel.
bool is_recursively_generated(const MomentMatrix& M, std::span<const BivarPolynomial> relations,
                              double tol = kDefaultRankTol);

/// Whether p-hat is (numerically) in the kernel of M: ||M p|| <= tol ||M|| ||p||.
bool is_column_relation(const MomentMatrix& M, const BivarPolynomial& p, double tol = kDefaultRankTol);

}  // namespace tcmp

#endif  // TCMP_LINALG_HPP
