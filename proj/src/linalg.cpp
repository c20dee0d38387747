#include "tcmp/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "tcmp/error.hpp"

namespace tcmp {

namespace {

double spectral_norm(const Eigen::MatrixXcd& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  return svd.singularValues()(0);
}

// Gives the first entry above `floor` a zero phase.
void fix_phase(Eigen::Ref<Eigen::VectorXcd> v, double floor) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v[k]) > floor) {
      v *= std::conj(v[k]) / std::abs(v[k]);
      return;
    }
  }
}

}  // namespace

double relative_asymmetry(const Eigen::MatrixXcd& M) {
  const double norm = M.norm();
  if (norm == 0.0) return 0.0;
  return (M - M.adjoint()).norm() / norm;
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& M) {
  const Eigen::MatrixXcd H = 0.5 * (M + M.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

bool is_psd(const Eigen::MatrixXcd& M, double tol) {
  if (M.rows() != M.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  if (relative_asymmetry(M) > tol) throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian");
  if (M.size() == 0) return true;
  const Eigen::VectorXd eig = hermitian_eigenvalues(M);
  const double scale = std::max(std::abs(eig(0)), std::abs(eig(eig.size() - 1)));
  return eig(0) >= -tol * scale;
}

bool is_positive_definite(const Eigen::MatrixXcd& M, double tol) {
  if (M.rows() != M.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  if (relative_asymmetry(M) > tol) throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian");
  if (M.size() == 0) return true;
  const Eigen::VectorXd eig = hermitian_eigenvalues(M);
  const double scale = std::max(std::abs(eig(0)), std::abs(eig(eig.size() - 1)));
  return scale > 0.0 && eig(0) > tol * scale;
}

RankReport numerical_rank(const Eigen::MatrixXcd& M, double tol) {
  RankReport report;
  report.tolerance_used = tol;
  const Eigen::Index cols = M.cols();
  if (M.size() == 0) {
    report.kernel_basis = Eigen::MatrixXcd::Identity(cols, cols);
    return report;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  report.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
  report.singular_values.resize(static_cast<std::size_t>(cols), 0.0);
  const double threshold = tol * sigma(0);
  for (Eigen::Index k = 0; k < sigma.size(); ++k)
    if (sigma(k) > threshold) ++report.rank;

  // V's trailing columns span the kernel; take them smallest singular value first.
  const Eigen::Index nullity = cols - report.rank;
  Eigen::MatrixXcd kernel(cols, nullity);
  for (Eigen::Index k = 0; k < nullity; ++k) kernel.col(k) = svd.matrixV().col(cols - 1 - k);
  if (nullity > 0) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(kernel);
    const Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(cols, nullity);
    // Householder QR keeps the column span nested, so column k still lies
    // along the k-th singular vector up to phase.
    kernel = Q;
    for (Eigen::Index k = 0; k < nullity; ++k) fix_phase(kernel.col(k), 1e-12);
  }
  report.kernel_basis = std::move(kernel);
  return report;
}

std::vector<Complex> leading_principal_minors(const Eigen::MatrixXcd& M) {
  std::vector<Complex> minors;
  for (Eigen::Index k = 1; k <= std::min(M.rows(), M.cols()); ++k)
    minors.push_back(M.topLeftCorner(k, k).determinant());
  return minors;
}

SmuljanResult smuljan_test(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                           const Eigen::MatrixXcd& C, double tol) {
  if (A.rows() != A.cols() || C.rows() != C.cols() || B.rows() != A.rows() || B.cols() != C.rows())
    throw Error(ErrorCode::DimensionMismatch, "blocks do not form a square block matrix");
  SmuljanResult result;
  const bool a_psd = is_psd(A, tol);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double a_norm = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  svd.setThreshold(tol);
  const Eigen::MatrixXcd W = svd.solve(B);
  const double residual = (A * W - B).norm();
  if (residual > tol * (a_norm * W.norm() + B.norm())) return result;
  result.W = W;

  Eigen::MatrixXcd D = C - W.adjoint() * A * W;
  D = 0.5 * (D + D.adjoint());
  const double scale = std::max({spectral_norm(C), a_norm, 1e-300});
  const Eigen::VectorXd eig = hermitian_eigenvalues(D);
  const bool schur_psd = eig.size() == 0 || eig(0) >= -tol * scale;
  result.psd = a_psd && schur_psd;
  result.flat = result.psd && D.norm() <= tol * scale;
  return result;
}

bool is_column_relation(const MomentMatrix& M, const BivarPolynomial& p, double tol) {
  const Eigen::VectorXcd coeffs = p.to_vector(M.n());
  const double bound = tol * spectral_norm(M.entries()) * coeffs.norm();
  return (M.entries() * coeffs).norm() <= bound;
}

bool is_recursively_generated(const MomentMatrix& M, std::span<const BivarPolynomial> relations,
                              double tol) {
  for (const auto& p : relations) {
    if (p.degree() > M.n() || !is_column_relation(M, p, tol))
      throw Error(ErrorCode::NotARelation, "p = " + p.to_string() + " is not in the kernel");
  }
  for (const auto& p : relations) {
    for (const auto& rel : {p, p.conjugate()}) {
      for (const auto& q : graded_monomials(M.n() - rel.degree())) {
        if (q.degree() == 0) continue;
        if (!is_column_relation(M, rel * BivarPolynomial::monomial(q), tol)) return false;
      }
    }
  }
  return true;
}

}  // namespace tcmp
