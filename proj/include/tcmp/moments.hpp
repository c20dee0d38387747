#ifndef TCMP_MOMENTS_HPP
#define TCMP_MOMENTS_HPP

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tcmp/monomial.hpp"
#include "tcmp/polynomial.hpp"

namespace tcmp {

/// Truncated moment sequence gamma_ij = Lambda(zbar^i z^j), 0 <= i+j <= order.
///
/// Always complete and conjugate-symmetric once constructed. Positivity of
/// gamma_00 is not enforced here; it is one of the things the decision
/// pipeline reports on.
class MomentSequence {
 public:
  using Entries = std::map<std::pair<int, int>, Complex>;

  /// Builds from (i, j) -> gamma_ij. Entries may cover only i <= j; the
  /// missing half is filled by conjugation. Throws MissingMoment naming the
  /// first absent index, or AsymmetricData when both gamma_ij and gamma_ji
  /// are given and differ from conjugates by more than `symmetry_tol`
  /// (relative to 1 + |gamma_ij|).
  static MomentSequence from_entries(int order, const Entries& entries, double symmetry_tol = 1e-12);

  /// Moments of sum_s weights[s] * delta_{atoms[s]}.
  static MomentSequence from_atoms(int order, std::span<const Complex> atoms,
                                   std::span<const double> weights);

  /// Graded vector of moments (position k holds gamma of monomial_at(k)).
  static MomentSequence from_graded(int order, std::vector<Complex> values);

  int order() const noexcept { return order_; }
  Complex operator()(int i, int j) const;
  Complex at(MonomialIndex m) const { return (*this)(m.i, m.j); }
  const std::vector<Complex>& graded_values() const noexcept { return values_; }
  double max_abs() const;

 private:
  MomentSequence(int order, std::vector<Complex> values) : order_(order), values_(std::move(values)) {}

  int order_ = 0;
  std::vector<Complex> values_;
};

/// M(n): rows and columns indexed by monomials of degree <= n in graded order,
/// entry (row zbar^i z^j, column zbar^k z^l) = gamma_{j+k, i+l}.
class MomentMatrix {
 public:
  MomentMatrix(int n, Eigen::MatrixXcd entries) : n_(n), entries_(std::move(entries)) {}

  int n() const noexcept { return n_; }
  Eigen::Index side() const noexcept { return entries_.rows(); }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  Complex operator()(MonomialIndex row, MonomialIndex col) const {
    return entries_(static_cast<Eigen::Index>(row.position()), static_cast<Eigen::Index>(col.position()));
  }

  /// Block M[a, b]: rows of degree a, columns of degree b.
  Eigen::MatrixXcd block(int a, int b) const;

  /// Column labelled by the monomial m.
  Eigen::VectorXcd column(MonomialIndex m) const;

 private:
  int n_;
  Eigen::MatrixXcd entries_;
};

MomentMatrix build_moment_matrix(const MomentSequence& seq, int n);

/// Lambda(p) = sum a_ij gamma_ij. Throws DegreeOverflow if deg p > order.
Complex riesz_functional(const MomentSequence& seq, const BivarPolynomial& p);

/// p(Z, Zb) = M(n) * p-hat. Throws DegreeOverflow if deg p > n.
Eigen::VectorXcd functional_calculus_column(const MomentMatrix& M, const BivarPolynomial& p);

}  // namespace tcmp

#endif  // TCMP_MOMENTS_HPP
