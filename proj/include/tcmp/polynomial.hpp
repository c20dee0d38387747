#ifndef TCMP_POLYNOMIAL_HPP
#define TCMP_POLYNOMIAL_HPP

#include <Eigen/Dense>

#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tcmp/monomial.hpp"

namespace tcmp {

/// Complex polynomial p(z, zbar) = sum a_ij zbar^i z^j.
///
/// Coefficients whose magnitude falls to or below `kCleanup` after an
/// arithmetic operation are dropped, so roundoff never inflates the degree.
class BivarPolynomial {
 public:
  static constexpr double kCleanup = 1e-13;
  using Terms = std::map<MonomialIndex, Complex>;

  BivarPolynomial() = default;
  BivarPolynomial(std::initializer_list<std::pair<const MonomialIndex, Complex>> terms);
  explicit BivarPolynomial(Terms terms);

  static BivarPolynomial constant(Complex c);
  static BivarPolynomial monomial(MonomialIndex m, Complex c = 1.0);
  static BivarPolynomial z() { return monomial({0, 1}); }
  static BivarPolynomial zbar() { return monomial({1, 0}); }

  /// Reads a graded coefficient vector (entry k multiplies monomial_at(k)).
  static BivarPolynomial from_vector(const Eigen::VectorXcd& coeffs, double cleanup = kCleanup);

  /// Total degree; -1 for the zero polynomial.
  int degree() const noexcept;
  bool is_zero() const noexcept { return terms_.empty(); }
  const Terms& terms() const noexcept { return terms_; }
  Complex coefficient(MonomialIndex m) const;

  /// Graded coefficient vector of length monomial_count(n). Throws
  /// DegreeOverflow when degree() > n.
  Eigen::VectorXcd to_vector(int n) const;

  Complex evaluate(Complex z) const;

  /// The polynomial conj(p(z, zbar)): (i, j) -> (j, i), coefficients conjugated.
  BivarPolynomial conjugate() const;

  /// p(phi(z), conj(phi(z))) with phi(z) = a + b z + c zbar.
  BivarPolynomial compose_affine(Complex a, Complex b, Complex c) const;

  BivarPolynomial pow(int k) const;

  BivarPolynomial& operator+=(const BivarPolynomial& other);
  BivarPolynomial& operator-=(const BivarPolynomial& other);
  BivarPolynomial& operator*=(Complex s);

  friend BivarPolynomial operator+(BivarPolynomial a, const BivarPolynomial& b) { return a += b; }
  friend BivarPolynomial operator-(BivarPolynomial a, const BivarPolynomial& b) { return a -= b; }
  friend BivarPolynomial operator*(BivarPolynomial a, Complex s) { return a *= s; }
  friend BivarPolynomial operator*(Complex s, BivarPolynomial a) { return a *= s; }
  friend BivarPolynomial operator*(const BivarPolynomial& a, const BivarPolynomial& b);

  /// Max coefficient distance.
  double distance(const BivarPolynomial& other) const;

  std::string to_string() const;

 private:
  void cleanup(double threshold = kCleanup);

  Terms terms_;
};

BivarPolynomial multiply(const BivarPolynomial& p, const BivarPolynomial& q);

/// Real polynomial in one variable, coefficients in ascending powers.
class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(std::vector<double> coeffs);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  double coefficient(int k) const;
  double max_abs_coefficient() const;

  double evaluate(double x) const;

  /// Real roots from the companion matrix; a root is kept when its
  /// imaginary part is within `imag_tol * max(1, |root|)`.
  std::vector<double> real_roots(double imag_tol = 1e-6) const;

  UnivariatePolynomial& operator+=(const UnivariatePolynomial& other);
  UnivariatePolynomial& operator-=(const UnivariatePolynomial& other);
  friend UnivariatePolynomial operator+(UnivariatePolynomial a, const UnivariatePolynomial& b) {
    return a += b;
  }
  friend UnivariatePolynomial operator-(UnivariatePolynomial a, const UnivariatePolynomial& b) {
    return a -= b;
  }
  friend UnivariatePolynomial operator*(const UnivariatePolynomial& a,
                                        const UnivariatePolynomial& b);
  friend UnivariatePolynomial operator*(double s, UnivariatePolynomial a);

 private:
  void trim();

  std::vector<double> coeffs_;
};

/// Real polynomial in x and y; keys are (power of x, power of y).
class RealBivarPolynomial {
 public:
  using Terms = std::map<std::pair<int, int>, double>;

  RealBivarPolynomial() = default;
  explicit RealBivarPolynomial(Terms terms);

  const Terms& terms() const noexcept { return terms_; }
  double coefficient(int px, int py) const;
  bool is_zero() const noexcept { return terms_.empty(); }

  double evaluate(double x, double y) const;
  RealBivarPolynomial derivative_x() const;
  RealBivarPolynomial derivative_y() const;

  int degree_in_y() const;
  /// Coefficient of y^k as a polynomial in x.
  UnivariatePolynomial coefficient_in_y(int k) const;
  /// Exchanges the roles of x and y.
  RealBivarPolynomial swap_xy() const;
  double max_abs_coefficient() const;

  std::string to_string() const;

 private:
  Terms terms_;
};

/// (Re p, Im p) as polynomials in x, y after substituting z = x + iy.
std::pair<RealBivarPolynomial, RealBivarPolynomial> real_imaginary_parts(const BivarPolynomial& p);

/// Resultant of P and Q with respect to y: the determinant of their Sylvester
/// matrix, whose entries are polynomials in x, expanded in x.
///
/// If exactly one operand is constant in y the matrix degenerates to a
/// diagonal and the result is that operand raised to the other's y-degree.
/// Throws ZeroLeadingCoefficient when an operand is identically zero or when
/// neither operand involves y.
UnivariatePolynomial sylvester_resultant_y(const RealBivarPolynomial& P,
                                           const RealBivarPolynomial& Q);

/// The Sylvester matrix itself (rows of P's coefficients, then Q's), with
/// entries as polynomials in x. Exposed for testing.
std::vector<std::vector<UnivariatePolynomial>> sylvester_matrix_y(const RealBivarPolynomial& P,
                                                                  const RealBivarPolynomial& Q);

}  // namespace tcmp

#endif  // TCMP_POLYNOMIAL_HPP
