#ifndef TCMP_VARIETY_HPP
#define TCMP_VARIETY_HPP

#include <span>
#include <utility>
#include <vector>

#include "tcmp/monomial.hpp"
#include "tcmp/polynomial.hpp"

namespace tcmp {

/// Two points closer than this are the same point.
inline constexpr double kDedupRadius = 1e-8;

/// Parameters of q7(z, zbar) = z^3 - i t z - u zbar inside the open cone
/// 0 < |u| < t < 2|u|.
///
/// For u > 0 the zero set is {0, +-(p + iq), +-(q + ip), +-r(1 + i)} with
/// p^2 + q^2 = u, 4pq = t, r^2 = (t - u)/2 and p > q > 0. For u < 0 only the
/// bisector points survive: the quartic factor of the resultant has no real
/// roots there, so p = q = 0 marks the missing off-bisector pairs.
struct ConeParams {
  double u = 0.0;
  double t = 0.0;
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;

  bool has_off_bisector_points() const noexcept { return u > 0.0; }
};

bool in_open_cone(double u, double t) noexcept;

/// Throws OutsideCone unless 0 < |u| < t < 2|u| holds strictly.
ConeParams cone_params(double u, double t);

/// z^3 - i t z - u zbar.
BivarPolynomial q7_polynomial(double u, double t);

/// The line-circle relation zbar^2 z + i zbar z^2 - u zbar - i u z,
/// i.e. i (z - i zbar)(zbar z - u).
BivarPolynomial hidden_relation(double u);
inline BivarPolynomial hidden_relation(const ConeParams& params) { return hidden_relation(params.u); }

/// A finite set of distinct points in the plane.
class VarietySet {
 public:
  VarietySet() = default;
  /// Merges points closer than kDedupRadius; keeps first occurrences in order.
  explicit VarietySet(std::vector<Complex> points);

  const std::vector<Complex>& points() const& noexcept { return points_; }
  std::vector<Complex> points() && noexcept { return std::move(points_); }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  bool contains(Complex z, double radius = kDedupRadius) const;

  /// Largest distance from a point of either set to the nearest point of the
  /// other (Hausdorff distance); infinity when exactly one set is empty.
  double distance(const VarietySet& other) const;

  /// Sorted copy (by real part, then imaginary part) for stable output.
  VarietySet sorted() const;

 private:
  std::vector<Complex> points_;
};

/// Closed-form zero set of q7, in the order 0, p+iq, -(p+iq), q+ip, -(q+ip),
/// r(1+i), -r(1+i).
VarietySet variety_q7(const ConeParams& params);

/// Common zeros of all relations, computed numerically.
///
/// The first relation whose real and imaginary parts have non-vanishing
/// resultants seeds the search: real roots of Res_y give x candidates, real
/// roots of Res_x give y candidates, and every pairing is polished by Newton
/// iteration on (Re p, Im p). Survivors must satisfy every relation to 1e-9
/// (coefficients normalized to unit max) and are deduplicated. Throws
/// InfiniteVarietySuspected when no relation gives a finite candidate set.
VarietySet variety_from_relations(std::span<const BivarPolynomial> relations);

/// Relative residual |p(z)| / (max|coeff| * (1 + |z|^deg p)).
double relation_residual(const BivarPolynomial& p, Complex z);

struct HiddenRelationSolution {
  BivarPolynomial relation;
  /// Determinant of the 6x6 system with rows [P, Pb, P^2, PbP, Pb^2, PbP^2]
  /// for the nonzero points ordered p+iq, -(p+iq), q+ip, -(q+ip), r+ir, -(r+ir)
  /// (any order of +- pairs gives the same value).
  Complex determinant;
};

/// Recovers the unique relation zbar^2 z + a12 zbar z^2 + ... + a01 z
/// vanishing on a 7-point set containing the origin. Throws SingularSystem
/// when the point set does not have that shape or the system is singular.
HiddenRelationSolution solve_hidden_relation(const VarietySet& points);

struct VarietyCondition {
  bool holds = false;     // rank <= card V
  bool extremal = false;  // rank == card V
};

VarietyCondition check_variety_condition(int rank, const VarietySet& variety);

}  // namespace tcmp

#endif  // TCMP_VARIETY_HPP
