#ifndef TCMP_SOLVER_HPP
#define TCMP_SOLVER_HPP

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcmp/linalg.hpp"
#include "tcmp/moments.hpp"
#include "tcmp/polynomial.hpp"
#include "tcmp/variety.hpp"

namespace tcmp {

struct Tolerances {
  double rank = kDefaultRankTol;  // numerical rank and PSD decisions
  double consistency = 1e-9;      // residuals, scaled by 1 + max|gamma_ij|
  double pattern = 1e-8;          // shape checks on extracted relations
};

/// A finitely atomic measure sum rho_s delta_{z_s}.
struct AtomicMeasure {
  std::vector<Complex> atoms;
  std::vector<double> densities;

  double mass() const;
  MomentSequence moments(int order) const;
};

enum class CubicForm {
  Standard,         // z^3 = i t z + u zbar
  RealCoefficient,  // w^3 = 2 alpha w - beta wbar, mapped by z = (1+i)/2 * conj(w)
};

struct CubicRelation {
  double u = 0.0;
  double t = 0.0;
  /// The analytic quadratic term is removed by w = z + shift.
  Complex shift{};
  CubicForm form = CubicForm::Standard;
  /// The monic kernel relation as found, in the data's own coordinates.
  BivarPolynomial source;

  /// Map phi(z) = a + b z + c zbar taking the data's coordinates to the
  /// coordinates in which the relation reads z^3 - i t z - u zbar.
  Complex map_a() const;
  Complex map_b() const;
  Complex map_c() const;
  /// Inverse of the map above, applied to a point.
  Complex to_data_coordinates(Complex z) const;
};

/// Column relations from a kernel basis, in reduced echelon form with the
/// highest-order column as pivot: each relation is monic in its pivot
/// monomial and free of the other pivots. Ordered by pivot position.
std::vector<BivarPolynomial> column_relations(const Eigen::MatrixXcd& kernel, double pivot_tol = 1e-8);

/// Finds the kernel combination monic in z^3 and free of the other cubic
/// monomials, removes a z^2 term by translation, and reads off (u, t) from
/// either z^3 - i t z - u zbar or the real form w^3 - 2 alpha w + beta wbar.
/// Throws NoAnalyticCubic or PatternMismatch.
CubicRelation extract_cubic_relation(const MomentMatrix& M, const Eigen::MatrixXcd& kernel,
                                     double tol = 1e-8);

struct ConeCoordinates {
  double u = 0.0;
  double t = 0.0;
};

/// For w^3 = 2 alpha w - beta wbar with 0 < alpha < |beta| < 2 alpha:
/// t = alpha, u = beta / 2. Throws OutsideCone otherwise.
ConeCoordinates normalize_real_cubic(double alpha, double beta);

struct ConsistencyQ7 {
  /// Lambda(q_LC) and Lambda(z q_LC).
  Complex lambda_q_lc{};
  Complex lambda_z_q_lc{};
  /// Re g12 - Im g12 - u (Re g01 - Im g01) and g22 - (t+u) g11 + 2u Im g02.
  double moment_residual_first = 0.0;
  double moment_residual_second = 0.0;
  bool holds = false;          // Lambda(q_LC) = Lambda(z q_LC) = 0
  bool moment_form_holds = false;
  bool forms_agree = false;
};

ConsistencyQ7 check_consistency_q7(const MomentSequence& seq, const CubicRelation& rel,
                                   double tol = 1e-9);

/// Lambda annihilates every polynomial of degree <= order vanishing on the
/// variety. The vanishing polynomials are the null space of the evaluation
/// matrix of all monomials at the variety points.
bool check_consistency_general(const MomentSequence& seq, const VarietySet& variety,
                               double tol = 1e-9);

struct RepresentationAudit {
  int dim_ker_T = 0;
  int rank_T = 0;
  int dim_P6 = 0;  // degree-6 polynomials vanishing on the variety: 28 - rank S
  int rank_S = 0;
};

/// T maps (f, g, h) of degree <= 3 to f q7 + g conj(q7) + h q_LC in the
/// degree-6 monomial basis (28 x 30); S evaluates degree-6 polynomials on the
/// zero set of q7. Outside the cone the zero set is found numerically.
/// Throws DegenerateParams when u t = 0.
RepresentationAudit representation_audit(double u, double t, double rank_tol = kDefaultRankTol);
RepresentationAudit representation_audit(const ConeParams& params, double rank_tol = kDefaultRankTol);

/// gamma~_ij = Lambda(conj(phi)^i phi^j) for phi(z) = a + b z + c zbar.
/// Throws DegenerateTransform when |b| = |c|.
MomentSequence degree_one_transform(const MomentSequence& seq, Complex a, Complex b, Complex c);

/// J with J p-hat = (p o Phi)-hat on polynomials of degree <= n; the moment
/// matrices satisfy M~(n) = J* M(n) J.
Eigen::MatrixXcd degree_one_matrix(int n, Complex a, Complex b, Complex c);

/// 1, Z, Zb, Z^2, ZbZ, Zb^2, ZbZ^2.
std::vector<MonomialIndex> default_measure_basis();

/// Densities from the square system V rho = m, where V's rows are the basis
/// monomials evaluated at the atoms. Falls back to a pivoted monomial choice
/// when the given basis is ill-conditioned (condition number > 1e12), then
/// verifies every moment up to the sequence order.
/// Throws IllConditioned, NegativeDensity or VerificationFailed.
AtomicMeasure solve_measure(const MomentSequence& seq, const VarietySet& variety,
                            std::span<const MonomialIndex> basis, double tol = 1e-9);

/// Densities Lambda(l_j) with l_j the analytic Lagrange polynomial of atom j.
/// Independent of solve_measure; used to cross-check it.
std::vector<Complex> lagrange_densities(const MomentSequence& seq, std::span<const Complex> atoms);

enum class FailureReason {
  NotPSD,
  M2Singular,
  NoCubicRelation,
  OutsideCone,
  VarietyConditionFails,
  ConsistencyFails,
  MeasureExtractionFailed,
};

std::string_view to_string(FailureReason reason) noexcept;

struct Conditions {
  bool positivity = false;
  bool consistency = false;
  bool variety_condition = false;
  bool extremal = false;
  bool recursively_generated = false;
};

/// Agreement of the three algebraic forms of the existence criterion.
struct EquivalenceAudit {
  ConsistencyQ7 q7;
  bool kernel_condition = false;  // q_LC lies in ker M(3)
  double kernel_residual = 0.0;   // ||q - K K* q|| / ||q||, K a kernel basis
  bool agree = false;
};

struct AnalysisReport {
  Tolerances tolerances;
  bool psd = false;
  bool m2_positive_definite = false;
  int rank = 0;
  std::vector<double> singular_values;
  std::vector<BivarPolynomial> relations;
  std::optional<CubicRelation> cubic;
  VarietySet variety;
  Conditions conditions;
  std::optional<EquivalenceAudit> equivalence;
  std::optional<AtomicMeasure> measure;
  std::optional<FailureReason> failure_reason;
  std::string failure_detail;
};

/// The full decision procedure for sextic data with a cubic relation of the
/// q7 family. Never throws on mathematical failure; see failure_reason.
/// Throws InvalidArgument when the sequence has order < 6.
AnalysisReport decide(const MomentSequence& seq, const Tolerances& tol = {});

}  // namespace tcmp

#endif  // TCMP_SOLVER_HPP
