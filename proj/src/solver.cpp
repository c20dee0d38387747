#include "tcmp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tcmp/error.hpp"

namespace tcmp {

namespace {

constexpr Complex kHalfOnePlusI{0.5, 0.5};
// Condition number above which the given measure basis is abandoned.
constexpr double kMaxCondition = 1e12;
// Relative size below which a reduced relation coefficient is roundoff.
constexpr double kRelationCleanup = 1e-10;

double scaled(double tol, const MomentSequence& seq) { return tol * (1.0 + seq.max_abs()); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Eigen::MatrixXcd evaluation_matrix(std::span<const MonomialIndex> monomials, std::span<const Complex> points) {
  Eigen::MatrixXcd E(static_cast<Eigen::Index>(monomials.size()), static_cast<Eigen::Index>(points.size()));
  for (std::size_t k = 0; k < monomials.size(); ++k)
    for (std::size_t s = 0; s < points.size(); ++s)
      E(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(s)) = monomials[k].evaluate(points[s]);
  return E;
}

double condition_number(const Eigen::MatrixXcd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smallest = s(s.size() - 1);
  return smallest > 0.0 ? s(0) / smallest : std::numeric_limits<double>::infinity();
}

// Picks |points| monomials of degree <= order whose evaluation rows are best
// conditioned, by column-pivoted QR on the transposed evaluation matrix.
std::vector<MonomialIndex> pivoted_basis(std::span<const Complex> points, int order) {
  const auto all = graded_monomials(order);
  const Eigen::MatrixXcd Et = evaluation_matrix(all, points).transpose();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(Et);
  std::vector<MonomialIndex> chosen;
  const auto& perm = qr.colsPermutation().indices();
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(points.size()) && k < perm.size(); ++k)
    chosen.push_back(all[static_cast<std::size_t>(perm(k))]);
  return chosen;
}

BivarPolynomial affine_map(Complex a, Complex b, Complex c) {
  return BivarPolynomial::constant(a) + BivarPolynomial::monomial({0, 1}, b) +
         BivarPolynomial::monomial({1, 0}, c);
}

}  // namespace

double AtomicMeasure::mass() const {
  double m = 0.0;
  for (double rho : densities) m += rho;
  return m;
}

MomentSequence AtomicMeasure::moments(int order) const {
  return MomentSequence::from_atoms(order, atoms, densities);
}

Complex CubicRelation::map_a() const {
  return form == CubicForm::Standard ? shift : kHalfOnePlusI * std::conj(shift);
}

Complex CubicRelation::map_b() const { return form == CubicForm::Standard ? Complex(1.0) : Complex(0.0); }

Complex CubicRelation::map_c() const { return form == CubicForm::Standard ? Complex(0.0) : kHalfOnePlusI; }

Complex CubicRelation::to_data_coordinates(Complex z) const {
  if (form == CubicForm::Standard) return z - shift;
  return std::conj(z * Complex(1.0, -1.0)) - shift;
}

std::vector<BivarPolynomial> column_relations(const Eigen::MatrixXcd& kernel, double pivot_tol) {
  const Eigen::Index k = kernel.cols();
  const Eigen::Index N = kernel.rows();
  Eigen::MatrixXcd R = kernel.transpose();
  Eigen::Index row = 0;
  for (Eigen::Index col = N - 1; col >= 0 && row < k; --col) {
    Eigen::Index best = 0;
    const double mag = R.col(col).tail(k - row).cwiseAbs().maxCoeff(&best);
    if (mag <= pivot_tol) continue;
    R.row(row).swap(R.row(row + best));
    R.row(row) /= R(row, col);
    R(row, col) = 1.0;
    for (Eigen::Index r = 0; r < k; ++r) {
      if (r == row) continue;
      R.row(r) -= R(r, col) * R.row(row);
      R(r, col) = 0.0;
    }
    ++row;
  }
  std::vector<BivarPolynomial> out;
  for (Eigen::Index r = row - 1; r >= 0; --r) {
    const Eigen::VectorXcd v = R.row(r).transpose();
    out.push_back(BivarPolynomial::from_vector(v, kRelationCleanup * v.cwiseAbs().maxCoeff()));
  }
  return out;
}

CubicRelation extract_cubic_relation(const MomentMatrix& M, const Eigen::MatrixXcd& kernel, double tol) {
  if (M.n() < 3 || kernel.rows() != M.side())
    throw Error(ErrorCode::InvalidArgument, "need a kernel basis of M(n), n >= 3");
  const auto z3 = static_cast<Eigen::Index>(MonomialIndex{0, 3}.position());
  if (kernel.cols() == 0 || kernel.row(z3).norm() <= tol)
    throw Error(ErrorCode::NoAnalyticCubic, "no kernel relation involves the Z^3 column");

  // Rows of the cubic monomials Z^3, ZbZ^2, Zb^2Z, Zb^3; ask for (1, 0, 0, 0).
  const Eigen::MatrixXcd D = kernel.block(z3, 0, 4, kernel.cols());
  Eigen::VectorXcd target = Eigen::VectorXcd::Zero(4);
  target(0) = 1.0;
  const Eigen::VectorXcd comb = D.completeOrthogonalDecomposition().solve(target);
  const double miss = (D * comb - target).norm();
  if (miss > tol)
    throw Error(ErrorCode::PatternMismatch,
                "every kernel relation with a Z^3 term also carries other cubic terms (residual " +
                    fmt(miss) + ")");
  Eigen::VectorXcd v = kernel * comb;
  v /= v(z3);
  v(z3) = 1.0;
  v.segment(z3 + 1, 3).setZero();
  CubicRelation rel;
  rel.source = BivarPolynomial::from_vector(v, kRelationCleanup * v.cwiseAbs().maxCoeff());

  const double scale = v.cwiseAbs().maxCoeff();
  BivarPolynomial w = rel.source;
  const Complex b2 = w.coefficient({0, 2});
  if (std::abs(b2) > tol * scale) {
    rel.shift = b2 / 3.0;
    w = w.compose_affine(-rel.shift, 1.0, 0.0);
  }
  for (const auto& [m, c] : w.terms()) {
    const bool allowed = m == MonomialIndex{0, 3} || m == MonomialIndex{0, 1} || m == MonomialIndex{1, 0};
    if (!allowed && std::abs(c) > tol * scale)
      throw Error(ErrorCode::PatternMismatch, "unexpected " + m.label() + " term in " + w.to_string());
  }
  const Complex cw = w.coefficient({0, 1});
  const Complex cwb = w.coefficient({1, 0});
  if (std::abs(cw.real()) <= tol * scale && std::abs(cwb.imag()) <= tol * scale) {
    rel.form = CubicForm::Standard;
    rel.t = -cw.imag();
    rel.u = -cwb.real();
  } else if (std::abs(cw.imag()) <= tol * scale && std::abs(cwb.imag()) <= tol * scale) {
    rel.form = CubicForm::RealCoefficient;
    rel.t = -cw.real() / 2.0;
    rel.u = cwb.real() / 2.0;
  } else {
    throw Error(ErrorCode::PatternMismatch,
                "cubic " + w.to_string() + " is neither z^3 - i t z - u zbar nor real-coefficient");
  }
  return rel;
}

ConeCoordinates normalize_real_cubic(double alpha, double beta) {
  if (!(0.0 < alpha && alpha < std::abs(beta) && std::abs(beta) < 2.0 * alpha))
    throw Error(ErrorCode::OutsideCone, "(alpha, beta) = (" + fmt(alpha) + ", " + fmt(beta) +
                                            ") violates 0 < alpha < |beta| < 2 alpha");
  return {beta / 2.0, alpha};
}

ConsistencyQ7 check_consistency_q7(const MomentSequence& seq, const CubicRelation& rel, double tol) {
  if (seq.order() < 4) throw Error(ErrorCode::InvalidArgument, "need moments of order >= 4");
  const double u = rel.u, t = rel.t;
  const BivarPolynomial q = hidden_relation(u);
  ConsistencyQ7 out;
  out.lambda_q_lc = riesz_functional(seq, q);
  out.lambda_z_q_lc = riesz_functional(seq, BivarPolynomial::z() * q);

  const Complex g12 = seq(1, 2), g01 = seq(0, 1);
  out.moment_residual_first = (g12.real() - g12.imag()) - u * (g01.real() - g01.imag());
  out.moment_residual_second =
      seq(2, 2).real() - (t + u) * seq(1, 1).real() + 2.0 * u * seq(0, 2).imag();

  const double bound = scaled(tol, seq);
  out.holds = std::abs(out.lambda_q_lc) <= bound && std::abs(out.lambda_z_q_lc) <= bound;
  out.moment_form_holds =
      std::abs(out.moment_residual_first) <= bound && std::abs(out.moment_residual_second) <= bound;
  out.forms_agree = out.holds == out.moment_form_holds;
  return out;
}

bool check_consistency_general(const MomentSequence& seq, const VarietySet& variety, double tol) {
  const auto monomials = graded_monomials(seq.order());
  const auto N = static_cast<Eigen::Index>(monomials.size());
  Eigen::Map<const Eigen::VectorXcd> gamma(seq.graded_values().data(), N);
  Eigen::MatrixXcd null_space;
  if (variety.empty()) {
    null_space = Eigen::MatrixXcd::Identity(N, N);
  } else {
    const Eigen::MatrixXcd E = evaluation_matrix(monomials, variety.points()).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(E, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
      if (s(k) > kDefaultRankTol * s(0)) ++rank;
    null_space = svd.matrixV().rightCols(N - rank);
  }
  // Lambda(p) = sum_k p_k gamma_k for p in the null space.
  const Eigen::VectorXcd values = null_space.transpose() * gamma;
  return values.size() == 0 || values.cwiseAbs().maxCoeff() <= scaled(tol, seq);
}

RepresentationAudit representation_audit(double u, double t, double rank_tol) {
  if (u * t == 0.0) throw Error(ErrorCode::DegenerateParams, "u t = 0");
  const BivarPolynomial q7 = q7_polynomial(u, t);
  const BivarPolynomial generators[] = {q7, q7.conjugate(), hidden_relation(u)};
  const auto cubic_monomials = graded_monomials(3);
  const auto sextic = static_cast<Eigen::Index>(monomial_count(6));
  Eigen::MatrixXcd T(sextic, 3 * static_cast<Eigen::Index>(cubic_monomials.size()));
  Eigen::Index col = 0;
  for (const auto& g : generators)
    for (const auto& m : cubic_monomials) T.col(col++) = (BivarPolynomial::monomial(m) * g).to_vector(6);

  VarietySet variety;
  if (in_open_cone(u, t)) {
    variety = variety_q7(cone_params(u, t));
  } else {
    const BivarPolynomial rel[] = {q7};
    variety = variety_from_relations(rel);
  }
  const Eigen::MatrixXcd S = evaluation_matrix(graded_monomials(6), variety.points()).transpose();

  RepresentationAudit audit;
  audit.rank_T = numerical_rank(T, rank_tol).rank;
  audit.dim_ker_T = static_cast<int>(T.cols()) - audit.rank_T;
  audit.rank_S = S.size() == 0 ? 0 : numerical_rank(S, rank_tol).rank;
  audit.dim_P6 = static_cast<int>(sextic) - audit.rank_S;
  return audit;
}

RepresentationAudit representation_audit(const ConeParams& params, double rank_tol) {
  return representation_audit(params.u, params.t, rank_tol);
}

MomentSequence degree_one_transform(const MomentSequence& seq, Complex a, Complex b, Complex c) {
  const double ab = std::abs(b), ac = std::abs(c);
  if (std::abs(ab - ac) <= 1e-12 * std::max(ab, ac) || (ab == 0.0 && ac == 0.0))
    throw Error(ErrorCode::DegenerateTransform, "|b| = |c| makes the map degenerate");
  const int order = seq.order();
  const BivarPolynomial phi = affine_map(a, b, c);
  const BivarPolynomial phi_bar = phi.conjugate();
  std::vector<BivarPolynomial> pw{BivarPolynomial::constant(1.0)};
  std::vector<BivarPolynomial> pw_bar{BivarPolynomial::constant(1.0)};
  for (int k = 1; k <= order; ++k) {
    pw.push_back(pw.back() * phi);
    pw_bar.push_back(pw_bar.back() * phi_bar);
  }
  MomentSequence::Entries entries;
  for (int i = 0; 2 * i <= order; ++i) {
    for (int j = i; i + j <= order; ++j) {
      Complex v = riesz_functional(seq, pw_bar[static_cast<std::size_t>(i)] * pw[static_cast<std::size_t>(j)]);
      if (i == j) v.imag(0.0);
      entries[{i, j}] = v;
    }
  }
  return MomentSequence::from_entries(order, entries);
}

Eigen::MatrixXcd degree_one_matrix(int n, Complex a, Complex b, Complex c) {
  const auto monomials = graded_monomials(n);
  const auto side = static_cast<Eigen::Index>(monomials.size());
  Eigen::MatrixXcd J(side, side);
  for (Eigen::Index k = 0; k < side; ++k)
    J.col(k) = BivarPolynomial::monomial(monomials[static_cast<std::size_t>(k)]).compose_affine(a, b, c).to_vector(n);
  return J;
}

std::vector<MonomialIndex> default_measure_basis() {
  return {{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}, {1, 2}};
}

AtomicMeasure solve_measure(const MomentSequence& seq, const VarietySet& variety,
                            std::span<const MonomialIndex> basis, double tol) {
  if (variety.empty()) throw Error(ErrorCode::InvalidArgument, "no atoms to place mass on");
  const auto& atoms = variety.points();
  const std::size_t v = atoms.size();

  std::vector<MonomialIndex> chosen;
  if (basis.size() >= v) chosen.assign(basis.begin(), basis.begin() + static_cast<std::ptrdiff_t>(v));
  Eigen::MatrixXcd V;
  double cond = std::numeric_limits<double>::infinity();
  if (!chosen.empty()) {
    V = evaluation_matrix(chosen, atoms);
    cond = condition_number(V);
  }
  if (!(cond <= kMaxCondition)) {
    chosen = pivoted_basis(atoms, seq.order());
    V = evaluation_matrix(chosen, atoms);
    cond = condition_number(V);
    if (chosen.size() != v || !(cond <= kMaxCondition))
      throw Error(ErrorCode::IllConditioned, "Vandermonde-type system has condition number " + fmt(cond));
  }
  for (const auto& m : chosen)
    if (m.degree() > seq.order())
      throw Error(ErrorCode::DegreeOverflow, "basis monomial " + m.label() + " exceeds the data order");

  Eigen::VectorXcd rhs(static_cast<Eigen::Index>(v));
  for (std::size_t k = 0; k < v; ++k) rhs(static_cast<Eigen::Index>(k)) = seq.at(chosen[k]);
  const Eigen::VectorXcd rho = V.fullPivLu().solve(rhs);

  const double bound = scaled(tol, seq);
  AtomicMeasure measure;
  measure.atoms = atoms;
  for (Eigen::Index s = 0; s < rho.size(); ++s) {
    if (std::abs(rho(s).imag()) > bound)
      throw Error(ErrorCode::VerificationFailed, "density " + std::to_string(s) + " is not real");
    if (rho(s).real() <= bound)
      throw Error(ErrorCode::NegativeDensity,
                  "density " + std::to_string(s) + " = " + fmt(rho(s).real()) + " is not positive");
    measure.densities.push_back(rho(s).real());
  }

  const MomentSequence rebuilt = measure.moments(seq.order());
  for (std::size_t k = 0; k < rebuilt.graded_values().size(); ++k) {
    const double err = std::abs(rebuilt.graded_values()[k] - seq.graded_values()[k]);
    if (err > bound)
      throw Error(ErrorCode::VerificationFailed,
                  "measure misses moment " + monomial_at(k).label() + " by " + fmt(err));
  }
  return measure;
}

std::vector<Complex> lagrange_densities(const MomentSequence& seq, std::span<const Complex> atoms) {
  if (atoms.empty() || static_cast<int>(atoms.size()) - 1 > seq.order())
    throw Error(ErrorCode::InvalidArgument, "Lagrange polynomials would exceed the data order");
  std::vector<Complex> out;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    BivarPolynomial ell = BivarPolynomial::constant(1.0);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (i == j) continue;
      const Complex denom = atoms[j] - atoms[i];
      if (denom == 0.0) throw Error(ErrorCode::InvalidArgument, "repeated atom");
      ell = ell * (affine_map(-atoms[i], 1.0, 0.0) * (1.0 / denom));
    }
    out.push_back(riesz_functional(seq, ell));
  }
  return out;
}

std::string_view to_string(FailureReason reason) noexcept {
  switch (reason) {
    case FailureReason::NotPSD: return "NotPSD";
    case FailureReason::M2Singular: return "M2Singular";
    case FailureReason::NoCubicRelation: return "NoCubicRelation";
    case FailureReason::OutsideCone: return "OutsideCone";
    case FailureReason::VarietyConditionFails: return "VarietyConditionFails";
    case FailureReason::ConsistencyFails: return "ConsistencyFails";
    case FailureReason::MeasureExtractionFailed: return "MeasureExtractionFailed";
  }
  return "Unknown";
}

AnalysisReport decide(const MomentSequence& seq, const Tolerances& tol) {
  if (seq.order() < 6) throw Error(ErrorCode::InvalidArgument, "need moments up to order 6");
  AnalysisReport rep;
  rep.tolerances = tol;
  const auto fail = [&](FailureReason reason, std::string detail) {
    rep.failure_reason = reason;
    rep.failure_detail = std::move(detail);
    return rep;
  };

  const MomentMatrix M3 = build_moment_matrix(seq, 3);
  const MomentMatrix M2 = build_moment_matrix(seq, 2);
  rep.psd = is_psd(M3.entries(), tol.rank);
  if (!rep.psd) {
    const double lmin = hermitian_eigenvalues(M3.entries())(0);
    return fail(FailureReason::NotPSD, "smallest eigenvalue of M(3) is " + fmt(lmin));
  }
  rep.m2_positive_definite = is_positive_definite(M2.entries(), tol.rank);
  if (!rep.m2_positive_definite) return fail(FailureReason::M2Singular, "M(2) is singular");
  rep.conditions.positivity = true;

  const RankReport rank = numerical_rank(M3.entries(), tol.rank);
  rep.rank = rank.rank;
  rep.singular_values = rank.singular_values;
  rep.relations = column_relations(rank.kernel_basis);
  try {
    rep.conditions.recursively_generated = is_recursively_generated(M3, rep.relations, tol.rank);
  } catch (const Error&) {
    rep.conditions.recursively_generated = false;
  }

  try {
    rep.cubic = extract_cubic_relation(M3, rank.kernel_basis, tol.pattern);
  } catch (const Error& e) {
    return fail(FailureReason::NoCubicRelation, e.what());
  }
  const CubicRelation& cubic = *rep.cubic;
  if (!in_open_cone(cubic.u, cubic.t))
    return fail(FailureReason::OutsideCone,
                "(u, t) = (" + fmt(cubic.u) + ", " + fmt(cubic.t) + ") violates 0 < |u| < t < 2|u|");

  try {
    rep.variety = variety_from_relations(rep.relations);
  } catch (const Error& e) {
    return fail(FailureReason::VarietyConditionFails, e.what());
  }
  const VarietyCondition vc = check_variety_condition(rep.rank, rep.variety);
  rep.conditions.variety_condition = vc.holds;
  rep.conditions.extremal = vc.extremal;
  rep.conditions.consistency = check_consistency_general(seq, rep.variety, tol.consistency);

  const bool identity = cubic.form == CubicForm::Standard && cubic.shift == Complex(0.0);
  const MomentSequence standard =
      identity ? seq : degree_one_transform(seq, cubic.map_a(), cubic.map_b(), cubic.map_c());
  EquivalenceAudit audit;
  audit.q7 = check_consistency_q7(standard, cubic, tol.consistency);
  const MomentMatrix M3s = build_moment_matrix(standard, 3);
  const BivarPolynomial q_lc = hidden_relation(cubic.u);
  const Eigen::VectorXcd q_hat = q_lc.to_vector(3);
  const Eigen::MatrixXcd K = numerical_rank(M3s.entries(), tol.rank).kernel_basis;
  audit.kernel_residual = (q_hat - K * (K.adjoint() * q_hat)).norm() / q_hat.norm();
  audit.kernel_condition = audit.kernel_residual <= tol.consistency;
  audit.agree = audit.q7.forms_agree && audit.q7.holds == audit.kernel_condition;
  rep.equivalence = audit;

  if (!vc.holds)
    return fail(FailureReason::VarietyConditionFails,
                "rank M(3) = " + std::to_string(rep.rank) + " exceeds card V = " +
                    std::to_string(rep.variety.size()));
  if (!audit.q7.holds || !rep.conditions.consistency) {
    std::ostringstream os;
    os << "Lambda(q_LC) = " << audit.q7.lambda_q_lc << ", Lambda(z q_LC) = " << audit.q7.lambda_z_q_lc;
    return fail(FailureReason::ConsistencyFails, os.str());
  }

  try {
    const auto basis = default_measure_basis();
    rep.measure = solve_measure(seq, rep.variety, basis, tol.consistency);
  } catch (const Error& e) {
    return fail(FailureReason::MeasureExtractionFailed, e.what());
  }
  return rep;
}

}  // namespace tcmp
