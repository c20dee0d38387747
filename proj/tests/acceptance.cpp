// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "support.hpp"
#include "tcmp/error.hpp"
#include "tcmp/linalg.hpp"
#include "tcmp/report.hpp"
#include "tcmp/solver.hpp"
#include "tcmp/variety.hpp"

using namespace tcmp;
using tcmp::testing::I;

namespace {

const std::string kDataDir = TCMP_DATA_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure and keeps the message short.
class Checker {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && pass_) {
      pass_ = false;
      first_ = what;
    }
    if (!ok) ++failures_;
  }
  Outcome outcome(const std::string& summary) const {
    if (pass_) return {true, summary};
    return {false, first_ + " (" + std::to_string(failures_) + " failing checks)"};
  }

 private:
  bool pass_ = true;
  int failures_ = 0;
  std::string first_;
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<Complex> worked_points() {
  const double r = std::sqrt(6.0) / 4.0;
  return {0.0, {1.0, 0.5}, {-1.0, -0.5}, {0.5, 1.0}, {-0.5, -1.0}, {r, r}, {-r, -r}};
}

bool has_relation(const std::vector<BivarPolynomial>& rels, const BivarPolynomial& p, double tol) {
  return std::any_of(rels.begin(), rels.end(), [&](const auto& q) { return q.distance(p) <= tol; });
}

Outcome ac1() {
  Checker c;
  const auto start = std::chrono::steady_clock::now();
  const InputDocument doc = load_input(kDataDir + "/example1.json");
  const AnalysisReport r = decide(doc.moments, doc.tolerances);
  (void)serialize_report(r);
  const double elapsed = seconds_since(start);

  c.require(r.psd, "not PSD");
  c.require(r.rank == 7, "rank " + std::to_string(r.rank));
  c.require(has_relation(r.relations, q7_polynomial(1.25, 2.0), 1e-9), "q7 missing from relations");
  c.require(has_relation(r.relations, hidden_relation(1.25), 1e-9), "q_LC missing from relations");
  c.require(r.variety.distance(VarietySet(worked_points())) <= 1e-9, "variety points differ");
  c.require(r.variety.size() == 7, "variety size");
  c.require(r.conditions.positivity && r.conditions.consistency && r.conditions.variety_condition &&
                r.conditions.extremal && r.conditions.recursively_generated,
            "a condition flag is false");
  c.require(r.measure.has_value(), "no measure");
  double rho_err = 0.0;
  if (r.measure) {
    c.require(r.measure->densities.size() == 7, "density count");
    for (double rho : r.measure->densities) rho_err = std::max(rho_err, std::abs(rho - 1.0 / 7.0));
  }
  c.require(rho_err <= 1e-9, "density error " + fmt(rho_err));
  c.require(elapsed < 1.0, "runtime " + fmt(elapsed) + " s");
  return c.outcome("rank 7, 7 atoms, max density error " + fmt(rho_err) + ", " + fmt(elapsed) + " s");
}

Outcome ac2() {
  Checker c;
  const auto start = std::chrono::steady_clock::now();
  const InputDocument doc = load_input(kDataDir + "/example2.json");
  const AnalysisReport r = decide(doc.moments, doc.tolerances);
  (void)serialize_report(r);
  const double elapsed = seconds_since(start);
  c.require(r.psd, "not PSD");
  c.require(r.rank == 8, "rank " + std::to_string(r.rank));
  c.require(!r.conditions.variety_condition, "variety condition holds");
  c.require(r.failure_reason == FailureReason::VarietyConditionFails, "wrong failure reason");
  c.require(!r.measure.has_value(), "a measure was reported");
  c.require(elapsed < 1.0, "runtime " + fmt(elapsed) + " s");
  return c.outcome("rank 8, VarietyConditionFails, " + fmt(elapsed) + " s");
}

Outcome ac3() {
  Checker c;
  std::mt19937_64 rng(1003);
  double worst_res = 0.0, worst_dist = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto [u, t] = testing::random_cone_point(rng, 0.01);
    const VarietySet v = variety_q7(cone_params(u, t));
    const BivarPolynomial q7 = q7_polynomial(u, t);
    c.require(v.size() == 7, "closed form returned " + std::to_string(v.size()) + " points");
    for (const auto& z : v.points()) worst_res = std::max(worst_res, std::abs(q7.evaluate(z)));
    const BivarPolynomial rels[] = {q7};
    const VarietySet numeric = variety_from_relations(rels);
    c.require(numeric.size() <= 7, "more than 7 zeros");
    worst_dist = std::max(worst_dist, v.distance(numeric));
  }
  c.require(worst_res <= 1e-10, "residual " + fmt(worst_res));
  c.require(worst_dist <= 1e-9, "distance " + fmt(worst_dist));

  // Diagnostic for the u < 0 sheet of the cone, where only the three bisector
  // points exist.
  double neg_dist = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto [u, t] = testing::random_cone_point(rng, 0.01);
    const VarietySet v = variety_q7(cone_params(-u, t));
    const BivarPolynomial rels[] = {q7_polynomial(-u, t)};
    const VarietySet numeric = variety_from_relations(rels);
    c.require(v.size() == 3 && numeric.size() == 3, "u < 0 did not give three points");
    neg_dist = std::max(neg_dist, v.distance(numeric));
  }
  c.require(neg_dist <= 1e-9, "u < 0 distance " + fmt(neg_dist));
  return c.outcome("200 parameters, max residual " + fmt(worst_res) + ", max distance " + fmt(worst_dist) +
                   "; u < 0: 3 points on 20 samples, distance " + fmt(neg_dist));
}

// Determinant of the Sylvester matrix with its entries evaluated at x.
double sylvester_det_at(const RealBivarPolynomial& P, const RealBivarPolynomial& Q, double x) {
  const auto S = sylvester_matrix_y(P, Q);
  const auto n = static_cast<Eigen::Index>(S.size());
  Eigen::MatrixXd A(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index k = 0; k < n; ++k) A(r, k) = S[r][k].evaluate(x);
  return A.determinant();
}

Outcome ac4() {
  Checker c;
  std::mt19937_64 rng(1004);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto [u, t] = testing::random_cone_point(rng, 0.01);
    const auto [re, im] = real_imaginary_parts(q7_polynomial(u, t));
    const UnivariatePolynomial res = sylvester_resultant_y(re, im);
    for (int k = 0; k < 9; ++k) {
      const double x = -1.7 + 0.4 * k;
      const double x2 = x * x;
      const double f = x * (2 * x2 + u - t) * (2 * x2 + u + t) * (16 * x2 * x2 - 16 * u * x2 + t * t);
      const double scale = std::max(1.0, std::abs(f));
      worst = std::max(worst, std::abs(sylvester_det_at(re, im, x) - f) / scale);
      worst = std::max(worst, std::abs(res.evaluate(x) - f) / scale);
    }
  }
  c.require(worst <= 1e-9, "relative error " + fmt(worst));
  return c.outcome("50 parameters x 9 points, max relative error " + fmt(worst));
}

Outcome ac5() {
  Checker c;
  std::mt19937_64 rng(1005);
  for (int trial = 0; trial < 20; ++trial) {
    const auto [u, t] = testing::random_cone_point(rng);
    const RepresentationAudit a = representation_audit(u, t);
    const std::string at = " at (" + fmt(u) + ", " + fmt(t) + ")";
    c.require(a.dim_ker_T == 9, "dim ker T = " + std::to_string(a.dim_ker_T) + at);
    c.require(a.rank_T == 21, "rank T = " + std::to_string(a.rank_T) + at);
    c.require(a.dim_P6 == 21, "dim P6 = " + std::to_string(a.dim_P6) + at);
    c.require(a.rank_S == 7, "rank S = " + std::to_string(a.rank_S) + at);
  }
  return c.outcome("20 parameters: dim ker T 9, rank T 21, dim P6 21, rank S 7");
}

// Checks the determinant against the stated closed form, whose power of r
// is 2. The direct expansion of the 6x6 system gives r^3, so the ratio of
// computed to stated values is r and this criterion cannot pass as stated.
Outcome ac6() {
  Checker c;
  std::mt19937_64 rng(1006);
  double worst_coeff = 0.0, worst_det = 0.0, worst_ratio_gap = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto [u, t] = testing::random_cone_point(rng);
    const ConeParams cp = cone_params(u, t);
    const auto sol = solve_hidden_relation(variety_q7(cp));
    worst_coeff = std::max(worst_coeff, sol.relation.distance(hidden_relation(u)));
    const double p = cp.p, q = cp.q, r = cp.r;
    const Complex stated = 128.0 * Complex(1.0, 1.0) * std::pow(p - q, 4) * std::pow(p + q, 2) * r * r *
                           (p * p + q * q - 2.0 * r * r);
    worst_det = std::max(worst_det, std::abs(sol.determinant - stated) / std::abs(stated));
    worst_ratio_gap = std::max(worst_ratio_gap, std::abs(sol.determinant / stated - r) / r);
  }
  c.require(worst_coeff <= 1e-9, "q_LC coefficient error " + fmt(worst_coeff));
  c.require(worst_det <= 1e-9, "determinant vs r^2 formula: relative error " + fmt(worst_det) +
                                   "; coefficients match to " + fmt(worst_coeff) +
                                   "; det/formula = r to " + fmt(worst_ratio_gap) + ", i.e. the exponent of r is 3");
  return c.outcome("50 parameters, coefficient error " + fmt(worst_coeff) + ", determinant error " + fmt(worst_det));
}

struct Forms {
  bool lambda = false;  // Lambda(q_LC) = Lambda(z q_LC) = 0
  bool moment = false;  // the two real moment identities
  bool kernel = false;  // q_LC in ker M(3)
};

Forms evaluate_forms(const MomentSequence& seq, double u, double t) {
  CubicRelation rel;
  rel.u = u;
  rel.t = t;
  const ConsistencyQ7 q = check_consistency_q7(seq, rel);
  const MomentMatrix M = build_moment_matrix(seq, 3);
  const RankReport rep = numerical_rank(M.entries());
  const Eigen::VectorXcd v = hidden_relation(u).to_vector(3);
  const Eigen::MatrixXcd& K = rep.kernel_basis;
  const double residual = K.cols() == 0 ? 1.0 : (v - K * (K.adjoint() * v)).norm() / v.norm();
  return {q.holds, q.moment_form_holds, residual <= Tolerances{}.consistency};
}

Outcome ac7() {
  Checker c;
  std::mt19937_64 rng(1007);
  int consistent = 0, broken = 0, attempts = 0;
  while ((consistent < 50 || broken < 50) && attempts < 10000) {
    ++attempts;
    const auto [u, t] = testing::random_cone_point(rng, 0.1);
    const auto base = testing::q7_measure(u, t, testing::random_densities(rng, 7));
    const bool perturb = consistent >= 50 || (broken < 50 && attempts % 2 == 0);
    MomentSequence seq = base;
    if (perturb) {
      seq = testing::q7_extension(base, u, t, -base(2, 2).real() * testing::uniform(rng, 1e-4, 2e-3));
      // Keep positive data with an invertible M(2), as the criterion is stated for those.
      if (!is_psd(build_moment_matrix(seq, 3).entries()) ||
          !is_positive_definite(build_moment_matrix(seq, 2).entries()))
        continue;
    }
    const Forms f = evaluate_forms(seq, u, t);
    const bool agree = f.lambda == f.moment && f.moment == f.kernel;
    c.require(agree, std::string(perturb ? "perturbed" : "consistent") + " sequence: forms disagree");
    c.require(f.lambda == !perturb, std::string(perturb ? "perturbed" : "consistent") + " sequence misclassified");
    ++(perturb ? broken : consistent);
  }
  c.require(consistent == 50 && broken == 50, "could not synthesize 100 sequences");
  return c.outcome(std::to_string(consistent) + " consistent and " + std::to_string(broken) +
                   " perturbed sequences, (ii), (iii), (iv) agree");
}

// Largest atom and density mismatch after matching atoms by proximity.
std::pair<double, double> measure_gap(const AtomicMeasure& got, const std::vector<Complex>& atoms,
                                      const std::vector<double>& rho) {
  if (got.atoms.size() != atoms.size()) return {1e300, 1e300};
  double atom_gap = 0.0, rho_gap = 0.0;
  for (std::size_t s = 0; s < atoms.size(); ++s) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < got.atoms.size(); ++k)
      if (std::abs(got.atoms[k] - atoms[s]) < std::abs(got.atoms[best] - atoms[s])) best = k;
    atom_gap = std::max(atom_gap, std::abs(got.atoms[best] - atoms[s]));
    rho_gap = std::max(rho_gap, std::abs(got.densities[best] - rho[s]));
  }
  return {atom_gap, rho_gap};
}

Outcome ac8() {
  Checker c;
  std::mt19937_64 rng(1008);
  double worst_atom = 0.0, worst_rho = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto [u, t] = testing::random_cone_point(rng);
    const auto atoms = variety_q7(cone_params(u, t)).points();
    const auto rho = testing::random_densities(rng, 7);
    const AnalysisReport r = decide(testing::measure_moments(atoms, rho));
    if (!r.measure) {
      c.require(false, "no measure at (" + fmt(u) + ", " + fmt(t) + "): " + r.failure_detail);
      continue;
    }
    const auto [a, d] = measure_gap(*r.measure, atoms, rho);
    worst_atom = std::max(worst_atom, a);
    worst_rho = std::max(worst_rho, d);
  }
  c.require(worst_atom <= 1e-9, "atom error " + fmt(worst_atom));
  c.require(worst_rho <= 1e-9, "density error " + fmt(worst_rho));
  return c.outcome("100 measures, max atom error " + fmt(worst_atom) + ", max density error " + fmt(worst_rho));
}

Outcome ac9() {
  Checker c;
  std::mt19937_64 rng(1009);
  const auto basis = default_measure_basis();

  for (const auto& seq : {testing::example1(), testing::example2()}) {
    const auto same = degree_one_transform(seq, 0.0, 1.0, 0.0);
    c.require(same.graded_values() == seq.graded_values(), "identity map changed the moments");
  }

  double worst_rho = 0.0;
  int maps = 0;
  while (maps < 50) {
    const Complex a = testing::random_complex(rng), b = testing::random_complex(rng),
                  cc = testing::random_complex(rng) * 0.5;
    if (std::abs(std::abs(b) - std::abs(cc)) < 0.2) continue;
    ++maps;
    const auto [u, t] = testing::random_cone_point(rng);
    const auto atoms = variety_q7(cone_params(u, t)).points();
    const auto rho = testing::random_densities(rng, 7);
    const auto seq = testing::measure_moments(atoms, rho);

    for (const auto& data : {seq, testing::example2()}) {
      const auto moved = degree_one_transform(data, a, b, cc);
      const Eigen::MatrixXcd M = build_moment_matrix(data, 3).entries();
      const Eigen::MatrixXcd Mt = build_moment_matrix(moved, 3).entries();
      c.require(numerical_rank(M).rank == numerical_rank(Mt).rank, "rank changed under a map");
      c.require(is_psd(M) == is_psd(Mt), "PSD status changed under a map");
    }

    std::vector<Complex> image;
    for (const auto& z : atoms) image.push_back(a + b * z + cc * std::conj(z));
    const auto moved = degree_one_transform(seq, a, b, cc);
    try {
      const AtomicMeasure m = solve_measure(moved, VarietySet(image), basis);
      const auto [ag, d] = measure_gap(m, image, rho);
      c.require(ag < 1e-12, "atoms moved");
      worst_rho = std::max(worst_rho, d);
    } catch (const Error& e) {
      c.require(false, std::string("measure on the image failed: ") + e.what());
    }
  }
  c.require(worst_rho <= 1e-9, "density error " + fmt(worst_rho));
  return c.outcome("50 maps, rank and PSD invariant, identity exact, max density error " + fmt(worst_rho));
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"AC1 example 1 reproduction", ac1},  {"AC2 example 2 reproduction", ac2},
      {"AC3 variety count", ac3},           {"AC4 resultant identity", ac4},
      {"AC5 representation audit", ac5},    {"AC6 hidden-relation uniqueness", ac6},
      {"AC7 equivalence of (ii), (iii), (iv)", ac7}, {"AC8 round trip", ac8},
      {"AC9 transform covariance", ac9},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
