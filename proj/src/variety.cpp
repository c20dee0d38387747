#include "tcmp/variety.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "tcmp/error.hpp"

namespace tcmp {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr int kNewtonIterations = 50;
constexpr double kNewtonStep = 1e-14;
constexpr double kRelationResidual = 1e-9;
// A resultant counts as identically zero below this fraction of its natural scale.
constexpr double kVanishingResultant = 1e-10;

struct Candidate {
  double x;
  double y;
};

// Newton iteration on (Re p, Im p) = 0. Returns the polished point, or nullopt
// when the Jacobian degenerates or the iteration does not settle.
std::optional<Candidate> newton_polish(const RealBivarPolynomial& re, const RealBivarPolynomial& im,
                                       const RealBivarPolynomial& re_x, const RealBivarPolynomial& re_y,
                                       const RealBivarPolynomial& im_x, const RealBivarPolynomial& im_y,
                                       Candidate c) {
  for (int it = 0; it < kNewtonIterations; ++it) {
    const double f = re.evaluate(c.x, c.y);
    const double g = im.evaluate(c.x, c.y);
    const double a = re_x.evaluate(c.x, c.y), b = re_y.evaluate(c.x, c.y);
    const double d = im_x.evaluate(c.x, c.y), e = im_y.evaluate(c.x, c.y);
    const double det = a * e - b * d;
    if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
    const double dx = (e * f - b * g) / det;
    const double dy = (a * g - d * f) / det;
    c.x -= dx;
    c.y -= dy;
    if (!std::isfinite(c.x) || !std::isfinite(c.y)) return std::nullopt;
    if (std::hypot(dx, dy) < kNewtonStep * (1.0 + std::hypot(c.x, c.y))) return c;
  }
  return c;
}

bool vanishes_identically(const UnivariatePolynomial& res, const RealBivarPolynomial& P,
                          const RealBivarPolynomial& Q) {
  const double scale = std::pow(P.max_abs_coefficient(), std::max(Q.degree_in_y(), 0)) *
                       std::pow(Q.max_abs_coefficient(), std::max(P.degree_in_y(), 0));
  return res.max_abs_coefficient() <= kVanishingResultant * scale;
}

std::string describe(Complex z) {
  std::ostringstream os;
  os << z;
  return os.str();
}

}  // namespace

bool in_open_cone(double u, double t) noexcept {
  const double au = std::abs(u);
  return 0.0 < au && au < t && t < 2.0 * au;
}

ConeParams cone_params(double u, double t) {
  if (!in_open_cone(u, t)) {
    std::ostringstream os;
    os << "(u, t) = (" << u << ", " << t << ") violates 0 < |u| < t < 2|u|";
    throw Error(ErrorCode::OutsideCone, os.str());
  }
  ConeParams params{u, t, 0.0, 0.0, std::sqrt((t - u) / 2.0)};
  if (u > 0.0) {
    // p^2 and q^2 are the roots of s^2 - u s + t^2/16.
    const double disc = std::sqrt(4.0 * u * u - t * t);
    params.p = std::sqrt((2.0 * u + disc) / 4.0);
    // q from 4pq = t avoids cancellation in 2u - disc.
    params.q = t / (4.0 * params.p);
  }
  return params;
}

BivarPolynomial q7_polynomial(double u, double t) {
  return BivarPolynomial{{{0, 3}, 1.0}, {{0, 1}, -kI * t}, {{1, 0}, Complex(-u)}};
}

BivarPolynomial hidden_relation(double u) {
  return BivarPolynomial{{{2, 1}, 1.0}, {{1, 2}, kI}, {{1, 0}, Complex(-u)}, {{0, 1}, -kI * u}};
}

VarietySet::VarietySet(std::vector<Complex> points) {
  for (const auto& z : points)
    if (!contains(z)) points_.push_back(z);
}

bool VarietySet::contains(Complex z, double radius) const {
  return std::any_of(points_.begin(), points_.end(),
                     [&](const Complex& w) { return std::abs(w - z) <= radius; });
}

double VarietySet::distance(const VarietySet& other) const {
  if (empty() && other.empty()) return 0.0;
  if (empty() || other.empty()) return std::numeric_limits<double>::infinity();
  const auto one_way = [](const VarietySet& a, const VarietySet& b) {
    double worst = 0.0;
    for (const auto& z : a.points_) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& w : b.points_) best = std::min(best, std::abs(z - w));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(*this, other), one_way(other, *this));
}

VarietySet VarietySet::sorted() const {
  std::vector<Complex> pts = points_;
  std::sort(pts.begin(), pts.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  VarietySet out;
  out.points_ = std::move(pts);
  return out;
}

VarietySet variety_q7(const ConeParams& params) {
  const Complex bisector = params.r * Complex(1.0, 1.0);
  if (!params.has_off_bisector_points()) return VarietySet({0.0, bisector, -bisector});
  const Complex a(params.p, params.q);
  const Complex b(params.q, params.p);
  return VarietySet({0.0, a, -a, b, -b, bisector, -bisector});
}

double relation_residual(const BivarPolynomial& p, Complex z) {
  double scale = 0.0;
  for (const auto& [m, c] : p.terms()) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  return std::abs(p.evaluate(z)) / (scale * (1.0 + std::pow(std::abs(z), std::max(p.degree(), 0))));
}

VarietySet variety_from_relations(std::span<const BivarPolynomial> relations) {
  if (std::none_of(relations.begin(), relations.end(),
                   [](const BivarPolynomial& p) { return p.degree() >= 1; }))
    throw Error(ErrorCode::InvalidArgument, "need at least one relation of degree >= 1");

  std::vector<Complex> found;
  bool seeded = false;
  for (const auto& p : relations) {
    if (p.degree() < 1) continue;
    const auto [re, im] = real_imaginary_parts(p);
    if (re.is_zero() || im.is_zero()) continue;  // one real equation: a curve, not points
    if (re.degree_in_y() <= 0 && im.degree_in_y() <= 0) continue;
    const RealBivarPolynomial re_t = re.swap_xy(), im_t = im.swap_xy();
    if (re_t.degree_in_y() <= 0 && im_t.degree_in_y() <= 0) continue;

    const UnivariatePolynomial res_x = sylvester_resultant_y(re, im);
    const UnivariatePolynomial res_y = sylvester_resultant_y(re_t, im_t);
    if (vanishes_identically(res_x, re, im) || vanishes_identically(res_y, re_t, im_t)) continue;

    const auto re_x = re.derivative_x(), re_y = re.derivative_y();
    const auto im_x = im.derivative_x(), im_y = im.derivative_y();
    for (double x : res_x.real_roots()) {
      for (double y : res_y.real_roots()) {
        const Candidate start{x, y};
        const auto polished = newton_polish(re, im, re_x, re_y, im_x, im_y, start);
        const Candidate c = polished.value_or(start);
        found.emplace_back(c.x, c.y);
      }
    }
    seeded = true;
    break;
  }
  if (!seeded)
    throw Error(ErrorCode::InfiniteVarietySuspected,
                "every relation has a vanishing resultant; the common zero set looks infinite");

  std::vector<Complex> common;
  for (const auto& z : found) {
    const bool on_all = std::all_of(relations.begin(), relations.end(), [&](const BivarPolynomial& p) {
      return relation_residual(p, z) <= kRelationResidual;
    });
    if (on_all) common.push_back(z);
  }
  return VarietySet(std::move(common)).sorted();
}

HiddenRelationSolution solve_hidden_relation(const VarietySet& points) {
  if (points.size() != 7)
    throw Error(ErrorCode::SingularSystem,
                "expected 7 points, got " + std::to_string(points.size()));
  std::vector<Complex> nonzero;
  bool has_origin = false;
  for (const auto& z : points.points()) {
    if (std::abs(z) <= kDedupRadius)
      has_origin = true;
    else
      nonzero.push_back(z);
  }
  if (!has_origin || nonzero.size() != 6)
    throw Error(ErrorCode::SingularSystem, "point set must contain the origin");

  // Order as +- pairs, representative (Re + Im > 0) first. Pair order does not
  // change the determinant.
  std::vector<Complex> reps;
  for (const auto& z : nonzero)
    if (z.real() + z.imag() > 0.0) reps.push_back(z);
  std::vector<Complex> rows;
  const bool paired = reps.size() == 3 && std::all_of(reps.begin(), reps.end(), [&](const Complex& z) {
                        return points.contains(-z);
                      });
  if (paired) {
    std::sort(reps.begin(), reps.end(), [](const Complex& a, const Complex& b) {
      return a.real() - a.imag() > b.real() - b.imag();
    });
    for (const auto& z : reps) {
      rows.push_back(z);
      rows.push_back(-z);
    }
  } else {
    rows = nonzero;
  }

  Eigen::Matrix<Complex, 6, 6> A;
  Eigen::Matrix<Complex, 6, 1> rhs;
  double hadamard = 1.0;
  for (int k = 0; k < 6; ++k) {
    const Complex z = rows[static_cast<std::size_t>(k)];
    const Complex zb = std::conj(z);
    A.row(k) << z, zb, z * z, zb * z, zb * zb, zb * z * z;
    rhs(k) = -zb * zb * z;
    hadamard *= A.row(k).norm();
  }
  HiddenRelationSolution out;
  out.determinant = A.determinant();
  if (!(std::abs(out.determinant) > 1e-12 * hadamard))
    throw Error(ErrorCode::SingularSystem,
                "hidden-relation system is singular (det = " + describe(out.determinant) + ")");
  const Eigen::Matrix<Complex, 6, 1> a = A.fullPivLu().solve(rhs);
  out.relation = BivarPolynomial{{{2, 1}, 1.0},  {{0, 1}, a(0)}, {{1, 0}, a(1)}, {{0, 2}, a(2)},
                                 {{1, 1}, a(3)}, {{2, 0}, a(4)}, {{1, 2}, a(5)}};
  return out;
}

VarietyCondition check_variety_condition(int rank, const VarietySet& variety) {
  const auto v = static_cast<int>(variety.size());
  return {rank <= v, rank == v};
}

}  // namespace tcmp
