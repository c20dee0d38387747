#include "tcmp/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>

#include "tcmp/error.hpp"

namespace tcmp {

// ---------------------------------------------------------------------------
// BivarPolynomial

BivarPolynomial::BivarPolynomial(
    std::initializer_list<std::pair<const MonomialIndex, Complex>> terms) {
  for (const auto& [m, c] : terms) terms_[m] += c;
  cleanup();
}

BivarPolynomial::BivarPolynomial(Terms terms) : terms_(std::move(terms)) { cleanup(); }

BivarPolynomial BivarPolynomial::constant(Complex c) { return monomial({0, 0}, c); }

BivarPolynomial BivarPolynomial::monomial(MonomialIndex m, Complex c) {
  return BivarPolynomial(Terms{{m, c}});
}

BivarPolynomial BivarPolynomial::from_vector(const Eigen::VectorXcd& coeffs, double cleanup) {
  BivarPolynomial p;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k)
    if (std::abs(coeffs[k]) > cleanup) p.terms_[monomial_at(static_cast<std::size_t>(k))] = coeffs[k];
  return p;
}

int BivarPolynomial::degree() const noexcept {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

Complex BivarPolynomial::coefficient(MonomialIndex m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Complex{} : it->second;
}

Eigen::VectorXcd BivarPolynomial::to_vector(int n) const {
  if (degree() > n)
    throw Error(ErrorCode::DegreeOverflow, "polynomial of degree " + std::to_string(degree()) +
                                               " does not fit degree " + std::to_string(n));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(monomial_count(n)));
  for (const auto& [m, c] : terms_) v[static_cast<Eigen::Index>(m.position())] = c;
  return v;
}

Complex BivarPolynomial::evaluate(Complex z) const {
  Complex sum{};
  for (const auto& [m, c] : terms_) sum += c * m.evaluate(z);
  return sum;
}

BivarPolynomial BivarPolynomial::conjugate() const {
  BivarPolynomial out;
  for (const auto& [m, c] : terms_) out.terms_[m.conjugate()] = std::conj(c);
  return out;
}

BivarPolynomial BivarPolynomial::compose_affine(Complex a, Complex b, Complex c) const {
  const BivarPolynomial phi{{{0, 0}, a}, {{0, 1}, b}, {{1, 0}, c}};
  const BivarPolynomial phi_bar = phi.conjugate();
  const int d = std::max(degree(), 0);
  std::vector<BivarPolynomial> phi_pow{constant(1.0)};
  std::vector<BivarPolynomial> phi_bar_pow{constant(1.0)};
  for (int k = 1; k <= d; ++k) {
    phi_pow.push_back(phi_pow.back() * phi);
    phi_bar_pow.push_back(phi_bar_pow.back() * phi_bar);
  }
  BivarPolynomial out;
  for (const auto& [m, coeff] : terms_)
    out += coeff * (phi_bar_pow[static_cast<std::size_t>(m.i)] * phi_pow[static_cast<std::size_t>(m.j)]);
  return out;
}

BivarPolynomial BivarPolynomial::pow(int k) const {
  BivarPolynomial out = constant(1.0);
  for (int n = 0; n < k; ++n) out = out * *this;
  return out;
}

BivarPolynomial& BivarPolynomial::operator+=(const BivarPolynomial& other) {
  for (const auto& [m, c] : other.terms_) terms_[m] += c;
  cleanup();
  return *this;
}

BivarPolynomial& BivarPolynomial::operator-=(const BivarPolynomial& other) {
  for (const auto& [m, c] : other.terms_) terms_[m] -= c;
  cleanup();
  return *this;
}

BivarPolynomial& BivarPolynomial::operator*=(Complex s) {
  for (auto& [m, c] : terms_) c *= s;
  cleanup();
  return *this;
}

BivarPolynomial operator*(const BivarPolynomial& a, const BivarPolynomial& b) {
  BivarPolynomial::Terms out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out[ma * mb] += ca * cb;
  return BivarPolynomial(std::move(out));
}

BivarPolynomial multiply(const BivarPolynomial& p, const BivarPolynomial& q) { return p * q; }

double BivarPolynomial::distance(const BivarPolynomial& other) const {
  double d = 0.0;
  for (const auto& [m, c] : terms_) d = std::max(d, std::abs(c - other.coefficient(m)));
  for (const auto& [m, c] : other.terms_) d = std::max(d, std::abs(c - coefficient(m)));
  return d;
}

std::string BivarPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  double scale = 0.0;
  for (const auto& [m, c] : terms_) scale = std::max(scale, std::abs(c));
  // Real or imaginary parts this small next to the largest coefficient are
  // printed as zero.
  const auto shown = [&](double v) { return std::abs(v) <= 1e-12 * scale ? 0.0 : v; };
  std::ostringstream os;
  os << std::setprecision(12);
  bool first = true;
  // Highest degree first reads like the usual notation.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const double re = shown(c.real()), im = shown(c.imag());
    if (re == 0.0 && im == 0.0) continue;
    const bool unit = m.degree() > 0 && im == 0.0 && std::abs(re) == 1.0;
    if (re != 0.0 && im != 0.0) {
      os << (first ? "" : " + ") << '(' << re << (im < 0 ? " - " : " + ") << std::abs(im) << "i)";
    } else {
      const double v = re != 0.0 ? re : im;
      os << (first ? (v < 0 ? "-" : "") : (v < 0 ? " - " : " + "));
      if (!unit) os << std::abs(v) << (im != 0.0 ? "i" : "");
    }
    if (m.degree() > 0) os << (unit ? "" : "*") << m.label();
    first = false;
  }
  return first ? "0" : os.str();
}

void BivarPolynomial::cleanup(double threshold) {
  std::erase_if(terms_, [threshold](const auto& kv) { return std::abs(kv.second) <= threshold; });
}

// ---------------------------------------------------------------------------
// UnivariatePolynomial

UnivariatePolynomial::UnivariatePolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

void UnivariatePolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double UnivariatePolynomial::coefficient(int k) const {
  return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(k)] : 0.0;
}

double UnivariatePolynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double UnivariatePolynomial::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> UnivariatePolynomial::real_roots(double imag_tol) const {
  // Drop leading coefficients that are roundoff relative to the rest.
  std::vector<double> c = coeffs_;
  const double scale = max_abs_coefficient();
  while (!c.empty() && std::abs(c.back()) <= 1e-13 * scale) c.pop_back();
  std::vector<double> roots;
  if (c.size() < 2) return roots;

  // Exact zero roots are split off so the companion matrix stays small.
  std::size_t zeros = 0;
  while (zeros < c.size() && std::abs(c[zeros]) <= 1e-15 * scale) ++zeros;
  if (zeros > 0) {
    roots.push_back(0.0);
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
  }
  const auto n = static_cast<Eigen::Index>(c.size()) - 1;
  if (n >= 1) {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
    for (Eigen::Index k = 0; k < n; ++k)
      companion(k, n - 1) = -c[static_cast<std::size_t>(k)] / c.back();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    for (const auto& lambda : solver.eigenvalues())
      if (std::abs(lambda.imag()) <= imag_tol * std::max(1.0, std::abs(lambda)))
        roots.push_back(lambda.real());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

UnivariatePolynomial& UnivariatePolynomial::operator+=(const UnivariatePolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

UnivariatePolynomial& UnivariatePolynomial::operator-=(const UnivariatePolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

UnivariatePolynomial operator*(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
  std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial operator*(double s, UnivariatePolynomial a) {
  for (double& c : a.coeffs_) c *= s;
  a.trim();
  return a;
}

// ---------------------------------------------------------------------------
// RealBivarPolynomial

RealBivarPolynomial::RealBivarPolynomial(Terms terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0.0; });
}

double RealBivarPolynomial::coefficient(int px, int py) const {
  const auto it = terms_.find({px, py});
  return it == terms_.end() ? 0.0 : it->second;
}

double RealBivarPolynomial::evaluate(double x, double y) const {
  double sum = 0.0;
  for (const auto& [powers, c] : terms_)
    sum += c * std::pow(x, powers.first) * std::pow(y, powers.second);
  return sum;
}

RealBivarPolynomial RealBivarPolynomial::derivative_x() const {
  Terms out;
  for (const auto& [powers, c] : terms_)
    if (powers.first > 0) out[{powers.first - 1, powers.second}] += c * powers.first;
  return RealBivarPolynomial(std::move(out));
}

RealBivarPolynomial RealBivarPolynomial::derivative_y() const {
  Terms out;
  for (const auto& [powers, c] : terms_)
    if (powers.second > 0) out[{powers.first, powers.second - 1}] += c * powers.second;
  return RealBivarPolynomial(std::move(out));
}

int RealBivarPolynomial::degree_in_y() const {
  int d = -1;
  for (const auto& [powers, c] : terms_) d = std::max(d, powers.second);
  return d;
}

UnivariatePolynomial RealBivarPolynomial::coefficient_in_y(int k) const {
  std::vector<double> coeffs;
  for (const auto& [powers, c] : terms_) {
    if (powers.second != k) continue;
    if (static_cast<int>(coeffs.size()) <= powers.first)
      coeffs.resize(static_cast<std::size_t>(powers.first) + 1, 0.0);
    coeffs[static_cast<std::size_t>(powers.first)] += c;
  }
  return UnivariatePolynomial(std::move(coeffs));
}

RealBivarPolynomial RealBivarPolynomial::swap_xy() const {
  Terms out;
  for (const auto& [powers, c] : terms_) out[{powers.second, powers.first}] = c;
  return RealBivarPolynomial(std::move(out));
}

double RealBivarPolynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [powers, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

std::string RealBivarPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os << std::setprecision(12);
  bool first = true;
  for (const auto& [powers, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    if (powers.first > 0) os << "*x^" << powers.first;
    if (powers.second > 0) os << "*y^" << powers.second;
  }
  return os.str();
}

std::pair<RealBivarPolynomial, RealBivarPolynomial> real_imaginary_parts(const BivarPolynomial& p) {
  // Expand zbar^i z^j = (x - iy)^i (x + iy)^j into complex x,y coefficients.
  std::map<std::pair<int, int>, Complex> expanded;
  const int d = std::max(p.degree(), 0);
  std::vector<std::vector<double>> binom(static_cast<std::size_t>(d) + 1);
  for (int n = 0; n <= d; ++n) {
    auto& row = binom[static_cast<std::size_t>(n)];
    row.assign(static_cast<std::size_t>(n) + 1, 1.0);
    for (int k = 1; k < n; ++k)
      row[static_cast<std::size_t>(k)] = binom[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(k) - 1] +
                                         binom[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(k)];
  }
  // Powers of i and -i are exact.
  const auto i_pow = [](int k) -> Complex {
    static constexpr double re[] = {1.0, 0.0, -1.0, 0.0};
    static constexpr double im[] = {0.0, 1.0, 0.0, -1.0};
    const int r = ((k % 4) + 4) % 4;
    return {re[r], im[r]};
  };
  for (const auto& [m, coeff] : p.terms()) {
    // (x + iy)^j = sum_a C(j,a) x^(j-a) (iy)^a ; (x - iy)^i likewise with -i.
    for (int a = 0; a <= m.j; ++a) {
      const Complex ca = binom[static_cast<std::size_t>(m.j)][static_cast<std::size_t>(a)] * i_pow(a);
      for (int b = 0; b <= m.i; ++b) {
        const Complex cb = binom[static_cast<std::size_t>(m.i)][static_cast<std::size_t>(b)] * i_pow(-b);
        expanded[{m.j - a + m.i - b, a + b}] += coeff * ca * cb;
      }
    }
  }
  RealBivarPolynomial::Terms re, im;
  for (const auto& [powers, c] : expanded) {
    if (std::abs(c.real()) > BivarPolynomial::kCleanup) re[powers] = c.real();
    if (std::abs(c.imag()) > BivarPolynomial::kCleanup) im[powers] = c.imag();
  }
  return {RealBivarPolynomial(std::move(re)), RealBivarPolynomial(std::move(im))};
}

std::vector<std::vector<UnivariatePolynomial>> sylvester_matrix_y(const RealBivarPolynomial& P,
                                                                  const RealBivarPolynomial& Q) {
  if (P.is_zero() || Q.is_zero())
    throw Error(ErrorCode::ZeroLeadingCoefficient, "resultant operand is identically zero");
  const int m = P.degree_in_y();
  const int n = Q.degree_in_y();
  if (m == 0 && n == 0)
    throw Error(ErrorCode::ZeroLeadingCoefficient, "neither resultant operand involves y");
  const auto size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<UnivariatePolynomial>> S(size, std::vector<UnivariatePolynomial>(size));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k)
      S[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = P.coefficient_in_y(m - k);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k)
      S[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] = Q.coefficient_in_y(n - k);
  return S;
}

UnivariatePolynomial sylvester_resultant_y(const RealBivarPolynomial& P,
                                           const RealBivarPolynomial& Q) {
  const auto S = sylvester_matrix_y(P, Q);
  const std::size_t size = S.size();
  // Determinant by expansion over row subsets: minors[mask] is the signed sum
  // over assignments of the rows in `mask` to the first popcount(mask) columns.
  std::vector<UnivariatePolynomial> minors(std::size_t{1} << size);
  minors[0] = UnivariatePolynomial({1.0});
  for (std::uint32_t mask = 0; mask + 1 < (1u << size); ++mask) {
    if (minors[mask].degree() < 0) continue;
    const auto col = static_cast<std::size_t>(std::popcount(mask));
    for (std::size_t row = 0; row < size; ++row) {
      if (mask & (1u << row)) continue;
      const auto& entry = S[row][col];
      if (entry.degree() < 0) continue;
      // Rows already placed with a larger index each add one inversion.
      const int inversions = std::popcount(mask >> (row + 1));
      const UnivariatePolynomial term = entry * minors[mask];
      if (inversions % 2 == 0)
        minors[mask | (1u << row)] += term;
      else
        minors[mask | (1u << row)] -= term;
    }
  }
  return minors.back();
}

}  // namespace tcmp
