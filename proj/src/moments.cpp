#include "tcmp/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tcmp/error.hpp"

namespace tcmp {

namespace {

std::string index_name(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

MomentSequence MomentSequence::from_entries(int order, const Entries& entries, double symmetry_tol) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "negative order");
  std::vector<Complex> values(monomial_count(order));
  for (const auto& m : graded_monomials(order)) {
    const auto direct = entries.find({m.i, m.j});
    const auto mirror = entries.find({m.j, m.i});
    Complex value;
    if (direct != entries.end()) {
      value = direct->second;
      if (mirror != entries.end()) {
        const Complex expected = std::conj(mirror->second);
        if (std::abs(value - expected) > symmetry_tol * (1.0 + std::abs(value)))
          throw Error(ErrorCode::AsymmetricData,
                      "gamma" + index_name(m.i, m.j) + " is not the conjugate of gamma" +
                          index_name(m.j, m.i));
      }
    } else if (mirror != entries.end()) {
      value = std::conj(mirror->second);
    } else {
      throw Error(ErrorCode::MissingMoment, "moment " + index_name(std::min(m.i, m.j), std::max(m.i, m.j)) +
                                                " is missing");
    }
    if (m.i == m.j) {
      if (std::abs(value.imag()) > symmetry_tol * (1.0 + std::abs(value)))
        throw Error(ErrorCode::AsymmetricData, "gamma" + index_name(m.i, m.j) + " must be real");
      value = {value.real(), 0.0};
    }
    values[m.position()] = value;
  }
  for (const auto& [key, v] : entries)
    if (key.first < 0 || key.second < 0 || key.first + key.second > order)
      throw Error(ErrorCode::DegreeOverflow, "moment " + index_name(key.first, key.second) +
                                                 " exceeds order " + std::to_string(order));
  return MomentSequence(order, std::move(values));
}

MomentSequence MomentSequence::from_atoms(int order, std::span<const Complex> atoms,
                                          std::span<const double> weights) {
  if (atoms.size() != weights.size())
    throw Error(ErrorCode::DimensionMismatch, "atoms and weights differ in length");
  std::vector<Complex> values(monomial_count(order));
  for (const auto& m : graded_monomials(order)) {
    Complex sum{};
    for (std::size_t s = 0; s < atoms.size(); ++s) sum += weights[s] * m.evaluate(atoms[s]);
    values[m.position()] = sum;
  }
  // Diagonal moments are real; the conjugate pairs are exact by construction
  // only up to rounding, so pin them.
  for (const auto& m : graded_monomials(order)) {
    if (m.i == m.j) values[m.position()].imag(0.0);
    if (m.i > m.j) values[m.position()] = std::conj(values[m.conjugate().position()]);
  }
  return MomentSequence(order, std::move(values));
}

MomentSequence MomentSequence::from_graded(int order, std::vector<Complex> values) {
  if (values.size() != monomial_count(order))
    throw Error(ErrorCode::DimensionMismatch, "graded vector has the wrong length");
  Entries entries;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const auto m = monomial_at(k);
    entries[{m.i, m.j}] = values[k];
  }
  return from_entries(order, entries);
}

Complex MomentSequence::operator()(int i, int j) const {
  if (i < 0 || j < 0 || i + j > order_)
    throw Error(ErrorCode::DegreeOverflow, "moment " + index_name(i, j) + " exceeds order " +
                                               std::to_string(order_));
  return values_[MonomialIndex{i, j}.position()];
}

double MomentSequence::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

Eigen::MatrixXcd MomentMatrix::block(int a, int b) const {
  const auto row0 = static_cast<Eigen::Index>(monomial_count(a - 1));
  const auto col0 = static_cast<Eigen::Index>(monomial_count(b - 1));
  return entries_.block(row0, col0, a + 1, b + 1);
}

Eigen::VectorXcd MomentMatrix::column(MonomialIndex m) const {
  return entries_.col(static_cast<Eigen::Index>(m.position()));
}

MomentMatrix build_moment_matrix(const MomentSequence& seq, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative matrix order");
  if (seq.order() < 2 * n)
    throw Error(ErrorCode::MissingMoment, "M(" + std::to_string(n) + ") needs moments of order " +
                                              std::to_string(2 * n) + ", sequence has order " +
                                              std::to_string(seq.order()));
  const auto monomials = graded_monomials(n);
  const auto side = static_cast<Eigen::Index>(monomials.size());
  Eigen::MatrixXcd entries(side, side);
  for (Eigen::Index r = 0; r < side; ++r) {
    const auto& row = monomials[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < side; ++c) {
      const auto& col = monomials[static_cast<std::size_t>(c)];
      entries(r, c) = seq(row.j + col.i, row.i + col.j);
    }
  }
  return MomentMatrix(n, std::move(entries));
}

Complex riesz_functional(const MomentSequence& seq, const BivarPolynomial& p) {
  if (p.degree() > seq.order())
    throw Error(ErrorCode::DegreeOverflow, "polynomial degree " + std::to_string(p.degree()) +
                                               " exceeds sequence order " + std::to_string(seq.order()));
  Complex sum{};
  for (const auto& [m, c] : p.terms()) sum += c * seq.at(m);
  return sum;
}

Eigen::VectorXcd functional_calculus_column(const MomentMatrix& M, const BivarPolynomial& p) {
  return M.entries() * p.to_vector(M.n());
}

}  // namespace tcmp
