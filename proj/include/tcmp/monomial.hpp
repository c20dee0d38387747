#ifndef TCMP_MONOMIAL_HPP
#define TCMP_MONOMIAL_HPP

#include <compare>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace tcmp {

using Complex = std::complex<double>;

/// The monomial zbar^i z^j.
///
/// Monomials are laid out in graded order: by total degree, and within a
/// degree by ascending power of zbar, i.e. z^d, zbar z^(d-1), ..., zbar^d.
/// For degree <= 3 this is 1, Z, Zb, Z^2, ZbZ, Zb^2, Z^3, ZbZ^2, Zb^2Z, Zb^3.
struct MonomialIndex {
  int i = 0;  // power of zbar
  int j = 0;  // power of z

  constexpr int degree() const noexcept { return i + j; }

  /// Position in the graded order.
  constexpr std::size_t position() const noexcept {
    const auto d = static_cast<std::size_t>(degree());
    return d * (d + 1) / 2 + static_cast<std::size_t>(i);
  }

  constexpr MonomialIndex conjugate() const noexcept { return {j, i}; }

  constexpr MonomialIndex operator*(MonomialIndex other) const noexcept {
    return {i + other.i, j + other.j};
  }

  /// Orders by graded position.
  constexpr std::strong_ordering operator<=>(const MonomialIndex& other) const noexcept {
    return position() <=> other.position();
  }
  constexpr bool operator==(const MonomialIndex& other) const noexcept = default;

  /// zbar^i z^j at the point z.
  Complex evaluate(Complex z) const;

  /// Human-readable label in the column notation, e.g. "Zb^2Z".
  std::string label() const;
};

/// Number of monomials of total degree <= n.
constexpr std::size_t monomial_count(int n) noexcept {
  return n < 0 ? 0 : static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 2) / 2;
}

/// Inverse of MonomialIndex::position.
MonomialIndex monomial_at(std::size_t position);

/// All monomials of degree <= n in graded order.
std::vector<MonomialIndex> graded_monomials(int n);

}  // namespace tcmp

#endif  // TCMP_MONOMIAL_HPP
