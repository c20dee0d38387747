// Shared fixtures for the test executables.
#ifndef TCMP_TESTS_SUPPORT_HPP
#define TCMP_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include "tcmp/moments.hpp"
#include "tcmp/variety.hpp"

namespace tcmp::testing {

inline constexpr Complex I{0.0, 1.0};

// Moments of the first worked example (u = 5/4, t = 2), entries with i <= j.
inline MomentSequence example1() {
  MomentSequence::Entries e;
  e[{0, 0}] = 1.0;
  e[{0, 1}] = 0.0;
  e[{0, 2}] = 11.0 / 14.0 * I;
  e[{1, 1}] = 13.0 / 14.0;
  e[{0, 3}] = 0.0;
  e[{1, 2}] = 0.0;
  e[{0, 4}] = -23.0 / 56.0;
  e[{1, 3}] = 7.0 / 8.0 * I;
  e[{2, 2}] = 59.0 / 56.0;
  e[{0, 5}] = 0.0;
  e[{1, 4}] = 0.0;
  e[{2, 3}] = 0.0;
  e[{0, 6}] = 61.0 / 224.0 * I;
  e[{1, 5}] = -97.0 / 224.0;
  e[{2, 4}] = 227.0 / 224.0 * I;
  e[{3, 3}] = 277.0 / 224.0;
  return MomentSequence::from_entries(6, e);
}

// The second worked example differs in gamma22, gamma24 and gamma15.
inline MomentSequence example2() {
  MomentSequence::Entries e;
  for (const auto& m : graded_monomials(6))
    if (m.i <= m.j) e[{m.i, m.j}] = example1()(m.i, m.j);
  e[{2, 2}] = 21.0 / 20.0;
  e[{2, 4}] = 161.0 / 160.0 * I;
  e[{1, 5}] = -7.0 / 16.0;
  return MomentSequence::from_entries(6, e);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Complex random_complex(std::mt19937_64& rng, double radius = 1.0) {
  return {uniform(rng, -radius, radius), uniform(rng, -radius, radius)};
}

struct UT {
  double u;
  double t;
};

// (u, t) in the open cone with u > 0, kept a relative margin away from the
// edges t = u and t = 2u.
inline UT random_cone_point(std::mt19937_64& rng, double margin = 0.05) {
  const double u = uniform(rng, 0.3, 3.0);
  const double t = u * (1.0 + margin + (1.0 - 2.0 * margin) * uniform(rng, 0.0, 1.0));
  return {u, t};
}

inline std::vector<double> random_densities(std::mt19937_64& rng, std::size_t n, double lo = 0.05,
                                            double hi = 1.0) {
  std::vector<double> rho(n);
  for (auto& r : rho) r = uniform(rng, lo, hi);
  return rho;
}

inline MomentSequence measure_moments(const std::vector<Complex>& atoms, const std::vector<double>& rho,
                                      int order = 6) {
  return MomentSequence::from_atoms(order, atoms, rho);
}

// Moments of a positive measure on the seven zeros of q7(u, t).
inline MomentSequence q7_measure(double u, double t, const std::vector<double>& rho) {
  return measure_moments(variety_q7(cone_params(u, t)).points(), rho);
}

// Keeps gamma_ab for a, b <= 2 from `seq` (with gamma22 shifted by `delta`)
// and fills the rest of a sextic sequence from the q7 column relation:
// gamma_{i, j+3} = i t gamma_{i, j+1} + u gamma_{i+1, j}.
inline MomentSequence q7_extension(const MomentSequence& seq, double u, double t, double delta = 0.0) {
  std::map<std::pair<int, int>, Complex> g;
  const auto get = [&](int i, int j) { return i <= j ? g.at({i, j}) : std::conj(g.at({j, i})); };
  for (int i = 0; i <= 2; ++i)
    for (int j = i; j <= 2; ++j) g[{i, j}] = seq(i, j);
  g[{2, 2}] += delta;
  for (int d = 3; d <= 6; ++d) {
    for (int i = 0; 2 * i <= d; ++i) {
      const int j = d - i;
      if (j < 3) continue;
      g[{i, j}] = I * t * get(i, j - 2) + u * get(i + 1, j - 3);
    }
  }
  g[{3, 3}].imag(0.0);
  MomentSequence::Entries e(g.begin(), g.end());
  return MomentSequence::from_entries(6, e);
}

}  // namespace tcmp::testing

#endif  // TCMP_TESTS_SUPPORT_HPP
