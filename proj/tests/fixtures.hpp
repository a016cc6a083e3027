// Shared test fixtures: known fiducials, seeded random states and unitaries,
// and a brute-force overlap oracle that builds X^a Z^b by repeated matrix
// multiplication instead of going through displacement()/orbit().

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "sicpovm/linalg.hpp"

namespace sicpovm::testing {

/// Bloch vector (1,1,1)/sqrt(3).
inline StateVector fiducial_n2() {
  const double r3 = 1.0 / std::sqrt(3.0);
  return StateVector::normalized(
      {std::sqrt((1.0 + r3) / 2.0), std::polar(std::sqrt((1.0 - r3) / 2.0), std::numbers::pi / 4)});
}

/// (0, 1, -1)/sqrt(2)
inline StateVector fiducial_n3() {
  return StateVector::normalized({0.0, 1.0, -1.0});
}

inline StateVector random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return StateVector::normalized(std::move(v));
}

/// Gram-Schmidt on Gaussian columns.
inline UnitaryOperator random_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<std::vector<Complex>> cols(n, std::vector<Complex>(n));
  for (auto& c : cols)
    for (auto& z : c) z = {g(rng), g(rng)};
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      Complex d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += std::conj(cols[j][i]) * cols[k][i];
      for (std::size_t i = 0; i < n; ++i) cols[k][i] -= d * cols[j][i];
    }
    double nrm = 0.0;
    for (auto& z : cols[k]) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    for (auto& z : cols[k]) z /= nrm;
  }
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = cols[j][i];
  return UnitaryOperator(SquareMatrix(n, std::move(e)));
}

inline SquareMatrix brute_clock(std::size_t n) {
  std::vector<Complex> e(n * n);
  for (std::size_t j = 0; j < n; ++j) e[j * n + j] = std::polar(1.0, 2.0 * std::numbers::pi * j / n);
  return SquareMatrix(n, std::move(e));
}

inline SquareMatrix brute_shift(std::size_t n) {
  std::vector<Complex> e(n * n);
  for (std::size_t j = 0; j < n; ++j) e[((j + 1) % n) * n + j] = 1.0;
  return SquareMatrix(n, std::move(e));
}

inline SquareMatrix brute_power(const SquareMatrix& m, std::size_t k) {
  auto r = SquareMatrix::identity(m.dim());
  for (std::size_t i = 0; i < k; ++i) r = r * m;
  return r;
}

/// All N^2 states X^a Z^b psi (no phase convention), ordered (a, b) with b fastest.
inline std::vector<std::vector<Complex>> brute_orbit(const StateVector& psi) {
  const std::size_t n = psi.dim();
  const auto x = brute_shift(n);
  const auto z = brute_clock(n);
  std::vector<std::vector<Complex>> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto d = brute_power(x, a) * brute_power(z, b);
      std::vector<Complex> v(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v[i] += d(i, j) * psi[j];
      out.push_back(std::move(v));
    }
  return out;
}

inline double brute_overlap(const std::vector<Complex>& u, const std::vector<Complex>& v) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return std::norm(s);
}

/// max over pairs i != j of | |<psi_i|psi_j>|^2 - 1/(N+1) | for the brute-force orbit.
inline double brute_equiangularity(const StateVector& psi) {
  const auto orb = brute_orbit(psi);
  const double target = 1.0 / (psi.dim() + 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < orb.size(); ++i)
    for (std::size_t j = i + 1; j < orb.size(); ++j)
      worst = std::max(worst, std::abs(brute_overlap(orb[i], orb[j]) - target));
  return worst;
}

}  // namespace sicpovm::testing
