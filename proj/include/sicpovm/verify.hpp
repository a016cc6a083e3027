// verify.hpp
// Certification of an N^2-state ensemble against the SIC-POVM conditions:
// equal pairwise overlaps 1/(N+1), resolution of the identity, and
// informational completeness.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "sicpovm/linalg.hpp"
#include "sicpovm/weyl_heisenberg.hpp"

namespace sicpovm {

inline constexpr double kDefaultVerifyTolerance = 1e-9;
inline constexpr double kRankRelativeThreshold = 1e-10;

/// Row-major real matrix of squared overlaps |<psi_i|psi_j>|^2.
struct OverlapMatrix {
  std::size_t size = 0;
  std::vector<double> entries;

  double operator()(std::size_t i, std::size_t j) const { return entries[i * size + j]; }
};

/// The off-diagonal pair whose overlap is farthest from 1/(N+1).
struct WorstPair {
  std::size_t i = 0;
  std::size_t j = 0;
  double overlap = 0.0;

  friend bool operator==(const WorstPair&, const WorstPair&) = default;
};

struct VerificationReport {
  std::size_t dim = 0;
  double tolerance = kDefaultVerifyTolerance;
  double equiangularity_residual = 0.0;
  double identity_residual = 0.0;
  std::size_t completeness_rank = 0;
  double frame_potential = 0.0;
  WorstPair max_overlap_ij;
  bool pass = false;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// 2N^3/(N+1): the frame potential of any SIC, and the minimum over all
/// ensembles of N^2 unit vectors in dimension N.
inline double sic_frame_potential(std::size_t n) {
  const double d = static_cast<double>(n);
  return 2.0 * d * d * d / (d + 1.0);
}

inline OverlapMatrix overlap_matrix(const SicEnsemble& ens) {
  const std::size_t m = ens.size();
  OverlapMatrix g{m, std::vector<double>(m * m)};
  for (std::size_t i = 0; i < m; ++i) {
    g.entries[i * m + i] = std::norm(inner(ens[i], ens[i]));
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v = std::norm(inner(ens[i], ens[j]));
      g.entries[i * m + j] = v;
      g.entries[j * m + i] = v;
    }
  }
  return g;
}

namespace detail {

inline WorstPair worst_pair(const OverlapMatrix& g, std::size_t dim) {
  const double target = 1.0 / (static_cast<double>(dim) + 1.0);
  WorstPair worst;
  double worst_dev = -1.0;
  for (std::size_t i = 0; i < g.size; ++i) {
    for (std::size_t j = i + 1; j < g.size; ++j) {
      const double dev = std::abs(g(i, j) - target);
      if (dev > worst_dev) {
        worst_dev = dev;
        worst = {i, j, g(i, j)};
      }
    }
  }
  return worst;
}

inline double equiangularity_residual(const OverlapMatrix& g, std::size_t dim) {
  if (g.size < 2) return 0.0;
  const auto w = worst_pair(g, dim);
  return std::abs(w.overlap - 1.0 / (static_cast<double>(dim) + 1.0));
}

inline double frame_potential(const OverlapMatrix& g) {
  double s = 0.0;
  for (double v : g.entries) s += v * v;
  return s;
}

/// Tr(P_i P_j) = |<psi_i|psi_j>|^2, so the projector Gram matrix is the
/// overlap matrix itself. It is symmetric PSD, so its singular values are
/// the absolute eigenvalues.
inline std::size_t gram_rank(const OverlapMatrix& g) {
  const auto eig = symmetric_eigenvalues(g.entries, g.size);
  double largest = 0.0;
  for (double e : eig) largest = std::max(largest, std::abs(e));
  std::size_t rank = 0;
  for (double e : eig)
    if (std::abs(e) > kRankRelativeThreshold * largest) ++rank;
  return rank;
}

}  // namespace detail

inline double equiangularity_residual(const SicEnsemble& ens) {
  return detail::equiangularity_residual(overlap_matrix(ens), ens.dim());
}

/// Hilbert-Schmidt norm of (1/N) sum_i |psi_i><psi_i| - I.
inline double identity_residual(const SicEnsemble& ens) {
  const std::size_t n = ens.dim();
  std::vector<Complex> m(n * n);
  const double w = 1.0 / static_cast<double>(n);
  for (const auto& psi : ens) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i * n + j] += w * psi[i] * std::conj(psi[j]);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n + i] -= 1.0;
    for (std::size_t j = 0; j < n; ++j) s += std::norm(m[i * n + j]);
  }
  return std::sqrt(s);
}

inline std::size_t info_completeness_rank(const SicEnsemble& ens) {
  return detail::gram_rank(overlap_matrix(ens));
}

/// sum over all ordered pairs (including i = j) of |<psi_i|psi_j>|^4.
inline double frame_potential(const SicEnsemble& ens) {
  return detail::frame_potential(overlap_matrix(ens));
}

inline VerificationReport verify(const SicEnsemble& ens, double tol = kDefaultVerifyTolerance) {
  if (!(tol > 0.0)) throw std::invalid_argument("verify: tolerance must be positive");
  const auto g = overlap_matrix(ens);
  VerificationReport r;
  r.dim = ens.dim();
  r.tolerance = tol;
  r.equiangularity_residual = detail::equiangularity_residual(g, ens.dim());
  r.identity_residual = identity_residual(ens);
  r.completeness_rank = detail::gram_rank(g);
  r.frame_potential = detail::frame_potential(g);
  r.max_overlap_ij = g.size > 1 ? detail::worst_pair(g, ens.dim()) : WorstPair{};
  r.pass = r.equiangularity_residual <= tol && r.identity_residual <= tol &&
           r.completeness_rank == ens.size();
  return r;
}

}  // namespace sicpovm
