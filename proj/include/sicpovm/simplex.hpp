// simplex.hpp
// Moment map of the diagonal torus action on complex projective space, its
// simplex image, and the regular-simplex geometry of SIC projectors in the
// space of unit-trace Hermitian matrices.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sicpovm/linalg.hpp"
#include "sicpovm/weyl_heisenberg.hpp"

namespace sicpovm {

inline constexpr double kMomentSumTolerance = 1e-12;
inline constexpr double kDefaultRegularityTolerance = 1e-7;
inline constexpr double kDefaultOutsphereTolerance = 1e-9;

/// Homogeneous coordinates [z_0 : ... : z_{M-1}].
class ProjectivePoint {
 public:
  explicit ProjectivePoint(std::vector<Complex> rep) : rep_(std::move(rep)) {
    if (rep_.empty()) throw std::invalid_argument("ProjectivePoint: no coordinates");
    detail::require_finite(rep_, "ProjectivePoint");
    double s = 0.0;
    for (const auto& z : rep_) s += std::norm(z);
    if (!(s > 0.0)) throw std::invalid_argument("ProjectivePoint: zero vector");
  }

  std::size_t size() const { return rep_.size(); }
  const Complex& operator[](std::size_t k) const { return rep_[k]; }
  std::span<const Complex> rep() const { return rep_; }

 private:
  std::vector<Complex> rep_;
};

/// A point of the scaled simplex {x >= 0, sum x = 1/2}.
class MomentImage {
 public:
  explicit MomentImage(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw std::invalid_argument("MomentImage: no coordinates");
    double s = 0.0;
    for (double x : coords_) {
      if (!std::isfinite(x) || x < 0.0 || x > 0.5 + kMomentSumTolerance) {
        throw std::invalid_argument("MomentImage: coordinate outside [0, 1/2]");
      }
      s += x;
    }
    if (std::abs(s - 0.5) > kMomentSumTolerance) {
      throw std::invalid_argument("MomentImage: coordinates do not sum to 1/2");
    }
  }

  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t k) const { return coords_[k]; }
  const std::vector<double>& coords() const { return coords_; }

 private:
  std::vector<double> coords_;
};

/// mu([z]) = 1/2 (|z_0|^2, ..., |z_{M-1}|^2) / |z|^2
inline MomentImage moment_map(const ProjectivePoint& z) {
  double s = 0.0;
  for (const auto& c : z.rep()) s += std::norm(c);
  std::vector<double> x(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) x[k] = 0.5 * std::norm(z[k]) / s;
  return MomentImage(std::move(x));
}

/// Images of the torus fixed points (the coordinate axes): 1/2 e_k.
inline std::vector<MomentImage> vertex_images(std::size_t m) {
  if (m == 0) throw std::invalid_argument("vertex_images: M must be >= 1");
  std::vector<MomentImage> out;
  out.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<Complex> axis(m);
    axis[k] = 1.0;
    out.push_back(moment_map(ProjectivePoint(std::move(axis))));
  }
  return out;
}

inline bool simplex_membership(std::span<const double> x, double tol) {
  if (x.empty()) return false;
  double s = 0.0;
  for (double v : x) {
    if (!(v >= -tol)) return false;
    s += v;
  }
  return std::abs(s - 0.5) <= tol;
}

/// z_k = sqrt(2 x_k), so that moment_map(simplex_preimage(x)) = x.
inline ProjectivePoint simplex_preimage(const MomentImage& x) {
  std::vector<Complex> z(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) z[k] = std::sqrt(2.0 * x[k]);
  return ProjectivePoint(std::move(z));
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("squared_distance: size mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

/// Coordinates of a Hermitian matrix in an orthonormal basis (with respect
/// to Tr(AB)) of the N x N Hermitian matrices, in this order:
///   0:                 I / sqrt(N)
///   then for j < k:    (E_jk + E_kj) / sqrt(2)           (lexicographic)
///   then for j < k:    (-i E_jk + i E_kj) / sqrt(2)      (lexicographic)
///   then l = 1..N-1:   (E_00 + ... + E_{l-1,l-1} - l E_ll) / sqrt(l (l+1))
/// Euclidean inner products of coordinates equal Tr(AB), so the squared
/// Euclidean distance is Tr(A - B)^2 = 2 hs_distance_sq(A, B).
struct HermitianCoords {
  std::vector<double> vec;
};

inline HermitianCoords hermitian_coords(const HermitianMatrix& a) {
  const std::size_t n = a.dim();
  std::vector<double> c;
  c.reserve(n * n);
  c.push_back(a.trace().real() / std::sqrt(static_cast<double>(n)));
  const double r2 = std::sqrt(2.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) c.push_back(r2 * a(j, k).real());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) c.push_back(-r2 * a(j, k).imag());
  for (std::size_t l = 1; l < n; ++l) {
    double s = 0.0;
    for (std::size_t k = 0; k < l; ++k) s += a(k, k).real();
    s -= static_cast<double>(l) * a(l, l).real();
    c.push_back(s / std::sqrt(static_cast<double>(l * (l + 1))));
  }
  return {std::move(c)};
}

/// Hilbert-Schmidt distance from any pure-state projector to I/N.
inline double outsphere_radius(std::size_t n) {
  if (n == 0) throw std::invalid_argument("outsphere_radius: N must be >= 1");
  const double d = static_cast<double>(n);
  return std::sqrt((d - 1.0) / (2.0 * d));
}

struct SimplexReport {
  std::size_t dim = 0;
  double min_edge_sq = 0.0;  // pairwise hs_distance_sq
  double max_edge_sq = 0.0;
  double mean_edge_sq = 0.0;
  double expected_edge_sq = 0.0;  // N/(N+1)
  double regularity_tolerance = kDefaultRegularityTolerance;
  bool regular = false;
  double outsphere_radius = 0.0;
  double max_outsphere_deviation = 0.0;  // max_i |d(P_i, I/N) - radius|
  double outsphere_tolerance = kDefaultOutsphereTolerance;
  bool on_outsphere = false;

  friend bool operator==(const SimplexReport&, const SimplexReport&) = default;
};

inline SimplexReport sic_simplex_report(const SicEnsemble& ens,
                                        double regularity_tol = kDefaultRegularityTolerance,
                                        double outsphere_tol = kDefaultOutsphereTolerance) {
  const std::size_t n = ens.dim();
  const std::size_t m = ens.size();
  std::vector<HermitianCoords> pts;
  pts.reserve(m);
  for (const auto& psi : ens) pts.push_back(hermitian_coords(projector(psi)));
  const auto centre = hermitian_coords(DensityMatrix::maximally_mixed(n));

  SimplexReport r;
  r.dim = n;
  r.expected_edge_sq = static_cast<double>(n) / (static_cast<double>(n) + 1.0);
  r.regularity_tolerance = regularity_tol;
  r.outsphere_tolerance = outsphere_tol;
  r.outsphere_radius = outsphere_radius(n);

  double sum = 0.0;
  std::size_t count = 0;
  r.min_edge_sq = m > 1 ? 1e300 : 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double d2 = 0.5 * squared_distance(pts[i].vec, pts[j].vec);
      r.min_edge_sq = std::min(r.min_edge_sq, d2);
      r.max_edge_sq = std::max(r.max_edge_sq, d2);
      sum += d2;
      ++count;
    }
  }
  r.mean_edge_sq = count ? sum / static_cast<double>(count) : 0.0;
  r.regular = r.max_edge_sq - r.min_edge_sq <= regularity_tol;

  for (const auto& p : pts) {
    const double d = std::sqrt(0.5 * squared_distance(p.vec, centre.vec));
    r.max_outsphere_deviation = std::max(r.max_outsphere_deviation, std::abs(d - r.outsphere_radius));
  }
  r.on_outsphere = r.max_outsphere_deviation <= outsphere_tol;
  return r;
}

}  // namespace sicpovm
