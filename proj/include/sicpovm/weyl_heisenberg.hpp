// weyl_heisenberg.hpp
// Clock, shift and displacement operators of the Weyl-Heisenberg group in
// dimension N, and the group orbit of a fiducial state.
//
// Conventions:
//   Z e_j = w^j e_j,   X e_j = e_{j+1 mod N},   w = e^{2 pi i / N}
//   D_(p1,p2) = t^(p1 p2) X^p1 Z^p2,            t = e^{i pi (N+1) / N}

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sicpovm/linalg.hpp"

namespace sicpovm {

/// Element (p1, p2) of Z_N x Z_N, reduced mod N on construction.
class DisplacementIndex {
 public:
  DisplacementIndex(long long p1, long long p2, std::size_t dim) : dim_(dim) {
    if (dim == 0) throw std::invalid_argument("DisplacementIndex: zero dimension");
    const auto n = static_cast<long long>(dim);
    p1_ = static_cast<std::size_t>(((p1 % n) + n) % n);
    p2_ = static_cast<std::size_t>(((p2 % n) + n) % n);
  }

  std::size_t p1() const { return p1_; }
  std::size_t p2() const { return p2_; }
  std::size_t dim() const { return dim_; }

  /// Position in orbit order (p1 major, p2 fastest).
  std::size_t flat() const { return p1_ * dim_ + p2_; }

  static DisplacementIndex from_flat(std::size_t k, std::size_t dim) {
    return {static_cast<long long>(k / dim), static_cast<long long>(k % dim), dim};
  }

  DisplacementIndex operator-() const {
    return {-static_cast<long long>(p1_), -static_cast<long long>(p2_), dim_};
  }

  friend DisplacementIndex operator+(const DisplacementIndex& a, const DisplacementIndex& b) {
    detail::require_same_dim(a.dim_, b.dim_, "DisplacementIndex sum");
    return {static_cast<long long>(a.p1_ + b.p1_), static_cast<long long>(a.p2_ + b.p2_), a.dim_};
  }

  friend bool operator==(const DisplacementIndex&, const DisplacementIndex&) = default;

 private:
  std::size_t p1_ = 0;
  std::size_t p2_ = 0;
  std::size_t dim_;
};

namespace detail {

inline void require_positive_dim(std::size_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + ": dimension must be >= 1");
}

/// t^(p1 p2) with t = e^{i pi (N+1)/N} = e^{2 pi i (N+1) / 2N}.
inline Complex displacement_phase(const DisplacementIndex& idx) {
  const auto n = static_cast<long long>(idx.dim());
  const auto k = (n + 1) * static_cast<long long>(idx.p1() * idx.p2());
  return root_of_unity(k, 2 * n);
}

}  // namespace detail

inline UnitaryOperator clock(std::size_t n) {
  detail::require_positive_dim(n, "clock");
  std::vector<Complex> d(n);
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = root_of_unity(static_cast<long long>(j), static_cast<long long>(n));
  }
  return UnitaryOperator(SquareMatrix::diagonal(d));
}

inline UnitaryOperator shift(std::size_t n) {
  detail::require_positive_dim(n, "shift");
  std::vector<Complex> e(n * n);
  for (std::size_t j = 0; j < n; ++j) e[((j + 1) % n) * n + j] = 1.0;
  return UnitaryOperator(SquareMatrix(n, std::move(e)));
}

inline UnitaryOperator displacement(const DisplacementIndex& idx) {
  const std::size_t n = idx.dim();
  const Complex phase = detail::displacement_phase(idx);
  // (X^a Z^b)_{(j+a) mod N, j} = w^(b j)
  std::vector<Complex> e(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t row = (j + idx.p1()) % n;
    e[row * n + j] =
        phase * root_of_unity(static_cast<long long>(idx.p2() * j), static_cast<long long>(n));
  }
  return UnitaryOperator(SquareMatrix(n, std::move(e)));
}

/// D_p z without forming the matrix. Accepts any (unnormalized) vector.
inline std::vector<Complex> displace(const DisplacementIndex& idx, std::span<const Complex> z) {
  detail::require_same_dim(idx.dim(), z.size(), "displace");
  const std::size_t n = z.size();
  const Complex phase = detail::displacement_phase(idx);
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[(j + idx.p1()) % n] =
        phase * root_of_unity(static_cast<long long>(idx.p2() * j), static_cast<long long>(n)) *
        z[j];
  }
  return out;
}

/// D_p^dagger z without forming the matrix.
inline std::vector<Complex> displace_adjoint(const DisplacementIndex& idx,
                                             std::span<const Complex> z) {
  detail::require_same_dim(idx.dim(), z.size(), "displace_adjoint");
  const std::size_t n = z.size();
  const Complex phase = std::conj(detail::displacement_phase(idx));
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = phase *
             root_of_unity(-static_cast<long long>(idx.p2() * j), static_cast<long long>(n)) *
             z[(j + idx.p1()) % n];
  }
  return out;
}

/// N^2 states of dimension N in orbit order (p1, p2), p2 fastest. Also used
/// for arbitrary ensembles of N^2 states that are not group orbits.
class SicEnsemble {
 public:
  explicit SicEnsemble(std::vector<StateVector> states) : states_(std::move(states)) {
    if (states_.empty()) throw std::invalid_argument("SicEnsemble: no states");
    dim_ = states_.front().dim();
    if (states_.size() != dim_ * dim_) {
      throw std::invalid_argument("SicEnsemble: expected " + std::to_string(dim_ * dim_) +
                                  " states, got " + std::to_string(states_.size()));
    }
    for (const auto& s : states_) detail::require_same_dim(dim_, s.dim(), "SicEnsemble");
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return states_.size(); }
  const StateVector& operator[](std::size_t k) const { return states_[k]; }
  const StateVector& at(const DisplacementIndex& idx) const { return states_.at(idx.flat()); }
  const StateVector& fiducial() const { return states_.front(); }
  const std::vector<StateVector>& states() const { return states_; }

  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }

 private:
  std::size_t dim_ = 0;
  std::vector<StateVector> states_;
};

inline SicEnsemble orbit(const StateVector& fiducial) {
  const std::size_t n = fiducial.dim();
  std::vector<StateVector> states;
  states.reserve(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    states.push_back(
        StateVector::from_entries(displace(DisplacementIndex::from_flat(k, n), fiducial.entries())));
  }
  return SicEnsemble(std::move(states));
}

}  // namespace sicpovm
