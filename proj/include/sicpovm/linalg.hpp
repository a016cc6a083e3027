// linalg.hpp
// Small dense complex vectors and matrices: pure states, Hermitian and
// density matrices, unitaries, the Hilbert-Schmidt trace metric and a
// cyclic Jacobi eigenvalue solver.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sicpovm {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;

namespace detail {

inline bool finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(std::span<const Complex> entries, const char* what) {
  for (const auto& z : entries) {
    if (!finite(z)) {
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
  }
}

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace detail

/// e^{2 pi i k / n}, exact at quarter turns.
inline Complex root_of_unity(long long k, long long n) {
  if (n <= 0) throw std::invalid_argument("root_of_unity: n must be positive");
  k %= n;
  if (k < 0) k += n;
  if (4 * k % n == 0) {
    switch (4 * k / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(n));
}

/// Unit-norm complex vector. Construction either validates the norm or
/// normalizes explicitly; there is no silent fix-up.
class StateVector {
 public:
  /// Accepts entries whose squared norm is 1 within kNormTolerance.
  static StateVector from_entries(std::vector<Complex> entries) {
    check_shape(entries);
    double n2 = norm_sq(entries);
    if (std::abs(n2 - 1.0) > kNormTolerance) {
      throw std::invalid_argument("StateVector: squared norm " + std::to_string(n2) +
                                  " is not 1");
    }
    return StateVector(std::move(entries));
  }

  /// Rescales any nonzero finite vector to unit norm.
  static StateVector normalized(std::vector<Complex> entries) {
    check_shape(entries);
    double n = std::sqrt(norm_sq(entries));
    if (!(n > 0.0)) throw std::invalid_argument("StateVector: zero vector");
    for (auto& z : entries) z /= n;
    return StateVector(std::move(entries));
  }

  /// Interleaved (re, im) parameters, normalized.
  static StateVector from_params(std::span<const double> params) {
    if (params.size() % 2 != 0) {
      throw std::invalid_argument("StateVector: odd parameter count");
    }
    std::vector<Complex> entries(params.size() / 2);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      entries[k] = {params[2 * k], params[2 * k + 1]};
    }
    return normalized(std::move(entries));
  }

  static StateVector basis(std::size_t dim, std::size_t k) {
    if (k >= dim) throw std::invalid_argument("StateVector::basis: index out of range");
    std::vector<Complex> e(dim);
    e[k] = 1.0;
    return StateVector(std::move(e));
  }

  std::size_t dim() const { return entries_.size(); }
  const Complex& operator[](std::size_t k) const { return entries_[k]; }
  std::span<const Complex> entries() const { return entries_; }

  std::vector<double> params() const {
    std::vector<double> p(2 * dim());
    for (std::size_t k = 0; k < dim(); ++k) {
      p[2 * k] = entries_[k].real();
      p[2 * k + 1] = entries_[k].imag();
    }
    return p;
  }

  StateVector with_phase(double theta) const {
    auto e = entries_;
    const Complex ph = std::polar(1.0, theta);
    for (auto& z : e) z *= ph;
    return StateVector(std::move(e));
  }

 private:
  explicit StateVector(std::vector<Complex> entries) : entries_(std::move(entries)) {}

  static void check_shape(const std::vector<Complex>& entries) {
    if (entries.empty()) throw std::invalid_argument("StateVector: empty");
    detail::require_finite(entries, "StateVector");
  }

  static double norm_sq(const std::vector<Complex>& entries) {
    double s = 0.0;
    for (const auto& z : entries) s += std::norm(z);
    return s;
  }

  std::vector<Complex> entries_;
};

/// dim x dim complex matrix, row-major.
class SquareMatrix {
 public:
  SquareMatrix(std::size_t dim, std::vector<Complex> entries)
      : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0) throw std::invalid_argument("SquareMatrix: zero dimension");
    if (entries_.size() != dim_ * dim_) {
      throw std::invalid_argument("SquareMatrix: expected " + std::to_string(dim_ * dim_) +
                                  " entries");
    }
    detail::require_finite(entries_, "SquareMatrix");
  }

  static SquareMatrix zero(std::size_t dim) {
    return SquareMatrix(dim, std::vector<Complex>(dim * dim));
  }

  static SquareMatrix identity(std::size_t dim) {
    auto m = zero(dim);
    for (std::size_t i = 0; i < dim; ++i) m.entries_[i * dim + i] = 1.0;
    return m;
  }

  static SquareMatrix diagonal(std::span<const Complex> d) {
    auto m = zero(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.entries_[i * d.size() + i] = d[i];
    return m;
  }

  std::size_t dim() const { return dim_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  std::span<const Complex> entries() const { return entries_; }

  SquareMatrix adjoint() const {
    std::vector<Complex> e(entries_.size());
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) e[j * dim_ + i] = std::conj(entries_[i * dim_ + j]);
    return SquareMatrix(dim_, std::move(e));
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i];
    return t;
  }

  /// Largest entry magnitude.
  double max_abs() const {
    double m = 0.0;
    for (const auto& z : entries_) m = std::max(m, std::abs(z));
    return m;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    detail::require_same_dim(a.dim_, b.dim_, "matrix product");
    const std::size_t n = a.dim_;
    std::vector<Complex> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const Complex aik = a.entries_[i * n + k];
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < n; ++j) e[i * n + j] += aik * b.entries_[k * n + j];
      }
    return SquareMatrix(n, std::move(e));
  }

  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
    detail::require_same_dim(a.dim_, b.dim_, "matrix sum");
    auto e = a.entries_;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries_[i];
    return SquareMatrix(a.dim_, std::move(e));
  }

  friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
    detail::require_same_dim(a.dim_, b.dim_, "matrix difference");
    auto e = a.entries_;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= b.entries_[i];
    return SquareMatrix(a.dim_, std::move(e));
  }

  friend SquareMatrix operator*(Complex s, const SquareMatrix& a) {
    auto e = a.entries_;
    for (auto& z : e) z *= s;
    return SquareMatrix(a.dim_, std::move(e));
  }

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

/// max_ij |A_ij - B_ij|
inline double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
  return (a - b).max_abs();
}

class HermitianMatrix : public SquareMatrix {
 public:
  explicit HermitianMatrix(SquareMatrix m) : SquareMatrix(std::move(m)) {
    if (max_abs_diff(*this, adjoint()) > kHermitianTolerance) {
      throw std::invalid_argument("HermitianMatrix: input is not Hermitian");
    }
  }
};

/// (A + A^dagger) / 2. The only way a nearly-Hermitian matrix becomes one.
inline HermitianMatrix symmetrize(const SquareMatrix& a) {
  return HermitianMatrix(Complex{0.5} * (a + a.adjoint()));
}

inline double min_eigenvalue(const HermitianMatrix& a);

/// Hermitian, unit trace, positive semidefinite.
class DensityMatrix : public HermitianMatrix {
 public:
  explicit DensityMatrix(SquareMatrix m) : HermitianMatrix(std::move(m)) {
    if (std::abs(trace() - Complex{1.0}) > kTraceTolerance) {
      throw std::invalid_argument("DensityMatrix: trace is not 1");
    }
    if (min_eigenvalue(*this) < -kPsdTolerance) {
      throw std::invalid_argument("DensityMatrix: negative eigenvalue");
    }
  }

  static DensityMatrix maximally_mixed(std::size_t dim) {
    return DensityMatrix(Complex{1.0 / static_cast<double>(dim)} * SquareMatrix::identity(dim));
  }
};

class UnitaryOperator : public SquareMatrix {
 public:
  explicit UnitaryOperator(SquareMatrix m) : SquareMatrix(std::move(m)) {
    if (max_abs_diff(SquareMatrix::adjoint() * *this, SquareMatrix::identity(dim())) >
        kUnitaryTolerance) {
      throw std::invalid_argument("UnitaryOperator: U^dagger U != I");
    }
  }

  static UnitaryOperator identity(std::size_t dim) {
    return UnitaryOperator(SquareMatrix::identity(dim));
  }

  UnitaryOperator adjoint() const { return UnitaryOperator(SquareMatrix::adjoint()); }

  friend UnitaryOperator operator*(const UnitaryOperator& a, const UnitaryOperator& b) {
    return UnitaryOperator(static_cast<const SquareMatrix&>(a) * static_cast<const SquareMatrix&>(b));
  }
};

/// <u|v>, conjugate-linear in u.
inline Complex inner(const StateVector& u, const StateVector& v) {
  detail::require_same_dim(u.dim(), v.dim(), "inner");
  Complex s = 0.0;
  for (std::size_t k = 0; k < u.dim(); ++k) s += std::conj(u[k]) * v[k];
  return s;
}

/// |psi><psi|
inline DensityMatrix projector(const StateVector& psi) {
  const std::size_t n = psi.dim();
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = psi[i] * std::conj(psi[j]);
    e[i * n + i] = std::norm(psi[i]);
  }
  return DensityMatrix(SquareMatrix(n, std::move(e)));
}

/// d^2(A, B) = 1/2 Tr (A - B)^2. For Hermitian arguments this is half the
/// squared Frobenius norm of the difference.
inline double hs_distance_sq(const HermitianMatrix& a, const HermitianMatrix& b) {
  detail::require_same_dim(a.dim(), b.dim(), "hs_distance_sq");
  double s = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) s += std::norm(a.entries()[i] - b.entries()[i]);
  return 0.5 * s;
}

/// Tr(AB), real for Hermitian arguments.
inline double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  detail::require_same_dim(a.dim(), b.dim(), "trace_product");
  const std::size_t n = a.dim();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += (a(i, j) * b(j, i)).real();
  return s;
}

inline StateVector apply(const SquareMatrix& u, const StateVector& psi) {
  detail::require_same_dim(u.dim(), psi.dim(), "apply");
  const std::size_t n = psi.dim();
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += u(i, j) * psi[j];
  // Unitarity keeps the norm at 1 up to rounding; renormalizing would hide a
  // non-unitary input, so validate instead.
  return StateVector::from_entries(std::move(out));
}

/// U A U^dagger
inline HermitianMatrix conjugate(const UnitaryOperator& u, const HermitianMatrix& a) {
  detail::require_same_dim(u.dim(), a.dim(), "conjugate");
  const SquareMatrix& um = u;
  return symmetrize(um * a * um.adjoint());
}

inline DensityMatrix conjugate(const UnitaryOperator& u, const DensityMatrix& rho) {
  return DensityMatrix(conjugate(u, static_cast<const HermitianMatrix&>(rho)));
}

/// Eigenvalues of a real symmetric matrix (row-major, n x n) by cyclic
/// Jacobi rotations, sorted ascending. Sweeps stop once the off-diagonal
/// Frobenius norm drops below 1e-13 (scaled by the matrix norm when that
/// exceeds 1).
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
  if (a.size() != n * n) throw std::invalid_argument("symmetric_eigenvalues: bad shape");
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
  };
  double fro = 0.0;
  for (double x : a) fro += x * x;
  const double threshold = 1e-13 * std::max(1.0, std::sqrt(fro));

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm() >= threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

/// Eigenvalues of a Hermitian matrix, ascending. Uses the real embedding
/// [[Re A, -Im A], [Im A, Re A]], whose spectrum is that of A doubled.
inline std::vector<double> eigenvalues(const HermitianMatrix& a) {
  const std::size_t n = a.dim();
  const std::size_t m = 2 * n;
  std::vector<double> r(m * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = a(i, j);
      r[i * m + j] = z.real();
      r[(i + n) * m + (j + n)] = z.real();
      r[i * m + (j + n)] = -z.imag();
      r[(i + n) * m + j] = z.imag();
    }
  }
  auto doubled = symmetric_eigenvalues(std::move(r), m);
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  return eig;
}

inline double min_eigenvalue(const HermitianMatrix& a) { return eigenvalues(a).front(); }

}  // namespace sicpovm
