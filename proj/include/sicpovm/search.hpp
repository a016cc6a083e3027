// search.hpp
// Numerical search for Weyl-Heisenberg covariant SIC fiducials.
//
// A state psi is a fiducial exactly when every nontrivial displacement has
// |<psi|D_p psi>|^2 = 1/(N+1). The search minimizes the least-squares
// deviation from that condition by gradient descent with Armijo
// backtracking over 2N raw real parameters (re/im interleaved); the state
// is normalized inside the loss, so the optimizer is unconstrained.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "sicpovm/linalg.hpp"
#include "sicpovm/weyl_heisenberg.hpp"

namespace sicpovm {

struct SearchConfig {
  std::size_t dim = 2;
  std::uint64_t seed = 1;
  std::size_t restarts = 1;
  std::size_t max_iterations = 200000;
  double loss_tolerance = 1e-20;
  double initial_step = 0.1;
  double backtracking_factor = 0.5;
  double armijo_c = 1e-4;
  double min_step = 1e-14;
  double refine_below = 1e-8;
  std::size_t refine_iterations = 200;

  void validate() const {
    if (dim == 0) throw std::invalid_argument("SearchConfig: dim must be >= 1");
    if (restarts == 0) throw std::invalid_argument("SearchConfig: restarts must be >= 1");
    if (max_iterations == 0) throw std::invalid_argument("SearchConfig: max_iterations must be >= 1");
    if (!(loss_tolerance > 0.0)) throw std::invalid_argument("SearchConfig: loss_tolerance must be > 0");
    if (!(initial_step > 0.0)) throw std::invalid_argument("SearchConfig: initial_step must be > 0");
    if (!(backtracking_factor > 0.0 && backtracking_factor < 1.0))
      throw std::invalid_argument("SearchConfig: backtracking_factor must be in (0, 1)");
    if (!(min_step > 0.0)) throw std::invalid_argument("SearchConfig: min_step must be > 0");
  }
};

struct SearchResult {
  StateVector fiducial;
  double loss = 0.0;
  std::size_t iterations_used = 0;
  std::size_t restart_index = 0;
  bool converged = false;
};

namespace detail {

inline double loss_from_vector(std::span<const Complex> z) {
  const std::size_t n = z.size();
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  if (!(s > 0.0)) throw std::invalid_argument("loss: zero vector");
  const double target = 1.0 / (static_cast<double>(n) + 1.0);
  double total = 0.0;
  for (std::size_t k = 1; k < n * n; ++k) {
    const auto dz = displace(DisplacementIndex::from_flat(k, n), z);
    Complex o = 0.0;
    for (std::size_t j = 0; j < n; ++j) o += std::conj(z[j]) * dz[j];
    const double r = std::norm(o) / (s * s) - target;
    total += r * r;
  }
  return total;
}

inline std::vector<Complex> to_complex(std::span<const double> params) {
  if (params.size() % 2 != 0 || params.empty()) {
    throw std::invalid_argument("search: parameter vector must have even, nonzero length");
  }
  std::vector<Complex> z(params.size() / 2);
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = {params[2 * k], params[2 * k + 1]};
  return z;
}

}  // namespace detail

/// sum over p != (0,0) of (|<psi|D_p psi>|^2 - 1/(N+1))^2.
inline double loss(const StateVector& fiducial) {
  return detail::loss_from_vector(fiducial.entries());
}

/// Loss of the state obtained by normalizing the raw parameters.
inline double loss_params(std::span<const double> params) {
  return detail::loss_from_vector(detail::to_complex(params));
}

/// Gradient of loss_params with respect to the raw parameters.
///
/// With o_p = <z|D_p z>, s = |z|^2 and g_p = |o_p|^2 / s^2, the Wirtinger
/// derivative is
///   dL/dz* = sum_p 2 (g_p - c) [ (o_p* D_p z + o_p D_p^dagger z) / s^2
///                                - 2 |o_p|^2 z / s^3 ]
/// and dL/dx + i dL/dy = 2 dL/dz*.
inline std::vector<double> loss_gradient(std::span<const double> params) {
  const auto z = detail::to_complex(params);
  const std::size_t n = z.size();
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  if (!(s > 0.0)) throw std::invalid_argument("loss_gradient: zero vector");
  const double target = 1.0 / (static_cast<double>(n) + 1.0);
  const double s2 = s * s;
  const double s3 = s2 * s;

  std::vector<Complex> wirtinger(n);
  for (std::size_t k = 1; k < n * n; ++k) {
    const auto idx = DisplacementIndex::from_flat(k, n);
    const auto dz = displace(idx, z);
    const auto dadj = displace_adjoint(idx, z);
    Complex o = 0.0;
    for (std::size_t j = 0; j < n; ++j) o += std::conj(z[j]) * dz[j];
    const double o2 = std::norm(o);
    const double weight = 2.0 * (o2 / s2 - target);
    for (std::size_t j = 0; j < n; ++j) {
      wirtinger[j] +=
          weight * ((std::conj(o) * dz[j] + o * dadj[j]) / s2 - 2.0 * o2 * z[j] / s3);
    }
  }
  std::vector<double> grad(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    grad[2 * j] = 2.0 * wirtinger[j].real();
    grad[2 * j + 1] = 2.0 * wirtinger[j].imag();
  }
  return grad;
}

/// Gaussian-then-normalize starting points, reproducible across platforms:
/// 64-bit Mersenne Twister seeded with seed + restart_index, uniform
/// doubles from the top 53 bits, standard normals by Box-Muller (both
/// outputs of each pair used in order).
class StartSampler {
 public:
  explicit StartSampler(std::uint64_t stream_seed) : engine_(stream_seed) {}

  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  std::vector<double> start(std::size_t dim) {
    std::vector<double> p(2 * dim);
    for (auto& x : p) x = normal();
    double nrm = 0.0;
    for (double x : p) nrm += x * x;
    nrm = std::sqrt(nrm);
    for (auto& x : p) x /= nrm;
    return p;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

namespace detail {

/// Residuals r_p = |<z|D_p z>|^2 / |z|^4 - 1/(N+1) for p != 0, and their
/// real gradients as rows of a (N^2 - 1) x 2N Jacobian.
inline void residuals_and_jacobian(std::span<const double> params, std::vector<double>& r,
                                   std::vector<double>& jac) {
  const auto z = to_complex(params);
  const std::size_t n = z.size();
  const std::size_t m = n * n - 1;
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  const double target = 1.0 / (static_cast<double>(n) + 1.0);
  r.assign(m, 0.0);
  jac.assign(m * 2 * n, 0.0);
  for (std::size_t k = 1; k <= m; ++k) {
    const auto idx = DisplacementIndex::from_flat(k, n);
    const auto dz = displace(idx, z);
    const auto dadj = displace_adjoint(idx, z);
    Complex o = 0.0;
    for (std::size_t j = 0; j < n; ++j) o += std::conj(z[j]) * dz[j];
    const double o2 = std::norm(o);
    r[k - 1] = o2 / (s * s) - target;
    double* row = &jac[(k - 1) * 2 * n];
    for (std::size_t j = 0; j < n; ++j) {
      const Complex w = (std::conj(o) * dz[j] + o * dadj[j]) / (s * s) - 2.0 * o2 * z[j] / (s * s * s);
      row[2 * j] = 2.0 * w.real();
      row[2 * j + 1] = 2.0 * w.imag();
    }
  }
}

/// Solves a x = b for symmetric positive definite a (n x n, row-major).
/// Returns false if a pivot is not positive.
inline bool cholesky_solve(std::vector<double> a, std::vector<double>& b, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0)) return false;
    d = std::sqrt(d);
    a[j * n + j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = v / d;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) v -= a[i * n + k] * b[k];
    b[i] = v / a[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double v = b[i];
    for (std::size_t k = i + 1; k < n; ++k) v -= a[k * n + i] * b[k];
    b[i] = v / a[i * n + i];
  }
  return true;
}

inline void normalize_in_place(std::vector<double>& x) {
  double nrm = 0.0;
  for (double v : x) nrm += v * v;
  nrm = std::sqrt(nrm);
  for (auto& v : x) v /= nrm;
}

/// Damped Gauss-Newton (Levenberg-Marquardt) on the residual vector. The
/// loss is flat along z (scale) and iz (phase); those two directions are
/// added to the normal matrix so it stays nonsingular as the damping goes
/// to zero. Only loss-decreasing steps are accepted.
template <class Observer>
std::size_t refine(std::vector<double>& x, double& f, const SearchConfig& cfg, std::size_t offset,
                   Observer& observe) {
  const std::size_t p = x.size();
  std::vector<double> r, jac, a(p * p), b(p), trial(p);
  double lambda = 1e-6;
  std::size_t it = 0;
  while (f > cfg.loss_tolerance && it < cfg.refine_iterations && lambda < 1e8) {
    residuals_and_jacobian(x, r, jac);
    const std::size_t m = r.size();
    std::fill(a.begin(), a.end(), 0.0);
    std::fill(b.begin(), b.end(), 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      const double* row = &jac[k * p];
      for (std::size_t i = 0; i < p; ++i) {
        b[i] -= row[i] * r[k];
        for (std::size_t j = 0; j < p; ++j) a[i * p + j] += row[i] * row[j];
      }
    }
    // Gauge directions: x itself and i x.
    std::vector<double> ix(p);
    for (std::size_t j = 0; j < p / 2; ++j) {
      ix[2 * j] = -x[2 * j + 1];
      ix[2 * j + 1] = x[2 * j];
    }
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) a[i * p + j] += x[i] * x[j] + ix[i] * ix[j];

    bool accepted = false;
    while (lambda < 1e8) {
      auto damped = a;
      for (std::size_t i = 0; i < p; ++i) damped[i * p + i] += lambda;
      auto step = b;
      if (cholesky_solve(std::move(damped), step, p)) {
        for (std::size_t i = 0; i < p; ++i) trial[i] = x[i] + step[i];
        normalize_in_place(trial);
        const double ft = loss_params(trial);
        if (ft < f) {
          x = trial;
          f = ft;
          lambda = std::max(lambda * 0.1, 1e-30);
          accepted = true;
          observe(offset + it + 1, f);
          break;
        }
      }
      lambda *= 10.0;
    }
    if (!accepted) break;
    ++it;
  }
  return it;
}

struct NoObserver {
  void operator()(std::size_t, double) const {}
};

}  // namespace detail

/// Gradient descent with Armijo backtracking, followed by a damped
/// Gauss-Newton refinement once the loss is below cfg.refine_below (the
/// descent alone is slow at degenerate minima, such as the continuous
/// fiducial family in dimension 3). Accepted iterates are rescaled to unit
/// norm and every accepted step strictly lowers the loss. Each descent
/// iteration's trial step is twice the last accepted one, starting from
/// initial_step. `observe(iteration, loss)` is called after every accepted
/// step.
template <class Observer = detail::NoObserver>
SearchResult optimize(std::span<const double> start, const SearchConfig& cfg,
                      Observer&& observe = {}) {
  cfg.validate();
  std::vector<double> x(start.begin(), start.end());
  x = StateVector::from_params(x).params();  // rejects the zero vector
  double f = loss_params(x);

  double step = cfg.initial_step;
  std::size_t it = 0;
  std::vector<double> trial(x.size());
  while (f > cfg.loss_tolerance && f > cfg.refine_below && it < cfg.max_iterations) {
    const auto g = loss_gradient(x);
    double g2 = 0.0;
    for (double v : g) g2 += v * v;
    if (g2 == 0.0) break;

    bool accepted = false;
    double ft = f;
    while (step >= cfg.min_step) {
      for (std::size_t k = 0; k < x.size(); ++k) trial[k] = x[k] - step * g[k];
      detail::normalize_in_place(trial);
      ft = loss_params(trial);
      if (ft < f && ft <= f - cfg.armijo_c * step * g2) {
        accepted = true;
        break;
      }
      step *= cfg.backtracking_factor;
    }
    if (!accepted) break;

    x = trial;
    f = ft;
    ++it;
    observe(it, f);
    step *= 2.0;
  }
  if (f > cfg.loss_tolerance && f <= cfg.refine_below) it += detail::refine(x, f, cfg, it, observe);

  return SearchResult{StateVector::from_params(x), f, it, 0, f <= cfg.loss_tolerance};
}

/// Best result over cfg.restarts seeded random starts. Ties on loss go to
/// the lowest restart index.
inline SearchResult search(const SearchConfig& cfg) {
  cfg.validate();
  if (cfg.dim == 1) {
    return SearchResult{StateVector::basis(1, 0), 0.0, 0, 0, true};
  }
  std::optional<SearchResult> best;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    StartSampler sampler(cfg.seed + r);
    auto result = optimize(sampler.start(cfg.dim), cfg);
    result.restart_index = r;
    if (!best || result.loss < best->loss) best = std::move(result);
  }
  return *best;
}

}  // namespace sicpovm
