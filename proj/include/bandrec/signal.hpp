#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bandrec {

using cplx = std::complex<double>;

/// Largest M with 2 pi M / T <= sigma (closed inequality, robust to rounding of sigma T / 2 pi).
int max_mode(double period, double sigma);

/// Default torus period 20 (2 pi / sigma).
double default_period(double sigma);

/// Default dense grid: 16 (2M + 1) rounded up to a power of two.
std::size_t default_grid_size(double period, double sigma);

/// A band-limited signal on the torus [0, T): f(x) = sum_{|m| <= M} c_m exp(i 2 pi m x / T).
///
/// Coefficients are stored for m = -M..M with M = max_mode(T, sigma). When `real_flag` is
/// set the coefficients are Hermitian-symmetric (c_{-m} = conj(c_m)); the constructor
/// enforces this to rounding and then symmetrizes exactly. Instances are immutable.
class PeriodicBandSignal {
 public:
  PeriodicBandSignal(double period, double sigma, std::vector<cplx> coeffs, bool real_flag = false);

  static PeriodicBandSignal zero(double period, double sigma);
  static PeriodicBandSignal constant(double period, double sigma, cplx value);
  /// Single mode c_m = amplitude (real_flag off).
  static PeriodicBandSignal mode(double period, double sigma, int m, cplx amplitude = 1.0);

  double period() const noexcept { return period_; }
  double sigma() const noexcept { return sigma_; }
  int max_mode() const noexcept { return max_mode_; }
  bool real_flag() const noexcept { return real_flag_; }
  std::size_t dimension() const noexcept { return coeffs_.size(); }

  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  cplx coeff(int m) const { return coeffs_.at(static_cast<std::size_t>(m + max_mode_)); }
  double frequency(int m) const noexcept;

  PeriodicBandSignal operator+(const PeriodicBandSignal& other) const;
  PeriodicBandSignal operator-(const PeriodicBandSignal& other) const;
  PeriodicBandSignal scaled(cplx factor) const;

 private:
  void require_compatible(const PeriodicBandSignal& other) const;

  double period_;
  double sigma_;
  int max_mode_;
  bool real_flag_;
  std::vector<cplx> coeffs_;
};

/// Values on the uniform grid x_n = n T / N, n = 0..N-1.
class GridFunction {
 public:
  GridFunction(double period, std::vector<cplx> values);

  double period() const noexcept { return period_; }
  std::size_t size() const noexcept { return values_.size(); }
  double node(std::size_t n) const noexcept { return period_ * static_cast<double>(n) / static_cast<double>(size()); }
  std::span<const cplx> values() const noexcept { return values_; }

  /// Trapezoid (equivalently rectangle) rule for the period integral of |g|^2.
  double l2_norm() const;

 private:
  double period_;
  std::vector<cplx> values_;
};

/// j-th derivative of f at x. Cost O(M).
cplx evaluate(const PeriodicBandSignal& f, double x, int j = 0);

/// Spectral derivative f^(j).
PeriodicBandSignal derivative(const PeriodicBandSignal& f, int j);

/// <f, g> = T sum_m c_m conj(d_m), the L^2 inner product over one period.
cplx inner_product(const PeriodicBandSignal& f, const PeriodicBandSignal& g);

/// sqrt(T sum |c_m|^2).
double l2_norm(const PeriodicBandSignal& f);

/// f sampled on the N-point uniform grid.
GridFunction to_grid(const PeriodicBandSignal& f, std::size_t n);

/// Orthogonal projection onto the band: DFT of the grid values, keeping |2 pi m / T| <= sigma.
/// Requires N >= 2 (2M + 1).
PeriodicBandSignal project(const GridFunction& g, double sigma);

/// Coefficients i.i.d. standard complex normal, Hermitian-symmetrized when `real_flag`,
/// normalized to unit L^2 norm.
PeriodicBandSignal random_signal(std::uint64_t seed, double period, double sigma, bool real_flag);

/// Reproducing-kernel derivative K_{x0}^{(l)}: the l-th derivative in t of K_{x0}(t) =
/// (1/T) sum_m exp(i w_m (t - x0)), so that <f, K_{x0}^{(l)}> = (-1)^l f^(l)(x0).
PeriodicBandSignal kernel_derivative(double x0, int l, double period, double sigma);

/// sigma^j ||f|| - ||f^(j)||; non-negative in the model up to rounding.
double bernstein_residual(const PeriodicBandSignal& f, int j);

/// Pointwise product; the result has bandlimit f.sigma + g.sigma.
PeriodicBandSignal multiply(const PeriodicBandSignal& f, const PeriodicBandSignal& g);

}  // namespace bandrec
