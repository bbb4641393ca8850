#pragma once

#include <span>
#include <vector>

#include "bandrec/sampling.hpp"
#include "bandrec/signal.hpp"

namespace bandrec {

/// Two-point Hermite interpolant of degree 2k - 1 on [xi, eta], matching derivatives of
/// order 0..k-1 at both ends. Coefficients are in the shifted variable (x - xi).
class HermitePatch {
 public:
  HermitePatch(double xi, double eta, int k, std::vector<cplx> poly);

  double xi() const noexcept { return xi_; }
  double eta() const noexcept { return eta_; }
  int k() const noexcept { return k_; }
  std::span<const cplx> poly() const noexcept { return poly_; }

  /// Intervals much longer than the band's shortest wavelength make the monomial form
  /// poorly conditioned.
  bool ill_conditioned(double sigma) const noexcept { return (eta_ - xi_) * sigma > 10.0; }

 private:
  double xi_;
  double eta_;
  int k_;
  std::vector<cplx> poly_;
};

/// Assembles H_{2k-1} from left[j] = f^(j)(xi), right[j] = f^(j)(eta) with Spitzbart's
/// formula. The A_0l, A_1l basis is expanded on the unit interval and rescaled.
HermitePatch build_patch(double xi, double eta, std::span<const cplx> left, std::span<const cplx> right);

/// j-th derivative of the patch polynomial at x (any x; no range check).
cplx evaluate_patch(const HermitePatch& p, double x, int j = 0);

/// Index of the interval owning x in [0, T): [x_i, x_{i+1}) left-closed, with points
/// before x_0 owned by the wrap interval N - 1.
std::size_t owning_interval(const SampleSet& samples, double x);

/// One patch per interval, wrap interval last.
std::vector<HermitePatch> build_patches(const SampleSet& samples);

/// Piecewise Hermite interpolant of the samples evaluated on the N-point uniform grid.
GridFunction piecewise_hermite(const SampleSet& samples, std::size_t grid_size);

}  // namespace bandrec
