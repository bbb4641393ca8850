#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "bandrec/constants.hpp"
#include "bandrec/sampling.hpp"
#include "bandrec/signal.hpp"

namespace bandrec {

enum class IterationMethod { hermite_iteration, frame_iteration };
enum class BoundSource { analytic, empirical };

std::string_view to_string(IterationMethod method);
std::string_view to_string(BoundSource source);

struct ReconstructionReport {
  IterationMethod method = IterationMethod::hermite_iteration;
  int k = 1;
  double sigma = 0.0;
  double delta = 0.0;
  double period = 0.0;
  double contraction_predicted = 0.0;
  std::optional<double> rho;  // frame method only
  /// Experiment mode: e_n = ||f - f_n|| / ||f|| for n = 0..iterations.
  /// Blind mode: ||f_{n+1} - f_n|| / ||f_ref|| for each applied update.
  std::vector<double> errors;
  std::vector<double> bound_curve;
  int iterations = 0;
  bool converged = false;
  double residual_final = 0.0;
  bool reference_errors = false;  // true in experiment mode
};

struct Reconstruction {
  PeriodicBandSignal signal;
  ReconstructionReport report;
};

struct HermiteIterationOptions {
  int n_max = 50;
  double tol = 1e-12;            // stop when ||update|| <= tol ||f_0||
  std::size_t grid_size = 0;     // 0: default_grid_size
  CrSource cr_source = kDefaultCrSource;
  std::optional<PeriodicBandSignal> truth;  // enables reference errors
};

struct FrameIterationOptions {
  BoundSource bounds = BoundSource::empirical;
  int n_max = 200;
  double tol = 1e-12;  // stop when ||update|| <= tol ||f_1||
  CrSource cr_source = kDefaultCrSource;
  std::optional<PeriodicBandSignal> truth;
};

/// Watches relative update norms; throws DivergenceError after five consecutive steps in
/// which the norm did not decrease. Norms below 1e-13 are round-off and reset the count.
class DivergenceMonitor {
 public:
  static constexpr int kWindow = 5;
  static constexpr double kRoundoffFloor = 1e-13;

  void observe(double update);

 private:
  std::vector<double> history_;
  int streak_ = 0;
};

struct EmpiricalFrameBounds {
  double A_emp;
  double B_emp;
};

/// A f = P(sum_i H_{2k-1}(x_i, x_{i+1}, f; .) chi_[x_i, x_{i+1}]) from the samples of f.
PeriodicBandSignal approx_operator(const SampleSet& samples, double sigma, std::size_t grid_size = 0);

/// f_0 = A f, f_{n+1} = f_n + A(f - f_n), with A(f - f_n) formed as A f - A f_n.
/// Throws GapConditionError unless delta < L_hermite, DivergenceError when update norms stop
/// decreasing for five consecutive steps.
Reconstruction iterate_hermite(const SampleSet& samples, double sigma, const HermiteIterationOptions& options = {});

/// S_k f = sum_i sum_{l<k} (-1)^l f^(l)(x_i) (c_{i,l} + c_{i-1,l}) K_{x_i}^{(l)} from the sample data.
PeriodicBandSignal frame_operator(const SampleSet& samples, double sigma);

/// f_0 = 0, f_{n+1} = f_n + rho S_k(f - f_n) with rho = 2 / (A + B).
Reconstruction iterate_frame(const SampleSet& samples, double sigma, const FrameIterationOptions& options = {});

/// Hermitian matrix of f -> sum_i sum_l |f^(l)(x_i)|^2 (c_{i,l} + c_{i-1,l}) in the orthonormal
/// Fourier basis exp(i w_m x) / sqrt(T).
Eigen::MatrixXcd frame_matrix(std::span<const double> points, double period, double sigma, int k);

/// Extreme eigenvalues of frame_matrix; sample data are ignored.
EmpiricalFrameBounds empirical_frame_bounds(const SampleSet& samples, double sigma);

/// sum_i sum_l |D[i][l]|^2 (c_{i,l} + c_{i-1,l}).
double frame_energy(const SampleSet& samples);

/// ((delta sigma)^{2k} / c_k)^{n+1}; DomainError unless delta < L_hermite.
double error_bound(int k, double delta, double sigma, int n, CrSource source = kDefaultCrSource);

}  // namespace bandrec
