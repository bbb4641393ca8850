#include "bandrec/reconstruct.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "bandrec/errors.hpp"
#include "bandrec/hermite.hpp"

namespace bandrec {

namespace {

// Per-interval weights c_{i,l} + c_{i-1,l}, row-major N x k.
std::vector<double> frame_weights(std::span<const double> points, double period, int k) {
  const std::size_t n = points.size();
  std::vector<double> w(n * static_cast<std::size_t>(k));
  for (int l = 0; l < k; ++l) {
    const std::vector<double> c = weights(points, period, l);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t prev = i == 0 ? n - 1 : i - 1;
      w[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(l)] = c[i] + c[prev];
    }
  }
  return w;
}

cplx ipow(cplx base, int n) {
  cplx result = 1.0;
  for (int i = 0; i < n; ++i) result *= base;
  return result;
}

}  // namespace

void DivergenceMonitor::observe(double update) {
  history_.push_back(update);
  if (history_.size() >= 2 && update >= history_[history_.size() - 2] && update > kRoundoffFloor) {
    ++streak_;
  } else {
    streak_ = 0;
  }
  if (streak_ >= kWindow) {
    throw DivergenceError("iteration diverged: update norm did not decrease for " + std::to_string(kWindow) +
                              " consecutive steps",
                          history_);
  }
}

std::string_view to_string(IterationMethod method) {
  return method == IterationMethod::hermite_iteration ? "hermite_iteration" : "frame_iteration";
}

std::string_view to_string(BoundSource source) { return source == BoundSource::analytic ? "analytic" : "empirical"; }

PeriodicBandSignal approx_operator(const SampleSet& samples, double sigma, std::size_t grid_size) {
  if (grid_size == 0) grid_size = default_grid_size(samples.period(), sigma);
  return project(piecewise_hermite(samples, grid_size), sigma);
}

double error_bound(int k, double delta, double sigma, int n, CrSource source) {
  if (n < 0) throw DomainError("error_bound: iteration index must be non-negative");
  const GapThresholds g = gap_thresholds(k, sigma, source);
  if (!(delta > 0) || !(delta < g.L_hermite)) throw GapConditionError(delta, g.L_hermite);
  return std::pow(contraction_constant(k, delta, sigma, source), n + 1);
}

Reconstruction iterate_hermite(const SampleSet& samples, double sigma, const HermiteIterationOptions& options) {
  const int k = samples.k();
  const GapThresholds g = gap_thresholds(k, sigma, options.cr_source);
  if (!(samples.delta() < g.L_hermite)) throw GapConditionError(samples.delta(), g.L_hermite);
  const std::size_t grid = options.grid_size ? options.grid_size : default_grid_size(samples.period(), sigma);
  const std::vector<double> points(samples.points().begin(), samples.points().end());

  ReconstructionReport report;
  report.method = IterationMethod::hermite_iteration;
  report.k = k;
  report.sigma = sigma;
  report.delta = samples.delta();
  report.period = samples.period();
  report.contraction_predicted = contraction_constant(k, samples.delta(), sigma, options.cr_source);
  report.reference_errors = options.truth.has_value();

  const PeriodicBandSignal af = approx_operator(samples, sigma, grid);
  PeriodicBandSignal current = af;
  const double f0_norm = l2_norm(af);
  const double truth_norm = options.truth ? l2_norm(*options.truth) : 0.0;
  const double scale = options.truth ? truth_norm : f0_norm;

  auto record_reference = [&](int n) {
    if (!options.truth) return;
    report.errors.push_back(scale > 0 ? l2_norm(*options.truth - current) / scale : l2_norm(*options.truth - current));
    report.bound_curve.push_back(std::pow(report.contraction_predicted, n + 1));
  };
  record_reference(0);

  if (f0_norm == 0.0) {
    report.converged = true;
    return {current, report};
  }

  DivergenceMonitor monitor;
  for (int n = 0; n < options.n_max; ++n) {
    const PeriodicBandSignal a_fn = approx_operator(take_samples(current, points, k), sigma, grid);
    const PeriodicBandSignal update = af - a_fn;
    const double rel = l2_norm(update) / f0_norm;
    current = current + update;
    report.iterations = n + 1;
    report.residual_final = rel;
    if (options.truth) {
      record_reference(n + 1);
    } else {
      report.errors.push_back(rel);
      report.bound_curve.push_back(std::pow(report.contraction_predicted, n + 1));
    }
    if (rel <= options.tol) {
      report.converged = true;
      break;
    }
    monitor.observe(rel);
  }
  return {current, report};
}

PeriodicBandSignal frame_operator(const SampleSet& samples, double sigma) {
  const double period = samples.period();
  const int k = samples.k();
  const int top = max_mode(period, sigma);
  const std::vector<double> w = frame_weights(samples.points(), period, k);
  std::vector<cplx> c(static_cast<std::size_t>(2 * top + 1));
  for (int m = -top; m <= top; ++m) {
    const double omega = 2.0 * std::numbers::pi * m / period;
    cplx sum = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const cplx phase = std::polar(1.0, -omega * samples.point(i));
      cplx inner = 0.0;
      for (int l = 0; l < k; ++l) {
        inner += samples.datum(i, l) * w[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(l)] *
                 ipow(cplx(0.0, -omega), l);
      }
      sum += inner * phase;
    }
    c[static_cast<std::size_t>(m + top)] = sum / period;
  }
  return {period, sigma, std::move(c), false};
}

Eigen::MatrixXcd frame_matrix(std::span<const double> points, double period, double sigma, int k) {
  if (k < 1) throw DomainError("frame_matrix: k must be >= 1");
  const int top = max_mode(period, sigma);
  const auto dim = static_cast<Eigen::Index>(2 * top + 1);
  const std::vector<double> w = frame_weights(points, period, k);
  const auto rows = static_cast<Eigen::Index>(points.size()) * k;
  Eigen::MatrixXcd v(rows, dim);
  const double inv_sqrt_t = 1.0 / std::sqrt(period);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (int l = 0; l < k; ++l) {
      const auto row = static_cast<Eigen::Index>(i) * k + l;
      const double sw = std::sqrt(w[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(l)]);
      for (int m = -top; m <= top; ++m) {
        const double omega = 2.0 * std::numbers::pi * m / period;
        v(row, m + top) = sw * inv_sqrt_t * ipow(cplx(0.0, omega), l) * std::polar(1.0, omega * points[i]);
      }
    }
  }
  return v.adjoint() * v;
}

EmpiricalFrameBounds empirical_frame_bounds(const SampleSet& samples, double sigma) {
  const Eigen::MatrixXcd g = frame_matrix(samples.points(), samples.period(), sigma, samples.k());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw SolverError("empirical_frame_bounds: eigen-solve failed", 0.0);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

double frame_energy(const SampleSet& samples) {
  const int k = samples.k();
  const std::vector<double> w = frame_weights(samples.points(), samples.period(), k);
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (int l = 0; l < k; ++l) {
      sum += std::norm(samples.datum(i, l)) * w[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(l)];
    }
  }
  return sum;
}

Reconstruction iterate_frame(const SampleSet& samples, double sigma, const FrameIterationOptions& options) {
  const int k = samples.k();
  double a = 0.0;
  double b = 0.0;
  if (options.bounds == BoundSource::analytic) {
    const FrameBounds fb = frame_bounds(k, samples.delta(), sigma, options.cr_source);
    a = fb.A;
    b = fb.B;
  } else {
    const EmpiricalFrameBounds eb = empirical_frame_bounds(samples, sigma);
    if (!(eb.A_emp > 1e-12 * eb.B_emp)) {
      throw PreconditionError("not a frame at this resolution: A_emp = " + std::to_string(eb.A_emp));
    }
    a = eb.A_emp;
    b = eb.B_emp;
  }
  const std::vector<double> points(samples.points().begin(), samples.points().end());

  ReconstructionReport report;
  report.method = IterationMethod::frame_iteration;
  report.k = k;
  report.sigma = sigma;
  report.delta = samples.delta();
  report.period = samples.period();
  report.rho = 2.0 / (a + b);
  report.contraction_predicted = (b - a) / (b + a);
  report.reference_errors = options.truth.has_value();
  const double rho = *report.rho;

  const PeriodicBandSignal sf = frame_operator(samples, sigma);
  PeriodicBandSignal current = PeriodicBandSignal::zero(samples.period(), sigma);
  const double truth_norm = options.truth ? l2_norm(*options.truth) : 0.0;
  auto record_reference = [&](int n) {
    if (!options.truth) return;
    const double err = l2_norm(*options.truth - current);
    report.errors.push_back(truth_norm > 0 ? err / truth_norm : err);
    report.bound_curve.push_back(std::pow(report.contraction_predicted, n));
  };
  record_reference(0);

  const double first_update = rho * l2_norm(sf);
  if (first_update == 0.0) {
    report.converged = true;
    return {current, report};
  }

  DivergenceMonitor monitor;
  for (int n = 0; n < options.n_max; ++n) {
    const PeriodicBandSignal s_fn = frame_operator(take_samples(current, points, k), sigma);
    const PeriodicBandSignal update = (sf - s_fn).scaled(rho);
    const double rel = l2_norm(update) / first_update;
    current = current + update;
    report.iterations = n + 1;
    report.residual_final = rel;
    if (options.truth) {
      record_reference(n + 1);
    } else {
      report.errors.push_back(rel);
      report.bound_curve.push_back(std::pow(report.contraction_predicted, n));
    }
    if (rel <= options.tol) {
      report.converged = true;
      break;
    }
    monitor.observe(rel);
  }
  return {current, report};
}

}  // namespace bandrec
