#include "bandrec/signal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include <fftw3.h>

#include "bandrec/errors.hpp"
#include "bandrec/rng.hpp"

namespace bandrec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW's planner is not re-entrant.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

cplx ipow(cplx base, int n) {
  cplx result = 1.0;
  for (int i = 0; i < n; ++i) result *= base;
  return result;
}

// exp(i 2 pi m x / T) with the phase reduced modulo one period first.
cplx unit_phase(int m, double x, double period) {
  const double turns = x / period;
  double frac = static_cast<double>(m) * (turns - std::floor(turns));
  frac -= std::floor(frac);
  return std::polar(1.0, kTwoPi * frac);
}

}  // namespace

int max_mode(double period, double sigma) {
  if (!(period > 0) || !(sigma > 0)) throw DomainError("max_mode: period and sigma must be positive");
  const double x = sigma * period / kTwoPi;
  return static_cast<int>(std::floor(x * (1.0 + 1e-12)));
}

double default_period(double sigma) {
  if (!(sigma > 0)) throw DomainError("default_period: sigma must be positive");
  return 20.0 * kTwoPi / sigma;
}

std::size_t default_grid_size(double period, double sigma) {
  const auto modes = static_cast<std::size_t>(2 * max_mode(period, sigma) + 1);
  return std::bit_ceil(16 * modes);
}

PeriodicBandSignal::PeriodicBandSignal(double period, double sigma, std::vector<cplx> coeffs, bool real_flag)
    : period_(period), sigma_(sigma), max_mode_(bandrec::max_mode(period, sigma)), real_flag_(real_flag),
      coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != static_cast<std::size_t>(2 * max_mode_ + 1)) {
    throw PreconditionError("PeriodicBandSignal: expected " + std::to_string(2 * max_mode_ + 1) +
                            " coefficients for T = " + std::to_string(period) + ", sigma = " +
                            std::to_string(sigma) + ", got " + std::to_string(coeffs_.size()));
  }
  for (const cplx& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw PreconditionError("PeriodicBandSignal: non-finite coefficient");
  }
  if (real_flag_) {
    double scale = 0.0;
    for (const cplx& c : coeffs_) scale = std::max(scale, std::abs(c));
    const double tol = 1e-12 * std::max(scale, 1e-300);
    for (int m = 0; m <= max_mode_; ++m) {
      cplx& pos = coeffs_[static_cast<std::size_t>(max_mode_ + m)];
      cplx& neg = coeffs_[static_cast<std::size_t>(max_mode_ - m)];
      if (std::abs(neg - std::conj(pos)) > tol) {
        throw PreconditionError("PeriodicBandSignal: real_flag set but coefficients are not Hermitian");
      }
      const cplx avg = 0.5 * (pos + std::conj(neg));
      pos = avg;
      neg = std::conj(avg);
    }
  }
}

PeriodicBandSignal PeriodicBandSignal::zero(double period, double sigma) {
  const int m = bandrec::max_mode(period, sigma);
  return {period, sigma, std::vector<cplx>(static_cast<std::size_t>(2 * m + 1)), true};
}

PeriodicBandSignal PeriodicBandSignal::constant(double period, double sigma, cplx value) {
  const int m = bandrec::max_mode(period, sigma);
  std::vector<cplx> c(static_cast<std::size_t>(2 * m + 1));
  c[static_cast<std::size_t>(m)] = value;
  return {period, sigma, std::move(c), value.imag() == 0.0};
}

PeriodicBandSignal PeriodicBandSignal::mode(double period, double sigma, int m, cplx amplitude) {
  const int top = bandrec::max_mode(period, sigma);
  if (std::abs(m) > top) throw DomainError("PeriodicBandSignal::mode: mode outside the band");
  std::vector<cplx> c(static_cast<std::size_t>(2 * top + 1));
  c[static_cast<std::size_t>(m + top)] = amplitude;
  return {period, sigma, std::move(c), false};
}

double PeriodicBandSignal::frequency(int m) const noexcept { return kTwoPi * m / period_; }

void PeriodicBandSignal::require_compatible(const PeriodicBandSignal& other) const {
  if (other.period_ != period_ || other.max_mode_ != max_mode_) {
    throw PreconditionError("PeriodicBandSignal: operands live in different model spaces");
  }
}

PeriodicBandSignal PeriodicBandSignal::operator+(const PeriodicBandSignal& other) const {
  require_compatible(other);
  std::vector<cplx> c(coeffs_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.coeffs_[i];
  return {period_, sigma_, std::move(c), real_flag_ && other.real_flag_};
}

PeriodicBandSignal PeriodicBandSignal::operator-(const PeriodicBandSignal& other) const {
  require_compatible(other);
  std::vector<cplx> c(coeffs_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= other.coeffs_[i];
  return {period_, sigma_, std::move(c), real_flag_ && other.real_flag_};
}

PeriodicBandSignal PeriodicBandSignal::scaled(cplx factor) const {
  std::vector<cplx> c(coeffs_);
  for (cplx& v : c) v *= factor;
  return {period_, sigma_, std::move(c), real_flag_ && factor.imag() == 0.0};
}

GridFunction::GridFunction(double period, std::vector<cplx> values) : period_(period), values_(std::move(values)) {
  if (!(period_ > 0)) throw DomainError("GridFunction: period must be positive");
  if (values_.size() < 2) throw PreconditionError("GridFunction: need at least 2 grid values");
  for (const cplx& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw PreconditionError("GridFunction: non-finite value");
  }
}

double GridFunction::l2_norm() const {
  double sum = 0.0;
  for (const cplx& v : values_) sum += std::norm(v);
  return std::sqrt(sum * period_ / static_cast<double>(values_.size()));
}

cplx evaluate(const PeriodicBandSignal& f, double x, int j) {
  if (j < 0) throw DomainError("evaluate: derivative order must be non-negative");
  const int top = f.max_mode();
  const auto c = f.coeffs();
  cplx sum = 0.0;
  for (int m = -top; m <= top; ++m) {
    const cplx cm = c[static_cast<std::size_t>(m + top)];
    if (cm == 0.0) continue;
    sum += ipow(cplx(0.0, f.frequency(m)), j) * cm * unit_phase(m, x, f.period());
  }
  return sum;
}

PeriodicBandSignal derivative(const PeriodicBandSignal& f, int j) {
  if (j < 0) throw DomainError("derivative: order must be non-negative");
  const int top = f.max_mode();
  std::vector<cplx> c(f.coeffs().begin(), f.coeffs().end());
  for (int m = -top; m <= top; ++m) c[static_cast<std::size_t>(m + top)] *= ipow(cplx(0.0, f.frequency(m)), j);
  return {f.period(), f.sigma(), std::move(c), f.real_flag()};
}

cplx inner_product(const PeriodicBandSignal& f, const PeriodicBandSignal& g) {
  if (f.period() != g.period() || f.max_mode() != g.max_mode()) {
    throw PreconditionError("inner_product: operands live in different model spaces");
  }
  cplx sum = 0.0;
  const auto a = f.coeffs();
  const auto b = g.coeffs();
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * std::conj(b[i]);
  return f.period() * sum;
}

double l2_norm(const PeriodicBandSignal& f) {
  double sum = 0.0;
  for (const cplx& c : f.coeffs()) sum += std::norm(c);
  return std::sqrt(f.period() * sum);
}

GridFunction to_grid(const PeriodicBandSignal& f, std::size_t n) {
  if (n < 2) throw PreconditionError("to_grid: need at least 2 grid points");
  std::vector<cplx> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = evaluate(f, f.period() * static_cast<double>(i) / static_cast<double>(n), 0);
  }
  return {f.period(), std::move(values)};
}

PeriodicBandSignal project(const GridFunction& g, double sigma) {
  const int top = max_mode(g.period(), sigma);
  const std::size_t modes = static_cast<std::size_t>(2 * top + 1);
  const std::size_t n = g.size();
  if (n < 2 * modes) {
    throw PreconditionError("project: grid of " + std::to_string(n) + " points is too coarse; need N >= " +
                            std::to_string(2 * modes));
  }

  std::vector<cplx> in(g.values().begin(), g.values().end());
  std::vector<cplx> out(n);
  auto* in_ptr = reinterpret_cast<fftw_complex*>(in.data());
  auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), in_ptr, out_ptr, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }

  std::vector<cplx> c(modes);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int m = -top; m <= top; ++m) {
    const std::size_t bin = m >= 0 ? static_cast<std::size_t>(m) : n - static_cast<std::size_t>(-m);
    c[static_cast<std::size_t>(m + top)] = out[bin] * inv_n;
  }
  return {g.period(), sigma, std::move(c), false};
}

PeriodicBandSignal random_signal(std::uint64_t seed, double period, double sigma, bool real_flag) {
  const int top = max_mode(period, sigma);
  std::vector<cplx> c(static_cast<std::size_t>(2 * top + 1));
  Rng rng(seed);
  constexpr double kHalf = std::numbers::sqrt2 / 2.0;
  if (real_flag) {
    c[static_cast<std::size_t>(top)] = rng.normal();
    for (int m = 1; m <= top; ++m) {
      const double re = rng.normal();
      const double im = rng.normal();
      const cplx v(kHalf * re, kHalf * im);
      c[static_cast<std::size_t>(top + m)] = v;
      c[static_cast<std::size_t>(top - m)] = std::conj(v);
    }
  } else {
    for (int m = -top; m <= top; ++m) {
      const double re = rng.normal();
      const double im = rng.normal();
      c[static_cast<std::size_t>(m + top)] = cplx(kHalf * re, kHalf * im);
    }
  }
  PeriodicBandSignal raw(period, sigma, std::move(c), real_flag);
  return raw.scaled(1.0 / l2_norm(raw));
}

PeriodicBandSignal kernel_derivative(double x0, int l, double period, double sigma) {
  if (l < 0) throw DomainError("kernel_derivative: order must be non-negative");
  const int top = max_mode(period, sigma);
  std::vector<cplx> c(static_cast<std::size_t>(2 * top + 1));
  for (int m = -top; m <= top; ++m) {
    const double w = kTwoPi * m / period;
    c[static_cast<std::size_t>(m + top)] = ipow(cplx(0.0, w), l) * std::conj(unit_phase(m, x0, period)) / period;
  }
  return {period, sigma, std::move(c), true};
}

double bernstein_residual(const PeriodicBandSignal& f, int j) {
  if (j < 1) throw DomainError("bernstein_residual: derivative order must be >= 1");
  const double norm = l2_norm(f);
  if (norm == 0.0) throw DomainError("bernstein_residual: zero signal");
  return std::pow(f.sigma(), j) * norm - l2_norm(derivative(f, j));
}

PeriodicBandSignal multiply(const PeriodicBandSignal& f, const PeriodicBandSignal& g) {
  if (f.period() != g.period()) throw PreconditionError("multiply: periods differ");
  const double sigma = f.sigma() + g.sigma();
  const int top = max_mode(f.period(), sigma);
  std::vector<cplx> c(static_cast<std::size_t>(2 * top + 1));
  const int mf = f.max_mode();
  const int mg = g.max_mode();
  for (int a = -mf; a <= mf; ++a) {
    const cplx ca = f.coeff(a);
    if (ca == 0.0) continue;
    for (int b = -mg; b <= mg; ++b) c[static_cast<std::size_t>(a + b + top)] += ca * g.coeff(b);
  }
  return {f.period(), sigma, std::move(c), f.real_flag() && g.real_flag()};
}

}  // namespace bandrec
