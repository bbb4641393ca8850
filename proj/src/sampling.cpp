#include "bandrec/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bandrec/errors.hpp"
#include "bandrec/rng.hpp"

namespace bandrec {

namespace {

void require_partition(std::span<const double> points, double period) {
  if (!(period > 0)) throw DomainError("partition: period must be positive");
  if (points.empty()) throw DomainError("partition: no sample points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = points[i];
    if (!std::isfinite(x) || x < 0.0 || x >= period) {
      throw PreconditionError("partition: point " + std::to_string(i) + " outside [0, T)");
    }
    if (i > 0 && !(points[i - 1] < x)) throw PreconditionError("partition: points must be strictly increasing");
  }
}

}  // namespace

double max_cyclic_gap(std::span<const double> points, double period) {
  require_partition(points, period);
  double gap = points.front() + period - points.back();
  for (std::size_t i = 1; i < points.size(); ++i) gap = std::max(gap, points[i] - points[i - 1]);
  return gap;
}

SampleSet::SampleSet(double period, std::vector<double> points, int k, std::vector<cplx> data)
    : period_(period), points_(std::move(points)), k_(k), data_(std::move(data)), delta_(0.0) {
  if (k_ < 1) throw DomainError("SampleSet: k must be >= 1");
  require_partition(points_, period_);
  if (data_.size() != points_.size() * static_cast<std::size_t>(k_)) {
    throw PreconditionError("SampleSet: data must have shape N x k");
  }
  delta_ = max_cyclic_gap(points_, period_);
}

double SampleSet::interval_end(std::size_t i) const {
  if (i + 1 < points_.size()) return points_[i + 1];
  if (i + 1 == points_.size()) return points_.front() + period_;
  throw std::out_of_range("SampleSet::interval_end");
}

std::span<const cplx> SampleSet::row(std::size_t i) const {
  if (i >= points_.size()) throw std::out_of_range("SampleSet::row");
  return std::span<const cplx>(data_).subspan(i * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_));
}

std::vector<double> make_partition(double period, double delta_target, double jitter, std::uint64_t seed) {
  if (!(period > 0) || !(delta_target > 0) || !(delta_target < period)) {
    throw DomainError("make_partition: need 0 < delta_target < T");
  }
  if (!(jitter >= 0.0 && jitter < 1.0)) throw DomainError("make_partition: jitter must lie in [0, 1)");

  const double base = delta_target / (1.0 + jitter);
  const auto count = static_cast<std::size_t>(std::ceil(period / base - 1e-12));
  if (count < 1) throw DomainError("make_partition: infeasible parameters");
  const double h = period / static_cast<double>(count);

  constexpr int kAttempts = 10;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Rng rng = Rng(seed).split(static_cast<std::uint64_t>(attempt));
    std::vector<double> x(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double noise = jitter > 0.0 ? rng.uniform(-0.5, 0.5) * jitter * h : 0.0;
      double xi = static_cast<double>(i) * h + noise;
      if (xi < 0.0) xi += period;
      if (xi >= period) xi -= period;
      x[i] = xi;
    }
    std::sort(x.begin(), x.end());
    if (std::adjacent_find(x.begin(), x.end()) != x.end()) continue;
    // Rounding of i * h may exceed an exact target by a few ulps of T.
    if (max_cyclic_gap(x, period) <= delta_target + 8 * std::numeric_limits<double>::epsilon() * period) return x;
  }
  throw GenerationError("make_partition: could not meet the gap target after 10 attempts");
}

SampleSet take_samples(const PeriodicBandSignal& f, std::vector<double> points, int k) {
  if (k < 1) throw DomainError("take_samples: k must be >= 1");
  std::vector<cplx> data(points.size() * static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (int j = 0; j < k; ++j) data[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)] = evaluate(f, points[i], j);
  }
  return {f.period(), std::move(points), k, std::move(data)};
}

std::vector<double> weights(std::span<const double> points, double period, int l) {
  if (l < 0) throw DomainError("weights: order must be non-negative");
  require_partition(points, period);
  const double fact = std::tgamma(l + 1.0);
  const double denom = (2.0 * l + 1.0) * fact * fact;
  std::vector<double> c(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double end = i + 1 < points.size() ? points[i + 1] : points.front() + period;
    c[i] = std::pow(end - points[i], 2 * l + 1) / denom;
  }
  return c;
}

}  // namespace bandrec
