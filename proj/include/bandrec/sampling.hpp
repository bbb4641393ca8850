#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bandrec/signal.hpp"

namespace bandrec {

/// Largest gap of a strictly increasing partition of [0, T), including the wrap (x_0 + T) - x_{N-1}.
double max_cyclic_gap(std::span<const double> points, double period);

/// Derivative samples D[i][j] = f^(j)(x_i), j < k, on a cyclic partition of [0, T).
///
/// Interval i is [x_i, x_{i+1}] for i < N - 1; interval N - 1 is the wrap [x_{N-1}, x_0 + T].
/// Immutable after construction.
class SampleSet {
 public:
  /// `data` is row-major N x k. Throws PreconditionError on malformed input.
  SampleSet(double period, std::vector<double> points, int k, std::vector<cplx> data);

  double period() const noexcept { return period_; }
  int k() const noexcept { return k_; }
  std::size_t size() const noexcept { return points_.size(); }
  double delta() const noexcept { return delta_; }
  std::span<const double> points() const noexcept { return points_; }
  std::span<const cplx> data() const noexcept { return data_; }

  double point(std::size_t i) const { return points_.at(i); }
  /// Right end of interval i (x_0 + T for the wrap interval).
  double interval_end(std::size_t i) const;
  double gap(std::size_t i) const { return interval_end(i) - points_.at(i); }
  /// f^(0..k-1) at x_i.
  std::span<const cplx> row(std::size_t i) const;
  cplx datum(std::size_t i, int j) const { return row(i)[static_cast<std::size_t>(j)]; }

 private:
  double period_;
  std::vector<double> points_;
  int k_;
  std::vector<cplx> data_;
  double delta_;
};

/// Jittered-uniform partition of [0, T) with maximum cyclic gap <= delta_target.
///
/// Spacing h = T / ceil(T (1 + jitter) / delta_target), each point displaced by a uniform
/// amount in [-jitter h / 2, jitter h / 2]. jitter = 0 gives the uniform grid starting at 0.
std::vector<double> make_partition(double period, double delta_target, double jitter, std::uint64_t seed);

SampleSet take_samples(const PeriodicBandSignal& f, std::vector<double> points, int k);

/// c_{i,l} = gap_i^{2l+1} / ((2l + 1) (l!)^2) for every interval, wrap interval last.
std::vector<double> weights(std::span<const double> points, double period, int l);

}  // namespace bandrec
