#include "doctest.h"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "bandrec/errors.hpp"
#include "bandrec/io.hpp"
#include "bandrec/reconstruct.hpp"
#include "bandrec/rng.hpp"

using namespace bandrec;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPeriod = 40.0;

double L(int k) { return gap_thresholds(k, kPi, CrSource::eigensolver).L_hermite; }

SampleSet sampled(const PeriodicBandSignal& f, double delta, int k, std::uint64_t seed, double jitter = 0.5) {
  return take_samples(f, make_partition(f.period(), delta, jitter, seed), k);
}

double relative_error(const PeriodicBandSignal& f, const PeriodicBandSignal& g) { return l2_norm(f - g) / l2_norm(f); }

// Matrix of S_k in the orthonormal Fourier basis, column by column.
Eigen::MatrixXcd frame_operator_matrix(const std::vector<double>& pts, int k) {
  const int top = max_mode(kPeriod, kPi);
  const int dim = 2 * top + 1;
  Eigen::MatrixXcd s(dim, dim);
  for (int m = -top; m <= top; ++m) {
    const PeriodicBandSignal e = PeriodicBandSignal::mode(kPeriod, kPi, m, 1.0 / std::sqrt(kPeriod));
    const PeriodicBandSignal se = frame_operator(take_samples(e, pts, k), kPi);
    for (int n = 0; n < dim; ++n) s(n, m + top) = se.coeffs()[static_cast<std::size_t>(n)] * std::sqrt(kPeriod);
  }
  return s;
}
}  // namespace

TEST_CASE("approximation operator reproduces constants") {
  const PeriodicBandSignal c = PeriodicBandSignal::constant(kPeriod, kPi, cplx(1.5, 0.5));
  for (int k = 1; k <= 3; ++k) {
    const PeriodicBandSignal ac = approx_operator(sampled(c, 0.9 * L(k), k, 1), kPi);
    CHECK(l2_norm(ac - c) <= 1e-12 * l2_norm(c));
  }
}

TEST_CASE("approximation operator contracts") {
  for (int k = 1; k <= 3; ++k) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const double frac = 0.5 + 0.4 * static_cast<double>(seed % 5) / 4;
      const double delta = frac * L(k);
      const PeriodicBandSignal f = random_signal(seed, kPeriod, kPi, seed % 3 == 0);
      const SampleSet s = sampled(f, delta, k, seed + 1000);
      const double bound = contraction_constant(k, s.delta(), kPi, CrSource::eigensolver);
      CAPTURE(k);
      CAPTURE(seed);
      CHECK(relative_error(f, approx_operator(s, kPi)) <= bound + 1e-3);
    }
  }
}

TEST_CASE("order of accuracy") {
  for (int k = 1; k <= 2; ++k) {
    const PeriodicBandSignal f = random_signal(3, kPeriod, kPi, false);
    // Uniform partitions that nest under halving.
    double prev = 0.0;
    for (int level = 0; level < 4; ++level) {
      const double delta = kPeriod / (64.0 * std::pow(2.0, level));
      const double err = relative_error(f, approx_operator(sampled(f, delta, k, 0, 0.0), kPi));
      if (level > 0) {
        const double ratio = prev / err;
        CAPTURE(k);
        CAPTURE(level);
        CHECK(ratio >= std::pow(2.0, 2 * k) / 1.5);
        CHECK(ratio <= std::pow(2.0, 2 * k) * 1.5);
      }
      prev = err;
    }
  }
}

TEST_CASE("Hermite iteration") {
  SUBCASE("constant signal converges immediately") {
    const PeriodicBandSignal c = PeriodicBandSignal::constant(kPeriod, kPi, 2.0);
    HermiteIterationOptions o;
    o.truth = c;
    const Reconstruction r = iterate_hermite(sampled(c, 0.5, 1, 2), kPi, o);
    CHECK(r.report.converged);
    CHECK(r.report.errors.front() <= 1e-12);
  }
  SUBCASE("k = 1 error estimate") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const PeriodicBandSignal f = random_signal(seed, kPeriod, kPi, false);
      HermiteIterationOptions o;
      o.truth = f;
      const SampleSet s = sampled(f, 0.5, 1, seed);
      const Reconstruction r = iterate_hermite(s, kPi, o);
      const double q = std::pow(s.delta() * kPi, 2) / (kPi * kPi);
      for (std::size_t n = 0; n < r.report.errors.size(); ++n) {
        CHECK(r.report.errors[n] <= std::pow(q, static_cast<double>(n + 1)) + 1e-3);
        CHECK(r.report.bound_curve[n] == doctest::Approx(std::pow(r.report.contraction_predicted, n + 1.0)));
      }
      CHECK(r.report.converged);
      CHECK(relative_error(f, r.signal) < 1e-10);
    }
  }
  SUBCASE("k = 2 geometric decay at 0.75 L") {
    const PeriodicBandSignal f = random_signal(9, kPeriod, kPi, false);
    HermiteIterationOptions o;
    o.truth = f;
    const Reconstruction r = iterate_hermite(sampled(f, 0.75 * L(2), 2, 9), kPi, o);
    const double predicted = std::pow(0.75, 4);
    const auto& e = r.report.errors;
    REQUIRE(e.size() >= 4);
    for (std::size_t n = 1; n + 1 < e.size() && e[n] > 1e-12; ++n) CHECK(e[n + 1] / e[n] <= predicted + 1e-2);
  }
  SUBCASE("monotone decay") {
    for (int k = 1; k <= 3; ++k) {
      const PeriodicBandSignal f = random_signal(20 + k, kPeriod, kPi, false);
      HermiteIterationOptions o;
      o.truth = f;
      const Reconstruction r = iterate_hermite(sampled(f, 0.9 * L(k), k, 5), kPi, o);
      const auto& e = r.report.errors;
      for (std::size_t n = 0; n + 1 < e.size(); ++n) CHECK(e[n + 1] <= r.report.contraction_predicted * e[n] + 1e-10);
    }
  }
  SUBCASE("blind mode reports update norms") {
    const PeriodicBandSignal f = random_signal(4, kPeriod, kPi, false);
    const Reconstruction r = iterate_hermite(sampled(f, 0.7, 2, 4), kPi);
    CHECK_FALSE(r.report.reference_errors);
    CHECK(r.report.errors.size() == static_cast<std::size_t>(r.report.iterations));
    CHECK(r.report.residual_final <= 1e-12);
    CHECK(relative_error(f, r.signal) < 1e-10);
  }
  SUBCASE("gap condition") {
    const PeriodicBandSignal f = random_signal(4, kPeriod, kPi, false);
    CHECK_THROWS_AS(iterate_hermite(sampled(f, 1.5, 1, 4), kPi), GapConditionError);
  }
}

TEST_CASE("divergence monitor") {
  DivergenceMonitor m;
  CHECK_NOTHROW(m.observe(1.0));
  for (int i = 0; i < 4; ++i) CHECK_NOTHROW(m.observe(1.0 + i));
  CHECK_THROWS_AS(m.observe(10.0), DivergenceError);

  DivergenceMonitor floor;
  for (int i = 0; i < 20; ++i) CHECK_NOTHROW(floor.observe(1e-15));

  DivergenceMonitor mixed;
  for (int i = 0; i < 20; ++i) CHECK_NOTHROW(mixed.observe(i % 3 == 0 ? 0.5 : 1.0));
  try {
    DivergenceMonitor d;
    for (int i = 0; i < 10; ++i) d.observe(1.0);
  } catch (const DivergenceError& e) {
    CHECK(e.update_norms().size() == 6);
  }
}

TEST_CASE("frame operator") {
  SUBCASE("uniform oversampled k = 1 is twice the identity") {
    const std::vector<double> pts = make_partition(kPeriod, kPeriod / 50, 0.0, 0);
    const PeriodicBandSignal f = random_signal(1, kPeriod, kPi, false);
    CHECK(l2_norm(frame_operator(take_samples(f, pts, 1), kPi) - f.scaled(2.0)) < 1e-10);
  }
  SUBCASE("zero") {
    const PeriodicBandSignal z = PeriodicBandSignal::zero(kPeriod, kPi);
    CHECK(l2_norm(frame_operator(sampled(z, 0.5, 2, 1), kPi)) == 0.0);
  }
  SUBCASE("self-adjoint") {
    const std::vector<double> pts = make_partition(kPeriod, 0.8, 0.5, 3);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const PeriodicBandSignal f = random_signal(seed, kPeriod, kPi, false);
      const PeriodicBandSignal g = random_signal(seed + 50, kPeriod, kPi, false);
      for (int k = 1; k <= 3; ++k) {
        const cplx a = inner_product(frame_operator(take_samples(f, pts, k), kPi), g);
        const cplx b = inner_product(f, frame_operator(take_samples(g, pts, k), kPi));
        CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
        CHECK(inner_product(frame_operator(take_samples(f, pts, k), kPi), f).real() >= 0.0);
      }
    }
  }
}

TEST_CASE("empirical frame bounds") {
  SUBCASE("uniform oversampled") {
    const SampleSet s = take_samples(PeriodicBandSignal::zero(kPeriod, kPi), make_partition(kPeriod, kPeriod / 50, 0.0, 0), 1);
    const EmpiricalFrameBounds b = empirical_frame_bounds(s, kPi);
    CHECK(b.A_emp == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(b.B_emp == doctest::Approx(2.0).epsilon(1e-10));
  }
  SUBCASE("single point") {
    const SampleSet s(kPeriod, {3.0}, 1, {1.0});
    CHECK(std::abs(empirical_frame_bounds(s, kPi).A_emp) < 1e-12);
  }
  SUBCASE("sandwich and spectrum") {
    for (int k = 1; k <= 3; ++k) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const std::vector<double> pts = make_partition(kPeriod, 0.8 * L(k), 0.5, seed);
        const SampleSet s = take_samples(PeriodicBandSignal::zero(kPeriod, kPi), pts, k);
        const EmpiricalFrameBounds e = empirical_frame_bounds(s, kPi);
        const FrameBounds a = frame_bounds(k, s.delta(), kPi, CrSource::eigensolver);
        CHECK(a.A <= e.A_emp);
        CHECK(e.A_emp <= e.B_emp);
        CHECK(e.B_emp <= a.B);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(frame_operator_matrix(pts, k));
        CHECK(es.eigenvalues().minCoeff() >= e.A_emp - 1e-9);
        CHECK(es.eigenvalues().maxCoeff() <= e.B_emp + 1e-9);
      }
    }
  }
}

TEST_CASE("frame energy matches the frame matrix") {
  const PeriodicBandSignal f = random_signal(2, kPeriod, kPi, false);
  const std::vector<double> pts = make_partition(kPeriod, 0.6, 0.5, 2);
  const Eigen::MatrixXcd g = frame_matrix(pts, kPeriod, kPi, 2);
  Eigen::VectorXcd c(static_cast<Eigen::Index>(f.dimension()));
  for (std::size_t i = 0; i < f.dimension(); ++i) c(static_cast<Eigen::Index>(i)) = f.coeffs()[i] * std::sqrt(kPeriod);
  const double quad = (c.adjoint() * g * c)(0, 0).real();
  CHECK(frame_energy(take_samples(f, pts, 2)) == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("frame iteration") {
  SUBCASE("empirical bounds") {
    for (int k = 1; k <= 2; ++k) {
      const PeriodicBandSignal f = random_signal(30 + k, kPeriod, kPi, false);
      FrameIterationOptions o;
      o.truth = f;
      const Reconstruction r = iterate_frame(sampled(f, 0.5 / kPi * L(k), k, 7), kPi, o);
      REQUIRE(r.report.rho.has_value());
      const auto& e = r.report.errors;
      CHECK(e.front() == doctest::Approx(1.0));
      for (std::size_t n = 0; n + 1 < e.size() && e[n] > 1e-10; ++n) {
        CHECK(e[n + 1] / e[n] <= r.report.contraction_predicted + 1e-3);
      }
      for (std::size_t n = 0; n < e.size(); ++n) {
        CHECK(r.report.bound_curve[n] == doctest::Approx(std::pow(r.report.contraction_predicted, static_cast<double>(n))));
      }
      CHECK(r.report.converged);
      CHECK(relative_error(f, r.signal) < 1e-10);
    }
  }
  SUBCASE("uniform oversampled converges in one step") {
    const PeriodicBandSignal f = random_signal(3, kPeriod, kPi, false);
    FrameIterationOptions o;
    o.truth = f;
    const Reconstruction r = iterate_frame(take_samples(f, make_partition(kPeriod, kPeriod / 50, 0.0, 0), 1), kPi, o);
    CHECK(*r.report.rho == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(r.report.errors.at(1) < 1e-10);
  }
  SUBCASE("analytic bounds make progress") {
    const PeriodicBandSignal f = random_signal(4, kPeriod, kPi, false);
    FrameIterationOptions o;
    o.truth = f;
    o.bounds = BoundSource::analytic;
    o.n_max = 20;
    const Reconstruction r = iterate_frame(sampled(f, 0.5, 1, 4), kPi, o);
    CHECK(r.report.contraction_predicted < 1.0);
    CHECK(r.report.errors.back() < r.report.errors.front());
    for (std::size_t n = 0; n + 1 < r.report.errors.size(); ++n) CHECK(r.report.errors[n + 1] <= r.report.errors[n] + 1e-12);
  }
  SUBCASE("zero data") {
    const PeriodicBandSignal z = PeriodicBandSignal::zero(kPeriod, kPi);
    const Reconstruction r = iterate_frame(sampled(z, 0.5, 1, 4), kPi);
    CHECK(l2_norm(r.signal) == 0.0);
    CHECK(r.report.converged);
  }
  SUBCASE("not a frame") {
    const SampleSet s(kPeriod, {3.0}, 1, {1.0});
    CHECK_THROWS_AS(iterate_frame(s, kPi), PreconditionError);
  }
}

TEST_CASE("error bound") {
  CHECK(error_bound(1, 0.5 / kPi, kPi, 0) == doctest::Approx(0.25 / (kPi * kPi)));
  CHECK(error_bound(1, 0.5 / kPi, kPi, 3) == doctest::Approx(std::pow(error_bound(1, 0.5 / kPi, kPi, 0), 4)));
  for (int n = 0; n < 50; n += 7) CHECK(error_bound(2, L(2) * (1 - 1e-6), kPi, n) < 1.0);
  CHECK_THROWS_AS(error_bound(1, 1.2, kPi, 0), DomainError);
}

TEST_CASE("report JSON") {
  const PeriodicBandSignal f = random_signal(4, kPeriod, kPi, false);
  FrameIterationOptions o;
  o.truth = f;
  const Reconstruction r = iterate_frame(sampled(f, 0.5, 1, 4), kPi, o);
  const nlohmann::json j = to_json(r.report);
  for (const char* key : {"method", "k", "sigma", "delta", "T", "rho", "contraction_predicted", "errors", "bound_curve",
                          "iterations", "converged", "residual_final"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["method"] == "frame_iteration");
  const Reconstruction h = iterate_hermite(sampled(f, 0.5, 1, 4), kPi);
  CHECK_FALSE(to_json(h.report).contains("rho"));
}
