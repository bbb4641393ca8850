#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bandrec/constants.hpp"
#include "bandrec/errors.hpp"
#include "oracles.hpp"

using namespace bandrec;
using boost::multiprecision::cpp_int;

namespace {
constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("printed constants are stored verbatim") {
  CHECK(wirtinger_constant(1, CrSource::printed).value == doctest::Approx(kPi * kPi).epsilon(1e-6));
  CHECK(wirtinger_constant(2, CrSource::printed).value == 500.5467);
  CHECK(wirtinger_constant(3, CrSource::printed).value == 61529.0);
  CHECK(wirtinger_constant(2, CrSource::printed).source == CrSource::printed);
  CHECK_THROWS_AS(wirtinger_constant(4, CrSource::printed), DomainError);
  CHECK_THROWS_AS(wirtinger_constant(3, CrSource::characteristic_equation), DomainError);
  CHECK_THROWS_AS(wirtinger_constant(0, CrSource::eigensolver), DomainError);
  CHECK_THROWS_AS(wirtinger_constant(2, CrSource::lower_bound), DomainError);
}

TEST_CASE("characteristic equation") {
  const double mu = clamped_beam_root();
  CHECK(mu == doctest::Approx(4.7300).epsilon(1e-4));
  CHECK(std::abs(std::cos(mu) * std::cosh(mu) - 1.0) < 1e-10);
  CHECK(wirtinger_constant(1, CrSource::characteristic_equation).value == doctest::Approx(kPi * kPi));
  CHECK(wirtinger_constant(2, CrSource::characteristic_equation).value == doctest::Approx(500.5639).epsilon(1e-6));
}

TEST_CASE("eigensolver c_1 is pi squared") {
  const ConstantValue c1 = wirtinger_constant(1, CrSource::eigensolver);
  CHECK(rel(c1.value, kPi * kPi) < 1e-10);
  CHECK(c1.source == CrSource::eigensolver);
}

TEST_CASE("eigensolver c_2 agrees with the characteristic root") {
  const double c2 = wirtinger_constant(2, CrSource::eigensolver).value;
  CHECK(rel(c2, wirtinger_constant(2, CrSource::characteristic_equation).value) < 1e-8);
}

TEST_CASE("eigensolver agrees with a finite-difference discretization") {
  CHECK(rel(wirtinger_constant(1, CrSource::eigensolver).value, oracle::fd_wirtinger_extrapolated(1, 100)) < 1e-7);
  CHECK(rel(wirtinger_constant(2, CrSource::eigensolver).value, oracle::fd_wirtinger_extrapolated(2, 100)) < 1e-6);
  CHECK(rel(wirtinger_constant(3, CrSource::eigensolver).value, oracle::fd_wirtinger_extrapolated(3, 50)) < 1e-5);
}

TEST_CASE("eigensolver reports a small uncertainty") {
  for (int r = 1; r <= 12; ++r) {
    const ConstantValue v = wirtinger_constant(r, CrSource::eigensolver);
    CHECK(v.uncertainty <= 1e-8 * v.value);
  }
}

TEST_CASE("bounds on c_r") {
  const CrBounds b1 = cr_bounds(1);
  CHECK(b1.lower == doctest::Approx(4.0));
  CHECK(b1.upper == doctest::Approx(10.0));
  CHECK(b1.lower <= kPi * kPi);
  CHECK(kPi * kPi <= b1.upper);
  CHECK(std::pow(cr_bounds(4).lower, 1.0 / 8) / kPi == doctest::Approx(1.9169).epsilon(5e-5));
  for (int r = 1; r <= 12; ++r) {
    CAPTURE(r);
    const double c = wirtinger_constant(r, CrSource::eigensolver).value;
    const CrBounds b = cr_bounds(r);
    CHECK(b.lower <= c);
    CHECK(c <= b.upper);
    CHECK(std::log(b.upper) == doctest::Approx(b.log_upper));
  }
  // log-space evaluation stays finite where the factorials overflow
  const CrBounds big = cr_bounds(60);
  CHECK(std::isfinite(big.log_lower));
  CHECK(big.log_lower < big.log_upper);
  CHECK_THROWS_AS(cr_bounds(0), DomainError);
}

TEST_CASE("tau") {
  CHECK(tau(TauSource::printed) == 5.0625);
  const double t = tau(TauSource::root_find);
  const double x = kPi * std::pow(t, 0.25) / 2;
  CHECK(std::abs(std::tanh(x) + std::tan(x)) < 1e-10);
  CHECK(std::pow(t, 0.25) == doctest::Approx(1.5056).epsilon(1e-4));
  CHECK(rel(t * std::pow(kPi, 4), wirtinger_constant(2, CrSource::characteristic_equation).value) < 1e-6);
}

TEST_CASE("C(k)") {
  CHECK(c_of_k(1) == 1);
  CHECK(c_of_k(2) == 9);
  CHECK(c_of_k(3) == 100);
  for (int k = 1; k <= 20; ++k) {
    cpp_int sum = 0;
    for (int s = 0; s < k; ++s) {
      // binom(k + s - 1, s) by the multiplicative formula
      cpp_int b = 1;
      for (int i = 1; i <= s; ++i) b = b * (k - 1 + i) / i;
      sum += b;
    }
    CHECK(c_of_k(k) == sum * sum);
  }
}

TEST_CASE("gap thresholds") {
  const GapThresholds g1 = gap_thresholds(1, kPi, CrSource::printed);
  CHECK(g1.L_taylor == doctest::Approx(0.9003).epsilon(5e-5));
  CHECK(g1.L_hermite == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(gap_thresholds(3, kPi, CrSource::printed).L_hermite == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(gap_thresholds(10, kPi, CrSource::lower_bound).L_hermite == doctest::Approx(4.6263).epsilon(2e-5));
  CHECK(gap_thresholds(40, kPi, CrSource::upper_bound).L_hermite == doctest::Approx(19.5623).epsilon(5e-6));
  CHECK(gap_thresholds(2, 2 * kPi, CrSource::eigensolver).L_hermite ==
        doctest::Approx(gap_thresholds(2, kPi, CrSource::eigensolver).L_hermite / 2));
  CHECK_THROWS_AS(gap_thresholds(4, kPi, CrSource::printed), DomainError);
}

TEST_CASE("Taylor thresholds follow their closed form") {
  for (int k = 1; k <= 30; ++k) {
    CAPTURE(k);
    double fact = 1.0;
    for (int i = 2; i < k; ++i) fact *= i;
    const double direct = 2 / kPi * std::pow(fact * std::sqrt((2.0 * k - 1) * 2.0 * k), 1.0 / k);
    CHECK(gap_thresholds(k, kPi, CrSource::lower_bound).L_taylor == doctest::Approx(direct).epsilon(1e-12));
  }
  // k = 10 is tabulated as 3.0489 but the closed form gives 3.0821
  const double printed[] = {0.9003, 1.1849, 1.4139, 1.6479, 1.8852, 2.1239, 2.3632, 2.6028, 2.8425};
  for (int k = 1; k <= 9; ++k) {
    CHECK(std::abs(gap_thresholds(k, kPi, CrSource::lower_bound).L_taylor - printed[k - 1]) < 5e-5);
  }
  CHECK(std::abs(gap_thresholds(20, kPi, CrSource::lower_bound).L_taylor - 5.4697) < 5e-5);
  CHECK(std::abs(gap_thresholds(30, kPi, CrSource::lower_bound).L_taylor - 7.8448) < 5e-5);
}

TEST_CASE("table row policy") {
  CHECK(table_cr_source(1) == CrSource::printed);
  CHECK(table_cr_source(3) == CrSource::printed);
  CHECK(table_cr_source(4) == CrSource::lower_bound);
}

TEST_CASE("frame bounds") {
  const double delta = 0.5 / kPi;
  const FrameBounds fb = frame_bounds(1, delta, kPi, CrSource::printed);
  CHECK(fb.A == doctest::Approx(std::pow(1 - 0.25 / (kPi * kPi), 2) / 2).epsilon(1e-6));
  CHECK(fb.A == doctest::Approx(0.47499).epsilon(1e-4));
  CHECK(fb.B == doctest::Approx(2 * std::exp(delta * delta + kPi * kPi)));
  CHECK(fb.B == doctest::Approx(3.96e4).epsilon(1e-2));
  for (int k = 1; k <= 4; ++k) {
    const FrameBounds tiny = frame_bounds(k, 1e-9, kPi, CrSource::eigensolver);
    CHECK(tiny.A == doctest::Approx(1.0 / (2 * k * c_of_k(k).convert_to<double>())));
    for (double frac : {0.1, 0.5, 0.9, 0.999}) {
      const double L = gap_thresholds(k, kPi, CrSource::eigensolver).L_hermite;
      const FrameBounds f = frame_bounds(k, frac * L, kPi, CrSource::eigensolver);
      CHECK(f.A < f.B);
      CHECK(f.A > 0);
    }
  }
  CHECK_THROWS_AS(frame_bounds(1, 1.01, kPi, CrSource::eigensolver), GapConditionError);
  try {
    frame_bounds(1, 1.5, kPi, CrSource::eigensolver);
  } catch (const GapConditionError& e) {
    CHECK(e.threshold() == doctest::Approx(1.0));
    CHECK(std::string(e.what()).find("maximum gap condition violated") != std::string::npos);
  }
}

TEST_CASE("contraction constant") {
  CHECK(contraction_constant(1, 0.5 / kPi, kPi, CrSource::eigensolver) == doctest::Approx(0.25 / (kPi * kPi)));
}

TEST_CASE("catalog") {
  const ConstantsCatalog cat = build_catalog(5, CrSource::printed, TauSource::root_find);
  CHECK(cat.cr_values.size() == 5);
  CHECK(cat.cr_values.at(2).source == CrSource::printed);
  CHECK(cat.cr_values.at(4).source == CrSource::eigensolver);
  CHECK(cat.tau_source == TauSource::root_find);
  CHECK(parse_cr_source("lower_bound") == CrSource::lower_bound);
  CHECK_THROWS_AS(parse_cr_source("bogus"), DomainError);
}
