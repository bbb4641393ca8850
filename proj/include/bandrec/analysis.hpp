#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "bandrec/signal.hpp"

namespace bandrec {

/// A function on [a, b] clamped to order r: f^(l)(a) = f^(l)(b) = 0 for l < r.
/// `eval(x, j)` returns f^(j)(x) for j up to at least 2r.
struct IntervalFunction {
  double a;
  double b;
  int r;
  std::function<cplx(double, int)> eval;
};

/// Throws PreconditionError unless |f^(l)(a)|, |f^(l)(b)| <= 1e-8 scale / (b - a)^l for l < r,
/// scale = max |f| on [a, b].
void require_clamped(const IntervalFunction& f, int r);

/// The equality case of the Arthurs-Anderson-Hall inequality on [a, b]
/// (c = 1, mu = pi tau^{1/4} with the root-find tau). Derivatives of every order.
IntervalFunction aah_extremal(double a, double b);

/// sin^2(pi (x - a) / (b - a)); clamped to order 1.
IntervalFunction sine_squared(double a, double b);

struct InequalityCheck {
  double lhs;
  double rhs;
  bool holds;
};

/// int |f|^2 <= (b - a)^{2r} / c_r int |f^(r)|^2, with the derived c_r.
InequalityCheck verify_ws(const IntervalFunction& f, int r);

/// int |f|^2 <= (b - a)^{4r} / c_r^2 int |f^(2r)|^2.
InequalityCheck verify_ws_2r(const IntervalFunction& f, int r);

/// int |f|^2 / int |f''|^2 by quadrature.
double rayleigh_quotient(const IntervalFunction& f);

struct DoubleZeroReport {
  std::vector<double> zeros;
  double max_gap = 0.0;
  double threshold = 0.0;  // pi tau^{1/4} / sigma
  bool consistent = true;
  bool vacuous = false;  // fewer than two double zeros
};

/// Locates the double zeros of f on one period and tests for a consecutive (cyclic) gap
/// larger than pi tau^{1/4} / sigma. A zero counts as double when |f| <= tol scale and
/// |f'| <= tol scale sigma there, scale = max |f|.
DoubleZeroReport double_zero_gap(const PeriodicBandSignal& f, double zero_tol = 1e-7);

struct UniquenessReport {
  double min_singular_value;
  double max_singular_value;
  bool unique;
};

/// Singular values of f -> {f(x_i), f'(x_i) / sigma} on the model space; unique when the
/// smallest exceeds 1e-8 times the largest.
UniquenessReport uniqueness_check(std::span<const double> points, double period, double sigma);

/// Random clamped test function on [a, b]: family 0 is s^r (1-s)^r times a random complex
/// quartic, family 1 is sin^{2r}(pi s) times a random trigonometric polynomial (s = (x-a)/(b-a)).
IntervalFunction random_clamped_function(std::uint64_t seed, double a, double b, int r, int family);

struct VerificationRecord {
  std::string check;
  nlohmann::json inputs;
  double lhs;
  double rhs;
  bool holds;
};

struct CorpusOptions {
  std::uint64_t seed = 2024;
  std::string only;  // empty: all checks; else one of ws, ws-2r, aah-equality, double-zero, uniqueness
  int cases_per_order = 100;
  int aah_intervals = 10;
  int zero_signals = 50;
  int partitions = 100;
};

/// The inequality / zero-separation / uniqueness corpus. Deterministic in the seed.
std::vector<VerificationRecord> verification_corpus(const CorpusOptions& options);

nlohmann::json to_json(const VerificationRecord& record);

}  // namespace bandrec
