#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bandrec {

/// Where a Wirtinger-Sobolev constant c_r came from.
enum class CrSource { printed, characteristic_equation, eigensolver, lower_bound, upper_bound };

enum class TauSource { printed, root_find };

std::string_view to_string(CrSource source);
std::string_view to_string(TauSource source);
/// Throws DomainError for unknown names.
CrSource parse_cr_source(std::string_view name);

/// Source used whenever a caller does not name one: a derived value, never a printed one.
inline constexpr CrSource kDefaultCrSource = CrSource::eigensolver;

struct ConstantValue {
  double value;
  double uncertainty;  // 0 for printed values and exact closed forms
  CrSource source;
};

/// Settings for the Rayleigh-Ritz eigensolver behind CrSource::eigensolver.
struct EigensolverOptions {
  /// Basis sizes of the successive refinements (at least three).
  std::vector<int> basis_sizes{12, 16, 20, 24};
  int max_iterations = 2000;
  double tolerance = 1e-15;  // relative eigenvalue change that stops inverse iteration
};

/// c_r: the minimal eigenvalue of (-1)^r u^(2r) = lambda u on [0, 1], u^(j)(0) = u^(j)(1) = 0
/// for j < r.
///
/// `printed` is available for r in {1, 2, 3}, `characteristic_equation` for r in {1, 2}.
/// `eigensolver` works for every r >= 1; its uncertainty is the change produced by the
/// last basis refinement. Bound sources are rejected here; use cr_bounds().
ConstantValue wirtinger_constant(int r, CrSource method);
ConstantValue wirtinger_eigensolver(int r, const EigensolverOptions& options);

struct CrBounds {
  double lower;
  double upper;
  double asymptotic;  // reported only, never used as a c_r source
  double log_lower;
  double log_upper;
  double log_asymptotic;
};

/// Two-sided bounds on c_r and its large-r asymptotic form.
CrBounds cr_bounds(int r);

/// Smallest positive root of cos(mu) cosh(mu) = 1 (~4.7300).
double clamped_beam_root();

/// Arthurs-Anderson-Hall constant. root_find: t^4 with t the smallest root of
/// tanh(pi t / 2) + tan(pi t / 2) = 0 in (1, 2).
double tau(TauSource source);

/// C(k) = [sum_{s<k} binom(k + s - 1, s)]^2, exact.
boost::multiprecision::cpp_int c_of_k(int k);

/// log c_k from any source, including the bound sources.
double log_ck(int k, CrSource source);
double ck(int k, CrSource source);

struct GapThresholds {
  int k;
  double sigma;
  double L_hermite;  // c_k^{1/(2k)} / sigma
  double L_taylor;   // (2/sigma) ((k-1)! sqrt((2k-1) 2k))^{1/k}
  CrSource cr_source;
};

GapThresholds gap_thresholds(int k, double sigma, CrSource source);

/// The row policy of the reference gap table: printed c_k for k <= 3, lower bound above.
CrSource table_cr_source(int k);

/// (delta sigma)^{2k} / c_k.
double contraction_constant(int k, double delta, double sigma, CrSource source);

struct FrameBounds {
  double A;
  double B;
};

/// Analytic frame bounds for derivative samples of order < k with maximum gap delta.
/// Throws GapConditionError unless delta < L_hermite.
FrameBounds frame_bounds(int k, double delta, double sigma, CrSource source);

struct ConstantsCatalog {
  int r_max;
  std::map<int, ConstantValue> cr_values;
  double tau;
  TauSource tau_source;
};

/// c_r for r = 1..r_max from `preferred` where available, else from the eigensolver.
ConstantsCatalog build_catalog(int r_max, CrSource preferred, TauSource tau_source);

}  // namespace bandrec
