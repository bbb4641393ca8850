#include "bandrec/constants.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include "bandrec/errors.hpp"
#include "bandrec/quadrature.hpp"

namespace bandrec {

namespace {

constexpr double kPi = std::numbers::pi;

// Values as tabulated in the literature; never substituted for derived ones.
constexpr double kPrintedC1 = kPi * kPi;
constexpr double kPrintedC2 = 500.5467;
constexpr double kPrintedC3 = 61529.0;
constexpr double kPrintedTau = 5.0625;

void require_positive_order(int r, const char* who) {
  if (r < 1) throw DomainError(std::string(who) + ": order must be >= 1, got " + std::to_string(r));
}

template <class F>
double bisect_root(F f, double lo, double hi) {
  auto tol = [](double a, double b) { return std::abs(b - a) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(a); };
  std::uintmax_t max_iter = 200;
  const auto bracket = boost::math::tools::bisect(f, lo, hi, tol, max_iter);
  return 0.5 * (bracket.first + bracket.second);
}

// Jacobi polynomials P_n^{(a,a)}(t) for n = 0..count-1 at one point.
void symmetric_jacobi(int a, double t, int count, double* out) {
  if (count <= 0) return;
  out[0] = 1.0;
  if (count == 1) return;
  out[1] = (a + 1.0) * t;
  for (int n = 2; n < count; ++n) {
    const double s = 2.0 * n + 2.0 * a;
    const double lead = 2.0 * n * (n + 2.0 * a) * (s - 2.0);
    const double c1 = (s - 1.0) * s * (s - 2.0);
    const double c2 = 2.0 * (n + a - 1.0) * (n + a - 1.0) * s;
    out[n] = (c1 * t * out[n - 1] - c2 * out[n - 2]) / lead;
  }
}

// Minimal Rayleigh quotient of int |u^(r)|^2 / int |u|^2 over span{(1-t^2)^r P_n^{(r,r)}, n < d},
// where x = (1 + t) / 2 maps [-1, 1] onto [0, 1].
//
// The r-th derivative of (1-t^2)^r P_n^{(r,r)} is (-2)^r (n+1)_r P_{n+r}, so the stiffness matrix
// is diagonal and the basis is rescaled to make it the identity. The ground state is then the
// dominant eigenvector of the rescaled mass matrix, found by inverse iteration with shift 0.
double ritz_min_eigenvalue(int r, int d, const EigensolverOptions& options) {
  const GaussRule rule = gauss_legendre(static_cast<unsigned>(2 * r + d + 8));
  const std::size_t q = rule.nodes.size();

  Eigen::VectorXd stiffness(d);
  for (int n = 0; n < d; ++n) {
    // 0.5 * 4^r (from dx = dt/2 and d/dx = 2 d/dt) * 4^r ((n+1)_r)^2 * 2 / (2(n+r)+1)
    double log_k = 2.0 * r * std::log(4.0) - std::log(2.0 * (n + r) + 1.0);
    log_k += 2.0 * (std::lgamma(n + r + 1.0) - std::lgamma(n + 1.0));
    stiffness(n) = std::exp(0.5 * log_k);
  }

  Eigen::MatrixXd basis(d, static_cast<Eigen::Index>(q));
  std::vector<double> jac(d);
  for (std::size_t j = 0; j < q; ++j) {
    const double t = rule.nodes[j];
    symmetric_jacobi(r, t, d, jac.data());
    const double envelope = std::pow(1.0 - t * t, r) * std::sqrt(0.5 * rule.weights[j]);
    for (int n = 0; n < d; ++n) basis(n, static_cast<Eigen::Index>(j)) = envelope * jac[n] / stiffness(n);
  }
  const Eigen::MatrixXd mass = basis * basis.transpose();

  Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
  v(0) = 1.0;
  double mu = 0.0;
  for (int it = 0; it < options.max_iterations; ++it) {
    Eigen::VectorXd w = mass * v;
    const double next = v.dot(w);
    v = w / w.norm();
    if (it > 0 && std::abs(next - mu) <= options.tolerance * std::abs(next)) return 1.0 / next;
    mu = next;
  }
  throw SolverError("wirtinger_constant: inverse iteration did not converge for r = " + std::to_string(r),
                    mu > 0 ? 1.0 / mu : 0.0);
}

double log_factorial_ratio(int r) {
  // log[(4r)! (r!)^2 / ((2r)!)^2]
  if (r <= 8) {
    double num = std::tgamma(4.0 * r + 1.0) * std::pow(std::tgamma(r + 1.0), 2);
    return std::log(num) - 2.0 * std::log(std::tgamma(2.0 * r + 1.0));
  }
  return std::lgamma(4.0 * r + 1.0) + 2.0 * std::lgamma(r + 1.0) - 2.0 * std::lgamma(2.0 * r + 1.0);
}

}  // namespace

std::string_view to_string(CrSource source) {
  switch (source) {
    case CrSource::printed: return "printed";
    case CrSource::characteristic_equation: return "characteristic_equation";
    case CrSource::eigensolver: return "eigensolver";
    case CrSource::lower_bound: return "lower_bound";
    case CrSource::upper_bound: return "upper_bound";
  }
  return "unknown";
}

std::string_view to_string(TauSource source) {
  return source == TauSource::printed ? "printed" : "root_find";
}

CrSource parse_cr_source(std::string_view name) {
  for (CrSource s : {CrSource::printed, CrSource::characteristic_equation, CrSource::eigensolver,
                     CrSource::lower_bound, CrSource::upper_bound}) {
    if (name == to_string(s)) return s;
  }
  throw DomainError("unknown c_r source '" + std::string(name) + "'");
}

double clamped_beam_root() {
  // cos(mu) cosh(mu) = 1 written without the overflow-prone product.
  return bisect_root([](double mu) { return std::cos(mu) - 1.0 / std::cosh(mu); }, 4.5, 5.0);
}

double tau(TauSource source) {
  if (source == TauSource::printed) return kPrintedTau;
  const double t = bisect_root(
      [](double t) { return std::tanh(0.5 * kPi * t) + std::tan(0.5 * kPi * t); }, 1.0 + 1e-9, 2.0);
  return t * t * t * t;
}

ConstantValue wirtinger_eigensolver(int r, const EigensolverOptions& options) {
  require_positive_order(r, "wirtinger_constant");
  if (options.basis_sizes.size() < 3) throw DomainError("wirtinger_constant: need at least three basis sizes");
  double prev = 0.0;
  double value = 0.0;
  for (int d : options.basis_sizes) {
    prev = value;
    value = ritz_min_eigenvalue(r, d, options);
  }
  return {value, std::abs(value - prev), CrSource::eigensolver};
}

ConstantValue wirtinger_constant(int r, CrSource method) {
  require_positive_order(r, "wirtinger_constant");
  switch (method) {
    case CrSource::printed:
      if (r == 1) return {kPrintedC1, 0.0, method};
      if (r == 2) return {kPrintedC2, 0.0, method};
      if (r == 3) return {kPrintedC3, 0.0, method};
      throw DomainError("wirtinger_constant: printed value available only for r in {1, 2, 3}");
    case CrSource::characteristic_equation:
      if (r == 1) return {kPi * kPi, 0.0, method};
      if (r == 2) {
        const double mu = clamped_beam_root();
        return {mu * mu * mu * mu, 0.0, method};
      }
      throw DomainError("wirtinger_constant: characteristic equation available only for r in {1, 2}");
    case CrSource::eigensolver:
      return wirtinger_eigensolver(r, EigensolverOptions{});
    case CrSource::lower_bound:
    case CrSource::upper_bound:
      break;
  }
  throw DomainError("wirtinger_constant: bounds are not values; use cr_bounds()");
}

CrBounds cr_bounds(int r) {
  require_positive_order(r, "cr_bounds");
  const double log_ratio = log_factorial_ratio(r);
  CrBounds b{};
  b.log_lower = std::log((4.0 * r - 2.0) / (4.0 * r * r - r)) + log_ratio;
  b.log_upper = std::log((4.0 * r + 1.0) / (2.0 * r + 1.0)) + log_ratio;
  b.log_asymptotic = 0.5 * std::log(8.0 * kPi * r) + 2.0 * r * std::log(4.0 * r / std::numbers::e);
  b.lower = std::exp(b.log_lower);
  b.upper = std::exp(b.log_upper);
  b.asymptotic = std::exp(b.log_asymptotic);
  return b;
}

boost::multiprecision::cpp_int c_of_k(int k) {
  require_positive_order(k, "c_of_k");
  using boost::multiprecision::cpp_int;
  // binom(k+s-1, s) = binom(k+s-2, s-1) (k+s-1) / s
  cpp_int term = 1;
  cpp_int sum = 1;
  for (int s = 1; s < k; ++s) {
    term = term * (k + s - 1) / s;
    sum += term;
  }
  return sum * sum;
}

double log_ck(int k, CrSource source) {
  switch (source) {
    case CrSource::lower_bound: return cr_bounds(k).log_lower;
    case CrSource::upper_bound: return cr_bounds(k).log_upper;
    default: return std::log(wirtinger_constant(k, source).value);
  }
}

double ck(int k, CrSource source) { return std::exp(log_ck(k, source)); }

CrSource table_cr_source(int k) { return k <= 3 ? CrSource::printed : CrSource::lower_bound; }

GapThresholds gap_thresholds(int k, double sigma, CrSource source) {
  require_positive_order(k, "gap_thresholds");
  if (!(sigma > 0)) throw DomainError("gap_thresholds: sigma must be positive");
  GapThresholds g{};
  g.k = k;
  g.sigma = sigma;
  g.cr_source = source;
  try {
    g.L_hermite = std::exp(log_ck(k, source) / (2.0 * k)) / sigma;
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) +
                      "; sources available for every k: eigensolver, lower_bound, upper_bound");
  }
  const double log_taylor = std::lgamma(static_cast<double>(k)) + 0.5 * std::log((2.0 * k - 1.0) * 2.0 * k);
  g.L_taylor = 2.0 / sigma * std::exp(log_taylor / k);
  return g;
}

double contraction_constant(int k, double delta, double sigma, CrSource source) {
  require_positive_order(k, "contraction_constant");
  return std::exp(2.0 * k * std::log(delta * sigma) - log_ck(k, source));
}

FrameBounds frame_bounds(int k, double delta, double sigma, CrSource source) {
  if (!(delta > 0) || !(sigma > 0)) throw DomainError("frame_bounds: delta and sigma must be positive");
  const GapThresholds g = gap_thresholds(k, sigma, source);
  if (!(delta < g.L_hermite)) throw GapConditionError(delta, g.L_hermite);

  const double q = contraction_constant(k, delta, sigma, source);
  const double ck_comb = c_of_k(k).convert_to<double>();
  FrameBounds fb{};
  fb.A = (1.0 - q) * (1.0 - q) / (2.0 * k * ck_comb);

  const double ds2 = (delta * sigma) * (delta * sigma);
  double series = 0.0;
  double term = 1.0;  // (delta sigma)^{2l} / (l!)^2
  for (int l = 0; l < k; ++l) {
    if (l > 0) term *= ds2 / (static_cast<double>(l) * l);
    series += term;
  }
  fb.B = 2.0 * series * std::exp(delta * delta + sigma * sigma);
  return fb;
}

ConstantsCatalog build_catalog(int r_max, CrSource preferred, TauSource tau_source) {
  require_positive_order(r_max, "build_catalog");
  ConstantsCatalog cat{r_max, {}, tau(tau_source), tau_source};
  for (int r = 1; r <= r_max; ++r) {
    const bool available = (preferred == CrSource::printed && r <= 3) ||
                           (preferred == CrSource::characteristic_equation && r <= 2) ||
                           preferred == CrSource::eigensolver;
    if (preferred == CrSource::lower_bound || preferred == CrSource::upper_bound) {
      const CrBounds b = cr_bounds(r);
      cat.cr_values[r] = {preferred == CrSource::lower_bound ? b.lower : b.upper, 0.0, preferred};
    } else {
      cat.cr_values[r] = wirtinger_constant(r, available ? preferred : CrSource::eigensolver);
    }
  }
  return cat;
}

}  // namespace bandrec
