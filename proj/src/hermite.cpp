#include "bandrec/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bandrec/errors.hpp"

namespace bandrec {

namespace {

using Poly = std::vector<double>;

Poly multiply(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// (s - 1)^n
Poly shifted_power(int n) {
  Poly p{1.0};
  for (int i = 0; i < n; ++i) p = multiply(p, Poly{-1.0, 1.0});
  return p;
}

Poly monomial(int n, double coeff = 1.0) {
  Poly p(static_cast<std::size_t>(n) + 1, 0.0);
  p.back() = coeff;
  return p;
}

// Basis polynomials A_0l, A_1l on [0, 1] (xi = 0, eta = 1, exponent k):
//   A_0l(s) = (s-1)^k s^l / l! sum_{q=0}^{k-1-l} g_0^(q)(0) s^q / q!,     g_0 = (s-1)^{-k}
//   A_1l(s) = s^k (s-1)^l / l! sum_{q=0}^{k-1-l} g_1^(q)(1) (s-1)^q / q!, g_1 = s^{-k}
// with g^(q) = (-1)^q k (k+1)...(k+q-1) (s - node)^{-(k+q)}.
struct UnitBasis {
  std::vector<Poly> left;
  std::vector<Poly> right;
};

UnitBasis unit_basis(int k) {
  UnitBasis basis;
  const Poly left_factor = shifted_power(k);
  const Poly right_factor = monomial(k);
  for (int l = 0; l < k; ++l) {
    const double inv_lfact = 1.0 / std::tgamma(l + 1.0);
    Poly left_sum{0.0};
    Poly right_sum{0.0};
    double rising = 1.0;  // k (k+1) ... (k+q-1)
    double qfact = 1.0;
    for (int q = 0; q <= k - 1 - l; ++q) {
      if (q > 0) {
        rising *= k + q - 1;
        qfact *= q;
      }
      // g_0^(q)(0) = (-1)^q rising (-1)^{-(k+q)} = (-1)^k rising
      const double g0 = ((k % 2) ? -1.0 : 1.0) * rising / qfact;
      const double g1 = ((q % 2) ? -1.0 : 1.0) * rising / qfact;
      Poly lt = monomial(q, g0);
      Poly rt = shifted_power(q);
      for (double& c : rt) c *= g1;
      if (left_sum.size() < lt.size()) left_sum.resize(lt.size(), 0.0);
      if (right_sum.size() < rt.size()) right_sum.resize(rt.size(), 0.0);
      for (std::size_t i = 0; i < lt.size(); ++i) left_sum[i] += lt[i];
      for (std::size_t i = 0; i < rt.size(); ++i) right_sum[i] += rt[i];
    }
    Poly a0 = multiply(multiply(left_factor, monomial(l, inv_lfact)), left_sum);
    Poly a1 = multiply(multiply(right_factor, shifted_power(l)), right_sum);
    for (double& c : a1) c *= inv_lfact;
    a0.resize(static_cast<std::size_t>(2 * k), 0.0);
    a1.resize(static_cast<std::size_t>(2 * k), 0.0);
    basis.left.push_back(std::move(a0));
    basis.right.push_back(std::move(a1));
  }
  return basis;
}

}  // namespace

HermitePatch::HermitePatch(double xi, double eta, int k, std::vector<cplx> poly)
    : xi_(xi), eta_(eta), k_(k), poly_(std::move(poly)) {
  if (!(xi_ < eta_)) throw DomainError("HermitePatch: requires xi < eta");
  if (k_ < 1) throw DomainError("HermitePatch: k must be >= 1");
  if (poly_.size() > static_cast<std::size_t>(2 * k_)) throw PreconditionError("HermitePatch: degree exceeds 2k - 1");
}

HermitePatch build_patch(double xi, double eta, std::span<const cplx> left, std::span<const cplx> right) {
  if (!(xi < eta)) throw DomainError("build_patch: requires xi < eta");
  if (left.empty()) throw DomainError("build_patch: k must be >= 1");
  if (left.size() != right.size()) throw PreconditionError("build_patch: endpoint data of different lengths");
  const int k = static_cast<int>(left.size());
  const double h = eta - xi;
  const UnitBasis basis = unit_basis(k);

  std::vector<cplx> unit(static_cast<std::size_t>(2 * k), 0.0);
  double hpow = 1.0;
  for (int l = 0; l < k; ++l) {
    // d^l/dx^l = h^{-l} d^l/ds^l, so the unit-interval data are f^(l) h^l.
    const cplx lv = left[static_cast<std::size_t>(l)] * hpow;
    const cplx rv = right[static_cast<std::size_t>(l)] * hpow;
    for (std::size_t i = 0; i < unit.size(); ++i) unit[i] += basis.left[l][i] * lv + basis.right[l][i] * rv;
    hpow *= h;
  }
  double inv = 1.0;
  for (cplx& c : unit) {
    c *= inv;
    inv /= h;
  }
  return {xi, eta, k, std::move(unit)};
}

cplx evaluate_patch(const HermitePatch& p, double x, int j) {
  if (j < 0) throw DomainError("evaluate_patch: derivative order must be non-negative");
  const auto a = p.poly();
  const int degree = static_cast<int>(a.size()) - 1;
  if (j > degree) return 0.0;
  const double t = x - p.xi();
  cplx acc = 0.0;
  for (int n = degree; n >= j; --n) {
    double falling = 1.0;  // n (n-1) ... (n-j+1)
    for (int i = 0; i < j; ++i) falling *= n - i;
    acc = acc * t + a[static_cast<std::size_t>(n)] * falling;
  }
  return acc;
}

std::size_t owning_interval(const SampleSet& samples, double x) {
  const auto pts = samples.points();
  const auto it = std::upper_bound(pts.begin(), pts.end(), x);
  if (it == pts.begin()) return pts.size() - 1;
  return static_cast<std::size_t>(it - pts.begin()) - 1;
}

std::vector<HermitePatch> build_patches(const SampleSet& samples) {
  const std::size_t n = samples.size();
  std::vector<HermitePatch> patches;
  patches.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t next = (i + 1) % n;
    patches.push_back(build_patch(samples.point(i), samples.interval_end(i), samples.row(i), samples.row(next)));
  }
  return patches;
}

GridFunction piecewise_hermite(const SampleSet& samples, std::size_t grid_size) {
  if (samples.size() == 0) throw DomainError("piecewise_hermite: empty sample set");
  const std::vector<HermitePatch> patches = build_patches(samples);
  const double period = samples.period();
  const double first = samples.point(0);
  std::vector<cplx> values(grid_size);
  for (std::size_t n = 0; n < grid_size; ++n) {
    const double x = period * static_cast<double>(n) / static_cast<double>(grid_size);
    const std::size_t i = owning_interval(samples, x);
    // The wrap interval is parametrized on [x_{N-1}, x_0 + T].
    const double local = (i + 1 == samples.size() && x < first) ? x + period : x;
    values[n] = evaluate_patch(patches[i], local, 0);
  }
  return {period, std::move(values)};
}

}  // namespace bandrec
