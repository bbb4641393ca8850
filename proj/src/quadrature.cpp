#include "bandrec/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "bandrec/errors.hpp"

namespace bandrec {

GaussRule gauss_legendre(unsigned n) {
  if (n == 0) throw DomainError("gauss_legendre: need at least one node");
  // Boost returns the non-negative zeros only.
  const std::vector<double> half = boost::math::legendre_p_zeros<double>(static_cast<int>(n));
  GaussRule rule;
  rule.nodes.reserve(n);
  for (double x : half) {
    rule.nodes.push_back(x);
    if (x != 0.0) rule.nodes.push_back(-x);
  }
  std::sort(rule.nodes.begin(), rule.nodes.end());
  rule.weights.reserve(n);
  for (double x : rule.nodes) {
    const double dp = boost::math::legendre_p_prime(static_cast<int>(n), x);
    rule.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  }
  return rule;
}

namespace {

double composite(const std::function<double(double)>& f, double a, double b, unsigned panels) {
  using Rule = boost::math::quadrature::gauss<double, 16>;
  const double width = (b - a) / panels;
  double sum = 0.0;
  for (unsigned p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    sum += Rule::integrate(f, lo, p + 1 == panels ? b : lo + width);
  }
  return sum;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           unsigned initial_nodes, double rel_tol, unsigned max_nodes) {
  if (!(a < b)) {
    if (a == b) return {0.0, 0, true};
    throw DomainError("integrate: requires a <= b");
  }
  unsigned panels = std::max(1u, (initial_nodes + 15) / 16);
  double prev = composite(f, a, b, panels);
  while (panels * 32 <= max_nodes) {
    panels *= 2;
    const double next = composite(f, a, b, panels);
    if (std::abs(next - prev) <= rel_tol * std::abs(next) || next == prev) {
      return {next, panels * 16, true};
    }
    prev = next;
  }
  return {prev, panels * 16, false};
}

}  // namespace bandrec
