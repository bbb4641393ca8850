#pragma once

#include <functional>
#include <vector>

namespace bandrec {

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (exact for polynomials of degree 2n - 1).
GaussRule gauss_legendre(unsigned n);

struct QuadratureResult {
  double value;
  unsigned nodes;  // nodes used by the accepted estimate
  bool converged;
};

/// Composite 16-point Gauss-Legendre on [a, b].
///
/// Starts at `initial_nodes` (rounded up to a multiple of 16) and doubles the
/// panel count until two successive estimates agree to `rel_tol`, or the node
/// budget `max_nodes` is reached (then `converged` is false).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           unsigned initial_nodes = 256, double rel_tol = 1e-10,
                           unsigned max_nodes = 1u << 16);

}  // namespace bandrec
