#include "fluxsize/quadrature.hpp"

#include <cmath>
#include <cstddef>

#include "fluxsize/constants.hpp"
#include "fluxsize/errors.hpp"

namespace fluxsize {

std::vector<QuadNode> gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: node count must be >= 1");
  std::vector<QuadNode> out(static_cast<std::size_t>(n));
  // Newton iteration on P_n with the usual Chebyshev-like initial guess.
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    out[static_cast<std::size_t>(i)] = {-x, w};
    out[static_cast<std::size_t>(n - 1 - i)] = {x, w};
  }
  if (n % 2 == 1) out[static_cast<std::size_t>(n / 2)].x = 0.0;  // exact centre node
  return out;
}

std::vector<QuadNode> gauss_legendre(int n, double a, double b) {
  auto nodes = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (auto& nd : nodes) {
    nd.x = mid + half * nd.x;
    nd.w *= half;
  }
  return nodes;
}

double gl_integrate(const std::function<double(double)>& f, double a, double b, int n) {
  const auto nodes = gauss_legendre(n, a, b);
  std::vector<double> terms;
  terms.reserve(nodes.size());
  for (const auto& nd : nodes) terms.push_back(nd.w * f(nd.x));
  return pairwise_sum(terms);
}

double gl_integrate_symmetric_graded(const std::function<double(double)>& f,
                                     double scale, double limit, int nodes_per_panel) {
  if (!(scale > 0.0) || !(limit > scale))
    throw DomainError("gl_integrate_symmetric_graded: need 0 < scale < limit");
  std::vector<double> panel_sums;
  double lo = 0.0, hi = scale;
  while (lo < limit) {
    if (hi > limit) hi = limit;
    panel_sums.push_back(gl_integrate(f, lo, hi, nodes_per_panel));
    panel_sums.push_back(gl_integrate(f, -hi, -lo, nodes_per_panel));
    lo = hi;
    hi *= 2.0;
  }
  return pairwise_sum(panel_sums);
}

double pairwise_sum(const std::vector<double>& v) {
  // recursive halving with a small base case
  struct Rec {
    static double go(const double* p, std::size_t n) {
      if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += p[i];
        return s;
      }
      const std::size_t half = n / 2;
      return go(p, half) + go(p + half, n - half);
    }
  };
  return v.empty() ? 0.0 : Rec::go(v.data(), v.size());
}

} // namespace fluxsize
