#pragma once

#include <functional>
#include <vector>

namespace fluxsize {

struct QuadNode {
  double x;
  double w;
};

// Gauss-Legendre nodes and weights on [-1, 1], any n >= 1.
std::vector<QuadNode> gauss_legendre(int n);

// Same nodes mapped to [a, b].
std::vector<QuadNode> gauss_legendre(int n, double a, double b);

// Integrate f over [a, b] with a single n-node Gauss-Legendre rule.
double gl_integrate(const std::function<double(double)>& f, double a, double b, int n);

// Integrate f over symmetric panels geometrically graded away from 0:
// [0, s], [s, 2s], [2s, 4s], ... up to `limit`, mirrored to negative x.
// Suits integrands peaked at 0 with width ~s and slow power-law tails.
double gl_integrate_symmetric_graded(const std::function<double(double)>& f,
                                     double scale, double limit, int nodes_per_panel);

// Pairwise (cascade) summation; deterministic and more accurate than
// naive left-to-right for long sums.
double pairwise_sum(const std::vector<double>& v);

} // namespace fluxsize
