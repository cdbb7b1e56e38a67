#pragma once

#include <vector>

namespace uqlab::quadrature {

/// Nodes and weights for the physicists' weight e^{-x^2}: integral of
/// f(x) e^{-x^2} ~ sum w_i f(x_i), exact for polynomials of degree < 2n.
struct GaussHermite {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;
};

GaussHermite gauss_hermite(int n);

/// Generalized Laguerre polynomial L_p^alpha(x) by the three-term recurrence.
double laguerre(int p, double alpha, double x);
inline double laguerre(int p, double x) { return laguerre(p, 0.0, x); }

}  // namespace uqlab::quadrature
