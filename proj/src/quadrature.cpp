#include "uqlab/quadrature.hpp"

#include "uqlab/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace uqlab::quadrature {

namespace {

// Normalized Hermite polynomials p_n = H_n / sqrt(2^n n! sqrt(pi)); returns
// p_n(x) and p_{n-1}(x). p_n' = sqrt(2n) p_{n-1} and w_i = 1 / (n p_{n-1}(x_i)^2).
void hermite_orthonormal(int n, double x, double& hn, double& hn1) {
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25);
  for (int j = 1; j <= n; ++j) {
    const double next = x * std::sqrt(2.0 / j) * cur - std::sqrt((j - 1.0) / j) * prev;
    prev = cur;
    cur = next;
  }
  hn = cur;
  hn1 = prev;
}

}  // namespace

GaussHermite gauss_hermite(int n) {
  if (n < 1) throw DomainError("gauss_hermite: need at least one node");
  // Golub-Welsch for starting values, then Newton polish on the recurrence.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    jacobi(i, i - 1) = jacobi(i - 1, i) = std::sqrt(i / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi, Eigen::EigenvaluesOnly);

  GaussHermite out;
  out.nodes.resize(n);
  out.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()(i);
    double hn = 0.0;
    double hn1 = 0.0;
    for (int iter = 0; iter < 10; ++iter) {
      hermite_orthonormal(n, x, hn, hn1);
      const double deriv = std::sqrt(2.0 * n) * hn1;
      const double step = hn / deriv;
      x -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    hermite_orthonormal(n, x, hn, hn1);
    out.nodes[i] = x;
    out.weights[i] = 1.0 / (n * hn1 * hn1);
  }
  // Enforce exact reflection symmetry.
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double x = 0.5 * (out.nodes[j] - out.nodes[i]);
    const double w = 0.5 * (out.weights[i] + out.weights[j]);
    out.nodes[i] = -x;
    out.nodes[j] = x;
    out.weights[i] = out.weights[j] = w;
  }
  if (n % 2 == 1) out.nodes[n / 2] = 0.0;
  return out;
}

double laguerre(int p, double alpha, double x) {
  if (p < 0) throw DomainError("laguerre: negative degree");
  if (p == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < p; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace uqlab::quadrature
