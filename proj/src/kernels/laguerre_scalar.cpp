#include "uqlab/kernels/laguerre_pair.hpp"

#include <cstddef>

namespace uqlab::kernels::scalar {

namespace {

inline double laguerre0(int p, double x) {
  if (p == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 - x;
  for (int k = 1; k < p; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double laguerre_pair_sum(const LaguerrePairArgs& args) {
  const std::size_t count = args.w.size();
  const BilinearForm& b = args.b;
  double acc = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double s = args.s[k];
    const double t = args.t[k];
    const double a = args.r0 + s * s + t * t;
    const double q2 = b.c0 + b.cs * s + b.ct * t + b.cst * s * t;
    acc += args.w[k] * laguerre0(args.n, a + q2) * laguerre0(args.m, a - q2);
  }
  return acc;
}

}  // namespace uqlab::kernels::scalar
