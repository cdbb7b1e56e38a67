#pragma once

// Inner Gauss-Hermite contraction for Laguerre-Gaussian Wigner marginals.
//
// For an outer phase-space point the integrand over the two inner quadratures
// (s, t) is, after factoring the e^{-s^2 - t^2} weight,
//
//   L_n(a + b) L_m(a - b),  a = r0 + s^2 + t^2,  b = c0 + cs s + ct t + cst s t
//
// where a = 4 Q0 and b = 4 Q2. Every variant computes
//
//   sum_k w_k L_n(a_k + b_k) L_m(a_k - b_k)
//
// and must agree with the scalar reference to ~1e-12 relative.

#include <span>
#include <string_view>
#include <vector>

namespace uqlab::kernels {

struct BilinearForm {
  double c0 = 0.0;
  double cs = 0.0;
  double ct = 0.0;
  double cst = 0.0;
};

struct LaguerrePairArgs {
  std::span<const double> s;
  std::span<const double> t;
  std::span<const double> w;
  double r0 = 0.0;
  BilinearForm b;
  int n = 0;
  int m = 0;
};

using LaguerrePairSumFn = double (*)(const LaguerrePairArgs&);

namespace scalar {
double laguerre_pair_sum(const LaguerrePairArgs& args);
}
namespace avx2 {
double laguerre_pair_sum(const LaguerrePairArgs& args);
}
namespace neon {
double laguerre_pair_sum(const LaguerrePairArgs& args);
}

enum class Variant { scalar, avx2, neon };

std::string_view name(Variant v);

/// Variants compiled in and supported by the running CPU, scalar first.
std::vector<Variant> available_variants();

/// Function for a variant; throws std::invalid_argument if unavailable.
LaguerrePairSumFn resolve(Variant v);

/// Best available variant, unless UQLAB_KERNEL=scalar|avx2|neon selects one.
Variant active_variant();
LaguerrePairSumFn active();

}  // namespace uqlab::kernels
