#include "uqlab/kernels/laguerre_pair.hpp"

#include <arm_neon.h>

#include <cstddef>

namespace uqlab::kernels::neon {

namespace {

inline float64x2_t laguerre0(int p, float64x2_t x) {
  const float64x2_t one = vdupq_n_f64(1.0);
  if (p == 0) return one;
  float64x2_t prev = one;
  float64x2_t cur = vsubq_f64(one, x);
  for (int k = 1; k < p; ++k) {
    const float64x2_t lead = vsubq_f64(vdupq_n_f64(2.0 * k + 1.0), x);
    const float64x2_t num = vsubq_f64(vmulq_f64(lead, cur), vmulq_f64(vdupq_n_f64(static_cast<double>(k)), prev));
    const float64x2_t next = vdivq_f64(num, vdupq_n_f64(k + 1.0));
    prev = cur;
    cur = next;
  }
  return cur;
}

inline double laguerre0_scalar(int p, double x) {
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
  const float64x2_t r0 = vdupq_n_f64(args.r0);
  const float64x2_t c0 = vdupq_n_f64(b.c0);
  const float64x2_t cs = vdupq_n_f64(b.cs);
  const float64x2_t ct = vdupq_n_f64(b.ct);
  const float64x2_t cst = vdupq_n_f64(b.cst);

  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= count; k += 2) {
    const float64x2_t s = vld1q_f64(args.s.data() + k);
    const float64x2_t t = vld1q_f64(args.t.data() + k);
    const float64x2_t w = vld1q_f64(args.w.data() + k);
    const float64x2_t a = vfmaq_f64(vfmaq_f64(r0, s, s), t, t);
    const float64x2_t q2 = vfmaq_f64(vfmaq_f64(vfmaq_f64(c0, cs, s), ct, t), vmulq_f64(cst, s), t);
    const float64x2_t ln = laguerre0(args.n, vaddq_f64(a, q2));
    const float64x2_t lm = laguerre0(args.m, vsubq_f64(a, q2));
    acc = vfmaq_f64(acc, w, vmulq_f64(ln, lm));
  }
  double total = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; k < count; ++k) {
    const double s = args.s[k];
    const double t = args.t[k];
    const double a = args.r0 + s * s + t * t;
    const double q2 = b.c0 + b.cs * s + b.ct * t + b.cst * s * t;
    total += args.w[k] * laguerre0_scalar(args.n, a + q2) * laguerre0_scalar(args.m, a - q2);
  }
  return total;
}

}  // namespace uqlab::kernels::neon
