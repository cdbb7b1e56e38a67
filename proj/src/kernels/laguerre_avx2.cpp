#include "uqlab/kernels/laguerre_pair.hpp"

#include <immintrin.h>

#include <array>
#include <cstddef>

namespace uqlab::kernels::avx2 {

namespace {

// L_p(x) lane-wise; recurrence coefficients for k = 1..p-1.
inline __m256d laguerre0(int p, __m256d x) {
  const __m256d one = _mm256_set1_pd(1.0);
  if (p == 0) return one;
  __m256d prev = one;
  __m256d cur = _mm256_sub_pd(one, x);
  for (int k = 1; k < p; ++k) {
    const __m256d lead = _mm256_sub_pd(_mm256_set1_pd(2.0 * k + 1.0), x);
    const __m256d kprev = _mm256_mul_pd(_mm256_set1_pd(static_cast<double>(k)), prev);
    const __m256d next = _mm256_div_pd(_mm256_fmsub_pd(lead, cur, kprev), _mm256_set1_pd(k + 1.0));
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
  const __m256d r0 = _mm256_set1_pd(args.r0);
  const __m256d c0 = _mm256_set1_pd(b.c0);
  const __m256d cs = _mm256_set1_pd(b.cs);
  const __m256d ct = _mm256_set1_pd(b.ct);
  const __m256d cst = _mm256_set1_pd(b.cst);

  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const __m256d s = _mm256_loadu_pd(args.s.data() + k);
    const __m256d t = _mm256_loadu_pd(args.t.data() + k);
    const __m256d w = _mm256_loadu_pd(args.w.data() + k);
    const __m256d a = _mm256_fmadd_pd(t, t, _mm256_fmadd_pd(s, s, r0));
    const __m256d q2 = _mm256_fmadd_pd(_mm256_mul_pd(cst, s), t, _mm256_fmadd_pd(ct, t, _mm256_fmadd_pd(cs, s, c0)));
    const __m256d ln = laguerre0(args.n, _mm256_add_pd(a, q2));
    const __m256d lm = laguerre0(args.m, _mm256_sub_pd(a, q2));
    acc = _mm256_fmadd_pd(w, _mm256_mul_pd(ln, lm), acc);
  }
  alignas(32) std::array<double, 4> lanes{};
  _mm256_store_pd(lanes.data(), acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; k < count; ++k) {
    const double s = args.s[k];
    const double t = args.t[k];
    const double a = args.r0 + s * s + t * t;
    const double q2 = b.c0 + b.cs * s + b.ct * t + b.cst * s * t;
    total += args.w[k] * laguerre0_scalar(args.n, a + q2) * laguerre0_scalar(args.m, a - q2);
  }
  return total;
}

}  // namespace uqlab::kernels::avx2
