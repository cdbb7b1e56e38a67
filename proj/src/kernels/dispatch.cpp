#include "uqlab/kernels/laguerre_pair.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace uqlab::kernels {

namespace {

bool cpu_supports(Variant v) {
  switch (v) {
    case Variant::scalar: return true;
    case Variant::avx2:
#if defined(UQLAB_HAVE_AVX2_KERNEL)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Variant::neon:
#if defined(UQLAB_HAVE_NEON_KERNEL)
      return true;  // Advanced SIMD is mandatory on AArch64.
#else
      return false;
#endif
  }
  return false;
}

}  // namespace

std::string_view name(Variant v) {
  switch (v) {
    case Variant::scalar: return "scalar";
    case Variant::avx2: return "avx2";
    case Variant::neon: return "neon";
  }
  return "scalar";
}

std::vector<Variant> available_variants() {
  std::vector<Variant> out;
  for (Variant v : {Variant::scalar, Variant::avx2, Variant::neon}) {
    if (cpu_supports(v)) out.push_back(v);
  }
  return out;
}

LaguerrePairSumFn resolve(Variant v) {
  if (!cpu_supports(v)) throw std::invalid_argument("kernel variant '" + std::string(name(v)) + "' is not available");
  switch (v) {
    case Variant::scalar: return &scalar::laguerre_pair_sum;
#if defined(UQLAB_HAVE_AVX2_KERNEL)
    case Variant::avx2: return &avx2::laguerre_pair_sum;
#endif
#if defined(UQLAB_HAVE_NEON_KERNEL)
    case Variant::neon: return &neon::laguerre_pair_sum;
#endif
    default: break;
  }
  throw std::invalid_argument("kernel variant is not compiled in");
}

Variant active_variant() {
  if (const char* env = std::getenv("UQLAB_KERNEL")) {
    const std::string want(env);
    for (Variant v : {Variant::scalar, Variant::avx2, Variant::neon}) {
      if (want == name(v) && cpu_supports(v)) return v;
    }
  }
  const auto vs = available_variants();
  return vs.back();
}

LaguerrePairSumFn active() {
  static const LaguerrePairSumFn fn = resolve(active_variant());
  return fn;
}

}  // namespace uqlab::kernels
