// NEON variants of the F_p row primitives, aarch64 only. Same double-FMA
// reduction as the AVX2 path (see fp_kernels_avx2.cpp), two lanes per op.

#if defined(__aarch64__)

#include <arm_neon.h>

#include "pencils/fp_kernels.hpp"

namespace pencils::fpk::detail {

namespace {

inline float64x2_t reduce_mod(float64x2_t h, float64x2_t vp,
                              float64x2_t vpinv) {
  float64x2_t qf = vrndnq_f64(vmulq_f64(h, vpinv));
  float64x2_t r = vfmsq_f64(h, qf, vp);  // h - qf*p, exact
  uint64x2_t neg = vcltq_f64(r, vdupq_n_f64(0.0));
  r = vaddq_f64(r, vreinterpretq_f64_u64(vandq_u64(
                       neg, vreinterpretq_u64_f64(vp))));
  uint64x2_t ge = vcgeq_f64(r, vp);
  r = vsubq_f64(r, vreinterpretq_f64_u64(vandq_u64(
                       ge, vreinterpretq_u64_f64(vp))));
  return r;
}

}  // namespace

void row_addmul_neon(std::uint64_t* dst, const std::uint64_t* src,
                     std::size_t n, std::uint64_t q, std::uint64_t p) {
  const float64x2_t vq = vdupq_n_f64(static_cast<double>(q));
  const float64x2_t vp = vdupq_n_f64(static_cast<double>(p));
  const float64x2_t vpinv = vdupq_n_f64(1.0 / static_cast<double>(p));
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t s = vcvtq_f64_u64(vld1q_u64(src + i));
    float64x2_t d = vcvtq_f64_u64(vld1q_u64(dst + i));
    float64x2_t h = vfmaq_f64(d, vq, s);
    vst1q_u64(dst + i, vcvtq_u64_f64(reduce_mod(h, vp, vpinv)));
  }
  if (i < n) row_addmul_scalar(dst + i, src + i, n - i, q, p);
}

void row_scale_neon(std::uint64_t* dst, std::size_t n, std::uint64_t q,
                    std::uint64_t p) {
  const float64x2_t vq = vdupq_n_f64(static_cast<double>(q));
  const float64x2_t vp = vdupq_n_f64(static_cast<double>(p));
  const float64x2_t vpinv = vdupq_n_f64(1.0 / static_cast<double>(p));
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t d = vcvtq_f64_u64(vld1q_u64(dst + i));
    float64x2_t h = vmulq_f64(vq, d);
    vst1q_u64(dst + i, vcvtq_u64_f64(reduce_mod(h, vp, vpinv)));
  }
  if (i < n) row_scale_scalar(dst + i, n - i, q, p);
}

}  // namespace pencils::fpk::detail

#endif  // aarch64
