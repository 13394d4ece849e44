// AVX2/FMA variants of the F_p row primitives. Compiled with -mavx2 -mfma;
// only reached through the dispatcher after a cpuid check.
//
// Exactness window: entries and q live in [0, p) with p < 2^25, so
// q*src+dst < 2^50 + 2^25 is an integer exactly representable in f64, the
// FMA result is exact, and h/p carries at most 2^-3 absolute error through
// the reciprocal multiply. round(h/p) is then within 1 of the true
// quotient and one conditional correction per side restores [0, p).

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "pencils/fp_kernels.hpp"

namespace pencils::fpk::detail {

bool cpu_has_avx2_fma() {
  static const bool ok =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
}

namespace {

inline __m256d reduce_mod(__m256d h, __m256d vp, __m256d vpinv) {
  __m256d qf = _mm256_round_pd(_mm256_mul_pd(h, vpinv),
                               _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(qf, vp, h);  // h - qf*p, exact
  __m256d neg = _mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ);
  r = _mm256_add_pd(r, _mm256_and_pd(neg, vp));
  __m256d ge = _mm256_cmp_pd(r, vp, _CMP_GE_OQ);
  r = _mm256_sub_pd(r, _mm256_and_pd(ge, vp));
  return r;
}

// u64 <-> f64 lane conversion for values < 2^52 (AVX2 has no native u64
// converts; the magic-constant trick is standard).
inline __m256d u64_to_f64(__m256i v) {
  __m256i magic = _mm256_set1_epi64x(0x4330000000000000);  // 2^52
  __m256i x = _mm256_or_si256(v, magic);
  return _mm256_sub_pd(_mm256_castsi256_pd(x), _mm256_castsi256_pd(magic));
}

inline __m256i f64_to_u64(__m256d v) {
  __m256d magic = _mm256_castsi256_pd(_mm256_set1_epi64x(0x4330000000000000));
  __m256d x = _mm256_add_pd(v, magic);
  return _mm256_and_si256(_mm256_castpd_si256(x),
                          _mm256_set1_epi64x(0x000FFFFFFFFFFFFF));
}

}  // namespace

void row_addmul_avx2(std::uint64_t* dst, const std::uint64_t* src,
                     std::size_t n, std::uint64_t q, std::uint64_t p) {
  const __m256d vq = _mm256_set1_pd(static_cast<double>(q));
  const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
  const __m256d vpinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s = u64_to_f64(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i)));
    __m256d d = u64_to_f64(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i)));
    __m256d h = _mm256_fmadd_pd(vq, s, d);
    __m256d r = reduce_mod(h, vp, vpinv);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), f64_to_u64(r));
  }
  if (i < n) row_addmul_scalar(dst + i, src + i, n - i, q, p);
}

void row_scale_avx2(std::uint64_t* dst, std::size_t n, std::uint64_t q,
                    std::uint64_t p) {
  const __m256d vq = _mm256_set1_pd(static_cast<double>(q));
  const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
  const __m256d vpinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = u64_to_f64(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i)));
    __m256d h = _mm256_mul_pd(vq, d);
    __m256d r = reduce_mod(h, vp, vpinv);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), f64_to_u64(r));
  }
  if (i < n) row_scale_scalar(dst + i, n - i, q, p);
}

}  // namespace pencils::fpk::detail

#endif  // x86_64
