#include "pencils/fp_kernels.hpp"

namespace pencils::fpk {

namespace detail {

void row_addmul_scalar(std::uint64_t* dst, const std::uint64_t* src,
                       std::size_t n, std::uint64_t q, std::uint64_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    unsigned __int128 t = static_cast<unsigned __int128>(q) * src[i] + dst[i];
    dst[i] = static_cast<std::uint64_t>(t % p);
  }
}

void row_scale_scalar(std::uint64_t* dst, std::size_t n, std::uint64_t q,
                      std::uint64_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    unsigned __int128 t = static_cast<unsigned __int128>(q) * dst[i];
    dst[i] = static_cast<std::uint64_t>(t % p);
  }
}

}  // namespace detail

void row_addmul(std::uint64_t* dst, const std::uint64_t* src, std::size_t n,
                std::uint64_t q, std::uint64_t p) {
#if defined(__x86_64__) || defined(_M_X64)
  if (p < detail::kVectorModulusBound && detail::cpu_has_avx2_fma()) {
    detail::row_addmul_avx2(dst, src, n, q, p);
    return;
  }
#elif defined(__aarch64__)
  if (p < detail::kVectorModulusBound) {
    detail::row_addmul_neon(dst, src, n, q, p);
    return;
  }
#endif
  detail::row_addmul_scalar(dst, src, n, q, p);
}

void row_scale(std::uint64_t* dst, std::size_t n, std::uint64_t q,
               std::uint64_t p) {
#if defined(__x86_64__) || defined(_M_X64)
  if (p < detail::kVectorModulusBound && detail::cpu_has_avx2_fma()) {
    detail::row_scale_avx2(dst, n, q, p);
    return;
  }
#elif defined(__aarch64__)
  if (p < detail::kVectorModulusBound) {
    detail::row_scale_neon(dst, n, q, p);
    return;
  }
#endif
  detail::row_scale_scalar(dst, n, q, p);
}

std::string active_variant(std::uint64_t p) {
#if defined(__x86_64__) || defined(_M_X64)
  if (p < detail::kVectorModulusBound && detail::cpu_has_avx2_fma())
    return "avx2";
#elif defined(__aarch64__)
  if (p < detail::kVectorModulusBound) return "neon";
#endif
  return "scalar";
}

}  // namespace pencils::fpk
