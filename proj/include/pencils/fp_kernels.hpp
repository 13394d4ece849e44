#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace pencils::fpk {

// Row primitives for Gaussian elimination over F_p. Entries are residues in
// [0, p); results are fully reduced. These are the arithmetic inner loops of
// every F_p nullspace/rank computation, so they come in a scalar reference
// version (valid for all p < 2^62, 128-bit intermediates) and vector
// versions (AVX2 on x86, NEON on aarch64) that run the product through
// exact double-precision FMA. The vector path is only exact for p < 2^25;
// the dispatcher falls back to scalar above that.

// dst[i] = (dst[i] + q * src[i]) mod p
void row_addmul(std::uint64_t* dst, const std::uint64_t* src, std::size_t n,
                std::uint64_t q, std::uint64_t p);

// dst[i] = (dst[i] * q) mod p
void row_scale(std::uint64_t* dst, std::size_t n, std::uint64_t q,
               std::uint64_t p);

// Name of the variant row_addmul/row_scale will select for this modulus on
// this machine ("scalar", "avx2", "neon"). Exposed for tests and --version
// style diagnostics.
std::string active_variant(std::uint64_t p);

namespace detail {

void row_addmul_scalar(std::uint64_t* dst, const std::uint64_t* src,
                       std::size_t n, std::uint64_t q, std::uint64_t p);
void row_scale_scalar(std::uint64_t* dst, std::size_t n, std::uint64_t q,
                      std::uint64_t p);

constexpr std::uint64_t kVectorModulusBound = std::uint64_t{1} << 25;

#if defined(__x86_64__) || defined(_M_X64)
bool cpu_has_avx2_fma();
void row_addmul_avx2(std::uint64_t* dst, const std::uint64_t* src,
                     std::size_t n, std::uint64_t q, std::uint64_t p);
void row_scale_avx2(std::uint64_t* dst, std::size_t n, std::uint64_t q,
                    std::uint64_t p);
#endif

#if defined(__aarch64__)
void row_addmul_neon(std::uint64_t* dst, const std::uint64_t* src,
                     std::size_t n, std::uint64_t q, std::uint64_t p);
void row_scale_neon(std::uint64_t* dst, std::size_t n, std::uint64_t q,
                    std::uint64_t p);
#endif

}  // namespace detail

}  // namespace pencils::fpk
