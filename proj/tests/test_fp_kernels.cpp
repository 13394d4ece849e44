#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "pencils/fp_kernels.hpp"

using namespace pencils;

namespace {

std::vector<std::uint64_t> random_row(std::size_t n, std::uint64_t p,
                                      std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, p - 1);
  std::vector<std::uint64_t> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("dispatched row ops agree with the scalar reference") {
  std::mt19937_64 rng(123);
  // Small primes route to the vector variant (when the CPU has one), large
  // ones to scalar; both must agree with the reference on every length.
  const std::uint64_t primes[] = {2,    3,     101,        1009,
                                  65537, 33554393,  // largest p < 2^25
                                  (std::uint64_t{1} << 61) - 1};
  for (std::uint64_t p : primes) {
    std::uniform_int_distribution<std::uint64_t> d(0, p - 1);
    for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{3},
                          std::size_t{4}, std::size_t{7}, std::size_t{64},
                          std::size_t{129}}) {
      for (int rep = 0; rep < 10; ++rep) {
        std::uint64_t q = d(rng);
        auto src = random_row(n, p, rng);
        auto a = random_row(n, p, rng);
        auto b = a;
        fpk::row_addmul(a.data(), src.data(), n, q, p);
        fpk::detail::row_addmul_scalar(b.data(), src.data(), n, q, p);
        CHECK(a == b);

        auto c = random_row(n, p, rng);
        auto e = c;
        fpk::row_scale(c.data(), n, q, p);
        fpk::detail::row_scale_scalar(e.data(), n, q, p);
        CHECK(c == e);
      }
    }
  }
}

TEST_CASE("scalar reference matches wide-integer arithmetic") {
  std::mt19937_64 rng(321);
  for (std::uint64_t p : {std::uint64_t{1009}, (std::uint64_t{1} << 61) - 1}) {
    std::uniform_int_distribution<std::uint64_t> d(0, p - 1);
    std::size_t n = 33;
    auto src = random_row(n, p, rng);
    auto dst = random_row(n, p, rng);
    std::uint64_t q = d(rng);
    auto expect = dst;
    for (std::size_t i = 0; i < n; ++i)
      expect[i] = static_cast<std::uint64_t>(
          (static_cast<unsigned __int128>(q) * src[i] + dst[i]) % p);
    fpk::detail::row_addmul_scalar(dst.data(), src.data(), n, q, p);
    CHECK(dst == expect);
  }
}

TEST_CASE("variant selection respects the modulus bound") {
  // Above 2^25 the double-FMA window is gone; must be scalar.
  CHECK(fpk::active_variant((std::uint64_t{1} << 61) - 1) == "scalar");
  auto small = fpk::active_variant(1009);
  CHECK((small == "scalar" || small == "avx2" || small == "neon"));
#if defined(__x86_64__)
  if (fpk::detail::cpu_has_avx2_fma()) CHECK(small == "avx2");
#endif
}

TEST_CASE("worst-case operands stay exact") {
  // q = p-1, entries p-1: the largest products the window must handle.
  for (std::uint64_t p : {33554393ull, 2ull, 3ull}) {
    std::size_t n = 16;
    std::vector<std::uint64_t> src(n, p - 1), dst(n, p - 1), ref(n, p - 1);
    fpk::row_addmul(dst.data(), src.data(), n, p - 1, p);
    fpk::detail::row_addmul_scalar(ref.data(), src.data(), n, p - 1, p);
    CHECK(dst == ref);
  }
}
