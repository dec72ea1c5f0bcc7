#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace gsp4lfun {

// Exact convolution of integer sequences through number-theoretic transforms
// modulo three 55-62 bit primes with high 2-adic valuation, recombined by CRT.
// Handles results up to ~2^179 in absolute value.

namespace modconv {

inline constexpr std::uint64_t kPrimes[3] = {
    4179340454199820289ULL,  // 29 * 2^57 + 1, generator 3
    1945555039024054273ULL,  // 27 * 2^56 + 1, generator 5
    180143985094819841ULL,   // 5 * 2^55 + 1, generator 6
};
inline constexpr std::uint64_t kGenerators[3] = {3, 5, 6};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);

// In-place NTT of power-of-two size in lane `lane`; inverse if `invert`.
void ntt(std::vector<std::uint64_t>& a, bool invert, int lane);

// c = a * b truncated to `length` coefficients, all entries mod kPrimes[lane].
std::vector<std::uint64_t> convolve_mod(const std::vector<std::uint64_t>& a,
                                        const std::vector<std::uint64_t>& b, long length,
                                        int lane);

// Residue triple -> signed integer in (-M/2, M/2), M = p0 p1 p2.
mpz_class crt_signed(std::uint64_t r0, std::uint64_t r1, std::uint64_t r2);

}

}
