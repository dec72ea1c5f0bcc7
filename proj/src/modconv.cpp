#include "gsp4lfun/modconv.hpp"

#include <stdexcept>

#include "gsp4lfun/primes.hpp"

namespace gsp4lfun {
namespace modconv {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((unsigned __int128)a * b % m);
}

void ntt(std::vector<std::uint64_t>& a, bool invert, int lane) {
    const std::uint64_t mod = kPrimes[lane];
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("ntt: size must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::uint64_t w = pow_mod(kGenerators[lane], (mod - 1) / len, mod);
        if (invert) w = pow_mod(w, mod - 2, mod);
        for (std::size_t i = 0; i < n; i += len) {
            std::uint64_t wn = 1;
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::uint64_t u = a[i + j];
                std::uint64_t v = mul_mod(a[i + j + len / 2], wn, mod);
                a[i + j] = u + v < mod ? u + v : u + v - mod;
                a[i + j + len / 2] = u >= v ? u - v : u + mod - v;
                wn = mul_mod(wn, w, mod);
            }
        }
    }
    if (invert) {
        std::uint64_t n_inv = pow_mod(n % mod, mod - 2, mod);
        for (auto& x : a) x = mul_mod(x, n_inv, mod);
    }
}

std::vector<std::uint64_t> convolve_mod(const std::vector<std::uint64_t>& a,
                                        const std::vector<std::uint64_t>& b, long length,
                                        int lane) {
    std::size_t need = a.size() + b.size() - 1;
    std::size_t size = 1;
    while (size < need) size <<= 1;
    std::vector<std::uint64_t> fa(a), fb(b);
    fa.resize(size, 0);
    fb.resize(size, 0);
    ntt(fa, false, lane);
    ntt(fb, false, lane);
    const std::uint64_t mod = kPrimes[lane];
    for (std::size_t i = 0; i < size; ++i) fa[i] = mul_mod(fa[i], fb[i], mod);
    ntt(fa, true, lane);
    fa.resize(static_cast<std::size_t>(length));
    return fa;
}

mpz_class crt_signed(std::uint64_t r0, std::uint64_t r1, std::uint64_t r2) {
    // Garner mixed-radix digits for moduli p0, p1, p2.
    const std::uint64_t p0 = kPrimes[0], p1 = kPrimes[1], p2 = kPrimes[2];
    static const std::uint64_t inv_p0_mod_p1 = pow_mod(p0 % p1, p1 - 2, p1);
    static const std::uint64_t inv_p0_mod_p2 = pow_mod(p0 % p2, p2 - 2, p2);
    static const std::uint64_t inv_p1_mod_p2 = pow_mod(p1 % p2, p2 - 2, p2);

    std::uint64_t c0 = r0;
    std::uint64_t c1 = mul_mod((r1 + p1 - c0 % p1) % p1, inv_p0_mod_p1, p1);
    std::uint64_t t = (c0 % p2 + mul_mod(c1 % p2, p0 % p2, p2)) % p2;
    std::uint64_t c2 = mul_mod((r2 + p2 - t) % p2, mul_mod(inv_p0_mod_p2, inv_p1_mod_p2, p2), p2);

    mpz_class P0(static_cast<unsigned long>(p0)), P1(static_cast<unsigned long>(p1)),
        P2(static_cast<unsigned long>(p2));
    mpz_class x = mpz_class(static_cast<unsigned long>(c0)) +
                  P0 * mpz_class(static_cast<unsigned long>(c1)) +
                  P0 * P1 * mpz_class(static_cast<unsigned long>(c2));
    mpz_class M = P0 * P1 * P2;
    if (x * 2 > M) x -= M;
    return x;
}

}
}
