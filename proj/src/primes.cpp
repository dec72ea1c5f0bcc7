#include "gsp4lfun/primes.hpp"

#include <numeric>
#include <stdexcept>

namespace gsp4lfun {

std::vector<long> primes_up_to(long n) {
    std::vector<long> out;
    if (n < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (long p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (long m = p * p; m <= n; m += p) composite[m] = true;
    }
    return out;
}

std::vector<long> smallest_prime_factor(long n) {
    std::vector<long> spf(static_cast<std::size_t>(n) + 1, 0);
    for (long i = 2; i <= n; ++i) {
        if (spf[i] != 0) continue;
        for (long m = i; m <= n; m += i)
            if (spf[m] == 0) spf[m] = i;
    }
    return spf;
}

bool is_prime(long n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<long, int>> factorize(long n) {
    if (n <= 0) throw std::invalid_argument("factorize: positive argument required");
    std::vector<std::pair<long, int>> out;
    for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<long> divisors(long n) {
    std::vector<long> out{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t base = out.size();
        long q = 1;
        for (int i = 1; i <= e; ++i) {
            q *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * q);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

long euler_phi(long n) {
    long r = n;
    for (auto [p, e] : factorize(n)) r -= r / p;
    return n == 1 ? 1 : r;
}

int mobius(long n) {
    if (n == 1) return 1;
    int sign = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

bool is_squarefree(long n) { return mobius(n) != 0 || n == 1; }

long gcd_long(long a, long b) { return std::gcd(a, b); }

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m, b = a % m;
    while (e) {
        if (e & 1) r = static_cast<std::uint64_t>((unsigned __int128)r * b % m);
        b = static_cast<std::uint64_t>((unsigned __int128)b * b % m);
        e >>= 1;
    }
    return r;
}

long inv_mod(long a, long m) {
    long g = m, x = 0, x1 = 1, a0 = ((a % m) + m) % m;
    long b = a0;
    while (b) {
        long q = g / b;
        g -= q * b;
        std::swap(g, b);
        x -= q * x1;
        std::swap(x, x1);
    }
    if (g != 1) throw std::invalid_argument("inv_mod: arguments not coprime");
    return ((x % m) + m) % m;
}

}
