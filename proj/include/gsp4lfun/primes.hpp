#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace gsp4lfun {

// Primes up to and including n.
std::vector<long> primes_up_to(long n);

// Smallest prime factor for every index in [0, n]; spf[0] = spf[1] = 0.
std::vector<long> smallest_prime_factor(long n);

bool is_prime(long n);

// Factorization as (prime, exponent) pairs, primes ascending.
std::vector<std::pair<long, int>> factorize(long n);

std::vector<long> divisors(long n);

long euler_phi(long n);
int mobius(long n);
bool is_squarefree(long n);

long gcd_long(long a, long b);

// a^e mod m, m > 0.
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

// Inverse of a mod m for gcd(a, m) = 1.
long inv_mod(long a, long m);

}
