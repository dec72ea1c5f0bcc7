#include "gsp4lfun/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gsp4lfun/primes.hpp"

namespace gsp4lfun {

namespace {

bool lex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}

Complex cpow_int(Complex z, long e) {
    if (e < 0) return 1.0 / cpow_int(z, -e);
    Complex r(1.0), b = z;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

EulerFactor::EulerFactor(long p, std::vector<Complex> c) : prime(p), coeffs(std::move(c)) {
    if (prime <= 0) throw std::invalid_argument("EulerFactor: prime must be positive");
    if (coeffs.empty()) throw std::invalid_argument("EulerFactor: empty coefficient list");
    if (std::abs(coeffs[0] - Complex(1.0)) > 1e-12)
        throw std::invalid_argument("EulerFactor: constant coefficient must be 1");
    coeffs[0] = Complex(1.0);
    if (coeffs.size() > 1 && std::abs(coeffs.back()) <= 1e-12)
        throw std::invalid_argument("EulerFactor: trailing coefficient below tolerance");
}

EigenvalueMultiset::EigenvalueMultiset(long p, std::vector<Complex> v)
    : prime(p), values(std::move(v)) {
    if (prime <= 0) throw std::invalid_argument("EigenvalueMultiset: prime must be positive");
    for (const Complex& z : values)
        if (std::abs(z) == 0.0)
            throw std::invalid_argument("EigenvalueMultiset: zero value not allowed");
    std::sort(values.begin(), values.end(), lex_less);
}

namespace {

bool augment(std::size_t i, const std::vector<std::vector<std::size_t>>& adj,
             std::vector<long>& match, std::vector<bool>& seen) {
    for (std::size_t j : adj[i]) {
        if (seen[j]) continue;
        seen[j] = true;
        if (match[j] < 0 || augment(static_cast<std::size_t>(match[j]), adj, match, seen)) {
            match[j] = static_cast<long>(i);
            return true;
        }
    }
    return false;
}

}

bool multiset_equal(const EigenvalueMultiset& a, const EigenvalueMultiset& b, double tol) {
    std::size_t n = a.values.size();
    if (n != b.values.size()) return false;
    // canonical order first; ties in the real part can land in either order
    // when the values carry rounding noise, so fall back to exact matching
    bool aligned = true;
    for (std::size_t i = 0; i < n && aligned; ++i)
        if (std::abs(a.values[i] - b.values[i]) > tol) aligned = false;
    if (aligned) return true;

    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(a.values[i] - b.values[j]) <= tol) adj[i].push_back(j);
    std::vector<long> match(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<bool> seen(n, false);
        if (!augment(i, adj, match, seen)) return false;
    }
    return true;
}

Complex CoefficientSeries::at(long n) const {
    if (n < 1 || n > length())
        throw std::out_of_range("CoefficientSeries: index " + std::to_string(n) +
                                " outside [1, " + std::to_string(length()) + "]");
    return coeffs[static_cast<std::size_t>(n)];
}

std::vector<Complex> poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<Complex> out(a.size() + b.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<Complex> series_inverse(const std::vector<Complex>& f, long length) {
    if (f.empty() || std::abs(f[0]) == 0.0)
        throw std::invalid_argument("series_inverse: zero constant term");
    std::vector<Complex> u(static_cast<std::size_t>(length) + 1, Complex(0.0));
    u[0] = 1.0 / f[0];
    for (long e = 1; e <= length; ++e) {
        Complex s(0.0);
        long d = std::min<long>(e, static_cast<long>(f.size()) - 1);
        for (long j = 1; j <= d; ++j) s += f[j] * u[e - j];
        u[e] = -s / f[0];
    }
    return u;
}

EulerFactor euler_factor_from_roots(const EigenvalueMultiset& roots, long prime) {
    if (roots.values.empty())
        throw std::invalid_argument("euler_factor_from_roots: empty root multiset");
    std::vector<Complex> c{Complex(1.0)};
    for (const Complex& alpha : roots.values) {
        if (std::abs(alpha) < 1e-300) throw std::invalid_argument("singular Satake parameter");
        c = poly_mul(c, {Complex(1.0), -alpha});
    }
    return EulerFactor(prime, std::move(c));
}

CoefficientSeries dirichlet_expand(const std::map<long, EulerFactor>& factors, long n_max) {
    if (n_max < 1) throw std::invalid_argument("dirichlet_expand: N must be >= 1");
    CoefficientSeries out(n_max);
    out.ref(1) = 1.0;
    out.multiplicative = true;
    if (n_max == 1) return out;

    std::vector<long> spf = smallest_prime_factor(n_max);
    // power-series inverse of each supplied factor, indexed by prime
    std::map<long, std::vector<Complex>> ppow;
    for (long p : primes_up_to(n_max)) {
        auto it = factors.find(p);
        if (it == factors.end())
            throw std::invalid_argument("dirichlet_expand: missing Euler factor at prime " +
                                        std::to_string(p));
        long emax = 0;
        for (long q = p; q <= n_max; q *= p) {
            ++emax;
            if (q > n_max / p) break;
        }
        ppow[p] = series_inverse(it->second.coeffs, emax);
    }
    for (long n = 2; n <= n_max; ++n) {
        long p = spf[n], m = n, e = 0;
        while (m % p == 0) { m /= p; ++e; }
        out.ref(n) = ppow[p][e] * out.at(std::max<long>(m, 1));
    }
    return out;
}

CoefficientSeries dirichlet_convolve(const CoefficientSeries& a, const CoefficientSeries& b,
                                     long n_max) {
    if (a.length() < n_max || b.length() < n_max)
        throw std::invalid_argument("dirichlet_convolve: series shorter than requested length");
    CoefficientSeries out(n_max);
    for (long d = 1; d <= n_max; ++d) {
        Complex ad = a.at(d);
        if (ad == Complex(0.0)) continue;
        for (long n = d; n <= n_max; n += d) out.ref(n) += ad * b.at(n / d);
    }
    out.multiplicative = a.multiplicative && b.multiplicative;
    return out;
}

EigenvalueMultiset exterior_square(const EigenvalueMultiset& ms) {
    if (ms.size() < 2) throw std::invalid_argument("exterior_square: need at least 2 values");
    std::vector<Complex> out;
    out.reserve(ms.size() * (ms.size() - 1) / 2);
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i + 1; j < ms.size(); ++j) out.push_back(ms.values[i] * ms.values[j]);
    return EigenvalueMultiset(ms.prime, std::move(out));
}

EigenvalueMultiset symmetric_square(const EigenvalueMultiset& ms) {
    if (ms.size() < 1) throw std::invalid_argument("symmetric_square: empty multiset");
    std::vector<Complex> out;
    out.reserve(ms.size() * (ms.size() + 1) / 2);
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i; j < ms.size(); ++j) out.push_back(ms.values[i] * ms.values[j]);
    return EigenvalueMultiset(ms.prime, std::move(out));
}

Complex power_sum(const EigenvalueMultiset& ms, long ell) {
    if (ell < 1) throw std::invalid_argument("power_sum: exponent must be >= 1");
    Complex s(0.0);
    for (const Complex& z : ms.values) s += cpow_int(z, ell);
    return s;
}

std::vector<Complex> newton_power_from_h(const std::vector<Complex>& h) {
    if (h.empty()) throw std::invalid_argument("newton_power_from_h: empty input");
    std::size_t n = h.size();
    std::vector<Complex> p(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Complex s = static_cast<double>(k) * h[k - 1];
        for (std::size_t i = 1; i < k; ++i) s -= p[i - 1] * h[k - i - 1];
        p[k - 1] = s;
    }
    return p;
}

std::vector<Complex> log_coefficients(const EulerFactor& f, int ell_max) {
    if (ell_max < 1) throw std::invalid_argument("log_coefficients: ell_max must be >= 1");
    if (std::abs(f.coeffs[0]) == 0.0)
        throw std::invalid_argument("log_coefficients: zero constant term");
    // Newton's identities on the roots of the inverse factor:
    //   s_k = -k c_k - sum_{j<k} c_j s_{k-j}   (c_j = 0 beyond the degree)
    int d = f.degree();
    std::vector<Complex> s(static_cast<std::size_t>(ell_max) + 1, Complex(0.0));
    std::vector<Complex> out(ell_max);
    for (int k = 1; k <= ell_max; ++k) {
        Complex acc = (k <= d) ? -static_cast<double>(k) * f.coeffs[k] : Complex(0.0);
        for (int j = 1; j < k && j <= d; ++j) acc -= f.coeffs[j] * s[k - j];
        s[k] = acc;
        out[k - 1] = s[k] / static_cast<double>(k);
    }
    return out;
}

EulerFactor rankin_selberg_factor(const EigenvalueMultiset& ms1, const EigenvalueMultiset& ms2,
                                  long prime) {
    if (ms1.prime != ms2.prime)
        throw std::invalid_argument("rankin_selberg_factor: prime mismatch");
    if (ms1.values.empty() || ms2.values.empty())
        throw std::invalid_argument("rankin_selberg_factor: empty multiset");
    std::vector<Complex> roots;
    roots.reserve(ms1.size() * ms2.size());
    for (const Complex& a : ms1.values)
        for (const Complex& b : ms2.values) roots.push_back(a * b);
    return euler_factor_from_roots(EigenvalueMultiset(prime, std::move(roots)), prime);
}

std::pair<double, double> lemma_z_bound(const std::array<Complex, 5>& z) {
    for (int i = 0; i < 4; ++i)
        if (std::abs(z[i]) + 1e-9 < std::abs(z[i + 1]))
            throw std::invalid_argument("not a balanced 5-tuple");
    for (int i = 0; i < 5; ++i)
        if (std::abs(z[i] * z[4 - i] - Complex(1.0)) > 1e-9)
            throw std::invalid_argument("not a balanced 5-tuple");
    double lhs = 0.0;
    Complex s1(0.0), s2(0.0);
    for (const Complex& v : z) {
        lhs += std::abs(v);
        s1 += v;
        s2 += v * v;
    }
    double rhs = 2.0 * std::sqrt(std::abs(s2)) + 2.0 * std::abs(s1) + 15.0;
    return {lhs, rhs};
}

}
