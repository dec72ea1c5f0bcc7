#pragma once

#include <array>
#include <complex>
#include <map>
#include <vector>

namespace gsp4lfun {

using Complex = std::complex<double>;

inline constexpr double kMultisetTol = 1e-9;

Complex cpow_int(Complex z, long e);

// Inverse local L-factor, stored as the polynomial
//   L_p(s)^{-1} = sum_i coeffs[i] * p^{-is},
// so coeffs[0] == 1 and the trailing coefficient is nonzero unless the
// factor is trivial.
struct EulerFactor {
    long prime = 0;
    std::vector<Complex> coeffs{Complex(1.0)};

    EulerFactor() = default;
    EulerFactor(long p, std::vector<Complex> c);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Finite multiset of nonzero complex Satake-type parameters at a prime.
// Values are kept canonically sorted (real part, then imaginary part).
struct EigenvalueMultiset {
    long prime = 0;
    std::vector<Complex> values;

    EigenvalueMultiset() = default;
    EigenvalueMultiset(long p, std::vector<Complex> v);

    std::size_t size() const { return values.size(); }
};

bool multiset_equal(const EigenvalueMultiset& a, const EigenvalueMultiset& b,
                    double tol = kMultisetTol);

// Dirichlet-series coefficients c(1..N); index 0 is unused.
struct CoefficientSeries {
    std::vector<Complex> coeffs;
    bool multiplicative = false;

    CoefficientSeries() : coeffs(1) {}
    explicit CoefficientSeries(long n) : coeffs(static_cast<std::size_t>(n) + 1) {}

    long length() const { return static_cast<long>(coeffs.size()) - 1; }
    Complex at(long n) const;
    Complex& ref(long n) { return coeffs[static_cast<std::size_t>(n)]; }
};

// prod_alpha (1 - alpha X), expanded.  Degree equals the multiset size.
EulerFactor euler_factor_from_roots(const EigenvalueMultiset& roots, long prime);

// Expand a full set of local factors into series coefficients up to N.
// A factor must be supplied for every prime <= N.
CoefficientSeries dirichlet_expand(const std::map<long, EulerFactor>& factors, long n_max);

// c(n) = sum_{de=n} a(d) b(e).
CoefficientSeries dirichlet_convolve(const CoefficientSeries& a, const CoefficientSeries& b,
                                     long n_max);

// {alpha_i alpha_j : i < j}
EigenvalueMultiset exterior_square(const EigenvalueMultiset& ms);

// {alpha_i alpha_j : i <= j}
EigenvalueMultiset symmetric_square(const EigenvalueMultiset& ms);

Complex power_sum(const EigenvalueMultiset& ms, long ell);

// Power sums p_1..p_n from complete homogeneous symmetric values h_1..h_n,
// via n h_n = sum_{i=1..n} p_i h_{n-i} with h_0 = 1.
std::vector<Complex> newton_power_from_h(const std::vector<Complex>& h);

// Coefficients c(p^l) of log L_p(s) = sum_l c(p^l) p^{-ls}, l = 1..ell_max.
std::vector<Complex> log_coefficients(const EulerFactor& f, int ell_max);

// Euler factor with root multiset {alpha_i beta_j}.
EulerFactor rankin_selberg_factor(const EigenvalueMultiset& ms1, const EigenvalueMultiset& ms2,
                                  long prime);

// For a balanced 5-tuple (|z1| >= ... >= |z5|, z_i^{-1} = z_{6-i}) returns
// (sum |z_i|, 2|sum z_i^2|^{1/2} + 2|sum z_i| + 15); lhs <= rhs always holds.
std::pair<double, double> lemma_z_bound(const std::array<Complex, 5>& z);

// Power-series helpers shared across the factor machinery.
std::vector<Complex> poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b);
std::vector<Complex> series_inverse(const std::vector<Complex>& f, long length);

}
