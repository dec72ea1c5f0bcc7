#pragma once

#include <map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "gsp4lfun/numeric.hpp"

namespace gsp4lfun {

// Exact integer q-expansion a(0..N) of a level-1 modular form.
struct QExpansion {
    int weight = 0;
    std::vector<mpz_class> a;

    long length() const { return static_cast<long>(a.size()) - 1; }
    const mpz_class& coeff(long n) const;
};

// q prod (1-q^n)^24 to precision N.
QExpansion delta_qexp(long n_max);

// E4 = 1 + 240 sum sigma_3(n) q^n, E6 = 1 - 504 sum sigma_5(n) q^n.
QExpansion eisenstein_qexp(int weight, long n_max);

// dim S_w(SL_2(Z)).
int cusp_dim_level_one(int weight);

// Normalized Hecke eigenform of level 1 (a(1) = 1, exact coefficients).
class EllipticEigenform {
  public:
    EllipticEigenform(int weight, QExpansion q);

    int weight() const { return weight_; }
    long precision() const { return qexp_.length(); }
    const mpz_class& coeff(long n) const { return qexp_.coeff(n); }
    const QExpansion& qexp() const { return qexp_; }

  private:
    int weight_;
    QExpansion qexp_;
};

// The unique normalized eigenform in a one-dimensional cusp space,
// built as Delta * E4^a * E6^b with 12 + 4a + 6b = weight.
EllipticEigenform eigenform_one_dim(int weight, long n_max = 10000);

// a_f(p) / p^{(w-1)/2}
double normalized_eigenvalue(const EllipticEigenform& f, long p);

// {gamma, 1/gamma} with gamma + 1/gamma = normalized eigenvalue, |gamma| = 1.
EigenvalueMultiset satake_gl2(const EllipticEigenform& f, long p);

// Inverse twisted factor 1 - lambda chi(p) X + chi(p)^2 X^2 (analytic
// normalization); collapses to the trivial factor when chi(p) = 0.
EulerFactor gl2_euler_factor(const EllipticEigenform& f, long p, Complex chi_value);

// Normalized eigenvalues at every prime p <= x for a one-dimensional weight,
// computed with exact modular convolutions.  Intended for prime ranges far
// beyond what a stored q-expansion should hold.
std::vector<std::pair<long, double>> eigenvalue_table(int weight, long x);

// Batch variant sharing the cusp-form convolution work across weights.
std::map<int, std::vector<std::pair<long, double>>> eigenvalue_tables(
    const std::vector<int>& weights, long x);

// q-series product helpers (exact integer arithmetic).
QExpansion qexp_mul(const QExpansion& a, const QExpansion& b, long n_max);

}
