#pragma once

#include <utility>
#include <vector>

#include "gsp4lfun/numeric.hpp"

namespace gsp4lfun {

// e^{2 pi i x}, argument reduced mod 1 before the trig calls.
Complex unit_circle(double x);

// Multiplicative character mod q stored as a full value table.  Characters
// are indexed by mixed-radix exponents over the cyclic decomposition of
// (Z/q)^*; index 0 is the trivial character.
class DirichletCharacter {
  public:
    DirichletCharacter(long q, long index);

    long modulus() const { return q_; }
    long index() const { return index_; }
    long conductor() const { return conductor_; }
    bool is_primitive() const { return conductor_ == q_; }
    bool is_odd() const { return odd_; }
    long order() const { return order_; }

    // chi(n); zero when gcd(n, q) > 1.
    Complex operator()(long n) const;

  private:
    long q_;
    long index_;
    long conductor_;
    bool odd_;
    long order_;
    std::vector<Complex> table_;

    friend std::vector<DirichletCharacter> characters_mod(long q);
};

// All phi(q) characters mod q in deterministic index order.
std::vector<DirichletCharacter> characters_mod(long q);

Complex gauss_sum(const DirichletCharacter& chi);

// S(a, b; c) = sum over invertible x mod c of e((a x + b x^{-1})/c).
Complex kloosterman(long a, long b, long c);

// Characters with chi^4 trivial.
std::vector<DirichletCharacter> quartic_characters(long q);

CoefficientSeries twist_series(const CoefficientSeries& s, const DirichletCharacter& chi);

// lhs = sum over primitive chi mod q of chi(m) conj(chi(n));
// rhs = sum_{d | q, d | m-n} phi(d) mu(q/d).  Requires gcd(mn, q) = 1.
std::pair<Complex, Complex> primitive_orthogonality_sum(long q, long m, long n);

// lhs = sum over primitive odd chi mod q of conj(chi(n) chi(p)) tau(chi)^2;
// rhs = (1/2) sum_{d|q} phi(d) mu(q/d) {S((q/d)^2, np; d) - S((q/d)^2, -np; d)}.
std::pair<Complex, Complex> odd_twisted_gauss_identity(long q, long n, long p);

// L(0, chi) from the finite generalized Bernoulli sum; L(1, chi) through the
// completed functional equation.  chi must be primitive.
Complex dirichlet_L_special(const DirichletCharacter& chi, int s);

}
