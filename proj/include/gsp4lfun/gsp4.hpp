#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "gsp4lfun/gl2.hpp"
#include "gsp4lfun/numeric.hpp"

namespace gsp4lfun {

enum class Packet { G, P };

// Analytically normalized spinor Satake data {alpha, 1/alpha, beta, 1/beta}.
struct SpinSatake {
    long prime = 0;
    EigenvalueMultiset params;

    SpinSatake(long p, EigenvalueMultiset ms);
};

struct HeckePair {
    double lp = 0.0;   // lambda_F(p)
    double lp2 = 0.0;  // lambda_F(p^2)
};

class ParamodularEigenform {
  public:
    struct Data {
        int k = 0;
        int j = 0;
        long level = 1;
        Packet packet = Packet::G;
        bool asserted_good = false;
        std::map<long, HeckePair> hecke;
        std::map<long, std::pair<mpz_class, mpz_class>> hecke_exact;
        std::optional<EllipticEigenform> sk_source;
        std::string sk_source_path;
        std::map<long, EulerFactor> ramified_spin;
        std::map<long, EulerFactor> ramified_std;
    };

    explicit ParamodularEigenform(Data d);

    const Data& data() const { return d_; }
    int k() const { return d_.k; }
    int j() const { return d_.j; }
    long level() const { return d_.level; }
    Packet packet() const { return d_.packet; }
    bool asserted_good() const { return d_.asserted_good; }
    const std::map<long, HeckePair>& hecke() const { return d_.hecke; }
    const std::map<long, std::pair<mpz_class, mpz_class>>& hecke_exact() const {
        return d_.hecke_exact;
    }
    const std::optional<EllipticEigenform>& sk_source() const { return d_.sk_source; }
    const std::string& sk_source_path() const { return d_.sk_source_path; }
    const std::map<long, EulerFactor>& ramified_spin() const { return d_.ramified_spin; }
    const std::map<long, EulerFactor>& ramified_std() const { return d_.ramified_std; }

    const HeckePair& hecke_at(long p) const;

  private:
    Data d_;
};

// --- group-theoretic odds and ends ------------------------------------

using Rational = mpq_class;
using RationalMatrix = std::array<std::array<Rational, 4>, 4>;

enum class SymplecticForm { Antidiagonal, Block };

RationalMatrix rm_identity();
RationalMatrix rm_mul(const RationalMatrix& a, const RationalMatrix& b);

// Paramodular membership at level N: symplectic with multiplier 1 for the
// chosen form, with every entry in the level-N block lattice.
bool paramodular_membership(const RationalMatrix& g, long N,
                            SymplecticForm form = SymplecticForm::Antidiagonal);

// Homogeneous polynomial in S, T; coeffs[i] multiplies S^{degree-i} T^i.
struct HomogeneousPoly {
    int degree = 0;
    std::vector<Complex> coeffs;
};

using Matrix2c = std::array<std::array<Complex, 2>, 2>;

// det(h)^k * P((S, T) h)
HomogeneousPoly eta_kj_action(int k, int j, const Matrix2c& h, const HomogeneousPoly& p);

// --- Satake / Hecke conversions ---------------------------------------

SpinSatake satake_from_hecke(double lp, double lp2, int k, long p);
std::pair<double, double> hecke_from_satake(const SpinSatake& sp, int k);

EulerFactor spin_factor_satake(const SpinSatake& sp);
EulerFactor spin_factor_hecke(double lp, double lp2, int k, long p);

// Degree-5 standard parameters: exterior square minus one copy of 1.
EigenvalueMultiset std_multiset(const SpinSatake& sp);
EulerFactor std_factor(const SpinSatake& sp);

// --- per-form data ------------------------------------------------------

SpinSatake form_spin_satake(const ParamodularEigenform& f, long p);

// a_F(p) and b_F(p); exact formulas on the Saito-Kurokawa branch.
double spin_prime_coeff(const ParamodularEigenform& f, long p);
double std_prime_coeff(const ParamodularEigenform& f, long p);

CoefficientSeries spin_coeffs(const ParamodularEigenform& f, long n_max);
CoefficientSeries std_coeffs(const ParamodularEigenform& f, long n_max);

// Saito-Kurokawa lift of a level-1 eigenform of weight 2k-2 >= 18.
ParamodularEigenform sk_lift(const EllipticEigenform& f, long prime_bound = 10000);

// --- classification -----------------------------------------------------

struct ClassifyOptions {
    double tau_p = 0.25;  // minimum fraction of primes above the lift bound
    double tau_g = 0.05;  // maximum such fraction for a general-type verdict
};

struct PacketMargin {
    long p;
    double abs_a;
    double lift_bound;     // 0.5 sqrt(p)
    double general_bound;  // 4 p^{1/2 - 1/17}
};

struct ClassifyReport {
    enum class Verdict { P, G, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    long primes_used = 0;
    double rho_p = 0.0;
    long general_violations = 0;
    std::vector<PacketMargin> margins;
};

ClassifyReport classify_packet(const std::map<long, double>& spin_prime_values,
                               const ClassifyOptions& opt = {});

struct HodgeTateWeights {
    std::array<long, 4> weights;
    bool regular;
};

// {0, k-2, k+j-1, 2k+j-3}; distinct (regular) once k >= 3.
HodgeTateWeights hodge_tate_weights(int k, int j);

// Deterministic tempered test form: unit-circle parameters drawn from the seed.
ParamodularEigenform synthesize_G_form(std::uint64_t seed, int k, long prime_bound);

}
