#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "gsp4lfun/dirichlet.hpp"
#include "gsp4lfun/gl2.hpp"
#include "gsp4lfun/gsp4.hpp"
#include "gsp4lfun/numeric.hpp"

namespace gsp4lfun {

// --- archimedean cutoff machinery ---------------------------------------

// One gamma factor of a completed L-function: Gamma_R(s + shift) or
// Gamma_C(s + shift).
struct GammaSlot {
    enum class Kind { R, C };
    Kind kind;
    double shift;
};

// Smoothed cutoff W(y) = (1/2 pi i) int [gamma(1/2+u)/gamma(1/2)] G(u) y^{-u} du/u
// for the product of the slots, with G(u) = exp(gauss_scale u^2).  W decays to 0
// as y grows and tends to 1 as y -> 0.  When gamma(1/2) has a pole the profile
// is identically zero.
class AfeProfile {
  public:
    explicit AfeProfile(std::vector<GammaSlot> slots, double gauss_scale = 0.0);

    bool identically_zero() const { return zero_; }

    // Direct quadrature on the vertical line Re(u) = sigma.
    double quadrature_value(double y, double sigma = 2.0, double t_max = 80.0,
                            double panel_width = 0.5) const;

    // Table-backed evaluation (table built by profile_cache()).
    double value(double y) const;

    // Smallest y beyond which value(y) stays below eps.
    double support_bound(double eps = 1e-12) const;

    void build_table();

  private:
    std::vector<GammaSlot> slots_;
    double gauss_scale_;
    bool zero_ = false;
    std::vector<double> table_;
    double z_lo_ = 0.0, z_hi_ = 0.0, dz_ = 0.0;
    bool built_ = false;

    Complex line_factor(Complex u) const;  // product of ratios * G(u) / u
};

// Shared, table-built profiles keyed by slot content.
const AfeProfile& profile_cache(const std::vector<GammaSlot>& slots, double gauss_scale = 0.0);

struct CutoffParams {
    int k = 10;                // Gamma(u + k - 1) / Gamma(k - 1)
    double gauss_scale = 0.0;  // G(u) = exp(gauss_scale u^2)
    double t_max = 80.0;
    double panel_width = 0.5;
};

// Single-factor cutoff, evaluated as the vertical-line integral at Re(u) = 2.
double cutoff_U(double y, const CutoffParams& params = {});

// --- section-5 style sums and values ------------------------------------

struct AfeOptions {
    double gauss_scale = 0.0;
    double truncation = 1e-12;
    int sign_override = 0;       // GL2 AFE sign w_f; 0 selects from the weight
    Complex c_pi = Complex(1.0); // GSp4 epsilon-factor constant, |c_pi| = 1
};

// Central value of the chi-twist of a level-1 eigenform via the exact
// two-sided smoothed expansion.
Complex afe_gl2_central(const EllipticEigenform& f, const DirichletCharacter& chi, double x_balance,
                        const AfeOptions& opt = {});

// Central value of the chi-twisted degree-4 series, lengths q^2 X and q^2 / X.
Complex afe_gsp4_central(const ParamodularEigenform& f, const DirichletCharacter& chi,
                         double x_balance, const AfeOptions& opt = {});

Complex epsilon_factor(const DirichletCharacter& chi, Complex c_pi);

// Dyadic partition-of-unity weights at x: map from N (a power of two, possibly
// fractional) to V(x/N); the weights sum to 1.
std::map<double, double> partition_V(double x);

// sum over p <= x (p not in excluded) of l1(p) l2(p) / p, with log log x.
std::pair<double, double> selberg_sum(const std::map<long, double>& l1,
                                      const std::map<long, double>& l2, double x,
                                      const std::set<long>& excluded = {});

double hypothesis_h_sum(const std::map<long, EigenvalueMultiset>& ms, int ell, double x);

Complex siegel_walfisz_sum(const std::map<long, Complex>& alpha, double x, long q, long a,
                           double t);

// --- character families and moments ------------------------------------

struct FamilyOverrides {
    double p1 = 0.0;
    double p2 = 0.0;
    double min_prime_factor = 0.0;
    long max_distinct_factors = -1;
};

struct FamilyParams {
    double big_q = 1000.0;
    double kappa = 1.0;
    double nu = 0.5;
    double delta = 0.25;
    std::optional<FamilyOverrides> overrides;
};

struct FamilyResult {
    std::vector<long> q;
    bool empty_under_defaults = false;
    double p1_window = 0.0;
    double p2_window = 0.0;
    double m_window = 0.0;
};

FamilyResult family_Q(const FamilyParams& params);

Complex first_moment(const ParamodularEigenform& f, const std::vector<long>& family, long p,
                     double x_balance, const AfeOptions& opt = {});

struct SkAverageResult {
    Complex direct;
    Complex decomposed;
    Complex main_term;
};

// Average of twisted central values over primitive odd characters mod q,
// computed both directly and through the orthogonality/Kloosterman route.
SkAverageResult sk_average(const EllipticEigenform& f, long q, long p, double x_balance,
                           const AfeOptions& opt = {});

// --- strong-multiplicity-one comparator ---------------------------------

enum class CompareKind { Spin, Std, Hecke };

struct ComparisonReport {
    enum class Verdict { ConsistentWithEqual, Distinct, Insufficient };
    long primes_compared = 0;
    long agreements = 0;
    double density = 0.0;
    std::optional<long> first_disagreement;
    Verdict verdict = Verdict::Insufficient;
};

struct CompareOptions {
    double tolerance = 1e-6;
    double threshold = 0.0;  // distinct once density < 1 - threshold
    long min_primes = 5;
};

ComparisonReport compare_eigenforms(const ParamodularEigenform& f1, const ParamodularEigenform& f2,
                                    long prime_bound, CompareKind kind,
                                    const CompareOptions& opt = {});

}
