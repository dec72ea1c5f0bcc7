#include "gsp4lfun/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gsp4lfun/analytic.hpp"
#include "gsp4lfun/dirichlet.hpp"
#include "gsp4lfun/gl2.hpp"
#include "gsp4lfun/gsp4.hpp"
#include "gsp4lfun/numeric.hpp"
#include "gsp4lfun/primes.hpp"

namespace gsp4lfun {

namespace {

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        std::uint64_t x = (state += 0x9e3779b97f4a7c15ULL);
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    long pick(long n) { return static_cast<long>(next() % static_cast<std::uint64_t>(n)); }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// balanced (A, B) pairs giving real Hecke data: tempered, real, or conjugate
std::pair<Complex, Complex> random_ab(Rng& rng) {
    double mode = rng.uniform();
    if (mode < 0.5) {
        double theta = rng.uniform(0.0, 2.0 * M_PI), phi = rng.uniform(0.0, 2.0 * M_PI);
        return {Complex(2.0 * std::cos(theta)), Complex(2.0 * std::cos(phi))};
    }
    if (mode < 0.75)
        return {Complex(rng.uniform(-3.0, 3.0)), Complex(rng.uniform(-3.0, 3.0))};
    Complex a(rng.uniform(-2.0, 2.0), rng.uniform(-1.5, 1.5));
    return {a, std::conj(a)};
}

SpinSatake satake_from_ab(Complex big_a, Complex big_b, long p) {
    auto split = [](Complex sum) { return (sum + std::sqrt(sum * sum - 4.0)) / 2.0; };
    Complex alpha = split(big_a), beta = split(big_b);
    return SpinSatake(p, EigenvalueMultiset(p, {alpha, 1.0 / alpha, beta, 1.0 / beta}));
}

EigenvalueMultiset random_multiset(Rng& rng, long p, int size) {
    std::vector<Complex> v;
    for (int i = 0; i < size; ++i) {
        double r = std::exp(rng.uniform(-0.7, 0.7));
        double theta = rng.uniform(0.0, 2.0 * M_PI);
        v.push_back(Complex(r * std::cos(theta), r * std::sin(theta)));
    }
    return EigenvalueMultiset(p, std::move(v));
}

// elementary-symmetric route to complete homogeneous values, used as the
// independent side of the Newton checks
std::vector<Complex> complete_homogeneous(const std::vector<Complex>& vals, int n) {
    // 1 / prod(1 - x_i t) expanded to degree n
    std::vector<Complex> poly{Complex(1.0)};
    for (const Complex& x : vals) poly = poly_mul(poly, {Complex(1.0), -x});
    std::vector<Complex> h = series_inverse(poly, n);
    return std::vector<Complex>(h.begin() + 1, h.end());
}

const EllipticEigenform& cached_form(int weight, long precision) {
    static std::map<std::pair<int, long>, EllipticEigenform> cache;
    auto key = std::make_pair(weight, precision);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, eigenform_one_dim(weight, precision)).first;
    return it->second;
}

CoefficientSeries zeta_shift_convolution(long n_max) {
    // zeta(s - 1/2) zeta(s + 1/2) has coefficients sigma(n)/sqrt(n)
    CoefficientSeries out(n_max);
    for (long d = 1; d <= n_max; ++d)
        for (long m = d; m <= n_max; m += d) out.ref(m) += static_cast<double>(d);
    for (long n = 1; n <= n_max; ++n) out.ref(n) /= std::sqrt(static_cast<double>(n));
    out.multiplicative = true;
    return out;
}

CoefficientSeries normalized_gl2_series(const EllipticEigenform& f, long n_max) {
    CoefficientSeries out(n_max);
    for (long n = 1; n <= n_max; ++n)
        out.ref(n) = f.coeff(n).get_d() / std::pow(static_cast<double>(n), (f.weight() - 1) / 2.0);
    out.multiplicative = true;
    return out;
}

void add_check(std::vector<CheckResult>& out, const std::string& name, bool pass,
               const std::string& detail) {
    out.push_back({name, pass, detail});
}

// --- identities ---------------------------------------------------------

void suite_identities(std::vector<CheckResult>& out, const VerifyOptions& opt) {
    Rng rng(opt.seed);
    const long primes[4] = {2, 3, 5, 7};

    double worst_factor = 0.0;
    double worst_ext = 0.0, worst_sym = 0.0, worst_case2 = 0.0, worst_newton = 0.0;
    for (long trial = 0; trial < opt.trials; ++trial) {
        int k = 3 + static_cast<int>(rng.pick(18));
        long p = primes[rng.pick(4)];
        auto [big_a, big_b] = random_ab(rng);
        SpinSatake sp = satake_from_ab(big_a, big_b, p);
        auto [lp, lp2] = hecke_from_satake(sp, k);
        EulerFactor via_satake = spin_factor_satake(sp);
        EulerFactor via_hecke = spin_factor_hecke(lp, lp2, k, p);
        for (int i = 0; i <= 4; ++i)
            worst_factor = std::max(worst_factor,
                                    std::abs(via_satake.coeffs[i] - via_hecke.coeffs[i]));

        // exterior square carries {1,1} plus the five standard parameters
        EigenvalueMultiset ext = exterior_square(sp.params);
        EigenvalueMultiset stdm = std_multiset(sp);
        std::vector<Complex> expected = stdm.values;
        expected.push_back(Complex(1.0));
        worst_ext = std::max(worst_ext, multiset_equal(ext, EigenvalueMultiset(p, expected))
                                            ? 0.0
                                            : 1.0);

        EigenvalueMultiset sym = symmetric_square(sp.params);
        EigenvalueMultiset ext5 = exterior_square(stdm);
        worst_sym = std::max(worst_sym, multiset_equal(sym, ext5) ? 0.0 : 1.0);

        // two-plus-three split of a 5-set
        EigenvalueMultiset s2 = random_multiset(rng, p, 2);
        EigenvalueMultiset t3 = random_multiset(rng, p, 3);
        std::vector<Complex> joined = s2.values;
        joined.insert(joined.end(), t3.values.begin(), t3.values.end());
        EigenvalueMultiset lhs = exterior_square(EigenvalueMultiset(p, joined));
        std::vector<Complex> rhs;
        rhs.push_back(s2.values[0] * s2.values[1]);
        for (const Complex& a : s2.values)
            for (const Complex& b : t3.values) rhs.push_back(a * b);
        Complex det_t = t3.values[0] * t3.values[1] * t3.values[2];
        for (const Complex& b : t3.values) rhs.push_back(det_t / b);
        worst_case2 = std::max(
            worst_case2, multiset_equal(lhs, EigenvalueMultiset(p, rhs)) ? 0.0 : 1.0);

        int size = 1 + static_cast<int>(rng.pick(6));
        EigenvalueMultiset m = random_multiset(rng, p, size);
        std::vector<Complex> h = complete_homogeneous(m.values, size);
        std::vector<Complex> ps = newton_power_from_h(h);
        for (int ell = 1; ell <= size; ++ell)
            worst_newton = std::max(worst_newton, std::abs(ps[ell - 1] - power_sum(m, ell)));
    }
    add_check(out, "spin factor via Satake vs via Hecke", worst_factor <= 1e-9,
              "max coefficient gap " + fmt(worst_factor));
    add_check(out, "exterior square = {1,1} + standard parameters", worst_ext == 0.0,
              worst_ext == 0.0 ? "all multisets matched" : "mismatch found");
    add_check(out, "sym^2(spin) = ext^2(std)", worst_sym == 0.0,
              worst_sym == 0.0 ? "all multisets matched" : "mismatch found");
    add_check(out, "two-plus-three exterior-square split", worst_case2 == 0.0,
              worst_case2 == 0.0 ? "all multisets matched" : "mismatch found");
    add_check(out, "Newton power sums vs brute force", worst_newton <= 1e-10,
              "max gap " + fmt(worst_newton));

    // Saito-Kurokawa exactness at small scale
    const EllipticEigenform& f18 = cached_form(18, 2000);
    ParamodularEigenform lift = sk_lift(f18, 2000);
    bool exact = lift.hecke_exact().at(2).first == 240 && lift.hecke_exact().at(2).second == 135424;
    add_check(out, "weight-10 lift Hecke data at p = 2", exact, "lambda(2), lambda(4) exact");

    CoefficientSeries spin = spin_coeffs(lift, 2000);
    CoefficientSeries conv =
        dirichlet_convolve(zeta_shift_convolution(2000), normalized_gl2_series(f18, 2000), 2000);
    double worst_conv = 0.0;
    for (long n = 1; n <= 2000; ++n)
        worst_conv = std::max(worst_conv, std::abs(spin.at(n) - conv.at(n)));
    add_check(out, "lift spin series = shifted-zeta convolution", worst_conv <= 1e-9,
              "max gap " + fmt(worst_conv));
}

void suite_lemma34(std::vector<CheckResult>& out, const VerifyOptions& opt) {
    Rng rng(opt.seed + 7);
    long violations = 0;
    double min_slack = 1e300;
    for (long trial = 0; trial < opt.lemma_trials; ++trial) {
        double r1 = std::exp(rng.uniform(0.0, std::log(1000.0)));
        double r2 = std::exp(rng.uniform(0.0, std::log(r1)));
        double t1 = rng.uniform(0.0, 2.0 * M_PI), t2 = rng.uniform(0.0, 2.0 * M_PI);
        Complex z1 = r1 * Complex(std::cos(t1), std::sin(t1));
        Complex z2 = r2 * Complex(std::cos(t2), std::sin(t2));
        Complex z3 = rng.uniform() < 0.5 ? Complex(1.0) : Complex(-1.0);
        auto [lhs, rhs] = lemma_z_bound({z1, z2, z3, 1.0 / z2, 1.0 / z1});
        min_slack = std::min(min_slack, rhs - lhs);
        if (lhs > rhs) ++violations;
    }
    add_check(out, "balanced 5-tuple inequality", violations == 0,
              std::to_string(opt.lemma_trials) + " trials, min slack " + fmt(min_slack));
}

void suite_orthogonality(std::vector<CheckResult>& out, const VerifyOptions&) {
    double worst_orth = 0.0;
    for (long q = 2; q <= 30; ++q)
        for (long m = 1; m <= 10; ++m)
            for (long n = 1; n <= 10; ++n) {
                if (std::gcd(m * n, q) != 1) continue;
                auto [lhs, rhs] = primitive_orthogonality_sum(q, m, n);
                worst_orth = std::max(worst_orth, std::abs(lhs - rhs));
            }
    add_check(out, "primitive orthogonality identity", worst_orth <= 1e-9,
              "max gap " + fmt(worst_orth) + " over q <= 30");

    double worst_twist = 0.0;
    for (long q : {5L, 7L, 11L, 13L})
        for (long n = 1; n <= 10; ++n)
            for (long p = 1; p <= 10; ++p) {
                if (std::gcd(n * p, q) != 1) continue;
                auto [lhs, rhs] = odd_twisted_gauss_identity(q, n, p);
                worst_twist = std::max(worst_twist, std::abs(lhs - rhs));
            }
    add_check(out, "odd-character Gauss/Kloosterman identity", worst_twist <= 1e-8,
              "max gap " + fmt(worst_twist));

    double worst_gauss = 0.0;
    for (long q = 2; q <= 100; ++q)
        for (const auto& chi : characters_mod(q)) {
            if (!chi.is_primitive()) continue;
            worst_gauss = std::max(
                worst_gauss, std::abs(std::abs(gauss_sum(chi)) - std::sqrt(static_cast<double>(q))));
        }
    add_check(out, "|tau(chi)| = sqrt(q) for primitive chi", worst_gauss <= 1e-9,
              "max gap " + fmt(worst_gauss) + " for q <= 100");

    double worst_weil = 0.0;
    for (long p : primes_up_to(500)) {
        double bound = 2.0 * std::sqrt(static_cast<double>(p));
        worst_weil = std::max(worst_weil, std::abs(kloosterman(1, 1, p)) - bound);
    }
    add_check(out, "Weil bound at primes", worst_weil <= 1e-9,
              "max excess " + fmt(worst_weil) + " for p <= 500");
}

void suite_afe(std::vector<CheckResult>& out, const VerifyOptions&) {
    CutoffParams cp;
    cp.k = 10;
    double near_one = cutoff_U(1e-3, cp);
    add_check(out, "cutoff near 0 is 1", std::abs(near_one - 1.0) <= 1e-3,
              "U(1e-3) = " + fmt(near_one));
    double far = cutoff_U(100.0, cp);
    add_check(out, "cutoff decay at 100", std::abs(far) <= 1e-6, "U(100) = " + fmt(far));

    bool monotone = true;
    double prev = cutoff_U(0.1, cp);
    for (int i = 1; i < 50; ++i) {
        double y = 0.1 * std::pow(100.0, i / 49.0);
        double v = cutoff_U(y, cp);
        if (v > prev + 1e-12) monotone = false;
        prev = v;
    }
    add_check(out, "cutoff monotone on [0.1, 10]", monotone, "50 samples");

    double worst_part = 0.0;
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        double x = std::exp(rng.uniform(0.0, std::log(1e6)));
        double total = 0.0;
        for (auto [n, w] : partition_V(x)) total += w;
        worst_part = std::max(worst_part, std::abs(total - 1.0));
    }
    add_check(out, "partition of unity sums to 1", worst_part <= 1e-12,
              "max gap " + fmt(worst_part));

    double worst_eps = 0.0;
    for (long q = 2; q <= 100; ++q)
        for (const auto& chi : characters_mod(q)) {
            if (!chi.is_primitive()) continue;
            worst_eps = std::max(worst_eps,
                                 std::abs(std::abs(epsilon_factor(chi, Complex(1.0))) - 1.0));
        }
    add_check(out, "epsilon factor unimodular", worst_eps <= 1e-10, "max gap " + fmt(worst_eps));

    const EllipticEigenform& delta = cached_form(12, 4000);
    DirichletCharacter chi5(5, 1);  // odd at modulus 5
    bool odd_found = chi5.is_odd();
    if (!odd_found)
        for (long i = 0; i < 4; ++i)
            if (DirichletCharacter(5, i).is_odd()) {
                chi5 = DirichletCharacter(5, i);
                odd_found = true;
                break;
            }
    Complex v1 = afe_gl2_central(delta, chi5, 1.0);
    Complex v2 = afe_gl2_central(delta, chi5, 2.0);
    add_check(out, "GL2 central value X-stability", std::abs(v1 - v2) <= 1e-6,
              "gap " + fmt(std::abs(v1 - v2)));

    const EllipticEigenform& f18 = cached_form(18, 4000);
    ParamodularEigenform lift = sk_lift(f18, 4000);
    double worst_fact = 0.0, worst_even = 0.0;
    for (long q : {5L, 7L}) {
        for (const auto& chi : characters_mod(q)) {
            if (!chi.is_primitive()) continue;
            Complex afe = afe_gsp4_central(lift, chi, 1.0);
            if (chi.is_odd()) {
                Complex oracle = dirichlet_L_special(chi, 0) * dirichlet_L_special(chi, 1) *
                                 afe_gl2_central(f18, chi, 1.0);
                double rel = std::abs(afe - oracle) / std::max(1e-12, std::abs(oracle));
                worst_fact = std::max(worst_fact, rel);
            } else {
                worst_even = std::max(worst_even, std::abs(afe));
            }
        }
    }
    add_check(out, "degree-4 central value vs factorization (odd)", worst_fact <= 1e-3,
              "max relative gap " + fmt(worst_fact));
    add_check(out, "degree-4 central value vanishing (even)", worst_even <= 1e-4,
              "max |value| " + fmt(worst_even));
}

void suite_selberg(std::vector<CheckResult>& out, const VerifyOptions& opt) {
    long x_max = static_cast<long>(opt.selberg_x);
    auto tables = eigenvalue_tables({12, 16, 18}, x_max);
    std::map<long, double> lam12(tables[12].begin(), tables[12].end());
    std::map<long, double> lam16(tables[16].begin(), tables[16].end());
    std::map<long, double> lam18(tables[18].begin(), tables[18].end());

    std::vector<double> sample_x;
    for (double x = 1000.0; x < static_cast<double>(x_max); x *= 2.0) sample_x.push_back(x);
    sample_x.push_back(static_cast<double>(x_max));

    double worst_diag = 0.0, worst_off = 0.0;
    for (double x : sample_x) {
        for (const auto* lam : {&lam12, &lam16, &lam18}) {
            auto [value, loglog] = selberg_sum(*lam, *lam, x);
            worst_diag = std::max(worst_diag, std::abs(value - loglog));
        }
        auto [off, loglog2] = selberg_sum(lam12, lam16, x);
        (void)loglog2;
        worst_off = std::max(worst_off, std::abs(off));
    }
    add_check(out, "diagonal prime sums track log log x", worst_diag <= 2.0,
              "max |sum - loglog| " + fmt(worst_diag));
    add_check(out, "off-diagonal prime sums bounded", worst_off <= 2.0,
              "max |sum| " + fmt(worst_off));
}

}

std::vector<std::string> verify_suite_names() {
    return {"identities", "lemma34", "orthogonality", "afe", "selberg", "all"};
}

std::vector<CheckResult> run_verify_suite(const std::string& suite, const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    bool all = suite == "all";
    bool known = all;
    if (all || suite == "identities") { suite_identities(out, opt); known = true; }
    if (all || suite == "lemma34") { suite_lemma34(out, opt); known = true; }
    if (all || suite == "orthogonality") { suite_orthogonality(out, opt); known = true; }
    if (all || suite == "afe") { suite_afe(out, opt); known = true; }
    if (all || suite == "selberg") { suite_selberg(out, opt); known = true; }
    if (!known) throw std::invalid_argument("unknown verify suite: " + suite);
    return out;
}

}
