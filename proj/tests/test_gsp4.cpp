#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "gsp4lfun/gsp4.hpp"
#include "gsp4lfun/json_io.hpp"
#include "gsp4lfun/primes.hpp"
#include "oracles.hpp"

using namespace gsp4lfun;
using oracles::Rng;

namespace {

RationalMatrix unit_matrix(int i, int j, const Rational& v) {
    RationalMatrix m = rm_identity();
    m[i][j] += v;
    return m;
}

// independent membership check: both conditions recomputed from scratch
bool membership_direct(const RationalMatrix& g, long n, bool antidiagonal) {
    int sign[4][4] = {};
    if (antidiagonal) {
        sign[0][3] = 1;
        sign[1][2] = 1;
        sign[2][1] = -1;
        sign[3][0] = -1;
    } else {
        sign[0][2] = 1;
        sign[1][3] = 1;
        sign[2][0] = -1;
        sign[3][1] = -1;
    }
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            Rational acc = 0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    if (sign[a][b] != 0) acc += g[a][r] * sign[a][b] * g[b][c];
            if (acc != Rational(sign[r][c])) return false;
        }
    int expo[4][4] = {{0, -1, 0, 0}, {0, 0, 0, 1}, {0, -1, 0, 0}, {-1, -1, -1, 0}};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            Rational v = g[r][c];
            if (expo[r][c] == -1) v /= n;
            if (expo[r][c] == 1) v *= n;
            if (v.get_den() != 1) return false;
        }
    return true;
}

std::vector<RationalMatrix> level_generators(long n) {
    std::vector<RationalMatrix> gens;
    gens.push_back(unit_matrix(0, 3, 1));
    gens.push_back(unit_matrix(1, 2, 1));
    gens.push_back(unit_matrix(2, 1, Rational(n)));
    gens.push_back(unit_matrix(3, 0, Rational(n)));
    {
        RationalMatrix m = rm_identity();
        m[0][2] += 1;
        m[1][3] += 1;
        gens.push_back(m);
    }
    {
        RationalMatrix m = rm_identity();
        m[0][1] += Rational(n);
        m[2][3] -= Rational(n);
        gens.push_back(m);
    }
    {
        RationalMatrix m = rm_identity();
        m[2][0] += Rational(n);
        m[3][1] += Rational(n);
        gens.push_back(m);
    }
    {
        RationalMatrix m{};
        long diag[4] = {1, -1, -1, 1};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m[i][j] = (i == j) ? diag[i] : 0;
        gens.push_back(m);
    }
    return gens;
}

}

TEST_CASE("paramodular membership") {
    for (long n : {1L, 2L, 3L, 5L})
        CHECK(paramodular_membership(rm_identity(), n));

    // entry 1/N at position (2,4): compare against direct evaluation of both
    // conditions under either symplectic convention
    RationalMatrix shear = unit_matrix(1, 3, Rational(1, 3));
    CHECK(paramodular_membership(shear, 3, SymplecticForm::Antidiagonal) ==
          membership_direct(shear, 3, true));
    CHECK(paramodular_membership(shear, 3, SymplecticForm::Block) ==
          membership_direct(shear, 3, false));
    CHECK(paramodular_membership(shear, 3, SymplecticForm::Block));
    CHECK_FALSE(paramodular_membership(shear, 3, SymplecticForm::Antidiagonal));

    // integral matrix violating the N Z slot at (1,2)
    RationalMatrix bad = unit_matrix(0, 1, 1);
    CHECK_FALSE(paramodular_membership(bad, 2));

    CHECK_THROWS_AS(paramodular_membership(rm_identity(), 0), std::invalid_argument);
}

TEST_CASE("paramodular closure under products") {
    for (long n : {2L, 3L}) {
        std::vector<RationalMatrix> gens = level_generators(n);
        for (const auto& g : gens) {
            CHECK(paramodular_membership(g, n));
            CHECK(membership_direct(g, n, true));
        }
        Rng rng(101 + n);
        for (int trial = 0; trial < 100; ++trial) {
            RationalMatrix prod = rm_identity();
            int steps = 2 + static_cast<int>(rng.pick(4));
            for (int s = 0; s < steps; ++s)
                prod = rm_mul(prod, gens[static_cast<std::size_t>(rng.pick(gens.size()))]);
            CHECK(paramodular_membership(prod, n));
        }
    }
}

TEST_CASE("weight action on polynomial vectors") {
    HomogeneousPoly p;
    p.degree = 2;
    p.coeffs = {Complex(1.0), Complex(2.0), Complex(3.0)};  // S^2 + 2ST + 3T^2

    Matrix2c id{{{Complex(1.0), Complex(0.0)}, {Complex(0.0), Complex(1.0)}}};
    HomogeneousPoly same = eta_kj_action(3, 2, id, p);
    for (int i = 0; i <= 2; ++i) CHECK(std::abs(same.coeffs[i] - p.coeffs[i]) < 1e-14);

    Complex c(0.7, 0.2);
    Matrix2c scalar{{{c, Complex(0.0)}, {Complex(0.0), c}}};
    HomogeneousPoly scaled = eta_kj_action(3, 2, scalar, p);
    Complex expect = cpow_int(c, 2 * 3 + 2);
    for (int i = 0; i <= 2; ++i) CHECK(std::abs(scaled.coeffs[i] - expect * p.coeffs[i]) < 1e-12);

    HomogeneousPoly s;
    s.degree = 1;
    s.coeffs = {Complex(1.0), Complex(0.0)};  // S
    Matrix2c swap{{{Complex(0.0), Complex(1.0)}, {Complex(1.0), Complex(0.0)}}};
    HomogeneousPoly swapped = eta_kj_action(1, 1, swap, s);
    CHECK(std::abs(swapped.coeffs[0]) < 1e-14);               // S coefficient
    CHECK(std::abs(swapped.coeffs[1] + Complex(1.0)) < 1e-14);  // -T

    CHECK_THROWS_AS(eta_kj_action(1, 2, id, s), std::invalid_argument);
}

TEST_CASE("satake conversion round trips") {
    // weight-10 lift data at p = 2
    SpinSatake sp = satake_from_hecke(240.0, 135424.0, 10, 2);
    double r2 = std::sqrt(2.0);
    double lam = -528.0 / std::pow(2.0, 8.5);
    Complex gamma(lam / 2.0, std::sqrt(4.0 - lam * lam) / 2.0);
    CHECK(multiset_equal(sp.params,
                         EigenvalueMultiset(2, {Complex(r2), Complex(1.0 / r2), gamma,
                                                std::conj(gamma)}),
                         1e-9));

    // all-ones corner
    int k = 4;
    long p = 3;
    double lp = 4.0 * std::pow(3.0, k - 1.5);
    double lp2 = std::pow(3.0, 2.0 * k - 3.0) * (12.0 - 2.0 - 1.0 / 3.0);
    SpinSatake ones = satake_from_hecke(lp, lp2, k, 3);
    CHECK(multiset_equal(ones.params,
                         EigenvalueMultiset(3, std::vector<Complex>(4, Complex(1.0))), 1e-9));
    (void)p;

    // forward-then-inverse on random balanced data
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        double theta = rng.uniform(0.0, 2.0 * M_PI), phi = rng.uniform(0.0, 2.0 * M_PI);
        double a = 2.0 * std::cos(theta), b = 2.0 * std::cos(phi);
        int kk = 3 + static_cast<int>(rng.pick(10));
        long pp = 2 + 3 * rng.pick(2);
        double pd = static_cast<double>(pp);
        double l1 = std::pow(pd, kk - 1.5) * (a + b);
        double l2 = std::pow(pd, 2.0 * kk - 3.0) * (a * a + a * b + b * b - 2.0 - 1.0 / pd);
        SpinSatake s = satake_from_hecke(l1, l2, kk, pp);
        auto [r1v, r2v] = hecke_from_satake(s, kk);
        CHECK(std::abs(r1v - l1) <= 1e-9 * std::max(1.0, std::abs(l1)));
        CHECK(std::abs(r2v - l2) <= 1e-8 * std::max(1.0, std::abs(l2)));
    }
}

TEST_CASE("hecke data from satake parameters") {
    SpinSatake ones(2, EigenvalueMultiset(2, std::vector<Complex>(4, Complex(1.0))));
    auto [lp, lp2] = hecke_from_satake(ones, 3);
    CHECK(lp == doctest::Approx(4.0 * std::pow(2.0, 1.5)).epsilon(1e-14));
    CHECK(lp == doctest::Approx(11.3137).epsilon(1e-5));
    (void)lp2;

    // lift data against the exact rational evaluation
    oracles::SkHecke oracle = oracles::sk_hecke_exact(2, 10, mpz_class(-528));
    CHECK(oracle.lp == 240);
    CHECK(oracle.lp2 == 135424);
    SpinSatake sp = satake_from_hecke(240.0, 135424.0, 10, 2);
    auto [l1, l2] = hecke_from_satake(sp, 10);
    CHECK(l1 == doctest::Approx(oracle.lp.get_d()).epsilon(1e-10));
    CHECK(l2 == doctest::Approx(oracle.lp2.get_d()).epsilon(1e-10));

    // imaginary parts vanish for inversion-closed input
    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        Complex alpha = std::polar(rng.uniform(0.7, 1.4), rng.uniform(0.0, 2.0 * M_PI));
        Complex beta = std::conj(alpha) * std::polar(1.0, rng.uniform(-0.1, 0.1));
        SpinSatake s(5, EigenvalueMultiset(5, {alpha, 1.0 / alpha, beta, 1.0 / beta}));
        Complex s1 = power_sum(s.params, 1), s2 = power_sum(s.params, 2);
        Complex ab = (s1 * s1 - (s2 + 4.0)) / 2.0;
        Complex lam_p = std::pow(5.0, 1.5) * s1;
        Complex lam_p2 = std::pow(5.0, 3.0) * (s2 + 4.0 + ab - 2.0 - 0.2);
        if (std::abs(s1.imag()) < 1e-12) {
            CHECK(std::abs(lam_p.imag()) <= 1e-10);
            CHECK(std::abs(lam_p2.imag()) <= 1e-10);
        }
    }
}

TEST_CASE("spin factors both routes") {
    SpinSatake ones(2, EigenvalueMultiset(2, std::vector<Complex>(4, Complex(1.0))));
    EulerFactor quartic = spin_factor_satake(ones);
    double binom[5] = {1.0, -4.0, 6.0, -4.0, 1.0};
    for (int i = 0; i <= 4; ++i) CHECK(quartic.coeffs[i].real() == doctest::Approx(binom[i]));

    SpinSatake sk = satake_from_hecke(240.0, 135424.0, 10, 2);
    EulerFactor f = spin_factor_satake(sk);
    CHECK(f.coeffs[1].real() == doctest::Approx(-0.66291).epsilon(1e-4));
    for (int i = 0; i <= 4; ++i)
        CHECK(std::abs(f.coeffs[i] - f.coeffs[4 - i]) < 1e-9);  // palindromic

    EulerFactor g = spin_factor_hecke(240.0, 135424.0, 10, 2);
    for (int i = 0; i <= 4; ++i) CHECK(std::abs(f.coeffs[i] - g.coeffs[i]) < 1e-9);

    // vanishing odd coefficients at the parity point
    int k = 5;
    long p = 3;
    double lp2 = -std::pow(3.0, 2.0 * k - 4.0);
    EulerFactor parity = spin_factor_hecke(0.0, lp2, k, p);
    CHECK(std::abs(parity.coeffs[1]) < 1e-12);
    CHECK(std::abs(parity.coeffs[3]) < 1e-12);
    CHECK(parity.coeffs[4].real() == doctest::Approx(1.0));

    // dual-route agreement across weights and primes
    Rng rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        int kk = 3 + static_cast<int>(rng.pick(18));
        const long ps[4] = {2, 3, 5, 7};
        long pp = ps[rng.pick(4)];
        double theta = rng.uniform(0.0, 2.0 * M_PI), phi = rng.uniform(0.0, 2.0 * M_PI);
        double a = 2.0 * std::cos(theta), b = 2.0 * std::cos(phi);
        double pd = static_cast<double>(pp);
        double l1 = std::pow(pd, kk - 1.5) * (a + b);
        double l2 = std::pow(pd, 2.0 * kk - 3.0) * (a * a + a * b + b * b - 2.0 - 1.0 / pd);
        EulerFactor via_h = spin_factor_hecke(l1, l2, kk, pp);
        EulerFactor via_s = spin_factor_satake(satake_from_hecke(l1, l2, kk, pp));
        for (int i = 0; i <= 4; ++i) CHECK(std::abs(via_h.coeffs[i] - via_s.coeffs[i]) <= 1e-9);
    }
}

TEST_CASE("standard parameters and factor") {
    SpinSatake ones(2, EigenvalueMultiset(2, std::vector<Complex>(4, Complex(1.0))));
    EigenvalueMultiset m1 = std_multiset(ones);
    CHECK(multiset_equal(m1, EigenvalueMultiset(2, std::vector<Complex>(5, Complex(1.0)))));
    EulerFactor f1 = std_factor(ones);
    double binom5[6] = {1.0, -5.0, 10.0, -10.0, 5.0, -1.0};
    for (int i = 0; i <= 5; ++i) CHECK(f1.coeffs[i].real() == doctest::Approx(binom5[i]));

    Complex a(0.8, 0.3), b(1.1, -0.2);
    SpinSatake generic(3, EigenvalueMultiset(3, {a, 1.0 / a, b, 1.0 / b}));
    EigenvalueMultiset m2 = std_multiset(generic);
    CHECK(multiset_equal(
        m2, EigenvalueMultiset(3, {Complex(1.0), a * b, a / b, b / a, 1.0 / (a * b)})));
    EulerFactor f2 = std_factor(generic);
    CHECK(f2.degree() == 5);
    CHECK(f2.coeffs[0] == Complex(1.0));
    Complex at_one(0.0);
    for (const Complex& c : f2.coeffs) at_one += c;
    CHECK(std::abs(at_one) < 1e-9);  // root at 1

    CHECK_THROWS_AS(
        SpinSatake(2, EigenvalueMultiset(2, {Complex(2.0), Complex(3.0), Complex(4.0),
                                             Complex(1.0 / 24.0)})),
        std::invalid_argument);
}

TEST_CASE("saito-kurokawa lift") {
    EllipticEigenform f18 = eigenform_one_dim(18, 3000);
    ParamodularEigenform lift = sk_lift(f18, 3000);
    CHECK(lift.k() == 10);
    CHECK(lift.j() == 0);
    CHECK(lift.packet() == Packet::P);
    CHECK(lift.level() == 1);

    CHECK(lift.hecke_exact().at(2).first == 240);
    CHECK(lift.hecke_exact().at(2).second == 135424);
    for (long p : primes_up_to(200)) {
        oracles::SkHecke oracle = oracles::sk_hecke_exact(p, 10, f18.coeff(p));
        CHECK(lift.hecke_exact().at(p).first == oracle.lp);
        CHECK(lift.hecke_exact().at(p).second == oracle.lp2);
    }

    // spin series = zeta(s -/+ 1/2) convolution with the elliptic series
    long n_max = 2000;
    CoefficientSeries spin = spin_coeffs(lift, n_max);
    CHECK(std::abs(spin.at(1) - Complex(1.0)) < 1e-15);
    CHECK(spin.at(2).real() == doctest::Approx(std::sqrt(2.0) + 1.0 / std::sqrt(2.0) -
                                               528.0 / std::pow(2.0, 8.5))
                                   .epsilon(1e-12));
    CHECK(spin.at(2).real() == doctest::Approx(0.66292).epsilon(1e-4));
    CHECK(std::abs(spin.at(6) - spin.at(2) * spin.at(3)) < 1e-12);

    CoefficientSeries zz(n_max), lamf(n_max);
    for (long d = 1; d <= n_max; ++d)
        for (long m = d; m <= n_max; m += d) zz.ref(m) += static_cast<double>(d);
    for (long n = 1; n <= n_max; ++n) {
        zz.ref(n) /= std::sqrt(static_cast<double>(n));
        lamf.ref(n) = f18.coeff(n).get_d() / std::pow(static_cast<double>(n), 8.5);
    }
    CoefficientSeries conv = dirichlet_convolve(zz, lamf, n_max);
    for (long n = 1; n <= n_max; ++n) CHECK(std::abs(spin.at(n) - conv.at(n)) < 1e-9);

    // standard series values
    CoefficientSeries stds = std_coeffs(lift, 100);
    CHECK(std::abs(stds.at(1) - Complex(1.0)) < 1e-15);
    CHECK(std_prime_coeff(lift, 2) == -2.09375);  // exact dyadic value
    for (long p : primes_up_to(100)) CHECK(std::abs(stds.at(p).imag()) < 1e-12);
    for (long p : primes_up_to(100))
        CHECK(stds.at(p).real() == doctest::Approx(std_prime_coeff(lift, p)).epsilon(1e-11));

    CHECK_THROWS_WITH_AS(sk_lift(eigenform_one_dim(12, 50)), "sk_lift: weight too small",
                         std::invalid_argument);
}

TEST_CASE("packet classification") {
    EllipticEigenform f18 = eigenform_one_dim(18, 2000);
    ParamodularEigenform lift = sk_lift(f18, 2000);
    std::map<long, double> lift_data, g_data;
    for (long p : primes_up_to(2000)) lift_data[p] = spin_prime_coeff(lift, p);
    ParamodularEigenform g = synthesize_G_form(99, 10, 2000);
    for (long p : primes_up_to(2000)) g_data[p] = spin_prime_coeff(g, p);

    ClassifyReport lift_rep = classify_packet(lift_data);
    CHECK(lift_rep.verdict == ClassifyReport::Verdict::P);
    CHECK(lift_rep.rho_p >= 0.25);

    ClassifyReport g_rep = classify_packet(g_data);
    CHECK(g_rep.verdict == ClassifyReport::Verdict::G);
    CHECK(g_rep.general_violations == 0);

    std::map<long, double> tiny{{2, 1.0}, {3, 1.0}};
    CHECK_THROWS_AS(classify_packet(tiny), std::invalid_argument);
}

TEST_CASE("hodge-tate weights") {
    HodgeTateWeights a = hodge_tate_weights(3, 0);
    CHECK(a.weights == std::array<long, 4>{0, 1, 2, 3});
    CHECK(a.regular);
    HodgeTateWeights b = hodge_tate_weights(10, 0);
    CHECK(b.weights == std::array<long, 4>{0, 8, 9, 17});
    HodgeTateWeights c = hodge_tate_weights(3, 1);
    CHECK(c.weights == std::array<long, 4>{0, 1, 3, 4});
    HodgeTateWeights d = hodge_tate_weights(2, 0);
    CHECK_FALSE(d.regular);
    CHECK(d.weights[1] == d.weights[0]);  // degenerate below the regular range
}

TEST_CASE("synthesized general-type forms") {
    ParamodularEigenform a = synthesize_G_form(7, 10, 300);
    ParamodularEigenform b = synthesize_G_form(7, 10, 300);
    ParamodularEigenform c = synthesize_G_form(8, 10, 300);
    CHECK(a.hecke_at(2).lp == b.hecke_at(2).lp);
    CHECK(a.hecke_at(2).lp != c.hecke_at(2).lp);
    CHECK(std::abs(spin_prime_coeff(a, 2)) <= 4.0 + 1e-12);

    for (long p : primes_up_to(300)) {
        SpinSatake sp = satake_from_hecke(a.hecke_at(p).lp, a.hecke_at(p).lp2, 10, p);
        for (const Complex& v : sp.params.values) CHECK(std::abs(std::abs(v) - 1.0) < 1e-7);
        auto [lp, lp2] = hecke_from_satake(sp, 10);
        CHECK(lp == doctest::Approx(a.hecke_at(p).lp).epsilon(1e-9));
        CHECK(lp2 == doctest::Approx(a.hecke_at(p).lp2).epsilon(1e-9));
    }
}

TEST_CASE("lift spin multiset structure at p = 2") {
    EllipticEigenform f18 = eigenform_one_dim(18, 16);
    ParamodularEigenform lift = sk_lift(f18, 16);
    SpinSatake sp = form_spin_satake(lift, 2);
    EigenvalueMultiset ext = exterior_square(sp.params);
    int ones = 0;
    for (const Complex& v : ext.values)
        if (std::abs(v - Complex(1.0)) <= 1e-9) ++ones;
    CHECK(ones == 2);
    std::vector<Complex> rest = std_multiset(sp).values;
    rest.push_back(Complex(1.0));
    CHECK(multiset_equal(ext, EigenvalueMultiset(2, rest)));
    // the standard parameters carry sqrt(p)-scaled pairs around the fixed 1
    EigenvalueMultiset stdm = std_multiset(sp);
    double r2 = std::sqrt(2.0);
    int scaled_up = 0, scaled_down = 0;
    for (const Complex& v : stdm.values) {
        if (std::abs(std::abs(v) - r2) < 1e-9) ++scaled_up;
        if (std::abs(std::abs(v) - 1.0 / r2) < 1e-9) ++scaled_down;
    }
    CHECK(scaled_up == 2);
    CHECK(scaled_down == 2);
}

TEST_CASE("representation identities on random balanced data") {
    Rng rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        Complex alpha = std::polar(rng.uniform(0.6, 1.7), rng.uniform(0.0, 2.0 * M_PI));
        Complex beta = std::polar(rng.uniform(0.6, 1.7), rng.uniform(0.0, 2.0 * M_PI));
        SpinSatake sp(2, EigenvalueMultiset(2, {alpha, 1.0 / alpha, beta, 1.0 / beta}));

        EigenvalueMultiset ext = exterior_square(sp.params);
        std::vector<Complex> expected = std_multiset(sp).values;
        expected.push_back(Complex(1.0));
        CHECK(multiset_equal(ext, EigenvalueMultiset(2, expected)));

        CHECK(multiset_equal(symmetric_square(sp.params), exterior_square(std_multiset(sp))));
    }
}

TEST_CASE("form data invariants") {
    ParamodularEigenform::Data bad;
    bad.k = 10;
    bad.j = 1;
    bad.level = 1;
    bad.packet = Packet::P;
    CHECK_THROWS_AS(ParamodularEigenform(std::move(bad)), std::invalid_argument);

    ParamodularEigenform::Data ram;
    ram.k = 3;
    ram.j = 0;
    ram.level = 2;
    ram.packet = Packet::G;
    ram.hecke[2] = HeckePair{1.0, 1.0};
    CHECK_THROWS_AS(ParamodularEigenform(std::move(ram)), std::invalid_argument);
}

TEST_CASE("ramified primes use supplied or trivial factors") {
    ParamodularEigenform::Data d;
    d.k = 3;
    d.j = 0;
    d.level = 2;
    d.packet = Packet::G;
    for (long p : primes_up_to(40)) {
        if (p == 2) continue;
        double pd = static_cast<double>(p);
        d.hecke[p] = HeckePair{4.0 * std::pow(pd, 1.5), std::pow(pd, 3.0) * (10.0 - 1.0 / pd)};
    }
    ParamodularEigenform plain(d);
    CoefficientSeries s = spin_coeffs(plain, 40);
    CHECK(s.at(2) == Complex(0.0));  // trivial factor at the bad prime
    CHECK(s.at(6) == Complex(0.0));
    CHECK(s.at(3) != Complex(0.0));

    d.ramified_spin.emplace(2, EulerFactor(2, {Complex(1.0), Complex(-0.5)}));
    ParamodularEigenform custom(d);
    CoefficientSeries t = spin_coeffs(custom, 40);
    CHECK(t.at(2).real() == doctest::Approx(0.5));
    CHECK(t.at(4).real() == doctest::Approx(0.25));
    CHECK(std::abs(t.at(6) - t.at(2) * t.at(3)) < 1e-12);

    // degree caps on supplied factors
    ParamodularEigenform::Data bad = d;
    bad.ramified_spin.clear();
    bad.ramified_spin.emplace(
        2, EulerFactor(2, {Complex(1.0), Complex(1.0), Complex(1.0), Complex(1.0), Complex(1.0),
                           Complex(1.0)}));
    CHECK_THROWS_AS(ParamodularEigenform(std::move(bad)), std::invalid_argument);
}

TEST_CASE("gsp4 JSON round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "gsp4lfun_gsp4_test";
    fs::create_directories(dir);

    // general-type form with floating data
    ParamodularEigenform g = synthesize_G_form(5, 4, 100);
    fs::path gfile = dir / "g.json";
    write_paramodular(g, gfile.string());
    ParamodularEigenform g2 = read_paramodular(gfile.string());
    CHECK(g2.k() == 4);
    CHECK(g2.packet() == Packet::G);
    for (long p : primes_up_to(100)) {
        CHECK(g2.hecke_at(p).lp == doctest::Approx(g.hecke_at(p).lp).epsilon(1e-12));
        CHECK(g2.hecke_at(p).lp2 == doctest::Approx(g.hecke_at(p).lp2).epsilon(1e-12));
    }

    // lift with exact data plus source reference
    EllipticEigenform f18 = eigenform_one_dim(18, 128);
    write_eigenform(f18, (dir / "f18.json").string());
    ParamodularEigenform lift = sk_lift(f18, 128);
    ParamodularEigenform::Data d = lift.data();
    d.sk_source_path = "f18.json";
    fs::path lfile = dir / "lift.json";
    write_paramodular(ParamodularEigenform(std::move(d)), lfile.string());
    ParamodularEigenform back = read_paramodular(lfile.string());
    CHECK(back.packet() == Packet::P);
    REQUIRE(back.sk_source().has_value());
    CHECK(back.sk_source()->coeff(2) == -528);
    CHECK(back.hecke_exact().at(2).first == 240);
    CHECK(back.hecke_exact().at(127).first == lift.hecke_exact().at(127).first);

    fs::remove_all(dir);
}
