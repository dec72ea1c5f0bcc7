#include "gsp4lfun/gsp4.hpp"

#include <cmath>
#include <stdexcept>

#include "gsp4lfun/parallel.hpp"
#include "gsp4lfun/primes.hpp"

namespace gsp4lfun {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double unit_draw(std::uint64_t seed, long p, int slot) {
    std::uint64_t h = splitmix64(seed ^ (0x517cc1b727220a95ULL * static_cast<std::uint64_t>(p)) ^
                                 (0x2545f4914f6cdd1dULL * static_cast<std::uint64_t>(slot)));
    return static_cast<double>(h >> 11) / 9007199254740992.0;  // [0, 1)
}

const int kLatticeExponent[4][4] = {
    {0, -1, 0, 0},
    {0, 0, 0, 1},
    {0, -1, 0, 0},
    {-1, -1, -1, 0},
};

RationalMatrix form_matrix(SymplecticForm form) {
    RationalMatrix j{};
    for (auto& row : j)
        for (auto& v : row) v = 0;
    if (form == SymplecticForm::Antidiagonal) {
        j[0][3] = 1;
        j[1][2] = 1;
        j[2][1] = -1;
        j[3][0] = -1;
    } else {
        j[0][2] = 1;
        j[1][3] = 1;
        j[2][0] = -1;
        j[3][1] = -1;
    }
    return j;
}

bool rational_integral(const Rational& v) { return v.get_den() == 1; }

// lambda_F(p)   = p^{k-3/2} (A + B)
// lambda_F(p^2) = p^{2k-3} (A^2 + AB + B^2 - 2 - 1/p)
// with A + B and AB read off the inversion-closed multiset via power sums.
std::pair<Complex, Complex> hecke_from_multiset(const EigenvalueMultiset& ms, int k, long p) {
    Complex s1 = power_sum(ms, 1);
    Complex s2 = power_sum(ms, 2);
    Complex sum_sq = s2 + 4.0;                 // A^2 + B^2
    Complex ab = (s1 * s1 - sum_sq) / 2.0;     // AB
    double pd = static_cast<double>(p);
    Complex lp = std::pow(pd, k - 1.5) * s1;
    Complex lp2 = std::pow(pd, 2 * k - 3.0) * (sum_sq + ab - 2.0 - 1.0 / pd);
    return {lp, lp2};
}

}

SpinSatake::SpinSatake(long p, EigenvalueMultiset ms) : prime(p), params(std::move(ms)) {
    if (params.size() != 4)
        throw std::invalid_argument("SpinSatake: exactly four parameters required");
    if (params.prime != prime)
        throw std::invalid_argument("SpinSatake: prime mismatch");
    Complex prod(1.0);
    for (const Complex& v : params.values) prod *= v;
    if (std::abs(prod - Complex(1.0)) > 1e-9)
        throw std::invalid_argument("SpinSatake: parameter product differs from 1");
    std::array<bool, 4> used{};
    for (int i = 0; i < 4; ++i) {
        bool matched = false;
        for (int j = 0; j < 4 && !matched; ++j) {
            if (used[j]) continue;
            if (std::abs(params.values[i] * params.values[j] - Complex(1.0)) <= 1e-9) {
                used[j] = true;
                matched = true;
            }
        }
        if (!matched)
            throw std::invalid_argument("SpinSatake: multiset not closed under inversion");
    }
}

ParamodularEigenform::ParamodularEigenform(Data d) : d_(std::move(d)) {
    if (d_.k < 1 || d_.j < 0 || d_.level < 1)
        throw std::invalid_argument("ParamodularEigenform: bad weight or level");
    if (d_.j > 0 && d_.packet != Packet::G)
        throw std::invalid_argument("ParamodularEigenform: vector-valued forms are general type");
    if (d_.packet == Packet::P) {
        if (!d_.sk_source)
            throw std::invalid_argument("ParamodularEigenform: lift packet requires a source form");
        if (d_.sk_source->weight() != 2 * d_.k - 2)
            throw std::invalid_argument("ParamodularEigenform: source weight must be 2k - 2");
    }
    for (const auto& [p, pair] : d_.hecke) {
        (void)pair;
        if (d_.level % p == 0)
            throw std::invalid_argument("ParamodularEigenform: Hecke data at a ramified prime");
    }
    for (const auto& [p, f] : d_.ramified_spin) {
        if (d_.level % p != 0)
            throw std::invalid_argument("ParamodularEigenform: ramified factor at a good prime");
        if (f.degree() > 4)
            throw std::invalid_argument("ParamodularEigenform: ramified spin factor degree > 4");
    }
    for (const auto& [p, f] : d_.ramified_std) {
        if (d_.level % p != 0)
            throw std::invalid_argument("ParamodularEigenform: ramified factor at a good prime");
        if (f.degree() > 5)
            throw std::invalid_argument("ParamodularEigenform: ramified std factor degree > 5");
    }
}

const HeckePair& ParamodularEigenform::hecke_at(long p) const {
    auto it = d_.hecke.find(p);
    if (it == d_.hecke.end())
        throw std::invalid_argument("missing Hecke datum at prime " + std::to_string(p));
    return it->second;
}

RationalMatrix rm_identity() {
    RationalMatrix m{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = (i == j) ? 1 : 0;
    return m;
}

RationalMatrix rm_mul(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rational s = 0;
            for (int t = 0; t < 4; ++t) s += a[i][t] * b[t][j];
            out[i][j] = s;
        }
    return out;
}

bool paramodular_membership(const RationalMatrix& g, long N, SymplecticForm form) {
    if (N < 1) throw std::invalid_argument("paramodular_membership: level must be positive");
    RationalMatrix j = form_matrix(form);
    // g^T J g == J  (multiplier 1)
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            Rational s = 0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) s += g[a][r] * j[a][b] * g[b][c];
            if (s != j[r][c]) return false;
        }
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            Rational v = g[r][c];
            int e = kLatticeExponent[r][c];
            if (e == -1) v /= N;
            if (e == 1) v *= N;
            if (!rational_integral(v)) return false;
        }
    return true;
}

HomogeneousPoly eta_kj_action(int k, int j, const Matrix2c& h, const HomogeneousPoly& p) {
    if (p.degree != j || static_cast<int>(p.coeffs.size()) != j + 1)
        throw std::invalid_argument("eta_kj_action: inhomogeneous polynomial");
    Complex a = h[0][0], b = h[0][1], c = h[1][0], d = h[1][1];
    Complex det = a * d - b * c;

    // powers of the substituted linear forms S' = aS + cT, T' = bS + dT
    std::vector<std::vector<Complex>> pow_s(static_cast<std::size_t>(j) + 1);
    std::vector<std::vector<Complex>> pow_t(static_cast<std::size_t>(j) + 1);
    pow_s[0] = {Complex(1.0)};
    pow_t[0] = {Complex(1.0)};
    for (int m = 1; m <= j; ++m) {
        pow_s[m] = poly_mul(pow_s[m - 1], {a, c});
        pow_t[m] = poly_mul(pow_t[m - 1], {b, d});
    }

    HomogeneousPoly out;
    out.degree = j;
    out.coeffs.assign(static_cast<std::size_t>(j) + 1, Complex(0.0));
    for (int i = 0; i <= j; ++i) {
        if (p.coeffs[i] == Complex(0.0)) continue;
        std::vector<Complex> term = poly_mul(pow_s[j - i], pow_t[i]);
        for (int r = 0; r <= j; ++r) out.coeffs[r] += p.coeffs[i] * term[r];
    }
    Complex scale = cpow_int(det, k);
    for (auto& v : out.coeffs) v *= scale;
    return out;
}

SpinSatake satake_from_hecke(double lp, double lp2, int k, long p) {
    if (k < 1) throw std::invalid_argument("satake_from_hecke: k must be >= 1");
    double pd = static_cast<double>(p);
    double s = lp / std::pow(pd, k - 1.5);
    double t = lp2 / std::pow(pd, 2 * k - 3.0) + 2.0 + 1.0 / pd;
    // A + B = s, AB = s^2 - t
    Complex disc = std::sqrt(Complex(4.0 * t - 3.0 * s * s));
    Complex big_a = (s + disc) / 2.0;
    Complex big_b = (s - disc) / 2.0;
    auto split = [](Complex sum) {
        Complex root = (sum + std::sqrt(sum * sum - 4.0)) / 2.0;
        return root;
    };
    Complex alpha = split(big_a);
    Complex beta = split(big_b);
    return SpinSatake(p, EigenvalueMultiset(p, {alpha, 1.0 / alpha, beta, 1.0 / beta}));
}

std::pair<double, double> hecke_from_satake(const SpinSatake& sp, int k) {
    auto [lp, lp2] = hecke_from_multiset(sp.params, k, sp.prime);
    return {lp.real(), lp2.real()};
}

EulerFactor spin_factor_satake(const SpinSatake& sp) {
    return euler_factor_from_roots(sp.params, sp.prime);
}

EulerFactor spin_factor_hecke(double lp, double lp2, int k, long p) {
    if (k < 1) throw std::invalid_argument("spin_factor_hecke: k must be >= 1");
    double pd = static_cast<double>(p);
    std::vector<Complex> c{
        Complex(1.0),
        Complex(-lp),
        Complex(lp * lp - lp2 - std::pow(pd, 2 * k - 4.0)),
        Complex(-lp * std::pow(pd, 2 * k - 3.0)),
        Complex(std::pow(pd, 4 * k - 6.0)),
    };
    for (int i = 1; i <= 4; ++i) c[i] /= std::pow(pd, i * (k - 1.5));
    return EulerFactor(p, std::move(c));
}

EigenvalueMultiset std_multiset(const SpinSatake& sp) {
    EigenvalueMultiset ext = exterior_square(sp.params);
    std::vector<Complex> vals = ext.values;
    int best = -1;
    double best_d = 1e-9;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        double d = std::abs(vals[i] - Complex(1.0));
        if (d <= best_d) {
            best_d = d;
            best = static_cast<int>(i);
        }
    }
    if (best < 0) throw std::invalid_argument("not symplectic");
    vals.erase(vals.begin() + best);
    return EigenvalueMultiset(sp.prime, std::move(vals));
}

EulerFactor std_factor(const SpinSatake& sp) {
    return euler_factor_from_roots(std_multiset(sp), sp.prime);
}

SpinSatake form_spin_satake(const ParamodularEigenform& f, long p) {
    if (f.level() % p == 0)
        throw std::invalid_argument("form_spin_satake: prime divides the level");
    if (f.packet() == Packet::P && f.sk_source()) {
        const EllipticEigenform& src = *f.sk_source();
        EigenvalueMultiset gl2 = satake_gl2(src, p);
        double rp = std::sqrt(static_cast<double>(p));
        return SpinSatake(
            p, EigenvalueMultiset(p, {Complex(rp), Complex(1.0 / rp), gl2.values[0],
                                      gl2.values[1]}));
    }
    const HeckePair& h = f.hecke_at(p);
    return satake_from_hecke(h.lp, h.lp2, f.k(), p);
}

double spin_prime_coeff(const ParamodularEigenform& f, long p) {
    if (f.packet() == Packet::P && f.sk_source()) {
        double rp = std::sqrt(static_cast<double>(p));
        return rp + 1.0 / rp + normalized_eigenvalue(*f.sk_source(), p);
    }
    return power_sum(form_spin_satake(f, p).params, 1).real();
}

double std_prime_coeff(const ParamodularEigenform& f, long p) {
    if (f.packet() == Packet::P && f.sk_source()) {
        // 1 + lambda_f(p)(p^{1/2} + p^{-1/2}) = 1 + a_f(p)(p^2 + p)/p^k, exact
        // in binary arithmetic at p = 2.
        double af = f.sk_source()->coeff(p).get_d();
        double pd = static_cast<double>(p);
        return 1.0 + af * ((pd * pd + pd) / std::pow(pd, f.k()));
    }
    return power_sum(std_multiset(form_spin_satake(f, p)), 1).real();
}

namespace {

CoefficientSeries expand_factors(const ParamodularEigenform& f, long n_max, bool spin) {
    std::vector<long> ps = primes_up_to(n_max);
    std::vector<EulerFactor> locals(ps.size());
    parallel_for(0, static_cast<long>(ps.size()), [&](long i) {
        long p = ps[static_cast<std::size_t>(i)];
        if (f.level() % p == 0) {
            const auto& ram = spin ? f.ramified_spin() : f.ramified_std();
            auto it = ram.find(p);
            locals[static_cast<std::size_t>(i)] =
                it != ram.end() ? it->second : EulerFactor(p, {Complex(1.0)});
            return;
        }
        SpinSatake sp = form_spin_satake(f, p);
        locals[static_cast<std::size_t>(i)] = spin ? spin_factor_satake(sp) : std_factor(sp);
    });
    std::map<long, EulerFactor> factors;
    for (std::size_t i = 0; i < ps.size(); ++i) factors.emplace(ps[i], std::move(locals[i]));
    return dirichlet_expand(factors, n_max);
}

}

CoefficientSeries spin_coeffs(const ParamodularEigenform& f, long n_max) {
    return expand_factors(f, n_max, true);
}

CoefficientSeries std_coeffs(const ParamodularEigenform& f, long n_max) {
    return expand_factors(f, n_max, false);
}

ParamodularEigenform sk_lift(const EllipticEigenform& f, long prime_bound) {
    int w = f.weight();
    if (w % 2 != 0) throw std::invalid_argument("sk_lift: odd weight");
    if (w < 18) throw std::invalid_argument("sk_lift: weight too small");
    int k = (w + 2) / 2;

    ParamodularEigenform::Data d;
    d.k = k;
    d.j = 0;
    d.level = 1;
    d.packet = Packet::P;
    d.sk_source = f;

    long bound = std::min(prime_bound, f.precision());
    for (long p : primes_up_to(bound)) {
        mpz_class pk1, pk2, p2k2;
        mpz_ui_pow_ui(pk1.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(k - 1));
        mpz_ui_pow_ui(pk2.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(k - 2));
        mpz_ui_pow_ui(p2k2.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(2 * k - 2));
        const mpz_class& af = f.coeff(p);
        mpz_class lp = pk1 + pk2 + af;
        mpz_class lp2 = p2k2 + (pk1 + pk2) * af + af * af;
        d.hecke[p] = HeckePair{lp.get_d(), lp2.get_d()};
        d.hecke_exact[p] = {lp, lp2};
    }
    return ParamodularEigenform(std::move(d));
}

ClassifyReport classify_packet(const std::map<long, double>& spin_prime_values,
                               const ClassifyOptions& opt) {
    if (spin_prime_values.size() < 25)
        throw std::invalid_argument("classify_packet: insufficient data (need at least 25 primes)");
    ClassifyReport rep;
    rep.primes_used = static_cast<long>(spin_prime_values.size());
    long above = 0;
    for (const auto& [p, a] : spin_prime_values) {
        double rp = std::sqrt(static_cast<double>(p));
        double lift_bound = 0.5 * rp;
        double general_bound = 4.0 * std::pow(static_cast<double>(p), 0.5 - 1.0 / 17.0);
        double abs_a = std::abs(a);
        if (abs_a >= lift_bound) ++above;
        if (abs_a > general_bound) ++rep.general_violations;
        rep.margins.push_back({p, abs_a, lift_bound, general_bound});
    }
    rep.rho_p = static_cast<double>(above) / static_cast<double>(rep.primes_used);
    if (rep.rho_p >= opt.tau_p)
        rep.verdict = ClassifyReport::Verdict::P;
    else if (rep.rho_p < opt.tau_g && rep.general_violations == 0)
        rep.verdict = ClassifyReport::Verdict::G;
    else
        rep.verdict = ClassifyReport::Verdict::Inconclusive;
    return rep;
}

HodgeTateWeights hodge_tate_weights(int k, int j) {
    if (j < 0) throw std::invalid_argument("hodge_tate_weights: j must be >= 0");
    HodgeTateWeights out;
    out.weights = {0, k - 2, k + j - 1, 2 * k + j - 3};
    out.regular = k >= 3;
    return out;
}

ParamodularEigenform synthesize_G_form(std::uint64_t seed, int k, long prime_bound) {
    if (k < 3) throw std::invalid_argument("synthesize_G_form: k must be >= 3");
    ParamodularEigenform::Data d;
    d.k = k;
    d.j = 0;
    d.level = 1;
    d.packet = Packet::G;
    const double two_pi = 8.0 * std::atan(1.0);
    for (long p : primes_up_to(prime_bound)) {
        double theta = two_pi * unit_draw(seed, p, 1);
        double phi = two_pi * unit_draw(seed, p, 2);
        double a = 2.0 * std::cos(theta), b = 2.0 * std::cos(phi);
        double pd = static_cast<double>(p);
        double lp = std::pow(pd, k - 1.5) * (a + b);
        double lp2 = std::pow(pd, 2 * k - 3.0) * (a * a + a * b + b * b - 2.0 - 1.0 / pd);
        d.hecke[p] = HeckePair{lp, lp2};
    }
    return ParamodularEigenform(std::move(d));
}

}
