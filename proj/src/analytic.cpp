#include "gsp4lfun/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gsp4lfun/parallel.hpp"
#include "gsp4lfun/primes.hpp"
#include "gsp4lfun/special.hpp"

namespace gsp4lfun {

namespace {

// 24-point Gauss-Legendre rule on [-1, 1], nodes by Newton on P_24.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

const GaussRule& gauss_rule() {
    static const GaussRule rule = [] {
        const int n = 24;
        GaussRule r;
        r.x.resize(n);
        r.w.resize(n);
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            r.x[i] = x;
            r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return r;
    }();
    return rule;
}

bool gamma_pole_at(double z) {
    double r = std::round(z);
    return z <= 0.25 && std::abs(z - r) < 1e-12 && r <= 0.0;
}

std::string profile_key(const std::vector<GammaSlot>& slots, double gauss_scale) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& s : slots) os << (s.kind == GammaSlot::Kind::R ? 'R' : 'C') << s.shift << ';';
    os << '|' << gauss_scale;
    return os.str();
}

double sign_from_weight(int weight) {
    // Level-1 root number contribution i^w folded into the engine's minus sign.
    return (weight / 2) % 2 == 0 ? -1.0 : 1.0;
}

}

AfeProfile::AfeProfile(std::vector<GammaSlot> slots, double gauss_scale)
    : slots_(std::move(slots)), gauss_scale_(gauss_scale) {
    if (slots_.empty()) throw std::invalid_argument("AfeProfile: no gamma slots");
    for (const auto& s : slots_) {
        double arg0 = s.kind == GammaSlot::Kind::R ? (0.5 + s.shift) / 2.0 : 0.5 + s.shift;
        if (gamma_pole_at(arg0)) zero_ = true;
    }
}

Complex AfeProfile::line_factor(Complex u) const {
    Complex log_acc(0.0);
    for (const auto& s : slots_) {
        if (s.kind == GammaSlot::Kind::R) {
            double z0 = (0.5 + s.shift) / 2.0;
            log_acc += log_gamma(z0 + u / 2.0) - log_gamma(Complex(z0)) - u * (0.5 * std::log(M_PI));
        } else {
            double z0 = 0.5 + s.shift;
            log_acc += log_gamma(z0 + u) - log_gamma(Complex(z0)) - u * std::log(2.0 * M_PI);
        }
    }
    log_acc += gauss_scale_ * u * u;
    return std::exp(log_acc) / u;
}

double AfeProfile::quadrature_value(double y, double sigma, double t_max,
                                    double panel_width) const {
    if (y <= 0.0) throw std::invalid_argument("AfeProfile: argument must be positive");
    if (zero_) return 0.0;
    const GaussRule& rule = gauss_rule();
    double log_y = std::log(y);
    double acc = 0.0;
    for (double lo = 0.0; lo < t_max; lo += panel_width) {
        double hi = std::min(lo + panel_width, t_max);
        double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double panel_acc = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            double t = mid + half * rule.x[i];
            Complex u(sigma, t);
            Complex f = line_factor(u) * std::exp(-u * log_y);
            panel_acc += rule.w[i] * f.real();
        }
        acc += half * panel_acc;
    }
    return acc / M_PI;
}

void AfeProfile::build_table() {
    if (built_ || zero_) {
        built_ = true;
        return;
    }
    z_lo_ = -34.0;
    z_hi_ = gauss_scale_ > 0.0 ? 24.0 : 12.0;
    dz_ = 0.01;
    long n = static_cast<long>(std::ceil((z_hi_ - z_lo_) / dz_)) + 1;
    table_.resize(static_cast<std::size_t>(n));

    const GaussRule& rule = gauss_rule();
    const double t_max = 80.0, panel_width = 0.5;
    // cache line factors for the two contour choices
    struct Node {
        double t;
        double weight;
        Complex f_low;
        Complex f_high;
    };
    std::vector<Node> nodes;
    for (double lo = 0.0; lo < t_max; lo += panel_width) {
        double hi = std::min(lo + panel_width, t_max);
        double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            double t = mid + half * rule.x[i];
            nodes.push_back({t, half * rule.w[i], line_factor(Complex(0.5, t)),
                             line_factor(Complex(2.0, t))});
        }
    }
    for (long i = 0; i < n; ++i) {
        double z = z_lo_ + dz_ * static_cast<double>(i);
        bool low = z < 0.0;
        double sigma = low ? 0.5 : 2.0;
        double damp = std::exp(-sigma * z);
        double acc = 0.0;
        for (const Node& nd : nodes) {
            const Complex& f = low ? nd.f_low : nd.f_high;
            double phase = nd.t * z;
            acc += nd.weight * (f.real() * std::cos(phase) + f.imag() * std::sin(phase));
        }
        table_[static_cast<std::size_t>(i)] = damp * acc / M_PI;
    }
    built_ = true;
}

double AfeProfile::value(double y) const {
    if (y <= 0.0) throw std::invalid_argument("AfeProfile: argument must be positive");
    if (zero_) return 0.0;
    if (!built_) throw std::logic_error("AfeProfile: table not built; use profile_cache");
    double z = std::log(y);
    if (z <= z_lo_) return 1.0;
    if (z >= z_hi_) return 0.0;
    double pos = (z - z_lo_) / dz_;
    long i1 = static_cast<long>(std::floor(pos));
    long last = static_cast<long>(table_.size()) - 1;
    long i0 = std::clamp<long>(i1 - 1, 0, last), i2 = std::min(i1 + 1, last),
         i3 = std::min(i1 + 2, last);
    double s = pos - static_cast<double>(i1);
    // 4-point Lagrange in the grid coordinate
    double c0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
    double c1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
    double c2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
    double c3 = (s + 1.0) * s * (s - 1.0) / 6.0;
    return c0 * table_[i0] + c1 * table_[i1] + c2 * table_[i2] + c3 * table_[i3];
}

double AfeProfile::support_bound(double eps) const {
    if (zero_) return 0.0;
    if (!built_) throw std::logic_error("AfeProfile: table not built; use profile_cache");
    for (long i = static_cast<long>(table_.size()) - 1; i >= 0; --i) {
        if (std::abs(table_[static_cast<std::size_t>(i)]) >= eps)
            return std::exp(z_lo_ + dz_ * static_cast<double>(std::min<long>(
                                              i + 1, static_cast<long>(table_.size()) - 1)));
    }
    return std::exp(z_lo_);
}

const AfeProfile& profile_cache(const std::vector<GammaSlot>& slots, double gauss_scale) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<AfeProfile>> cache;
    std::string key = profile_key(slots, gauss_scale);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto profile = std::make_unique<AfeProfile>(slots, gauss_scale);
        profile->build_table();
        it = cache.emplace(key, std::move(profile)).first;
    }
    return *it->second;
}

double cutoff_U(double y, const CutoffParams& params) {
    if (y <= 0.0) throw std::invalid_argument("cutoff_U: argument must be positive");
    AfeProfile profile({{GammaSlot::Kind::C, params.k - 1.5}}, params.gauss_scale);
    return profile.quadrature_value(y, 2.0, params.t_max, params.panel_width);
}

namespace {

const AfeProfile& gl2_profile(const EllipticEigenform& f, double gauss_scale) {
    return profile_cache({{GammaSlot::Kind::C, (f.weight() - 1) / 2.0}}, gauss_scale);
}

const AfeProfile& sk_spin_profile(int source_weight, bool odd, double gauss_scale) {
    double a = odd ? 1.0 : 0.0;
    return profile_cache({{GammaSlot::Kind::R, 0.5 + a},
                          {GammaSlot::Kind::R, -0.5 + a},
                          {GammaSlot::Kind::C, (source_weight - 1) / 2.0}},
                         gauss_scale);
}

double normalized_coeff(const EllipticEigenform& f, long n) {
    return f.coeff(n).get_d() / std::pow(static_cast<double>(n), (f.weight() - 1) / 2.0);
}

}

Complex afe_gl2_central(const EllipticEigenform& f, const DirichletCharacter& chi, double x_balance,
                        const AfeOptions& opt) {
    if (!chi.is_primitive()) throw std::invalid_argument("afe_gl2_central: imprimitive character");
    if (x_balance < 1.0) throw std::invalid_argument("afe_gl2_central: X must be >= 1");
    long q = chi.modulus();
    const AfeProfile& w = gl2_profile(f, opt.gauss_scale);
    double cut = w.support_bound(opt.truncation);

    double sign = opt.sign_override != 0 ? static_cast<double>(opt.sign_override)
                                         : sign_from_weight(f.weight());

    double len1 = static_cast<double>(q) * x_balance;
    double len2 = static_cast<double>(q) / x_balance;
    long n1 = static_cast<long>(std::ceil(len1 * cut));
    long n2 = static_cast<long>(std::ceil(len2 * cut));
    if (std::max(n1, n2) > f.precision())
        throw std::invalid_argument("afe_gl2_central: insufficient coefficient precision, need " +
                                    std::to_string(std::max(n1, n2)));

    Complex s1(0.0);
    for (long n = 1; n <= n1; ++n) {
        Complex cv = chi(n);
        if (cv == Complex(0.0)) continue;
        s1 += normalized_coeff(f, n) * cv / std::sqrt(static_cast<double>(n)) *
              w.value(static_cast<double>(n) / len1);
    }
    Complex s2(0.0);
    for (long n = 1; n <= n2; ++n) {
        Complex cv = std::conj(chi(n));
        if (cv == Complex(0.0)) continue;
        s2 += normalized_coeff(f, n) * cv / std::sqrt(static_cast<double>(n)) *
              w.value(static_cast<double>(n) / len2);
    }
    Complex tau = gauss_sum(chi);
    return s1 - tau * tau / static_cast<double>(q) * sign * s2;
}

Complex afe_gsp4_central(const ParamodularEigenform& f, const DirichletCharacter& chi,
                         double x_balance, const AfeOptions& opt) {
    if (!chi.is_primitive()) throw std::invalid_argument("afe_gsp4_central: imprimitive character");
    if (x_balance < 1.0) throw std::invalid_argument("afe_gsp4_central: X must be >= 1");
    long q = chi.modulus();
    if (std::gcd(q, f.level()) != 1)
        throw std::invalid_argument("afe_gsp4_central: conductor shares a factor with the level");

    const AfeProfile* w = nullptr;
    if (f.packet() == Packet::P && f.sk_source())
        w = &sk_spin_profile(f.sk_source()->weight(), chi.is_odd(), opt.gauss_scale);
    else
        w = &profile_cache({{GammaSlot::Kind::C, f.k() - 1.5}}, opt.gauss_scale);
    if (w->identically_zero()) return Complex(0.0);

    double cut = w->support_bound(opt.truncation);
    double len1 = static_cast<double>(q) * static_cast<double>(q) * x_balance;
    double len2 = static_cast<double>(q) * static_cast<double>(q) / x_balance;
    long n1 = static_cast<long>(std::ceil(len1 * cut));
    long n2 = static_cast<long>(std::ceil(len2 * cut));
    long needed = std::max<long>(std::max(n1, n2), 1);
    if (f.packet() == Packet::P && f.sk_source() && f.sk_source()->precision() < needed)
        throw std::invalid_argument("afe_gsp4_central: insufficient coefficient precision, need " +
                                    std::to_string(needed));

    CoefficientSeries a = spin_coeffs(f, needed);
    Complex s1(0.0);
    for (long n = 1; n <= n1; ++n) {
        Complex cv = chi(n);
        if (cv == Complex(0.0)) continue;
        s1 += a.at(n) * cv / std::sqrt(static_cast<double>(n)) *
              w->value(static_cast<double>(n) / len1);
    }
    Complex s2(0.0);
    for (long m = 1; m <= n2; ++m) {
        Complex cv = std::conj(chi(m));
        if (cv == Complex(0.0)) continue;
        s2 += a.at(m) * cv / std::sqrt(static_cast<double>(m)) *
              w->value(static_cast<double>(m) / len2);
    }
    return s1 + epsilon_factor(chi, opt.c_pi) * s2;
}

Complex epsilon_factor(const DirichletCharacter& chi, Complex c_pi) {
    if (!chi.is_primitive()) throw std::invalid_argument("epsilon_factor: imprimitive character");
    if (std::abs(std::abs(c_pi) - 1.0) > 1e-9)
        throw std::invalid_argument("epsilon_factor: |c_pi| must be 1");
    Complex tau = gauss_sum(chi);
    double q = static_cast<double>(chi.modulus());
    return c_pi * tau * tau * tau * tau / (q * q);
}

namespace {

double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double a = std::exp(-1.0 / u);
    double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

double partition_bump(double t) {
    double u = std::log2(t);
    return smooth_step(u + 1.0) - smooth_step(u);
}

}

std::map<double, double> partition_V(double x) {
    if (x <= 0.0) throw std::invalid_argument("partition_V: argument must be positive");
    std::map<double, double> out;
    long j0 = static_cast<long>(std::floor(std::log2(x)));
    for (long j = j0 - 3; j <= j0 + 3; ++j) {
        double n = std::ldexp(1.0, static_cast<int>(j));
        double ratio = x / n;
        if (ratio < 0.25 || ratio > 4.0) continue;
        out[n] = partition_bump(ratio);
    }
    return out;
}

std::pair<double, double> selberg_sum(const std::map<long, double>& l1,
                                      const std::map<long, double>& l2, double x,
                                      const std::set<long>& excluded) {
    if (x < 10.0) throw std::invalid_argument("selberg_sum: x must be >= 10");
    double acc = 0.0;
    for (long p : primes_up_to(static_cast<long>(x))) {
        if (excluded.count(p)) continue;
        auto i1 = l1.find(p), i2 = l2.find(p);
        if (i1 == l1.end() || i2 == l2.end())
            throw std::invalid_argument("selberg_sum: missing data at prime " + std::to_string(p));
        acc += i1->second * i2->second / static_cast<double>(p);
    }
    return {acc, std::log(std::log(x))};
}

double hypothesis_h_sum(const std::map<long, EigenvalueMultiset>& ms, int ell, double x) {
    if (ell < 2) throw std::invalid_argument("hypothesis_h_sum: ell must be >= 2");
    double acc = 0.0;
    for (const auto& [p, m] : ms) {
        if (p > x) continue;
        double lp = std::log(static_cast<double>(p));
        double term = std::norm(power_sum(m, ell));
        acc += term * lp * lp / std::pow(static_cast<double>(p), ell);
    }
    return acc;
}

Complex siegel_walfisz_sum(const std::map<long, Complex>& alpha, double x, long q, long a,
                           double t) {
    if (std::gcd(a, q) != 1)
        throw std::invalid_argument("siegel_walfisz_sum: residue shares a factor with the modulus");
    Complex acc(0.0);
    long ar = ((a % q) + q) % q;
    for (const auto& [p, v] : alpha) {
        if (p > x || p % q != ar) continue;
        double lt = t * std::log(static_cast<double>(p));
        acc += v * Complex(std::cos(lt), std::sin(lt));
    }
    return acc;
}

FamilyResult family_Q(const FamilyParams& params) {
    FamilyResult res;
    double log_q = std::log(params.big_q);
    double p1 = 0.0, p2 = 0.0, min_factor = 0.0;
    long max_factors = 0;
    if (params.overrides) {
        p1 = params.overrides->p1;
        p2 = params.overrides->p2;
        min_factor = params.overrides->min_prime_factor;
        max_factors = params.overrides->max_distinct_factors >= 0
                          ? params.overrides->max_distinct_factors
                          : static_cast<long>(params.delta * std::log(log_q) + 10.0);
    } else {
        p1 = std::pow(log_q, params.kappa * params.nu);
        p2 = std::pow(log_q, 10000.0);
        min_factor = std::pow(log_q, 20000.0);
        max_factors = static_cast<long>(params.delta * std::log(log_q) + 10.0);
    }
    res.p1_window = p1;
    res.p2_window = p2;
    double m_lo = params.big_q / (p1 * p2);
    res.m_window = m_lo;

    // Defaults blow past any desk-scale range; report emptiness instead of
    // silently looping.
    if (p2 > 1e15 || m_lo < 1.0 || p1 < 2.0) {
        res.empty_under_defaults = !params.overrides.has_value();
        return res;
    }

    auto primes_in = [](double lo, double hi) {
        std::vector<long> out;
        for (long v = static_cast<long>(std::ceil(lo)); v < hi; ++v)
            if (is_prime(v)) out.push_back(v);
        return out;
    };
    std::vector<long> p1s = primes_in(p1, 2.0 * p1);
    std::vector<long> p2s = primes_in(p2, 2.0 * p2);

    std::set<long> qs;
    double lo_bound = params.big_q / 16.0, hi_bound = 16.0 * params.big_q;
    for (long a : p1s)
        for (long b : p2s) {
            if (a == b) continue;
            for (long m = static_cast<long>(std::ceil(m_lo)); m < 2.0 * m_lo; ++m) {
                if (!is_squarefree(m)) continue;
                if (m % a == 0 || m % b == 0) continue;
                auto fac = factorize(m);
                if (static_cast<long>(fac.size()) > max_factors) continue;
                bool small_factor = false;
                for (auto [pf, e] : fac)
                    if (static_cast<double>(pf) <= min_factor) small_factor = true;
                if (small_factor) continue;
                double q = static_cast<double>(a) * b * m;
                if (q < lo_bound || q > hi_bound) continue;
                qs.insert(a * b * m);
            }
        }
    res.q.assign(qs.begin(), qs.end());
    return res;
}

Complex first_moment(const ParamodularEigenform& f, const std::vector<long>& family, long p,
                     double x_balance, const AfeOptions& opt) {
    Complex acc(0.0);
    for (long q : family) {
        if (q % p == 0)
            throw std::invalid_argument("first_moment: p divides the family member " +
                                        std::to_string(q));
        std::vector<DirichletCharacter> chars = characters_mod(q);
        // independent per-character terms, merged in index order
        std::vector<Complex> slots(chars.size(), Complex(0.0));
        parallel_for(0, static_cast<long>(chars.size()), [&](long i) {
            const DirichletCharacter& chi = chars[static_cast<std::size_t>(i)];
            if (!chi.is_primitive()) return;
            slots[static_cast<std::size_t>(i)] =
                afe_gsp4_central(f, chi, x_balance, opt) * std::conj(chi(p));
        });
        for (const Complex& v : slots) acc += v;
    }
    return acc;
}

SkAverageResult sk_average(const EllipticEigenform& f, long q, long p, double x_balance,
                           const AfeOptions& opt) {
    if (!is_prime(q)) throw std::invalid_argument("sk_average: q must be prime");
    if (q <= p) throw std::invalid_argument("sk_average: q must exceed p");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("sk_average: p shares a factor with q");

    Complex direct(0.0);
    std::vector<DirichletCharacter> chars = characters_mod(q);
    for (const auto& chi : chars) {
        if (!chi.is_primitive() || !chi.is_odd()) continue;
        direct += afe_gl2_central(f, chi, x_balance, opt) * std::conj(chi(p));
    }

    double sign = opt.sign_override != 0 ? static_cast<double>(opt.sign_override)
                                         : sign_from_weight(f.weight());
    const AfeProfile& w = gl2_profile(f, opt.gauss_scale);
    double cut = w.support_bound(opt.truncation);
    double len1 = static_cast<double>(q) * x_balance;
    double len2 = static_cast<double>(q) / x_balance;
    long n1 = static_cast<long>(std::ceil(len1 * cut));
    long n2 = static_cast<long>(std::ceil(len2 * cut));
    if (std::max(n1, n2) > f.precision())
        throw std::invalid_argument("sk_average: insufficient coefficient precision");

    std::vector<long> divs = divisors(q);
    std::vector<double> phimu(divs.size());
    for (std::size_t i = 0; i < divs.size(); ++i)
        phimu[i] = static_cast<double>(euler_phi(divs[i]) * mobius(q / divs[i]));

    // orthogonality route for the first sum
    Complex term_i(0.0);
    for (long n = 1; n <= n1; ++n) {
        if (n % q == 0) continue;
        double parity_sum = 0.0;
        for (std::size_t i = 0; i < divs.size(); ++i) {
            long d = divs[i];
            double c = 0.0;
            if ((n - p) % d == 0) c += 1.0;
            if ((n + p) % d == 0) c -= 1.0;
            parity_sum += phimu[i] * c;
        }
        if (parity_sum == 0.0) continue;
        term_i += 0.5 * parity_sum * normalized_coeff(f, n) /
                  std::sqrt(static_cast<double>(n)) * w.value(static_cast<double>(n) / len1);
    }

    // Gauss/Kloosterman route for the dual sum
    Complex term_ii(0.0);
    for (long n = 1; n <= n2; ++n) {
        if (n % q == 0) continue;
        Complex twisted(0.0);
        for (std::size_t i = 0; i < divs.size(); ++i) {
            long d = divs[i];
            long qd = q / d;
            twisted += 0.5 * phimu[i] *
                       (kloosterman(qd * qd, n * p, d) - kloosterman(qd * qd, -n * p, d));
        }
        term_ii += twisted * normalized_coeff(f, n) / std::sqrt(static_cast<double>(n)) *
                   w.value(static_cast<double>(n) / len2);
    }
    term_ii /= static_cast<double>(q);

    SkAverageResult out;
    out.direct = direct;
    out.decomposed = term_i - sign * term_ii;
    double phimu_total = 0.0;
    for (double v : phimu) phimu_total += v;
    out.main_term = 0.5 * normalized_coeff(f, p) / std::sqrt(static_cast<double>(p)) *
                    w.value(static_cast<double>(p) / len1) * phimu_total;
    return out;
}

ComparisonReport compare_eigenforms(const ParamodularEigenform& f1, const ParamodularEigenform& f2,
                                    long prime_bound, CompareKind kind,
                                    const CompareOptions& opt) {
    auto has_data = [kind](const ParamodularEigenform& f, long p) {
        if (f.level() % p == 0) return false;
        if (kind == CompareKind::Hecke) return f.hecke().count(p) > 0;
        if (f.packet() == Packet::P && f.sk_source()) return p <= f.sk_source()->precision();
        return f.hecke().count(p) > 0;
    };
    auto close = [&](double a, double b) {
        return std::abs(a - b) <= opt.tolerance * std::max({1.0, std::abs(a), std::abs(b)});
    };

    ComparisonReport rep;
    for (long p : primes_up_to(prime_bound)) {
        if (!has_data(f1, p) || !has_data(f2, p)) continue;
        bool agree = true;
        switch (kind) {
            case CompareKind::Spin:
                agree = close(spin_prime_coeff(f1, p), spin_prime_coeff(f2, p));
                break;
            case CompareKind::Std:
                agree = close(std_prime_coeff(f1, p), std_prime_coeff(f2, p));
                break;
            case CompareKind::Hecke: {
                const HeckePair& h1 = f1.hecke_at(p);
                const HeckePair& h2 = f2.hecke_at(p);
                agree = close(h1.lp, h2.lp) && close(h1.lp2, h2.lp2);
                break;
            }
        }
        ++rep.primes_compared;
        if (agree)
            ++rep.agreements;
        else if (!rep.first_disagreement)
            rep.first_disagreement = p;
    }
    if (rep.primes_compared == 0)
        throw std::invalid_argument("compare_eigenforms: no common primes");
    rep.density = static_cast<double>(rep.agreements) / static_cast<double>(rep.primes_compared);
    if (rep.primes_compared < opt.min_primes)
        rep.verdict = ComparisonReport::Verdict::Insufficient;
    else if (rep.density == 1.0)
        rep.verdict = ComparisonReport::Verdict::ConsistentWithEqual;
    else if (rep.density < 1.0 - opt.threshold)
        rep.verdict = ComparisonReport::Verdict::Distinct;
    else
        rep.verdict = ComparisonReport::Verdict::Insufficient;
    return rep;
}

}
