#include "gsp4lfun/gl2.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gsp4lfun/modconv.hpp"
#include "gsp4lfun/parallel.hpp"
#include "gsp4lfun/primes.hpp"

namespace gsp4lfun {

namespace {

// prod (1-q^n)^3 = sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}
std::vector<std::pair<long, long>> eta3_terms(long length) {
    std::vector<std::pair<long, long>> terms;
    for (long k = 0;; ++k) {
        long idx = k * (k + 1) / 2;
        if (idx >= length) break;
        terms.emplace_back(idx, (k % 2 == 0 ? 1L : -1L) * (2 * k + 1));
    }
    return terms;
}

// In-place multiply of a dense series by a sparse one whose constant term is 1.
void mul_sparse_inplace(std::vector<mpz_class>& a,
                        const std::vector<std::pair<long, long>>& terms) {
    for (long n = static_cast<long>(a.size()) - 1; n >= 0; --n) {
        mpz_ptr acc = a[static_cast<std::size_t>(n)].get_mpz_t();
        for (std::size_t t = 1; t < terms.size(); ++t) {
            long g = terms[t].first;
            if (g > n) break;
            long c = terms[t].second;
            mpz_srcptr prev = a[static_cast<std::size_t>(n - g)].get_mpz_t();
            if (c >= 0)
                mpz_addmul_ui(acc, prev, static_cast<unsigned long>(c));
            else
                mpz_submul_ui(acc, prev, static_cast<unsigned long>(-c));
        }
    }
}

// prod (1-q^n)^24 to `length` coefficients.
std::vector<mpz_class> eta24(long length) {
    auto terms = eta3_terms(length);
    std::vector<mpz_class> d(static_cast<std::size_t>(length), mpz_class(0));
    for (auto [idx, c] : terms) d[static_cast<std::size_t>(idx)] = c;
    for (int round = 0; round < 7; ++round) mul_sparse_inplace(d, terms);
    return d;
}

struct Monomial {
    int e4;
    int e6;
};

Monomial eigenform_monomial(int weight) {
    switch (weight) {
        case 12: return {0, 0};
        case 16: return {1, 0};
        case 18: return {0, 1};
        case 20: return {2, 0};
        case 22: return {1, 1};
        case 26: return {2, 1};
        default: break;
    }
    int dim = cusp_dim_level_one(weight);
    if (dim == 0) throw std::invalid_argument("no cusp forms");
    throw std::invalid_argument("space not one-dimensional");
}

}

const mpz_class& QExpansion::coeff(long n) const {
    if (n < 0 || n > length())
        throw std::out_of_range("QExpansion: index " + std::to_string(n) + " beyond precision " +
                                std::to_string(length()));
    return a[static_cast<std::size_t>(n)];
}

QExpansion delta_qexp(long n_max) {
    if (n_max < 1) throw std::invalid_argument("delta_qexp: N must be >= 1");
    std::vector<mpz_class> p24 = eta24(n_max);
    QExpansion q;
    q.weight = 12;
    q.a.assign(static_cast<std::size_t>(n_max) + 1, mpz_class(0));
    for (long n = 1; n <= n_max; ++n) q.a[static_cast<std::size_t>(n)] = p24[n - 1];
    return q;
}

QExpansion eisenstein_qexp(int weight, long n_max) {
    if (weight != 4 && weight != 6) throw std::invalid_argument("unsupported Eisenstein weight");
    long front = weight == 4 ? 240 : -504;
    int power = weight - 1;
    QExpansion q;
    q.weight = weight;
    q.a.assign(static_cast<std::size_t>(n_max) + 1, mpz_class(0));
    q.a[0] = 1;
    for (long d = 1; d <= n_max; ++d) {
        mpz_class dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d),
                      static_cast<unsigned long>(power));
        dk *= front;
        for (long m = d; m <= n_max; m += d) q.a[static_cast<std::size_t>(m)] += dk;
    }
    return q;
}

int cusp_dim_level_one(int weight) {
    if (weight < 12 || weight % 2 != 0) return 0;
    if (weight % 12 == 2) return weight / 12 - 1;
    return weight / 12;
}

QExpansion qexp_mul(const QExpansion& a, const QExpansion& b, long n_max) {
    QExpansion out;
    out.weight = a.weight + b.weight;
    out.a.assign(static_cast<std::size_t>(n_max) + 1, mpz_class(0));
    long la = std::min(n_max, a.length());
    for (long i = 0; i <= la; ++i) {
        if (a.a[static_cast<std::size_t>(i)] == 0) continue;
        mpz_srcptr ai = a.a[static_cast<std::size_t>(i)].get_mpz_t();
        long lb = std::min(n_max - i, b.length());
        for (long j = 0; j <= lb; ++j)
            mpz_addmul(out.a[static_cast<std::size_t>(i + j)].get_mpz_t(), ai,
                       b.a[static_cast<std::size_t>(j)].get_mpz_t());
    }
    return out;
}

EllipticEigenform::EllipticEigenform(int weight, QExpansion q) : weight_(weight), qexp_(std::move(q)) {
    if (weight_ < 12 || weight_ % 2 != 0)
        throw std::invalid_argument("EllipticEigenform: weight must be even and >= 12");
    if (qexp_.length() < 1 || qexp_.a[0] != 0 || qexp_.a[1] != 1)
        throw std::invalid_argument("EllipticEigenform: expansion must be a normalized cusp form");
}

EllipticEigenform eigenform_one_dim(int weight, long n_max) {
    Monomial m = eigenform_monomial(weight);
    QExpansion f = delta_qexp(n_max);
    for (int i = 0; i < m.e4; ++i) f = qexp_mul(f, eisenstein_qexp(4, n_max), n_max);
    for (int i = 0; i < m.e6; ++i) f = qexp_mul(f, eisenstein_qexp(6, n_max), n_max);
    f.weight = weight;
    return EllipticEigenform(weight, std::move(f));
}

double normalized_eigenvalue(const EllipticEigenform& f, long p) {
    if (p > f.precision())
        throw std::out_of_range("normalized_eigenvalue: prime beyond expansion precision");
    double scale = std::pow(static_cast<double>(p), (f.weight() - 1) / 2.0);
    return f.coeff(p).get_d() / scale;
}

EigenvalueMultiset satake_gl2(const EllipticEigenform& f, long p) {
    double lam = normalized_eigenvalue(f, p);
    if (std::abs(lam) > 2.0 + 1e-9)
        throw std::invalid_argument("satake_gl2: Ramanujan bound violated at p = " +
                                    std::to_string(p));
    double disc = 4.0 - lam * lam;
    if (disc < 0.0) disc = 0.0;
    Complex gamma(lam / 2.0, std::sqrt(disc) / 2.0);
    return EigenvalueMultiset(p, {gamma, std::conj(gamma)});
}

EulerFactor gl2_euler_factor(const EllipticEigenform& f, long p, Complex chi_value) {
    double mag = std::abs(chi_value);
    if (mag > 1e-9 && std::abs(mag - 1.0) > 1e-9)
        throw std::invalid_argument("gl2_euler_factor: character value must be 0 or unimodular");
    if (mag <= 1e-9) return EulerFactor(p, {Complex(1.0)});
    double lam = normalized_eigenvalue(f, p);
    return EulerFactor(p, {Complex(1.0), -lam * chi_value, chi_value * chi_value});
}

std::map<int, std::vector<std::pair<long, double>>> eigenvalue_tables(
    const std::vector<int>& weights, long x) {
    std::map<int, std::vector<std::pair<long, double>>> out;
    if (weights.empty()) return out;
    for (int w : weights) eigenform_monomial(w);  // validate up front
    if (x < 2) {
        for (int w : weights) out[w];
        return out;
    }
    const long length = x;  // series coefficients 0..x-1 hold a(1..x)

    // per-lane residue tables, one per requested weight
    std::map<int, std::array<std::vector<std::uint64_t>, 3>> lanes;
    for (int w : weights) lanes[w];
    std::vector<int> wanted;
    for (auto& [w, l] : lanes) wanted.push_back(w);

    parallel_for(0, 3, [&](long lane_idx) {
        int lane = static_cast<int>(lane_idx);
        const std::uint64_t mod = modconv::kPrimes[lane];

        std::vector<std::uint64_t> cusp(static_cast<std::size_t>(length), 0);
        for (auto [idx, c] : eta3_terms(length))
            cusp[static_cast<std::size_t>(idx)] = c >= 0 ? c : mod + static_cast<std::uint64_t>(c);
        for (int round = 0; round < 3; ++round)
            cusp = modconv::convolve_mod(cusp, cusp, length, lane);

        auto eis_mod = [&](int w) {
            long front = w == 4 ? 240 : -504;
            std::uint64_t fm = front >= 0 ? front : mod + static_cast<std::uint64_t>(front);
            std::vector<std::uint64_t> e(static_cast<std::size_t>(length), 0);
            e[0] = 1;
            for (long dd = 1; dd < length; ++dd) {
                std::uint64_t dk = pow_mod(static_cast<std::uint64_t>(dd), w - 1, mod);
                dk = modconv::mul_mod(dk, fm, mod);
                for (long mm = dd; mm < length; mm += dd) {
                    std::uint64_t& slot = e[static_cast<std::size_t>(mm)];
                    slot += dk;
                    if (slot >= mod) slot -= mod;
                }
            }
            return e;
        };
        std::vector<std::uint64_t> e4, e6;
        for (int w : wanted) {
            Monomial m = eigenform_monomial(w);
            std::vector<std::uint64_t> d = cusp;
            if (m.e4 > 0) {
                if (e4.empty()) e4 = eis_mod(4);
                for (int i = 0; i < m.e4; ++i) d = modconv::convolve_mod(d, e4, length, lane);
            }
            if (m.e6 > 0) {
                if (e6.empty()) e6 = eis_mod(6);
                for (int i = 0; i < m.e6; ++i) d = modconv::convolve_mod(d, e6, length, lane);
            }
            lanes[w][lane_idx] = std::move(d);
        }
    });

    std::vector<long> primes = primes_up_to(x);
    for (int w : wanted) {
        auto& table = out[w];
        table.reserve(primes.size());
        const auto& l = lanes[w];
        for (long p : primes) {
            std::size_t idx = static_cast<std::size_t>(p - 1);
            mpz_class ap = modconv::crt_signed(l[0][idx], l[1][idx], l[2][idx]);
            double scale = std::pow(static_cast<double>(p), (w - 1) / 2.0);
            table.emplace_back(p, ap.get_d() / scale);
        }
    }
    return out;
}

std::vector<std::pair<long, double>> eigenvalue_table(int weight, long x) {
    return eigenvalue_tables({weight}, x)[weight];
}

}
