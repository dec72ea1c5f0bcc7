#include "gsp4lfun/dirichlet.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gsp4lfun/primes.hpp"

namespace gsp4lfun {

namespace {

constexpr long kTableGuard = 1000000;

struct CyclicComponent {
    long gen;    // generator lifted mod q
    long order;  // component order
};

struct UnitGroup {
    long q = 1;
    long phi = 1;
    std::vector<CyclicComponent> comps;
    std::vector<long> packed_dlog;  // size q, -1 off the unit group
};

long mul_mod_long(long a, long b, long m) {
    return static_cast<long>((unsigned __int128)(a % m) * static_cast<unsigned long>(b % m) % m);
}

long primitive_root_mod_p(long p) {
    if (p == 2) return 1;
    auto fac = factorize(p - 1);
    for (long g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [f, e] : fac)
            if (pow_mod(g, (p - 1) / f, p) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root_mod_p: none found");
}

// CRT lift: x = r mod m, x = 1 mod (q/m)
long crt_lift(long r, long m, long q) {
    long rest = q / m;
    if (rest == 1) return r % q;
    long inv_rest = inv_mod(rest % m, m);
    long inv_m = inv_mod(m % rest, rest);
    unsigned __int128 x = (unsigned __int128)(r % m) * static_cast<unsigned long>(rest) %
                          static_cast<unsigned long>(q);
    x = x * static_cast<unsigned long>(inv_rest) % static_cast<unsigned long>(q);
    unsigned __int128 y = (unsigned __int128)m * static_cast<unsigned long>(inv_m) %
                          static_cast<unsigned long>(q);
    return static_cast<long>((x + y) % static_cast<unsigned long>(q));
}

UnitGroup build_unit_group(long q) {
    if (q < 1) throw std::invalid_argument("characters: modulus must be positive");
    if (q > kTableGuard)
        throw std::invalid_argument("characters: modulus above table guard " +
                                    std::to_string(kTableGuard));
    UnitGroup g;
    g.q = q;
    g.packed_dlog.assign(static_cast<std::size_t>(q), -1);
    if (q == 1) {
        g.phi = 1;
        g.packed_dlog[0] = 0;
        return g;
    }
    for (auto [p, e] : factorize(q)) {
        long pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        if (p == 2) {
            if (e == 1) continue;
            if (e == 2) {
                g.comps.push_back({crt_lift(3, pe, q), 2});
            } else {
                g.comps.push_back({crt_lift(pe - 1, pe, q), 2});
                g.comps.push_back({crt_lift(5, pe, q), pe / 4});
            }
            continue;
        }
        long root = primitive_root_mod_p(p);
        if (e > 1 && pow_mod(root, p - 1, static_cast<std::uint64_t>(p) * p) == 1) root += p;
        g.comps.push_back({crt_lift(root % pe, pe, q), pe / p * (p - 1)});
    }
    g.phi = 1;
    for (const auto& c : g.comps) g.phi *= c.order;

    // Walk the full exponent box; component 0 is the fastest axis.
    std::vector<long> unit_by_index(static_cast<std::size_t>(g.phi));
    unit_by_index[0] = 1 % q;
    long stride = 1;
    for (const auto& c : g.comps) {
        long gpow = 1;
        for (long e = 1; e < c.order; ++e) {
            gpow = mul_mod_long(gpow, c.gen, q);
            for (long i = 0; i < stride; ++i)
                unit_by_index[static_cast<std::size_t>(e * stride + i)] =
                    mul_mod_long(gpow, unit_by_index[static_cast<std::size_t>(i)], q);
        }
        stride *= c.order;
    }
    for (long m = 0; m < g.phi; ++m)
        g.packed_dlog[static_cast<std::size_t>(unit_by_index[static_cast<std::size_t>(m)])] = m;
    return g;
}

std::vector<Complex> character_table(const UnitGroup& g, long index) {
    std::vector<Complex> table(static_cast<std::size_t>(g.q), Complex(0.0));
    if (g.q == 1) {
        table[0] = 1.0;
        return table;
    }
    std::vector<long> exps(g.comps.size());
    long rest = index;
    for (std::size_t i = 0; i < g.comps.size(); ++i) {
        exps[i] = rest % g.comps[i].order;
        rest /= g.comps[i].order;
    }
    for (long a = 0; a < g.q; ++a) {
        long packed = g.packed_dlog[static_cast<std::size_t>(a)];
        if (packed < 0) continue;
        double angle = 0.0;
        long rem = packed;
        for (std::size_t i = 0; i < g.comps.size(); ++i) {
            long k = rem % g.comps[i].order;
            rem /= g.comps[i].order;
            angle += static_cast<double>(k) * static_cast<double>(exps[i]) /
                     static_cast<double>(g.comps[i].order);
        }
        table[static_cast<std::size_t>(a)] = unit_circle(angle);
    }
    return table;
}

long character_order(const UnitGroup& g, long index) {
    long ord = 1;
    long rest = index;
    for (const auto& c : g.comps) {
        long m = rest % c.order;
        rest /= c.order;
        if (m != 0) ord = std::lcm(ord, c.order / std::gcd(c.order, m));
    }
    return ord;
}

long conductor_from_table(long q, const std::vector<Complex>& table) {
    for (long d : divisors(q)) {
        bool ok = true;
        for (long a = 1 + d; a < q && ok; a += d)
            if (std::gcd(a, q) == 1 && std::abs(table[static_cast<std::size_t>(a)] - Complex(1.0)) > 1e-9)
                ok = false;
        if (ok) return d;
    }
    return q;
}

}

Complex unit_circle(double x) {
    double r = x - std::floor(x);
    double angle = 2.0 * M_PI * r;
    return Complex(std::cos(angle), std::sin(angle));
}

DirichletCharacter::DirichletCharacter(long q, long index) : q_(q), index_(index) {
    UnitGroup g = build_unit_group(q);
    if (index < 0 || index >= g.phi)
        throw std::invalid_argument("DirichletCharacter: index outside [0, phi(q))");
    table_ = character_table(g, index);
    order_ = character_order(g, index);
    conductor_ = conductor_from_table(q_, table_);
    odd_ = q_ > 1 && std::abs(table_[static_cast<std::size_t>(q_ - 1)] + Complex(1.0)) < 1e-9;
}

Complex DirichletCharacter::operator()(long n) const {
    long r = n % q_;
    if (r < 0) r += q_;
    return table_[static_cast<std::size_t>(r)];
}

std::vector<DirichletCharacter> characters_mod(long q) {
    UnitGroup g = build_unit_group(q);
    std::vector<DirichletCharacter> out;
    out.reserve(static_cast<std::size_t>(g.phi));
    for (long m = 0; m < g.phi; ++m) out.emplace_back(q, m);
    return out;
}

Complex gauss_sum(const DirichletCharacter& chi) {
    long q = chi.modulus();
    Complex s(0.0);
    for (long a = 0; a < q; ++a) {
        Complex v = chi(a);
        if (v != Complex(0.0)) s += v * unit_circle(static_cast<double>(a) / q);
    }
    if (q == 1) s = 1.0;
    return s;
}

Complex kloosterman(long a, long b, long c) {
    if (c < 1) throw std::invalid_argument("kloosterman: modulus must be >= 1");
    long ar = ((a % c) + c) % c, br = ((b % c) + c) % c;
    if (c == 1) return Complex(1.0);
    Complex s(0.0);
    for (long x = 1; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        long xin = inv_mod(x, c);
        double num = static_cast<double>(mul_mod_long(ar, x, c) + mul_mod_long(br, xin, c));
        s += unit_circle(num / c);
    }
    return s;
}

std::vector<DirichletCharacter> quartic_characters(long q) {
    std::vector<DirichletCharacter> out;
    for (auto& chi : characters_mod(q))
        if (4 % chi.order() == 0) out.push_back(std::move(chi));
    return out;
}

CoefficientSeries twist_series(const CoefficientSeries& s, const DirichletCharacter& chi) {
    CoefficientSeries out(s.length());
    for (long n = 1; n <= s.length(); ++n) out.ref(n) = s.at(n) * chi(n);
    out.multiplicative = s.multiplicative;
    return out;
}

std::pair<Complex, Complex> primitive_orthogonality_sum(long q, long m, long n) {
    if (std::gcd(m * n, q) != 1)
        throw std::invalid_argument("primitive_orthogonality_sum: arguments share a factor with q");
    Complex lhs(0.0);
    for (const auto& chi : characters_mod(q))
        if (chi.is_primitive()) lhs += chi(m) * std::conj(chi(n));
    Complex rhs(0.0);
    for (long d : divisors(q))
        if ((m - n) % d == 0) rhs += static_cast<double>(euler_phi(d) * mobius(q / d));
    return {lhs, rhs};
}

std::pair<Complex, Complex> odd_twisted_gauss_identity(long q, long n, long p) {
    if (!is_prime(q)) throw std::invalid_argument("odd_twisted_gauss_identity: q must be prime");
    if (std::gcd(n * p, q) != 1)
        throw std::invalid_argument("odd_twisted_gauss_identity: np shares a factor with q");
    Complex lhs(0.0);
    for (const auto& chi : characters_mod(q)) {
        if (!chi.is_primitive() || !chi.is_odd()) continue;
        Complex tau = gauss_sum(chi);
        lhs += std::conj(chi(n)) * std::conj(chi(p)) * tau * tau;
    }
    Complex rhs(0.0);
    for (long d : divisors(q)) {
        long qd = q / d;
        rhs += 0.5 * static_cast<double>(euler_phi(d) * mobius(q / d)) *
               (kloosterman(qd * qd, n * p, d) - kloosterman(qd * qd, -n * p, d));
    }
    return {lhs, rhs};
}

Complex dirichlet_L_special(const DirichletCharacter& chi, int s) {
    if (!chi.is_primitive())
        throw std::invalid_argument("dirichlet_L_special: character must be primitive");
    long q = chi.modulus();
    bool trivial = q == 1;
    if (s == 0) {
        if (trivial) return Complex(-0.5);  // zeta(0)
        if (!chi.is_odd()) return Complex(0.0);
        Complex acc(0.0);
        for (long a = 1; a < q; ++a) acc += chi(a) * static_cast<double>(a);
        return -acc / static_cast<double>(q);
    }
    if (s == 1) {
        if (trivial)
            throw std::invalid_argument("dirichlet_L_special: pole of zeta at s = 1");
        if (chi.is_odd()) {
            // L(1, chi) = pi tau(chi) L(0, conj chi) / (i q)
            Complex l0bar(0.0);
            for (long a = 1; a < q; ++a) l0bar += std::conj(chi(a)) * static_cast<double>(a);
            l0bar = -l0bar / static_cast<double>(q);
            return M_PI * gauss_sum(chi) * l0bar / (Complex(0.0, 1.0) * static_cast<double>(q));
        }
        // even primitive nontrivial: L(1, chi) = -(tau(chi)/q) sum conj(chi(a)) log(2 sin(pi a / q))
        Complex acc(0.0);
        for (long a = 1; a < q; ++a) {
            Complex v = std::conj(chi(a));
            if (v == Complex(0.0)) continue;
            acc += v * std::log(2.0 * std::sin(M_PI * static_cast<double>(a) / q));
        }
        return -gauss_sum(chi) / static_cast<double>(q) * acc;
    }
    throw std::invalid_argument("dirichlet_L_special: s must be 0 or 1");
}

}
