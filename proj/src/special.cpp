#include "gsp4lfun/special.hpp"

#include <cmath>

namespace gsp4lfun {

namespace {

// Lanczos, g = 7, n = 9
const double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

Complex log_gamma_core(Complex z) {
    // requires Re z >= 0.5
    z -= 1.0;
    Complex x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    Complex t = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}

Complex log_gamma(Complex z) {
    if (z.real() >= 0.5) return log_gamma_core(z);
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    Complex log_sin = std::log(std::sin(M_PI * z));
    return std::log(Complex(M_PI)) - log_sin - log_gamma_core(1.0 - z);
}

Complex gamma_fn(Complex z) { return std::exp(log_gamma(z)); }

}
