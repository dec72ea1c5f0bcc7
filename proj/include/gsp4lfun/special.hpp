#pragma once

#include "gsp4lfun/numeric.hpp"

namespace gsp4lfun {

// Principal branch of log Gamma(z), Lanczos approximation (~1e-13 relative).
Complex log_gamma(Complex z);

Complex gamma_fn(Complex z);

}
