#pragma once

#include <vector>

namespace gdop::quadrature {

// Gauss-Legendre rule mapped to [0, 1]; exact for polynomial integrands of
// degree <= 2*count - 1.
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Cached; thread-safe.
const Rule& gauss_legendre(int count);

}  // namespace gdop::quadrature
