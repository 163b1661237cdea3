#pragma once

#include <vector>

namespace gelfand {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n-1.
QuadratureRule gauss_legendre(unsigned n);

/// The same rule mapped affinely onto [lo, hi].
QuadratureRule gauss_legendre(unsigned n, double lo, double hi);

} // namespace gelfand
