#pragma once

#include <vector>

namespace heis {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre rule on [-1, 1].
QuadRule gauss_legendre(int order);

// Gauss rule for the weight e^{-scale u^2} on the real line: exact for
// polynomials of degree <= 2*order-1.
QuadRule gauss_hermite(int order, double scale = 1.0);

// Composite rule on [a, b] made of `panels` equal panels of the base rule
// (given on [-1, 1]). Appends to `out`.
void append_composite(double a, double b, int panels, const QuadRule& base, QuadRule& out);

// Cached 16-point Gauss-Legendre rule used by the panel quadratures.
const QuadRule& panel_rule();

}  // namespace heis
