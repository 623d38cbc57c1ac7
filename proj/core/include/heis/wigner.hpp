#pragma once

#include "heis/common.hpp"
#include "heis/points.hpp"

#include <span>
#include <vector>

namespace heis {

// One-dimensional Wigner transform
//   W(n, m, lambda, y, eta) = int e^{2i lambda eta z} H_{n,lambda}(y+z) H_{m,lambda}(z-y) dz.
cplx wigner1(int n, int m, double lambda, double y, double eta);

// d/dlambda of wigner1, by quadrature of the differentiated integrand.
cplx wigner1_dlambda(int n, int m, double lambda, double y, double eta);

// Same value as wigner1 but computed twice (base and halved panels); throws
// ConvergenceError when the two disagree by more than tol.
cplx wigner1_checked(int n, int m, double lambda, double y, double eta, double tol = 1e-12);

// All W(n, m) with n, m <= n_max at one (lambda, y, eta); row-major (n_max+1)^2.
void wigner1_all(int n_max, double lambda, double y, double eta, cplx* out);

// wigner1_all plus the lambda-derivatives of every entry.
void wigner1_all_with_dlambda(int n_max, double lambda, double y, double eta, cplx* out, cplx* dout);

// Y = (y_1..y_d, eta_1..eta_d); product over coordinates.
cplx wigner_eval(const FreqPoint& p, std::span<const double> Y);

// Boundary kernel K(xdot, k, y, eta) in one coordinate (periodic trapezoid rule).
cplx boundary_kernel1(double xdot, int k, double y, double eta);

cplx boundary_kernel(const BoundaryPoint& b, std::span<const double> Y);

}  // namespace heis
