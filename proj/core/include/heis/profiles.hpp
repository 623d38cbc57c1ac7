#pragma once

#include "heis/freq_function.hpp"

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace heis {

using XVec = std::array<double, kMaxDim>;

enum class SupportTag { k_zero, x_floor };

// Real profile f(x, k, lambda) on [0, inf)^d x Z^d x R with analytic partials.
struct Profile {
    using Value = std::function<double(const XVec& x, const MultiIndex& k, double lambda)>;
    using Partial = std::function<double(const XVec& x, const MultiIndex& k, double lambda, int j)>;

    int d = 1;
    SupportTag tag = SupportTag::k_zero;
    double r0 = 0.0;  // x_floor only
    Value f;
    Partial dx;   // d/dx_j
    Partial dxx;  // d^2/dx_j^2
    Value dl;     // d/dlambda
    std::string name;

    double operator()(const XVec& x, const MultiIndex& k, double lambda) const { return f(x, k, lambda); }
};

// e^{-4t(x_1+..+x_d)} 1_{k=0}
Profile heat_fixture(double t, int d);
// rho(x) e^{-|x|_1 + beta lambda} c(k), with rho a smooth ramp from 0 on
// [0, r0/2] to 1 on [r0, inf) and c(k) = e^{-k^2/2}, times (-1)^k for k < 0.
Profile exp_floor(double r0, int d, double beta = 0.0);
// e^{-|x|^2 / (2 sigma^2)} 1_{k=0}
Profile gauss_profile(double sigma, int d);

// Smooth step on [0, 1] and its first two derivatives.
std::array<double, 3> smooth_step(double t);

// Interior: f(|lambda| R(n, m), m - n, lambda) with R_j = n_j + m_j + 1;
// boundary (xdot, k): f(|xdot|, k, 0).
double profile_theta(const Profile& P, const CompletedPoint& p);

// Theta_f as a frequency function, with analytic lambda-derivative and the
// boundary extension attached.
FreqFunction profile_function(const Profile& P);

struct BoundaryDiff {
    double delta;    // xdot f'' + f' - k^2/(4 xdot) f
    double dlambda;  // d f / d lambda at lambda = 0
};

// d = 1, x_floor profiles only.
BoundaryDiff boundary_diff(const Profile& P, const BoundaryPoint& b);

// Diagonal e^{-4t|lambda|(2|n|+d)} with analytic lambda-derivative and
// boundary value e^{-4t|xdot|_1} at k = 0.
FreqFunction heat_profile(double t, int d);

// Least C with |a - b| <= C |lambda|^M (1 + |lambda|(|n+m|+d) + |m-n|)^{-N}
// over the samples.
double m_equiv_fit(const FreqFunction& a, const FreqFunction& b, int M, int N, const std::vector<FreqPoint>& samples);

// Largest |f(x,-k,lambda) - (-1)^{|k|} f(x,k,lambda)| on the samples.
double parity_violation(const Profile& P, const std::vector<XVec>& xs, const std::vector<MultiIndex>& ks,
                        const std::vector<double>& lambdas);

// sup (1 + |x|_1 + |k|_1 + |lambda|)^order (|f| + |d_x f| + |d_xx f| + |d_lambda f|)
double decay_sup(const Profile& P, int order, const std::vector<XVec>& xs, const std::vector<MultiIndex>& ks,
                 const std::vector<double>& lambdas);

}  // namespace heis
