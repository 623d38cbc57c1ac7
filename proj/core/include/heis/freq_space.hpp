#pragma once

#include "heis/freq_function.hpp"

#include <vector>

namespace heis {

// Extended distance on the completion (interior/interior, interior/boundary,
// boundary/boundary branches).
double distance(const CompletedPoint& p, const CompletedPoint& q);

// |lambda|(|n+m|_1 + d) + |m-n|_1
double weight_d0(const FreqPoint& p);

struct Integral {
    cplx value = 0.0;
    double tail_bound = 0.0;
    bool flagged = false;  // tail_bound > tolerance
};

struct SumOptions {
    int n_max = 24;
    // Adaptive mode sums each lambda slice up to |lambda|(2|n|+d) <= x_cut
    // (capped by n_cap) instead of the fixed box n, m <= n_max.
    bool adaptive = false;
    double x_cut = 40.0;
    int n_cap = 100000;
    double tolerance = 1e-6;
};

// sum_{n,m} sum_lambda theta(n, m, lambda) |lambda|^d w_lambda with a tail
// estimate from geometric extrapolation of the outermost index shells plus
// the mass beyond lambda_max.
Integral integrate(const FreqFunction& theta, const LambdaGrid& grid, const SumOptions& opt = {});

struct SupOptions {
    int n_max = 6;
    std::vector<double> lambdas;  // empty: every 4th positive and negative grid value
};

// sup (1 + d0)^N (|Delta^N' theta| + |D_lambda^N' theta| + |Sigma_0 D_lambda^N' theta|);
// at N' = 0 the first two coincide and theta is counted once.
double freq_seminorm(const FreqFunction& theta, int N, int Nprime, const LambdaGrid& grid,
                     const SupOptions& opt = {});

// integral of (1 + |lambda|(|n+m|_1 + d) + |n-m|_1)^{-p} |theta|
Integral l1m_norm(const FreqFunction& theta, int p, const LambdaGrid& grid, const SumOptions& opt = {});

}  // namespace heis
