#pragma once

#include "heis/freq_function.hpp"

#include <string>

namespace heis {

// Discrete Laplacian on the frequency set; terms whose square-root
// coefficient vanishes are skipped before theta is evaluated.
cplx delta_hat(const FreqFunction& theta, const FreqPoint& p);

// d theta/d lambda + (d / 2 lambda) theta + (1 / 2 lambda) sum_j (...),
// with the signed 1/(2 lambda) factor.
cplx dlambda_hat(const FreqFunction& theta, const FreqPoint& p);

// (theta(n, m, lambda) - (-1)^{|n+m|} theta(m, n, -lambda)) / lambda
cplx sigma0_hat(const FreqFunction& theta, const FreqPoint& p);

enum class FreqLadder { Mplus, Mminus, Dplus, Dminus, M };

FreqLadder parse_freq_ladder(const std::string& name);

// j is ignored for M (multiplication by 4|lambda|(2|m|+d)).
cplx ladder_freq(FreqLadder kind, const FreqFunction& theta, const FreqPoint& p, int j = 0);

// Operator images as frequency functions (composable).
FreqFunction delta_hat_fn(const FreqFunction& theta);
FreqFunction dlambda_hat_fn(const FreqFunction& theta);
FreqFunction sigma0_hat_fn(const FreqFunction& theta);
FreqFunction ladder_freq_fn(FreqLadder kind, const FreqFunction& theta, int j = 0);

}  // namespace heis
