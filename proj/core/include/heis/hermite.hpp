#pragma once

#include "heis/common.hpp"

#include <map>
#include <span>
#include <vector>

namespace heis {

// L^2-normalized Hermite functions H_0..H_N at x, written to out[0..N].
void hermite_all(int n_max, double x, double* out);

// Same with derivatives: dout[n] = H_n'(x).
void hermite_all_with_derivative(int n_max, double x, double* out, double* dout);

double hermite_1d(int n, double x);

// Tensor-product H_n(x) for x in R^d (x.size() == n.d).
double eval_hermite(const MultiIndex& n, std::span<const double> x);

// H_{n,lambda}(x) = |lambda|^{d/4} H_n(|lambda|^{1/2} x). Throws on lambda == 0.
double eval_rescaled(const MultiIndex& n, double lambda, std::span<const double> x);

// Finite Hermite expansion sum_n c_n H_n with a cap on every entry of n.
class CoeffSeq {
public:
    CoeffSeq(int d, int n_max);

    int dim() const { return d_; }
    int n_max() const { return n_max_; }
    bool truncated() const { return truncated_; }

    // Adds to the coefficient of n; indices outside the box are dropped and
    // mark the sequence as truncated.
    void add(const MultiIndex& n, cplx value);
    void mark_truncated() { truncated_ = true; }
    cplx get(const MultiIndex& n) const;

    const std::map<MultiIndex, cplx>& terms() const { return c_; }

    // Evaluates sum_n c_n H_n(x).
    cplx evaluate(std::span<const double> x) const;

    // Removes exact zeros.
    void prune();

private:
    int d_;
    int n_max_;
    bool truncated_ = false;
    std::map<MultiIndex, cplx> c_;
};

enum class Ladder { creation, annihilation, position, derivative };

// Applies C_j = -d_j + x_j, A_j = d_j + x_j, x_j or d_j to the expansion.
CoeffSeq ladder_apply(Ladder kind, int j, const CoeffSeq& c);

}  // namespace heis
