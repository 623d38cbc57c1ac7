#include "heis/hermite.hpp"

#include <cmath>
#include <vector>

namespace heis {

void hermite_all(int n_max, double x, double* out) {
    static const double h0 = std::pow(pi, -0.25);
    out[0] = h0 * std::exp(-0.5 * x * x);
    if (n_max == 0) return;
    out[1] = std::sqrt(2.0) * x * out[0];
    for (int n = 1; n < n_max; ++n)
        out[n + 1] = std::sqrt(2.0 / (n + 1)) * x * out[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * out[n - 1];
}

void hermite_all_with_derivative(int n_max, double x, double* out, double* dout) {
    std::vector<double> tmp(n_max + 2);
    hermite_all(n_max + 1, x, tmp.data());
    for (int n = 0; n <= n_max; ++n) {
        out[n] = tmp[n];
        const double down = n > 0 ? std::sqrt(2.0 * n) * tmp[n - 1] : 0.0;
        dout[n] = 0.5 * (down - std::sqrt(2.0 * n + 2.0) * tmp[n + 1]);
    }
}

double hermite_1d(int n, double x) {
    if (n < 0) throw InvalidArgument("hermite index must be nonnegative");
    std::vector<double> h(n + 1);
    hermite_all(n, x, h.data());
    return h[n];
}

double eval_hermite(const MultiIndex& n, std::span<const double> x) {
    if (static_cast<int>(x.size()) != n.d) throw InvalidArgument("eval_hermite: dimension mismatch");
    if (!n.nonnegative()) throw InvalidArgument("eval_hermite: negative index");
    double v = 1.0;
    for (int j = 0; j < n.d; ++j) v *= hermite_1d(n[j], x[j]);
    return v;
}

double eval_rescaled(const MultiIndex& n, double lambda, std::span<const double> x) {
    if (lambda == 0.0) throw InvalidArgument("eval_rescaled: lambda must be nonzero");
    if (static_cast<int>(x.size()) != n.d) throw InvalidArgument("eval_rescaled: dimension mismatch");
    const double a = std::sqrt(std::abs(lambda));
    double v = std::pow(std::abs(lambda), 0.25 * n.d);
    for (int j = 0; j < n.d; ++j) v *= hermite_1d(n[j], a * x[j]);
    return v;
}

CoeffSeq::CoeffSeq(int d, int n_max) : d_(d), n_max_(n_max) {
    check_dim(d);
    if (n_max < 0) throw InvalidArgument("CoeffSeq: negative cap");
}

void CoeffSeq::add(const MultiIndex& n, cplx value) {
    if (n.d != d_) throw InvalidArgument("CoeffSeq: dimension mismatch");
    if (!n.nonnegative()) return;
    if (n.max_entry() > n_max_) {
        if (value != cplx(0.0)) truncated_ = true;
        return;
    }
    c_[n] += value;
}

cplx CoeffSeq::get(const MultiIndex& n) const {
    auto it = c_.find(n);
    return it == c_.end() ? cplx(0.0) : it->second;
}

cplx CoeffSeq::evaluate(std::span<const double> x) const {
    cplx s = 0.0;
    for (const auto& [n, v] : c_) s += v * eval_hermite(n, x);
    return s;
}

void CoeffSeq::prune() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->second == cplx(0.0))
            it = c_.erase(it);
        else
            ++it;
    }
}

CoeffSeq ladder_apply(Ladder kind, int j, const CoeffSeq& c) {
    if (j < 0 || j >= c.dim()) throw InvalidArgument("ladder_apply: coordinate out of range");
    CoeffSeq out(c.dim(), c.n_max());
    bool lost = c.truncated();
    for (const auto& [n, v] : c.terms()) {
        const double down = std::sqrt(2.0 * n[j]);
        const double up = std::sqrt(2.0 * n[j] + 2.0);
        const MultiIndex lo = n.shifted(j, -1);
        const MultiIndex hi = n.shifted(j, +1);
        cplx a_lo = 0.0, a_hi = 0.0;
        switch (kind) {
            case Ladder::creation: a_hi = up; break;
            case Ladder::annihilation: a_lo = down; break;
            case Ladder::position: a_lo = 0.5 * down; a_hi = 0.5 * up; break;
            case Ladder::derivative: a_lo = 0.5 * down; a_hi = -0.5 * up; break;
        }
        if (n[j] > 0 && a_lo != cplx(0.0)) out.add(lo, a_lo * v);
        if (a_hi != cplx(0.0)) {
            if (hi.max_entry() > c.n_max())
                lost = lost || v != cplx(0.0);
            else
                out.add(hi, a_hi * v);
        }
    }
    if (lost) out.mark_truncated();
    out.prune();
    return out;
}

}  // namespace heis
