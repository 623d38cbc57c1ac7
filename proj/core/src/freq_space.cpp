#include "heis/freq_space.hpp"

#include "heis/diff_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace heis {

namespace {

double l1_diff(const std::array<double, kMaxDim>& a, const std::array<double, kMaxDim>& b, int d) {
    double s = 0;
    for (int j = 0; j < d; ++j) s += std::abs(a[j] - b[j]);
    return s;
}

std::array<double, kMaxDim> scaled_sum(const FreqPoint& p) {
    std::array<double, kMaxDim> r{};
    for (int j = 0; j < p.dim(); ++j) r[j] = p.lambda * (p.n[j] + p.m[j]);
    return r;
}

double interior_boundary(const FreqPoint& w, const BoundaryPoint& b) {
    const int d = w.dim();
    if (b.dim() != d) throw InvalidArgument("distance: dimension mismatch");
    return l1_diff(scaled_sum(w), b.xdot, d) + (w.m - w.n - b.k).l1() + std::abs(w.lambda);
}

}  // namespace

double distance(const CompletedPoint& p, const CompletedPoint& q) {
    if (point_dim(p) != point_dim(q)) throw InvalidArgument("distance: dimension mismatch");
    const int d = point_dim(p);
    const auto* wp = std::get_if<FreqPoint>(&p);
    const auto* wq = std::get_if<FreqPoint>(&q);
    if (wp && wq)
        return l1_diff(scaled_sum(*wp), scaled_sum(*wq), d) + ((wp->m - wp->n) - (wq->m - wq->n)).l1() +
               std::abs(wp->lambda - wq->lambda);
    if (wp) return interior_boundary(*wp, std::get<BoundaryPoint>(q));
    if (wq) return interior_boundary(*wq, std::get<BoundaryPoint>(p));
    const auto& a = std::get<BoundaryPoint>(p);
    const auto& b = std::get<BoundaryPoint>(q);
    return l1_diff(a.xdot, b.xdot, d) + (a.k - b.k).l1();
}

double weight_d0(const FreqPoint& p) {
    return std::abs(p.lambda) * ((p.n + p.m).l1() + p.dim()) + (p.m - p.n).l1();
}

namespace {

struct Slice {
    cplx sum = 0.0;
    double abs_sum = 0.0;
    double tail = 0.0;
};

// Sum over the index box {0..K}^d (or its diagonal) at one lambda, with
// shell-wise absolute sums for the tail estimate.
template <class Eval>
Slice sum_slice(int d, double lambda, int K, bool diagonal, bool capped, Eval&& eval) {
    std::vector<double> shell(K + 1, 0.0);
    Slice s;
    MultiIndex n(d), m(d);
    auto visit = [&](const MultiIndex& a, const MultiIndex& b) {
        const cplx v = eval(FreqPoint(a, b, lambda));
        s.sum += v;
        shell[std::max(a.max_entry(), b.max_entry())] += std::abs(v);
    };
    const std::size_t box = box_size(d, K);
    if (diagonal) {
        for (std::size_t i = 0; i < box; ++i) {
            n = unflat_index(i, d, K);
            visit(n, n);
        }
    } else {
        for (std::size_t i = 0; i < box; ++i) {
            n = unflat_index(i, d, K);
            for (std::size_t k = 0; k < box; ++k) visit(n, unflat_index(k, d, K));
        }
    }
    for (double a : shell) s.abs_sum += a;
    if (!capped && K >= 1 && shell[K] > 0.0) {
        const double rho = shell[K] / std::max(shell[K - 1], std::numeric_limits<double>::min());
        s.tail = rho < 1.0 ? shell[K] * rho / (1.0 - rho) : std::numeric_limits<double>::infinity();
    }
    return s;
}

template <class Eval>
Integral integrate_impl(int d, int fn_nmax, bool diagonal, const LambdaGrid& grid, const SumOptions& opt, Eval&& eval) {
    if (opt.n_max < 0) throw InvalidArgument("integrate: n_max must be nonnegative");
    const std::vector<double> w = grid.weights(d);
    Integral out;
    double end_abs = 0.0;
    std::vector<cplx> sums(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const double lam = grid[i];
        int K = opt.n_max;
        if (opt.adaptive) {
            const double kx = (opt.x_cut / std::abs(lam) - d) / 2.0;
            K = static_cast<int>(std::clamp(kx, 1.0, static_cast<double>(opt.n_cap)));
        }
        bool capped = false;
        if (fn_nmax >= 0 && K >= fn_nmax) {
            K = fn_nmax;
            capped = true;
        }
        const Slice s = sum_slice(d, lam, K, diagonal, capped, eval);
        sums[i] = s.sum;
        out.value += w[i] * s.sum;
        out.tail_bound += w[i] * s.tail;
        if (i == 0 || i == grid.size() - 1) end_abs += s.abs_sum;
    }
    // The weights close [0, lambda_min] for a bounded slice sum; sums over n
    // grow like a power of 1/|lambda|, so refit the end piece on each side.
    const int P = grid.points_per_sign();
    const double lmin = grid[P];
    for (int side : {-1, 1}) {
        const int i0 = side > 0 ? P : P - 1, i1 = side > 0 ? P + 1 : P - 2;
        const double a0 = std::abs(sums[i0]), a1 = std::abs(sums[i1]);
        if (a0 == 0.0 || a1 == 0.0) continue;
        const double pw = std::log(a1 / a0) / std::log(std::abs(grid[i1] / grid[i0]));
        const double e = d + 1.0 + std::min(pw, 0.0);
        const double base = std::pow(lmin, d + 1);
        out.value -= sums[i0] * base / (d + 1.0);
        if (e > 0.0)
            out.value += sums[i0] * base / e;
        else
            out.tail_bound = std::numeric_limits<double>::infinity();
    }
    out.tail_bound += end_abs * std::pow(grid.params().lambda_max, d + 1);
    out.flagged = !(out.tail_bound <= opt.tolerance);
    return out;
}

}  // namespace

Integral integrate(const FreqFunction& theta, const LambdaGrid& grid, const SumOptions& opt) {
    return integrate_impl(theta.d, theta.n_max, theta.diagonal, grid, opt,
                          [&theta](const FreqPoint& p) { return theta(p); });
}

Integral l1m_norm(const FreqFunction& theta, int p, const LambdaGrid& grid, const SumOptions& opt) {
    return integrate_impl(theta.d, theta.n_max, theta.diagonal, grid, opt, [&theta, p](const FreqPoint& q) {
        const double base = 1.0 + std::abs(q.lambda) * ((q.n + q.m).l1() + q.dim()) + (q.n - q.m).l1();
        return cplx(std::pow(base, -p) * std::abs(theta(q)));
    });
}

double freq_seminorm(const FreqFunction& theta, int N, int Nprime, const LambdaGrid& grid, const SupOptions& opt) {
    if (N < 0 || Nprime < 0) throw InvalidArgument("freq_seminorm: orders must be nonnegative");
    FreqFunction lap = theta, dl = theta;
    for (int k = 0; k < Nprime; ++k) {
        lap = delta_hat_fn(lap);
        dl = dlambda_hat_fn(dl);
    }
    const FreqFunction sig = sigma0_hat_fn(dl);
    std::vector<double> lams = opt.lambdas;
    if (lams.empty())
        for (int i = 0; i < grid.size(); i += 4) lams.push_back(grid[i]);
    const int d = theta.d;
    const int K = opt.n_max;
    const std::size_t box = box_size(d, K);
    double best = 0.0;
    for (double lam : lams) {
        for (std::size_t a = 0; a < box; ++a) {
            const MultiIndex n = unflat_index(a, d, K);
            for (std::size_t b = 0; b < box; ++b) {
                const MultiIndex m = unflat_index(b, d, K);
                if (theta.diagonal && !(n == m)) continue;
                const FreqPoint p(n, m, lam);
                double v = std::abs(lap(p)) + std::abs(sig(p));
                if (Nprime > 0) v += std::abs(dl(p));
                best = std::max(best, std::pow(1.0 + weight_d0(p), N) * v);
            }
        }
    }
    return best;
}

}  // namespace heis
