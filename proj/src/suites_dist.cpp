#include "heisapp/fields.hpp"
#include "suite_common.hpp"

#include <heis/distributions.hpp>
#include <heis/profiles.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace heisapp::detail {

using heis::cplx;
using heis::FreqFunction;
using heis::FreqPoint;
using heis::MultiIndex;

namespace {

// Geometric grid with about the base ratio, reaching down to lambda_min.
heis::LambdaGrid refined_grid(const heis::LambdaGridParams& base, double lambda_min, int split = 1) {
    const double r0 = base.ratio > 0.0 ? base.ratio
                                       : std::pow(base.lambda_max / base.lambda_min, 1.0 / (base.points_per_sign - 1));
    const double top = base.lambda_min * std::pow(r0, base.points_per_sign - 1);
    // keep the top node fixed so only the approach to 0 changes
    heis::LambdaGridParams p;
    p.lambda_min = lambda_min;
    p.lambda_max = top;
    p.points_per_sign = 1 + static_cast<int>(std::lround(split * std::log(top / lambda_min) / std::log(r0)));
    return heis::LambdaGrid(p);
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace

void closed_forms(Context& ctx, Report& r) {
    const int d = ctx.cfg.d;
    heis::PairOptions opt;
    opt.grid = ctx.grid;

    // sum_n int e^{-4|lambda|(2|n|+d)} |lambda|^d = 2 d!/4^{d+1} sum_n (2|n|+d)^{-d-1}
    const double expect_I = d == 1 ? heis::pi * heis::pi / 64.0 : heis::pi * heis::pi / 768.0;
    const auto heat1 = heis::heat_profile(1.0, d);
    const auto dI = heis::pair(heis::fourier_distribution(heis::phys_dirac(d)), heat1, opt);
    r.check("closed_forms", "F delta_0 = I", "<F delta_0, h_1>", dI.value.real(), expect_I,
            ctx.cfg.tolerance("closed_forms.dirac", 1e-4));

    const heis::GridSpec wide = mass_grid(ctx.cfg);
    const auto one = heis::fourier_distribution(heis::phys_one(d));
    auto window = [&](const FreqFunction& th) {
        return std::pair{heis::transposed(heis::tabulate(th, ctx.cfg.n_max, ctx.grid, "profile"), wide).integral().real(),
                         heis::pair(one, th, opt).value.real()};
    };
    // <1, tF theta> over the widened window, first two configured fixtures
    const std::size_t nfx = std::min<std::size_t>(2, ctx.cfg.fixtures.size());
    for (std::size_t i = 0; i < ctx.cfg.fixtures.size(); ++i) {
        const auto& fx = ctx.cfg.fixtures[i];
        const auto [v, closed] = window(heis::profile_function(fx.build(d)));
        if (i < nfx)
            r.check("closed_forms", "F 1 = pi^{d+1}/2^{d-1} delta_{0-hat}", "<1, tF theta> for " + fx.label(), v,
                    closed, ctx.cfg.tolerance("closed_forms.one", 1e-3));
        else
            r.info("closed_forms", fmt("%s: <1, tF theta> = %.6f against %.6f", fx.label().c_str(), v, closed));
    }

    const auto g = gaussian_plane(ctx.cfg.grid);
    for (double xd : {0.25, 1.0, 4.0}) {
        heis::BoundaryPoint b;
        b.k = MultiIndex(d);
        for (int j = 0; j < d; ++j) b.xdot[j] = xd;
        const cplx v = heis::g_hat_boundary(g, b);
        r.check("closed_forms", "G_H(e^{-|Y|^2})(xdot, 0) = pi^d e^{-|xdot|}", fmt("xdot %g", xd), v.real(),
                std::pow(heis::pi, d) * std::exp(-d * xd), ctx.cfg.tolerance("closed_forms.kernel", 1e-6));
    }
}

void f_gamma(Context& ctx, Report& r) {
    const int d = ctx.cfg.d;
    heis::SumOptions so;
    so.adaptive = true;
    so.n_cap = 2000000;
    const std::vector<double> mins{1e-2, 1e-3, 1e-4, 1e-5};

    std::vector<double> v1, v2, L;
    for (double lm : mins) {
        const auto grid = refined_grid(ctx.cfg.lambda, lm);
        v1.push_back(heis::l1m_norm(heis::make_f_gamma(d, d), 2, grid, so).value.real());
        v2.push_back(heis::l1m_norm(heis::make_f_gamma(d + 1, d), 2, grid, so).value.real());
        L.push_back(std::log(1.0 / lm));
    }
    double worst = 0.0;
    for (std::size_t i = 0; i + 2 < v1.size(); ++i)
        worst = std::max(worst, std::abs(v1[i + 2] - v1[i + 1]) / std::abs(v1[i + 1] - v1[i]));
    r.bound("f_gamma", "f_d in L1_M", "largest ratio of successive refinement deltas", worst,
            ctx.cfg.tolerance("f_gamma.ratio", 0.5));
    r.info("f_gamma", fmt("gamma = d: %.8f %.8f %.8f %.8f", v1[0], v1[1], v1[2], v1[3]));

    // per sign, d/dlog(1/lambda_min) -> sum_n (2|n|+d)^{-d-1}; d = 1: pi^2/8
    const double rate = d == 1 ? heis::pi * heis::pi / 4.0 : 2.0 * heis::pi * heis::pi / 6.0 / 8.0;
    const double slope = least_squares_slope(L, v2);
    r.check("f_gamma", "f_{d+1} not in L1_M", "slope in log(1/lambda_min) / expected rate", slope / rate, 1.0,
            ctx.cfg.tolerance("f_gamma.slope", 0.2));
    r.info("f_gamma", fmt("gamma = d+1: slope %.5f, rate %.5f", slope, rate));
}

void sqrt_modulus(Context& ctx, Report& r) {
    const int d = ctx.cfg.d;
    const double drift_tol = ctx.cfg.tolerance("sqrt_modulus", 0.1);
    for (const auto& fx : ctx.cfg.fixtures) {
        const FreqFunction th = heis::profile_function(fx.build(d));
        const cplx origin = heis::theta_at_origin(th).value;
        std::vector<double> C;
        for (int level = 0; level < 3; ++level) {
            const double scale = std::pow(10.0, -level);
            const auto grid = refined_grid(ctx.cfg.lambda, ctx.cfg.lambda.lambda_min * scale, 1 << level);
            const int N = ctx.cfg.n_max << level;
            double c = 0.0;
            for (int li = 0; li < grid.size(); ++li)
                for (int n = 0; n <= N; ++n) {
                    MultiIndex nn(d);
                    nn[0] = n;
                    const double w = std::abs(grid[li]) * (2.0 * n + d);
                    c = std::max(c, std::abs(th(FreqPoint(nn, nn, grid[li])) - origin) / std::sqrt(w));
                }
            C.push_back(c);
        }
        const double drift = std::max(std::abs(C[1] - C[0]), std::abs(C[2] - C[0])) / C[0];
        r.bound("sqrt_modulus", "|theta(n, n, lambda) - theta(0-hat)| <= C (|lambda|(2|n|+d))^{1/2}",
                fx.label() + ": relative drift of C over two refinements", drift, drift_tol);
        r.info("sqrt_modulus", fmt("%s: C = %.6f, %.6f, %.6f", fx.label().c_str(), C[0], C[1], C[2]));
    }
}

void mollifier(Context& ctx, Report& r) {
    const int d = ctx.cfg.d;
    heis::PairOptions opt;
    opt.grid = ctx.grid;
    const auto mu = heis::freq_boundary_measure(d, [](const heis::BoundaryPoint&) { return cplx(1.0); });
    const std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
    const FreqFunction thetas[] = {heis::heat_profile(0.25, d), heis::heat_profile(1.0, d),
                                   heis::profile_function(heis::gauss_profile(1.0, d))};
    for (const auto& th : thetas) {
        const double target = heis::pair(mu, th, opt).value.real();
        std::vector<double> err, half;
        for (double e : eps) {
            FreqFunction psi(d, [e, th](const FreqPoint& p) {
                return std::exp(-p.lambda * p.lambda / (e * e)) / (e * std::sqrt(heis::pi)) * th(p);
            }, "psi_eps theta");
            psi.diagonal = th.diagonal;
            const double v = heis::integrate(psi, opt.grid, opt.sum).value.real();
            err.push_back(std::abs(v - target));
            half.push_back(std::abs(v - 0.5 * target));
        }
        int ups = 0, half_ups = 0;
        for (std::size_t i = 1; i < err.size(); ++i) {
            ups += err[i] >= err[i - 1];
            half_ups += half[i] >= half[i - 1];
        }
        const double tol = ctx.cfg.tolerance("mollifier", 5e-3);
        r.bound("mollifier", "eps^{-1} psi(lambda/eps) -> mu", th.label + ": non-decreasing steps", ups, 0.0);
        r.bound("mollifier", "eps^{-1} psi(lambda/eps) -> mu", th.label + ": error at eps = 0.025", err.back(), tol);
        r.info("mollifier", fmt("%s: <mu, theta> = %.6f, errors %.3e %.3e %.3e %.3e; against <mu, theta>/2: %.3e "
                                "%.3e %.3e %.3e (%d non-decreasing)",
                                th.label.c_str(), target, err[0], err[1], err[2], err[3], half[0], half[1], half[2],
                                half[3], half_ups));
    }
}

}  // namespace heisapp::detail
