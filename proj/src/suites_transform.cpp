#include "heisapp/fields.hpp"
#include "suite_common.hpp"

#include <heis/profiles.hpp>
#include <heis/wigner.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace heisapp::detail {

using heis::cplx;
using heis::FreqPoint;
using heis::MultiIndex;

namespace {

double field_sup_on_ball(const heis::SampledField& f, double R) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto w = f.point(i);
        if (w.norm_Y2() + w.s * w.s <= R * R) m = std::max(m, std::abs(f[i]));
    }
    return m;
}

double rel_sup_error(const heis::SampledField& a, const heis::SampledField& b, double R) {
    double err = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto w = a.point(i);
        if (w.norm_Y2() + w.s * w.s <= R * R) err = std::max(err, std::abs(a[i] - b[i]));
    }
    return err / field_sup_on_ball(b, R);
}

}  // namespace

void plancherel(Context& ctx, Report& r) {
    const int d = ctx.cfg.d;
    const auto& t = ctx.gaussian_table();
    const auto n = heis::plancherel_norms(ctx.gaussian(), t);
    const double c = 1.0 / heis::inversion_constant(d);
    r.check("plancherel", "||F f||^2 = pi^{d+1}/2^{d-1} ||f||^2", "Gaussian: ratio / (pi^{d+1}/2^{d-1})",
            n.ratio() / c, 1.0, ctx.cfg.tolerance("plancherel", 1e-2));
    r.info("plancherel", fmt("||F f||^2 = %.6f ||f||^2, table residual %.2e", n.ratio(), t.residual));
}

void inversion(Context& ctx, Report& r) {
    const auto& f = ctx.gaussian();
    const auto inv = heis::inverse(ctx.gaussian_table(), ctx.cfg.grid);
    const double err = rel_sup_error(inv, f, 3.0);
    r.bound("inversion", "f = 2^{d-1}/pi^{d+1} int e^{is lambda} W F f", "relative sup error on |w| <= 3", err,
            ctx.cfg.tolerance("inversion", 1e-2));
    if (ctx.cfg.n_max < 48 && ctx.cfg.d == 1) {
        const auto t48 = heis::forward_factored(f, 48, ctx.grid);
        const double e48 = rel_sup_error(heis::inverse(t48, ctx.cfg.grid), f, 3.0);
        r.info("inversion", fmt("n_max = %d gives %.4e; n_max = 48 gives %.4e (index truncation)", ctx.cfg.n_max,
                                err, e48));
    }
}

void convolution(Context& ctx, Report& r) {
    const int d = ctx.cfg.d;
    const int N = ctx.cfg.n_max;
    // f * g spreads in s by 2|Y||Y'|; widen the s window, same spacing
    heis::GridSpec G = ctx.cfg.grid;
    const double hs = G.axis_h(2 * d);
    G.ns = 2 * static_cast<int>(std::lround(1.5 * G.Ls / hs)) + 1;
    G.Ls = hs * (G.ns - 1) / 2;
    const auto f = gaussian_field(G);
    const auto g = narrow_field(G);
    const auto h = heis::convolve(f, g);
    const std::size_t box = heis::box_size(d, N);
    const std::size_t small = heis::box_size(d, 4);
    double err = 0.0, scale = 0.0;
    for (double l : {0.3, 0.7, 1.2, 2.0})
        for (double sg : {1.0, -1.0}) {
            std::vector<cplx> A, B, C;
            heis::forward_factored_slice(f, sg * l, N, A);
            heis::forward_factored_slice(g, sg * l, N, B);
            heis::forward_factored_slice(h, sg * l, N, C);
            using M = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
            const Eigen::Map<const M> Am(A.data(), box, box), Bm(B.data(), box, box), Cm(C.data(), box, box);
            const M P = Am * Bm;
            for (std::size_t a = 0; a < small; ++a)
                for (std::size_t b = 0; b < small; ++b) {
                    const std::size_t ia = heis::flat_index(heis::unflat_index(a, d, 4), N);
                    const std::size_t ib = heis::flat_index(heis::unflat_index(b, d, 4), N);
                    err = std::max(err, std::abs(Cm(ia, ib) - P(ia, ib)));
                    scale = std::max(scale, std::abs(Cm(ia, ib)));
                }
        }
    r.bound("convolution", "F(f * g) = F f . F g", "max abs deviation, |n|,|m| <= 4, 8 lambda", err,
            ctx.cfg.tolerance("convolution", 5e-3));
    r.info("convolution", fmt("largest |F(f*g)| entry %.4f", scale));
}

void definitions(Context& ctx, Report& r) {
    const int d = ctx.cfg.d;
    const auto& f = ctx.skew();
    std::mt19937 rng(20240611u);
    std::uniform_int_distribution<int> idx(0, 3);
    std::uniform_real_distribution<double> lam(0.2, 2.0);
    std::bernoulli_distribution neg(0.5);
    double err = 0.0;
    for (int i = 0; i < 30; ++i) {
        MultiIndex n(d), m(d);
        for (int j = 0; j < d; ++j) {
            n[j] = idx(rng);
            m[j] = idx(rng);
        }
        double l = lam(rng);
        if (neg(rng)) l = -l;
        const cplx a = heis::forward_direct(f, FreqPoint(n, m, l));
        const cplx b = heis::rep_matrix_coeff(f, l, n, m);
        err = std::max(err, std::abs(a - b));
    }
    r.bound("definitions", "int conj(e^{is lambda} W) f = (F(f)(lambda) H_m | H_n)", "max abs deviation, 30 points",
            err, ctx.cfg.tolerance("definitions", 1e-6));
}

void heat(Context& ctx, Report& r) {
    const int d = ctx.cfg.d;
    const auto& grid = ctx.grid;
    std::vector<FreqPoint> pts;
    for (int li = 0; li < grid.size(); li += 7)
        for (int a = 0; a <= 10; a += 2)
            for (int b = 0; b <= 10; b += 5) {
                MultiIndex n(d), m(d);
                n[0] = a;
                m[0] = a + (b == 5 ? 1 : 0);
                pts.emplace_back(n, m, grid[li]);
            }

    double semi = 0.0;
    for (auto [t1, t2] : {std::pair{0.5, 1.0}, std::pair{1.0, 2.0}, std::pair{0.25, 0.75}}) {
        const auto h1 = heis::heat_profile(t1, d), h2 = heis::heat_profile(t2, d), h12 = heis::heat_profile(t1 + t2, d);
        for (const auto& p : pts) semi = std::max(semi, std::abs(heis::spectral_product(h1, h2, p).value - h12(p)));
    }
    r.bound("heat", "h_t . h_t' = h_{t+t'}", "semigroup, max abs", semi, ctx.cfg.tolerance("heat.semigroup", 1e-14));

    double scal = 0.0;
    const auto one = heis::heat_profile(1.0, d);
    for (double t : {0.1, 0.5, 2.0, 7.0}) {
        const auto ht = heis::heat_profile(t, d);
        for (const auto& p : pts) scal = std::max(scal, std::abs(ht(p) - one(FreqPoint(p.n, p.m, t * p.lambda))));
    }
    r.bound("heat", "h_t(n, m, lambda) = h_1(n, m, t lambda)", "scaling, max abs", scal,
            ctx.cfg.tolerance("heat.scaling", 1e-15));

    const auto table = heis::tabulate(one, ctx.cfg.n_max, grid, "profile");
    const heis::GridSpec wide = mass_grid(ctx.cfg);
    const auto inv = heis::inverse(table, wide);
    double mx = 0.0, mn = 0.0, im = 0.0;
    for (std::size_t i = 0; i < inv.size(); ++i) {
        if (std::abs(inv.point(i).s) > ctx.cfg.grid.Ls + 1e-9) continue;
        mx = std::max(mx, inv[i].real());
        mn = std::min(mn, inv[i].real());
        im = std::max(im, std::abs(inv[i].imag()));
    }
    const double tol_pos = ctx.cfg.tolerance("heat.positivity", 1e-6);
    r.bound("heat", "h = F^{-1} h_1 >= 0", "-min Re h / max h on the grid", -mn / mx, tol_pos);
    r.bound("heat", "h = F^{-1} h_1 real", "max |Im h| / max h on the grid", im / mx, tol_pos);
    r.check("heat", "int h = h_1(0-hat) = 1", fmt("mass over |s| <= %g", wide.Ls), inv.integral().real(), 1.0,
            ctx.cfg.tolerance("heat.mass", 1e-3));
}

}  // namespace heisapp::detail
