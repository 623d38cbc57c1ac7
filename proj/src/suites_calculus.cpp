#include "heisapp/fields.hpp"
#include "suite_common.hpp"

#include <heis/diff_ops.hpp>
#include <heis/profiles.hpp>
#include <heis/wigner.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace heisapp::detail {

using heis::cplx;
using heis::FreqFunction;
using heis::FreqPoint;
using heis::MultiIndex;
using heis::PhysOp;

namespace {

constexpr int kIdentityN = 6;
constexpr auto kSpectral = heis::DerivScheme::spectral;

FreqFunction fourier(const heis::SampledField& f) { return heis::ForwardEvaluator(f, kIdentityN).as_function(); }

double max_dev(const std::vector<FreqPoint>& pts, const std::function<cplx(const FreqPoint&)>& lhs,
               const std::function<cplx(const FreqPoint&)>& rhs) {
    double e = 0.0;
    for (const auto& p : pts) e = std::max(e, std::abs(lhs(p) - rhs(p)));
    return e;
}

}  // namespace

void sublaplacian(Context& ctx, Report& r) {
    const auto& f = ctx.skew();
    const auto pts = identity_points(ctx.cfg.d);
    const auto fh = fourier(f);
    const auto lap = fourier(heis::apply_phys_op(PhysOp::DeltaH, f, 0, kSpectral));
    const double e = max_dev(pts, lap, [&](const FreqPoint& p) {
        return -heis::ladder_freq(heis::FreqLadder::M, fh, p);
    });
    r.bound("sublaplacian", "F(Delta_H f) = -4|lambda|(2|m|+d) F f", "max abs over the identity set", e,
            ctx.cfg.tolerance("sublaplacian", 1e-4));
}

void moments(Context& ctx, Report& r) {
    const auto& f = ctx.skew();
    const auto pts = identity_points(ctx.cfg.d);
    const auto fh = fourier(f);
    const double tol = ctx.cfg.tolerance("moments", 1e-4);
    const auto m2 = fourier(heis::apply_phys_op(PhysOp::M2, f));
    const double e2 = max_dev(pts, m2, [&](const FreqPoint& p) { return -heis::delta_hat(fh, p); });
    r.bound("moments", "F(|Y|^2 f) = -Delta-hat F f", "max abs over the identity set", e2, tol);
    // lambda-derivatives straight from the differentiated quadrature kernel
    const auto fd = heis::DirectEvaluator(f, kIdentityN).as_function();
    const auto m0 = heis::DirectEvaluator(heis::apply_phys_op(PhysOp::M0, f), kIdentityN).as_function();
    const double e0 = max_dev(pts, m0, [&](const FreqPoint& p) { return heis::dlambda_hat(fd, p); });
    r.bound("moments", "F(-is f) = D-hat_lambda F f", "max abs over the identity set", e0, tol);
}

void primitive(Context& ctx, Report& r) {
    const auto& f = ctx.skew();
    const auto pts = identity_points(ctx.cfg.d);
    const auto fh = fourier(f);
    const auto pf = fourier(heis::apply_phys_op(PhysOp::P, f, 0, kSpectral));
    const double e = max_dev(pts, [&](const FreqPoint& p) { return cplx(0.0, 2.0) * pf(p); },
                             [&](const FreqPoint& p) { return heis::sigma0_hat(fh, p); });
    r.bound("primitive", "2i F(P f) = Sigma-hat_0 F f", "max abs, fixture not even in s", e,
            ctx.cfg.tolerance("primitive", 1e-4));
}

void wigner_symmetry(Context& ctx, Report& r) {
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<std::array<double, 2>> Ys(20);
    for (auto& Y : Ys) Y = {u(rng), u(rng)};
    double sym = 0.0, top = 0.0;
    std::vector<cplx> a(25), b(25);
    for (double l : {0.3, 1.0, 2.7})
        for (double sg : {1.0, -1.0})
            for (const auto& Y : Ys) {
                heis::wigner1_all(4, sg * l, Y[0], Y[1], a.data());
                heis::wigner1_all(4, -sg * l, Y[0], Y[1], b.data());
                for (int n = 0; n <= 4; ++n)
                    for (int m = 0; m <= 4; ++m) {
                        const cplx w = a[n * 5 + m];
                        sym = std::max(sym, std::abs(w - double(heis::parity_sign(n + m)) * b[m * 5 + n]));
                        top = std::max(top, std::abs(w));
                    }
            }
    r.bound("wigner_symmetry", "W(n, m, lambda, Y) = (-1)^{|n+m|} W(m, n, -lambda, Y)", "max abs, |n|,|m| <= 4", sym,
            ctx.cfg.tolerance("wigner_symmetry", 1e-12));
    r.bound("wigner_symmetry", "|W| <= 1", "max |W| over the samples", top, 1.0 + 1e-12);
}

void boundary_limit(Context& ctx, Report& r) {
    const std::array<std::array<double, 2>, 5> Ys{{{0.0, 0.0}, {0.3, -0.2}, {0.5, 0.5}, {-0.7, 0.2}, {1.0, -0.4}}};
    const double drift = ctx.cfg.tolerance("boundary_limit", 0.1);
    for (double xd : {0.5, 1.0, 2.0})
        for (int k : {0, 1, 2}) {
            // n_j = 4 * 2^j: lambda_j = xdot/(2 n_j + k + 1) roughly halves each step
            std::vector<double> C, lam, err;
            for (int j = 0; j < 7; ++j) {
                const int n = 4 << j;
                const double l = xd / (2.0 * n + k + 1);
                double e = 0.0;
                for (const auto& Y : Ys)
                    e = std::max(e, std::abs(heis::wigner1(n, n + k, l, Y[0], Y[1]) -
                                             heis::boundary_kernel1(xd, k, Y[0], Y[1])));
                lam.push_back(l);
                err.push_back(e);
                C.push_back(e / l);
            }
            const double early = *std::max_element(C.begin(), C.begin() + 3);
            const double late = *std::max_element(C.begin() + 3, C.end());
            r.bound("boundary_limit", "|W(n, n+k, lambda) - K(xdot, k)| <= C lambda",
                    fmt("xdot %g, k %d: C on the finer half / C on the coarser half - 1", xd, k), late / early - 1.0,
                    drift);
            const double order = std::log(err[5] / err[6]) / std::log(lam[5] / lam[6]);
            r.info("boundary_limit", fmt("xdot %g, k %d: C %.4e, error %.3e at lambda %.3e, observed order %.2f", xd, k,
                                         early, err.back(), lam.back(), order));
        }
}

void boundary_ops(Context& ctx, Report& r) {
    const heis::Profile P = heis::exp_floor(0.5, 1, 0.5);
    const FreqFunction th = heis::profile_function(P);
    const double tol = ctx.cfg.tolerance("boundary_ops", 2e-2);
    for (double xd : {0.5, 2.0, 3.0})
        for (int k : {0, 1, 2}) {
            const heis::BoundaryPoint b({xd}, MultiIndex{k});
            const auto bd = heis::boundary_diff(P, b);
            auto rel = [&](bool delta) {
                const double target = delta ? bd.delta : bd.dlambda;
                std::array<double, 2> e{};
                for (int i = 0; i < 2; ++i) {
                    const double l0 = 1e-3 * (i + 1);
                    const int n = static_cast<int>(std::lround((xd / l0 - k - 1) / 2));
                    const FreqPoint p(MultiIndex{n}, MultiIndex{n + k}, xd / (2.0 * n + k + 1));
                    const cplx v = delta ? heis::delta_hat(th, p) : heis::dlambda_hat(th, p);
                    e[i] = std::abs(v - target) / std::abs(target);
                }
                return e;
            };
            const auto ed = rel(true);
            const auto el = rel(false);
            r.bound("boundary_ops", "Delta-hat Theta_f -> xdot f'' + f' - k^2/(4 xdot) f",
                    fmt("xdot %g, k %d: relative error at lambda ~ 1e-3", xd, k), ed[0], tol);
            r.bound("boundary_ops", "D-hat_lambda Theta_f -> d_lambda f(xdot, k, 0)",
                    fmt("xdot %g, k %d: relative error at lambda ~ 1e-3", xd, k), el[0], tol);
            r.info("boundary_ops", fmt("xdot %g, k %d: error ratio 2e-3 / 1e-3: Delta %.2f, D_lambda %.2f", xd, k,
                                       ed[1] / ed[0], el[1] / el[0]));
        }
}

void ladder(Context& ctx, Report& r) {
    const auto& f = ctx.gaussian();
    const auto pts = identity_points(ctx.cfg.d);
    const auto fh = fourier(f);
    const double tol = ctx.cfg.tolerance("ladder", 1e-4);
    using heis::FreqLadder;
    auto lad = [&](FreqLadder k, double sign) {
        return [&fh, k, sign](const FreqPoint& p) { return sign * heis::ladder_freq(k, fh, p); };
    };
    const auto fx = fourier(heis::apply_phys_op(PhysOp::X, f, 0, kSpectral));
    const auto fxi = fourier(heis::apply_phys_op(PhysOp::Xi, f, 0, kSpectral));
    const auto fmp = fourier(heis::apply_phys_op(PhysOp::Mplus, f));
    const auto fmm = fourier(heis::apply_phys_op(PhysOp::Mminus, f));
    r.bound("ladder", "F(X_j f) = -M-hat_j^+ F f", "max abs, Gaussian", max_dev(pts, fx, lad(FreqLadder::Mplus, -1.0)),
            tol);
    const double xi = max_dev(pts, fxi, lad(FreqLadder::Mminus, -1.0));
    r.bound("ladder", "F(Xi_j f) = -M-hat_j^- F f", "max abs, Gaussian", xi, tol);
    r.bound("ladder", "F(M_j^+ f) = D-hat_j^+ F f", "max abs, Gaussian", max_dev(pts, fmp, lad(FreqLadder::Dplus, 1.0)),
            tol);
    r.bound("ladder", "F(M_j^- f) = D-hat_j^- F f", "max abs, Gaussian", max_dev(pts, fmm, lad(FreqLadder::Dminus, 1.0)),
            tol);
    r.info("ladder", fmt("F(Xi_j f) = +M-hat_j^- F f holds to %.3e (stated sign misses by %.3e)",
                         max_dev(pts, fxi, lad(FreqLadder::Mminus, 1.0)), xi));
}

}  // namespace heisapp::detail
