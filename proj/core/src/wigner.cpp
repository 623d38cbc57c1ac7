#include "heis/wigner.hpp"

#include "heis/hermite.hpp"
#include "heis/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace heis {

namespace {

const QuadRule& gl24() {
    static const QuadRule rule = gauss_legendre(24);
    return rule;
}

// Nodes in v = |lambda|^{1/2} z covering the Gaussian envelopes of both
// factors, with panels no wider than one oscillation period.
QuadRule wigner_nodes(int n, int m, double a, double y, double eta, double refine) {
    const double rn = std::sqrt(2.0 * n + 1.0) + 10.0;
    const double rm = std::sqrt(2.0 * m + 1.0) + 10.0;
    const double half = std::min(rn, rm) + a * std::abs(y);
    const double k = std::sqrt(2.0 * std::max(n, m) + 1.0) + 2.0 * a * std::abs(eta);
    const double width = std::min(1.0, 2.0 * pi / k) / refine;
    const int panels = std::max(1, static_cast<int>(std::ceil(2.0 * half / width)));
    QuadRule r;
    r.nodes.reserve(panels * gl24().size());
    r.weights.reserve(panels * gl24().size());
    append_composite(-half, half, panels, gl24(), r);
    return r;
}

cplx wigner1_impl(int n, int m, double lambda, double y, double eta, double refine) {
    if (lambda == 0.0) throw InvalidArgument("wigner: lambda must be nonzero");
    if (n < 0 || m < 0) throw InvalidArgument("wigner: negative index");
    const double a = std::sqrt(std::abs(lambda));
    const double sg = lambda > 0 ? 1.0 : -1.0;
    const QuadRule q = wigner_nodes(n, m, a, y, eta, refine);
    const int nm = std::max(n, m);
    std::vector<double> hp(nm + 1), hq(nm + 1);
    cplx s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double v = q.nodes[i];
        hermite_all(n, a * y + v, hp.data());
        hermite_all(m, v - a * y, hq.data());
        const double ph = 2.0 * sg * a * eta * v;
        s += q.weights[i] * hp[n] * hq[m] * cplx(std::cos(ph), std::sin(ph));
    }
    return s;
}

}  // namespace

cplx wigner1(int n, int m, double lambda, double y, double eta) {
    return wigner1_impl(n, m, lambda, y, eta, 1.0);
}

cplx wigner1_checked(int n, int m, double lambda, double y, double eta, double tol) {
    const cplx coarse = wigner1_impl(n, m, lambda, y, eta, 1.0);
    const cplx fine = wigner1_impl(n, m, lambda, y, eta, 2.0);
    const double res = std::abs(fine - coarse);
    if (res > tol) throw ConvergenceError("wigner quadrature did not settle", res);
    return fine;
}

cplx wigner1_dlambda(int n, int m, double lambda, double y, double eta) {
    if (lambda == 0.0) throw InvalidArgument("wigner: lambda must be nonzero");
    const double a = std::sqrt(std::abs(lambda));
    const double sg = lambda > 0 ? 1.0 : -1.0;
    const QuadRule q = wigner_nodes(n, m, a, y, eta, 1.0);
    std::vector<double> hp(n + 1), dp(n + 1), hq(m + 1), dq(m + 1);
    cplx s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double v = q.nodes[i];
        hermite_all_with_derivative(n, a * y + v, hp.data(), dp.data());
        hermite_all_with_derivative(m, v - a * y, hq.data(), dq.data());
        const double ph = 2.0 * sg * a * eta * v;
        const cplx e(std::cos(ph), std::sin(ph));
        // derivative in a of the v-form integrand
        const cplx da = e * (cplx(0.0, 2.0 * sg * eta * v) * hp[n] * hq[m] + y * (dp[n] * hq[m] - hp[n] * dq[m]));
        s += q.weights[i] * da;
    }
    return s * (sg / (2.0 * a));
}

void wigner1_all(int n_max, double lambda, double y, double eta, cplx* out) {
    if (lambda == 0.0) throw InvalidArgument("wigner: lambda must be nonzero");
    const double a = std::sqrt(std::abs(lambda));
    const double sg = lambda > 0 ? 1.0 : -1.0;
    const QuadRule q = wigner_nodes(n_max, n_max, a, y, eta, 1.0);
    const int stride = n_max + 1;
    std::fill(out, out + stride * stride, cplx(0.0));
    std::vector<double> hp(stride), hq(stride);
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double v = q.nodes[i];
        hermite_all(n_max, a * y + v, hp.data());
        hermite_all(n_max, v - a * y, hq.data());
        const double ph = 2.0 * sg * a * eta * v;
        const cplx e = q.weights[i] * cplx(std::cos(ph), std::sin(ph));
        for (int n = 0; n <= n_max; ++n) {
            const cplx en = e * hp[n];
            for (int m = 0; m <= n_max; ++m) out[n * stride + m] += en * hq[m];
        }
    }
}

void wigner1_all_with_dlambda(int n_max, double lambda, double y, double eta, cplx* out, cplx* dout) {
    if (lambda == 0.0) throw InvalidArgument("wigner: lambda must be nonzero");
    const double a = std::sqrt(std::abs(lambda));
    const double sg = lambda > 0 ? 1.0 : -1.0;
    const QuadRule q = wigner_nodes(n_max, n_max, a, y, eta, 1.0);
    const int stride = n_max + 1;
    std::fill(out, out + stride * stride, cplx(0.0));
    std::fill(dout, dout + stride * stride, cplx(0.0));
    std::vector<double> hp(stride), dp(stride), hq(stride), dq(stride);
    const double chain = sg / (2.0 * a);
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double v = q.nodes[i];
        hermite_all_with_derivative(n_max, a * y + v, hp.data(), dp.data());
        hermite_all_with_derivative(n_max, v - a * y, hq.data(), dq.data());
        const double ph = 2.0 * sg * a * eta * v;
        const cplx e = q.weights[i] * cplx(std::cos(ph), std::sin(ph));
        const cplx osc = cplx(0.0, 2.0 * sg * eta * v);
        for (int n = 0; n <= n_max; ++n) {
            for (int m = 0; m <= n_max; ++m) {
                const double hh = hp[n] * hq[m];
                out[n * stride + m] += e * hh;
                dout[n * stride + m] += chain * e * (osc * hh + y * (dp[n] * hq[m] - hp[n] * dq[m]));
            }
        }
    }
}

cplx wigner_eval(const FreqPoint& p, std::span<const double> Y) {
    const int d = p.dim();
    if (static_cast<int>(Y.size()) != 2 * d) throw InvalidArgument("wigner_eval: Y must have 2d entries");
    cplx w = 1.0;
    for (int j = 0; j < d; ++j) w *= wigner1(p.n[j], p.m[j], p.lambda, Y[j], Y[d + j]);
    return w;
}

cplx boundary_kernel1(double xdot, int k, double y, double eta) {
    if (xdot == 0.0) return k == 0 ? 1.0 : 0.0;
    const double b = 2.0 * std::sqrt(std::abs(xdot));
    const double sg = xdot > 0 ? 1.0 : -1.0;
    const double rate = b * std::hypot(y, eta) + std::abs(k);
    const int M = 2 * static_cast<int>(std::ceil(rate)) + 64;
    cplx s = 0.0;
    for (int j = 0; j < M; ++j) {
        const double z = -pi + 2.0 * pi * j / M;
        const double ph = b * (y * std::sin(z) + eta * sg * std::cos(z)) + k * z;
        s += cplx(std::cos(ph), std::sin(ph));
    }
    return s / static_cast<double>(M);
}

cplx boundary_kernel(const BoundaryPoint& b, std::span<const double> Y) {
    const int d = b.dim();
    if (static_cast<int>(Y.size()) != 2 * d) throw InvalidArgument("boundary_kernel: Y must have 2d entries");
    cplx w = 1.0;
    for (int j = 0; j < d; ++j) w *= boundary_kernel1(b.xdot[j], b.k[j], Y[j], Y[d + j]);
    return w;
}

}  // namespace heis
