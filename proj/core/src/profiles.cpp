#include "heis/profiles.hpp"

#include <algorithm>
#include <cmath>

namespace heis {

std::array<double, 3> smooth_step(double t) {
    if (t <= 0.0) return {0.0, 0.0, 0.0};
    if (t >= 1.0) return {1.0, 0.0, 0.0};
    auto h = [](double u) { return std::exp(-1.0 / u); };
    auto h1 = [&](double u) { return h(u) / (u * u); };
    auto h2 = [&](double u) { return h(u) * (1.0 / (u * u * u * u) - 2.0 / (u * u * u)); };
    const double A = h(t), B = h(1.0 - t);
    const double A1 = h1(t), B1 = -h1(1.0 - t);
    const double A2 = h2(t), B2 = h2(1.0 - t);
    const double S = A + B;
    const double N = A1 * B - A * B1;
    const double N1 = A2 * B - A * B2;
    const double D = S * S, D1 = 2.0 * S * (A1 + B1);
    return {A / S, N / D, (N1 * D - N * D1) / (D * D)};
}

Profile heat_fixture(double t, int d) {
    check_dim(d);
    if (!(t > 0.0)) throw InvalidArgument("heat fixture: t must be positive");
    Profile P;
    P.d = d;
    P.tag = SupportTag::k_zero;
    P.name = "heat(" + std::to_string(t) + ")";
    auto base = [t, d](const XVec& x, const MultiIndex& k) {
        for (int j = 0; j < d; ++j)
            if (k[j] != 0) return 0.0;
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += x[j];
        return std::exp(-4.0 * t * s);
    };
    P.f = [base](const XVec& x, const MultiIndex& k, double) { return base(x, k); };
    P.dx = [base, t](const XVec& x, const MultiIndex& k, double, int) { return -4.0 * t * base(x, k); };
    P.dxx = [base, t](const XVec& x, const MultiIndex& k, double, int) { return 16.0 * t * t * base(x, k); };
    P.dl = [](const XVec&, const MultiIndex&, double) { return 0.0; };
    return P;
}

namespace {

double k_factor(int k) {
    const double c = std::exp(-0.5 * k * k);
    return (k < 0 && (k % 2 != 0)) ? -c : c;
}

// ramp(x) e^{-x} and its first two x-derivatives, one coordinate
std::array<double, 3> floored_exp(double x, double r0) {
    const double e = std::exp(-x);
    if (r0 <= 0.0) return {e, -e, e};
    const double half = 0.5 * r0;
    const auto s = smooth_step((x - half) / half);
    const double r = s[0], r1 = s[1] / half, r2 = s[2] / (half * half);
    return {r * e, (r1 - r) * e, (r2 - 2.0 * r1 + r) * e};
}

}  // namespace

Profile exp_floor(double r0, int d, double beta) {
    check_dim(d);
    if (r0 < 0.0) throw InvalidArgument("exp_floor: r0 must be nonnegative");
    Profile P;
    P.d = d;
    P.tag = SupportTag::x_floor;
    P.r0 = r0;
    P.name = "exp_floor(" + std::to_string(r0) + ")";
    // order 0, 1, 2 in coordinate j; plain values elsewhere
    auto eval = [r0, d, beta](const XVec& x, const MultiIndex& k, double lambda, int j, int order) {
        double v = std::exp(beta * lambda);
        for (int i = 0; i < d; ++i) {
            const auto g = floored_exp(x[i], r0);
            v *= (i == j ? g[order] : g[0]) * k_factor(k[i]);
        }
        return v;
    };
    P.f = [eval](const XVec& x, const MultiIndex& k, double l) { return eval(x, k, l, -1, 0); };
    P.dx = [eval](const XVec& x, const MultiIndex& k, double l, int j) { return eval(x, k, l, j, 1); };
    P.dxx = [eval](const XVec& x, const MultiIndex& k, double l, int j) { return eval(x, k, l, j, 2); };
    P.dl = [eval, beta](const XVec& x, const MultiIndex& k, double l) { return beta * eval(x, k, l, -1, 0); };
    return P;
}

Profile gauss_profile(double sigma, int d) {
    check_dim(d);
    if (!(sigma > 0.0)) throw InvalidArgument("gauss_profile: sigma must be positive");
    Profile P;
    P.d = d;
    P.tag = SupportTag::k_zero;
    P.name = "gauss_profile(" + std::to_string(sigma) + ")";
    const double s2 = sigma * sigma;
    auto base = [d, s2](const XVec& x, const MultiIndex& k) {
        for (int j = 0; j < d; ++j)
            if (k[j] != 0) return 0.0;
        double r = 0.0;
        for (int j = 0; j < d; ++j) r += x[j] * x[j];
        return std::exp(-0.5 * r / s2);
    };
    P.f = [base](const XVec& x, const MultiIndex& k, double) { return base(x, k); };
    P.dx = [base, s2](const XVec& x, const MultiIndex& k, double, int j) { return -x[j] / s2 * base(x, k); };
    P.dxx = [base, s2](const XVec& x, const MultiIndex& k, double, int j) {
        return (x[j] * x[j] / (s2 * s2) - 1.0 / s2) * base(x, k);
    };
    P.dl = [](const XVec&, const MultiIndex&, double) { return 0.0; };
    return P;
}

namespace {

XVec interior_x(const FreqPoint& p) {
    XVec x{};
    for (int j = 0; j < p.dim(); ++j) x[j] = std::abs(p.lambda) * (p.n[j] + p.m[j] + 1);
    return x;
}

}  // namespace

double profile_theta(const Profile& P, const CompletedPoint& p) {
    if (point_dim(p) != P.d) throw InvalidArgument("profile_theta: dimension mismatch");
    if (const auto* w = std::get_if<FreqPoint>(&p)) return P.f(interior_x(*w), w->m - w->n, w->lambda);
    const auto& b = std::get<BoundaryPoint>(p);
    XVec x{};
    for (int j = 0; j < P.d; ++j) x[j] = std::abs(b.xdot[j]);
    return P.f(x, b.k, 0.0);
}

FreqFunction profile_function(const Profile& P) {
    FreqFunction r(P.d, [P](const FreqPoint& p) { return cplx(profile_theta(P, p)); }, P.name);
    r.diagonal = P.tag == SupportTag::k_zero;
    r.df = [P](const FreqPoint& p) {
        const XVec x = interior_x(p);
        const MultiIndex k = p.m - p.n;
        const double sg = p.lambda > 0 ? 1.0 : -1.0;
        double v = P.dl(x, k, p.lambda);
        for (int j = 0; j < P.d; ++j) v += sg * (p.n[j] + p.m[j] + 1) * P.dx(x, k, p.lambda, j);
        return cplx(v);
    };
    r.bnd = [P](const BoundaryPoint& b) { return cplx(profile_theta(P, b)); };
    return r;
}

BoundaryDiff boundary_diff(const Profile& P, const BoundaryPoint& b) {
    if (P.d != 1 || b.dim() != 1) throw InvalidArgument("boundary_diff: only d = 1 is supported");
    if (P.tag != SupportTag::x_floor) throw InvalidArgument("boundary_diff: profile must be tagged x_floor");
    if (b.is_origin()) throw InvalidArgument("boundary_diff: undefined at the origin");
    const XVec x{std::abs(b.xdot[0])};
    const double k = b.k[0];
    BoundaryDiff r;
    r.delta = x[0] * P.dxx(x, b.k, 0.0, 0) + P.dx(x, b.k, 0.0, 0) - k * k / (4.0 * x[0]) * P.f(x, b.k, 0.0);
    r.dlambda = P.dl(x, b.k, 0.0);
    return r;
}

FreqFunction heat_profile(double t, int d) {
    FreqFunction r = profile_function(heat_fixture(t, d));
    r.label = "heat_profile(" + std::to_string(t) + ")";
    r.df = [t, d](const FreqPoint& p) {
        const double w = 2.0 * p.m.length() + d;
        const double sg = p.lambda > 0 ? 1.0 : -1.0;
        return cplx(-4.0 * t * w * sg * std::exp(-4.0 * t * std::abs(p.lambda) * w));
    };
    return r;
}

double m_equiv_fit(const FreqFunction& a, const FreqFunction& b, int M, int N, const std::vector<FreqPoint>& samples) {
    double C = 0.0;
    for (const auto& p : samples) {
        const double diff = std::abs(a(p) - b(p));
        if (diff == 0.0) continue;
        const double w = 1.0 + std::abs(p.lambda) * ((p.n + p.m).l1() + p.dim()) + (p.m - p.n).l1();
        C = std::max(C, diff / (std::pow(std::abs(p.lambda), M) * std::pow(w, -N)));
    }
    return C;
}

double parity_violation(const Profile& P, const std::vector<XVec>& xs, const std::vector<MultiIndex>& ks,
                        const std::vector<double>& lambdas) {
    double worst = 0.0;
    for (const auto& x : xs)
        for (const auto& k : ks)
            for (double l : lambdas)
                worst = std::max(worst, std::abs(P.f(x, -k, l) - parity_sign(k.l1()) * P.f(x, k, l)));
    return worst;
}

double decay_sup(const Profile& P, int order, const std::vector<XVec>& xs, const std::vector<MultiIndex>& ks,
                 const std::vector<double>& lambdas) {
    double worst = 0.0;
    for (const auto& x : xs)
        for (const auto& k : ks)
            for (double l : lambdas) {
                double r = 1.0 + k.l1() + std::abs(l);
                double v = std::abs(P.f(x, k, l)) + std::abs(P.dl(x, k, l));
                for (int j = 0; j < P.d; ++j) {
                    r += x[j];
                    v += std::abs(P.dx(x, k, l, j)) + std::abs(P.dxx(x, k, l, j));
                }
                worst = std::max(worst, std::pow(r, order) * v);
            }
    return worst;
}

}  // namespace heis
