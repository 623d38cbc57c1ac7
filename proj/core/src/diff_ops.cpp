#include "heis/diff_ops.hpp"

#include <cmath>
#include <map>

namespace heis {

namespace {

FreqPoint shift(const FreqPoint& p, int j, int dn, int dm) {
    FreqPoint q = p;
    q.n[j] += dn;
    q.m[j] += dm;
    return q;
}

}  // namespace

cplx delta_hat(const FreqFunction& theta, const FreqPoint& p) {
    const int d = p.dim();
    const double inv = 1.0 / (2.0 * std::abs(p.lambda));
    cplx r = -inv * static_cast<double>((p.n + p.m).l1() + d) * theta(p);
    for (int j = 0; j < d; ++j) {
        r += inv * std::sqrt((p.n[j] + 1.0) * (p.m[j] + 1.0)) * theta(shift(p, j, 1, 1));
        if (p.n[j] > 0 && p.m[j] > 0) r += inv * std::sqrt(static_cast<double>(p.n[j]) * p.m[j]) * theta(shift(p, j, -1, -1));
    }
    return r;
}

cplx dlambda_hat(const FreqFunction& theta, const FreqPoint& p) {
    const int d = p.dim();
    const double inv = 1.0 / (2.0 * p.lambda);
    cplx r = theta.dlambda(p) + (d * inv) * theta(p);
    for (int j = 0; j < d; ++j) {
        if (p.n[j] > 0 && p.m[j] > 0) r += inv * std::sqrt(static_cast<double>(p.n[j]) * p.m[j]) * theta(shift(p, j, -1, -1));
        r -= inv * std::sqrt((p.n[j] + 1.0) * (p.m[j] + 1.0)) * theta(shift(p, j, 1, 1));
    }
    return r;
}

cplx sigma0_hat(const FreqFunction& theta, const FreqPoint& p) {
    const FreqPoint q(p.m, p.n, -p.lambda);
    const double sg = parity_sign((p.n + p.m).l1());
    return (theta(p) - sg * theta(q)) / p.lambda;
}

FreqLadder parse_freq_ladder(const std::string& name) {
    static const std::map<std::string, FreqLadder> table = {{"Mplus", FreqLadder::Mplus},
                                                            {"Mminus", FreqLadder::Mminus},
                                                            {"Dplus", FreqLadder::Dplus},
                                                            {"Dminus", FreqLadder::Dminus},
                                                            {"M", FreqLadder::M}};
    auto it = table.find(name);
    if (it == table.end()) throw InvalidArgument("unknown frequency operator '" + name + "'");
    return it->second;
}

cplx ladder_freq(FreqLadder kind, const FreqFunction& theta, const FreqPoint& p, int j) {
    const int d = p.dim();
    if (kind != FreqLadder::M && (j < 0 || j >= d)) throw InvalidArgument("ladder_freq: coordinate out of range");
    const double lam = p.lambda;
    const double a = std::sqrt(std::abs(lam));
    const int nj = kind == FreqLadder::M ? 0 : p.n[j];
    const int mj = kind == FreqLadder::M ? 0 : p.m[j];
    auto m_up = [&] { return std::sqrt(2.0 * mj + 2.0) * theta(shift(p, j, 0, 1)); };
    auto m_dn = [&] { return mj > 0 ? std::sqrt(2.0 * mj) * theta(shift(p, j, 0, -1)) : cplx(0.0); };
    auto n_up = [&] { return std::sqrt(2.0 * nj + 2.0) * theta(shift(p, j, 1, 0)); };
    auto n_dn = [&] { return nj > 0 ? std::sqrt(2.0 * nj) * theta(shift(p, j, -1, 0)) : cplx(0.0); };
    switch (kind) {
        case FreqLadder::Mplus: return a * (m_up() - m_dn());
        case FreqLadder::Mminus: return cplx(0.0, lam / a) * (m_up() + m_dn());
        case FreqLadder::Dplus:
            return lam > 0 ? (n_dn() - m_up()) / (2.0 * a) : (n_up() - m_dn()) / (2.0 * a);
        case FreqLadder::Dminus:
            return lam < 0 ? (n_dn() - m_up()) / (2.0 * a) : (n_up() - m_dn()) / (2.0 * a);
        case FreqLadder::M: return 4.0 * std::abs(lam) * (2.0 * p.m.length() + d) * theta(p);
    }
    throw InvalidArgument("ladder_freq: unhandled kind");
}

namespace {

// Shifted evaluations reach one index beyond the source truncation.
FreqFunction derived(const FreqFunction& theta, FreqFunction::Interior fn, const std::string& name) {
    FreqFunction r(theta.d, std::move(fn), name + "(" + theta.label + ")");
    r.lambda_smooth = theta.lambda_smooth;
    return r;
}

}  // namespace

FreqFunction delta_hat_fn(const FreqFunction& theta) {
    FreqFunction r = derived(theta, [theta](const FreqPoint& p) { return delta_hat(theta, p); }, "delta_hat");
    r.diagonal = theta.diagonal;
    return r;
}

FreqFunction dlambda_hat_fn(const FreqFunction& theta) {
    FreqFunction r = derived(theta, [theta](const FreqPoint& p) { return dlambda_hat(theta, p); }, "dlambda_hat");
    r.diagonal = theta.diagonal;
    return r;
}

FreqFunction sigma0_hat_fn(const FreqFunction& theta) {
    FreqFunction r = derived(theta, [theta](const FreqPoint& p) { return sigma0_hat(theta, p); }, "sigma0_hat");
    r.diagonal = theta.diagonal;
    return r;
}

FreqFunction ladder_freq_fn(FreqLadder kind, const FreqFunction& theta, int j) {
    FreqFunction r = derived(theta, [kind, theta, j](const FreqPoint& p) { return ladder_freq(kind, theta, p, j); },
                             "ladder");
    r.diagonal = kind == FreqLadder::M && theta.diagonal;
    if (kind == FreqLadder::M && theta.df) {
        r.df = [theta](const FreqPoint& p) {
            const double c = 4.0 * (2.0 * p.m.length() + p.dim());
            const double sg = p.lambda > 0 ? 1.0 : -1.0;
            return c * (sg * theta(p) + std::abs(p.lambda) * theta.dlambda(p));
        };
    }
    return r;
}

}  // namespace heis
