#include "heis/distributions.hpp"

#include "heis/transform.hpp"
#include "heis/wigner.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace heis {

namespace {

std::size_t plane_size(const GridSpec& g) {
    std::size_t n = 1;
    for (int j = 0; j < g.d; ++j) n *= static_cast<std::size_t>(g.ny) * g.neta;
    return n;
}

// Y-coordinates of plane index p (y_1..y_d then eta_1..eta_d, row-major).
PhysPoint plane_point(const GridSpec& g, std::size_t p) {
    PhysPoint w(g.d);
    for (int j = g.d - 1; j >= 0; --j) {
        w.eta[j] = g.coord(g.d + j, static_cast<int>(p % g.neta));
        p /= g.neta;
    }
    for (int j = g.d - 1; j >= 0; --j) {
        w.y[j] = g.coord(j, static_cast<int>(p % g.ny));
        p /= g.ny;
    }
    return w;
}

BoundaryPoint make_boundary(int d, const double* x, const MultiIndex& k) {
    return d == 1 ? BoundaryPoint({x[0]}, k) : BoundaryPoint({x[0], x[1]}, k);
}

}  // namespace

PlaneField PlaneField::sample(const GridSpec& g, const std::function<cplx(const PhysPoint&)>& fn) {
    g.validate();
    PlaneField out;
    out.grid = g;
    out.values.resize(plane_size(g));
    for (std::size_t p = 0; p < out.values.size(); ++p) out.values[p] = fn(plane_point(g, p));
    return out;
}

double PlaneField::cell() const {
    double c = 1.0;
    for (int j = 0; j < 2 * grid.d; ++j) c *= grid.axis_h(j);
    return c;
}

std::string to_string(DistTag t) {
    switch (t) {
        case DistTag::phys_function: return "phys_function";
        case DistTag::phys_dirac: return "phys_dirac";
        case DistTag::phys_one: return "phys_one";
        case DistTag::phys_g_tensor_one: return "phys_g_tensor_one";
        case DistTag::freq_function: return "freq_function";
        case DistTag::freq_I: return "freq_I";
        case DistTag::freq_dirac_0hat: return "freq_dirac_0hat";
        case DistTag::freq_pf: return "freq_pf";
        case DistTag::freq_boundary_measure: return "freq_boundary_measure";
    }
    return "?";
}

bool is_frequency_side(DistTag t) {
    switch (t) {
        case DistTag::phys_function:
        case DistTag::phys_dirac:
        case DistTag::phys_one:
        case DistTag::phys_g_tensor_one: return false;
        default: return true;
    }
}

Distribution::Distribution(int d, DistTerm t) : d_(d) {
    check_dim(d);
    terms_.push_back(std::move(t));
}

bool Distribution::frequency_side() const {
    return !terms_.empty() && is_frequency_side(terms_.front().tag);
}

std::string Distribution::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) os << " + ";
        const auto& t = terms_[i];
        if (t.coeff != cplx(1.0)) os << "(" << t.coeff.real() << (t.coeff.imag() < 0 ? "" : "+") << t.coeff.imag() << "i)*";
        os << to_string(t.tag);
        if (t.tag == DistTag::freq_pf) os << "(" << t.gamma << ")";
        if (t.tag == DistTag::freq_function) os << "(" << t.fn.label << ")";
    }
    return os.str();
}

Distribution& Distribution::operator+=(const Distribution& o) {
    if (terms_.empty()) {
        *this = o;
        return *this;
    }
    if (o.terms_.empty()) return *this;
    if (o.d_ != d_) throw InvalidArgument("distribution sum: dimension mismatch");
    if (o.frequency_side() != frequency_side()) throw InvalidArgument("distribution sum: mixed sides");
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
}

Distribution& Distribution::operator*=(cplx c) {
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

Distribution operator+(Distribution a, const Distribution& b) { return a += b; }

Distribution operator*(cplx c, Distribution a) { return a *= c; }

Distribution phys_function(std::shared_ptr<const SampledField> f) {
    DistTerm t;
    t.tag = DistTag::phys_function;
    const int d = f->dim();
    t.field = std::move(f);
    return Distribution(d, std::move(t));
}

Distribution phys_dirac(int d) {
    DistTerm t;
    t.tag = DistTag::phys_dirac;
    return Distribution(d, std::move(t));
}

Distribution phys_one(int d) {
    DistTerm t;
    t.tag = DistTag::phys_one;
    return Distribution(d, std::move(t));
}

Distribution phys_g_tensor_one(std::shared_ptr<const PlaneField> g) {
    DistTerm t;
    t.tag = DistTag::phys_g_tensor_one;
    const int d = g->grid.d;
    t.g = std::move(g);
    return Distribution(d, std::move(t));
}

Distribution freq_function(FreqFunction fn, int p, const PairOptions& opt) {
    SumOptions box = opt.sum;
    box.adaptive = false;
    const Integral n = l1m_norm(fn, p, opt.grid, box);
    if (!std::isfinite(n.value.real())) throw InvalidArgument("freq_function: weighted L1 norm is not finite");
    DistTerm t;
    t.tag = DistTag::freq_function;
    const int d = fn.d;
    t.fn = std::move(fn);
    t.p = p;
    return Distribution(d, std::move(t));
}

Distribution freq_I(int d) {
    DistTerm t;
    t.tag = DistTag::freq_I;
    return Distribution(d, std::move(t));
}

Distribution freq_dirac_0hat(int d, cplx coeff) {
    DistTerm t;
    t.tag = DistTag::freq_dirac_0hat;
    t.coeff = coeff;
    return Distribution(d, std::move(t));
}

Distribution freq_pf(int d, double gamma) {
    check_dim(d);
    if (!(gamma > d + 1.0 && gamma < d + 1.5))
        throw InvalidArgument("freq_pf: gamma must lie in (d+1, d+3/2)");
    DistTerm t;
    t.tag = DistTag::freq_pf;
    t.gamma = gamma;
    return Distribution(d, std::move(t));
}

Distribution freq_boundary_measure(int d, FreqFunction::Boundary density) {
    DistTerm t;
    t.tag = DistTag::freq_boundary_measure;
    t.density = std::move(density);
    return Distribution(d, std::move(t));
}

OriginValue theta_at_origin(const FreqFunction& theta, double lambda0, int levels) {
    OriginValue r;
    if (theta.has_boundary()) {
        r.value = theta.bnd(origin_point(theta.d));
        return r;
    }
    if (levels < 2) throw InvalidArgument("theta_at_origin: need at least two levels");
    const MultiIndex z(theta.d);
    std::vector<std::vector<cplx>> R(levels, std::vector<cplx>(levels));
    double lam = lambda0;
    for (int k = 0; k < levels; ++k, lam /= 4.0) {
        R[k][0] = 0.5 * (theta(FreqPoint(z, z, lam)) + theta(FreqPoint(z, z, -lam)));
        for (int j = 1; j <= k; ++j) {
            const double f = std::ldexp(1.0, j);
            R[k][j] = (f * R[k][j - 1] - R[k - 1][j - 1]) / (f - 1.0);
        }
    }
    r.value = R[levels - 1][levels - 1];
    r.error = std::abs(R[levels - 1][levels - 1] - R[levels - 1][levels - 2]);
    return r;
}

namespace {

PairResult pair_I(const FreqFunction& theta, const PairOptions& opt) {
    FreqFunction diag = theta;
    diag.diagonal = true;
    const Integral I = integrate(diag, opt.grid, opt.sum);
    return {I.value, I.tail_bound};
}

// Shell |n| = L of N^d.
std::vector<MultiIndex> shell(int d, int L) {
    std::vector<MultiIndex> out;
    if (d == 1) {
        out.push_back(MultiIndex{L});
    } else {
        for (int a = 0; a <= L; ++a) out.push_back(MultiIndex{a, L - a});
    }
    return out;
}

PairResult pair_pf(const FreqFunction& theta, double gamma, const PairOptions& opt) {
    const int d = theta.d;
    const LambdaGrid& grid = opt.grid;
    const int P = grid.points_per_sign();
    const std::vector<double> w = grid.weights(d);
    const double lmin = grid[P], lmax = grid[grid.size() - 1];
    const cplx t0 = theta_at_origin(theta).value;
    const int N = opt.sum.n_max;
    PairResult r;
    for (int L = 0; L <= N; ++L) {
        const double c = std::pow(2.0 * L + d, -gamma);
        cplx shell_sum = 0.0;
        for (const MultiIndex& n : shell(d, L)) {
            auto h = [&](int i) {
                const double lam = grid[P + i];
                return (theta(FreqPoint(n, n, lam)) + theta(FreqPoint(n, n, -lam)) - 2.0 * t0) * c *
                       std::pow(lam, -gamma);
            };
            cplx J = 0.0;
            for (int i = 0; i < P; ++i) J += w[P + i] * h(i);
            // [0, lambda_min]: replace the smooth end piece by a local power fit
            const cplx h0 = h(0), h1 = h(1);
            J -= h0 * std::pow(lmin, d + 1) / (d + 1.0);
            if (std::abs(h0) > 0.0 && std::abs(h1) > 0.0) {
                const double pw = std::log(std::abs(h1) / std::abs(h0)) / std::log(grid[P + 1] / lmin);
                const double e = d + 1.0 + pw;
                J += e > 0.0 ? h0 * std::pow(lmin, d + 1) / e : cplx(std::numeric_limits<double>::infinity());
            }
            // [lambda_max, inf): theta has decayed, only -2 theta(0) remains
            J += -2.0 * t0 * c * std::pow(lmax, d + 1 - gamma) / (gamma - d - 1.0);
            shell_sum += J;
        }
        r.value += shell_sum;
        if (L == N) {
            // beyond N the per-n integral scales like (2|n|+d)^{-d-1}
            const double scale = std::pow(2.0 * N + d, d + 1);
            const double zeta = d == 1 ? 0.25 * boost::math::trigamma(N + 1.5) : 0.125 * boost::math::trigamma(N + 2.0);
            const cplx tail = shell_sum / static_cast<double>(shell(d, L).size()) * scale * zeta;
            r.value += tail;
            r.tail_bound = std::abs(tail);
        }
    }
    return r;
}

PairResult pair_boundary(const FreqFunction::Boundary& density, const FreqFunction& theta, const PairOptions& opt) {
    if (!theta.has_boundary()) throw InvalidArgument("boundary measure: test function has no boundary extension");
    const int d = theta.d;
    const int K = opt.k_max;
    boost::math::quadrature::exp_sinh<double> q;
    PairResult r;
    const int span = 2 * K + 1;
    const int total = d == 1 ? span : span * span;
    for (int t = 0; t < total; ++t) {
        MultiIndex k(d);
        if (d == 1)
            k[0] = t - K;
        else {
            k[0] = t / span - K;
            k[1] = t % span - K;
        }
        for (double sg : {-1.0, 1.0}) {
            auto at = [&](const double* x) {
                double xs[kMaxDim] = {0.0, 0.0};
                for (int j = 0; j < d; ++j) xs[j] = sg * x[j];
                const BoundaryPoint b = make_boundary(d, xs, k);
                return density(b) * theta.bnd(b);
            };
            double err = 0.0;
            auto part = [&](auto proj) {
                if (d == 1)
                    return q.integrate([&](double x) { return proj(at(&x)); }, 1e-10, &err);
                return q.integrate(
                    [&](double x1) {
                        return q.integrate([&](double x2) {
                            const double x[2] = {x1, x2};
                            return proj(at(x));
                        }, 1e-10);
                    },
                    1e-10, &err);
            };
            const double re = part([](cplx v) { return v.real(); });
            const double im = part([](cplx v) { return v.imag(); });
            r.value += cplx(re, im);
            r.tail_bound += err;
        }
    }
    r.value *= std::ldexp(1.0, -d);
    r.tail_bound *= std::ldexp(1.0, -d);
    return r;
}

}  // namespace

PairResult pair(const Distribution& T, const FreqFunction& theta, const PairOptions& opt) {
    if (!T.frequency_side()) throw InvalidArgument("pair: distribution is not on the frequency side");
    if (theta.d != T.dim()) throw InvalidArgument("pair: dimension mismatch");
    PairResult out;
    for (const auto& t : T.terms()) {
        PairResult r;
        switch (t.tag) {
            case DistTag::freq_function: {
                const FreqFunction a = t.fn;
                FreqFunction prod(theta.d, [a, theta](const FreqPoint& p) { return a(p) * theta(p); }, "product");
                prod.diagonal = a.diagonal || theta.diagonal;
                if (a.n_max >= 0 && theta.n_max >= 0)
                    prod.n_max = std::min(a.n_max, theta.n_max);
                else
                    prod.n_max = std::max(a.n_max, theta.n_max);
                const Integral I = integrate(prod, opt.grid, opt.sum);
                r = {I.value, I.tail_bound};
                break;
            }
            case DistTag::freq_I: r = pair_I(theta, opt); break;
            case DistTag::freq_dirac_0hat: {
                const OriginValue o = theta_at_origin(theta);
                r = {o.value, o.error};
                break;
            }
            case DistTag::freq_pf: r = pair_pf(theta, t.gamma, opt); break;
            case DistTag::freq_boundary_measure: r = pair_boundary(t.density, theta, opt); break;
            default: throw InvalidArgument("pair: physical-side term");
        }
        out.value += t.coeff * r.value;
        out.tail_bound += std::abs(t.coeff) * r.tail_bound;
    }
    return out;
}

cplx pair_phys(const Distribution& T, const SampledField& h) {
    if (T.frequency_side()) throw InvalidArgument("pair_phys: distribution is not on the physical side");
    const GridSpec& G = h.grid();
    cplx out = 0.0;
    for (const auto& t : T.terms()) {
        cplx v = 0.0;
        switch (t.tag) {
            case DistTag::phys_function: {
                if (!(t.field->grid() == G)) throw InvalidArgument("pair_phys: grids differ");
                for (std::size_t i = 0; i < h.size(); ++i) v += t.field->data()[i] * h.data()[i];
                v *= G.cell();
                break;
            }
            case DistTag::phys_dirac: v = h.interpolate(PhysPoint(G.d)); break;
            case DistTag::phys_one: v = h.integral(); break;
            case DistTag::phys_g_tensor_one: {
                const GridSpec& g = t.g->grid;
                if (g.ny != G.ny || g.neta != G.neta || g.Ly != G.Ly || g.Leta != G.Leta || g.d != G.d)
                    throw InvalidArgument("pair_phys: plane grid differs");
                const int ns = G.ns;
                for (std::size_t p = 0; p < t.g->size(); ++p) {
                    cplx col = 0.0;
                    for (int k = 0; k < ns; ++k) col += h.data()[p * ns + k];
                    v += t.g->values[p] * col;
                }
                v *= G.cell();
                break;
            }
            default: throw InvalidArgument("pair_phys: frequency-side term");
        }
        out += t.coeff * v;
    }
    return out;
}

cplx g_hat_boundary(const PlaneField& g, const BoundaryPoint& b) {
    const GridSpec& G = g.grid;
    if (b.dim() != G.d) throw InvalidArgument("g_hat_boundary: dimension mismatch");
    cplx acc = 0.0;
    std::vector<double> Y(2 * G.d);
    for (std::size_t p = 0; p < g.size(); ++p) {
        if (g.values[p] == cplx(0.0)) continue;
        const PhysPoint w = plane_point(G, p);
        for (int j = 0; j < G.d; ++j) {
            Y[j] = w.y[j];
            Y[G.d + j] = w.eta[j];
        }
        acc += std::conj(boundary_kernel(b, Y)) * g.values[p];
    }
    return acc * g.cell();
}

Distribution fourier_distribution(const Distribution& T, int n_max) {
    if (T.frequency_side()) throw InvalidArgument("fourier_distribution: expects a physical-side distribution");
    const int d = T.dim();
    Distribution out;
    for (const auto& t : T.terms()) {
        Distribution piece;
        switch (t.tag) {
            case DistTag::phys_dirac: piece = freq_I(d); break;
            case DistTag::phys_one: piece = freq_dirac_0hat(d, std::pow(pi, d + 1) / std::ldexp(1.0, d - 1)); break;
            case DistTag::phys_g_tensor_one: {
                auto g = t.g;
                piece = freq_boundary_measure(d, [g](const BoundaryPoint& b) { return g_hat_boundary(*g, b); });
                break;
            }
            case DistTag::phys_function: {
                DistTerm ft;
                ft.tag = DistTag::freq_function;
                ft.fn = ForwardEvaluator(t.field, n_max).as_function();
                piece = Distribution(d, std::move(ft));
                break;
            }
            default: throw InvalidArgument("fourier_distribution: frequency-side term");
        }
        piece *= t.coeff;
        out += piece;
    }
    return out;
}

FreqFunction make_f_gamma(double gamma, int d) {
    if (!(gamma > 0.0)) throw InvalidArgument("f_gamma: gamma must be positive");
    FreqFunction r(d, [gamma](const FreqPoint& p) {
        return cplx(std::pow(std::abs(p.lambda) * (2.0 * p.m.length() + p.dim()), -gamma));
    }, "f_gamma(" + std::to_string(gamma) + ")");
    r.diagonal = true;
    r.df = [gamma](const FreqPoint& p) {
        const double v = std::pow(std::abs(p.lambda) * (2.0 * p.m.length() + p.dim()), -gamma);
        return cplx(-gamma * v / p.lambda);
    };
    return r;
}

}  // namespace heis
