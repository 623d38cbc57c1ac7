#include "heis/heisenberg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>

namespace heis {

PhysPoint::PhysPoint(double y1, double eta1, double s1) : s(s1), d(1) {
    y[0] = y1;
    eta[0] = eta1;
}

double PhysPoint::norm_Y2() const {
    double r = 0;
    for (int j = 0; j < d; ++j) r += y[j] * y[j] + eta[j] * eta[j];
    return r;
}

PhysPoint group_mul(const PhysPoint& a, const PhysPoint& b) {
    if (a.d != b.d) throw InvalidArgument("group_mul: dimension mismatch");
    PhysPoint r(a.d);
    r.s = a.s + b.s;
    for (int j = 0; j < a.d; ++j) {
        r.y[j] = a.y[j] + b.y[j];
        r.eta[j] = a.eta[j] + b.eta[j];
        r.s += 2.0 * (a.eta[j] * b.y[j] - b.eta[j] * a.y[j]);
    }
    return r;
}

PhysPoint group_inv(const PhysPoint& a) {
    PhysPoint r(a.d);
    for (int j = 0; j < a.d; ++j) {
        r.y[j] = -a.y[j];
        r.eta[j] = -a.eta[j];
    }
    r.s = -a.s;
    return r;
}

PhysPoint dilate(double a, const PhysPoint& w) {
    if (!(a > 0.0)) throw InvalidArgument("dilate: factor must be positive");
    PhysPoint r(w.d);
    for (int j = 0; j < w.d; ++j) {
        r.y[j] = a * w.y[j];
        r.eta[j] = a * w.eta[j];
    }
    r.s = a * a * w.s;
    return r;
}

void GridSpec::validate() const {
    check_dim(d);
    if (ny < 5 || neta < 5 || ns < 5) throw InvalidArgument("GridSpec: at least 5 points per axis");
    if (!(Ly > 0 && Leta > 0 && Ls > 0)) throw InvalidArgument("GridSpec: half-extents must be positive");
}

int GridSpec::axis_len(int a) const {
    if (a < d) return ny;
    if (a < 2 * d) return neta;
    return ns;
}

double GridSpec::axis_half(int a) const {
    if (a < d) return Ly;
    if (a < 2 * d) return Leta;
    return Ls;
}

std::size_t GridSpec::size() const {
    std::size_t n = 1;
    for (int a = 0; a < axes(); ++a) n *= static_cast<std::size_t>(axis_len(a));
    return n;
}

double GridSpec::cell() const {
    double c = 1.0;
    for (int a = 0; a < axes(); ++a) c *= axis_h(a);
    return c;
}

SampledField::SampledField(const GridSpec& g) : g_(g) {
    g_.validate();
    std::size_t st = 1;
    for (int a = g_.axes() - 1; a >= 0; --a) {
        strides_[a] = st;
        st *= static_cast<std::size_t>(g_.axis_len(a));
    }
    data_.assign(st, cplx(0.0));
}

SampledField SampledField::sample(const GridSpec& g, const std::function<cplx(const PhysPoint&)>& f) {
    SampledField r(g);
    for (std::size_t i = 0; i < r.size(); ++i) r.data_[i] = f(r.point(i));
    return r;
}

PhysPoint SampledField::point(std::size_t i) const {
    PhysPoint p(g_.d);
    for (int j = 0; j < g_.d; ++j) {
        p.y[j] = g_.coord(j, axis_index(i, j));
        p.eta[j] = g_.coord(g_.d + j, axis_index(i, g_.d + j));
    }
    p.s = g_.coord(2 * g_.d, axis_index(i, 2 * g_.d));
    return p;
}

namespace {

// Cubic Lagrange weights for fractional offset t in [0,1) on nodes -1..2.
std::array<double, 4> cubic_weights(double t) {
    return {-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
            -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
}

}  // namespace

cplx SampledField::interpolate(const PhysPoint& w) const {
    const int A = g_.axes();
    std::array<int, 2 * kMaxDim + 1> base{};
    std::array<std::array<double, 4>, 2 * kMaxDim + 1> wts{};
    for (int a = 0; a < A; ++a) {
        double x;
        if (a < g_.d) x = w.y[a];
        else if (a < 2 * g_.d) x = w.eta[a - g_.d];
        else x = w.s;
        const double u = (x + g_.axis_half(a)) / g_.axis_h(a);
        if (u < -1.0 || u > g_.axis_len(a)) return 0.0;
        const double fl = std::floor(u);
        base[a] = static_cast<int>(fl) - 1;
        wts[a] = cubic_weights(u - fl);
    }
    cplx s = 0.0;
    const int taps = 1 << (2 * A);
    for (int t = 0; t < taps; ++t) {
        double wt = 1.0;
        std::size_t idx = 0;
        bool inside = true;
        for (int a = 0; a < A; ++a) {
            const int o = (t >> (2 * a)) & 3;
            const int i = base[a] + o;
            if (i < 0 || i >= g_.axis_len(a)) {
                inside = false;
                break;
            }
            wt *= wts[a][o];
            idx += static_cast<std::size_t>(i) * strides_[a];
        }
        if (inside) s += wt * data_[idx];
    }
    return s;
}

double SampledField::sup_norm() const {
    double m = 0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double SampledField::l1_norm() const {
    double s = 0;
    for (const auto& v : data_) s += std::abs(v);
    return s * g_.cell();
}

double SampledField::l2_norm() const {
    double s = 0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s * g_.cell());
}

cplx SampledField::integral() const {
    cplx s = 0;
    for (const auto& v : data_) s += v;
    return s * g_.cell();
}

SampledField& SampledField::operator+=(const SampledField& o) {
    if (!(g_ == o.g_)) throw InvalidArgument("field grids differ");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

SampledField& SampledField::operator-=(const SampledField& o) {
    if (!(g_ == o.g_)) throw InvalidArgument("field grids differ");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

SampledField& SampledField::operator*=(cplx c) {
    for (auto& v : data_) v *= c;
    return *this;
}

SampledField operator+(SampledField a, const SampledField& b) { return a += b; }
SampledField operator-(SampledField a, const SampledField& b) { return a -= b; }
SampledField operator*(cplx c, SampledField a) { return a *= c; }

SampledField convolve(const SampledField& f, const SampledField& g) {
    const GridSpec& G = f.grid();
    if (!(G == g.grid())) throw InvalidArgument("convolve: fields must share one grid");
    if (G.ny % 2 == 0 || G.neta % 2 == 0 || G.ns % 2 == 0)
        throw InvalidArgument("convolve: odd point counts required");
    const int d = G.d;
    const int ns = G.ns;
    const double hs = G.axis_h(2 * d);
    const std::size_t nY = f.size() / ns;
    // Y-part index tuples
    std::vector<std::array<int, 2 * kMaxDim>> yidx(nY);
    for (std::size_t p = 0; p < nY; ++p)
        for (int a = 0; a < 2 * d; ++a) yidx[p][a] = f.axis_index(p * ns, a);

    SampledField out(G);
    std::vector<cplx> shifted(2 * ns - 1);
    for (std::size_t pw = 0; pw < nY; ++pw) {
        const PhysPoint w = f.point(pw * ns);
        for (std::size_t pv = 0; pv < nY; ++pv) {
            const cplx* gl = &g.data()[pv * ns];
            bool zero = true;
            for (int k = 0; k < ns; ++k)
                if (gl[k] != cplx(0.0)) {
                    zero = false;
                    break;
                }
            if (zero) continue;
            // Y index of w - v
            std::size_t fy = 0;
            bool inside = true;
            for (int a = 0; a < 2 * d; ++a) {
                const int c = (G.axis_len(a) - 1) / 2;
                const int i = yidx[pw][a] - yidx[pv][a] + c;
                if (i < 0 || i >= G.axis_len(a)) {
                    inside = false;
                    break;
                }
                fy += static_cast<std::size_t>(i) * f.stride(a);
            }
            if (!inside) continue;
            const PhysPoint v = f.point(pv * ns);
            double delta = 0;
            for (int j = 0; j < d; ++j) delta += 2.0 * (v.eta[j] * w.y[j] - w.eta[j] * v.y[j]);
            // shifted[r] = f_line at s-index (r - (ns-1)) + c + delta/hs, r = i_w - i_v + ns - 1
            const double u = delta / hs;
            const double fl = std::floor(u);
            const auto wt = cubic_weights(u - fl);
            const int c = (ns - 1) / 2;
            const cplx* fl_line = &f.data()[fy];
            for (int r = 0; r < 2 * ns - 1; ++r) {
                const int i0 = r - (ns - 1) + c + static_cast<int>(fl) - 1;
                cplx acc = 0.0;
                for (int t = 0; t < 4; ++t) {
                    const int i = i0 + t;
                    if (i >= 0 && i < ns) acc += wt[t] * fl_line[i];
                }
                shifted[r] = acc;
            }
            cplx* o = &out.data()[pw * ns];
            for (int iw = 0; iw < ns; ++iw) {
                cplx acc = 0.0;
                for (int iv = 0; iv < ns; ++iv) acc += shifted[iw - iv + ns - 1] * gl[iv];
                o[iw] += acc;
            }
        }
    }
    out *= G.cell();
    return out;
}

SampledField left_translate(const SampledField& f, const PhysPoint& w) {
    SampledField r(f.grid());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.interpolate(group_mul(w, r.point(i)));
    return r;
}

namespace {

template <class Fn>
void along_axis(const SampledField& f, SampledField& out, int axis, Fn&& line_op) {
    const GridSpec& G = f.grid();
    const int n = G.axis_len(axis);
    const std::size_t st = f.stride(axis);
    std::vector<cplx> in(n), res(n);
    for (std::size_t base = 0; base < f.size(); ++base) {
        if (f.axis_index(base, axis) != 0) continue;
        for (int i = 0; i < n; ++i) in[i] = f[base + i * st];
        line_op(in.data(), res.data(), n);
        for (int i = 0; i < n; ++i) out[base + i * st] = res[i];
    }
}

void fd4_line(const cplx* f, cplx* o, int n, double h) {
    const double c = 1.0 / (12.0 * h);
    o[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
    o[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
    for (int i = 2; i < n - 2; ++i) o[i] = c * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
    o[n - 2] = c * (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]);
    o[n - 1] = c * (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]);
}

struct TrigMatrices {
    std::vector<double> diff;  // D[i*n+j]
    std::vector<double> anti;  // Q[i*n+j], antiderivative of mean-free data
};

// Trigonometric interpolation on n points of spacing h, period n*h. The
// Nyquist mode (even n) is dropped.
const TrigMatrices& trig_matrices(int n, double h) {
    static std::mutex mu;
    static std::map<std::pair<int, double>, TrigMatrices> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, h);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    TrigMatrices t;
    t.diff.assign(n * n, 0.0);
    t.anti.assign(n * n, 0.0);
    const int kmax = (n - 1) / 2;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double dsum = 0, asum = 0;
            for (int k = 1; k <= kmax; ++k) {
                const double kap = 2.0 * pi * k / (n * h);
                const double sn = std::sin(kap * (i - j) * h);
                dsum += -2.0 * kap * sn;
                asum += 2.0 * sn / kap;
            }
            t.diff[i * n + j] = dsum / n;
            t.anti[i * n + j] = asum / n;
        }
    return cache.emplace(key, std::move(t)).first->second;
}

SampledField primitive(const SampledField& f, DerivScheme scheme) {
    const GridSpec& G = f.grid();
    const int axis = 2 * G.d;
    const double h = G.axis_h(axis);
    SampledField out(G);
    if (scheme == DerivScheme::fd4) {
        along_axis(f, out, axis, [h](const cplx* in, cplx* o, int n) {
            std::vector<cplx> g(n), dg(n);
            for (int i = 0; i < n; ++i) g[i] = 0.5 * (in[i] - in[n - 1 - i]);
            for (int i = 1; i + 1 < n; ++i) dg[i] = (g[i + 1] - g[i - 1]) / (2.0 * h);
            dg[0] = (-3.0 * g[0] + 4.0 * g[1] - g[2]) / (2.0 * h);
            dg[n - 1] = (3.0 * g[n - 1] - 4.0 * g[n - 2] + g[n - 3]) / (2.0 * h);
            // trapezoid plus the Euler-Maclaurin end correction
            o[0] = 0.0;
            for (int i = 1; i < n; ++i) o[i] = o[i - 1] + 0.5 * h * (g[i - 1] + g[i]);
            for (int i = 1; i < n; ++i) o[i] -= h * h / 12.0 * (dg[i] - dg[0]);
        });
    } else {
        const TrigMatrices& T = trig_matrices(G.ns, h);
        along_axis(f, out, axis, [&T](const cplx* in, cplx* o, int n) {
            std::vector<cplx> g(n);
            for (int i = 0; i < n; ++i) g[i] = 0.5 * (in[i] - in[n - 1 - i]);
            for (int i = 0; i < n; ++i) {
                cplx acc = 0.0;
                for (int j = 0; j < n; ++j) acc += T.anti[i * n + j] * g[j];
                o[i] = acc;
            }
            const cplx o0 = o[0];
            for (int i = 0; i < n; ++i) o[i] -= o0;
        });
    }
    return out;
}

SampledField multiply(const SampledField& f, const std::function<cplx(const PhysPoint&)>& m) {
    SampledField r(f.grid());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = m(f.point(i)) * f[i];
    return r;
}

}  // namespace

SampledField partial(const SampledField& f, int axis, DerivScheme scheme) {
    const GridSpec& G = f.grid();
    if (axis < 0 || axis >= G.axes()) throw InvalidArgument("partial: axis out of range");
    const double h = G.axis_h(axis);
    SampledField out(G);
    if (scheme == DerivScheme::fd4) {
        along_axis(f, out, axis, [h](const cplx* in, cplx* o, int n) { fd4_line(in, o, n, h); });
    } else {
        const TrigMatrices& T = trig_matrices(G.axis_len(axis), h);
        along_axis(f, out, axis, [&T](const cplx* in, cplx* o, int n) {
            for (int i = 0; i < n; ++i) {
                cplx acc = 0.0;
                for (int j = 0; j < n; ++j) acc += T.diff[i * n + j] * in[j];
                o[i] = acc;
            }
        });
    }
    return out;
}

PhysOp parse_phys_op(const std::string& name) {
    static const std::map<std::string, PhysOp> table = {
        {"X", PhysOp::X},         {"Xi", PhysOp::Xi},         {"S", PhysOp::S},   {"Xr", PhysOp::Xr},
        {"Xir", PhysOp::Xir},     {"DeltaH", PhysOp::DeltaH}, {"M2", PhysOp::M2}, {"M0", PhysOp::M0},
        {"MH", PhysOp::MH},       {"Mplus", PhysOp::Mplus},   {"Mminus", PhysOp::Mminus},
        {"P", PhysOp::P}};
    auto it = table.find(name);
    if (it == table.end()) throw InvalidArgument("unknown physical operator '" + name + "'");
    return it->second;
}

std::string to_string(PhysOp op) {
    switch (op) {
        case PhysOp::X: return "X";
        case PhysOp::Xi: return "Xi";
        case PhysOp::S: return "S";
        case PhysOp::Xr: return "Xr";
        case PhysOp::Xir: return "Xir";
        case PhysOp::DeltaH: return "DeltaH";
        case PhysOp::M2: return "M2";
        case PhysOp::M0: return "M0";
        case PhysOp::MH: return "MH";
        case PhysOp::Mplus: return "Mplus";
        case PhysOp::Mminus: return "Mminus";
        case PhysOp::P: return "P";
    }
    return "?";
}

SampledField apply_phys_op(PhysOp op, const SampledField& f, int j, DerivScheme scheme) {
    const int d = f.dim();
    const bool indexed = op == PhysOp::X || op == PhysOp::Xi || op == PhysOp::Xr || op == PhysOp::Xir ||
                         op == PhysOp::Mplus || op == PhysOp::Mminus;
    if (indexed && (j < 0 || j >= d)) throw InvalidArgument("apply_phys_op: coordinate out of range");
    const int sa = 2 * d;
    // y_j-field plus c * coef(w) * d_s
    auto field = [&](int axis, double sign, bool use_eta) {
        SampledField a = partial(f, axis, scheme);
        const SampledField ds = partial(f, sa, scheme);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const PhysPoint p = f.point(i);
            const double c = use_eta ? p.eta[j] : p.y[j];
            a[i] += 2.0 * sign * c * ds[i];
        }
        return a;
    };
    switch (op) {
        case PhysOp::X: return field(j, +1.0, true);
        case PhysOp::Xi: return field(d + j, -1.0, false);
        case PhysOp::Xr: return field(j, -1.0, true);
        case PhysOp::Xir: return field(d + j, +1.0, false);
        case PhysOp::S: return partial(f, sa, scheme);
        case PhysOp::DeltaH: {
            SampledField r(f.grid());
            for (int k = 0; k < d; ++k) {
                const SampledField x1 = apply_phys_op(PhysOp::X, f, k, scheme);
                r += apply_phys_op(PhysOp::X, x1, k, scheme);
                const SampledField e1 = apply_phys_op(PhysOp::Xi, f, k, scheme);
                r += apply_phys_op(PhysOp::Xi, e1, k, scheme);
            }
            return r;
        }
        case PhysOp::M2: return multiply(f, [](const PhysPoint& p) { return cplx(p.norm_Y2()); });
        case PhysOp::M0: return multiply(f, [](const PhysPoint& p) { return cplx(0.0, -p.s); });
        case PhysOp::MH: return multiply(f, [](const PhysPoint& p) { return cplx(p.norm_Y2(), -p.s); });
        case PhysOp::Mplus: return multiply(f, [j](const PhysPoint& p) { return cplx(p.y[j], p.eta[j]); });
        case PhysOp::Mminus: return multiply(f, [j](const PhysPoint& p) { return cplx(p.y[j], -p.eta[j]); });
        case PhysOp::P: return primitive(f, scheme);
    }
    throw InvalidArgument("apply_phys_op: unhandled operator");
}

double phys_seminorm(const SampledField& f, int N, DerivScheme scheme) {
    if (N < 0) throw InvalidArgument("phys_seminorm: N must be nonnegative");
    const int A = f.grid().axes();
    std::vector<double> weight(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const PhysPoint p = f.point(i);
        weight[i] = std::pow(1.0 + p.norm_Y2() + p.s * p.s, 0.5 * N);
    }
    double best = 0.0;
    // depth-first over nondecreasing axis sequences = multi-indices |alpha| <= N
    std::function<void(const SampledField&, int, int)> walk = [&](const SampledField& g, int first, int depth) {
        for (std::size_t i = 0; i < g.size(); ++i) best = std::max(best, weight[i] * std::abs(g[i]));
        if (depth == N) return;
        for (int a = first; a < A; ++a) walk(partial(g, a, scheme), a, depth + 1);
    };
    walk(f, 0, 0);
    return best;
}

double phys_seminorm_l2(const SampledField& f, int K, DerivScheme scheme) {
    if (K < 0) throw InvalidArgument("phys_seminorm_l2: K must be nonnegative");
    SampledField m = f, l = f;
    for (int k = 0; k < K; ++k) {
        m = apply_phys_op(PhysOp::MH, m, 0, scheme);
        l = apply_phys_op(PhysOp::DeltaH, l, 0, scheme);
    }
    const double a = f.l2_norm(), b = m.l2_norm(), c = l.l2_norm();
    return std::sqrt(a * a + b * b + c * c);
}

namespace {

constexpr char kMagic[8] = {'H', 'E', 'I', 'S', 'F', 'L', 'D', '1'};

static_assert(std::endian::native == std::endian::little, "field I/O assumes a little-endian host");

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw FormatError("field file truncated");
    return v;
}

}  // namespace

void write_field(std::ostream& os, const SampledField& f) {
    const GridSpec& G = f.grid();
    os.write(kMagic, 8);
    put<std::int32_t>(os, G.d);
    put<std::int32_t>(os, G.ny);
    put<std::int32_t>(os, G.neta);
    put<std::int32_t>(os, G.ns);
    put<double>(os, G.Ly);
    put<double>(os, G.Leta);
    put<double>(os, G.Ls);
    put<double>(os, G.axis_h(0));
    put<double>(os, G.axis_h(G.d));
    put<double>(os, G.axis_h(2 * G.d));
    os.write(reinterpret_cast<const char*>(f.data().data()), static_cast<std::streamsize>(f.size() * sizeof(cplx)));
    if (!os) throw FormatError("field write failed");
}

SampledField read_field(std::istream& is) {
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kMagic, 8) != 0) throw FormatError("not a HEISFLD1 field file");
    GridSpec G;
    G.d = get<std::int32_t>(is);
    G.ny = get<std::int32_t>(is);
    G.neta = get<std::int32_t>(is);
    G.ns = get<std::int32_t>(is);
    G.Ly = get<double>(is);
    G.Leta = get<double>(is);
    G.Ls = get<double>(is);
    try {
        G.validate();
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("bad field header: ") + e.what());
    }
    const double h[3] = {get<double>(is), get<double>(is), get<double>(is)};
    const int axes[3] = {0, G.d, 2 * G.d};
    for (int k = 0; k < 3; ++k)
        if (std::abs(h[k] - G.axis_h(axes[k])) > 1e-12 * G.axis_h(axes[k]))
            throw FormatError("field header spacing inconsistent with extent");
    SampledField f(G);
    is.read(reinterpret_cast<char*>(f.data().data()), static_cast<std::streamsize>(f.size() * sizeof(cplx)));
    if (!is) throw FormatError("field payload truncated");
    return f;
}

void save_field(const std::string& path, const SampledField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError("cannot open " + path + " for writing");
    write_field(os, f);
}

SampledField load_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("cannot open " + path);
    return read_field(is);
}

namespace {

// Sorted distinct coordinates -> (count, half extent), checking uniform symmetric spacing.
std::pair<int, double> axis_from_values(const std::set<double>& vals, const char* name) {
    if (vals.size() < 5) throw FormatError(std::string("csv: axis ") + name + " needs at least 5 distinct values");
    const double lo = *vals.begin(), hi = *vals.rbegin();
    const int n = static_cast<int>(vals.size());
    const double h = (hi - lo) / (n - 1);
    if (std::abs(lo + hi) > 1e-9 * (hi - lo)) throw FormatError(std::string("csv: axis ") + name + " not symmetric");
    int i = 0;
    for (double v : vals) {
        if (std::abs(v - (lo + i * h)) > 1e-6 * h) throw FormatError(std::string("csv: axis ") + name + " not uniform");
        ++i;
    }
    return {n, hi};
}

}  // namespace

SampledField read_field_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw FormatError("csv: empty input");
    std::vector<std::string> cols;
    {
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) {
            c.erase(std::remove_if(c.begin(), c.end(), ::isspace), c.end());
            cols.push_back(c);
        }
    }
    const bool has_im = cols.size() == 5;
    if (cols.size() < 4 || cols.size() > 5 || cols[0] != "y" || cols[1] != "eta" || cols[2] != "s" || cols[3] != "re" ||
        (has_im && cols[4] != "im"))
        throw FormatError("csv: header must be y,eta,s,re[,im]");
    struct Row {
        double y, eta, s;
        cplx v;
    };
    std::vector<Row> rows;
    std::set<double> ys, es, ss;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::stringstream in(line);
        double v[5] = {0, 0, 0, 0, 0};
        std::string tok;
        std::size_t k = 0;
        while (std::getline(in, tok, ',')) {
            if (k >= cols.size()) throw FormatError("csv: too many fields on line " + std::to_string(lineno));
            try {
                v[k++] = std::stod(tok);
            } catch (const std::exception&) {
                throw FormatError("csv: bad number on line " + std::to_string(lineno));
            }
        }
        if (k != cols.size()) throw FormatError("csv: missing fields on line " + std::to_string(lineno));
        rows.push_back({v[0], v[1], v[2], cplx(v[3], v[4])});
        ys.insert(v[0]);
        es.insert(v[1]);
        ss.insert(v[2]);
    }
    GridSpec G;
    G.d = 1;
    std::tie(G.ny, G.Ly) = axis_from_values(ys, "y");
    std::tie(G.neta, G.Leta) = axis_from_values(es, "eta");
    std::tie(G.ns, G.Ls) = axis_from_values(ss, "s");
    if (rows.size() != G.size()) throw FormatError("csv: row count does not fill the grid");
    SampledField f(G);
    std::vector<char> seen(G.size(), 0);
    for (const Row& r : rows) {
        const int iy = static_cast<int>(std::lround((r.y + G.Ly) / G.axis_h(0)));
        const int ie = static_cast<int>(std::lround((r.eta + G.Leta) / G.axis_h(1)));
        const int is_ = static_cast<int>(std::lround((r.s + G.Ls) / G.axis_h(2)));
        const std::size_t idx = iy * f.stride(0) + ie * f.stride(1) + is_ * f.stride(2);
        if (seen[idx]) throw FormatError("csv: duplicate grid point");
        seen[idx] = 1;
        f[idx] = r.v;
    }
    return f;
}

}  // namespace heis
