#include "heis/transform.hpp"

#include "heis/hermite.hpp"
#include "heis/quadrature.hpp"
#include "heis/wigner.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

namespace heis {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CRowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

SpectralTable::SpectralTable(int d, int n_max, LambdaGrid grid, std::string provenance)
    : d_(d), n_max_(n_max), grid_(std::move(grid)), provenance_(std::move(provenance)) {
    check_dim(d);
    if (n_max < 0) throw InvalidArgument("SpectralTable: negative n_max");
    box_ = box_size(d, n_max);
    data_.assign(box_ * box_ * grid_.size(), cplx(0.0));
}

cplx& SpectralTable::at(const MultiIndex& n, const MultiIndex& m, int li) {
    return at(flat_index(n, n_max_), flat_index(m, n_max_), li);
}

cplx SpectralTable::at(const MultiIndex& n, const MultiIndex& m, int li) const {
    return at(flat_index(n, n_max_), flat_index(m, n_max_), li);
}

FreqFunction SpectralTable::as_function() const {
    auto self = std::make_shared<const SpectralTable>(*this);
    FreqFunction r(d_, [self](const FreqPoint& p) {
        const int li = self->grid().index_of(p.lambda);
        if (li < 0) throw InvalidArgument("spectral table: lambda off the grid");
        return self->at(p.n, p.m, li);
    }, "table:" + provenance_);
    r.n_max = n_max_;
    r.lambda_smooth = false;
    return r;
}

void write_table_csv(std::ostream& os, const SpectralTable& t) {
    const int d = t.dim();
    for (int j = 0; j < d; ++j) os << "n" << j + 1 << ",";
    for (int j = 0; j < d; ++j) os << "m" << j + 1 << ",";
    os << "lambda,re,im\n";
    char buf[64];
    for (int li = 0; li < t.grid().size(); ++li) {
        std::snprintf(buf, sizeof buf, "%.17g", t.grid()[li]);
        const std::string lam = buf;
        for (std::size_t a = 0; a < t.box(); ++a) {
            const MultiIndex n = unflat_index(a, d, t.n_max());
            for (std::size_t b = 0; b < t.box(); ++b) {
                const MultiIndex m = unflat_index(b, d, t.n_max());
                for (int j = 0; j < d; ++j) os << n[j] << ",";
                for (int j = 0; j < d; ++j) os << m[j] << ",";
                const cplx v = t.at(a, b, li);
                std::snprintf(buf, sizeof buf, "%.17g,%.17g", v.real(), v.imag());
                os << lam << "," << buf << "\n";
            }
        }
    }
}

std::string table_sidecar_json(const SpectralTable& t) {
    const auto& p = t.grid().params();
    nlohmann::ordered_json j;
    j["d"] = t.dim();
    j["n_max"] = t.n_max();
    j["grid"] = {{"lambda_min", p.lambda_min},
                 {"lambda_max", p.lambda_max},
                 {"points_per_sign", p.points_per_sign},
                 {"ratio", p.ratio}};
    j["provenance"] = t.provenance();
    j["residual"] = t.residual;
    return j.dump(2);
}

SpectralTable read_table(std::istream& csv, const std::string& sidecar_json) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(sidecar_json);
    } catch (const std::exception& e) {
        throw FormatError(std::string("table sidecar: ") + e.what());
    }
    LambdaGridParams gp;
    int d = 0, n_max = 0;
    std::string prov;
    try {
        d = j.at("d").get<int>();
        n_max = j.at("n_max").get<int>();
        const auto& g = j.at("grid");
        gp.lambda_min = g.at("lambda_min").get<double>();
        gp.points_per_sign = g.at("points_per_sign").get<int>();
        gp.lambda_max = g.at("lambda_max").get<double>();
        gp.ratio = 0.0;
        prov = j.value("provenance", std::string("imported"));
    } catch (const std::exception& e) {
        throw FormatError(std::string("table sidecar: ") + e.what());
    }
    SpectralTable t(d, n_max, LambdaGrid(gp), prov);
    t.residual = j.value("residual", 0.0);
    std::string line;
    if (!std::getline(csv, line)) throw FormatError("table csv: empty");
    std::vector<char> seen(t.data().size(), 0);
    std::size_t rows = 0;
    int lineno = 1;
    while (std::getline(csv, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::vector<std::string> f;
        while (std::getline(ss, tok, ',')) f.push_back(tok);
        if (static_cast<int>(f.size()) != 2 * d + 3) throw FormatError("table csv: bad field count on line " + std::to_string(lineno));
        MultiIndex n(d), m(d);
        try {
            for (int k = 0; k < d; ++k) {
                n[k] = std::stoi(f[k]);
                m[k] = std::stoi(f[d + k]);
            }
            const double lam = std::strtod(f[2 * d].c_str(), nullptr);
            const int li = t.grid().index_of(lam);
            if (li < 0) throw FormatError("table csv: lambda " + f[2 * d] + " not on the sidecar grid");
            if (!n.nonnegative() || !m.nonnegative() || n.max_entry() > n_max || m.max_entry() > n_max)
                throw FormatError("table csv: index outside n_max on line " + std::to_string(lineno));
            const std::size_t pos = (li * t.box() + flat_index(n, n_max)) * t.box() + flat_index(m, n_max);
            if (seen[pos]) throw FormatError("table csv: duplicate entry on line " + std::to_string(lineno));
            seen[pos] = 1;
            t.data()[pos] = cplx(std::strtod(f[2 * d + 1].c_str(), nullptr), std::strtod(f[2 * d + 2].c_str(), nullptr));
        } catch (const std::invalid_argument&) {
            throw FormatError("table csv: bad number on line " + std::to_string(lineno));
        }
        ++rows;
    }
    if (rows != t.data().size()) throw FormatError("table csv: incomplete table");
    return t;
}

void save_table(const std::string& csv_path, const SpectralTable& t) {
    std::ofstream os(csv_path);
    if (!os) throw FormatError("cannot write " + csv_path);
    write_table_csv(os, t);
    std::ofstream js(csv_path + ".json");
    if (!js) throw FormatError("cannot write " + csv_path + ".json");
    js << table_sidecar_json(t) << "\n";
}

SpectralTable load_table(const std::string& csv_path) {
    std::ifstream is(csv_path);
    if (!is) throw FormatError("cannot open " + csv_path);
    std::ifstream js(csv_path + ".json");
    if (!js) throw FormatError("cannot open " + csv_path + ".json");
    std::stringstream ss;
    ss << js.rdbuf();
    return read_table(is, ss.str());
}

SpectralTable tabulate(const FreqFunction& theta, int n_max, const LambdaGrid& grid, const std::string& provenance) {
    SpectralTable t(theta.d, n_max, grid, provenance);
    for (int li = 0; li < grid.size(); ++li)
        for (std::size_t a = 0; a < t.box(); ++a) {
            const MultiIndex n = unflat_index(a, theta.d, n_max);
            for (std::size_t b = 0; b < t.box(); ++b) {
                const MultiIndex m = unflat_index(b, theta.d, n_max);
                if (theta.diagonal && !(n == m)) continue;
                t.at(a, b, li) = theta(FreqPoint(n, m, grid[li]));
            }
        }
    return t;
}

std::vector<cplx> s_transform(const SampledField& f, double lambda) {
    const GridSpec& G = f.grid();
    const int ns = G.ns;
    const double hs = G.axis_h(2 * G.d);
    std::vector<cplx> ph(ns);
    for (int k = 0; k < ns; ++k) {
        const double s = G.coord(2 * G.d, k);
        ph[k] = hs * cplx(std::cos(s * lambda), -std::sin(s * lambda));
    }
    const std::size_t nY = f.size() / ns;
    std::vector<cplx> out(nY);
    for (std::size_t p = 0; p < nY; ++p) {
        cplx acc = 0.0;
        const cplx* row = &f.data()[p * ns];
        for (int k = 0; k < ns; ++k) acc += ph[k] * row[k];
        out[p] = acc;
    }
    return out;
}

namespace {

// dF_s/dlambda = sum_s (-i s) e^{-i s lambda} f h_s
std::vector<cplx> s_transform_dlambda(const SampledField& f, double lambda) {
    const GridSpec& G = f.grid();
    const int ns = G.ns;
    const double hs = G.axis_h(2 * G.d);
    std::vector<cplx> ph(ns);
    for (int k = 0; k < ns; ++k) {
        const double s = G.coord(2 * G.d, k);
        ph[k] = hs * cplx(0.0, -s) * cplx(std::cos(s * lambda), -std::sin(s * lambda));
    }
    const std::size_t nY = f.size() / ns;
    std::vector<cplx> out(nY);
    for (std::size_t p = 0; p < nY; ++p) {
        cplx acc = 0.0;
        const cplx* row = &f.data()[p * ns];
        for (int k = 0; k < ns; ++k) acc += ph[k] * row[k];
        out[p] = acc;
    }
    return out;
}

// Per-coordinate Wigner tables at every (y_j, eta_j) grid pair: out[(iy*ne+ie)*B1*B1 + n*B1 + m].
void wigner_grid_tables(const GridSpec& G, double lambda, int n_max, std::vector<cplx>& W, std::vector<cplx>* dW) {
    const int B1 = n_max + 1;
    const int ny = G.ny, ne = G.neta;
    W.assign(static_cast<std::size_t>(ny) * ne * B1 * B1, cplx(0.0));
    if (dW) dW->assign(W.size(), cplx(0.0));
    for (int iy = 0; iy < ny; ++iy)
        for (int ie = 0; ie < ne; ++ie) {
            const std::size_t off = (static_cast<std::size_t>(iy) * ne + ie) * B1 * B1;
            const double y = G.coord(0, iy), eta = G.coord(G.d, ie);
            if (dW)
                wigner1_all_with_dlambda(n_max, lambda, y, eta, &W[off], &(*dW)[off]);
            else
                wigner1_all(n_max, lambda, y, eta, &W[off]);
        }
}

}  // namespace

void forward_direct_slice(const SampledField& f, double lambda, int n_max, std::vector<cplx>& out,
                          std::vector<cplx>* dout) {
    if (lambda == 0.0) throw InvalidArgument("forward: lambda must be nonzero");
    const GridSpec& G = f.grid();
    const int d = G.d;
    const int B1 = n_max + 1;
    const std::size_t box = box_size(d, n_max);
    const std::vector<cplx> Fs = s_transform(f, lambda);
    std::vector<cplx> dFs;
    if (dout) dFs = s_transform_dlambda(f, lambda);
    std::vector<cplx> W, dW;
    wigner_grid_tables(G, lambda, n_max, W, dout ? &dW : nullptr);
    out.assign(box * box, cplx(0.0));
    if (dout) dout->assign(box * box, cplx(0.0));
    const double hY = std::pow(G.axis_h(0) * G.axis_h(d), d);
    const int ny = G.ny, ne = G.neta;
    if (d == 1) {
        for (int iy = 0; iy < ny; ++iy)
            for (int ie = 0; ie < ne; ++ie) {
                const std::size_t p = static_cast<std::size_t>(iy) * ne + ie;
                const cplx* w = &W[p * B1 * B1];
                const cplx F = Fs[p] * hY;
                for (int k = 0; k < B1 * B1; ++k) out[k] += std::conj(w[k]) * F;
                if (dout) {
                    const cplx* dw = &dW[p * B1 * B1];
                    const cplx dF = dFs[p] * hY;
                    for (int k = 0; k < B1 * B1; ++k) (*dout)[k] += std::conj(dw[k]) * F + std::conj(w[k]) * dF;
                }
            }
        return;
    }
    // d = 2: axes y1, y2, eta1, eta2
    std::vector<cplx> prod(box * box), dprod(box * box);
    for (int y1 = 0; y1 < ny; ++y1)
        for (int y2 = 0; y2 < ny; ++y2)
            for (int e1 = 0; e1 < ne; ++e1)
                for (int e2 = 0; e2 < ne; ++e2) {
                    const std::size_t p = ((static_cast<std::size_t>(y1) * ny + y2) * ne + e1) * ne + e2;
                    const cplx* w1 = &W[(static_cast<std::size_t>(y1) * ne + e1) * B1 * B1];
                    const cplx* w2 = &W[(static_cast<std::size_t>(y2) * ne + e2) * B1 * B1];
                    const cplx F = Fs[p] * hY;
                    for (int n1 = 0; n1 < B1; ++n1)
                        for (int n2 = 0; n2 < B1; ++n2)
                            for (int m1 = 0; m1 < B1; ++m1)
                                for (int m2 = 0; m2 < B1; ++m2) {
                                    const std::size_t k = (static_cast<std::size_t>(n1 * B1 + n2)) * box + m1 * B1 + m2;
                                    const cplx a = std::conj(w1[n1 * B1 + m1]), b = std::conj(w2[n2 * B1 + m2]);
                                    out[k] += a * b * F;
                                    if (dout) {
                                        const cplx* d1 = &dW[(static_cast<std::size_t>(y1) * ne + e1) * B1 * B1];
                                        const cplx* d2 = &dW[(static_cast<std::size_t>(y2) * ne + e2) * B1 * B1];
                                        const cplx da = std::conj(d1[n1 * B1 + m1]), db = std::conj(d2[n2 * B1 + m2]);
                                        (*dout)[k] += (da * b + a * db) * F + a * b * dFs[p] * hY;
                                    }
                                }
                }
}

namespace {

cplx forward_direct_impl(const SampledField& f, const FreqPoint& p, bool derivative) {
    const GridSpec& G = f.grid();
    const int d = G.d;
    if (p.dim() != d) throw InvalidArgument("forward_direct: dimension mismatch");
    const int ny = G.ny, ne = G.neta;
    // per-coordinate conj(W) and its derivative over the (y_j, eta_j) grid
    std::vector<std::vector<cplx>> T(d), dT(d);
    for (int j = 0; j < d; ++j) {
        T[j].resize(static_cast<std::size_t>(ny) * ne);
        if (derivative) dT[j].resize(T[j].size());
        for (int iy = 0; iy < ny; ++iy)
            for (int ie = 0; ie < ne; ++ie) {
                const double y = G.coord(0, iy), eta = G.coord(d, ie);
                T[j][iy * ne + ie] = std::conj(wigner1(p.n[j], p.m[j], p.lambda, y, eta));
                if (derivative) dT[j][iy * ne + ie] = std::conj(wigner1_dlambda(p.n[j], p.m[j], p.lambda, y, eta));
            }
    }
    const std::vector<cplx> Fs = s_transform(f, p.lambda);
    std::vector<cplx> dFs;
    if (derivative) dFs = s_transform_dlambda(f, p.lambda);
    const double hY = std::pow(G.axis_h(0) * G.axis_h(d), d);
    cplx acc = 0.0;
    const std::size_t nY = Fs.size();
    for (std::size_t q = 0; q < nY; ++q) {
        int iy[kMaxDim], ie[kMaxDim];
        for (int j = 0; j < d; ++j) {
            iy[j] = f.axis_index(q * G.ns, j);
            ie[j] = f.axis_index(q * G.ns, d + j);
        }
        if (!derivative) {
            cplx k = 1.0;
            for (int j = 0; j < d; ++j) k *= T[j][iy[j] * ne + ie[j]];
            acc += k * Fs[q];
        } else {
            cplx k = 1.0, dk = 0.0;
            for (int j = 0; j < d; ++j) {
                const cplx t = T[j][iy[j] * ne + ie[j]], dt = dT[j][iy[j] * ne + ie[j]];
                dk = dk * t + k * dt;
                k *= t;
            }
            acc += dk * Fs[q] + k * dFs[q];
        }
    }
    return acc * hY;
}

}  // namespace

cplx forward_direct(const SampledField& f, const FreqPoint& p) { return forward_direct_impl(f, p, false); }

cplx forward_direct_dlambda(const SampledField& f, const FreqPoint& p) { return forward_direct_impl(f, p, true); }

cplx rep_matrix_coeff(const SampledField& f, double lambda, const MultiIndex& n, const MultiIndex& m, int order) {
    if (lambda == 0.0) throw InvalidArgument("rep_matrix_coeff: lambda must be nonzero");
    const GridSpec& G = f.grid();
    const int d = G.d;
    if (n.d != d || m.d != d) throw InvalidArgument("rep_matrix_coeff: dimension mismatch");
    const double a = std::sqrt(std::abs(lambda));
    const QuadRule gh = gauss_hermite(order, 0.5);
    const int Q = static_cast<int>(gh.size());
    const int ny = G.ny, ne = G.neta;
    const double hy = G.axis_h(0), he = G.axis_h(d);
    const int nmax = std::max(n.max_entry(), m.max_entry());
    // g_k(v) = H_k(v) e^{v^2/2}
    std::vector<double> hv(nmax + 1);
    std::vector<std::vector<double>> T_re(d), T_im(d);
    std::vector<std::vector<cplx>> T(d);
    for (int j = 0; j < d; ++j) {
        std::vector<double> gn(Q), gm(Q), x(Q);
        for (int i = 0; i < Q; ++i) {
            const double v = gh.nodes[i];
            hermite_all(nmax, v, hv.data());
            const double e = std::exp(0.5 * v * v);
            gn[i] = gh.weights[i] * hv[n[j]] * e;
            gm[i] = gh.weights[i] * hv[m[j]] * e;
            x[i] = v / a;
        }
        T[j].assign(static_cast<std::size_t>(ny) * ne, cplx(0.0));
        std::vector<cplx> eph(ne);
        std::vector<double> sinc(ny);
        for (int i = 0; i < Q; ++i) {
            if (gn[i] == 0.0) continue;
            for (int k = 0; k < Q; ++k) {
                const double c = gn[i] * gm[k];
                if (c == 0.0) continue;
                const double yc = 0.5 * (x[i] - x[k]);
                const double xs = x[i] + x[k];
                for (int iy = 0; iy < ny; ++iy) {
                    const double t = (yc - G.coord(0, iy)) / hy;
                    sinc[iy] = t == 0.0 ? 1.0 : std::sin(pi * t) / (pi * t);
                }
                for (int ie = 0; ie < ne; ++ie) {
                    const double ph = -lambda * G.coord(d, ie) * xs;
                    eph[ie] = cplx(std::cos(ph), std::sin(ph));
                }
                for (int iy = 0; iy < ny; ++iy) {
                    const double sc = c * sinc[iy];
                    cplx* row = &T[j][static_cast<std::size_t>(iy) * ne];
                    for (int ie = 0; ie < ne; ++ie) row[ie] += sc * eph[ie];
                }
            }
        }
    }
    const std::vector<cplx> Fs = s_transform(f, lambda);
    cplx acc = 0.0;
    for (std::size_t q = 0; q < Fs.size(); ++q) {
        cplx k = 1.0;
        for (int j = 0; j < d; ++j) k *= T[j][f.axis_index(q * G.ns, j) * ne + f.axis_index(q * G.ns, d + j)];
        acc += k * Fs[q];
    }
    return acc * std::pow(he / (2.0 * a), d);
}

cplx partial_fourier(const SampledField& f, std::span<const int> iy, std::span<const double> xi, double lambda) {
    const GridSpec& G = f.grid();
    const int d = G.d;
    if (static_cast<int>(iy.size()) != d || static_cast<int>(xi.size()) != d)
        throw InvalidArgument("partial_fourier: dimension mismatch");
    const std::vector<cplx> Fs = s_transform(f, lambda);
    const double he = G.axis_h(d);
    cplx acc = 0.0;
    for (std::size_t q = 0; q < Fs.size(); ++q) {
        bool match = true;
        double ph = 0.0;
        for (int j = 0; j < d; ++j) {
            if (f.axis_index(q * G.ns, j) != iy[j]) {
                match = false;
                break;
            }
            ph -= G.coord(d + j, f.axis_index(q * G.ns, d + j)) * xi[j];
        }
        if (match) acc += cplx(std::cos(ph), std::sin(ph)) * Fs[q];
    }
    return acc * std::pow(he, d);
}

std::function<cplx(double, double)> phi_remap(std::function<cplx(double, double)> phi, double lambda) {
    if (lambda == 0.0) throw InvalidArgument("phi_remap: lambda must be nonzero");
    return [phi = std::move(phi), lambda](double x, double xp) { return phi(0.5 * (x - xp), lambda * (x + xp)); };
}

namespace {

struct UNodes {
    QuadRule rule;
    bool cut = false;
};

// Edge-to-peak ratio of the eta -> u transform: mass left beyond the cut.
double edge_ratio(const CRowMat& g) {
    const double peak = g.cwiseAbs().maxCoeff();
    if (peak == 0.0) return 0.0;
    const Eigen::Index q = g.cols() - 1;
    const double edge = std::max(g.col(0).cwiseAbs().maxCoeff(), g.col(q).cwiseAbs().maxCoeff());
    return edge / peak;
}

UNodes u_nodes(const GridSpec& G, double lambda, int n_max, double margin, bool cut) {
    const double a = std::sqrt(std::abs(lambda));
    const double core = std::sqrt(2.0 * n_max + 1.0);
    double U = (core + margin) / a;
    UNodes r;
    if (cut) {
        const double unyq = pi / (2.0 * std::abs(lambda) * G.axis_h(G.d));
        if (unyq < U) {
            U = unyq;
            r.cut = true;
        }
    }
    const double ktot = 2.0 * a * core + 2.0 * std::abs(lambda) * G.Leta + 1e-300;
    const double width = 4.0 * pi / ktot;
    const int panels = std::max(1, static_cast<int>(std::ceil(2.0 * U / width)));
    append_composite(-U, U, panels, panel_rule(), r.rule);
    return r;
}

// A[n, q] = H_{n,lambda}(sign_y * y + u_q) stored row-major (n_max+1) x Q.
void rescaled_table(int n_max, double lambda, double shift, const std::vector<double>& u, double sign_u, double* out) {
    const double a = std::sqrt(std::abs(lambda));
    const double s4 = std::pow(std::abs(lambda), 0.25);
    const int Q = static_cast<int>(u.size());
    std::vector<double> h(n_max + 1);
    for (int q = 0; q < Q; ++q) {
        hermite_all(n_max, a * (sign_u * u[q] + shift), h.data());
        for (int n = 0; n <= n_max; ++n) out[n * Q + q] = s4 * h[n];
    }
}

// E[ie, q] = h_eta * e^{sign * 2i lambda eta_ie u_q}
CRowMat eta_phase(const GridSpec& G, double lambda, const std::vector<double>& u, double sign, double scale) {
    const int ne = G.neta;
    const int Q = static_cast<int>(u.size());
    CRowMat E(ne, Q);
    for (int ie = 0; ie < ne; ++ie) {
        const double eta = G.coord(G.d, ie);
        for (int q = 0; q < Q; ++q) {
            const double ph = sign * 2.0 * lambda * eta * u[q];
            E(ie, q) = scale * cplx(std::cos(ph), std::sin(ph));
        }
    }
    return E;
}

// Band-limited reading of the y samples: trigonometric interpolation onto a
// uniform refinement fine enough for the Hermite products at this lambda.
struct FineY {
    std::vector<double> y;
    RowMat S;  // nf x ny
    double h = 0.0;
};

FineY fine_y(const GridSpec& G, double lambda, int n_max) {
    const int ny = G.ny;
    const double hy = G.axis_h(0);
    const double a = std::sqrt(std::abs(lambda));
    const double k = 2.0 * a * (std::sqrt(2.0 * n_max + 1.0) + 3.0) + pi / hy;
    const int r = std::max(1, static_cast<int>(std::ceil(hy * k / (2.0 * pi))));
    FineY out;
    const int nf = (ny - 1) * r + 1;
    out.h = hy / r;
    out.y.resize(nf);
    out.S.resize(nf, ny);
    for (int f = 0; f < nf; ++f) {
        out.y[f] = -G.Ly + f * out.h;
        for (int i = 0; i < ny; ++i) {
            const double t = (out.y[f] - G.coord(0, i)) / hy;
            const double den = ny * std::sin(pi * t / ny);
            out.S(f, i) = std::abs(den) < 1e-14 ? 1.0 : std::sin(pi * t) / den;
        }
    }
    return out;
}

}  // namespace

void forward_factored_slice(const SampledField& f, double lambda, int n_max, std::vector<cplx>& out,
                            const FactoredOptions& opt, double* residual) {
    if (lambda == 0.0) throw InvalidArgument("forward: lambda must be nonzero");
    const GridSpec& G = f.grid();
    const int d = G.d;
    const int B1 = n_max + 1;
    const std::size_t box = box_size(d, n_max);
    out.assign(box * box, cplx(0.0));
    if (residual) *residual = 0.0;
    if (opt.nyquist_cut && std::abs(lambda) > pi / G.axis_h(2 * d)) return;
    const UNodes un = u_nodes(G, lambda, n_max, opt.margin, opt.nyquist_cut);
    const std::vector<double>& u = un.rule.nodes;
    const std::vector<double>& w = un.rule.weights;
    const int Q = static_cast<int>(u.size());
    const int ny = G.ny, ne = G.neta;
    const double he = G.axis_h(d);
    const std::vector<cplx> Fs = s_transform(f, lambda);
    const CRowMat E = eta_phase(G, lambda, u, -1.0, he);

    const FineY fy = fine_y(G, lambda, n_max);
    const int nf = static_cast<int>(fy.y.size());
    // A_f[n, q] = H_n(y_f + u_q), B_f[m, q] = H_m(u_q - y_f) on the fine y nodes
    std::vector<RowMat> A(nf, RowMat(B1, Q)), B(nf, RowMat(B1, Q));
    for (int k = 0; k < nf; ++k) {
        rescaled_table(n_max, lambda, fy.y[k], u, 1.0, A[k].data());
        rescaled_table(n_max, lambda, -fy.y[k], u, 1.0, B[k].data());
    }

    if (d == 1) {
        Eigen::Map<const CRowMat> F(Fs.data(), ny, ne);
        const CRowMat Gm = fy.S.cast<cplx>() * (F * E);  // nf x Q
        if (residual && un.cut) *residual = edge_ratio(Gm);
        RowMat Cr(B1, static_cast<Eigen::Index>(nf) * Q), Ci(B1, static_cast<Eigen::Index>(nf) * Q),
            Bb(B1, static_cast<Eigen::Index>(nf) * Q);
        for (int k = 0; k < nf; ++k)
            for (int q = 0; q < Q; ++q) {
                const cplx c = fy.h * w[q] * Gm(k, q);
                const Eigen::Index col = static_cast<Eigen::Index>(k) * Q + q;
                for (int n = 0; n < B1; ++n) {
                    Cr(n, col) = A[k](n, q) * c.real();
                    Ci(n, col) = A[k](n, q) * c.imag();
                    Bb(n, col) = B[k](n, q);
                }
            }
        const RowMat Or = Cr * Bb.transpose();
        const RowMat Oi = Ci * Bb.transpose();
        for (int n = 0; n < B1; ++n)
            for (int m = 0; m < B1; ++m) out[n * B1 + m] = cplx(Or(n, m), Oi(n, m));
        return;
    }

    // d = 2: effective kernels on the coarse nodes,
    // KR_i[(n, m), q] = sum_f S[f, i] h_f A_f[n, q] B_f[m, q] w_q
    std::vector<RowMat> KR(ny, RowMat::Zero(B1 * B1, Q));
    RowMat kf(B1 * B1, Q);
    for (int k = 0; k < nf; ++k) {
        for (int n = 0; n < B1; ++n)
            for (int m = 0; m < B1; ++m)
                for (int q = 0; q < Q; ++q) kf(n * B1 + m, q) = A[k](n, q) * B[k](m, q) * w[q];
        for (int iy = 0; iy < ny; ++iy) {
            const double c = fy.h * fy.S(k, iy);
            if (c != 0.0) KR[iy] += c * kf;
        }
    }
    CRowMat acc = CRowMat::Zero(B1 * B1, B1 * B1);  // [(n1,m1), (n2,m2)]
    const CRowMat Et = E.transpose();
    double peak = 0.0, edge = 0.0;
    for (int y1 = 0; y1 < ny; ++y1)
        for (int y2 = 0; y2 < ny; ++y2) {
            const std::size_t base = (static_cast<std::size_t>(y1) * ny + y2) * ne * ne;
            Eigen::Map<const CRowMat> F(&Fs[base], ne, ne);  // [eta1, eta2]
            const CRowMat G2 = Et * F * E;                    // [q1, q2]
            if (residual && un.cut) {
                peak = std::max(peak, G2.cwiseAbs().maxCoeff());
                const Eigen::Index q = G2.cols() - 1;
                edge = std::max({edge, G2.col(0).cwiseAbs().maxCoeff(), G2.col(q).cwiseAbs().maxCoeff(),
                                 G2.row(0).cwiseAbs().maxCoeff(), G2.row(q).cwiseAbs().maxCoeff()});
            }
            const CRowMat P = KR[y1].cast<cplx>() * G2;      // [(n1,m1), q2]
            acc.noalias() += P * KR[y2].transpose().cast<cplx>();
        }
    if (residual && peak > 0.0) *residual = edge / peak;
    for (int n1 = 0; n1 < B1; ++n1)
        for (int m1 = 0; m1 < B1; ++m1)
            for (int n2 = 0; n2 < B1; ++n2)
                for (int m2 = 0; m2 < B1; ++m2)
                    out[static_cast<std::size_t>(n1 * B1 + n2) * box + m1 * B1 + m2] = acc(n1 * B1 + m1, n2 * B1 + m2);
}

SpectralTable forward_factored(const SampledField& f, int n_max, const LambdaGrid& grid, const FactoredOptions& opt) {
    SpectralTable t(f.dim(), n_max, grid, "factored");
    std::vector<cplx> s;
    for (int li = 0; li < grid.size(); ++li) {
        double res = 0.0;
        forward_factored_slice(f, grid[li], n_max, s, opt, &res);
        std::copy(s.begin(), s.end(), t.slice(li));
        t.residual = std::max(t.residual, res);
    }
    return t;
}

ForwardEvaluator::ForwardEvaluator(SampledField f, int n_max, FactoredOptions opt)
    : ForwardEvaluator(std::make_shared<const SampledField>(std::move(f)), n_max, opt) {}

ForwardEvaluator::ForwardEvaluator(std::shared_ptr<const SampledField> f, int n_max, FactoredOptions opt)
    : f_(std::move(f)), n_max_(n_max), opt_(opt), cache_(std::make_shared<std::map<double, std::vector<cplx>>>()) {}

const std::vector<cplx>& ForwardEvaluator::slice(double lambda) const {
    auto it = cache_->find(lambda);
    if (it != cache_->end()) return it->second;
    std::vector<cplx> s;
    forward_factored_slice(*f_, lambda, n_max_, s, opt_);
    return cache_->emplace(lambda, std::move(s)).first->second;
}

cplx ForwardEvaluator::operator()(const FreqPoint& p) const {
    if (p.n.max_entry() > n_max_ || p.m.max_entry() > n_max_) return 0.0;
    const std::size_t box = box_size(p.dim(), n_max_);
    return slice(p.lambda)[flat_index(p.n, n_max_) * box + flat_index(p.m, n_max_)];
}

cplx ForwardEvaluator::dlambda(const FreqPoint& p) const {
    const double h = std::min(1e-4, std::abs(p.lambda) / 8.0);
    FreqPoint a = p, b = p;
    a.lambda += h;
    b.lambda -= h;
    return ((*this)(a) - (*this)(b)) / (2.0 * h);
}

FreqFunction ForwardEvaluator::as_function() const {
    const ForwardEvaluator self = *this;
    FreqFunction r(f_->dim(), [self](const FreqPoint& p) { return self(p); }, "factored");
    r.df = [self](const FreqPoint& p) { return self.dlambda(p); };
    r.n_max = n_max_;
    return r;
}

DirectEvaluator::DirectEvaluator(SampledField f, int n_max)
    : f_(std::make_shared<const SampledField>(std::move(f))), n_max_(n_max),
      cache_(std::make_shared<std::map<double, Slice>>()) {}

const DirectEvaluator::Slice& DirectEvaluator::slice(double lambda) const {
    auto it = cache_->find(lambda);
    if (it != cache_->end()) return it->second;
    Slice s;
    forward_direct_slice(*f_, lambda, n_max_, s.v, &s.dv);
    return cache_->emplace(lambda, std::move(s)).first->second;
}

cplx DirectEvaluator::operator()(const FreqPoint& p) const {
    if (p.n.max_entry() > n_max_ || p.m.max_entry() > n_max_) return 0.0;
    const std::size_t box = box_size(p.dim(), n_max_);
    return slice(p.lambda).v[flat_index(p.n, n_max_) * box + flat_index(p.m, n_max_)];
}

cplx DirectEvaluator::dlambda(const FreqPoint& p) const {
    if (p.n.max_entry() > n_max_ || p.m.max_entry() > n_max_) return 0.0;
    const std::size_t box = box_size(p.dim(), n_max_);
    return slice(p.lambda).dv[flat_index(p.n, n_max_) * box + flat_index(p.m, n_max_)];
}

FreqFunction DirectEvaluator::as_function() const {
    const DirectEvaluator self = *this;
    FreqFunction r(f_->dim(), [self](const FreqPoint& p) { return self(p); }, "direct");
    r.df = [self](const FreqPoint& p) { return self.dlambda(p); };
    r.n_max = n_max_;
    return r;
}

namespace {

// Shared body of the inverse and transposed transforms: sign = +1 for the
// inverse kernel e^{i s lambda} W, -1 for e^{-i s lambda} conj(W).
SampledField synthesize(const SpectralTable& theta, const GridSpec& g, double sign, double constant) {
    const int d = theta.dim();
    if (g.d != d) throw InvalidArgument("inverse: grid dimension differs from the table");
    const int N = theta.n_max();
    const int B1 = N + 1;
    const std::size_t box = theta.box();
    SampledField out(g);
    const std::vector<double> wl = theta.grid().weights(d);
    const int ny = g.ny, ne = g.neta, ns = g.ns;
    std::vector<cplx> sph(ns);
    for (int li = 0; li < theta.grid().size(); ++li) {
        const double lambda = theta.grid()[li];
        const cplx* T = theta.slice(li);
        bool zero = true;
        for (std::size_t k = 0; k < box * box; ++k)
            if (T[k] != cplx(0.0)) {
                zero = false;
                break;
            }
        if (zero) continue;
        const UNodes un = u_nodes(g, lambda, N, 10.0, false);
        const std::vector<double>& u = un.rule.nodes;
        const std::vector<double>& w = un.rule.weights;
        const int Q = static_cast<int>(u.size());
        std::vector<RowMat> A(ny, RowMat(B1, Q)), B(ny, RowMat(B1, Q));
        for (int iy = 0; iy < ny; ++iy) {
            const double y = g.coord(0, iy);
            rescaled_table(N, lambda, y, u, 1.0, A[iy].data());
            rescaled_table(N, lambda, -y, u, 1.0, B[iy].data());
        }
        // E[ie, q] = w_q e^{sign 2i lambda eta u_q}
        CRowMat E = eta_phase(g, lambda, u, sign, 1.0);
        for (int q = 0; q < Q; ++q) E.col(q) *= w[q];
        CRowMat Bf;  // Y-plane values before the s factor
        if (d == 1) {
            Eigen::Map<const CRowMat> Th(T, B1, B1);
            CRowMat Acc(ny, Q);
            for (int iy = 0; iy < ny; ++iy) {
                const CRowMat TB = Th * B[iy].cast<cplx>();
                for (int q = 0; q < Q; ++q) {
                    cplx s = 0.0;
                    for (int n = 0; n < B1; ++n) s += A[iy](n, q) * TB(n, q);
                    Acc(iy, q) = s;
                }
            }
            Bf = Acc * E.transpose();  // ny x ne
        } else {
            std::vector<RowMat> KR(ny, RowMat(B1 * B1, Q));
            for (int iy = 0; iy < ny; ++iy)
                for (int n = 0; n < B1; ++n)
                    for (int m = 0; m < B1; ++m)
                        for (int q = 0; q < Q; ++q) KR[iy](n * B1 + m, q) = A[iy](n, q) * B[iy](m, q);
            // Theta'[(n1,m1), (n2,m2)]
            CRowMat Tp(B1 * B1, B1 * B1);
            for (int n1 = 0; n1 < B1; ++n1)
                for (int n2 = 0; n2 < B1; ++n2)
                    for (int m1 = 0; m1 < B1; ++m1)
                        for (int m2 = 0; m2 < B1; ++m2)
                            Tp(n1 * B1 + m1, n2 * B1 + m2) = T[static_cast<std::size_t>(n1 * B1 + n2) * box + m1 * B1 + m2];
            Bf.resize(static_cast<Eigen::Index>(ny) * ny, static_cast<Eigen::Index>(ne) * ne);
            const CRowMat Et = E.transpose();
            for (int y1 = 0; y1 < ny; ++y1) {
                const CRowMat left = KR[y1].transpose().cast<cplx>() * Tp;  // [q1, (n2,m2)]
                for (int y2 = 0; y2 < ny; ++y2) {
                    const CRowMat acc2 = left * KR[y2].cast<cplx>();  // [q1, q2]
                    const CRowMat pl = E * acc2 * Et;                   // [eta1, eta2]
                    for (int e1 = 0; e1 < ne; ++e1)
                        for (int e2 = 0; e2 < ne; ++e2)
                            Bf(static_cast<Eigen::Index>(y1) * ny + y2, static_cast<Eigen::Index>(e1) * ne + e2) = pl(e1, e2);
                }
            }
        }
        for (int k = 0; k < ns; ++k) {
            const double s = g.coord(2 * d, k);
            sph[k] = constant * wl[li] * cplx(std::cos(sign * s * lambda), std::sin(sign * s * lambda));
        }
        const std::size_t nY = out.size() / ns;
        const std::size_t npe = d == 1 ? ne : static_cast<std::size_t>(ne) * ne;
        for (std::size_t p = 0; p < nY; ++p) {
            const cplx v = Bf(static_cast<Eigen::Index>(p / npe), static_cast<Eigen::Index>(p % npe));
            cplx* row = &out.data()[p * ns];
            for (int k = 0; k < ns; ++k) row[k] += v * sph[k];
        }
    }
    return out;
}

}  // namespace

SampledField inverse(const SpectralTable& theta, const GridSpec& g) {
    return synthesize(theta, g, +1.0, inversion_constant(theta.dim()));
}

SampledField transposed(const SpectralTable& theta, const GridSpec& g) { return synthesize(theta, g, -1.0, 1.0); }

cplx inverse_at(const SpectralTable& theta, const PhysPoint& w) {
    const int d = theta.dim();
    if (w.d != d) throw InvalidArgument("inverse_at: dimension mismatch");
    const int N = theta.n_max();
    const int B1 = N + 1;
    const std::vector<double> wl = theta.grid().weights(d);
    std::vector<std::vector<cplx>> W(d, std::vector<cplx>(B1 * B1));
    cplx acc = 0.0;
    for (int li = 0; li < theta.grid().size(); ++li) {
        const double lambda = theta.grid()[li];
        for (int j = 0; j < d; ++j) wigner1_all(N, lambda, w.y[j], w.eta[j], W[j].data());
        cplx s = 0.0;
        for (std::size_t a = 0; a < theta.box(); ++a) {
            const MultiIndex n = unflat_index(a, d, N);
            for (std::size_t b = 0; b < theta.box(); ++b) {
                const MultiIndex m = unflat_index(b, d, N);
                cplx k = 1.0;
                for (int j = 0; j < d; ++j) k *= W[j][n[j] * B1 + m[j]];
                s += k * theta.at(a, b, li);
            }
        }
        acc += wl[li] * cplx(std::cos(w.s * lambda), std::sin(w.s * lambda)) * s;
    }
    return inversion_constant(d) * acc;
}

PlancherelNorms plancherel_norms(const SampledField& f, const SpectralTable& theta) {
    PlancherelNorms r;
    const double l2 = f.l2_norm();
    r.phys_sq = l2 * l2;
    const std::vector<double> wl = theta.grid().weights(theta.dim());
    for (int li = 0; li < theta.grid().size(); ++li) {
        const cplx* s = theta.slice(li);
        double acc = 0.0;
        for (std::size_t k = 0; k < theta.box() * theta.box(); ++k) acc += std::norm(s[k]);
        r.freq_sq += wl[li] * acc;
    }
    return r;
}

ProductValue spectral_product(const FreqFunction& a, const FreqFunction& b, const CompletedPoint& p,
                              const ProductOptions& opt) {
    const int d = a.d;
    if (b.d != d || point_dim(p) != d) throw InvalidArgument("spectral_product: dimension mismatch");
    ProductValue r;
    if (const auto* w = std::get_if<FreqPoint>(&p)) {
        if (a.diagonal) {
            r.value = a(FreqPoint(w->n, w->n, w->lambda)) * b(*w);
            return r;
        }
        if (b.diagonal) {
            r.value = a(*w) * b(FreqPoint(w->m, w->m, w->lambda));
            return r;
        }
        int L = opt.ell_max;
        const bool exact = a.n_max >= 0 && b.n_max >= 0 && L >= std::min(a.n_max, b.n_max);
        if (a.n_max >= 0 && b.n_max >= 0) L = std::min(L, std::min(a.n_max, b.n_max));
        const int Lt = exact ? L : L + opt.tail_width;
        const std::size_t box = box_size(d, Lt);
        double ta = 0.0, tb = 0.0;
        for (std::size_t k = 0; k < box; ++k) {
            const MultiIndex l = unflat_index(k, d, Lt);
            const cplx x = a(FreqPoint(w->n, l, w->lambda));
            const cplx y = b(FreqPoint(l, w->m, w->lambda));
            if (l.max_entry() <= L)
                r.value += x * y;
            else {
                ta += std::norm(x);
                tb += std::norm(y);
            }
        }
        r.tail_bound = std::sqrt(ta * tb);
        return r;
    }
    const auto& bp = std::get<BoundaryPoint>(p);
    if (!a.has_boundary() || !b.has_boundary())
        throw InvalidArgument("spectral_product: boundary values need boundary extensions");
    const int K = opt.k_max, Kt = opt.k_max + opt.tail_width;
    const int span = 2 * Kt + 1;
    std::size_t total = 1;
    for (int j = 0; j < d; ++j) total *= span;
    double ta = 0.0, tb = 0.0;
    for (std::size_t t = 0; t < total; ++t) {
        MultiIndex kp(d);
        std::size_t rem = t;
        int inf = 0;
        for (int j = d - 1; j >= 0; --j) {
            kp[j] = static_cast<int>(rem % span) - Kt;
            rem /= span;
            inf = std::max(inf, std::abs(kp[j]));
        }
        BoundaryPoint p1 = bp, p2 = bp;
        p1.k = kp;
        p2.k = bp.k - kp;
        const bool origin = bp.is_origin();
        cplx x, y;
        if (origin) {
            // at the origin only k' = 0 and k - k' = 0 are admissible points
            bool z1 = true, z2 = true;
            for (int j = 0; j < d; ++j) {
                z1 = z1 && p1.k[j] == 0;
                z2 = z2 && p2.k[j] == 0;
            }
            x = z1 ? a.bnd(p1) : cplx(0.0);
            y = z2 ? b.bnd(p2) : cplx(0.0);
        } else {
            x = a.bnd(p1);
            y = b.bnd(p2);
        }
        if (inf <= K)
            r.value += x * y;
        else {
            ta += std::norm(x);
            tb += std::norm(y);
        }
    }
    r.tail_bound = std::sqrt(ta * tb);
    return r;
}

FreqFunction spectral_product_fn(const FreqFunction& a, const FreqFunction& b, const ProductOptions& opt) {
    FreqFunction r(a.d, [a, b, opt](const FreqPoint& p) { return spectral_product(a, b, p, opt).value; },
                   "product(" + a.label + "," + b.label + ")");
    r.diagonal = a.diagonal && b.diagonal;
    if (a.has_boundary() && b.has_boundary())
        r.bnd = [a, b, opt](const BoundaryPoint& p) { return spectral_product(a, b, p, opt).value; };
    r.lambda_smooth = a.lambda_smooth && b.lambda_smooth;
    return r;
}

FreqFunction multiplier_apply(const std::function<double(double)>& a, const FreqFunction& theta) {
    FreqFunction r(theta.d, [a, theta](const FreqPoint& p) {
        return a(4.0 * std::abs(p.lambda) * (2.0 * p.m.length() + p.dim())) * theta(p);
    }, "multiplier(" + theta.label + ")");
    r.diagonal = theta.diagonal;
    r.n_max = theta.n_max;
    r.lambda_smooth = theta.lambda_smooth;
    if (theta.has_boundary())
        r.bnd = [a, theta](const BoundaryPoint& b) { return a(4.0 * b.abs_l1()) * theta.bnd(b); };
    return r;
}

}  // namespace heis
