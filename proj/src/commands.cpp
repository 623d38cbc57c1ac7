#include "heisapp/commands.hpp"

#include "heisapp/fields.hpp"
#include "heisapp/report.hpp"
#include "heisapp/suites.hpp"

#include <heis/distributions.hpp>
#include <heis/profiles.hpp>
#include <heis/transform.hpp>
#include <heis/wigner.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

namespace heisapp {

namespace fs = std::filesystem;
using heis::cplx;
using ojson = nlohmann::ordered_json;

namespace {

std::string prepare(const std::string& out_dir, const std::string& name) {
    fs::create_directories(out_dir);
    return (fs::path(out_dir) / name).string();
}

void write_json(const std::string& path, const ojson& j) {
    std::ofstream os(path);
    if (!os) throw heis::FormatError("cannot write " + path);
    os << j.dump(2) << "\n";
}

heis::SampledField read_any_field(const std::string& path) {
    if (fs::path(path).extension() == ".csv") {
        std::ifstream is(path);
        if (!is) throw heis::FormatError("cannot open " + path);
        return heis::read_field_csv(is);
    }
    return heis::load_field(path);
}

double rel_sup_on_ball(const heis::SampledField& a, const heis::SampledField& b, double R) {
    double err = 0.0, top = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto w = a.point(i);
        if (w.norm_Y2() + w.s * w.s > R * R) continue;
        err = std::max(err, std::abs(a[i] - b[i]));
        top = std::max(top, std::abs(b[i]));
    }
    return top > 0.0 ? err / top : err;
}

// name:param, e.g. heat:1
std::pair<std::string, double> split_spec(const std::string& s, double fallback) {
    const auto c = s.find(':');
    if (c == std::string::npos) return {s, fallback};
    try {
        return {s.substr(0, c), std::stod(s.substr(c + 1))};
    } catch (const std::exception&) {
        throw heis::InvalidArgument("bad parameter in '" + s + "'");
    }
}

}  // namespace

int cmd_transform(const TransformArgs& a, const Config& c, const std::string& out_dir, std::ostream& log) {
    ojson summary;
    summary["direction"] = a.direction;
    const double tail_tol = c.tolerance("transform.residual", 1e-6);
    if (a.direction == "forward") {
        const heis::SampledField f = a.input.empty() ? named_field(a.fixture.empty() ? "gaussian" : a.fixture, c.grid)
                                                     : read_any_field(a.input);
        const heis::LambdaGrid grid = c.lambda_grid();
        const heis::SpectralTable t = heis::forward_factored(f, c.n_max, grid);
        heis::save_table(prepare(out_dir, "table.csv"), t);
        const auto n = heis::plancherel_norms(f, t);
        const double k = 1.0 / heis::inversion_constant(f.dim());
        summary["input"] = a.input.empty() ? "fixture:" + (a.fixture.empty() ? std::string("gaussian") : a.fixture)
                                           : a.input;
        summary["n_max"] = c.n_max;
        summary["phys_norm_sq"] = n.phys_sq;
        summary["freq_norm_sq"] = n.freq_sq;
        summary["plancherel_ratio"] = n.phys_sq > 0.0 ? n.ratio() : 0.0;
        summary["plancherel_ratio_over_constant"] = n.phys_sq > 0.0 ? n.ratio() / k : 0.0;
        summary["residual"] = t.residual;
        if (a.round_trip) {
            const heis::SampledField back = heis::inverse(t, f.grid());
            summary["round_trip_rel_sup_error"] = rel_sup_on_ball(back, f, 3.0);
        }
        summary["tail_ok"] = t.residual <= tail_tol;
        write_json(prepare(out_dir, "summary.json"), summary);
        log << "forward: table.csv (" << t.grid().size() << " lambda x " << t.box() << "^2), Plancherel ratio "
            << summary["plancherel_ratio"].get<double>() << ", residual " << t.residual << "\n";
        if (t.residual > tail_tol) {
            log << "error: quadrature residual " << t.residual << " exceeds " << tail_tol << "\n";
            return kFailed;
        }
        return kOk;
    }
    if (a.direction == "inverse") {
        if (a.input.empty()) throw heis::InvalidArgument("inverse needs --input <table.csv>");
        const heis::SpectralTable t = heis::load_table(a.input);
        heis::GridSpec g = c.grid;
        g.d = t.dim();
        const heis::SampledField f = heis::inverse(t, g);
        heis::save_field(prepare(out_dir, "field.bin"), f);
        summary["input"] = a.input;
        summary["sup"] = f.sup_norm();
        summary["l2"] = f.l2_norm();
        summary["integral_re"] = f.integral().real();
        summary["integral_im"] = f.integral().imag();
        write_json(prepare(out_dir, "summary.json"), summary);
        log << "inverse: field.bin, sup " << f.sup_norm() << "\n";
        return kOk;
    }
    throw heis::InvalidArgument("direction must be forward or inverse");
}

int cmd_heat(const HeatArgs& a, const Config& c, const std::string& out_dir, std::ostream& log) {
    const heis::SampledField u0 = a.input.empty() ? named_field(a.fixture, c.grid) : read_any_field(a.input);
    const heis::SpectralTable t0 = heis::forward_factored(u0, c.n_max, c.lambda_grid());
    const heis::FreqFunction th0 = t0.as_function();
    ojson summary;
    summary["n_max"] = c.n_max;
    summary["steps"] = ojson::array();
    for (double t : a.times) {
        if (!(t >= 0.0)) throw heis::InvalidArgument("heat: times must be nonnegative");
        const auto evolved = heis::multiplier_apply([t](double r) { return std::exp(-t * r); }, th0);
        const auto tab = heis::tabulate(evolved, c.n_max, t0.grid(), "heat");
        const heis::SampledField u = heis::inverse(tab, u0.grid());
        std::ostringstream name;
        name << "heat_t" << t << ".bin";
        heis::save_field(prepare(out_dir, name.str()), u);
        summary["steps"].push_back({{"t", t},
                                    {"file", name.str()},
                                    {"sup", u.sup_norm()},
                                    {"integral_re", u.integral().real()},
                                    {"integral_im", u.integral().imag()}});
        log << "t = " << t << ": " << name.str() << ", sup " << u.sup_norm() << "\n";
    }
    write_json(prepare(out_dir, "heat_summary.json"), summary);
    return kOk;
}

int cmd_pair(const PairArgs& a, const Config& c, const std::string& out_dir, std::ostream& log) {
    const int d = c.d;
    const auto [tname, tparam] = split_spec(a.theta, 1.0);
    FixtureSpec fx{tname, tparam};
    const heis::FreqFunction theta = tname == "heat" ? heis::heat_profile(tparam, d) : heis::profile_function(fx.build(d));

    const auto [dname, dparam] = split_spec(a.dist, 1.0);
    heis::Distribution T;
    if (dname == "dirac") T = heis::fourier_distribution(heis::phys_dirac(d), c.n_max);
    else if (dname == "one") T = heis::fourier_distribution(heis::phys_one(d), c.n_max);
    else if (dname == "g_tensor_one")
        T = heis::fourier_distribution(
            heis::phys_g_tensor_one(std::make_shared<const heis::PlaneField>(gaussian_plane(c.grid))), c.n_max);
    else if (dname == "I") T = heis::freq_I(d);
    else if (dname == "dirac_0hat") T = heis::freq_dirac_0hat(d, dparam);
    else if (dname == "pf") T = heis::freq_pf(d, dparam);
    else if (dname == "mu") T = heis::freq_boundary_measure(d, [](const heis::BoundaryPoint&) { return cplx(1.0); });
    else throw heis::InvalidArgument("unknown distribution '" + a.dist + "'");

    heis::PairOptions opt;
    opt.grid = c.lambda_grid();
    const auto res = heis::pair(T, theta, opt);
    ojson rec;
    rec["distribution"] = T.describe();
    rec["test_function"] = theta.label;
    rec["value_re"] = res.value.real();
    rec["value_im"] = res.value.imag();
    rec["tail_bound"] = std::isfinite(res.tail_bound) ? ojson(res.tail_bound) : ojson("inf");
    write_json(prepare(out_dir, "pair.json"), rec);
    log << rec.dump() << "\n";
    return kOk;
}

int cmd_kernel(const KernelArgs& a, const Config& c, const std::string& out_dir, std::ostream& log) {
    if (c.d != 1) throw heis::InvalidArgument("kernel: tabulation is for d = 1");
    const std::string path = prepare(out_dir, "kernel.csv");
    std::ofstream os(path);
    if (!os) throw heis::FormatError("cannot write " + path);
    os << "y,eta,re,im\n" << std::setprecision(17);
    double top = 0.0;
    for (int i = 0; i < c.grid.ny; ++i)
        for (int j = 0; j < c.grid.neta; ++j) {
            const double y = c.grid.coord(0, i), eta = c.grid.coord(1, j);
            const cplx k = heis::boundary_kernel1(a.xdot, a.k, y, eta);
            top = std::max(top, std::abs(k));
            os << y << ',' << eta << ',' << k.real() << ',' << k.imag() << '\n';
        }
    log << "kernel.csv: K(" << a.xdot << ", " << a.k << ", Y) on " << c.grid.ny << "x" << c.grid.neta
        << " points, max |K| " << top << "\n";
    return kOk;
}

int cmd_verify(const std::string& suite, const Config& c, const std::string& out_dir, std::ostream& log) {
    if (!is_suite(suite)) {
        log << "error: unknown suite '" << suite << "'; expected all or one of:";
        for (const auto& s : suites()) log << ' ' << s.id;
        log << "\n";
        return kUsage;
    }
    Report r;
    run_suite(suite, c, r);
    const std::string text = r.json(config_json(c));
    if (!out_dir.empty()) {
        std::ofstream os(prepare(out_dir, "report.json"));
        os << text;
    }
    for (const auto& s : suites()) {
        if (suite != "all" && s.id != suite) continue;
        log << (r.pass(s.id) ? "PASS " : "FAIL ") << s.id << "\n";
    }
    for (const auto& f : r.failures()) log << "  failed " << f << "\n";
    return r.all_pass() ? kOk : kFailed;
}

}  // namespace heisapp
