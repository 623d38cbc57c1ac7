#include "heisapp/suites.hpp"

#include "heisapp/fields.hpp"
#include "suite_common.hpp"

#include <cmath>
#include <functional>

namespace heisapp {

namespace detail {

const heis::SampledField& Context::gaussian() {
    if (!gaussian_) gaussian_ = std::make_unique<heis::SampledField>(gaussian_field(cfg.grid));
    return *gaussian_;
}

const heis::SampledField& Context::skew() {
    if (!skew_) skew_ = std::make_unique<heis::SampledField>(skew_field(cfg.grid));
    return *skew_;
}

const heis::SpectralTable& Context::gaussian_table() {
    if (!gaussian_table_)
        gaussian_table_ = std::make_unique<heis::SpectralTable>(heis::forward_factored(gaussian(), cfg.n_max, grid));
    return *gaussian_table_;
}

heis::GridSpec mass_grid(const Config& c) {
    heis::GridSpec g = c.grid;
    const double hs = g.axis_h(2 * g.d);
    const int half = static_cast<int>(std::lround(c.mass_window / hs));
    g.ns = 2 * half + 1;
    g.Ls = half * hs;
    return g;
}

std::vector<heis::FreqPoint> identity_points(int d) {
    std::vector<heis::FreqPoint> out;
    const std::size_t box = heis::box_size(d, 4);
    for (double l : {0.35, 0.8, 1.5})
        for (double sg : {1.0, -1.0})
            for (std::size_t a = 0; a < box; ++a)
                for (std::size_t b = 0; b < box; ++b)
                    out.emplace_back(heis::unflat_index(a, d, 4), heis::unflat_index(b, d, 4), sg * l);
    return out;
}

}  // namespace detail

namespace {

struct Entry {
    SuiteInfo info;
    std::function<void(detail::Context&, Report&)> run;
};

const std::vector<Entry>& registry() {
    using namespace detail;
    static const std::vector<Entry> r = {
        {{"plancherel", "Plancherel constant on the Gaussian"}, plancherel},
        {{"inversion", "forward/inverse round trip"}, inversion},
        {{"convolution", "convolution vs spectral product"}, convolution},
        {{"sublaplacian", "sub-Laplacian symbol"}, sublaplacian},
        {{"moments", "|Y|^2 and -is multipliers vs Delta-hat, D-hat_lambda"}, moments},
        {{"primitive", "P vs Sigma-hat_0"}, primitive},
        {{"wigner_symmetry", "Wigner reflection symmetry and bound"}, wigner_symmetry},
        {{"boundary_limit", "W -> K along the boundary approach"}, boundary_limit},
        {{"boundary_ops", "boundary values of Delta-hat and D-hat_lambda"}, boundary_ops},
        {{"ladder", "ladder intertwining identities"}, ladder},
        {{"definitions", "direct quadrature vs representation matrix"}, definitions},
        {{"closed_forms", "Fourier transforms of delta, 1 and g x 1"}, closed_forms},
        {{"f_gamma", "L1_M norm of f_gamma under refinement"}, f_gamma},
        {{"sqrt_modulus", "square-root modulus at the origin"}, sqrt_modulus},
        {{"mollifier", "concentrating lambda-profiles vs the boundary measure"}, mollifier},
        {{"heat", "heat profile algebra, positivity and mass"}, heat},
    };
    return r;
}

}  // namespace

const std::vector<SuiteInfo>& suites() {
    static const std::vector<SuiteInfo> s = [] {
        std::vector<SuiteInfo> v;
        for (const auto& e : registry()) v.push_back(e.info);
        return v;
    }();
    return s;
}

bool is_suite(const std::string& id) {
    if (id == "all") return true;
    for (const auto& e : registry())
        if (e.info.id == id) return true;
    return false;
}

void run_suite(const std::string& id, const Config& c, Report& r) {
    if (!is_suite(id)) throw UnknownSuite(id);
    c.validate();
    detail::Context ctx(c);
    for (const auto& e : registry())
        if (id == "all" || e.info.id == id) e.run(ctx, r);
}

}  // namespace heisapp
