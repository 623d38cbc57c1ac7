#pragma once

#include "heisapp/config.hpp"
#include "heisapp/report.hpp"

#include <heis/transform.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace heisapp::detail {

// Lazily built objects shared by suites inside one run.
class Context {
public:
    explicit Context(const Config& c) : cfg(c), grid(c.lambda_grid()) {}

    const Config& cfg;
    heis::LambdaGrid grid;

    const heis::SampledField& gaussian();
    const heis::SampledField& skew();
    const heis::SpectralTable& gaussian_table();

private:
    std::unique_ptr<heis::SampledField> gaussian_, skew_;
    std::unique_ptr<heis::SpectralTable> gaussian_table_;
};

// Same s-spacing as the config grid, half-extent widened to mass_window.
heis::GridSpec mass_grid(const Config& c);

// lambda in {+-0.35, +-0.8, +-1.5}, n, m in {0..4}^d
std::vector<heis::FreqPoint> identity_points(int d);

template <class... A>
std::string fmt(const char* f, A... a) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

void plancherel(Context& ctx, Report& r);
void inversion(Context& ctx, Report& r);
void convolution(Context& ctx, Report& r);
void sublaplacian(Context& ctx, Report& r);
void moments(Context& ctx, Report& r);
void primitive(Context& ctx, Report& r);
void wigner_symmetry(Context& ctx, Report& r);
void boundary_limit(Context& ctx, Report& r);
void boundary_ops(Context& ctx, Report& r);
void ladder(Context& ctx, Report& r);
void definitions(Context& ctx, Report& r);
void closed_forms(Context& ctx, Report& r);
void f_gamma(Context& ctx, Report& r);
void sqrt_modulus(Context& ctx, Report& r);
void mollifier(Context& ctx, Report& r);
void heat(Context& ctx, Report& r);

}  // namespace heisapp::detail
