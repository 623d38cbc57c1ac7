#include <doctest.h>

#include <heis/heisenberg.hpp>
#include <heis/profiles.hpp>
#include <heis/transform.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace heis;

namespace {

GridSpec grid33() {
    GridSpec g;
    g.ny = g.neta = g.ns = 33;
    return g;
}

SampledField gaussian(const GridSpec& g = grid33()) {
    return SampledField::sample(g, [](const PhysPoint& w) { return std::exp(-w.norm_Y2() - w.s * w.s); });
}

SampledField skew(const GridSpec& g = grid33()) {
    return SampledField::sample(g, [](const PhysPoint& w) {
        return std::exp(-(w.y[0] - 0.3) * (w.y[0] - 0.3) - (w.eta[0] + 0.2) * (w.eta[0] + 0.2) -
                        (w.s - 0.25) * (w.s - 0.25)) *
               (1.0 + 0.3 * w.y[0]);
    });
}

double oracle00(double l) { return std::pow(pi, 1.5) * std::exp(-l * l / 4) / (1 + std::abs(l)); }

LambdaGrid coarse_grid() {
    LambdaGridParams p;
    p.points_per_sign = 60;
    return LambdaGrid(p);
}

}  // namespace

TEST_CASE("forward_direct") {
    const SampledField zero(grid33());
    CHECK(forward_direct(zero, FreqPoint(MultiIndex{1}, MultiIndex{2}, 0.7)) == cplx(0.0));
    const auto f = gaussian();
    for (double l : {-2.0, -0.5, 0.5, 1.0, 2.0})
        CHECK(std::abs(forward_direct(f, FreqPoint(MultiIndex{0}, MultiIndex{0}, l)) - oracle00(l)) < 1e-6);
    CHECK(oracle00(1.0) == doctest::Approx(2.168309102165480658).epsilon(1e-14));
}

TEST_CASE("definition equivalence") {
    const auto f = skew();
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> idx(0, 3);
    std::uniform_real_distribution<double> lam(0.2, 2.0);
    for (int i = 0; i < 8; ++i) {
        const MultiIndex n{idx(rng)}, m{idx(rng)};
        const double l = (i % 2 ? -1 : 1) * lam(rng);
        CHECK(std::abs(forward_direct(f, FreqPoint(n, m, l)) - rep_matrix_coeff(f, l, n, m)) < 1e-6);
    }
    CHECK(rep_matrix_coeff(SampledField(grid33()), 0.5, MultiIndex{0}, MultiIndex{0}) == cplx(0.0));
}

TEST_CASE("narrow bump at the origin gives the identity") {
    GridSpec g;
    g.ny = g.neta = g.ns = 41;
    g.Ly = g.Leta = g.Ls = 1.0;
    const double a = 60.0;
    auto f = SampledField::sample(g, [&](const PhysPoint& w) { return std::exp(-a * (w.norm_Y2() + w.s * w.s)); });
    f *= cplx(1.0 / f.integral().real());
    // the kernel ridge is narrow, so the Gauss-Hermite rule needs many nodes
    for (int n = 0; n <= 2; ++n)
        for (int m = 0; m <= 2; ++m) {
            const double id = n == m ? 1.0 : 0.0;
            CHECK(std::abs(forward_direct(f, FreqPoint(MultiIndex{n}, MultiIndex{m}, 0.5)) - id) < 5e-2);
            CHECK(std::abs(rep_matrix_coeff(f, 0.5, MultiIndex{n}, MultiIndex{m}, 240) - id) < 5e-2);
        }
}

TEST_CASE("factored pipeline") {
    const auto grid = coarse_grid();
    const auto zt = forward_factored(SampledField(grid33()), 4, grid);
    for (const auto& v : zt.data()) CHECK(v == cplx(0.0));

    const auto f = gaussian();
    GridSpec g49 = grid33();
    g49.ny = g49.neta = g49.ns = 49;
    const auto f49 = gaussian(g49);
    std::vector<cplx> s, s49;
    for (double l : {-1.0, 0.5, 2.0}) {
        forward_factored_slice(f, l, 6, s);
        CHECK(std::abs(s[0] - oracle00(l)) < 1e-5);
        // direct quadrature needs the finer grid at n = 6, lambda = 2
        std::vector<cplx> dsl;
        forward_direct_slice(f49, l, 6, dsl);
        forward_factored_slice(f49, l, 6, s49);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(std::abs(s49[i] - dsl[i]) < 1e-10);
            CHECK(std::abs(s[i] - s49[i]) < 1e-6);
        }
    }
    CHECK(f.dim() == 1);
}

TEST_CASE("phi remap scaling") {
    auto phi = [](double a, double b) { return cplx(std::exp(-a * a - 0.5 * b * b), 0.3 * a * std::exp(-a * a - b * b)); };
    double n0 = 0.0;
    const double h = 0.02;
    for (double a = -8; a <= 8; a += h)
        for (double b = -8; b <= 8; b += h) n0 += std::norm(phi(a, b)) * h * h;
    for (double l : {0.5, 2.0}) {
        const auto P = phi_remap(phi, l);
        double n1 = 0.0;
        const double L = 12.0, k = 0.02;
        for (double x = -L; x <= L; x += k)
            for (double xp = -L; xp <= L; xp += k) n1 += std::norm(P(x, xp)) * k * k;
        CHECK(std::sqrt(n1) == doctest::Approx(std::sqrt(n0) / std::sqrt(l)).epsilon(1e-6));
    }
}

TEST_CASE("plancherel on a coarse grid") {
    const auto f = gaussian();
    const auto t = forward_factored(f, 24, coarse_grid());
    const auto n = plancherel_norms(f, t);
    CHECK(n.ratio() / (pi * pi) == doctest::Approx(1.0).epsilon(1e-2));
    const SampledField zero(grid33());
    const auto nz = plancherel_norms(zero, forward_factored(zero, 4, coarse_grid()));
    CHECK(nz.phys_sq == 0.0);
    CHECK(nz.freq_sq == 0.0);
    auto f3 = f;
    f3 *= cplx(3.0);
    const auto t3 = forward_factored(f3, 24, coarse_grid());
    CHECK(plancherel_norms(f3, t3).ratio() == doctest::Approx(n.ratio()).epsilon(1e-12));
}

TEST_CASE("inverse") {
    const auto grid = coarse_grid();
    SpectralTable zt(1, 4, grid);
    CHECK(inverse(zt, grid33()).sup_norm() == 0.0);

    // pointwise round trip at the origin and a few nearby points, N = 48
    const auto f = gaussian();
    const auto t = forward_factored(f, 48, grid);
    for (const auto& w : {PhysPoint(0, 0, 0), PhysPoint(0.5, -0.5, 0.25), PhysPoint(1.0, 0.5, -1.0)}) {
        const double ex = std::exp(-w.norm_Y2() - w.s * w.s);
        CHECK(std::abs(inverse_at(t, w) - ex) < 1e-2);
    }

    // heat kernel: real, positive, unit mass
    GridSpec wide = grid33();
    wide.ns = 2 * 96 + 1;
    wide.Ls = 36.0;
    const auto h = inverse(tabulate(heat_profile(1.0, 1), 24, grid, "profile"), wide);
    double mx = 0.0, mn = 0.0, im = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        // beyond the core window the index truncation shows up as ringing
        if (std::abs(h.point(i).s) > 6.0 + 1e-9) continue;
        mx = std::max(mx, h[i].real());
        mn = std::min(mn, h[i].real());
        im = std::max(im, std::abs(h[i].imag()));
    }
    CHECK(-mn / mx < 1e-6);
    CHECK(im / mx < 1e-10);
    CHECK(h.integral().real() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("transposed transform is a reflected inverse") {
    const auto grid = coarse_grid();
    const auto t = tabulate(heat_profile(0.5, 1), 12, grid, "profile");
    const auto skewed = multiplier_apply([](double r) { return 1.0 / (1.0 + r); }, t.as_function());
    FreqFunction th(1, [&](const FreqPoint& p) {
        return p.n[0] == 0 && p.m[0] == 1 ? cplx(0.0, 0.2) * std::exp(-std::abs(p.lambda)) : skewed(p);
    });
    const auto tab = tabulate(th, 12, grid, "profile");
    for (const auto& w : {PhysPoint(0.3, 0.4, 0.5), PhysPoint(-1.0, 0.2, -0.7)}) {
        const PhysPoint r(w.y[0], -w.eta[0], -w.s);
        GridSpec one = grid33();
        const auto T = transposed(tab, one);
        const auto I = inverse(tab, one);
        // grid is symmetric: locate w and its reflection
        auto at = [&](const SampledField& F, const PhysPoint& q) { return F.interpolate(q); };
        CHECK(std::abs(at(T, w) - (pi * pi) * at(I, r)) < 1e-6 * std::abs(at(T, w)) + 1e-9);
    }
}

TEST_CASE("spectral product and multipliers") {
    const auto h1 = heat_profile(0.5, 1), h2 = heat_profile(1.5, 1), h12 = heat_profile(2.0, 1);
    for (double l : {-0.7, 0.02, 1.3})
        for (int n = 0; n <= 5; ++n) {
            const FreqPoint p(MultiIndex{n}, MultiIndex{n}, l);
            CHECK(std::abs(spectral_product(h1, h2, p).value - h12(p)) < 1e-15);
        }
    CHECK(spectral_product(h1, zero_function(1), FreqPoint(MultiIndex{0}, MultiIndex{0}, 1.0)).value == cplx(0.0));

    // boundary product commutes
    FreqFunction a(1, [](const FreqPoint&) { return cplx(0.0); }), b = a;
    a.bnd = [](const BoundaryPoint& q) { return std::exp(-q.abs_l1() - 0.5 * q.k[0] * q.k[0]) * cplx(1.0, 0.1 * q.k[0]); };
    b.bnd = [](const BoundaryPoint& q) { return std::exp(-2.0 * q.abs_l1() - std::abs(q.k[0] - 1)); };
    for (int k = -2; k <= 2; ++k) {
        const BoundaryPoint q({0.7}, MultiIndex{k});
        CHECK(std::abs(spectral_product(a, b, q).value - spectral_product(b, a, q).value) < 1e-14);
    }

    const auto th = heat_profile(1.0, 1);
    const FreqPoint p(MultiIndex{2}, MultiIndex{2}, 0.3);
    CHECK(multiplier_apply([](double) { return 1.0; }, th)(p) == th(p));
    CHECK(std::abs(multiplier_apply([](double r) { return std::exp(-0.5 * r); }, th)(p) - heat_profile(1.5, 1)(p)) < 1e-15);

    // a(r) = r on F f reproduces -F(Delta_H f)
    const auto f = gaussian();
    const auto fh = ForwardEvaluator(f, 6).as_function();
    const auto lap = ForwardEvaluator(apply_phys_op(PhysOp::DeltaH, f, 0, DerivScheme::spectral), 6).as_function();
    const auto mr = multiplier_apply([](double r) { return r; }, fh);
    for (int n = 0; n <= 3; ++n) {
        const FreqPoint q(MultiIndex{n}, MultiIndex{n}, 0.8);
        CHECK(std::abs(mr(q) + lap(q)) < 1e-4);
    }
}

TEST_CASE("heat scaling and multiplier against the product") {
    const auto one = heat_profile(1.0, 1);
    for (double t : {0.1, 3.0})
        for (int n = 0; n <= 4; ++n) {
            const FreqPoint p(MultiIndex{n}, MultiIndex{n}, 0.37);
            CHECK(std::abs(heat_profile(t, 1)(p) - one(FreqPoint(p.n, p.m, t * p.lambda))) < 1e-15);
        }
    const auto fh = ForwardEvaluator(skew(), 8).as_function();
    const auto ev = multiplier_apply([](double r) { return std::exp(-0.3 * r); }, fh);
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; m <= 3; ++m) {
            const FreqPoint p(MultiIndex{n}, MultiIndex{m}, -0.6);
            CHECK(std::abs(ev(p) - spectral_product(fh, heat_profile(0.3, 1), p).value) < 1e-12);
        }
}

TEST_CASE("conjugation symmetry") {
    auto f = skew();
    for (std::size_t i = 0; i < f.size(); ++i) f[i] *= cplx(1.0, 0.4 * f.point(i).eta[0]);
    auto fbar = f;
    for (auto& v : fbar.data()) v = std::conj(v);
    for (double l : {-1.3, 0.9})
        for (int n = 0; n <= 2; ++n)
            for (int m = 0; m <= 2; ++m) {
                const cplx a = forward_direct(fbar, FreqPoint(MultiIndex{n}, MultiIndex{m}, l));
                const cplx b = forward_direct(f, FreqPoint(MultiIndex{n}, MultiIndex{m}, -l));
                CHECK(std::abs(a - std::conj(b)) < 1e-12);
            }
}

TEST_CASE("table io") {
    const auto t = forward_factored(skew(), 3, coarse_grid());
    std::stringstream csv;
    write_table_csv(csv, t);
    const auto back = read_table(csv, table_sidecar_json(t));
    CHECK(back.n_max() == 3);
    CHECK(back.provenance() == t.provenance());
    CHECK(back.grid().values() == t.grid().values());
    CHECK(back.data() == t.data());
    std::stringstream bad("n1,m1,lambda,re,im\n0,0,xx,1,2\n");
    CHECK_THROWS_AS(read_table(bad, table_sidecar_json(t)), FormatError);
}
