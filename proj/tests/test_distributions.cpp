#include <doctest.h>

#include <heis/distributions.hpp>
#include <heis/profiles.hpp>
#include <heis/transform.hpp>

#include <cmath>
#include <memory>

using namespace heis;

namespace {

GridSpec grid33() {
    GridSpec g;
    g.ny = g.neta = g.ns = 33;
    return g;
}

PlaneField gauss_plane() {
    return PlaneField::sample(grid33(), [](const PhysPoint& w) { return std::exp(-w.norm_Y2()); });
}

}  // namespace

TEST_CASE("pairings with closed forms") {
    PairOptions opt;
    const auto h1 = heat_profile(1.0, 1);
    CHECK(pair(freq_I(1), h1, opt).value.real() == doctest::Approx(0.15421256876702123).epsilon(1e-5));

    // theta(xdot, k) = e^{-|xdot|} delta_{k,0} is the t = 1/4 heat boundary value
    const auto mu = freq_boundary_measure(1, [](const BoundaryPoint&) { return cplx(1.0); });
    CHECK(pair(mu, heat_profile(0.25, 1), opt).value.real() == doctest::Approx(1.0).epsilon(1e-8));

    CHECK(pair(freq_dirac_0hat(1, cplx(2.0, 1.0)), h1, opt).value == cplx(2.0, 1.0));
}

TEST_CASE("finite part") {
    CHECK_THROWS_AS(freq_pf(1, 2.0), InvalidArgument);
    CHECK_THROWS_AS(freq_pf(1, 2.5), InvalidArgument);
    PairOptions opt;
    // theta vanishing for small |lambda|(2n+1): Pf is the plain weighted integral
    Profile P = exp_floor(0.5, 1);
    const auto th = profile_function(P);
    const double g = 2.2;
    const auto pf = pair(freq_pf(1, g), th, opt).value;
    FreqFunction weighted(1, [&](const FreqPoint& p) {
        return th(p) * std::pow(std::abs(p.lambda) * (2.0 * p.m[0] + 1), -g);
    });
    weighted.diagonal = true;
    const auto plain = integrate(weighted, opt.grid, opt.sum).value;
    CHECK(std::abs(pf - plain) < 1e-6 * std::abs(plain));
    CHECK(std::abs(plain) > 0.0);
}

TEST_CASE("fourier_distribution closed forms") {
    const auto I = fourier_distribution(phys_dirac(1));
    REQUIRE(I.terms().size() == 1);
    CHECK(I.terms()[0].tag == DistTag::freq_I);

    const auto one = fourier_distribution(phys_one(1));
    REQUIRE(one.terms().size() == 1);
    CHECK(one.terms()[0].tag == DistTag::freq_dirac_0hat);
    CHECK(std::abs(one.terms()[0].coeff - pi * pi) < 1e-14);
    const auto one2 = fourier_distribution(phys_one(2));
    CHECK(std::abs(one2.terms()[0].coeff - pi * pi * pi / 2.0) < 1e-13);

    const auto gt = fourier_distribution(phys_g_tensor_one(std::make_shared<const PlaneField>(gauss_plane())));
    REQUIRE(gt.terms().size() == 1);
    CHECK(gt.terms()[0].tag == DistTag::freq_boundary_measure);
    CHECK(std::abs(gt.terms()[0].density(BoundaryPoint({1.0}, MultiIndex{0})) - pi * std::exp(-1.0)) < 1e-6);
    CHECK(gt.frequency_side());
    CHECK_FALSE(phys_one(1).frequency_side());
}

TEST_CASE("G_H of a Gaussian") {
    const auto g = gauss_plane();
    for (double xd : {0.25, 1.0, 4.0})
        CHECK(std::abs(g_hat_boundary(g, BoundaryPoint({xd}, MultiIndex{0})) - pi * std::exp(-xd)) < 1e-6);
    CHECK(std::abs(g_hat_boundary(g, BoundaryPoint({1.0}, MultiIndex{0})) - 1.1557273497909217) < 1e-6);
    for (int k : {-2, 1, 3}) CHECK(std::abs(g_hat_boundary(g, BoundaryPoint({0.8}, MultiIndex{k}))) < 1e-10);
    PlaneField z = g;
    for (auto& v : z.values) v = 0.0;
    CHECK(g_hat_boundary(z, BoundaryPoint({0.8}, MultiIndex{0})) == cplx(0.0));
}

TEST_CASE("f_gamma") {
    for (double g : {0.5, 1.0, 2.0, 3.7}) CHECK(make_f_gamma(g, 1)(FreqPoint(MultiIndex{0}, MultiIndex{0}, 1.0)) == cplx(1.0));
    CHECK(make_f_gamma(1.0, 1)(FreqPoint(MultiIndex{1}, MultiIndex{2}, 1.0)) == cplx(0.0));
    CHECK(make_f_gamma(1.0, 1)(FreqPoint(MultiIndex{1}, MultiIndex{1}, -0.5)).real() == doctest::Approx(1.0 / 1.5));
}

TEST_CASE("theta at the origin") {
    CHECK(theta_at_origin(heat_profile(1.0, 1)).value == cplx(1.0));
    auto h = heat_profile(1.0, 1);
    h.bnd = nullptr;
    const auto o = theta_at_origin(h);
    CHECK(std::abs(o.value - 1.0) < 1e-6);
}

TEST_CASE("duality on sampled functions") {
    const auto f = std::make_shared<const SampledField>(SampledField::sample(grid33(), [](const PhysPoint& w) {
        return std::exp(-w.norm_Y2() - (w.s - 0.2) * (w.s - 0.2));
    }));
    PairOptions opt;
    LambdaGridParams lp;
    lp.points_per_sign = 60;
    opt.grid = LambdaGrid(lp);
    opt.sum.adaptive = false;
    opt.sum.n_max = 24;
    const auto Ff = fourier_distribution(phys_function(f), 24);
    CHECK(Ff.frequency_side());
    const auto th = heat_profile(1.0, 1);
    const cplx lhs = pair(Ff, th, opt).value;
    const auto tf = transposed(tabulate(th, 24, opt.grid, "profile"), grid33());
    const cplx rhs = pair_phys(phys_function(f), tf);
    CHECK(std::abs(lhs - rhs) < 1e-3 * std::abs(lhs));
}

TEST_CASE("linear combinations") {
    PairOptions opt;
    const auto h = heat_profile(1.0, 1);
    const auto T = cplx(2.0) * freq_I(1) + freq_dirac_0hat(1, 3.0);
    CHECK(T.terms().size() == 2);
    CHECK(std::abs(pair(T, h, opt).value - (2.0 * pair(freq_I(1), h, opt).value + 3.0)) < 1e-12);
    CHECK_THROWS(freq_I(1) + phys_one(1));
    CHECK_FALSE(T.describe().empty());
}
