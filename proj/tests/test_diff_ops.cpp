#include <doctest.h>

#include <heis/diff_ops.hpp>
#include <heis/heisenberg.hpp>
#include <heis/profiles.hpp>
#include <heis/transform.hpp>

#include <cmath>

using namespace heis;

namespace {

const FreqPoint origin1(MultiIndex{0}, MultiIndex{0}, 1.0);

GridSpec grid() {
    GridSpec g;
    g.ny = g.neta = g.ns = 33;
    return g;
}

SampledField gaussian() {
    return SampledField::sample(grid(), [](const PhysPoint& w) { return std::exp(-w.norm_Y2() - w.s * w.s); });
}

std::vector<FreqPoint> points() {
    std::vector<FreqPoint> p;
    for (double l : {-1.2, -0.5, 0.5, 1.2})
        for (int n = 0; n <= 3; ++n)
            for (int m = 0; m <= 3; ++m) p.emplace_back(MultiIndex{n}, MultiIndex{m}, l);
    return p;
}

}  // namespace

TEST_CASE("delta_hat") {
    CHECK(delta_hat(zero_function(1), origin1) == cplx(0.0));
    CHECK(delta_hat(heat_profile(1.0, 1), origin1).real() == doctest::Approx(-0.009154747338190426).epsilon(1e-13));
}

TEST_CASE("dlambda_hat") {
    CHECK(dlambda_hat(zero_function(1), origin1) == cplx(0.0));
    CHECK(dlambda_hat(heat_profile(1.0, 1), origin1).real() == doctest::Approx(-0.064107808216746295).epsilon(1e-13));
    // without the analytic derivative the centered difference takes over
    auto h = heat_profile(1.0, 1);
    h.df = nullptr;
    CHECK(std::abs(dlambda_hat(h, origin1) - dlambda_hat(heat_profile(1.0, 1), origin1)) < 1e-8);
    h.lambda_smooth = false;
    CHECK_THROWS(dlambda_hat(h, origin1));
}

TEST_CASE("sigma0_hat") {
    const auto heat = heat_profile(0.7, 1);
    for (const auto& p : points()) CHECK(std::abs(sigma0_hat(heat, p)) < 1e-15);
}

TEST_CASE("ladder_freq closed values") {
    const auto heat = heat_profile(1.0, 1);
    CHECK(ladder_freq(FreqLadder::M, heat, origin1).real() == doctest::Approx(4.0 * std::exp(-4.0)));
    for (double l : {-0.6, 0.6}) CHECK(ladder_freq(FreqLadder::Mplus, heat, FreqPoint(MultiIndex{0}, MultiIndex{0}, l)) == cplx(0.0));
    CHECK_THROWS(parse_freq_ladder("bogus"));
}

TEST_CASE("diagonal preservation") {
    const auto heat = heat_profile(0.5, 1);
    for (const auto& p : points()) {
        if (p.n == p.m) continue;
        CHECK(std::abs(delta_hat(heat, p)) < 1e-15);
        CHECK(std::abs(dlambda_hat(heat, p)) < 1e-15);
        CHECK(std::abs(sigma0_hat(heat, p)) < 1e-15);
        CHECK(std::abs(ladder_freq(FreqLadder::M, heat, p)) < 1e-15);
    }
}

TEST_CASE("locality") {
    // theta supported on one point: each operator only sees its shifted neighbours
    const FreqPoint at(MultiIndex{2}, MultiIndex{3}, 0.8);
    FreqFunction spike(1, [&](const FreqPoint& p) {
        return (p.n == at.n && p.m == at.m) ? cplx(1.0) : cplx(0.0);
    });
    spike.df = [](const FreqPoint&) { return cplx(0.0); };
    for (int n = 0; n <= 6; ++n)
        for (int m = 0; m <= 6; ++m) {
            const int dn = n - 2, dm = m - 3;
            const bool near = (dn == dm && std::abs(dn) <= 1);
            const FreqPoint p(MultiIndex{n}, MultiIndex{m}, 0.8);
            if (!near) {
                CHECK(delta_hat(spike, p) == cplx(0.0));
                CHECK(dlambda_hat(spike, p) == cplx(0.0));
            }
        }
}

TEST_CASE("identities on a Gaussian") {
    const auto f = gaussian();
    const auto fh = ForwardEvaluator(f, 6).as_function();
    const auto sp = DerivScheme::spectral;
    const auto fx = ForwardEvaluator(apply_phys_op(PhysOp::X, f, 0, sp), 6).as_function();
    const auto m2 = ForwardEvaluator(apply_phys_op(PhysOp::M2, f), 6).as_function();
    const auto lap = ForwardEvaluator(apply_phys_op(PhysOp::DeltaH, f, 0, sp), 6).as_function();
    const auto fd = DirectEvaluator(f, 6).as_function();
    const auto m0 = DirectEvaluator(apply_phys_op(PhysOp::M0, f), 6).as_function();
    double e1 = 0, e2 = 0, e3 = 0, e4 = 0;
    for (const auto& p : points()) {
        e1 = std::max(e1, std::abs(fx(p) + ladder_freq(FreqLadder::Mplus, fh, p)));
        e2 = std::max(e2, std::abs(m2(p) + delta_hat(fh, p)));
        e3 = std::max(e3, std::abs(lap(p) + ladder_freq(FreqLadder::M, fh, p)));
        e4 = std::max(e4, std::abs(m0(p) - dlambda_hat(fd, p)));
    }
    CHECK(e1 < 1e-4);
    CHECK(e2 < 1e-4);
    CHECK(e3 < 1e-4);
    CHECK(e4 < 1e-4);

    const auto odd = SampledField::sample(grid(), [](const PhysPoint& w) {
        return std::exp(-w.norm_Y2() - (w.s - 0.4) * (w.s - 0.4));
    });
    const auto oh = ForwardEvaluator(odd, 6).as_function();
    const auto ph = ForwardEvaluator(apply_phys_op(PhysOp::P, odd, 0, sp), 6).as_function();
    double e5 = 0;
    for (const auto& p : points()) e5 = std::max(e5, std::abs(cplx(0, 2) * ph(p) - sigma0_hat(oh, p)));
    CHECK(e5 < 1e-4);
}

TEST_CASE("operator images compose") {
    const auto heat = heat_profile(1.0, 1);
    const auto d2 = delta_hat_fn(delta_hat_fn(heat));
    const FreqPoint p(MultiIndex{1}, MultiIndex{1}, 0.4);
    const auto dh = delta_hat_fn(heat);
    CHECK(std::abs(d2(p) - delta_hat(dh, p)) < 1e-15);
    CHECK(std::abs(sigma0_hat_fn(heat)(p)) < 1e-15);
    CHECK(std::abs(ladder_freq_fn(FreqLadder::M, heat)(p) - ladder_freq(FreqLadder::M, heat, p)) < 1e-15);
    CHECK(std::abs(dlambda_hat_fn(heat)(p) - dlambda_hat(heat, p)) < 1e-15);
}
