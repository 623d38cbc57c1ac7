#include <doctest.h>

#include <heis/diff_ops.hpp>
#include <heis/freq_space.hpp>
#include <heis/profiles.hpp>

#include <cmath>

using namespace heis;

TEST_CASE("heat profile values") {
    const auto h = heat_profile(1.0, 1);
    CHECK(h(FreqPoint(MultiIndex{0}, MultiIndex{0}, 1.0)).real() == doctest::Approx(std::exp(-4.0)).epsilon(1e-15));
    CHECK(h(FreqPoint(MultiIndex{2}, MultiIndex{1}, 1.0)) == cplx(0.0));
    // small t tends to 1 on the diagonal
    CHECK(std::abs(heat_profile(1e-9, 1)(FreqPoint(MultiIndex{5}, MultiIndex{5}, 2.0)) - 1.0) < 1e-7);
    const auto h2 = heat_profile(0.5, 2);
    CHECK(h2(FreqPoint(MultiIndex{1, 2}, MultiIndex{1, 2}, -0.3)).real() ==
          doctest::Approx(std::exp(-4 * 0.5 * 0.3 * (2 * 3 + 2))));
    CHECK(h.at(BoundaryPoint({0.7}, MultiIndex{0})).real() == doctest::Approx(std::exp(-2.8)));
    CHECK_THROWS(heat_profile(0.0, 1));
}

TEST_CASE("profile_theta") {
    const Profile P = heat_fixture(1.0, 1);
    for (double l : {-0.4, 0.9})
        for (int n = 0; n <= 4; ++n) {
            CHECK(profile_theta(P, FreqPoint(MultiIndex{n}, MultiIndex{n}, l)) ==
                  doctest::Approx(std::exp(-4 * std::abs(l) * (2 * n + 1))).epsilon(1e-15));
            CHECK(profile_theta(P, FreqPoint(MultiIndex{n}, MultiIndex{n + 1}, l)) == 0.0);
        }
    CHECK(profile_theta(P, BoundaryPoint({-0.6}, MultiIndex{0})) == doctest::Approx(std::exp(-2.4)));

    // boundary value is the limit along three approach sequences
    const Profile G = gauss_profile(0.7, 1);
    const double b = profile_theta(G, BoundaryPoint({1.2}, MultiIndex{0}));
    for (int n : {100, 1000, 10000}) {
        CHECK(std::abs(profile_theta(G, FreqPoint(MultiIndex{n}, MultiIndex{n}, 1.2 / (2 * n + 1))) - b) < 1e-12);
        CHECK(std::abs(profile_theta(G, FreqPoint(MultiIndex{n}, MultiIndex{n}, 1.2 / (2 * n + 1.5))) - b) < 0.6 / n);
    }
}

TEST_CASE("profile_function carries derivatives and the boundary") {
    const Profile E = exp_floor(0.5, 1, 0.3);
    const auto th = profile_function(E);
    CHECK(th.has_analytic_dlambda());
    CHECK(th.has_boundary());
    const FreqPoint p(MultiIndex{3}, MultiIndex{5}, 0.2);
    const double h = 1e-6;
    const cplx fd = (th(FreqPoint(p.n, p.m, p.lambda + h)) - th(FreqPoint(p.n, p.m, p.lambda - h))) / (2 * h);
    CHECK(std::abs(th.dlambda(p) - fd) < 1e-7);
}

TEST_CASE("x_floor parity and decay") {
    const Profile E = exp_floor(0.5, 1);
    std::vector<XVec> xs;
    for (double x : {0.0, 0.2, 0.4, 0.6, 1.0, 3.0}) xs.push_back({x, 0.0});
    std::vector<MultiIndex> ks;
    for (int k = -3; k <= 3; ++k) ks.push_back(MultiIndex{k});
    const std::vector<double> ls{-1.0, 0.0, 0.5};
    CHECK(parity_violation(E, xs, ks, ls) < 1e-15);
    CHECK(E(XVec{0.2, 0.0}, MultiIndex{0}, 0.0) == 0.0);
    CHECK(std::isfinite(decay_sup(E, 4, xs, ks, ls)));
    const auto st = smooth_step(0.5);
    CHECK(st[0] == doctest::Approx(0.5));
    CHECK(smooth_step(0.0)[0] == 0.0);
    CHECK(smooth_step(1.0)[0] == 1.0);
}

TEST_CASE("boundary_diff") {
    const Profile E = exp_floor(0.5, 1);
    for (double xd : {1.0, 2.0, 3.5}) {
        const auto bd = boundary_diff(E, BoundaryPoint({xd}, MultiIndex{0}));
        CHECK(bd.delta == doctest::Approx((xd - 1.0) * std::exp(-xd)).epsilon(1e-13));
        CHECK(bd.dlambda == 0.0);
    }
    CHECK(boundary_diff(E, BoundaryPoint({2.0}, MultiIndex{0})).delta == doctest::Approx(0.1353352832366127));
    // the k^2 term against the interior operator at lambda ~ 1e-3
    const auto th = profile_function(E);
    const double xd = 2.0;
    const int k = 2, n = static_cast<int>(std::lround((xd / 1e-3 - k - 1) / 2));
    const auto bd = boundary_diff(E, BoundaryPoint({xd}, MultiIndex{k}));
    const double with_k = bd.delta, without_k = bd.delta + k * k / (4 * xd) * E(XVec{xd, 0.0}, MultiIndex{k}, 0.0);
    CHECK(std::abs(with_k - without_k) > 1e-3);
    const cplx interior = delta_hat(th, FreqPoint(MultiIndex{n}, MultiIndex{n + k}, xd / (2.0 * n + k + 1)));
    CHECK(std::abs(interior - with_k) < 2e-2 * std::abs(with_k));

    CHECK_THROWS(boundary_diff(heat_fixture(1.0, 1), BoundaryPoint({1.0}, MultiIndex{0})));
    CHECK_THROWS(boundary_diff(exp_floor(0.5, 2), BoundaryPoint({1.0, 1.0}, MultiIndex{0, 0})));
}

TEST_CASE("m_equiv_fit") {
    const auto th = profile_function(gauss_profile(1.0, 1));
    std::vector<FreqPoint> pts;
    for (double l : {1e-3, 1e-2, 0.1, 0.5})
        for (int n = 0; n <= 6; ++n) pts.emplace_back(MultiIndex{n}, MultiIndex{n}, l);
    CHECK(m_equiv_fit(th, th, 3, 3, pts) == 0.0);

    // Taylor step: Theta_f(w^+) against Theta_f + 2|lambda| Theta_{f'}
    const Profile P = gauss_profile(1.0, 1);
    Profile dP = P;
    dP.f = [P](const XVec& x, const MultiIndex& k, double l) { return P.dx(x, k, l, 0); };
    const auto dth = profile_function(dP);
    FreqFunction shifted(1, [th](const FreqPoint& p) { return th(FreqPoint(p.n.shifted(0, 1), p.m.shifted(0, 1), p.lambda)); });
    FreqFunction taylor(1, [th, dth](const FreqPoint& p) { return th(p) + 2.0 * std::abs(p.lambda) * dth(p); });
    std::vector<double> C;
    for (double lmin : {1e-2, 1e-3, 1e-4}) {
        std::vector<FreqPoint> s;
        for (double l = lmin; l < 2.0; l *= 1.5)
            for (int n = 0; n <= 10; ++n) s.emplace_back(MultiIndex{n}, MultiIndex{n}, l);
        C.push_back(m_equiv_fit(shifted, taylor, 1, 0, s));
    }
    CHECK(std::isfinite(C[2]));
    CHECK(C[2] == doctest::Approx(C[1]).epsilon(0.05));

    // a profile vanishing near lambda = 0 is M-equivalent to 0 for every M
    Profile Q = gauss_profile(1.0, 1);
    Q.f = [](const XVec& x, const MultiIndex& k, double l) {
        const double a = std::abs(l);
        return (k[0] == 0 && a > 0.5 && a < 2.0) ? std::exp(-x[0]) * std::pow(std::sin(pi * (a - 0.5) / 1.5), 2) : 0.0;
    };
    const auto q = profile_function(Q);
    for (int M : {1, 4, 8}) CHECK(std::isfinite(m_equiv_fit(q, zero_function(1), M, 2, pts)));
}

TEST_CASE("membership evidence") {
    const LambdaGrid g;
    for (const auto& P : {heat_fixture(1.0, 1), gauss_profile(0.7, 1), exp_floor(0.5, 1)}) {
        const auto th = profile_function(P);
        for (int N = 0; N <= 3; ++N) CHECK(std::isfinite(freq_seminorm(th, N, 1, g)));
    }
}
