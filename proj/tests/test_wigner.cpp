#include <doctest.h>

#include <heis/wigner.hpp>

#include <cmath>
#include <random>

using namespace heis;

TEST_CASE("W at Y = 0 is the identity") {
    for (double l : {-2.0, -0.4, 0.7, 3.0})
        for (int n = 0; n <= 5; ++n)
            for (int m = 0; m <= 5; ++m) CHECK(std::abs(wigner1(n, m, l, 0.0, 0.0) - (n == m ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("ground state closed form") {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-3.0, 3.0), lam(0.05, 4.0);
    for (int i = 0; i < 50; ++i) {
        const double l = (i % 2 ? -1 : 1) * lam(rng), y = u(rng), e = u(rng);
        CHECK(std::abs(wigner1(0, 0, l, y, e) - std::exp(-std::abs(l) * (y * y + e * e))) < 1e-12);
    }
}

TEST_CASE("symmetry and bound") {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(-3.0, 3.0), lam(0.1, 3.0);
    double top = 0.0;
    for (int i = 0; i < 40; ++i) {
        const double l = lam(rng), y = u(rng), e = u(rng);
        CHECK(std::abs(wigner1(0, 1, l, y, e) + wigner1(1, 0, -l, y, e)) < 1e-12);
        std::vector<cplx> a(36);
        wigner1_all(5, l, y, e, a.data());
        for (int n = 0; n <= 5; ++n)
            for (int m = 0; m <= 5; ++m) {
                CHECK(std::abs(a[n * 6 + m] - wigner1(n, m, l, y, e)) < 1e-12);
                top = std::max(top, std::abs(a[n * 6 + m]));
            }
    }
    CHECK(top <= 1.0 + 1e-12);
}

TEST_CASE("tensor product and checked evaluation") {
    const double Y[4] = {0.3, -0.5, 0.8, 0.1};
    const FreqPoint p(MultiIndex{1, 2}, MultiIndex{0, 2}, 0.9);
    CHECK(std::abs(wigner_eval(p, Y) - wigner1(1, 0, 0.9, 0.3, 0.8) * wigner1(2, 2, 0.9, -0.5, 0.1)) < 1e-14);
    CHECK(std::abs(wigner1_checked(3, 5, 1.3, 0.4, -0.7) - wigner1(3, 5, 1.3, 0.4, -0.7)) < 1e-12);
}

TEST_CASE("lambda derivative") {
    for (auto [n, m] : {std::pair{0, 0}, std::pair{2, 1}, std::pair{3, 3}}) {
        const double l = 0.8, y = 0.4, e = -0.6, h = 1e-5;
        const cplx fd = (wigner1(n, m, l + h, y, e) - wigner1(n, m, l - h, y, e)) / (2 * h);
        CHECK(std::abs(wigner1_dlambda(n, m, l, y, e) - fd) < 1e-8);
    }
}

TEST_CASE("boundary kernel") {
    for (double xd : {0.5, 1.0, 3.0})
        for (int k = -2; k <= 2; ++k) CHECK(std::abs(boundary_kernel1(xd, k, 0.0, 0.0) - (k == 0 ? 1.0 : 0.0)) < 1e-15);
    // Bessel oracle J_0(2 sqrt(xdot) |Y|)
    const double cases[3][3] = {{1.0, 0.3, 0.4, }, {2.0, 1.3, 0.0}, {0.5, 1.2, -1.6}};
    const double j0[3] = {0.76519768655796655, -0.39787961988003069, -0.19654809527046820};
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(boundary_kernel1(cases[i][0], 0, cases[i][1], cases[i][2]) - j0[i]) < 1e-10);
    for (double r : {0.1, 1.7, 4.0})
        CHECK(std::abs(boundary_kernel1(1.3, 0, r, 0.0).real() - std::cyl_bessel_j(0.0, 2 * std::sqrt(1.3) * r)) < 1e-10);

    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-4.0, 4.0), x(0.01, 5.0);
    std::uniform_int_distribution<int> kk(-4, 4);
    double top = 0.0;
    for (int i = 0; i < 10000; ++i) top = std::max(top, std::abs(boundary_kernel1((i % 2 ? -1 : 1) * x(rng), kk(rng), u(rng), u(rng))));
    CHECK(top <= 1.0 + 1e-12);

    const double Y[4] = {0.3, -0.2, 0.5, 0.7};
    const BoundaryPoint b({0.8, 1.5}, MultiIndex{1, -1});
    CHECK(std::abs(boundary_kernel(b, Y) - boundary_kernel1(0.8, 1, 0.3, 0.5) * boundary_kernel1(1.5, -1, -0.2, 0.7)) < 1e-14);
    CHECK(std::abs(boundary_kernel(origin_point(2), Y) - 1.0) < 1e-15);
}

TEST_CASE("boundary limit") {
    for (int k : {0, 1}) {
        double prev = 1.0;
        for (int n : {8, 32, 128}) {
            const double l = 1.0 / (2.0 * n + k + 1);
            const double e = std::abs(wigner1(n, n + k, l, 0.4, -0.3) - boundary_kernel1(1.0, k, 0.4, -0.3));
            CHECK(e < prev);
            prev = e;
        }
        CHECK(prev < 1e-4);
    }
}
