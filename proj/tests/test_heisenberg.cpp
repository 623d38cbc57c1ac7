#include <doctest.h>

#include <heis/heisenberg.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace heis;

namespace {

bool close(const PhysPoint& a, const PhysPoint& b, double tol) {
    for (int j = 0; j < a.d; ++j)
        if (std::abs(a.y[j] - b.y[j]) > tol || std::abs(a.eta[j] - b.eta[j]) > tol) return false;
    return std::abs(a.s - b.s) <= tol;
}

PhysPoint random_point(std::mt19937& rng, int d) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    PhysPoint w(d);
    for (int j = 0; j < d; ++j) {
        w.y[j] = u(rng);
        w.eta[j] = u(rng);
    }
    w.s = u(rng);
    return w;
}

GridSpec small_grid(int n = 25, double L = 6.0) {
    GridSpec g;
    g.ny = g.neta = g.ns = n;
    g.Ly = g.Leta = g.Ls = L;
    return g;
}

double sup_diff_inner(const SampledField& a, const SampledField& b, double R) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto w = a.point(i);
        if (std::abs(w.y[0]) <= R && std::abs(w.eta[0]) <= R && std::abs(w.s) <= R)
            e = std::max(e, std::abs(a[i] - b[i]));
    }
    return e;
}

}  // namespace

TEST_CASE("group law") {
    const PhysPoint w = group_mul(PhysPoint(1, 0, 0), PhysPoint(0, 1, 0));
    CHECK(close(w, PhysPoint(1, 1, -2), 0.0));

    std::mt19937 rng(3);
    for (int d : {1, 2})
        for (int i = 0; i < 200; ++i) {
            const auto a = random_point(rng, d), b = random_point(rng, d), c = random_point(rng, d);
            CHECK(close(group_mul(a, group_inv(a)), PhysPoint(d), 0.0));
            CHECK(close(group_mul(group_mul(a, b), c), group_mul(a, group_mul(b, c)), 1e-12));
            const double t = 0.3 + 0.1 * (i % 3);
            CHECK(close(dilate(t, group_mul(a, b)), group_mul(dilate(t, a), dilate(t, b)), 1e-12));
        }
}

TEST_CASE("dilations") {
    CHECK(close(dilate(2.0, PhysPoint(1, 1, 1)), PhysPoint(2, 2, 4), 0.0));
    CHECK(close(dilate(1.0, PhysPoint(0.3, -1, 2)), PhysPoint(0.3, -1, 2), 0.0));
}

TEST_CASE("convolution") {
    const GridSpec g = small_grid(33);
    const auto gauss = SampledField::sample(g, [](const PhysPoint& w) { return std::exp(-w.norm_Y2() - w.s * w.s); });
    const SampledField zero(g);
    CHECK(convolve(gauss, zero).sup_norm() == 0.0);

    const auto h = convolve(gauss, gauss);
    const std::size_t c = h.size() / 2;  // grid origin
    CHECK(std::abs(h.point(c).s) + h.point(c).norm_Y2() == 0.0);
    CHECK(std::abs(h[c] - 1.968701243215302) < 1e-3);

    // Young: ||f * g||_1 <= ||f||_1 ||g||_1
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 3; ++t) {
        const double a = u(rng), b = u(rng), cc = u(rng);
        const auto f = SampledField::sample(g, [&](const PhysPoint& w) {
            return std::exp(-1.5 * (w.y[0] - a) * (w.y[0] - a) - w.eta[0] * w.eta[0] - 2 * (w.s - b) * (w.s - b)) *
                   (1.0 + cc * w.eta[0]);
        });
        const auto k = SampledField::sample(g, [&](const PhysPoint& w) {
            return std::exp(-w.y[0] * w.y[0] - 2 * (w.eta[0] - cc) * (w.eta[0] - cc) - w.s * w.s);
        });
        CHECK(convolve(f, k).l1_norm() <= f.l1_norm() * k.l1_norm());
    }

    CHECK_THROWS_AS(convolve(gauss, SampledField(small_grid(25))), InvalidArgument);
}

TEST_CASE("convolution associativity on a coarse grid") {
    const GridSpec g = small_grid(21, 5.0);
    auto bump = [&](double a, double b, double c) {
        return SampledField::sample(g, [=](const PhysPoint& w) {
            return std::exp(-a * w.y[0] * w.y[0] - b * w.eta[0] * w.eta[0] - c * w.s * w.s);
        });
    };
    const auto f = bump(2.0, 2.0, 2.0), k = bump(3.0, 2.5, 2.0), h = bump(2.5, 3.0, 3.0);
    const auto l = convolve(convolve(f, k), h), r = convolve(f, convolve(k, h));
    CHECK(sup_diff_inner(l, r, 2.0) < 2e-2 * l.sup_norm());
}

TEST_CASE("vector fields and operators") {
    const GridSpec g = small_grid(33);
    const auto s = SampledField::sample(g, [](const PhysPoint& w) { return w.s; });
    const auto xs = apply_phys_op(PhysOp::X, s);
    const auto two_eta = SampledField::sample(g, [](const PhysPoint& w) { return 2.0 * w.eta[0]; });
    CHECK((xs - two_eta).sup_norm() < 1e-10);

    const auto q = SampledField::sample(g, [](const PhysPoint& w) { return w.norm_Y2(); });
    const auto lap = apply_phys_op(PhysOp::DeltaH, q);
    for (std::size_t i = 0; i < lap.size(); ++i) CHECK(std::abs(lap[i] - 4.0) < 1e-9);

    auto gY = [](const PhysPoint& w) { return std::exp(-0.5 * w.norm_Y2()) * (1.0 + 0.2 * w.y[0]); };
    const auto even = SampledField::sample(g, [&](const PhysPoint& w) { return gY(w) * std::exp(-w.s * w.s); });
    CHECK(apply_phys_op(PhysOp::P, even).sup_norm() < 1e-12);
    const auto odd = SampledField::sample(g, [&](const PhysPoint& w) { return gY(w) * w.s * std::exp(-w.s * w.s); });
    const auto expect = SampledField::sample(g, [&](const PhysPoint& w) { return -0.5 * gY(w) * std::exp(-w.s * w.s); });
    CHECK((apply_phys_op(PhysOp::P, odd) - expect).sup_norm() < 5e-3);
    CHECK((apply_phys_op(PhysOp::P, odd, 0, DerivScheme::spectral) - expect).sup_norm() < 1e-8);

    // multiplication operators
    const auto mp = apply_phys_op(PhysOp::Mplus, even);
    const auto m0 = apply_phys_op(PhysOp::M0, even);
    for (std::size_t i = 0; i < even.size(); i += 97) {
        const auto w = even.point(i);
        CHECK(std::abs(mp[i] - cplx(w.y[0], w.eta[0]) * even[i]) < 1e-15);
        CHECK(std::abs(m0[i] - cplx(0.0, -w.s) * even[i]) < 1e-15);
    }
    CHECK_THROWS_AS(parse_phys_op("nope"), InvalidArgument);
}

TEST_CASE("commutator S = [Xi, X]/4 and d_s P") {
    const GridSpec g = small_grid(41);
    const auto f = SampledField::sample(g, [](const PhysPoint& w) {
        return std::exp(-w.norm_Y2() - (w.s - 0.3) * (w.s - 0.3)) * (1.0 + 0.5 * w.y[0] - 0.3 * w.eta[0]);
    });
    const auto sch = DerivScheme::spectral;
    const auto lhs = apply_phys_op(PhysOp::S, f, 0, sch);
    const auto com = apply_phys_op(PhysOp::Xi, apply_phys_op(PhysOp::X, f, 0, sch), 0, sch) -
                     apply_phys_op(PhysOp::X, apply_phys_op(PhysOp::Xi, f, 0, sch), 0, sch);
    CHECK(sup_diff_inner(lhs, cplx(0.25) * com, 3.0) < 1e-6);

    const auto dsP = partial(apply_phys_op(PhysOp::P, f, 0, sch), 2, sch);
    const auto refl = SampledField::sample(g, [](const PhysPoint& w) {
        auto v = [&](double s) {
            return std::exp(-w.norm_Y2() - (s - 0.3) * (s - 0.3)) * (1.0 + 0.5 * w.y[0] - 0.3 * w.eta[0]);
        };
        return 0.5 * (v(w.s) - v(-w.s));
    });
    CHECK(sup_diff_inner(dsP, refl, 4.0) < 1e-6);
}

TEST_CASE("left invariance at fourth order") {
    const PhysPoint w(0.4, -0.3, 0.2);
    auto fn = [](const PhysPoint& v) { return std::exp(-v.norm_Y2() - 0.5 * v.s * v.s); };
    double prev = 0.0;
    for (int n : {25, 49}) {
        const GridSpec g = small_grid(n, 8.0);
        const auto f = SampledField::sample(g, fn);
        const auto lhs = apply_phys_op(PhysOp::X, left_translate(f, w));
        const auto rhs = left_translate(apply_phys_op(PhysOp::X, f), w);
        const double e = sup_diff_inner(lhs, rhs, 3.0);
        if (prev > 0.0) CHECK(prev / e > 8.0);
        prev = e;
    }
}

TEST_CASE("seminorms") {
    const GridSpec g = small_grid(25);
    CHECK(phys_seminorm(SampledField(g), 2) == 0.0);
    const auto gauss = SampledField::sample(g, [](const PhysPoint& w) { return std::exp(-w.norm_Y2() - w.s * w.s); });
    CHECK(phys_seminorm(gauss, 0) == doctest::Approx(1.0).epsilon(1e-15));
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 3; ++t) {
        const double a = u(rng), b = u(rng);
        const auto f = SampledField::sample(g, [&](const PhysPoint& w) {
            return std::exp(-(w.y[0] - a) * (w.y[0] - a) - w.eta[0] * w.eta[0] - (w.s - b) * (w.s - b));
        });
        CHECK(phys_seminorm(f, 0) <= phys_seminorm(f, 1));
        CHECK(phys_seminorm(f, 1) <= phys_seminorm(f, 2));
        CHECK(phys_seminorm_l2(f, 0) <= phys_seminorm_l2(f, 1));
    }
}

TEST_CASE("field io round trip") {
    const GridSpec g = small_grid(9, 2.0);
    const auto f = SampledField::sample(g, [](const PhysPoint& w) { return cplx(w.y[0] + w.s, w.eta[0]); });
    std::stringstream ss;
    write_field(ss, f);
    const auto back = read_field(ss);
    CHECK(back.grid() == g);
    CHECK(back.data() == f.data());

    std::stringstream bad("NOTAFILE");
    CHECK_THROWS_AS(read_field(bad), FormatError);

    std::stringstream csv;
    csv << "y,eta,s,re,im\n";
    for (int i = f.size() - 1; i >= 0; --i) {
        const auto w = f.point(i);
        csv.precision(17);
        csv << w.y[0] << ',' << w.eta[0] << ',' << w.s << ',' << f[i].real() << ',' << f[i].imag() << '\n';
    }
    const auto c = read_field_csv(csv);
    CHECK(c.grid().ny == 9);
    CHECK((c - f).sup_norm() < 1e-14);
}
