#include "heis/quadrature.hpp"

#include "heis/common.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace heis {

QuadRule gauss_legendre(int order) {
    if (order < 1) throw InvalidArgument("gauss_legendre: order must be >= 1");
    QuadRule r;
    r.nodes.resize(order);
    r.weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= order; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
            }
            dp = order * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes[i] = -x;
        r.nodes[order - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.weights[i] = w;
        r.weights[order - 1 - i] = w;
    }
    return r;
}

QuadRule gauss_hermite(int order, double scale) {
    if (order < 1) throw InvalidArgument("gauss_hermite: order must be >= 1");
    if (!(scale > 0.0)) throw InvalidArgument("gauss_hermite: scale must be positive");
    const int n = order;
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    // Jacobi matrix eigenvalues as starting points, then Newton on the
    // Hermite functions (the bare polynomials overflow past order ~150).
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), sub(std::max(n - 1, 0));
    for (int j = 0; j + 1 < n; ++j) sub[j] = std::sqrt(0.5 * (j + 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    const double pim4 = std::pow(pi, -0.25);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = es.eigenvalues()[n - 1 - i];
        double pp = 0.0;
        for (int it = 0; it < 50; ++it) {
            double p1 = pim4 * std::exp(-0.5 * z * z), p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        r.nodes[i] = z;
        r.nodes[n - 1 - i] = -z;
        r.weights[i] = 2.0 * std::exp(-z * z - 2.0 * std::log(std::abs(pp)));
        r.weights[n - 1 - i] = r.weights[i];
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    const double a = 1.0 / std::sqrt(scale);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] *= a;
        r.weights[i] *= a;
    }
    return r;
}

void append_composite(double a, double b, int panels, const QuadRule& base, QuadRule& out) {
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        for (std::size_t i = 0; i < base.size(); ++i) {
            out.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
            out.weights.push_back(0.5 * h * base.weights[i]);
        }
    }
}

const QuadRule& panel_rule() {
    static const QuadRule rule = gauss_legendre(16);
    return rule;
}

}  // namespace heis
