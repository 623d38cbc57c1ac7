#pragma once

#include "heis/common.hpp"

#include <array>
#include <string>
#include <variant>

namespace heis {

// Interior frequency (n, m, lambda), lambda != 0.
struct FreqPoint {
    MultiIndex n;
    MultiIndex m;
    double lambda = 1.0;

    FreqPoint() = default;
    FreqPoint(MultiIndex n_, MultiIndex m_, double lambda_);

    int dim() const { return n.d; }
    std::string str() const;
};

// Boundary point (xdot, k) of the completion. All xdot_j share one strict
// sign, except the origin (0, 0).
struct BoundaryPoint {
    std::array<double, kMaxDim> xdot{};
    MultiIndex k;

    BoundaryPoint() = default;
    BoundaryPoint(std::initializer_list<double> x, MultiIndex k_);

    int dim() const { return k.d; }
    bool is_origin() const;
    // +1 or -1; 0 at the origin.
    int sign() const;
    double abs_l1() const;
    std::string str() const;
};

BoundaryPoint origin_point(int d);

using CompletedPoint = std::variant<FreqPoint, BoundaryPoint>;

int point_dim(const CompletedPoint& p);

}  // namespace heis
