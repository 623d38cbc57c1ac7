#pragma once

#include "heis/common.hpp"
#include "heis/points.hpp"

#include <functional>
#include <string>
#include <vector>

namespace heis {

struct LambdaGridParams {
    double lambda_min = 1e-4;
    double lambda_max = 16.0;
    int points_per_sign = 160;
    // 0 means derive from lambda_max; otherwise lambda_max = lambda_min * ratio^(P-1).
    double ratio = 0.0;
};

// Signed geometric grid +-lambda_min * r^j, j < P, with weights for
// int g(lambda) |lambda|^d dlambda: Gregory-corrected trapezoid in log(lambda)
// plus the [0, lambda_min] piece lumped on the innermost node.
class LambdaGrid {
public:
    explicit LambdaGrid(const LambdaGridParams& p = {});

    const LambdaGridParams& params() const { return p_; }
    double ratio() const { return p_.ratio; }
    int points_per_sign() const { return p_.points_per_sign; }
    int size() const { return static_cast<int>(values_.size()); }

    // Ascending: -lambda_{P-1} .. -lambda_0, lambda_0 .. lambda_{P-1}.
    const std::vector<double>& values() const { return values_; }
    double operator[](int i) const { return values_[i]; }
    std::vector<double> weights(int d) const;
    // Position of an exact grid value, or -1.
    int index_of(double lambda) const;

private:
    LambdaGridParams p_;
    std::vector<double> values_;
};

// A function on the frequency set. Evaluation returns 0 outside the stored
// truncation (n_max) and off the diagonal when `diagonal` is set.
struct FreqFunction {
    using Interior = std::function<cplx(const FreqPoint&)>;
    using Boundary = std::function<cplx(const BoundaryPoint&)>;

    int d = 1;
    Interior f;
    Interior df;      // analytic d/dlambda, optional
    Boundary bnd;     // continuous extension to the boundary, optional
    bool diagonal = false;
    int n_max = -1;   // -1: no truncation
    bool lambda_smooth = true;  // false when only grid values exist
    std::string label;

    FreqFunction() = default;
    FreqFunction(int dim, Interior fn, std::string name = {});

    bool in_range(const FreqPoint& p) const;
    cplx operator()(const FreqPoint& p) const;
    cplx at(const CompletedPoint& p) const;
    bool has_boundary() const { return static_cast<bool>(bnd); }
    bool has_analytic_dlambda() const { return static_cast<bool>(df); }

    // Analytic derivative when present, else a centered difference with step
    // min(1e-4, |lambda|/8). Throws when the function is not lambda-smooth.
    cplx dlambda(const FreqPoint& p) const;
};

FreqFunction zero_function(int d);

}  // namespace heis
