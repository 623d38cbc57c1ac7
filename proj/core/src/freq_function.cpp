#include "heis/freq_function.hpp"

#include <algorithm>
#include <cmath>

namespace heis {

LambdaGrid::LambdaGrid(const LambdaGridParams& p) : p_(p) {
    if (!(p_.lambda_min > 0.0)) throw InvalidArgument("LambdaGrid: lambda_min must be positive");
    if (p_.points_per_sign < 8) throw InvalidArgument("LambdaGrid: at least 8 points per sign");
    const int P = p_.points_per_sign;
    if (p_.ratio > 0.0) {
        if (!(p_.ratio > 1.0)) throw InvalidArgument("LambdaGrid: ratio must exceed 1");
        p_.lambda_max = p_.lambda_min * std::pow(p_.ratio, P - 1);
    } else {
        if (!(p_.lambda_max > p_.lambda_min)) throw InvalidArgument("LambdaGrid: lambda_max must exceed lambda_min");
        p_.ratio = std::pow(p_.lambda_max / p_.lambda_min, 1.0 / (P - 1));
    }
    values_.resize(2 * P);
    for (int j = 0; j < P; ++j) {
        const double v = p_.lambda_min * std::pow(p_.ratio, j);
        values_[P + j] = v;
        values_[P - 1 - j] = -v;
    }
}

std::vector<double> LambdaGrid::weights(int d) const {
    check_dim(d);
    const int P = p_.points_per_sign;
    static const double gregory[4] = {17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0, 49.0 / 48.0};
    const double lr = std::log(p_.ratio);
    std::vector<double> w(2 * P);
    for (int j = 0; j < P; ++j) {
        double c = 1.0;
        if (j < 4) c = gregory[j];
        else if (j >= P - 4) c = gregory[P - 1 - j];
        const double lam = values_[P + j];
        double wj = c * lr * std::pow(lam, d + 1);
        if (j == 0) wj += std::pow(lam, d + 1) / (d + 1);
        w[P + j] = wj;
        w[P - 1 - j] = wj;
    }
    return w;
}

int LambdaGrid::index_of(double lambda) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), lambda);
    if (it != values_.end() && *it == lambda) return static_cast<int>(it - values_.begin());
    return -1;
}

FreqFunction::FreqFunction(int dim, Interior fn, std::string name) : d(dim), f(std::move(fn)), label(std::move(name)) {
    check_dim(dim);
}

bool FreqFunction::in_range(const FreqPoint& p) const {
    if (p.dim() != d) throw InvalidArgument("FreqFunction: dimension mismatch");
    if (diagonal && !(p.n == p.m)) return false;
    if (n_max >= 0 && (p.n.max_entry() > n_max || p.m.max_entry() > n_max)) return false;
    return true;
}

cplx FreqFunction::operator()(const FreqPoint& p) const {
    if (!in_range(p)) return 0.0;
    return f(p);
}

cplx FreqFunction::at(const CompletedPoint& p) const {
    if (const auto* q = std::get_if<FreqPoint>(&p)) return (*this)(*q);
    const auto& b = std::get<BoundaryPoint>(p);
    if (b.dim() != d) throw InvalidArgument("FreqFunction: dimension mismatch");
    if (!bnd) throw InvalidArgument("FreqFunction '" + label + "' has no boundary extension");
    return bnd(b);
}

cplx FreqFunction::dlambda(const FreqPoint& p) const {
    if (!in_range(p)) return 0.0;
    if (df) return df(p);
    if (!lambda_smooth) throw InvalidArgument("FreqFunction '" + label + "' has no lambda-derivative");
    const double h = std::min(1e-4, std::abs(p.lambda) / 8.0);
    FreqPoint a = p, b = p;
    a.lambda += h;
    b.lambda -= h;
    return (f(a) - f(b)) / (2.0 * h);
}

FreqFunction zero_function(int d) {
    FreqFunction z(d, [](const FreqPoint&) { return cplx(0.0); }, "zero");
    z.df = [](const FreqPoint&) { return cplx(0.0); };
    z.bnd = [](const BoundaryPoint&) { return cplx(0.0); };
    return z;
}

}  // namespace heis
