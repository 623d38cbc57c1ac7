#include "heis/points.hpp"

#include <cmath>
#include <sstream>

namespace heis {

FreqPoint::FreqPoint(MultiIndex n_, MultiIndex m_, double lambda_) : n(n_), m(m_), lambda(lambda_) {
    check_dim(n.d);
    if (m.d != n.d) throw InvalidArgument("FreqPoint: n and m differ in dimension");
    if (!n.nonnegative() || !m.nonnegative()) throw InvalidArgument("FreqPoint: negative index");
    if (lambda == 0.0 || !std::isfinite(lambda)) throw InvalidArgument("FreqPoint: lambda must be finite and nonzero");
}

std::string FreqPoint::str() const {
    std::ostringstream os;
    os << "(" << n.str() << "," << m.str() << "," << lambda << ")";
    return os.str();
}

BoundaryPoint::BoundaryPoint(std::initializer_list<double> x, MultiIndex k_) : k(k_) {
    check_dim(k.d);
    if (static_cast<int>(x.size()) != k.d) throw InvalidArgument("BoundaryPoint: xdot and k differ in dimension");
    std::copy(x.begin(), x.end(), xdot.begin());
    int pos = 0, neg = 0, zero = 0;
    for (int j = 0; j < k.d; ++j) {
        if (!std::isfinite(xdot[j])) throw InvalidArgument("BoundaryPoint: non-finite xdot");
        if (xdot[j] > 0) ++pos;
        else if (xdot[j] < 0) ++neg;
        else ++zero;
    }
    if (zero == k.d) {
        for (int j = 0; j < k.d; ++j)
            if (k[j] != 0) throw InvalidArgument("BoundaryPoint: xdot = 0 requires k = 0");
        return;
    }
    if (zero > 0 || (pos > 0 && neg > 0))
        throw InvalidArgument("BoundaryPoint: xdot components must share one strict sign");
}

bool BoundaryPoint::is_origin() const {
    for (int j = 0; j < k.d; ++j)
        if (xdot[j] != 0.0) return false;
    return true;
}

int BoundaryPoint::sign() const {
    if (is_origin()) return 0;
    return xdot[0] > 0 ? 1 : -1;
}

double BoundaryPoint::abs_l1() const {
    double s = 0;
    for (int j = 0; j < k.d; ++j) s += std::abs(xdot[j]);
    return s;
}

std::string BoundaryPoint::str() const {
    std::ostringstream os;
    os << "(";
    for (int j = 0; j < k.d; ++j) os << (j ? "," : "") << xdot[j];
    os << ";" << k.str() << ")";
    return os.str();
}

BoundaryPoint origin_point(int d) {
    if (d == 1) return BoundaryPoint({0.0}, MultiIndex{0});
    check_dim(d);
    return BoundaryPoint({0.0, 0.0}, MultiIndex{0, 0});
}

int point_dim(const CompletedPoint& p) {
    return std::visit([](const auto& q) { return q.dim(); }, p);
}

}  // namespace heis
