#include "heisapp/fields.hpp"

#include <heis/common.hpp>

#include <cmath>

namespace heisapp {

using heis::cplx;
using heis::PhysPoint;

heis::SampledField gaussian_field(const heis::GridSpec& g) {
    return heis::SampledField::sample(g, [](const PhysPoint& w) { return cplx(std::exp(-(w.norm_Y2() + w.s * w.s))); });
}

heis::SampledField skew_field(const heis::GridSpec& g) {
    return heis::SampledField::sample(g, [](const PhysPoint& w) {
        double r = (w.s - 0.25) * (w.s - 0.25);
        for (int j = 0; j < w.d; ++j) r += (w.y[j] - 0.3) * (w.y[j] - 0.3) + (w.eta[j] + 0.2) * (w.eta[j] + 0.2);
        return cplx(std::exp(-r) * (1.0 + 0.3 * w.y[0]));
    });
}

heis::SampledField narrow_field(const heis::GridSpec& g) {
    return heis::SampledField::sample(g, [](const PhysPoint& w) {
        double r = 1.5 * (w.s + 0.2) * (w.s + 0.2);
        for (int j = 0; j < w.d; ++j) r += 1.2 * (w.y[j] + 0.1) * (w.y[j] + 0.1) + 0.8 * w.eta[j] * w.eta[j];
        return cplx(std::exp(-r));
    });
}

heis::PlaneField gaussian_plane(const heis::GridSpec& g) {
    return heis::PlaneField::sample(g, [](const PhysPoint& w) { return cplx(std::exp(-w.norm_Y2())); });
}

heis::SampledField named_field(const std::string& name, const heis::GridSpec& g) {
    if (name == "gaussian") return gaussian_field(g);
    if (name == "skew") return skew_field(g);
    if (name == "narrow") return narrow_field(g);
    if (name == "zero") return heis::SampledField(g);
    throw heis::InvalidArgument("unknown field fixture '" + name + "'");
}

}  // namespace heisapp
