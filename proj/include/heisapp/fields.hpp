#pragma once

#include <heis/distributions.hpp>
#include <heis/heisenberg.hpp>

#include <string>

namespace heisapp {

// e^{-(|y|^2 + |eta|^2 + s^2)}
heis::SampledField gaussian_field(const heis::GridSpec& g);
// Off-centre Gaussian times (1 + 0.3 y_1): neither even in s nor radial in Y.
heis::SampledField skew_field(const heis::GridSpec& g);
// Narrower anisotropic partner for the convolution check.
heis::SampledField narrow_field(const heis::GridSpec& g);
// e^{-(|y|^2 + |eta|^2)} on the Y-plane of g
heis::PlaneField gaussian_plane(const heis::GridSpec& g);

// Bundled physical fixtures by name: gaussian, skew, narrow, zero.
heis::SampledField named_field(const std::string& name, const heis::GridSpec& g);

}  // namespace heisapp
