#pragma once

#include "heis/freq_function.hpp"
#include "heis/freq_space.hpp"
#include "heis/heisenberg.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace heis {

// g(Y) on the (y, eta) part of a grid; values in the Y-flat order of
// SampledField (y_1..y_d, eta_1..eta_d row-major). The s axis is unused.
struct PlaneField {
    GridSpec grid;
    std::vector<cplx> values;

    static PlaneField sample(const GridSpec& g, const std::function<cplx(const PhysPoint&)>& fn);
    double cell() const;
    std::size_t size() const { return values.size(); }
};

enum class DistTag {
    phys_function,
    phys_dirac,
    phys_one,
    phys_g_tensor_one,
    freq_function,
    freq_I,
    freq_dirac_0hat,
    freq_pf,
    freq_boundary_measure,
};

std::string to_string(DistTag t);
bool is_frequency_side(DistTag t);

struct DistTerm {
    DistTag tag = DistTag::phys_dirac;
    cplx coeff = 1.0;
    std::shared_ptr<const SampledField> field;  // phys_function
    std::shared_ptr<const PlaneField> g;        // phys_g_tensor_one
    FreqFunction fn;                            // freq_function
    int p = 0;                                  // its L1_M exponent
    FreqFunction::Boundary density;             // freq_boundary_measure
    double gamma = 0.0;                         // freq_pf
};

// Finite linear combination of tagged terms, all on one side.
class Distribution {
public:
    Distribution() = default;
    Distribution(int d, DistTerm t);

    int dim() const { return d_; }
    const std::vector<DistTerm>& terms() const { return terms_; }
    bool frequency_side() const;
    std::string describe() const;

    Distribution& operator+=(const Distribution& o);
    Distribution& operator*=(cplx c);

private:
    int d_ = 1;
    std::vector<DistTerm> terms_;
};

Distribution operator+(Distribution a, const Distribution& b);
Distribution operator*(cplx c, Distribution a);

struct PairOptions {
    PairOptions() { sum.adaptive = true; }

    LambdaGrid grid;
    SumOptions sum;
    int k_max = 8;  // boundary measure: k in {-k_max..k_max}^d
};

// Physical side
Distribution phys_function(std::shared_ptr<const SampledField> f);
Distribution phys_dirac(int d);
Distribution phys_one(int d);
Distribution phys_g_tensor_one(std::shared_ptr<const PlaneField> g);

// Frequency side. freq_function checks l1m_norm(fn, p) is finite on the grid.
Distribution freq_function(FreqFunction fn, int p, const PairOptions& opt);
Distribution freq_I(int d);
Distribution freq_dirac_0hat(int d, cplx coeff);
Distribution freq_pf(int d, double gamma);
Distribution freq_boundary_measure(int d, FreqFunction::Boundary density);

struct PairResult {
    cplx value = 0.0;
    double tail_bound = 0.0;
};

// <T, theta> for a frequency-side distribution.
PairResult pair(const Distribution& T, const FreqFunction& theta, const PairOptions& opt);

// <T, h> for a physical-side distribution against a sampled test function;
// h must live on the same grid as any sampled terms.
cplx pair_phys(const Distribution& T, const SampledField& h);

// F_H on distributions; closed forms where they exist, the factored forward
// transform for sampled functions.
Distribution fourier_distribution(const Distribution& T, int n_max = 24);

// (G_H g)(xdot, k) = int conj(K_d)(xdot, k, Y) g(Y) dY on the grid of g.
cplx g_hat_boundary(const PlaneField& g, const BoundaryPoint& b);

// (|lambda|(2|m|+d))^{-gamma} delta_{n,m}
FreqFunction make_f_gamma(double gamma, int d);

// theta at the distinguished boundary point: the boundary evaluator when
// present, else Richardson extrapolation of theta(0,0,+-lambda) in sqrt(lambda).
struct OriginValue {
    cplx value = 0.0;
    double error = 0.0;  // last Richardson correction
};
OriginValue theta_at_origin(const FreqFunction& theta, double lambda0 = 1e-2, int levels = 6);

}  // namespace heis
