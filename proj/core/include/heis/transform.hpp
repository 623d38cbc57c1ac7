#pragma once

#include "heis/freq_function.hpp"
#include "heis/freq_space.hpp"
#include "heis/heisenberg.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace heis {

// Values theta(n, m, lambda_i) for n, m in {0..N}^d and every grid lambda.
class SpectralTable {
public:
    SpectralTable(int d, int n_max, LambdaGrid grid, std::string provenance = "direct");

    int dim() const { return d_; }
    int n_max() const { return n_max_; }
    std::size_t box() const { return box_; }
    const LambdaGrid& grid() const { return grid_; }
    const std::string& provenance() const { return provenance_; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }

    cplx& at(std::size_t fn, std::size_t fm, int li) { return data_[(li * box_ + fn) * box_ + fm]; }
    cplx at(std::size_t fn, std::size_t fm, int li) const { return data_[(li * box_ + fn) * box_ + fm]; }
    cplx& at(const MultiIndex& n, const MultiIndex& m, int li);
    cplx at(const MultiIndex& n, const MultiIndex& m, int li) const;
    // Row-major (box x box) block at lambda index li.
    cplx* slice(int li) { return &data_[li * box_ * box_]; }
    const cplx* slice(int li) const { return &data_[li * box_ * box_]; }
    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    // Grid-lambda lookup; zero outside the index box, throws off the grid.
    FreqFunction as_function() const;

    // Largest estimate of quadrature mass lost by the factored pipeline.
    double residual = 0.0;

private:
    int d_;
    int n_max_;
    std::size_t box_;
    LambdaGrid grid_;
    std::string provenance_;
    std::vector<cplx> data_;
};

// CSV columns n_1..n_d, m_1..m_d, lambda, re, im (17 significant digits);
// the JSON sidecar stores d, n_max, the grid parameters and provenance.
void write_table_csv(std::ostream& os, const SpectralTable& t);
std::string table_sidecar_json(const SpectralTable& t);
SpectralTable read_table(std::istream& csv, const std::string& sidecar_json);
void save_table(const std::string& csv_path, const SpectralTable& t);
SpectralTable load_table(const std::string& csv_path);

// Evaluates theta on the index box and grid.
SpectralTable tabulate(const FreqFunction& theta, int n_max, const LambdaGrid& grid, const std::string& provenance);

// s-transform F_s f(Y, lambda) = sum_s e^{-i s lambda} f(Y, s) h_s over the
// Y-grid (size of f divided by ns).
std::vector<cplx> s_transform(const SampledField& f, double lambda);

// Direct quadrature of int e^{-i s lambda} conj(W) f over the grid.
cplx forward_direct(const SampledField& f, const FreqPoint& p);
// d/dlambda of the same grid sum, from the differentiated kernel.
cplx forward_direct_dlambda(const SampledField& f, const FreqPoint& p);

// All n, m <= N at one lambda (d = 1 or 2) with optional lambda-derivatives;
// outputs row-major (box x box).
void forward_direct_slice(const SampledField& f, double lambda, int n_max, std::vector<cplx>& out,
                          std::vector<cplx>* dout = nullptr);

// Matrix coefficient (F(f)(lambda) H_{m,lambda} | H_{n,lambda}) through the
// integral kernel: sinc interpolation in y, direct sums in (eta, s), and a
// Gauss-Hermite rule with `order` nodes per coordinate in (x, x').
cplx rep_matrix_coeff(const SampledField& f, double lambda, const MultiIndex& n, const MultiIndex& m, int order = 60);

// Partial Fourier transform in (eta, s) at grid y-index tuple `iy`, evaluated
// at arbitrary (xi, lambda).
cplx partial_fourier(const SampledField& f, std::span<const int> iy, std::span<const double> xi, double lambda);

// phi((x - x')/2, lambda (x + x')) for d = 1.
std::function<cplx(double, double)> phi_remap(std::function<cplx(double, double)> phi, double lambda);

struct FactoredOptions {
    double margin = 10.0;  // Hermite envelope margin beyond sqrt(2N+1)
    bool nyquist_cut = true;
};

// Factored pipeline: s-transform, eta -> u transform at exact frequencies,
// then projection on H_{n,lambda}(y+u) H_{m,lambda}(u-y) over (y, u).
void forward_factored_slice(const SampledField& f, double lambda, int n_max, std::vector<cplx>& out,
                            const FactoredOptions& opt = {}, double* residual = nullptr);
SpectralTable forward_factored(const SampledField& f, int n_max, const LambdaGrid& grid,
                               const FactoredOptions& opt = {});

// Lazily computed slices of the factored transform at arbitrary lambda, with
// the lambda-derivative by centered differences of slices.
class ForwardEvaluator {
public:
    ForwardEvaluator(SampledField f, int n_max, FactoredOptions opt = {});
    ForwardEvaluator(std::shared_ptr<const SampledField> f, int n_max, FactoredOptions opt = {});

    int n_max() const { return n_max_; }
    cplx operator()(const FreqPoint& p) const;
    cplx dlambda(const FreqPoint& p) const;
    FreqFunction as_function() const;

private:
    const std::vector<cplx>& slice(double lambda) const;

    std::shared_ptr<const SampledField> f_;
    int n_max_;
    FactoredOptions opt_;
    std::shared_ptr<std::map<double, std::vector<cplx>>> cache_;
};

// Same with forward_direct_slice (analytic lambda-derivative attached).
class DirectEvaluator {
public:
    DirectEvaluator(SampledField f, int n_max);

    int n_max() const { return n_max_; }
    cplx operator()(const FreqPoint& p) const;
    cplx dlambda(const FreqPoint& p) const;
    FreqFunction as_function() const;

private:
    struct Slice {
        std::vector<cplx> v, dv;
    };
    const Slice& slice(double lambda) const;

    std::shared_ptr<const SampledField> f_;
    int n_max_;
    std::shared_ptr<std::map<double, Slice>> cache_;
};

// Inversion (2^{d-1}/pi^{d+1}) int e^{i s lambda} W theta dw over a physical grid.
SampledField inverse(const SpectralTable& theta, const GridSpec& g);
// Kernel e^{-i s lambda} conj(W) and no constant.
SampledField transposed(const SpectralTable& theta, const GridSpec& g);
// Pointwise inversion through Wigner tables.
cplx inverse_at(const SpectralTable& theta, const PhysPoint& w);

inline constexpr double inversion_constant(int d) {
    double c = 1.0;
    for (int j = 0; j < d - 1; ++j) c *= 2.0;
    double p = 1.0;
    for (int j = 0; j < d + 1; ++j) p *= pi;
    return c / p;
}

struct PlancherelNorms {
    double phys_sq = 0.0;  // ||f||^2 on the grid
    double freq_sq = 0.0;  // ||theta||^2 against dw
    double ratio() const { return freq_sq / phys_sq; }
};

PlancherelNorms plancherel_norms(const SampledField& f, const SpectralTable& theta);

struct ProductValue {
    cplx value = 0.0;
    double tail_bound = 0.0;
};

struct ProductOptions {
    int ell_max = 24;    // interior: ell in {0..ell_max}^d
    int k_max = 24;      // boundary: k' in {-k_max..k_max}^d
    int tail_width = 8;  // extra shells used for the Cauchy-Schwarz tail estimate
};

// Interior: sum_ell theta1(n, ell) theta2(ell, m); boundary: sum_k' theta1(x, k') theta2(x, k - k').
ProductValue spectral_product(const FreqFunction& a, const FreqFunction& b, const CompletedPoint& p,
                              const ProductOptions& opt = {});
FreqFunction spectral_product_fn(const FreqFunction& a, const FreqFunction& b, const ProductOptions& opt = {});

// theta(n, m, lambda) * a(4|lambda|(2|m|+d)); boundary values use a(4|xdot|_1).
FreqFunction multiplier_apply(const std::function<double(double)>& a, const FreqFunction& theta);

}  // namespace heis
