#pragma once

#include "heis/common.hpp"

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace heis {

struct PhysPoint {
    std::array<double, kMaxDim> y{};
    std::array<double, kMaxDim> eta{};
    double s = 0.0;
    int d = 1;

    PhysPoint() = default;
    explicit PhysPoint(int dim) : d(dim) {}
    // d = 1 shorthand.
    PhysPoint(double y1, double eta1, double s1);

    double norm_Y2() const;
};

PhysPoint group_mul(const PhysPoint& a, const PhysPoint& b);
PhysPoint group_inv(const PhysPoint& a);
PhysPoint dilate(double a, const PhysPoint& w);

// Uniform symmetric tensor grid on [-L, L] per coordinate; axes are ordered
// y_1..y_d, eta_1..eta_d, s. Every y_j axis shares (ny, Ly), every eta_j
// axis shares (neta, Leta).
struct GridSpec {
    int d = 1;
    int ny = 33, neta = 33, ns = 33;
    double Ly = 6.0, Leta = 6.0, Ls = 6.0;

    void validate() const;
    int axes() const { return 2 * d + 1; }
    int axis_len(int a) const;
    double axis_half(int a) const;
    double axis_h(int a) const { return 2.0 * axis_half(a) / (axis_len(a) - 1); }
    double coord(int a, int i) const { return -axis_half(a) + i * axis_h(a); }
    std::size_t size() const;
    // Volume element prod_a h_a.
    double cell() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

class SampledField {
public:
    SampledField() = default;
    explicit SampledField(const GridSpec& g);

    static SampledField sample(const GridSpec& g, const std::function<cplx(const PhysPoint&)>& f);

    const GridSpec& grid() const { return g_; }
    int dim() const { return g_.d; }
    std::size_t size() const { return data_.size(); }
    std::size_t stride(int axis) const { return strides_[axis]; }

    cplx& operator[](std::size_t i) { return data_[i]; }
    cplx operator[](std::size_t i) const { return data_[i]; }
    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    // Coordinates of the sample at flat position i.
    PhysPoint point(std::size_t i) const;
    int axis_index(std::size_t i, int axis) const { return static_cast<int>((i / strides_[axis]) % g_.axis_len(axis)); }

    // Separable cubic Lagrange interpolation, zero outside the grid.
    cplx interpolate(const PhysPoint& w) const;

    double sup_norm() const;
    double l1_norm() const;
    double l2_norm() const;
    cplx integral() const;

    SampledField& operator+=(const SampledField& o);
    SampledField& operator-=(const SampledField& o);
    SampledField& operator*=(cplx c);

private:
    GridSpec g_;
    std::array<std::size_t, 2 * kMaxDim + 1> strides_{};
    std::vector<cplx> data_;
};

SampledField operator+(SampledField a, const SampledField& b);
SampledField operator-(SampledField a, const SampledField& b);
SampledField operator*(cplx c, SampledField a);

// f * g (w) = int f(w v^{-1}) g(v) dv on the common grid. The Y-offset is an
// exact grid shift; only the sheared s-coordinate is interpolated.
SampledField convolve(const SampledField& f, const SampledField& g);

// (f o tau_w)(v) = f(w v), by interpolation.
SampledField left_translate(const SampledField& f, const PhysPoint& w);

enum class PhysOp { X, Xi, S, Xr, Xir, DeltaH, M2, M0, MH, Mplus, Mminus, P };

enum class DerivScheme {
    fd4,       // 4th-order centered differences, one-sided near the edges
    spectral,  // trigonometric interpolation on the grid period
};

PhysOp parse_phys_op(const std::string& name);
std::string to_string(PhysOp op);

// j is the coordinate (0-based) for X, Xi, Xr, Xir, Mplus, Mminus; ignored
// otherwise. P uses cumulative trapezoid under fd4 and spectral antiderivatives
// under the spectral scheme.
SampledField apply_phys_op(PhysOp op, const SampledField& f, int j = 0, DerivScheme scheme = DerivScheme::fd4);

// Partial derivative along one axis.
SampledField partial(const SampledField& f, int axis, DerivScheme scheme = DerivScheme::fd4);

// sup_{|alpha| <= N} || (1 + |Y|^2 + s^2)^{N/2} d^alpha f ||_inf
double phys_seminorm(const SampledField& f, int N, DerivScheme scheme = DerivScheme::fd4);

// sqrt(||f||^2 + ||M_H^K f||^2 + ||Delta_H^K f||^2), L^2 norms on the grid.
double phys_seminorm_l2(const SampledField& f, int K, DerivScheme scheme = DerivScheme::fd4);

// Binary container: "HEISFLD1", int32 d, ny, neta, ns, float64 Ly, Leta, Ls,
// hy, heta, hs, then size() pairs (re, im) of float64, little endian.
void write_field(std::ostream& os, const SampledField& f);
SampledField read_field(std::istream& is);
void save_field(const std::string& path, const SampledField& f);
SampledField load_field(const std::string& path);

// d = 1 CSV with header y,eta,s,re[,im]; rows may come in any order.
SampledField read_field_csv(std::istream& is);

}  // namespace heis
