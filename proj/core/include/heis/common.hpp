#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace heis {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

// Largest supported dimension d of H^d.
inline constexpr int kMaxDim = 2;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

// Raised when an adaptive quadrature gives up; carries the last residual.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

// Ordered d-tuple of integers. Entries are nonnegative for Hermite indices
// and arbitrary for lattice points k in Z^d.
struct MultiIndex {
    std::array<int, kMaxDim> v{};
    int d = 1;

    MultiIndex() = default;
    explicit MultiIndex(int dim) : d(dim) {}
    MultiIndex(std::initializer_list<int> entries);

    int& operator[](int j) { return v[j]; }
    int operator[](int j) const { return v[j]; }

    // |n| = sum of entries (the length); l1() = sum of |entries|.
    int length() const;
    int l1() const;
    int max_entry() const;
    bool nonnegative() const;

    MultiIndex shifted(int j, int delta) const;
    std::string str() const;

    friend bool operator==(const MultiIndex& a, const MultiIndex& b);
    friend bool operator<(const MultiIndex& a, const MultiIndex& b);
    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);
    friend MultiIndex operator-(const MultiIndex& a);
};

void check_dim(int d);

// Row-major flat position of n inside the box {0..N}^d and its inverse.
std::size_t flat_index(const MultiIndex& n, int n_max);
MultiIndex unflat_index(std::size_t k, int d, int n_max);
std::size_t box_size(int d, int n_max);

inline int parity_sign(int k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace heis
