#include "heis/common.hpp"

#include <algorithm>
#include <cstdlib>

namespace heis {

MultiIndex::MultiIndex(std::initializer_list<int> entries) : d(static_cast<int>(entries.size())) {
    check_dim(d);
    std::copy(entries.begin(), entries.end(), v.begin());
}

int MultiIndex::length() const {
    int s = 0;
    for (int j = 0; j < d; ++j) s += v[j];
    return s;
}

int MultiIndex::l1() const {
    int s = 0;
    for (int j = 0; j < d; ++j) s += std::abs(v[j]);
    return s;
}

int MultiIndex::max_entry() const {
    int s = v[0];
    for (int j = 1; j < d; ++j) s = std::max(s, v[j]);
    return s;
}

bool MultiIndex::nonnegative() const {
    for (int j = 0; j < d; ++j)
        if (v[j] < 0) return false;
    return true;
}

MultiIndex MultiIndex::shifted(int j, int delta) const {
    MultiIndex r = *this;
    r.v[j] += delta;
    return r;
}

std::string MultiIndex::str() const {
    std::string s = "(";
    for (int j = 0; j < d; ++j) {
        if (j) s += ",";
        s += std::to_string(v[j]);
    }
    return s + ")";
}

bool operator==(const MultiIndex& a, const MultiIndex& b) {
    if (a.d != b.d) return false;
    for (int j = 0; j < a.d; ++j)
        if (a.v[j] != b.v[j]) return false;
    return true;
}

bool operator<(const MultiIndex& a, const MultiIndex& b) {
    if (a.d != b.d) return a.d < b.d;
    for (int j = 0; j < a.d; ++j)
        if (a.v[j] != b.v[j]) return a.v[j] < b.v[j];
    return false;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r(a.d);
    for (int j = 0; j < a.d; ++j) r.v[j] = a.v[j] + b.v[j];
    return r;
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r(a.d);
    for (int j = 0; j < a.d; ++j) r.v[j] = a.v[j] - b.v[j];
    return r;
}

MultiIndex operator-(const MultiIndex& a) {
    MultiIndex r(a.d);
    for (int j = 0; j < a.d; ++j) r.v[j] = -a.v[j];
    return r;
}

void check_dim(int d) {
    if (d < 1 || d > kMaxDim)
        throw InvalidArgument("dimension d=" + std::to_string(d) + " outside [1," +
                              std::to_string(kMaxDim) + "]");
}

std::size_t flat_index(const MultiIndex& n, int n_max) {
    std::size_t k = 0;
    for (int j = 0; j < n.d; ++j) k = k * static_cast<std::size_t>(n_max + 1) + n.v[j];
    return k;
}

MultiIndex unflat_index(std::size_t k, int d, int n_max) {
    MultiIndex n(d);
    for (int j = d - 1; j >= 0; --j) {
        n.v[j] = static_cast<int>(k % static_cast<std::size_t>(n_max + 1));
        k /= static_cast<std::size_t>(n_max + 1);
    }
    return n;
}

std::size_t box_size(int d, int n_max) {
    std::size_t s = 1;
    for (int j = 0; j < d; ++j) s *= static_cast<std::size_t>(n_max + 1);
    return s;
}

}  // namespace heis
