#include "amfw/grid.hpp"

#include <cassert>
#include <stdexcept>
#include <string>

namespace amfw {

Grid::Grid(const std::vector<int>& n, bool include_boundary)
    : include_boundary_(include_boundary) {
    if (n.empty() || n.size() > static_cast<std::size_t>(kMaxDim))
        throw std::invalid_argument("grid: dimension must be 1.." + std::to_string(kMaxDim));
    dim_ = static_cast<int>(n.size());
    for (int l = 0; l < dim_; ++l) {
        if (n[l] < 3)
            throw std::invalid_argument("grid: n[" + std::to_string(l) + "]=" +
                                        std::to_string(n[l]) + " too small, need n >= 3");
        n_[l] = n[l];
        dx_[l] = 1.0 / (1 + n[l]);
        extent_[l] = include_boundary ? n[l] + 2 : n[l];
    }
    // last direction fastest
    std::int64_t s = 1;
    for (int l = dim_ - 1; l >= 0; --l) {
        stride_[l] = s;
        s *= extent_[l];
    }
    num_points_ = s;
    num_interior_ = 1;
    for (int l = 0; l < dim_; ++l) num_interior_ *= n_[l];
}

Grid build_grid(const std::vector<int>& n, bool include_boundary) {
    return Grid(n, include_boundary);
}

bool Grid::valid(const MultiIndex& m) const {
    for (int l = 0; l < dim_; ++l) {
        int lo = base_index(l);
        int hi = include_boundary_ ? n_[l] + 1 : n_[l];
        if (m[l] < lo || m[l] > hi) return false;
    }
    return true;
}

std::int64_t Grid::flatten(const MultiIndex& m) const {
    assert(valid(m));
    std::int64_t flat = 0;
    for (int l = 0; l < dim_; ++l) flat += stride_[l] * (m[l] - base_index(l));
    return flat;
}

MultiIndex Grid::unflatten(std::int64_t flat) const {
    MultiIndex m;
    for (int l = 0; l < dim_; ++l) {
        m[l] = static_cast<int>(flat / stride_[l]) + base_index(l);
        flat %= stride_[l];
    }
    return m;
}

Coord Grid::coords(const MultiIndex& m) const {
    Coord x{};
    for (int l = 0; l < dim_; ++l) x[l] = m[l] * dx_[l];
    return x;
}

PointClass Grid::classify(const MultiIndex& m) const {
    if (!valid(m)) throw std::out_of_range("grid: index out of range");
    PointClass pc;
    for (int l = 0; l < dim_; ++l)
        if (m[l] == 0 || m[l] == n_[l] + 1) pc.saturated |= 1u << l;
    return pc;
}

std::vector<Line> Grid::lines(int axis) const {
    if (axis < 0 || axis >= dim_) throw std::invalid_argument("grid: invalid line direction");
    std::int64_t count = num_points_ / extent_[axis];
    std::vector<Line> out;
    out.reserve(static_cast<std::size_t>(count));
    // enumerate all transverse index combinations in flat order
    MultiIndex m;
    for (int l = 0; l < dim_; ++l) m[l] = base_index(l);
    while (true) {
        out.push_back(Line{flatten(m), stride_[axis], extent_[axis]});
        int l = dim_ - 1;
        for (; l >= 0; --l) {
            if (l == axis) continue;
            int hi = include_boundary_ ? n_[l] + 1 : n_[l];
            if (m[l] < hi) {
                ++m[l];
                break;
            }
            m[l] = base_index(l);
        }
        if (l < 0) break;
    }
    return out;
}

GridField& GridField::operator+=(const GridField& o) {
    assert(v.size() == o.v.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
}

GridField& GridField::operator-=(const GridField& o) {
    assert(v.size() == o.v.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
    return *this;
}

GridField& GridField::operator*=(double a) {
    for (double& x : v) x *= a;
    return *this;
}

void axpy(GridField& y, double a, const GridField& x) {
    assert(y.v.size() == x.v.size());
    for (std::size_t i = 0; i < y.v.size(); ++i) y.v[i] += a * x.v[i];
}

}  // namespace amfw
