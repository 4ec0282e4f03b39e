#ifndef AMFW_GRID_HPP
#define AMFW_GRID_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace amfw {

inline constexpr int kMaxDim = 4;

using Coord = std::array<double, kMaxDim>;

/// Lattice multi-index. Entries use the global numbering j_l = 0..n_l+1,
/// where 0 and n_l+1 are boundary planes and 1..n_l interior.
struct MultiIndex {
    std::array<int, kMaxDim> idx{};

    int& operator[](int l) { return idx[l]; }
    int operator[](int l) const { return idx[l]; }
    bool operator==(const MultiIndex& o) const { return idx == o.idx; }
};

/// Classification of a lattice point: bit l of `saturated` is set when the
/// point lies on a face of direction l (j_l == 0 or j_l == n_l+1).
struct PointClass {
    unsigned saturated = 0;
    bool interior() const { return saturated == 0; }
    bool on_face(int l) const { return (saturated >> l) & 1u; }
};

/// One 1D line of grid points with fixed transverse coordinates.
struct Line {
    std::int64_t base;    // flat index of the first point
    std::int64_t stride;  // flat-index step between consecutive points
    int length;
};

/// Tensor-product grid of the unit hypercube. Interior-only grids store the
/// points of Omega_h; closed grids store the full lattice including faces,
/// edges and corners.
///
/// Flattening is lexicographic with the last direction fastest, so lines in
/// direction dim-1 are contiguous in memory.
class Grid {
public:
    Grid(const std::vector<int>& n, bool include_boundary);

    int dim() const { return dim_; }
    int n(int l) const { return n_[l]; }
    double dx(int l) const { return dx_[l]; }
    bool include_boundary() const { return include_boundary_; }
    /// Stored points along direction l (n_l or n_l+2).
    int extent(int l) const { return extent_[l]; }
    std::int64_t num_points() const { return num_points_; }
    /// Product of the interior counts n_l.
    std::int64_t num_interior() const { return num_interior_; }

    std::int64_t flatten(const MultiIndex& m) const;
    MultiIndex unflatten(std::int64_t flat) const;
    bool valid(const MultiIndex& m) const;

    Coord coords(const MultiIndex& m) const;
    PointClass classify(const MultiIndex& m) const;

    /// All 1D lines in the given direction (0-based axis). Every stored point
    /// belongs to exactly one line; within a line points are ordered by
    /// increasing x_axis.
    std::vector<Line> lines(int axis) const;

    std::int64_t stride(int l) const { return stride_[l]; }
    /// Lowest stored lattice index along l (0 for closed grids, 1 otherwise).
    int base_index(int) const { return include_boundary_ ? 0 : 1; }

private:
    int dim_;
    std::array<int, kMaxDim> n_{};
    std::array<double, kMaxDim> dx_{};
    std::array<int, kMaxDim> extent_{};
    std::array<std::int64_t, kMaxDim> stride_{};
    bool include_boundary_;
    std::int64_t num_points_;
    std::int64_t num_interior_;
};

Grid build_grid(const std::vector<int>& n, bool include_boundary);

/// Real-valued function sampled on the stored points of a grid.
struct GridField {
    const Grid* grid = nullptr;
    std::vector<double> v;

    GridField() = default;
    explicit GridField(const Grid& g) : grid(&g), v(static_cast<std::size_t>(g.num_points()), 0.0) {}

    double& operator[](std::int64_t i) { return v[static_cast<std::size_t>(i)]; }
    double operator[](std::int64_t i) const { return v[static_cast<std::size_t>(i)]; }
    std::int64_t size() const { return static_cast<std::int64_t>(v.size()); }

    GridField& operator+=(const GridField& o);
    GridField& operator-=(const GridField& o);
    GridField& operator*=(double a);
};

void axpy(GridField& y, double a, const GridField& x);

/// Visit every stored point in flat order; fn(flat, multi_index, coords).
template <class Fn>
void for_each_point(const Grid& g, Fn&& fn) {
    MultiIndex m;
    Coord x{};
    const int d = g.dim();
    for (int l = 0; l < d; ++l) {
        m[l] = g.base_index(l);
        x[l] = m[l] * g.dx(l);
    }
    const std::int64_t total = g.num_points();
    for (std::int64_t flat = 0; flat < total; ++flat) {
        fn(flat, static_cast<const MultiIndex&>(m), static_cast<const Coord&>(x));
        for (int l = d - 1; l >= 0; --l) {
            const int hi = g.include_boundary() ? g.n(l) + 1 : g.n(l);
            if (m[l] < hi) {
                ++m[l];
                x[l] = m[l] * g.dx(l);
                break;
            }
            m[l] = g.base_index(l);
            x[l] = m[l] * g.dx(l);
        }
    }
}

}  // namespace amfw

#endif
