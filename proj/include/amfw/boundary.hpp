#ifndef AMFW_BOUNDARY_HPP
#define AMFW_BOUNDARY_HPP

#include <array>
#include <vector>

#include "amfw/grid.hpp"
#include "amfw/problems.hpp"

namespace amfw {

/// Boundary operator B u = p u + q du/dx_j on one face of direction j.
/// (p, q) = (1, 0) is Dirichlet, (0, 1) Neumann.
struct FaceBC {
    double p = 1.0;
    double q = 0.0;
};

struct Poly1D {
    std::vector<double> c;  // ascending powers
    double operator()(double x) const;
    double deriv(double x) const;
    int degree() const { return static_cast<int>(c.size()) - 1; }
};

/// Pair (P, Q) with B_0 P = 1, B_1 P = 0, B_0 Q = 0, B_1 Q = 1. The lowest
/// degree (up to 3) admitting a solution is used; leftover freedom is spent
/// making P vanish at 1 and Q at 0 when the nullspace allows it.
struct EdgePolynomials {
    Poly1D P, Q;
};

EdgePolynomials build_edge_polynomials(const FaceBC& b0, const FaceBC& b1);

using FaceBCArray = std::array<std::array<FaceBC, 2>, kMaxDim>;
using FaceDataArray = std::array<std::array<SpaceTimeFn, 2>, kMaxDim>;

/// Boundary-data interpolant phi = sum_j phi_j with
///   phi_j = P_j(x_j) g_{j,0} + Q_j(x_j) g_{j,1},
/// where g_{j,k} is the face data of direction j minus the boundary operators
/// applied to the contributions of directions < j. For mutually compatible
/// face data, B_k^(j) phi reproduces the data on every face. Derivatives of
/// phi needed by Neumann-type operators are assembled analytically through
/// the P/Q factors; only the raw face-data functions are differentiated by
/// 5-point finite differences (exact for polynomial data through degree 4),
/// so the difference errors never compound across recursion levels.
class Interpolant {
public:
    Interpolant(int dim, const FaceBCArray& bc, const FaceDataArray& data);

    double operator()(const Coord& x, double t) const;
    /// B_k^(j) phi at the face point (x with x_j := k).
    double boundary_value(int j, int k, const Coord& x, double t) const;
    const EdgePolynomials& polynomials(int j) const { return poly_[j]; }

private:
    int dim_;
    FaceBCArray bc_;
    FaceDataArray data_;
    std::array<EdgePolynomials, kMaxDim> poly_;

    double level(int j, const Coord& x, double t) const;    // phi_j
    double face_data(int j, int k, Coord x, double t) const;  // g_{j,k}
    double apply_bc(int j, int k, int i, const Coord& x, double t) const;
    // mixed partial derivatives; mask is a bit set of (distinct) axes
    double level_d(int j, unsigned mask, const Coord& x, double t) const;
    double face_data_d(int j, int k, unsigned mask, Coord x, double t) const;
    double apply_bc_d(int j, int k, int i, unsigned mask, const Coord& x, double t) const;
    double fd_data(int j, int k, unsigned mask, const Coord& x, double t) const;
};

/// Interpolant of a single data function through all-Dirichlet faces.
Interpolant dirichlet_interpolant(int dim, const SpaceTimeFn& data);

/// L^h phi - phi_t on the stored points of g, with the problem's a_j, b_j
/// coefficients and mixed-order stencils. phi_dot may be null; finite
/// differences in t are then used.
GridField interpolant_source(const Grid& g, double t, const Interpolant& phi,
                             const Interpolant* phi_dot, const PDEProblem& p);

/// Transform to the homogenized unknown w = u - phi. The returned problem
/// has zero boundary data; its source term absorbs L^h phi - phi_t and the
/// reaction is evaluated at w + phi.
PDEProblem homogenize(const PDEProblem& p);

/// Overwrite the boundary points of a closed-grid field with data(x, t).
void project_boundary(GridField& V, const SpaceTimeFn& data, double t);

}  // namespace amfw

#endif
