#ifndef AMFW_SPACE_DISC_HPP
#define AMFW_SPACE_DISC_HPP

#include <vector>

#include "amfw/banded.hpp"
#include "amfw/grid.hpp"
#include "amfw/problems.hpp"

namespace amfw {

/// How the split right-hand side treats the boundary.
///  - Plain: interior unknowns, Dirichlet data folded into the stencils.
///  - Interpolant: interior unknowns of the homogenized problem (zero data).
///  - Extended: closed-grid unknowns, boundary rows evolve by the tangential
///    operator and differentiated boundary data.
enum class SplitMode { Plain, Interpolant, Extended };

/// Mixed-order central difference rows: 3-point (2nd order) at the interior
/// points adjacent to the boundary, 5-point (4th order) elsewhere.
/// w has n+2 entries including both end values; d2/d1 receive n values for
/// the interior positions 1..n.
void line_second_derivative(const double* w, int n, double dx, double* d2);
void line_first_derivative(const double* w, int n, double dx, double* d1);

/// Apply the mixed-order derivative along one direction. In interior-only
/// grids the two out-of-domain references per line are taken from
/// face_values (required); closed grids use stored boundary points and
/// produce zero at the points saturated in `axis`.
GridField apply_second_derivative(const Grid& g, int axis, const GridField& V,
                                  const SpaceTimeFn& face_values, double t);
GridField apply_first_derivative(const Grid& g, int axis, const GridField& V,
                                 const SpaceTimeFn& face_values, double t);

/// Frozen banded form of the directional split term F_j (j >= 1): per-line
/// pentadiagonal matrices plus, on interior-only grids, the inflow vector
/// carrying known Dirichlet values that the stencils reach.
struct DirectionalOperator {
    int axis = 0;
    double time = 0.0;
    std::vector<Line> lines;
    std::vector<BandedLineMatrix> mats;       // one per line
    std::vector<std::vector<double>> inflow;  // per line; empty when none

    GridField apply(const GridField& V, bool with_inflow) const;
};

/// Factored (I - coeff * D_axis), one banded LU per line; `coeff` is
/// theta * dt in the AMF-W stages.
class DirectionalSolver {
public:
    DirectionalSolver(const Grid& g, const DirectionalOperator& op, double coeff);
    void solve_inplace(GridField& rhs) const;

private:
    std::vector<Line> lines_;
    std::vector<BandedFactorization> fac_;
};

/// The directional splitting F = F_0 + F_1 + ... + F_d of the semidiscrete
/// right-hand side, with F_0 the reaction term.
class SplitSystem {
public:
    SplitSystem(const PDEProblem& p, const Grid& g, SplitMode mode);

    int dim() const { return problem_->dim; }
    SplitMode mode() const { return mode_; }
    const Grid& grid() const { return *grid_; }
    const PDEProblem& problem() const { return *problem_; }

    /// F_j(t, V); j = 0 is the reaction / boundary-ODE term.
    GridField eval_term(int j, double t, const GridField& V) const;
    GridField eval_total(double t, const GridField& V) const;

    /// Frozen banded Jacobian of F_j, j >= 1 (exact: the term is linear in V).
    DirectionalOperator jacobian(int axis, double t) const;
    /// Pointwise dr/du for j = 0; zero at extended-mode boundary rows.
    GridField reaction_jacobian(double t, const GridField& V) const;

    /// Fdot_j = d/dt F_j at frozen V; analytic when the problem supplies the
    /// needed derivatives, else central finite differences in t.
    GridField time_derivative(int j, double t, const GridField& V) const;

private:
    const PDEProblem* problem_;
    const Grid* grid_;
    SplitMode mode_;

    GridField directional(int axis, double t, const GridField& V,
                          const SpaceTimeFn& ghost) const;
    GridField boundary_ode_rhs(double t, const SpaceTimeFn& data, const SpaceTimeFn& data_dot,
                               const AxisSpaceTimeFn& data_xx) const;
    const SpaceTimeFn& ghost_data() const;
};

}  // namespace amfw

#endif
