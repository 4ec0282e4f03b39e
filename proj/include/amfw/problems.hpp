#ifndef AMFW_PROBLEMS_HPP
#define AMFW_PROBLEMS_HPP

#include <functional>
#include <optional>
#include <string>

#include "amfw/grid.hpp"

namespace amfw {

using SpaceTimeFn = std::function<double(const Coord&, double)>;
using AxisSpaceTimeFn = std::function<double(const Coord&, double, int)>;  // (x, t, axis)
using ReactionFn = std::function<double(const Coord&, double, double)>;  // (x, t, u)

/// Variable coefficient a_j(x,t) or b_j(x,t); a constant when fn is empty.
struct Coefficient {
    double constant = 0.0;
    SpaceTimeFn fn;

    Coefficient() = default;
    Coefficient(double c) : constant(c) {}  // NOLINT(google-explicit-constructor)
    Coefficient(SpaceTimeFn f) : fn(std::move(f)) {}  // NOLINT

    bool is_constant() const { return !fn; }
    bool is_zero() const { return !fn && constant == 0.0; }
    double operator()(const Coord& x, double t) const { return fn ? fn(x, t) : constant; }
};

/// Grid-aware additive reaction part; used by the interpolant-transformed
/// problem, whose source contains the discretized elliptic operator applied
/// to the interpolant.
using ReactionFieldFn = std::function<GridField(const Grid&, double)>;

/// Semilinear parabolic problem on the unit hypercube with Dirichlet data
/// beta on the boundary.
struct PDEProblem {
    std::string name;
    int dim = 0;
    double t_end = 1.0;

    std::array<Coefficient, kMaxDim> a{};  // diffusion, each >= abar > 0
    std::array<Coefficient, kMaxDim> b{};  // advection
    bool coeffs_time_independent = true;

    ReactionFn r;        // reaction r(x,t,u); empty means zero
    ReactionFn r_u;      // analytic du-derivative (optional)
    ReactionFn r_t;      // analytic dt-derivative (optional)
    ReactionFieldFn reaction_extra;    // state-independent additive field (optional)
    ReactionFieldFn reaction_extra_t;  // its time derivative (optional)

    SpaceTimeFn beta;      // Dirichlet data, evaluable on the closed domain
    SpaceTimeFn beta_t;    // optional analytic time derivatives of the data
    SpaceTimeFn beta_tt;
    SpaceTimeFn u0;        // initial data
    SpaceTimeFn exact;     // exact solution for error measurement (optional)
    // Analytic second space derivatives of beta and beta_t along one axis
    // (optional). When present (and the problem has no advection) the
    // operator-extension boundary source uses them instead of discrete
    // derivatives of sampled boundary data.
    AxisSpaceTimeFn beta_xx;
    AxisSpaceTimeFn beta_txx;

    bool has_reaction() const { return static_cast<bool>(r) || static_cast<bool>(reaction_extra); }
};

/// The linear 3D test problem: exact solution
///   u = 64 e^t prod x_j(1-x_j) + C e^t sum (x_j + 1/(j+2))^2,
/// pure Laplacian diffusion, source chosen to match. C=0 gives homogeneous
/// Dirichlet data, C=1 time-dependent data.
PDEProblem make_problem1(double C);

/// 2D reaction-diffusion, exact solution 1/(1+exp(x+y-t)), reaction u(1-u)(4u-1).
PDEProblem make_problem2();

/// 3D reaction-diffusion, exact solution 1/(1+exp(x+y+z-t)), reaction 2u(1-u)(3u-1).
PDEProblem make_problem3();

/// Lookup by id ("problem1", "problem2", "problem3"); C applies to problem1 only.
PDEProblem make_problem(const std::string& id, double C);

/// Max |u_t - L u - r| over `samples` quasi-random interior (x,t) points,
/// with derivatives taken by high-order finite differences. Guards the
/// catalog against transcription slips.
double pde_residual(const PDEProblem& p, int samples);

}  // namespace amfw

#endif
