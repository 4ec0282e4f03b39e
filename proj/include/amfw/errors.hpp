#ifndef AMFW_ERRORS_HPP
#define AMFW_ERRORS_HPP

#include <utility>

#include "amfw/grid.hpp"
#include "amfw/problems.hpp"

namespace amfw {

/// Weighted l2 norm: root mean square over the interior points,
/// sqrt(sum_interior V^2 / prod n_l). Boundary points of closed grids are
/// excluded; summation follows the flat storage order.
double weighted_l2_norm(const GridField& V);

/// Max of |V| over interior points.
double max_norm(const GridField& V);

/// (GE_2, GE_inf) of V against the problem's exact solution at time t.
std::pair<double, double> global_error(const PDEProblem& p, const GridField& V, double t);

/// p = log2(error_coarse / error_fine); both inputs must be positive.
double order_from_errors(double error_coarse, double error_fine);

/// Largest adjustment of dt so t_end is hit by a whole number of steps:
/// dt -> t_end / ceil(t_end / dt). Returns {adjusted dt, step count}.
std::pair<double, long> adjust_dt(double t_end, double dt);

}  // namespace amfw

#endif
