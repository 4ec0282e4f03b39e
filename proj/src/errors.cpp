#include "amfw/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace amfw {

double weighted_l2_norm(const GridField& V) {
    const Grid& g = *V.grid;
    double w = 1.0;
    for (int l = 0; l < g.dim(); ++l) w /= static_cast<double>(g.n(l));
    double s = 0.0;
    if (g.include_boundary()) {
        for_each_point(g, [&](std::int64_t flat, const MultiIndex& m, const Coord&) {
            if (g.classify(m).interior()) s += V[flat] * V[flat];
        });
    } else {
        for (std::int64_t i = 0; i < V.size(); ++i) s += V[i] * V[i];
    }
    return std::sqrt(w * s);
}

double max_norm(const GridField& V) {
    const Grid& g = *V.grid;
    double m = 0.0;
    if (g.include_boundary()) {
        for_each_point(g, [&](std::int64_t flat, const MultiIndex& mi, const Coord&) {
            if (g.classify(mi).interior()) m = std::max(m, std::fabs(V[flat]));
        });
    } else {
        for (std::int64_t i = 0; i < V.size(); ++i) m = std::max(m, std::fabs(V[i]));
    }
    return m;
}

std::pair<double, double> global_error(const PDEProblem& p, const GridField& V, double t) {
    if (!p.exact) throw std::invalid_argument("problem has no exact solution");
    const Grid& g = *V.grid;
    GridField diff(g);
    for_each_point(g, [&](std::int64_t flat, const MultiIndex&, const Coord& x) {
        diff[flat] = p.exact(x, t) - V[flat];
    });
    return {weighted_l2_norm(diff), max_norm(diff)};
}

double order_from_errors(double error_coarse, double error_fine) {
    if (!(error_coarse > 0.0) || !(error_fine > 0.0))
        throw std::invalid_argument("order estimate requires positive errors");
    return std::log2(error_coarse / error_fine);
}

std::pair<double, long> adjust_dt(double t_end, double dt) {
    if (!(dt > 0.0) || !(t_end > 0.0)) throw std::invalid_argument("dt and t_end must be positive");
    long n = static_cast<long>(std::ceil(t_end / dt - 1e-12));
    if (n < 1) n = 1;
    return {t_end / static_cast<double>(n), n};
}

}  // namespace amfw
