#include "amfw/space_disc.hpp"

#include <cmath>
#include <stdexcept>

namespace amfw {

void line_second_derivative(const double* w, int n, double dx, double* d2) {
    const double c2 = 1.0 / (dx * dx);
    const double c4 = c2 / 12.0;
    d2[0] = c2 * (w[0] - 2.0 * w[1] + w[2]);
    for (int i = 2; i <= n - 1; ++i)
        d2[i - 1] =
            c4 * (-w[i - 2] + 16.0 * w[i - 1] - 30.0 * w[i] + 16.0 * w[i + 1] - w[i + 2]);
    d2[n - 1] = c2 * (w[n - 1] - 2.0 * w[n] + w[n + 1]);
}

void line_first_derivative(const double* w, int n, double dx, double* d1) {
    const double c2 = 1.0 / (2.0 * dx);
    const double c4 = 1.0 / (12.0 * dx);
    d1[0] = c2 * (w[2] - w[0]);
    for (int i = 2; i <= n - 1; ++i)
        d1[i - 1] = c4 * (w[i - 2] - 8.0 * w[i - 1] + 8.0 * w[i + 1] - w[i + 2]);
    d1[n - 1] = c2 * (w[n + 1] - w[n - 1]);
}

namespace {

/// Shared kernel: out = a * d2(V) + b * d1(V) along `axis`. Null coefficient
/// pointers mean zero; ghost may be empty (treated as zero data).
GridField apply_directional_impl(const Grid& g, int axis, const GridField& V,
                                 const SpaceTimeFn& ghost, double t, const Coefficient* a,
                                 const Coefficient* b) {
    if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("invalid direction");
    const bool closed = g.include_boundary();
    const int n = g.n(axis);
    const int M = n + 2;
    const double dx = g.dx(axis);
    const bool need_d2 = a && !a->is_zero();
    const bool need_d1 = b && !b->is_zero();
    const bool const_coef = (!need_d2 || a->is_constant()) && (!need_d1 || b->is_constant());
    const double ca = need_d2 && a->is_constant() ? a->constant : 0.0;
    const double cb = need_d1 && b->is_constant() ? b->constant : 0.0;

    GridField out(g);
    std::vector<double> w(M), d2(need_d2 ? n : 0), d1(need_d1 ? n : 0);
    for (const Line& ln : g.lines(axis)) {
        if (closed) {
            for (int i = 0; i < M; ++i) w[i] = V[ln.base + i * ln.stride];
        } else {
            for (int i = 1; i <= n; ++i) w[i] = V[ln.base + (i - 1) * ln.stride];
            if (ghost) {
                Coord xe = g.coords(g.unflatten(ln.base));
                xe[axis] = 0.0;
                w[0] = ghost(xe, t);
                xe[axis] = 1.0;
                w[M - 1] = ghost(xe, t);
            } else {
                w[0] = w[M - 1] = 0.0;
            }
        }
        if (need_d2) line_second_derivative(w.data(), n, dx, d2.data());
        if (need_d1) line_first_derivative(w.data(), n, dx, d1.data());
        Coord x{};
        if (!const_coef) x = g.coords(g.unflatten(ln.base));
        for (int i = 1; i <= n; ++i) {
            double aa = ca, bb = cb;
            if (!const_coef) {
                x[axis] = i * dx;
                if (need_d2 && !a->is_constant()) aa = (*a)(x, t);
                if (need_d1 && !b->is_constant()) bb = (*b)(x, t);
            }
            double val = 0.0;
            if (need_d2) val += aa * d2[i - 1];
            if (need_d1) val += bb * d1[i - 1];
            out[ln.base + (closed ? i : i - 1) * ln.stride] = val;
        }
    }
    return out;
}

const Coefficient kUnit{1.0};

struct RowEntry {
    int off;
    double c2;  // second-derivative weight (before 1/dx^2)
    double c1;  // first-derivative weight (before 1/dx)
};

// 3-point rows for boundary-adjacent points, 5-point rows elsewhere
constexpr RowEntry kRow3[3] = {{-1, 1.0, -0.5}, {0, -2.0, 0.0}, {1, 1.0, 0.5}};
constexpr RowEntry kRow5[5] = {{-2, -1.0 / 12, 1.0 / 12},
                               {-1, 16.0 / 12, -8.0 / 12},
                               {0, -30.0 / 12, 0.0},
                               {1, 16.0 / 12, 8.0 / 12},
                               {2, -1.0 / 12, -1.0 / 12}};

double fd_time_step(double t) { return 6.06e-6 * std::max(1.0, std::fabs(t)); }

}  // namespace

GridField apply_second_derivative(const Grid& g, int axis, const GridField& V,
                                  const SpaceTimeFn& face_values, double t) {
    if (!g.include_boundary() && !face_values)
        throw std::invalid_argument("interior-only grid requires face values");
    return apply_directional_impl(g, axis, V, face_values, t, &kUnit, nullptr);
}

GridField apply_first_derivative(const Grid& g, int axis, const GridField& V,
                                 const SpaceTimeFn& face_values, double t) {
    if (!g.include_boundary() && !face_values)
        throw std::invalid_argument("interior-only grid requires face values");
    return apply_directional_impl(g, axis, V, face_values, t, nullptr, &kUnit);
}

GridField DirectionalOperator::apply(const GridField& V, bool with_inflow) const {
    GridField out(*V.grid);
    std::vector<double> in(static_cast<std::size_t>(lines.front().length)),
        res(static_cast<std::size_t>(lines.front().length));
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const Line& ln = lines[li];
        for (int i = 0; i < ln.length; ++i) in[static_cast<std::size_t>(i)] = V[ln.base + i * ln.stride];
        mats[li].apply(in.data(), res.data());
        if (with_inflow && !inflow.empty() && !inflow[li].empty())
            for (int i = 0; i < ln.length; ++i) res[static_cast<std::size_t>(i)] += inflow[li][static_cast<std::size_t>(i)];
        for (int i = 0; i < ln.length; ++i) out[ln.base + i * ln.stride] = res[static_cast<std::size_t>(i)];
    }
    return out;
}

DirectionalSolver::DirectionalSolver(const Grid& g, const DirectionalOperator& op, double coeff)
    : lines_(op.lines) {
    (void)g;
    fac_.reserve(op.mats.size());
    for (const BandedLineMatrix& m : op.mats) {
        BandedLineMatrix shifted = m;
        shifted.scale_shift(-coeff, 1.0);  // I - coeff * D
        fac_.push_back(BandedFactorization::factorize(shifted));
    }
}

void DirectionalSolver::solve_inplace(GridField& rhs) const {
    std::vector<double> buf(static_cast<std::size_t>(lines_.front().length));
    for (std::size_t li = 0; li < lines_.size(); ++li) {
        const Line& ln = lines_[li];
        if (ln.stride == 1) {
            fac_[li].solve(&rhs.v[static_cast<std::size_t>(ln.base)]);
        } else {
            for (int i = 0; i < ln.length; ++i) buf[static_cast<std::size_t>(i)] = rhs[ln.base + i * ln.stride];
            fac_[li].solve(buf.data());
            for (int i = 0; i < ln.length; ++i) rhs[ln.base + i * ln.stride] = buf[static_cast<std::size_t>(i)];
        }
    }
}

SplitSystem::SplitSystem(const PDEProblem& p, const Grid& g, SplitMode mode)
    : problem_(&p), grid_(&g), mode_(mode) {
    if ((mode == SplitMode::Extended) != g.include_boundary())
        throw std::invalid_argument("split mode does not match grid boundary storage");
    if (p.dim != g.dim()) throw std::invalid_argument("problem/grid dimension mismatch");
}

const SpaceTimeFn& SplitSystem::ghost_data() const {
    static const SpaceTimeFn empty;
    if (mode_ == SplitMode::Plain) return problem_->beta;
    return empty;  // interpolant-transformed problems have homogeneous data
}

GridField SplitSystem::directional(int axis, double t, const GridField& V,
                                   const SpaceTimeFn& ghost) const {
    return apply_directional_impl(*grid_, axis, V, ghost, t, &problem_->a[axis],
                                  &problem_->b[axis]);
}

GridField SplitSystem::boundary_ode_rhs(double t, const SpaceTimeFn& data,
                                        const SpaceTimeFn& data_dot,
                                        const AxisSpaceTimeFn& data_xx) const {
    const Grid& g = *grid_;
    GridField out(g);
    bool advection = false;
    for (int l = 0; l < g.dim(); ++l)
        if (!problem_->b[l].is_zero()) advection = true;
    if (data_xx && !advection) {
        for_each_point(g, [&](std::int64_t flat, const MultiIndex& m, const Coord& x) {
            const PointClass pc = g.classify(m);
            if (pc.interior()) return;
            double v = data_dot(x, t);
            for (int l = 0; l < g.dim(); ++l)
                if (!pc.on_face(l)) v -= problem_->a[l](x, t) * data_xx(x, t, l);
            out[flat] = v;
        });
        return out;
    }
    for_each_point(g, [&](std::int64_t flat, const MultiIndex& m, const Coord& x) {
        if (!g.classify(m).interior()) out[flat] = data_dot(x, t);
    });
    // subtract the tangential operator: only face lines contribute, and only
    // at positions not saturated in the line direction
    for (int axis = 0; axis < g.dim(); ++axis) {
        const int n = g.n(axis);
        const int M = n + 2;
        const double dx = g.dx(axis);
        const Coefficient& A = problem_->a[axis];
        const Coefficient& B = problem_->b[axis];
        const bool need_d1 = !B.is_zero();
        std::vector<double> w(M), d2(n), d1(need_d1 ? n : 0);
        for (const Line& ln : g.lines(axis)) {
            MultiIndex base = g.unflatten(ln.base);
            bool face_line = false;
            for (int l = 0; l < g.dim(); ++l)
                if (l != axis && (base[l] == 0 || base[l] == g.n(l) + 1)) face_line = true;
            if (!face_line) continue;
            Coord x = g.coords(base);
            for (int i = 0; i < M; ++i) {
                x[axis] = i * dx;
                w[i] = data(x, t);
            }
            line_second_derivative(w.data(), n, dx, d2.data());
            if (need_d1) line_first_derivative(w.data(), n, dx, d1.data());
            for (int i = 1; i <= n; ++i) {
                x[axis] = i * dx;
                double val = A(x, t) * d2[i - 1];
                if (need_d1) val += B(x, t) * d1[i - 1];
                out[ln.base + i * ln.stride] -= val;
            }
        }
    }
    return out;
}

GridField SplitSystem::eval_term(int j, double t, const GridField& V) const {
    if (j < 0 || j > problem_->dim) throw std::invalid_argument("invalid split term index");
    const Grid& g = *grid_;
    if (j > 0) return directional(j - 1, t, V, ghost_data());

    GridField out(g);
    const bool extended = mode_ == SplitMode::Extended;
    if (problem_->r) {
        const ReactionFn& r = problem_->r;
        for_each_point(g, [&](std::int64_t flat, const MultiIndex& m, const Coord& x) {
            if (extended && !g.classify(m).interior()) return;
            out[flat] = r(x, t, V[flat]);
        });
    }
    if (problem_->reaction_extra) out += problem_->reaction_extra(g, t);
    if (extended) {
        SpaceTimeFn data_dot = problem_->beta_t;
        if (!data_dot) {
            const SpaceTimeFn& beta = problem_->beta;
            data_dot = [&beta](const Coord& x, double t0) {
                double dt0 = fd_time_step(t0);
                return (beta(x, t0 + dt0) - beta(x, t0 - dt0)) / (2.0 * dt0);
            };
        }
        out += boundary_ode_rhs(t, problem_->beta, data_dot, problem_->beta_xx);
    }
    return out;
}

GridField SplitSystem::eval_total(double t, const GridField& V) const {
    GridField out = eval_term(0, t, V);
    for (int j = 1; j <= problem_->dim; ++j) out += eval_term(j, t, V);
    return out;
}

DirectionalOperator SplitSystem::jacobian(int axis, double t) const {
    const Grid& g = *grid_;
    if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("invalid direction");
    const bool closed = g.include_boundary();
    const int n = g.n(axis);
    const double dx = g.dx(axis);
    const int m = closed ? n + 2 : n;
    const Coefficient& A = problem_->a[axis];
    const Coefficient& B = problem_->b[axis];
    const SpaceTimeFn& ghost = ghost_data();

    DirectionalOperator op;
    op.axis = axis;
    op.time = t;
    op.lines = g.lines(axis);
    op.mats.reserve(op.lines.size());
    op.inflow.resize(op.lines.size());
    for (std::size_t li = 0; li < op.lines.size(); ++li) {
        const Line& ln = op.lines[li];
        BandedLineMatrix mat(m);
        std::vector<double>& inflow = op.inflow[li];
        Coord x = g.coords(g.unflatten(ln.base));
        for (int i = 1; i <= n; ++i) {
            x[axis] = i * dx;
            const double aa = A(x, t) / (dx * dx);
            const double bb = B(x, t) / dx;
            const int k = closed ? i : i - 1;
            const bool narrow = (i == 1 || i == n);
            const RowEntry* row = narrow ? kRow3 : kRow5;
            const int cnt = narrow ? 3 : 5;
            for (int e = 0; e < cnt; ++e) {
                const double c = aa * row[e].c2 + bb * row[e].c1;
                if (c == 0.0) continue;
                const int p = i + row[e].off;  // lattice position touched
                if (closed || (p >= 1 && p <= n)) {
                    mat.band(k, row[e].off) += c;
                } else {
                    // known Dirichlet value moves to the inflow vector
                    if (inflow.empty()) inflow.assign(static_cast<std::size_t>(m), 0.0);
                    Coord xe = x;
                    xe[axis] = p * dx;  // 0 or 1
                    inflow[static_cast<std::size_t>(k)] += c * (ghost ? ghost(xe, t) : 0.0);
                }
            }
        }
        op.mats.push_back(std::move(mat));
    }
    return op;
}

GridField SplitSystem::reaction_jacobian(double t, const GridField& V) const {
    const Grid& g = *grid_;
    GridField out(g);
    if (!problem_->r) return out;
    const bool extended = mode_ == SplitMode::Extended;
    const ReactionFn& r = problem_->r;
    const ReactionFn& ru = problem_->r_u;
    for_each_point(g, [&](std::int64_t flat, const MultiIndex& m, const Coord& x) {
        if (extended && !g.classify(m).interior()) return;
        const double u = V[flat];
        if (ru) {
            out[flat] = ru(x, t, u);
        } else {
            const double du = std::max(1e-7, 1e-7 * std::fabs(u));
            out[flat] = (r(x, t, u + du) - r(x, t, u - du)) / (2.0 * du);
        }
    });
    return out;
}

GridField SplitSystem::time_derivative(int j, double t, const GridField& V) const {
    const Grid& g = *grid_;
    if (j > 0) {
        if (problem_->coeffs_time_independent) {
            if (mode_ == SplitMode::Extended || !ghost_data()) return GridField(g);
            if (problem_->beta_t) {
                GridField zero(g);
                return directional(j - 1, t, zero, problem_->beta_t);
            }
        }
    } else {
        bool analytic = true;
        if (problem_->r && !problem_->r_t) analytic = false;
        if (problem_->reaction_extra && !problem_->reaction_extra_t) analytic = false;
        if (mode_ == SplitMode::Extended &&
            !(problem_->beta_t && problem_->beta_tt && problem_->coeffs_time_independent))
            analytic = false;
        if (analytic) {
            GridField out(g);
            const bool extended = mode_ == SplitMode::Extended;
            if (problem_->r_t) {
                const ReactionFn& rt = problem_->r_t;
                for_each_point(g, [&](std::int64_t flat, const MultiIndex& m, const Coord& x) {
                    if (extended && !g.classify(m).interior()) return;
                    out[flat] = rt(x, t, V[flat]);
                });
            }
            if (problem_->reaction_extra_t) out += problem_->reaction_extra_t(g, t);
            if (extended)
                out += boundary_ode_rhs(t, problem_->beta_t, problem_->beta_tt,
                                        problem_->beta_txx);
            return out;
        }
    }
    const double dt0 = fd_time_step(t);
    GridField hi = eval_term(j, t + dt0, V);
    GridField lo = eval_term(j, t - dt0, V);
    hi -= lo;
    hi *= 1.0 / (2.0 * dt0);
    return hi;
}

}  // namespace amfw
