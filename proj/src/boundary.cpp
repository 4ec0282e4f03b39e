#include "amfw/boundary.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "amfw/space_disc.hpp"

namespace amfw {

double Poly1D::operator()(double x) const {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

double Poly1D::deriv(double x) const {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 1;) v = v * x + static_cast<double>(i) * c[i];
    return v;
}

namespace {

/// Solve b0.p P(0) + b0.q P'(0) = r0, b1.p P(1) + b1.q P'(1) = r1 for a
/// polynomial of minimal degree; within the solution set of that degree,
/// make the value at vanish_at zero if the nullspace permits.
Poly1D solve_edge_poly(const FaceBC& b0, const FaceBC& b1, double r0, double r1,
                       double vanish_at) {
    if (b0.p == 0.0 && b0.q == 0.0) throw std::invalid_argument("degenerate boundary operator");
    if (b1.p == 0.0 && b1.q == 0.0) throw std::invalid_argument("degenerate boundary operator");
    for (int deg = 1; deg <= 3; ++deg) {
        const int m = deg + 1;
        std::array<std::vector<double>, 2> A;
        A[0].assign(static_cast<std::size_t>(m), 0.0);
        A[1].assign(static_cast<std::size_t>(m), 0.0);
        A[0][0] = b0.p;
        A[0][1] = b0.q;
        for (int i = 0; i < m; ++i) A[1][static_cast<std::size_t>(i)] = b1.p + b1.q * i;
        std::array<double, 2> rhs{r0, r1};

        // elimination with pivots on the lowest available monomial
        std::array<int, 2> pivot_col{-1, -1};
        int rank = 0;
        for (int col = 0; col < m && rank < 2; ++col) {
            int best = rank;
            for (int rr = rank + 1; rr < 2; ++rr)
                if (std::fabs(A[static_cast<std::size_t>(rr)][static_cast<std::size_t>(col)]) >
                    std::fabs(A[static_cast<std::size_t>(best)][static_cast<std::size_t>(col)]))
                    best = rr;
            if (std::fabs(A[static_cast<std::size_t>(best)][static_cast<std::size_t>(col)]) < 1e-12)
                continue;
            std::swap(A[static_cast<std::size_t>(rank)], A[static_cast<std::size_t>(best)]);
            std::swap(rhs[static_cast<std::size_t>(rank)], rhs[static_cast<std::size_t>(best)]);
            for (int rr = rank + 1; rr < 2; ++rr) {
                const double f = A[static_cast<std::size_t>(rr)][static_cast<std::size_t>(col)] /
                                 A[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
                if (f == 0.0) continue;
                for (int i = col; i < m; ++i)
                    A[static_cast<std::size_t>(rr)][static_cast<std::size_t>(i)] -=
                        f * A[static_cast<std::size_t>(rank)][static_cast<std::size_t>(i)];
                rhs[static_cast<std::size_t>(rr)] -= f * rhs[static_cast<std::size_t>(rank)];
            }
            pivot_col[static_cast<std::size_t>(rank)] = col;
            ++rank;
        }
        bool consistent = true;
        for (int rr = rank; rr < 2; ++rr)
            if (std::fabs(rhs[static_cast<std::size_t>(rr)]) > 1e-12) consistent = false;
        if (!consistent) continue;

        auto back_solve = [&](std::vector<double>& x, const std::array<double, 2>& b) {
            for (int rr = rank - 1; rr >= 0; --rr) {
                const int pc = pivot_col[static_cast<std::size_t>(rr)];
                double s = b[static_cast<std::size_t>(rr)];
                for (int i = pc + 1; i < m; ++i)
                    s -= A[static_cast<std::size_t>(rr)][static_cast<std::size_t>(i)] *
                         x[static_cast<std::size_t>(i)];
                x[static_cast<std::size_t>(pc)] =
                    s / A[static_cast<std::size_t>(rr)][static_cast<std::size_t>(pc)];
            }
        };
        std::vector<double> x(static_cast<std::size_t>(m), 0.0);
        back_solve(x, rhs);

        auto value_at = [&](const std::vector<double>& v) {
            double s = 0.0, pw = 1.0;
            for (int i = 0; i < m; ++i, pw *= vanish_at) s += v[static_cast<std::size_t>(i)] * pw;
            return s;
        };
        const double v0 = value_at(x);
        if (std::fabs(v0) > 1e-13) {
            for (int f = 0; f < m; ++f) {
                bool is_pivot = false;
                for (int rr = 0; rr < rank; ++rr)
                    if (pivot_col[static_cast<std::size_t>(rr)] == f) is_pivot = true;
                if (is_pivot) continue;
                // nullspace vector with free entry f set to 1
                std::vector<double> nv(static_cast<std::size_t>(m), 0.0);
                nv[static_cast<std::size_t>(f)] = 1.0;
                back_solve(nv, {0.0, 0.0});
                const double vn = value_at(nv);
                if (std::fabs(vn) > 1e-12) {
                    const double f2 = v0 / vn;
                    for (int i = 0; i < m; ++i)
                        x[static_cast<std::size_t>(i)] -= f2 * nv[static_cast<std::size_t>(i)];
                    break;
                }
            }
        }
        return Poly1D{std::move(x)};
    }
    throw std::runtime_error("no edge polynomial of degree <= 3 satisfies the constraints");
}

/// 5-point first derivative at x0 with all samples inside [0, 1]: central
/// with the widest fitting spacing when x0 is away from the ends, otherwise
/// one-sided into the domain. Exact through degree 4 either way; the spacing
/// is kept as large as possible to minimize roundoff amplification.
template <class Fn>
double fd_derivative(Fn&& f, double x0) {
    const double edge = std::min(x0, 1.0 - x0);
    if (edge >= 0.25) {
        const double d = edge / 2.0;
        return (f(x0 - 2.0 * d) - 8.0 * f(x0 - d) + 8.0 * f(x0 + d) - f(x0 + 2.0 * d)) /
               (12.0 * d);
    }
    const double sign = x0 < 0.5 ? 1.0 : -1.0;
    const double d = (sign > 0.0 ? 1.0 - x0 : x0) / 4.0;
    const double s = -25.0 * f(x0) + 48.0 * f(x0 + sign * d) - 36.0 * f(x0 + 2.0 * sign * d) +
                     16.0 * f(x0 + 3.0 * sign * d) - 3.0 * f(x0 + 4.0 * sign * d);
    return sign * s / (12.0 * d);
}

}  // namespace

EdgePolynomials build_edge_polynomials(const FaceBC& b0, const FaceBC& b1) {
    EdgePolynomials e;
    e.P = solve_edge_poly(b0, b1, 1.0, 0.0, 1.0);
    e.Q = solve_edge_poly(b0, b1, 0.0, 1.0, 0.0);
    return e;
}

Interpolant::Interpolant(int dim, const FaceBCArray& bc, const FaceDataArray& data)
    : dim_(dim), bc_(bc), data_(data) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("invalid dimension");
    for (int j = 0; j < dim; ++j) {
        if (!data_[j][0] || !data_[j][1])
            throw std::invalid_argument("missing face data in direction " + std::to_string(j));
        poly_[j] = build_edge_polynomials(bc_[j][0], bc_[j][1]);
    }
}

double Interpolant::apply_bc(int j, int k, int i, const Coord& x, double t) const {
    return apply_bc_d(j, k, i, 0u, x, t);
}

double Interpolant::apply_bc_d(int j, int k, int i, unsigned mask, const Coord& x,
                               double t) const {
    const FaceBC& b = bc_[j][k];
    double v = 0.0;
    if (b.p != 0.0) v += b.p * level_d(i, mask, x, t);
    if (b.q != 0.0) v += b.q * level_d(i, mask | (1u << j), x, t);
    return v;
}

double Interpolant::face_data(int j, int k, Coord x, double t) const {
    x[j] = static_cast<double>(k);
    double g = data_[j][k](x, t);
    for (int i = 0; i < j; ++i) g -= apply_bc(j, k, i, x, t);
    return g;
}

double Interpolant::face_data_d(int j, int k, unsigned mask, Coord x, double t) const {
    if (mask & (1u << j)) return 0.0;  // g_{j,k} does not depend on x_j
    if (mask == 0u) return face_data(j, k, x, t);
    x[j] = static_cast<double>(k);
    double g = fd_data(j, k, mask, x, t);
    for (int i = 0; i < j; ++i) g -= apply_bc_d(j, k, i, mask, x, t);
    return g;
}

// mixed derivative of the raw face-data function; one 5-point stencil per
// axis in the mask, never applied to anything containing another stencil
double Interpolant::fd_data(int j, int k, unsigned mask, const Coord& x, double t) const {
    if (mask == 0u) {
        Coord y = x;
        y[j] = static_cast<double>(k);
        return data_[j][k](y, t);
    }
    int axis = 0;
    while (!(mask & (1u << axis))) ++axis;
    const unsigned rest = mask & (mask - 1u);
    auto along = [&](double s) {
        Coord y = x;
        y[axis] = s;
        return fd_data(j, k, rest, y, t);
    };
    return fd_derivative(along, x[axis]);
}

double Interpolant::level(int j, const Coord& x, double t) const {
    return poly_[j].P(x[j]) * face_data(j, 0, x, t) + poly_[j].Q(x[j]) * face_data(j, 1, x, t);
}

double Interpolant::level_d(int j, unsigned mask, const Coord& x, double t) const {
    if (mask == 0u) return level(j, x, t);
    if (mask & (1u << j)) {
        const unsigned rest = mask & ~(1u << j);
        return poly_[j].P.deriv(x[j]) * face_data_d(j, 0, rest, x, t) +
               poly_[j].Q.deriv(x[j]) * face_data_d(j, 1, rest, x, t);
    }
    return poly_[j].P(x[j]) * face_data_d(j, 0, mask, x, t) +
           poly_[j].Q(x[j]) * face_data_d(j, 1, mask, x, t);
}

double Interpolant::operator()(const Coord& x, double t) const {
    double v = 0.0;
    for (int j = 0; j < dim_; ++j) v += level(j, x, t);
    return v;
}

double Interpolant::boundary_value(int j, int k, const Coord& x, double t) const {
    Coord xf = x;
    xf[j] = static_cast<double>(k);
    double v = 0.0;
    for (int i = 0; i < dim_; ++i) v += apply_bc(j, k, i, xf, t);
    return v;
}

Interpolant dirichlet_interpolant(int dim, const SpaceTimeFn& data) {
    FaceBCArray bc{};  // defaults to Dirichlet
    FaceDataArray d{};
    for (int j = 0; j < dim; ++j) d[j][0] = d[j][1] = data;
    return Interpolant(dim, bc, d);
}

GridField interpolant_source(const Grid& g, double t, const Interpolant& phi,
                             const Interpolant* phi_dot, const PDEProblem& p) {
    std::vector<int> n(static_cast<std::size_t>(g.dim()));
    for (int l = 0; l < g.dim(); ++l) n[static_cast<std::size_t>(l)] = g.n(l);
    Grid gc = build_grid(n, true);
    GridField f(gc);
    for_each_point(gc, [&](std::int64_t flat, const MultiIndex&, const Coord& x) {
        f[flat] = phi(x, t);
    });
    GridField acc(gc);
    for (int axis = 0; axis < g.dim(); ++axis) {
        if (!p.a[axis].is_zero()) {
            GridField d2 = apply_second_derivative(gc, axis, f, SpaceTimeFn(), t);
            if (p.a[axis].is_constant()) {
                axpy(acc, p.a[axis].constant, d2);
            } else {
                const Coefficient& a = p.a[axis];
                for_each_point(gc, [&](std::int64_t flat, const MultiIndex&, const Coord& x) {
                    acc[flat] += a(x, t) * d2[flat];
                });
            }
        }
        if (!p.b[axis].is_zero()) {
            GridField d1 = apply_first_derivative(gc, axis, f, SpaceTimeFn(), t);
            if (p.b[axis].is_constant()) {
                axpy(acc, p.b[axis].constant, d1);
            } else {
                const Coefficient& b = p.b[axis];
                for_each_point(gc, [&](std::int64_t flat, const MultiIndex&, const Coord& x) {
                    acc[flat] += b(x, t) * d1[flat];
                });
            }
        }
    }
    GridField out(g);
    const double dt0 = 6.06e-6 * std::max(1.0, std::fabs(t));
    for_each_point(g, [&](std::int64_t flat, const MultiIndex& m, const Coord& x) {
        const double pt = phi_dot ? (*phi_dot)(x, t)
                                  : (phi(x, t + dt0) - phi(x, t - dt0)) / (2.0 * dt0);
        out[flat] = acc[gc.flatten(m)] - pt;
    });
    return out;
}

PDEProblem homogenize(const PDEProblem& p) {
    if (!p.beta) throw std::invalid_argument("homogenize: problem has no boundary data");
    auto phi = std::make_shared<Interpolant>(dirichlet_interpolant(p.dim, p.beta));
    std::shared_ptr<Interpolant> phi_t, phi_tt;
    if (p.beta_t) phi_t = std::make_shared<Interpolant>(dirichlet_interpolant(p.dim, p.beta_t));
    if (p.beta_tt)
        phi_tt = std::make_shared<Interpolant>(dirichlet_interpolant(p.dim, p.beta_tt));
    auto orig = std::make_shared<PDEProblem>(p);

    PDEProblem q = p;
    q.name = p.name + "-homogenized";
    const SpaceTimeFn zero = [](const Coord&, double) { return 0.0; };
    q.beta = zero;
    q.beta_t = zero;
    q.beta_tt = zero;
    q.u0 = [u0 = p.u0, phi](const Coord& x, double t) { return u0(x, t) - (*phi)(x, t); };
    if (p.exact)
        q.exact = [e = p.exact, phi](const Coord& x, double t) { return e(x, t) - (*phi)(x, t); };
    if (p.r) {
        q.r = [r = p.r, phi](const Coord& x, double t, double w) {
            return r(x, t, w + (*phi)(x, t));
        };
        q.r_u = p.r_u ? ReactionFn([ru = p.r_u, phi](const Coord& x, double t, double w) {
            return ru(x, t, w + (*phi)(x, t));
        })
                      : ReactionFn();
        if (p.r_t && p.r_u && phi_t) {
            q.r_t = [rt = p.r_t, ru = p.r_u, phi, phi_t](const Coord& x, double t, double w) {
                const double u = w + (*phi)(x, t);
                return rt(x, t, u) + ru(x, t, u) * (*phi_t)(x, t);
            };
        } else {
            q.r_t = {};
        }
    }
    q.reaction_extra = [phi, phi_t, orig](const Grid& g, double t) {
        GridField out = interpolant_source(g, t, *phi, phi_t.get(), *orig);
        if (orig->reaction_extra) out += orig->reaction_extra(g, t);
        return out;
    };
    if (phi_t && phi_tt && !(p.reaction_extra && !p.reaction_extra_t)) {
        q.reaction_extra_t = [phi_t, phi_tt, orig](const Grid& g, double t) {
            GridField out = interpolant_source(g, t, *phi_t, phi_tt.get(), *orig);
            if (orig->reaction_extra_t) out += orig->reaction_extra_t(g, t);
            return out;
        };
    } else {
        q.reaction_extra_t = {};
    }
    return q;
}

void project_boundary(GridField& V, const SpaceTimeFn& data, double t) {
    const Grid& g = *V.grid;
    if (!g.include_boundary()) return;
    for_each_point(g, [&](std::int64_t flat, const MultiIndex& m, const Coord& x) {
        if (!g.classify(m).interior()) V[flat] = data(x, t);
    });
}

}  // namespace amfw
