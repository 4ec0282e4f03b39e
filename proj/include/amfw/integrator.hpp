#ifndef AMFW_INTEGRATOR_HPP
#define AMFW_INTEGRATOR_HPP

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "amfw/boundary.hpp"
#include "amfw/space_disc.hpp"

namespace amfw {

/// s-stage AMF-W tableau (A, L, b, theta) with the derived coefficients
/// rho = (I - L)^{-1} 1 and c = A rho.
struct AMFWTableau {
    std::string name;
    int s = 0;
    std::vector<double> A;  // row-major s x s, strictly lower triangular
    std::vector<double> L;  // row-major s x s, strictly lower triangular
    std::vector<double> b;
    double theta = 0.0;
    std::vector<double> rho, c;  // derived

    double a(int i, int j) const { return A[static_cast<std::size_t>(i * s + j)]; }
    double l(int i, int j) const { return L[static_cast<std::size_t>(i * s + j)]; }
};

/// Fill rho and c by forward substitution; requires strictly lower L.
void derive_coefficients(AMFWTableau& tb);

AMFWTableau amfw_hv();  // s=2, theta=(3+sqrt(3))/6; ODE order 3
AMFWTableau amfw_38();  // s=4, theta=1/2, 3/8-rule weights; ODE order 4

/// Lookup by name ("amfw-hv" or "amfw-38").
AMFWTableau find_tableau(const std::string& name);
std::vector<std::string> tableau_names();

/// One AMF-W step over a generic split system:
///   K_i^(-1) = dt F(t + c_i dt, y + sum_j a_ij K_j) + sum_j l_ij K_j
///   (I - theta dt D_m) K_i^(m) = K_i^(m-1) + theta rho_i dt^2 Fdot_m,
///     m = 0 .. num_splits-1 in order,
///   y' = y + sum_i b_i K_i.
/// Ops supplies the state algebra, the full right-hand side, the per-split
/// implicit solves (frozen at step start), and the frozen Fdot increments.
template <class Ops>
typename Ops::State amfw_step(Ops& ops, const AMFWTableau& tb, double t, double dt,
                              const typename Ops::State& y) {
    ops.begin_step(t, dt, y);
    const int s = tb.s;
    const int nsplit = ops.num_splits();
    std::vector<typename Ops::State> K;
    K.reserve(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) {
        typename Ops::State Y = y;
        for (int j = 0; j < i; ++j) ops.axpy(Y, tb.a(i, j), K[static_cast<std::size_t>(j)]);
        typename Ops::State Ki = ops.rhs(t + tb.c[static_cast<std::size_t>(i)] * dt, Y);
        ops.scale(Ki, dt);
        for (int j = 0; j < i; ++j) ops.axpy(Ki, tb.l(i, j), K[static_cast<std::size_t>(j)]);
        const double fcoef = tb.theta * tb.rho[static_cast<std::size_t>(i)] * dt * dt;
        for (int m = 0; m < nsplit; ++m) {
            ops.add_fdot(Ki, m, fcoef);
            ops.solve(m, Ki);
        }
        K.push_back(std::move(Ki));
    }
    typename Ops::State out = y;
    for (int i = 0; i < s; ++i)
        ops.axpy(out, tb.b[static_cast<std::size_t>(i)], K[static_cast<std::size_t>(i)]);
    ops.finish_step(t, dt, out);
    return out;
}

/// AMF-W operators for a directionally split PDE system. Split 0 is the
/// reaction (pointwise diagonal solve); splits 1..d are the banded
/// directional solves. Jacobians, factorizations and Fdot terms are frozen
/// at each step start; with time-independent coefficients the directional
/// factorizations are reused across steps.
class PdeOps {
public:
    using State = GridField;

    PdeOps(const SplitSystem& sys, double theta);

    int num_splits() const;
    void begin_step(double t, double dt, const GridField& y);
    GridField rhs(double t, const GridField& y) const;
    void axpy(GridField& y, double a, const GridField& x) const { amfw::axpy(y, a, x); }
    void scale(GridField& y, double a) const { y *= a; }
    void add_fdot(GridField& k, int m, double coef) const;
    void solve(int m, GridField& k) const;
    void finish_step(double t, double dt, GridField& y) const;

private:
    const SplitSystem* sys_;
    double theta_;
    double dt_ = 0.0;
    bool solvers_built_ = false;
    std::vector<DirectionalSolver> solvers_;
    GridField rdiag_;
    bool has_reaction_ = false;
    std::vector<GridField> fdot_;
};

/// Split scalar Dahlquist test y' = (sum_j lambda_j) y, one implicit solve
/// per lambda_j and no reaction split. A single step with dt = 1 from y = 1
/// reproduces the stability function R(lambda_1, ..., lambda_d).
struct DahlquistOps {
    using State = std::complex<double>;
    std::vector<std::complex<double>> lambda;
    double theta = 0.0;
    double dt = 0.0;

    DahlquistOps(std::vector<std::complex<double>> lam, double th)
        : lambda(std::move(lam)), theta(th) {}

    int num_splits() const { return static_cast<int>(lambda.size()); }
    void begin_step(double, double dt0, const State&) { dt = dt0; }
    State rhs(double, const State& y) const {
        std::complex<double> sum = 0.0;
        for (const auto& z : lambda) sum += z;
        return sum * y;
    }
    void axpy(State& y, double a, const State& x) const { y += a * x; }
    void scale(State& y, double a) const { y *= a; }
    void add_fdot(State&, int, double) const {}
    void solve(int m, State& k) const {
        k /= (1.0 - theta * dt * lambda[static_cast<std::size_t>(m)]);
    }
    void finish_step(double, double, State&) const {}
};

using DenseRhsFn = std::function<std::vector<double>(double, const std::vector<double>&)>;

/// Dense Rosenbrock/W reference step with a single W matrix:
///   (I - theta dt W) K_i = dt F(t + c_i dt, y + sum a_ij K_j)
///                          + sum l_ij K_j + theta rho_i dt^2 fdot.
/// Small-scale oracle only; n is capped at 4096.
std::vector<double> rosenbrock_step(const AMFWTableau& tb, double t, double dt,
                                    const std::vector<double>& y, const std::vector<double>& W,
                                    const std::vector<double>& fdot, const DenseRhsFn& F);

enum class BoundaryCorrection { None, Interpolant, Extension };

BoundaryCorrection parse_correction(const std::string& name);
std::string correction_name(BoundaryCorrection c);
/// The grid/split mode a correction integrates on.
SplitMode split_mode(BoundaryCorrection c);

/// Fixed-step integration from t = 0 to t_end (an integral number of steps).
/// None: interior grid, data folded into the stencils. Interpolant: the
/// homogenized problem is integrated and the interpolant added back at
/// t_end. Extension: closed grid with boundary rows evolving as ODEs and a
/// projection onto the exact data after every step.
GridField integrate(const PDEProblem& p, const Grid& g, const AMFWTableau& tb,
                    BoundaryCorrection corr, double dt, double t_end);

}  // namespace amfw

#endif
