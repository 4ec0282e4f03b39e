#include "amfw/integrator.hpp"

#include <cmath>
#include <stdexcept>

#include "amfw/banded.hpp"

namespace amfw {

void derive_coefficients(AMFWTableau& tb) {
    const int s = tb.s;
    tb.rho.assign(static_cast<std::size_t>(s), 0.0);
    for (int i = 0; i < s; ++i) {
        double v = 1.0;
        for (int j = 0; j < i; ++j) v += tb.l(i, j) * tb.rho[static_cast<std::size_t>(j)];
        tb.rho[static_cast<std::size_t>(i)] = v;
    }
    tb.c.assign(static_cast<std::size_t>(s), 0.0);
    for (int i = 0; i < s; ++i) {
        double v = 0.0;
        for (int j = 0; j < s; ++j) v += tb.a(i, j) * tb.rho[static_cast<std::size_t>(j)];
        tb.c[static_cast<std::size_t>(i)] = v;
    }
}

AMFWTableau amfw_hv() {
    AMFWTableau tb;
    tb.name = "amfw-hv";
    tb.s = 2;
    tb.A = {0.0, 0.0,  //
            2.0 / 3.0, 0.0};
    tb.L = {0.0, 0.0,  //
            -4.0 / 3.0, 0.0};
    tb.b = {5.0 / 4.0, 3.0 / 4.0};
    tb.theta = (3.0 + std::sqrt(3.0)) / 6.0;
    derive_coefficients(tb);
    return tb;
}

AMFWTableau amfw_38() {
    AMFWTableau tb;
    tb.name = "amfw-38";
    tb.s = 4;
    // Derived from the 3/8 Runge-Kutta rule (alpha, b_RK) with a lower
    // triangular Gamma, diag(Gamma) = theta, chosen so that the method keeps
    // order three when the Jacobian is replaced by an arbitrary W matrix.
    // K-form coefficients: A = theta*alpha*Gamma^-1, L = I - theta*Gamma^-1,
    // b = theta*Gamma^-T*b_RK.
    tb.A = {0.0,       0.0, 0.0, 0.0,  //
            1.0 / 3.0, 0.0, 0.0, 0.0,  //
            1.0,       1.0, 0.0, 0.0,  //
            4.0 / 3.0, 0.0, 1.0, 0.0};
    tb.L = {0.0,        0.0,  0.0,  0.0,  //
            -4.0 / 3.0, 0.0,  0.0,  0.0,  //
            -5.0 / 3.0, -1.0, 0.0,  0.0,  //
            -3.0,       -3.0, -6.0, 0.0};
    tb.b = {13.0 / 8.0, 9.0 / 8.0, 9.0 / 8.0, 1.0 / 8.0};
    tb.theta = 0.5;
    derive_coefficients(tb);
    return tb;
}

AMFWTableau find_tableau(const std::string& name) {
    if (name == "amfw-hv") return amfw_hv();
    if (name == "amfw-38") return amfw_38();
    throw std::invalid_argument("unknown method: " + name);
}

std::vector<std::string> tableau_names() { return {"amfw-hv", "amfw-38"}; }

PdeOps::PdeOps(const SplitSystem& sys, double theta) : sys_(&sys), theta_(theta) {
    has_reaction_ = static_cast<bool>(sys.problem().r);
}

int PdeOps::num_splits() const { return sys_->dim() + 1; }

void PdeOps::begin_step(double t, double dt, const GridField& y) {
    const bool reuse = solvers_built_ && dt == dt_ && sys_->problem().coeffs_time_independent;
    dt_ = dt;
    if (!reuse) {
        solvers_.clear();
        solvers_.reserve(static_cast<std::size_t>(sys_->dim()));
        for (int axis = 0; axis < sys_->dim(); ++axis)
            solvers_.emplace_back(sys_->grid(), sys_->jacobian(axis, t), theta_ * dt);
        solvers_built_ = true;
    }
    if (has_reaction_) rdiag_ = sys_->reaction_jacobian(t, y);
    fdot_.clear();
    fdot_.reserve(static_cast<std::size_t>(num_splits()));
    for (int m = 0; m < num_splits(); ++m) fdot_.push_back(sys_->time_derivative(m, t, y));
}

GridField PdeOps::rhs(double t, const GridField& y) const { return sys_->eval_total(t, y); }

void PdeOps::add_fdot(GridField& k, int m, double coef) const {
    if (coef != 0.0) amfw::axpy(k, coef, fdot_[static_cast<std::size_t>(m)]);
}

void PdeOps::solve(int m, GridField& k) const {
    if (m == 0) {
        if (!has_reaction_) return;
        const double c = theta_ * dt_;
        for (std::int64_t i = 0; i < k.size(); ++i) {
            const double den = 1.0 - c * rdiag_[i];
            if (std::fabs(den) < 1e-300)
                throw SingularMatrixError(static_cast<int>(i));
            k[i] /= den;
        }
        return;
    }
    solvers_[static_cast<std::size_t>(m - 1)].solve_inplace(k);
}

void PdeOps::finish_step(double t, double dt, GridField& y) const {
    if (sys_->mode() == SplitMode::Extended)
        project_boundary(y, sys_->problem().beta, t + dt);
}

std::vector<double> rosenbrock_step(const AMFWTableau& tb, double t, double dt,
                                    const std::vector<double>& y, const std::vector<double>& W,
                                    const std::vector<double>& fdot, const DenseRhsFn& F) {
    const int n = static_cast<int>(y.size());
    if (n > 4096) throw std::invalid_argument("dense reference stepper capped at n = 4096");
    if (W.size() != y.size() * y.size()) throw std::invalid_argument("W dimension mismatch");
    std::vector<double> M(W.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            M[static_cast<std::size_t>(i * n + j)] =
                (i == j ? 1.0 : 0.0) - tb.theta * dt * W[static_cast<std::size_t>(i * n + j)];
    DenseLU lu(M, n);

    std::vector<std::vector<double>> K;
    K.reserve(static_cast<std::size_t>(tb.s));
    for (int i = 0; i < tb.s; ++i) {
        std::vector<double> Y = y;
        for (int j = 0; j < i; ++j)
            for (int e = 0; e < n; ++e)
                Y[static_cast<std::size_t>(e)] +=
                    tb.a(i, j) * K[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)];
        std::vector<double> Ki = F(t + tb.c[static_cast<std::size_t>(i)] * dt, Y);
        const double fcoef = tb.theta * tb.rho[static_cast<std::size_t>(i)] * dt * dt;
        for (int e = 0; e < n; ++e) {
            Ki[static_cast<std::size_t>(e)] *= dt;
            if (!fdot.empty()) Ki[static_cast<std::size_t>(e)] += fcoef * fdot[static_cast<std::size_t>(e)];
            for (int j = 0; j < i; ++j)
                Ki[static_cast<std::size_t>(e)] +=
                    tb.l(i, j) * K[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)];
        }
        lu.solve(Ki);
        K.push_back(std::move(Ki));
    }
    std::vector<double> out = y;
    for (int i = 0; i < tb.s; ++i)
        for (int e = 0; e < n; ++e)
            out[static_cast<std::size_t>(e)] +=
                tb.b[static_cast<std::size_t>(i)] * K[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)];
    return out;
}

BoundaryCorrection parse_correction(const std::string& name) {
    if (name == "none") return BoundaryCorrection::None;
    if (name == "interpolant") return BoundaryCorrection::Interpolant;
    if (name == "extension") return BoundaryCorrection::Extension;
    throw std::invalid_argument("unknown correction mode: " + name);
}

std::string correction_name(BoundaryCorrection c) {
    switch (c) {
        case BoundaryCorrection::None: return "none";
        case BoundaryCorrection::Interpolant: return "interpolant";
        case BoundaryCorrection::Extension: return "extension";
    }
    return "?";
}

SplitMode split_mode(BoundaryCorrection c) {
    switch (c) {
        case BoundaryCorrection::None: return SplitMode::Plain;
        case BoundaryCorrection::Interpolant: return SplitMode::Interpolant;
        case BoundaryCorrection::Extension: return SplitMode::Extended;
    }
    return SplitMode::Plain;
}

GridField integrate(const PDEProblem& p, const Grid& g, const AMFWTableau& tb,
                    BoundaryCorrection corr, double dt, double t_end) {
    const double steps_d = t_end / dt;
    const long nsteps = std::lround(steps_d);
    if (nsteps < 1 ||
        std::fabs(static_cast<double>(nsteps) * dt - t_end) > 1e-12 * std::max(1.0, t_end))
        throw std::invalid_argument("t_end is not an integral number of steps");

    const SplitMode mode = split_mode(corr);
    const PDEProblem work = corr == BoundaryCorrection::Interpolant ? homogenize(p) : p;
    SplitSystem sys(work, g, mode);
    GridField V(g);
    for_each_point(g, [&](std::int64_t flat, const MultiIndex&, const Coord& x) {
        V[flat] = work.u0(x, 0.0);
    });
    if (mode == SplitMode::Extended) project_boundary(V, work.beta, 0.0);

    PdeOps ops(sys, tb.theta);
    for (long k = 0; k < nsteps; ++k) {
        const double t = static_cast<double>(k) * dt;
        try {
            V = amfw_step(ops, tb, t, dt, V);
        } catch (const std::exception& e) {
            throw std::runtime_error("step " + std::to_string(k) + " failed: " + e.what());
        }
    }
    if (corr == BoundaryCorrection::Interpolant) {
        const Interpolant phi = dirichlet_interpolant(p.dim, p.beta);
        for_each_point(g, [&](std::int64_t flat, const MultiIndex&, const Coord& x) {
            V[flat] += phi(x, t_end);
        });
    }
    return V;
}

}  // namespace amfw
