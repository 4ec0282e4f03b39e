#include "amfw/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace amfw {

namespace {

double prod_x1mx(const Coord& x, int dim, int skip) {
    double p = 1.0;
    for (int j = 0; j < dim; ++j)
        if (j != skip) p *= x[j] * (1.0 - x[j]);
    return p;
}

}  // namespace

PDEProblem make_problem1(double C) {
    PDEProblem p;
    p.name = "problem1";
    p.dim = 3;
    p.t_end = 1.0;
    for (int j = 0; j < 3; ++j) {
        p.a[j] = Coefficient(1.0);
        p.b[j] = Coefficient(0.0);
    }
    auto beta = [C](const Coord& x, double t) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j) {
            double v = x[j] + 1.0 / (j + 3);  // offsets 1/3, 1/4, 1/5
            s += v * v;
        }
        return std::exp(t) * (64.0 * prod_x1mx(x, 3, -1) + C * s);
    };
    p.beta = beta;
    p.beta_t = beta;   // data proportional to e^t
    p.beta_tt = beta;
    p.exact = beta;
    p.u0 = [beta](const Coord& x, double) { return beta(x, 0.0); };
    // source r = beta_t - sum_j d2beta/dx_j^2, evaluated in closed form
    p.r = [C, beta](const Coord& x, double t, double) {
        double lap = 0.0;
        for (int j = 0; j < 3; ++j) lap += -2.0 * 64.0 * prod_x1mx(x, 3, j);
        lap += 6.0 * C;
        return beta(x, t) - std::exp(t) * lap;
    };
    p.r_u = [](const Coord&, double, double) { return 0.0; };  // source is state-independent
    p.r_t = p.r;  // source also proportional to e^t
    auto beta_xx = [C](const Coord& x, double t, int axis) {
        return std::exp(t) * (-2.0 * 64.0 * prod_x1mx(x, 3, axis) + 2.0 * C);
    };
    p.beta_xx = beta_xx;
    p.beta_txx = beta_xx;  // data proportional to e^t
    return p;
}

namespace {

PDEProblem make_logistic_front(int dim) {
    PDEProblem p;
    p.name = dim == 2 ? "problem2" : "problem3";
    p.dim = dim;
    p.t_end = 1.0;
    for (int j = 0; j < dim; ++j) {
        p.a[j] = Coefficient(1.0);
        p.b[j] = Coefficient(0.0);
    }
    auto g = [dim](const Coord& x, double t) {
        double s = -t;
        for (int j = 0; j < dim; ++j) s += x[j];
        return 1.0 / (1.0 + std::exp(s));
    };
    p.beta = g;
    p.beta_t = [g](const Coord& x, double t) {
        double u = g(x, t);
        return u * (1.0 - u);
    };
    p.beta_tt = [g](const Coord& x, double t) {
        double u = g(x, t);
        return (1.0 - 2.0 * u) * u * (1.0 - u);
    };
    p.exact = g;
    p.u0 = [g](const Coord& x, double) { return g(x, 0.0); };
    if (dim == 2) {
        p.r = [](const Coord&, double, double u) { return u * (1.0 - u) * (4.0 * u - 1.0); };
        p.r_u = [](const Coord&, double, double u) { return -12.0 * u * u + 10.0 * u - 1.0; };
    } else {
        p.r = [](const Coord&, double, double u) { return 2.0 * u * (1.0 - u) * (3.0 * u - 1.0); };
        p.r_u = [](const Coord&, double, double u) { return -18.0 * u * u + 16.0 * u - 2.0; };
    }
    p.r_t = [](const Coord&, double, double) { return 0.0; };
    // beta depends on x, t only through s = sum x_j - t, so space and time
    // derivatives are s-derivatives of the logistic function up to sign.
    p.beta_xx = [g](const Coord& x, double t, int) {
        double u = g(x, t);
        return u * (1.0 - u) * (1.0 - 2.0 * u);  // d^2/ds^2
    };
    p.beta_txx = [g](const Coord& x, double t, int) {
        double u = g(x, t);
        return u * (1.0 - u) * (1.0 - 6.0 * u + 6.0 * u * u);  // -d^3/ds^3
    };
    return p;
}

}  // namespace

PDEProblem make_problem2() { return make_logistic_front(2); }
PDEProblem make_problem3() { return make_logistic_front(3); }

PDEProblem make_problem(const std::string& id, double C) {
    if (id == "problem1") return make_problem1(C);
    if (id == "problem2") return make_problem2();
    if (id == "problem3") return make_problem3();
    throw std::invalid_argument("unknown problem id: " + id);
}

double pde_residual(const PDEProblem& p, int samples) {
    if (!p.exact) throw std::invalid_argument("pde_residual: problem has no exact solution");
    // 5-point central differences, exact through degree 4/5 terms
    auto d1 = [](auto&& f, double h) {
        return (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h);
    };
    auto d2 = [](auto&& f, double h) {
        return (-f(-2.0 * h) + 16.0 * f(-h) - 30.0 * f(0.0) + 16.0 * f(h) - f(2.0 * h)) /
               (12.0 * h * h);
    };
    const double h = 1.0 / 128.0;
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    };
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        Coord x{};
        for (int j = 0; j < p.dim; ++j) x[j] = 0.1 + 0.8 * next();
        double t = 0.1 + 0.8 * next();
        double u = p.exact(x, t);
        double ut = d1([&](double e) { return p.exact(x, t + e); }, h);
        double lap = 0.0;
        for (int j = 0; j < p.dim; ++j) {
            auto along = [&](double e) {
                Coord y = x;
                y[j] += e;
                return p.exact(y, t);
            };
            lap += p.a[j](x, t) * d2(along, h) + p.b[j](x, t) * d1(along, h);
        }
        double reac = p.r ? p.r(x, t, u) : 0.0;
        worst = std::max(worst, std::fabs(ut - lap - reac));
    }
    return worst;
}

}  // namespace amfw
