#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "amfw/banded.hpp"
#include "amfw/errors.hpp"
#include "amfw/integrator.hpp"
#include "amfw/stability.hpp"
#include "doctest.h"

using namespace amfw;

namespace {

double urand(std::uint64_t& s) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return static_cast<double>(s >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

// Dense-vector ops with a single implicit split: algebraically identical to
// the one-W-matrix linearly implicit reference step.
struct DenseOps {
    using State = std::vector<double>;
    DenseRhsFn F;
    std::vector<double> W, fdot;
    int n;
    double theta;
    double dt = 0.0;
    std::unique_ptr<DenseLU> lu;

    int num_splits() const { return 1; }
    void begin_step(double, double dt0, const State&) {
        dt = dt0;
        std::vector<double> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m[static_cast<std::size_t>(i * n + j)] =
                    (i == j ? 1.0 : 0.0) - theta * dt * W[static_cast<std::size_t>(i * n + j)];
        lu = std::make_unique<DenseLU>(m, n);
    }
    State rhs(double t, const State& y) const { return F(t, y); }
    void axpy(State& y, double a, const State& x) const {
        for (int i = 0; i < n; ++i)
            y[static_cast<std::size_t>(i)] += a * x[static_cast<std::size_t>(i)];
    }
    void scale(State& y, double a) const {
        for (double& v : y) v *= a;
    }
    void add_fdot(State& k, int, double coef) const {
        for (int i = 0; i < n; ++i)
            k[static_cast<std::size_t>(i)] += coef * fdot[static_cast<std::size_t>(i)];
    }
    void solve(int, State& k) const { lu->solve(k); }
    void finish_step(double, double, State&) const {}
};

}  // namespace

TEST_CASE("two-stage tableau coefficients") {
    AMFWTableau tb = amfw_hv();
    CHECK(tb.s == 2);
    CHECK(tb.a(1, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(tb.l(1, 0) == doctest::Approx(-4.0 / 3.0));
    CHECK(tb.b[0] == doctest::Approx(1.25));
    CHECK(tb.b[1] == doctest::Approx(0.75));
    CHECK(tb.theta == doctest::Approx((3.0 + std::sqrt(3.0)) / 6.0));
    CHECK(tb.rho[0] == doctest::Approx(1.0));
    CHECK(tb.rho[1] == doctest::Approx(-1.0 / 3.0));
    CHECK(tb.c[0] == doctest::Approx(0.0));
    CHECK(tb.c[1] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("four-stage tableau coefficients") {
    AMFWTableau tb = amfw_38();
    CHECK(tb.s == 4);
    CHECK(tb.theta == doctest::Approx(0.5));
    const double A[4][4] = {{0, 0, 0, 0},
                            {1.0 / 3.0, 0, 0, 0},
                            {1.0, 1.0, 0, 0},
                            {4.0 / 3.0, 0.0, 1.0, 0}};
    const double L[4][4] = {{0, 0, 0, 0},
                            {-4.0 / 3.0, 0, 0, 0},
                            {-5.0 / 3.0, -1.0, 0, 0},
                            {-3.0, -3.0, -6.0, 0}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            CHECK(tb.a(i, j) == doctest::Approx(A[i][j]));
            CHECK(tb.l(i, j) == doctest::Approx(L[i][j]));
        }
    CHECK(tb.b[0] == doctest::Approx(13.0 / 8.0));
    CHECK(tb.b[1] == doctest::Approx(9.0 / 8.0));
    CHECK(tb.b[2] == doctest::Approx(9.0 / 8.0));
    CHECK(tb.b[3] == doctest::Approx(1.0 / 8.0));
    const double rho[4] = {1.0, -1.0 / 3.0, -1.0 / 3.0, 1.0};
    const double c[4] = {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
    for (int i = 0; i < 4; ++i) {
        CHECK(tb.rho[static_cast<std::size_t>(i)] == doctest::Approx(rho[i]));
        CHECK(tb.c[static_cast<std::size_t>(i)] == doctest::Approx(c[i]));
    }
}

TEST_CASE("consistency: b dot rho equals one") {
    for (const std::string& name : tableau_names()) {
        AMFWTableau tb = find_tableau(name);
        double s = 0.0;
        for (int i = 0; i < tb.s; ++i)
            s += tb.b[static_cast<std::size_t>(i)] * tb.rho[static_cast<std::size_t>(i)];
        CHECK(s == doctest::Approx(1.0));
    }
    CHECK_THROWS(find_tableau("no-such-method"));
}

TEST_CASE("split Dahlquist step reproduces the stability function") {
    std::uint64_t s = 404;
    for (const std::string& name : tableau_names()) {
        AMFWTableau tb = find_tableau(name);
        for (int d = 1; d <= 3; ++d)
            for (int trial = 0; trial < 30; ++trial) {
                std::vector<std::complex<double>> z;
                for (int j = 0; j < d; ++j)
                    z.emplace_back(3.0 * urand(s), 3.0 * urand(s));
                DahlquistOps ops(z, tb.theta);
                std::complex<double> stepped = amfw_step(ops, tb, 0.0, 1.0, {1.0, 0.0});
                std::complex<double> want = eval_R(tb, z);
                CHECK(std::abs(stepped - want) <= 1e-13 * std::max(1.0, std::abs(want)));
            }
    }
}

TEST_CASE("single-split step equals the dense linearly implicit reference") {
    const int n = 5;
    std::uint64_t s = 505;
    for (const std::string& name : tableau_names()) {
        AMFWTableau tb = find_tableau(name);
        DenseOps ops;
        ops.n = n;
        ops.theta = tb.theta;
        ops.W.resize(n * n);
        ops.fdot.resize(n);
        for (double& v : ops.W) v = urand(s);
        for (double& v : ops.fdot) v = urand(s);
        ops.F = [](double t, const std::vector<double>& y) {
            std::vector<double> f(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) {
                double prev = y[(i + y.size() - 1) % y.size()];
                f[i] = std::sin(y[i]) + 0.3 * prev * prev + 0.1 * t;
            }
            return f;
        };
        std::vector<double> y0(n);
        for (double& v : y0) v = urand(s);
        const double t = 0.2, dt = 0.07;
        std::vector<double> got = amfw_step(ops, tb, t, dt, y0);
        std::vector<double> want = rosenbrock_step(tb, t, dt, y0, ops.W, ops.fdot, ops.F);
        for (int i = 0; i < n; ++i)
            CHECK(std::fabs(got[static_cast<std::size_t>(i)] - want[static_cast<std::size_t>(i)]) <=
                  1e-12);
    }
}

TEST_CASE("scalar accuracy orders of the stability functions") {
    auto scalar_order = [](const AMFWTableau& tb) {
        double z1 = 0.05;
        std::complex<double> r1 = eval_R(tb, {std::complex<double>(-z1, 0.0)});
        std::complex<double> r2 = eval_R(tb, {std::complex<double>(-z1 / 2.0, 0.0)});
        double e1 = std::abs(r1 - std::exp(std::complex<double>(-z1, 0.0)));
        double e2 = std::abs(r2 - std::exp(std::complex<double>(-z1 / 2.0, 0.0)));
        return std::log2(e1 / e2) - 1.0;  // observed order
    };
    CHECK(scalar_order(amfw_hv()) == doctest::Approx(3.0).epsilon(0.05));
    CHECK(scalar_order(amfw_38()) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("multi-step convergence on the split linear test equation") {
    // y' = (lambda_1 + lambda_2) y integrated to t = 1; the approximate
    // factorization keeps order three for both methods
    const std::complex<double> l1(-1.0, 0.0), l2(-2.0, 0.5);
    const std::complex<double> exact = std::exp(l1 + l2);
    for (const std::string& name : tableau_names()) {
        AMFWTableau tb = find_tableau(name);
        auto err = [&](int nsteps) {
            DahlquistOps ops({l1, l2}, tb.theta);
            std::complex<double> y(1.0, 0.0);
            const double dt = 1.0 / nsteps;
            for (int k = 0; k < nsteps; ++k) y = amfw_step(ops, tb, k * dt, dt, y);
            return std::abs(y - exact);
        };
        double p = order_from_errors(err(32), err(64));
        CHECK(p >= 2.85);
        CHECK(p <= 4.4);
    }
}

TEST_CASE("correction names round trip") {
    for (BoundaryCorrection c :
         {BoundaryCorrection::None, BoundaryCorrection::Interpolant, BoundaryCorrection::Extension})
        CHECK(parse_correction(correction_name(c)) == c);
    CHECK_THROWS(parse_correction("bogus"));
    CHECK(split_mode(BoundaryCorrection::None) == SplitMode::Plain);
    CHECK(split_mode(BoundaryCorrection::Interpolant) == SplitMode::Interpolant);
    CHECK(split_mode(BoundaryCorrection::Extension) == SplitMode::Extended);
}

TEST_CASE("extension integration ends with exact boundary values") {
    PDEProblem p = make_problem1(1.0);
    Grid g({7, 7, 7}, true);
    AMFWTableau tb = amfw_hv();
    GridField V = integrate(p, g, tb, BoundaryCorrection::Extension, 0.125, 1.0);
    auto [ge2, gei] = global_error(p, V, 1.0);
    CHECK(ge2 < 0.12);
    CHECK(gei < 0.25);
    for_each_point(g, [&](std::int64_t flat, const MultiIndex& m, const Coord& x) {
        if (!g.classify(m).interior())
            CHECK(V[flat] == doctest::Approx(p.beta(x, 1.0)).epsilon(1e-12));
    });
}

TEST_CASE("interpolant integration removes the order reduction error level") {
    PDEProblem p = make_problem1(1.0);
    Grid g({7, 7, 7}, false);
    AMFWTableau tb = amfw_hv();
    GridField V = integrate(p, g, tb, BoundaryCorrection::Interpolant, 0.125, 1.0);
    auto [ge2, gei] = global_error(p, V, 1.0);
    CHECK(ge2 < 0.12);
    CHECK(gei < 0.25);
}
