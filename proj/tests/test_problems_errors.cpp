#include <cmath>
#include <cstdint>

#include "amfw/errors.hpp"
#include "amfw/grid.hpp"
#include "amfw/problems.hpp"
#include "doctest.h"

using namespace amfw;

TEST_CASE("weighted l2 norm is the interior root mean square") {
    Grid g({3}, false);
    GridField v(g);
    v[0] = 3.0;
    v[1] = 0.0;
    v[2] = 4.0;
    CHECK(weighted_l2_norm(v) == doctest::Approx(std::sqrt(25.0 / 3.0)));

    Grid g2({4, 7}, false);
    GridField ones(g2);
    for (std::int64_t i = 0; i < ones.size(); ++i) ones[i] = 1.0;
    CHECK(weighted_l2_norm(ones) == doctest::Approx(1.0));
    CHECK(max_norm(ones) == doctest::Approx(1.0));
}

TEST_CASE("norms ignore the boundary points of closed grids") {
    Grid g({3, 3}, true);
    GridField v(g);
    for_each_point(g, [&](std::int64_t flat, const MultiIndex& m, const Coord&) {
        v[flat] = g.classify(m).interior() ? 2.0 : 99.0;
    });
    CHECK(weighted_l2_norm(v) == doctest::Approx(2.0));
    CHECK(max_norm(v) == doctest::Approx(2.0));
}

TEST_CASE("global error vanishes on the exact solution") {
    PDEProblem p = make_problem2();
    Grid g({9, 9}, false);
    GridField v(g);
    const double t = 0.8;
    for_each_point(g, [&](std::int64_t flat, const MultiIndex&, const Coord& x) {
        v[flat] = p.exact(x, t);
    });
    auto [ge2, gei] = global_error(p, v, t);
    CHECK(ge2 == doctest::Approx(0.0));
    CHECK(gei == doctest::Approx(0.0));
}

TEST_CASE("order estimation") {
    CHECK(order_from_errors(8.0, 1.0) == doctest::Approx(3.0));
    CHECK(order_from_errors(1e-3, 1.25e-4) == doctest::Approx(3.0));
}

TEST_CASE("time step adjustment hits the end point exactly") {
    auto [dt1, n1] = adjust_dt(1.0, 0.3);
    CHECK(dt1 == doctest::Approx(0.25));
    CHECK(n1 == 4);
    auto [dt2, n2] = adjust_dt(1.0, 0.125);
    CHECK(dt2 == doctest::Approx(0.125));
    CHECK(n2 == 8);
    auto [dt3, n3] = adjust_dt(0.5, 0.5);
    CHECK(dt3 == doctest::Approx(0.5));
    CHECK(n3 == 1);
}

TEST_CASE("problem catalog satisfies its own equations") {
    CHECK(pde_residual(make_problem1(0.0), 50) < 1e-8);
    CHECK(pde_residual(make_problem1(1.0), 50) < 1e-8);
    CHECK(pde_residual(make_problem2(), 50) < 1e-8);
    CHECK(pde_residual(make_problem3(), 50) < 1e-8);
    CHECK_THROWS(make_problem("problem9", 0.0));
}

TEST_CASE("analytic data derivatives match finite differences") {
    std::uint64_t s = 303;
    auto next = [&s]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return 0.1 + 0.8 * (static_cast<double>(s >> 11) * 0x1.0p-53);
    };
    const double e = 1e-4;
    for (const PDEProblem& p :
         {make_problem1(1.0), make_problem2(), make_problem3()}) {
        REQUIRE(p.beta_t);
        REQUIRE(p.beta_tt);
        REQUIRE(p.beta_xx);
        REQUIRE(p.beta_txx);
        for (int trial = 0; trial < 25; ++trial) {
            Coord x{};
            for (int l = 0; l < p.dim; ++l) x[l] = next();
            double t = next();
            auto close = [](double got, double want, double tol) {
                return std::fabs(got - want) <= tol * (1.0 + std::fabs(want));
            };
            double bt = (p.beta(x, t + e) - p.beta(x, t - e)) / (2.0 * e);
            CHECK(close(p.beta_t(x, t), bt, 1e-6));
            double btt = (p.beta_t(x, t + e) - p.beta_t(x, t - e)) / (2.0 * e);
            CHECK(close(p.beta_tt(x, t), btt, 1e-6));
            for (int l = 0; l < p.dim; ++l) {
                Coord xp = x, xm = x;
                xp[l] += e;
                xm[l] -= e;
                double bxx =
                    (p.beta(xp, t) - 2.0 * p.beta(x, t) + p.beta(xm, t)) / (e * e);
                CHECK(close(p.beta_xx(x, t, l), bxx, 1e-4));
                double btxx =
                    (p.beta_t(xp, t) - 2.0 * p.beta_t(x, t) + p.beta_t(xm, t)) / (e * e);
                CHECK(close(p.beta_txx(x, t, l), btxx, 1e-4));
            }
        }
    }
}

TEST_CASE("reaction derivatives match finite differences") {
    const double e = 1e-6;
    for (const PDEProblem& p : {make_problem2(), make_problem3()}) {
        for (double u : {0.1, 0.4, 0.9}) {
            Coord x{};
            double fd = (p.r(x, 0.5, u + e) - p.r(x, 0.5, u - e)) / (2.0 * e);
            CHECK(p.r_u(x, 0.5, u) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}
