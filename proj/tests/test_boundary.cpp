#include <cmath>
#include <cstdint>

#include "amfw/boundary.hpp"
#include "amfw/grid.hpp"
#include "amfw/problems.hpp"
#include "doctest.h"

using namespace amfw;

namespace {

double urand(std::uint64_t& s) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return static_cast<double>(s >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("edge polynomials: Dirichlet-Dirichlet") {
    EdgePolynomials e = build_edge_polynomials({1, 0}, {1, 0});
    CHECK(e.P.degree() == 1);
    CHECK(e.Q.degree() == 1);
    for (double xi : {0.0, 0.3, 0.7, 1.0}) {
        CHECK(e.P(xi) == doctest::Approx(1.0 - xi));
        CHECK(e.Q(xi) == doctest::Approx(xi));
    }
}

TEST_CASE("edge polynomials: Neumann-Neumann") {
    EdgePolynomials e = build_edge_polynomials({0, 1}, {0, 1});
    // P'(0) = 1, P'(1) = 0, normalized with P(1) = 0: P = -(xi-1)^2/2
    for (double xi : {0.0, 0.25, 0.6, 1.0}) {
        CHECK(e.P(xi) == doctest::Approx(-0.5 * (xi - 1.0) * (xi - 1.0)));
        CHECK(e.Q(xi) == doctest::Approx(0.5 * xi * xi));
    }
    CHECK(e.P.deriv(0.0) == doctest::Approx(1.0));
    CHECK(e.P.deriv(1.0) == doctest::Approx(0.0));
    CHECK(e.Q.deriv(0.0) == doctest::Approx(0.0));
    CHECK(e.Q.deriv(1.0) == doctest::Approx(1.0));
}

TEST_CASE("edge polynomials: mixed Dirichlet-Neumann") {
    EdgePolynomials e = build_edge_polynomials({1, 0}, {0, 1});
    // P(0) = 1, P'(1) = 0 -> P = 1;  Q(0) = 0, Q'(1) = 1 -> Q = xi
    for (double xi : {0.0, 0.4, 1.0}) {
        CHECK(e.P(xi) == doctest::Approx(1.0));
        CHECK(e.Q(xi) == doctest::Approx(xi));
    }
}

TEST_CASE("edge polynomials: Robin faces satisfy their operators") {
    FaceBC b0{1.0, -0.5}, b1{2.0, 1.0};
    EdgePolynomials e = build_edge_polynomials(b0, b1);
    CHECK(b0.p * e.P(0.0) + b0.q * e.P.deriv(0.0) == doctest::Approx(1.0));
    CHECK(b1.p * e.P(1.0) + b1.q * e.P.deriv(1.0) == doctest::Approx(0.0));
    CHECK(b0.p * e.Q(0.0) + b0.q * e.Q.deriv(0.0) == doctest::Approx(0.0));
    CHECK(b1.p * e.Q(1.0) + b1.q * e.Q.deriv(1.0) == doctest::Approx(1.0));
}

TEST_CASE("Dirichlet interpolant reproduces the face data") {
    // polynomial data: one-sided derivative sampling is exact through degree 4
    auto data = [](const Coord& x, double t) {
        return (1.0 + t) * (x[0] * x[0] * x[1] + 2.0 * x[1] * x[2] + x[2] * x[2] * x[0]) + x[1] -
               3.0 * t;
    };
    for (int dim : {2, 3}) {
        Interpolant phi = dirichlet_interpolant(dim, data);
        std::uint64_t s = 17;
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < 2; ++k)
                for (int trial = 0; trial < 25; ++trial) {
                    Coord x{};
                    for (int l = 0; l < dim; ++l) x[l] = urand(s);
                    x[j] = static_cast<double>(k);
                    double t = urand(s);
                    CHECK(std::fabs(phi.boundary_value(j, k, x, t) - data(x, t)) < 1e-11);
                    CHECK(std::fabs(phi(x, t) - data(x, t)) < 1e-11);
                }
    }
}

TEST_CASE("mixed-condition interpolant satisfies compatible face data") {
    // 2D, Dirichlet in x, Neumann in y, data from a master function
    auto u = [](const Coord& x, double t) {
        return x[0] * x[0] * x[1] + x[1] * x[1] - 2.0 * x[0] + t * x[0] * x[1];
    };
    auto uy = [](const Coord& x, double t) { return x[0] * x[0] + 2.0 * x[1] + t * x[0]; };
    FaceBCArray bc{};
    bc[0][0] = {1.0, 0.0};
    bc[0][1] = {1.0, 0.0};
    bc[1][0] = {0.0, 1.0};
    bc[1][1] = {0.0, 1.0};
    FaceDataArray data{};
    data[0][0] = u;
    data[0][1] = u;
    data[1][0] = uy;
    data[1][1] = uy;
    Interpolant phi(2, bc, data);
    std::uint64_t s = 71;
    for (int trial = 0; trial < 40; ++trial) {
        double t = urand(s);
        Coord x{};
        x[0] = urand(s);
        x[1] = 0.0;
        CHECK(std::fabs(phi.boundary_value(1, 0, x, t) - uy(x, t)) < 1e-10);
        x[1] = 1.0;
        CHECK(std::fabs(phi.boundary_value(1, 1, x, t) - uy(x, t)) < 1e-10);
        x[1] = urand(s);
        x[0] = 0.0;
        CHECK(std::fabs(phi.boundary_value(0, 0, x, t) - u(x, t)) < 1e-10);
        x[0] = 1.0;
        CHECK(std::fabs(phi.boundary_value(0, 1, x, t) - u(x, t)) < 1e-10);
    }
}

TEST_CASE("2D Dirichlet interpolant equals the bilinear blending closed form") {
    auto g2 = [](const Coord& x, double t) {
        return std::exp(0.3 * x[0]) * std::sin(x[1] + 0.2) + t * x[0] * x[1];
    };
    Interpolant phi = dirichlet_interpolant(2, g2);
    auto at = [&](double x0, double x1, double t) {
        Coord c{};
        c[0] = x0;
        c[1] = x1;
        return g2(c, t);
    };
    std::uint64_t s = 29;
    for (int trial = 0; trial < 50; ++trial) {
        double x = urand(s), y = urand(s), t = urand(s);
        double want = (1.0 - x) * at(0, y, t) + x * at(1, y, t) +
                      (1.0 - y) * (at(x, 0, t) - (1.0 - x) * at(0, 0, t) - x * at(1, 0, t)) +
                      y * (at(x, 1, t) - (1.0 - x) * at(0, 1, t) - x * at(1, 1, t));
        Coord c{};
        c[0] = x;
        c[1] = y;
        CHECK(std::fabs(phi(c, t) - want) < 1e-12);
    }
}

TEST_CASE("homogenized problem has zero boundary data") {
    PDEProblem p = make_problem1(1.0);
    PDEProblem w = homogenize(p);
    std::uint64_t s = 13;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 2; ++k)
            for (int trial = 0; trial < 10; ++trial) {
                Coord x{};
                for (int l = 0; l < 3; ++l) x[l] = urand(s);
                x[j] = static_cast<double>(k);
                double t = urand(s);
                CHECK(std::fabs(w.beta(x, t)) < 1e-11);
            }
    // transformed exact solution differs from the original by the interpolant
    Interpolant phi = dirichlet_interpolant(3, p.beta);
    for (int trial = 0; trial < 20; ++trial) {
        Coord x{};
        for (int l = 0; l < 3; ++l) x[l] = urand(s);
        double t = urand(s);
        CHECK(w.exact(x, t) + phi(x, t) == doctest::Approx(p.exact(x, t)).epsilon(1e-10));
    }
}

TEST_CASE("boundary projection overwrites only the boundary points") {
    Grid g({4, 4}, true);
    GridField V(g);
    for (std::int64_t i = 0; i < V.size(); ++i) V[i] = -7.0;
    auto data = [](const Coord& x, double t) { return x[0] + 10.0 * x[1] + 100.0 * t; };
    project_boundary(V, data, 0.25);
    for_each_point(g, [&](std::int64_t flat, const MultiIndex& m, const Coord& x) {
        if (g.classify(m).interior())
            CHECK(V[flat] == doctest::Approx(-7.0));
        else
            CHECK(V[flat] == doctest::Approx(data(x, 0.25)));
    });
}
