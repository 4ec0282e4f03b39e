#include <vector>

#include "amfw/grid.hpp"
#include "doctest.h"

using namespace amfw;

TEST_CASE("interior grid basics") {
    Grid g({3, 4}, false);
    CHECK(g.dim() == 2);
    CHECK(g.n(0) == 3);
    CHECK(g.n(1) == 4);
    CHECK(g.extent(0) == 3);
    CHECK(g.extent(1) == 4);
    CHECK(g.num_points() == 12);
    CHECK(g.num_interior() == 12);
    CHECK(g.dx(0) == doctest::Approx(0.25));
    CHECK(g.dx(1) == doctest::Approx(0.2));
    CHECK(g.base_index(0) == 1);
}

TEST_CASE("closed grid extents and interior count") {
    Grid g({3, 4}, true);
    CHECK(g.extent(0) == 5);
    CHECK(g.extent(1) == 6);
    CHECK(g.num_points() == 30);
    CHECK(g.num_interior() == 12);
    CHECK(g.base_index(0) == 0);
}

TEST_CASE("flatten and unflatten round trip") {
    for (bool closed : {false, true}) {
        Grid g({3, 4, 5}, closed);
        for (std::int64_t f = 0; f < g.num_points(); ++f) {
            MultiIndex m = g.unflatten(f);
            CHECK(g.valid(m));
            CHECK(g.flatten(m) == f);
        }
    }
}

TEST_CASE("coords follow the lattice spacing") {
    Grid g({4, 4}, true);
    MultiIndex m;
    m[0] = 0;
    m[1] = 5;
    Coord x = g.coords(m);
    CHECK(x[0] == doctest::Approx(0.0));
    CHECK(x[1] == doctest::Approx(1.0));
    m[0] = 2;
    m[1] = 3;
    x = g.coords(m);
    CHECK(x[0] == doctest::Approx(0.4));
    CHECK(x[1] == doctest::Approx(0.6));
}

TEST_CASE("point classification on a closed grid") {
    Grid g({3, 3}, true);
    MultiIndex m;
    m[0] = 2;
    m[1] = 2;
    CHECK(g.classify(m).interior());
    m[0] = 0;
    PointClass pc = g.classify(m);
    CHECK(pc.on_face(0));
    CHECK(!pc.on_face(1));
    m[1] = 4;  // corner: saturated in both directions
    pc = g.classify(m);
    CHECK(pc.on_face(0));
    CHECK(pc.on_face(1));
    CHECK(!pc.interior());
}

TEST_CASE("lines partition the grid and honor strides") {
    for (bool closed : {false, true}) {
        Grid g({3, 4, 5}, closed);
        for (int axis = 0; axis < 3; ++axis) {
            auto lines = g.lines(axis);
            std::int64_t covered = 0;
            std::vector<char> seen(static_cast<std::size_t>(g.num_points()), 0);
            for (const Line& ln : lines) {
                CHECK(ln.length == g.extent(axis));
                for (int k = 0; k < ln.length; ++k) {
                    std::int64_t f = ln.base + k * ln.stride;
                    MultiIndex m = g.unflatten(f);
                    CHECK(m[axis] == g.base_index(axis) + k);
                    CHECK(!seen[static_cast<std::size_t>(f)]);
                    seen[static_cast<std::size_t>(f)] = 1;
                    ++covered;
                }
            }
            CHECK(covered == g.num_points());
        }
        // lines in the last direction are contiguous
        CHECK(g.lines(2)[0].stride == 1);
    }
}

TEST_CASE("for_each_point visits flat order with matching coords") {
    Grid g({3, 4}, true);
    std::int64_t expected = 0;
    for_each_point(g, [&](std::int64_t flat, const MultiIndex& m, const Coord& x) {
        CHECK(flat == expected++);
        CHECK(g.flatten(m) == flat);
        Coord ref = g.coords(m);
        for (int l = 0; l < g.dim(); ++l) CHECK(x[l] == doctest::Approx(ref[l]));
    });
    CHECK(expected == g.num_points());
}

TEST_CASE("field algebra") {
    Grid g({3}, false);
    GridField a(g), b(g);
    for (int i = 0; i < 3; ++i) {
        a[i] = i + 1.0;
        b[i] = 10.0 * (i + 1);
    }
    a += b;
    CHECK(a[2] == doctest::Approx(33.0));
    a *= 0.5;
    CHECK(a[0] == doctest::Approx(5.5));
    axpy(a, 2.0, b);
    CHECK(a[1] == doctest::Approx(11.0 + 40.0));
    a -= b;
    CHECK(a[0] == doctest::Approx(25.5 - 10.0 + 10.0 - 10.0));
}
