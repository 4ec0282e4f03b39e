#include <cmath>
#include <complex>
#include <vector>

#include "amfw/stability.hpp"
#include "doctest.h"

using namespace amfw;

TEST_CASE("R(0) = 1 and symmetry in the arguments") {
    for (const std::string& name : tableau_names()) {
        AMFWTableau tb = find_tableau(name);
        for (int d = 1; d <= 3; ++d) {
            std::vector<std::complex<double>> z(static_cast<std::size_t>(d), 0.0);
            CHECK(std::abs(eval_R(tb, z) - 1.0) < 1e-14);
        }
        std::complex<double> a(-0.7, 0.2), b(-2.3, -1.1);
        CHECK(std::abs(eval_R(tb, {a, b}) - eval_R(tb, {b, a})) < 1e-14);
    }
}

TEST_CASE("limits at minus infinity in one dimension") {
    const double big = -1e9;
    std::complex<double> r_hv = eval_R(amfw_hv(), {std::complex<double>(big, 0.0)});
    CHECK(r_hv.real() == doctest::Approx(1.0 - std::sqrt(3.0)).epsilon(1e-6));
    std::complex<double> r_38 = eval_R(amfw_38(), {std::complex<double>(big, 0.0)});
    CHECK(r_38.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("boundedness on the negative orthant") {
    for (const std::string& name : tableau_names()) {
        AMFWTableau tb = find_tableau(name);
        for (int d = 1; d <= 3; ++d) {
            StabilityReport rep = check_theorem1_condition(tb, d, 4000, 0.0, 99);
            CHECK(rep.samples == 4000);
            CHECK(rep.min_r_plus_1 >= -1e-12);        // R >= -1 everywhere sampled
            CHECK(rep.max_upper_violation <= 1e-12);  // R <= 1 at C = 0
            CHECK(rep.satisfied_fraction == doctest::Approx(1.0));
            CHECK(rep.c_limit >= 0.0);
        }
    }
}

TEST_CASE("sampled constants are reproducible and capped by c_limit") {
    AMFWTableau tb = amfw_hv();
    StabilityReport r1 = check_theorem1_condition(tb, 2, 1000, 0.1, 7);
    StabilityReport r2 = check_theorem1_condition(tb, 2, 1000, 0.1, 7);
    CHECK(r1.c_limit == r2.c_limit);
    CHECK(r1.min_r_plus_1 == r2.min_r_plus_1);
    // at a trial constant beyond the sampled limit the upper bound must break
    StabilityReport over = check_theorem1_condition(tb, 2, 1000, r1.c_limit * 1.5 + 1.0, 7);
    CHECK(over.max_upper_violation > 0.0);
    CHECK(over.satisfied_fraction < 1.0);
    CHECK(!over.worst.empty());
}

TEST_CASE("a broken tableau violates the lower bound") {
    AMFWTableau tb = amfw_hv();
    for (double& bi : tb.b) bi *= 2.0;
    StabilityReport rep = check_theorem1_condition(tb, 2, 4000, 0.0, 99);
    CHECK(rep.min_r_plus_1 < 0.0);
}
