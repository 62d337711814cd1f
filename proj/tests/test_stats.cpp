#include <doctest.h>

#include "dfactor/stats.hpp"

using namespace dfactor;

TEST_CASE("chi-square survival function reference values") {
    // classical table entries
    CHECK(chi_square_sf(3.841, 1) == doctest::Approx(0.05).epsilon(0.01));
    CHECK(chi_square_sf(6.635, 1) == doctest::Approx(0.01).epsilon(0.01));
    CHECK(chi_square_sf(20.090, 8) == doctest::Approx(0.01).epsilon(0.01));
    CHECK(chi_square_sf(249.4456, 200) == doctest::Approx(0.01).epsilon(0.02));
    CHECK(chi_square_sf(156.4319, 200) == doctest::Approx(0.99).epsilon(0.02));
    CHECK(chi_square_sf(0.0, 5) == doctest::Approx(1.0));
}

TEST_CASE("uniform gof on exact counts") {
    std::vector<uint64_t> flat(10, 1000);
    GofResult r = uniform_gof(flat);
    CHECK(r.chi_square == doctest::Approx(0.0));
    CHECK(r.p_value == doctest::Approx(1.0));
    CHECK(r.tv_distance == doctest::Approx(0.0));
    CHECK(r.expected_count_ok);

    // a sampler stuck on one of two outcomes has TV 1/2
    std::vector<uint64_t> stuck = {1000, 0};
    GofResult s = uniform_gof(stuck);
    CHECK(s.tv_distance == doctest::Approx(0.5));
    CHECK(s.p_value < 1e-6);
}
