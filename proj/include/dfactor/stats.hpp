#pragma once

#include <cstdint>
#include <vector>

namespace dfactor {

// upper regularized incomplete gamma Q(a, x); survival function machinery
// for the chi-square tests
double gamma_q(double a, double x);

// P(X >= stat) for X ~ chi-square with df degrees of freedom
double chi_square_sf(double stat, double df);

struct GofResult {
    uint64_t samples = 0;
    size_t support = 0;
    double chi_square = 0.0;
    double p_value = 1.0;
    double tv_distance = 0.0;
    bool expected_count_ok = false;  // expected >= 5 per cell
};

// goodness of fit of observed counts against the uniform distribution on
// the full support (cells with zero observations included)
GofResult uniform_gof(const std::vector<uint64_t>& counts);

}  // namespace dfactor
