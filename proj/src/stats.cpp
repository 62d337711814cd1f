#include "dfactor/stats.hpp"

#include <cmath>
#include <limits>

namespace dfactor {

namespace {

// series expansion of the lower regularized incomplete gamma P(a,x)
double gamma_p_series(double a, double x) {
    double sum = 1.0 / a;
    double term = sum;
    for (int k = 1; k < 10000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a,x), valid for x > a+1
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) return std::numeric_limits<double>::quiet_NaN();
    if (x == 0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_sf(double stat, double df) {
    if (df <= 0) return 1.0;
    return gamma_q(df / 2.0, stat / 2.0);
}

GofResult uniform_gof(const std::vector<uint64_t>& counts) {
    GofResult r;
    r.support = counts.size();
    for (uint64_t c : counts) r.samples += c;
    if (r.support == 0 || r.samples == 0) return r;
    double expected = static_cast<double>(r.samples) / static_cast<double>(r.support);
    r.expected_count_ok = expected >= 5.0;
    double chi = 0.0, tv = 0.0;
    for (uint64_t c : counts) {
        double diff = static_cast<double>(c) - expected;
        chi += diff * diff / expected;
        tv += std::fabs(diff);
    }
    r.chi_square = chi;
    r.tv_distance = tv / (2.0 * static_cast<double>(r.samples));
    r.p_value = chi_square_sf(chi, static_cast<double>(r.support - 1));
    return r;
}

}  // namespace dfactor
