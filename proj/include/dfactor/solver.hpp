#pragma once

#include <string>
#include <vector>

#include "dfactor/bounds.hpp"

namespace dfactor {

// Solved per-stratum type probabilities and scaled visit counts for the
// uniform sampler. All entries are exact rationals.
struct ParameterTable {
    long long i1 = 0;
    Rational eps;
    std::vector<Rational> x;        // x_0 .. x_{i1}
    std::vector<Rational> rho_I;    // per stratum
    std::vector<Rational> rho_III;  // shared by III+ and III-
    std::vector<Rational> rho_IIa;  // shared by IIa+/-; zero outside range
    std::vector<Rational> rho_IIb;
    std::vector<Rational> rho_IIc;

    Rational rho(SwitchType t, long long i) const;
    // 1 - sum of all type probabilities: the t-rejection mass
    Rational t_reject(long long i) const;

    std::string to_csv() const;
};

// Backward recursion from i1 down to 0. Throws SolverInvariantViolated when
// the solution leaves the valid region (x <= 0, rho outside [0,1], or type
// probabilities summing past 1).
ParameterTable solve_parameters(const BoundTable& bounds);

// regime inequality checks from the solution lemma; failures are reported,
// not thrown
struct SolverReport {
    bool all_pass = true;
    std::vector<std::string> failures;
};
SolverReport validate_parameters(const ParameterTable& table, const BoundTable& bounds,
                                 const HostInstance& inst);

}  // namespace dfactor
