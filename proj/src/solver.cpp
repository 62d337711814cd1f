#include "dfactor/solver.hpp"

#include <sstream>

namespace dfactor {

namespace {

const Rational kZero(0);
const Rational kOne(1);

// x_j and rho_I(j) are zero above i1; guarded term evaluation keeps the
// 0/0 cases (empty strata, vanished bounds) out of the divisions
Rational guarded_term(const Rational& numerator, const Rational& denominator,
                      const char* what) {
    if (numerator.is_zero()) return kZero;
    if (denominator.sign() <= 0)
        throw Error(Errc::SolverInvariantViolated,
                    std::string("solver: nonpositive denominator in ") + what);
    return numerator / denominator;
}

}  // namespace

Rational ParameterTable::rho(SwitchType t, long long i) const {
    if (i < 0 || i > i1) return kZero;
    switch (t) {
        case SwitchType::I: return rho_I[i];
        case SwitchType::IIaPlus:
        case SwitchType::IIaMinus: return rho_IIa[i];
        case SwitchType::IIbPlus:
        case SwitchType::IIbMinus: return rho_IIb[i];
        case SwitchType::IIcPlus:
        case SwitchType::IIcMinus: return rho_IIc[i];
        case SwitchType::IIIPlus:
        case SwitchType::IIIMinus: return rho_III[i];
    }
    return kZero;
}

Rational ParameterTable::t_reject(long long i) const {
    Rational sum = rho_I[i];
    sum += rho_III[i] + rho_III[i];
    sum += rho_IIa[i] + rho_IIa[i];
    sum += rho_IIb[i] + rho_IIb[i];
    sum += rho_IIc[i] + rho_IIc[i];
    return kOne - sum;
}

std::string ParameterTable::to_csv() const {
    std::ostringstream os;
    os << "i,x,rho_I,rho_III,rho_IIa,rho_IIb,rho_IIc\n";
    for (long long i = 0; i <= i1; ++i) {
        os << i << ',' << x[i].to_string() << ',' << rho_I[i].to_string() << ','
           << rho_III[i].to_string() << ',' << rho_IIa[i].to_string() << ','
           << rho_IIb[i].to_string() << ',' << rho_IIc[i].to_string() << '\n';
    }
    return os.str();
}

ParameterTable solve_parameters(const BoundTable& bounds) {
    const long long i1 = bounds.i1();
    ParameterTable t;
    t.i1 = i1;
    t.eps = bounds.eps();
    if (t.eps >= kOne || t.eps.sign() < 0)
        throw Error(Errc::SolverInvariantViolated, "solver: epsilon outside [0,1)");
    t.x.assign(i1 + 1, kZero);
    t.rho_I.assign(i1 + 1, kZero);
    t.rho_III.assign(i1 + 1, kZero);
    t.rho_IIa.assign(i1 + 1, kZero);
    t.rho_IIb.assign(i1 + 1, kZero);
    t.rho_IIc.assign(i1 + 1, kZero);

    const Rational one_minus_eps = kOne - t.eps;
    for (long long i = 0; i <= i1; ++i) {
        for (SwitchClass a : {SwitchClass::A, SwitchClass::B1Plus, SwitchClass::B2Plus,
                              SwitchClass::CPlus}) {
            if (bounds.lower(a, i).sign() < 0)
                throw Error(Errc::SolverInvariantViolated,
                            "solver: negative lower bound at stratum " + std::to_string(i) +
                                " (instance outside the analytic regime)");
        }
    }
    auto x_at = [&](long long j) { return j > i1 ? kZero : t.x[j]; };
    auto rhoI_at = [&](long long j) { return j > i1 ? kZero : t.rho_I[j]; };

    for (long long i = i1; i >= 0; --i) {
        const Rational& mI = bounds.upper(SwitchType::I, i);
        Rational kappa1 = guarded_term(Rational(2) * bounds.lower(SwitchClass::B1Plus, i), mI,
                                       "kappa1");
        Rational kappa2 = kOne;
        if (i + 1 <= i1) {
            Rational num = rhoI_at(i + 1) * x_at(i + 1) *
                           (bounds.lower(SwitchClass::A, i) +
                            Rational(2) * bounds.lower(SwitchClass::CPlus, i));
            kappa2 += guarded_term(num, bounds.upper(SwitchType::I, i + 1), "kappa2/A+C");
        }
        if (i + 2 <= i1) {
            Rational num = Rational(2) * rhoI_at(i + 2) * x_at(i + 2) *
                           bounds.lower(SwitchClass::B2Plus, i);
            kappa2 += guarded_term(num, bounds.upper(SwitchType::I, i + 2), "kappa2/B2");
        }
        Rational kappa3 = kZero;
        if (i + 1 <= i1) {
            Rational num = x_at(i + 1) * rhoI_at(i + 1) * bounds.upper(SwitchType::IIIPlus, i);
            kappa3 = guarded_term(num, bounds.upper(SwitchType::I, i + 1), "kappa3");
        }
        Rational denom = kOne - kappa1 * one_minus_eps;
        if (denom.sign() <= 0)
            throw Error(Errc::SolverInvariantViolated, "solver: 1 - kappa1(1-eps) <= 0");
        t.x[i] = (kappa2 - Rational(2) * kappa1 * kappa3) / denom;
        if (t.x[i].sign() <= 0)
            throw Error(Errc::SolverInvariantViolated, "solver: x_i <= 0 at stratum " +
                                                           std::to_string(i));
        t.rho_III[i] = kappa3 / t.x[i];
        t.rho_I[i] = one_minus_eps - t.rho_III[i] - t.rho_III[i];
    }

    for (long long j = 0; j <= i1; ++j) {
        if (j + 1 <= i1) {
            Rational num = x_at(j + 1) * rhoI_at(j + 1) * bounds.upper(SwitchType::IIaPlus, j);
            t.rho_IIa[j] = guarded_term(num, t.x[j] * bounds.upper(SwitchType::I, j + 1),
                                        "rho_IIa");
        }
        if (j + 2 <= i1) {
            Rational num = x_at(j + 2) * rhoI_at(j + 2) * bounds.upper(SwitchType::IIbPlus, j);
            if (!num.is_zero()) {
                Rational den = t.x[j] * bounds.upper(SwitchType::I, j + 2) *
                               bounds.hat_lower(SwitchType::IIbPlus, j + 2);
                t.rho_IIb[j] = guarded_term(num, den, "rho_IIb");
            }
        }
        if (j + 3 <= i1) {
            Rational num = x_at(j + 3) * rhoI_at(j + 3) * bounds.upper(SwitchType::IIcPlus, j);
            if (!num.is_zero()) {
                Rational den = t.x[j] * bounds.upper(SwitchType::I, j + 3) *
                               bounds.hat_lower(SwitchType::IIcPlus, j + 3);
                t.rho_IIc[j] = guarded_term(num, den, "rho_IIc");
            }
        }
    }

    for (long long i = 0; i <= i1; ++i) {
        for (const Rational* r : {&t.rho_I[i], &t.rho_III[i], &t.rho_IIa[i], &t.rho_IIb[i],
                                  &t.rho_IIc[i]}) {
            if (r->sign() < 0 || *r > kOne)
                throw Error(Errc::SolverInvariantViolated,
                            "solver: rho outside [0,1] at stratum " + std::to_string(i));
        }
        if (t.t_reject(i).sign() < 0)
            throw Error(Errc::SolverInvariantViolated,
                        "solver: type probabilities exceed 1 at stratum " + std::to_string(i));
    }
    return t;
}

SolverReport validate_parameters(const ParameterTable& t, const BoundTable& bounds,
                                 const HostInstance& inst) {
    SolverReport rep;
    auto fail = [&](const std::string& msg) {
        rep.all_pass = false;
        rep.failures.push_back(msg);
    };
    (void)bounds;
    long long d = inst.d(), n = inst.n(), delta = inst.delta();
    Rational n2(BigInt(n) * BigInt(n));
    for (long long i = 0; i <= t.i1; ++i) {
        if (t.x[i].sign() <= 0) fail("x <= 0 at " + std::to_string(i));
        if (i + 1 <= t.i1 && delta > 0) {
            // x_{i+1}/x_i <= 2.3 (i+1) / (d delta)
            Rational lhs = t.x[i + 1] / t.x[i];
            Rational rhs(BigInt(23 * (i + 1)), BigInt(10 * d * delta));
            if (lhs > rhs) fail("x ratio too large at " + std::to_string(i));
        }
        if (delta > 0) {
            Rational cap3(BigInt(12 * delta * delta), BigInt(10 * d * n));
            if (t.rho_III[i] > cap3) fail("rho_III above 1.2 delta^2/(dn) at " +
                                          std::to_string(i));
        }
        Rational capA = Rational(BigInt(2 * delta * delta)) / n2;
        if (t.rho_IIa[i] > capA) fail("rho_IIa above 2 delta^2/n^2 at " + std::to_string(i));
        Rational capB = Rational(BigInt(4 * d * delta)) / n2;
        if (!t.rho_IIb[i].is_zero() && !(t.rho_IIb[i] < capB))
            fail("rho_IIb not below 4 d delta/n^2 at " + std::to_string(i));
        Rational capC = Rational(BigInt(delta * delta), BigInt(2)) / n2;
        if (!t.rho_IIc[i].is_zero() && !(t.rho_IIc[i] < capC))
            fail("rho_IIc not below delta^2/(2n^2) at " + std::to_string(i));
        Rational boosters = (t.rho_IIa[i] + t.rho_IIb[i] + t.rho_IIc[i]);
        boosters += boosters;
        if (!(boosters < t.eps)) fail("booster mass not below epsilon at " + std::to_string(i));
        if (t.t_reject(i).sign() < 0) fail("type probabilities exceed 1 at " + std::to_string(i));
    }
    return rep;
}

}  // namespace dfactor
