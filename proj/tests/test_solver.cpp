#include <doctest.h>

#include "dfactor/solver.hpp"

using namespace dfactor;

namespace {

std::vector<VertexPair> circulant3(int n) {
    std::vector<VertexPair> e;
    for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
    for (int i = 0; i < n / 2; ++i) e.push_back({i, i + n / 2});
    return e;
}

// straight-line re-implementation of the recursion for cross-checking: no
// shared code with solve_parameters beyond the bound table
ParameterTable straight_line_solve(const BoundTable& b) {
    long long i1 = b.i1();
    ParameterTable t;
    t.i1 = i1;
    t.eps = b.eps();
    t.x.assign(i1 + 1, Rational(0));
    t.rho_I.assign(i1 + 1, Rational(0));
    t.rho_III.assign(i1 + 1, Rational(0));
    t.rho_IIa.assign(i1 + 1, Rational(0));
    t.rho_IIb.assign(i1 + 1, Rational(0));
    t.rho_IIc.assign(i1 + 1, Rational(0));
    Rational one(1), two(2);
    Rational ome = one - t.eps;
    // base case at i1
    {
        Rational k1 = two * b.lower(SwitchClass::B1Plus, i1) / b.upper(SwitchType::I, i1);
        t.x[i1] = one / (one - k1 * ome);
        t.rho_I[i1] = ome;
    }
    for (long long i = i1 - 1; i >= 0; --i) {
        Rational k1 = b.lower(SwitchClass::B1Plus, i).is_zero()
                          ? Rational(0)
                          : two * b.lower(SwitchClass::B1Plus, i) / b.upper(SwitchType::I, i);
        Rational k2 = one + t.rho_I[i + 1] / b.upper(SwitchType::I, i + 1) *
                                (b.lower(SwitchClass::A, i) +
                                 two * b.lower(SwitchClass::CPlus, i)) *
                                t.x[i + 1];
        if (i + 2 <= i1)
            k2 += two * t.rho_I[i + 2] * b.lower(SwitchClass::B2Plus, i) * t.x[i + 2] /
                  b.upper(SwitchType::I, i + 2);
        Rational k3 = t.x[i + 1] * b.upper(SwitchType::IIIPlus, i) * t.rho_I[i + 1] /
                      b.upper(SwitchType::I, i + 1);
        t.x[i] = (k2 - two * k1 * k3) / (one - k1 * ome);
        t.rho_III[i] = k3 / t.x[i];
        t.rho_I[i] = ome - two * t.rho_III[i];
    }
    for (long long j = 0; j + 1 <= i1; ++j)
        t.rho_IIa[j] = t.x[j + 1] / t.x[j] * t.rho_I[j + 1] *
                       b.upper(SwitchType::IIaPlus, j) / b.upper(SwitchType::I, j + 1);
    for (long long j = 0; j + 2 <= i1; ++j)
        t.rho_IIb[j] = t.x[j + 2] / t.x[j] * t.rho_I[j + 2] *
                       b.upper(SwitchType::IIbPlus, j) /
                       (b.upper(SwitchType::I, j + 2) * b.hat_lower(SwitchType::IIbPlus, j + 2));
    for (long long j = 0; j + 3 <= i1; ++j)
        t.rho_IIc[j] = t.x[j + 3] / t.x[j] * t.rho_I[j + 3] *
                       b.upper(SwitchType::IIcPlus, j) /
                       (b.upper(SwitchType::I, j + 3) * b.hat_lower(SwitchType::IIcPlus, j + 3));
    return t;
}

void check_fixed_point(const ParameterTable& t, const BoundTable& b) {
    for (long long i = 0; i <= t.i1; ++i) {
        Rational rhs(1);
        auto visit = [&](long long j, Rational weight, const Rational& low) {
            if (j > t.i1 || low.is_zero()) return;
            rhs += weight * t.x[j] * t.rho_I[j] * low / b.upper(SwitchType::I, j);
        };
        visit(i + 1, Rational(1), b.lower(SwitchClass::A, i));
        visit(i, Rational(2), b.lower(SwitchClass::B1Plus, i));
        visit(i + 2, Rational(2), b.lower(SwitchClass::B2Plus, i));
        visit(i + 1, Rational(2), b.lower(SwitchClass::CPlus, i));
        CHECK(rhs == t.x[i]);
    }
}

}  // namespace

TEST_CASE("solver trivial instance: no forbidden edges") {
    HostInstance empty = load_instance(100, 2, {});
    BoundTable b = BoundTable::analytic(empty, 0);
    ParameterTable t = solve_parameters(b);
    CHECK(t.x[0] == Rational(1));
    CHECK(t.rho_I[0] == Rational(1) - b.eps());
    CHECK(t.rho_III[0].is_zero());
    CHECK(t.rho_IIa[0].is_zero());
}

TEST_CASE("solver boundary conditions and symmetry") {
    HostInstance inst = load_instance(10000, 3, circulant3(10000));
    REQUIRE(inst.delta() == 3);
    BoundTable b = BoundTable::analytic(inst, i1_uniform(inst));
    ParameterTable t = solve_parameters(b);
    CHECK(t.i1 == 6);
    CHECK(t.rho_I[t.i1] == Rational(1) - b.eps());
    CHECK(t.rho_III[t.i1].is_zero());
    for (long long i = 0; i < t.i1; ++i)
        CHECK(t.rho_I[i] + t.rho_III[i] + t.rho_III[i] == Rational(1) - b.eps());
    // type probabilities stay inside [0,1] and sum below 1
    for (long long i = 0; i <= t.i1; ++i) {
        CHECK(t.x[i].sign() > 0);
        CHECK(t.t_reject(i).sign() >= 0);
    }
}

TEST_CASE("solved table satisfies the exact fixed-point identity") {
    HostInstance inst = load_instance(10000, 3, circulant3(10000));
    BoundTable b = BoundTable::analytic(inst, i1_uniform(inst));
    ParameterTable t = solve_parameters(b);
    check_fixed_point(t, b);
}

TEST_CASE("independent straight-line recursion agrees bit for bit") {
    HostInstance inst = load_instance(10000, 3, circulant3(10000));
    BoundTable b = BoundTable::analytic(inst, i1_uniform(inst));
    ParameterTable t = solve_parameters(b);
    ParameterTable t2 = straight_line_solve(b);
    for (long long i = 0; i <= t.i1; ++i) {
        CHECK(t.x[i] == t2.x[i]);
        CHECK(t.rho_I[i] == t2.rho_I[i]);
        CHECK(t.rho_III[i] == t2.rho_III[i]);
        CHECK(t.rho_IIa[i] == t2.rho_IIa[i]);
        CHECK(t.rho_IIb[i] == t2.rho_IIb[i]);
        CHECK(t.rho_IIc[i] == t2.rho_IIc[i]);
    }
    // deterministic: solving twice gives identical rationals
    ParameterTable t3 = solve_parameters(b);
    for (long long i = 0; i <= t.i1; ++i) CHECK(t.x[i] == t3.x[i]);
}

TEST_CASE("q-equalisation identities hold exactly") {
    HostInstance inst = load_instance(10000, 3, circulant3(10000));
    BoundTable b = BoundTable::analytic(inst, i1_uniform(inst));
    ParameterTable t = solve_parameters(b);
    for (long long i = 1; i <= t.i1; ++i) {
        Rational lhs = t.x[i] * t.rho_I[i] / b.upper(SwitchType::I, i);
        if (!b.upper(SwitchType::IIaPlus, i - 1).is_zero()) {
            Rational rhs = t.x[i - 1] * t.rho_IIa[i - 1] / b.upper(SwitchType::IIaPlus, i - 1);
            CHECK(lhs == rhs);
        }
        if (i >= 2) {
            Rational rhs2 = t.x[i - 2] * t.rho_IIb[i - 2] *
                            b.hat_lower(SwitchType::IIbPlus, i) /
                            b.upper(SwitchType::IIbPlus, i - 2);
            CHECK(lhs == rhs2);
        }
        if (i >= 3) {
            Rational rhs3 = t.x[i - 3] * t.rho_IIc[i - 3] *
                            b.hat_lower(SwitchType::IIcPlus, i) /
                            b.upper(SwitchType::IIcPlus, i - 3);
            CHECK(lhs == rhs3);
        }
    }
}

TEST_CASE("regime inequality checks pass at n=10^4 and catch corruption") {
    HostInstance inst = load_instance(10000, 3, circulant3(10000));
    BoundTable b = BoundTable::analytic(inst, i1_uniform(inst));
    ParameterTable t = solve_parameters(b);
    SolverReport rep = validate_parameters(t, b, inst);
    CHECK(rep.all_pass);
    for (const auto& f : rep.failures) MESSAGE(f);

    ParameterTable bad = t;
    bad.rho_III[1] = Rational(1);
    SolverReport rep2 = validate_parameters(bad, b, inst);
    CHECK_FALSE(rep2.all_pass);
}

TEST_CASE("epsilon at or above one is refused") {
    // tiny instance: 5((2+2)/8)^2 > 1
    std::vector<VertexPair> c8;
    for (int i = 0; i < 8; ++i) c8.push_back({i, (i + 1) % 8});
    HostInstance inst = load_instance(8, 2, c8);
    BoundTable b = BoundTable::analytic(inst, i1_uniform(inst));
    CHECK_THROWS_AS(solve_parameters(b), Error);
}
