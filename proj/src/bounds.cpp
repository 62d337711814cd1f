#include "dfactor/bounds.hpp"

#include "dfactor/oracle.hpp"

namespace dfactor {

long long i1_easy(const HostInstance& inst) {
    // floor(2 |E(H-bar)| d / n)
    return 2 * inst.m_red_total() * inst.d() / inst.n();
}

long long i1_uniform(const HostInstance& inst) {
    if (!inst.regular_complement())
        throw Error(Errc::NotRegularComplement, "i1_uniform needs a regular forbidden graph");
    return 2LL * inst.d() * inst.delta() / 3;
}

namespace formulas {

namespace {
BigInt bi(long long v) { return BigInt(v); }
}

Rational m_easy_upper(const HostInstance& inst, long long i) {
    BigInt dn = bi(inst.d()) * bi(inst.n());
    return Rational(bi(2 * i) * dn * dn);
}

Rational m_easy_lower(const HostInstance& inst, long long i) {
    long long d = inst.d(), n = inst.n(), delta = inst.delta(), m = inst.m_red_total();
    BigInt dn = bi(d) * bi(n);
    BigInt main = bi(2 * m - 2 * i) * bi(d) * bi(d) * (dn - bi(2 * i + 8 * d));
    BigInt c1 = bi(4 * m) * bi(d) * bi(d) * bi(d) * bi(d + delta);
    BigInt c2 = bi(4 * i) * bi(delta) * bi(d) * bi(d) * bi(n);
    return Rational(main - c1 - c2);
}

Rational m_upper(const HostInstance& inst, SwitchType t, long long i) {
    long long d = inst.d(), n = inst.n(), delta = inst.delta();
    BigInt D = bi(d), N = bi(n), DL = bi(delta);
    BigInt dn = D * N;
    switch (t) {
        case SwitchType::I: {
            // 2i(dn)^3 (1 + 28((delta+d)^2/n^2 + 1/n)) - 8i(d-1)^2 d^2 n^2
            //   - 4i delta d^3 n^2 - 4i^2 (dn)^2
            BigInt sum = bi(delta + d);
            BigInt lead = bi(2 * i) * D * D * D * N * (N * N + bi(28) * sum * sum + bi(28) * N);
            BigInt t1 = bi(8 * i) * bi(d - 1) * bi(d - 1) * D * D * N * N;
            BigInt t2 = bi(4 * i) * DL * D * D * D * N * N;
            BigInt t3 = bi(4 * i) * bi(i) * dn * dn;
            return Rational(lead - t1 - t2 - t3);
        }
        case SwitchType::IIaPlus:
        case SwitchType::IIaMinus:
            return Rational(bi(2 * i) * DL * DL * D * D * D * N);
        case SwitchType::IIbPlus:
        case SwitchType::IIbMinus: {
            BigInt v = DL * DL;
            for (int k = 0; k < 9; ++k) v = v * D;
            for (int k = 0; k < 5; ++k) v = v * N;
            return Rational(v);
        }
        case SwitchType::IIcPlus:
        case SwitchType::IIcMinus: {
            BigInt v = DL * DL * DL;
            for (int k = 0; k < 11; ++k) v = v * D;
            for (int k = 0; k < 6; ++k) v = v * N;
            return Rational(v);
        }
        case SwitchType::IIIPlus:
        case SwitchType::IIIMinus:
            return Rational(DL * DL * DL * D * D * D * N * N);
    }
    return Rational(0);
}

Rational m_lower(const HostInstance& inst, SwitchClass a, long long i) {
    long long d = inst.d(), n = inst.n(), delta = inst.delta();
    BigInt D = bi(d), N = bi(n), DL = bi(delta);
    BigInt dn = D * N;
    switch (a) {
        case SwitchClass::A: {
            // (delta n - 2i) d^2 (dn)^2 (1 - 30/n) - 3 d^5 delta n^2
            //   - 8i delta d^3 n^2 - 3 delta^2 d^4 n^2
            BigInt main = (DL * N - bi(2 * i)) * D * D * D * D * N * (N - bi(30));
            BigInt t1 = bi(3) * D * D * D * D * D * DL * N * N;
            BigInt t2 = bi(8 * i) * DL * D * D * D * N * N;
            BigInt t3 = bi(3) * DL * DL * D * D * D * D * N * N;
            return Rational(main - t1 - t2 - t3);
        }
        case SwitchClass::B1Plus:
        case SwitchClass::B1Minus: {
            BigInt base = dn - bi(2 * i + 10 * d);
            BigInt main = bi(2 * i) * bi(delta - 1) * bi(d - 1) * base * base;
            BigInt sub = bi(6 * i) * bi(delta - 1) * D * D * D * N * bi(d + delta);
            return Rational(main - sub);
        }
        case SwitchClass::B2Plus:
        case SwitchClass::B2Minus: {
            BigInt main = (DL * N - bi(2 * i)) * DL * D * D * D * D * N;
            BigInt t1 = bi(8 * i) * DL * DL * D * D * D * N;
            BigInt t2 = bi(2 * i) * DL * D * D * D * D * N;
            BigInt t3 = bi(2) * DL * DL * D * D * D * D * D * N;
            BigInt t4 = bi(12) * DL * DL * D * D * D * D * N;
            return Rational(main - t1 - t2 - t3 - t4);
        }
        case SwitchClass::CPlus:
        case SwitchClass::CMinus: {
            // d^3 delta^3 n^2 (1 - 8(d+delta)/n)
            BigInt main = D * D * D * DL * DL * DL * N * (N - bi(8 * (d + delta)));
            return Rational(main);
        }
    }
    return Rational(0);
}

Rational mhat_lower(const HostInstance& inst, SwitchType t, long long i) {
    long long d = inst.d(), n = inst.n(), delta = inst.delta();
    BigInt D = bi(d), N = bi(n), DL = bi(delta);
    BigInt dn = D * N;
    switch (t) {
        case SwitchType::IIbPlus:
        case SwitchType::IIbMinus: {
            BigInt base = dn - bi(2 * i + 12);
            BigInt main = base * base * base * base;
            BigInt cube = dn * dn * dn;
            return Rational(main - bi(6) * cube * D * D - bi(6) * cube * DL * D);
        }
        case SwitchType::IIcPlus:
        case SwitchType::IIcMinus: {
            BigInt base = dn - bi(2 * i + 14);
            BigInt main = base * base * base * base * base * base;
            BigInt pent = dn * dn * dn * dn * dn;
            return Rational(main - bi(9) * pent * D * D - bi(9) * pent * DL * D);
        }
        default:
            throw Error(Errc::WrongVariant, "mhat_lower: type has no gadget bound");
    }
}

Rational epsilon(const HostInstance& inst) {
    BigInt s = bi(inst.delta() + inst.d());
    return Rational(bi(5) * s * s, bi(inst.n()) * bi(inst.n()));
}

bool lower_bound_applicable(const HostInstance& inst, SwitchClass a, long long i) {
    if (a == SwitchClass::B1Plus || a == SwitchClass::B1Minus) {
        // the squared factor (dn - 2i - 10d) must be nonnegative for the
        // derivation to hold
        return static_cast<long long>(inst.d()) * inst.n() - 2 * i - 10 * inst.d() >= 0;
    }
    return true;
}

bool hat_lower_applicable(const HostInstance& inst, SwitchType t, long long i) {
    long long dn = static_cast<long long>(inst.d()) * inst.n();
    if (t == SwitchType::IIbPlus || t == SwitchType::IIbMinus) return dn - 2 * i - 12 >= 0;
    if (t == SwitchType::IIcPlus || t == SwitchType::IIcMinus) return dn - 2 * i - 14 >= 0;
    return false;
}

}  // namespace formulas

BoundTable BoundTable::analytic(const HostInstance& inst, long long i1) {
    BoundTable b;
    b.provider_ = BoundProvider::Analytic;
    b.i1_ = i1;
    b.epsilon_ = formulas::epsilon(inst);
    for (long long i = 0; i <= i1; ++i) {
        b.easy_up_.push_back(formulas::m_easy_upper(inst, i));
        b.easy_low_.push_back(formulas::m_easy_lower(inst, i));
    }
    for (SwitchType t : kAllTypes) {
        auto& v = b.up_[type_index(t)];
        for (long long i = 0; i <= i1; ++i) v.push_back(formulas::m_upper(inst, t, i));
        if (gadget_arity(t) > 0) {
            auto& h = b.hat_[type_index(t)];
            for (long long i = 0; i <= i1; ++i) {
                Rational val = formulas::mhat_lower(inst, t, i);
                if (!formulas::hat_lower_applicable(inst, t, i)) val = Rational(-1);
                h.push_back(val);
            }
        }
    }
    for (SwitchClass a : kAllClasses) {
        auto& v = b.low_[class_index(a)];
        for (long long i = 0; i <= i1; ++i) {
            Rational val = formulas::m_lower(inst, a, i);
            if (!formulas::lower_bound_applicable(inst, a, i) && val.sign() > 0)
                val = Rational(-1);
            v.push_back(val);
        }
    }
    return b;
}

BoundTable BoundTable::oracle(const HostInstance& inst, const StrataCatalog& catalog,
                              CountingEngine& engine) {
    BoundTable b;
    b.provider_ = BoundProvider::Oracle;
    b.i1_ = catalog.max_stratum();
    b.epsilon_ = formulas::epsilon(inst);
    long long i1 = b.i1_;
    for (auto& v : b.up_) v.assign(i1 + 1, Rational(0));
    for (auto& v : b.low_) v.assign(i1 + 1, Rational(0));
    for (SwitchType t : kAllTypes) {
        if (gadget_arity(t) > 0) b.hat_[type_index(t)].assign(i1 + 1, Rational(0));
    }
    b.easy_up_.assign(i1 + 1, Rational(0));
    b.easy_low_.assign(i1 + 1, Rational(0));

    for (long long i = 0; i <= i1; ++i) {
        // the easy upper bound stays the proposal-space size
        b.easy_up_[i] = formulas::m_easy_upper(inst, i);
        bool first = true;
        Count min_b_easy = 0;
        Count max_f[9] = {};
        Count min_b[7] = {};
        Count min_hat_iib = 0, min_hat_iic = 0;
        bool any_hat_iib = false, any_hat_iic = false;
        for (const auto& enc : catalog.stratum(i)) {
            ColoredState st = state_from_edges(inst, enc);
            Count be = engine.b_easy(st);
            for (SwitchType t : kAllTypes) {
                Count f = engine.f_type(st, t);
                if (first || f > max_f[type_index(t)]) max_f[type_index(t)] = f;
            }
            for (SwitchClass a : kAllClasses) {
                Count v = engine.b_class(st, a);
                if (first || v < min_b[class_index(a)]) min_b[class_index(a)] = v;
            }
            // per-octagon gadget minima over completable octagons
            for (SwitchClass cls : {SwitchClass::B1Plus, SwitchClass::B1Minus}) {
                for_each_b1_octagon(st, cls, [&](const OctagonTuple& oct, B1Variant var) {
                    if (var == B1Variant::IIb) {
                        Count h = engine.bhat(st, oct, SwitchType::IIbPlus);
                        if (h > 0 && (!any_hat_iib || h < min_hat_iib)) min_hat_iib = h;
                        if (h > 0) any_hat_iib = true;
                    } else if (var == B1Variant::IIc) {
                        Count h = engine.bhat(st, oct, SwitchType::IIcPlus);
                        if (h > 0 && (!any_hat_iic || h < min_hat_iic)) min_hat_iic = h;
                        if (h > 0) any_hat_iic = true;
                    }
                });
            }
            if (first || be < min_b_easy) min_b_easy = be;
            first = false;
        }
        if (!first) {
            b.easy_low_[i] = Rational(count_to_bigint(min_b_easy));
            for (SwitchType t : kAllTypes)
                b.up_[type_index(t)][i] = Rational(count_to_bigint(max_f[type_index(t)]));
            for (SwitchClass a : kAllClasses)
                b.low_[class_index(a)][i] = Rational(count_to_bigint(min_b[class_index(a)]));
            b.hat_[type_index(SwitchType::IIbPlus)][i] =
                Rational(count_to_bigint(any_hat_iib ? min_hat_iib : 0));
            b.hat_[type_index(SwitchType::IIbMinus)][i] =
                b.hat_[type_index(SwitchType::IIbPlus)][i];
            b.hat_[type_index(SwitchType::IIcPlus)][i] =
                Rational(count_to_bigint(any_hat_iic ? min_hat_iic : 0));
            b.hat_[type_index(SwitchType::IIcMinus)][i] =
                b.hat_[type_index(SwitchType::IIcPlus)][i];
        }
    }
    return b;
}

}  // namespace dfactor
