#pragma once

#include <optional>
#include <vector>

#include "dfactor/counting.hpp"
#include "dfactor/graph.hpp"
#include "dfactor/rational.hpp"
#include "dfactor/switchings.hpp"

namespace dfactor {

class StrataCatalog;

// stratum caps
long long i1_easy(const HostInstance& inst);
long long i1_uniform(const HostInstance& inst);

// closed-form stratum parameters; exact rationals, may be non-positive
namespace formulas {
Rational m_easy_upper(const HostInstance& inst, long long i);   // 2i(dn)^2
Rational m_easy_lower(const HostInstance& inst, long long i);
Rational m_upper(const HostInstance& inst, SwitchType t, long long i);
Rational m_lower(const HostInstance& inst, SwitchClass a, long long i);
Rational mhat_lower(const HostInstance& inst, SwitchType t, long long i);
Rational epsilon(const HostInstance& inst);
// false when the derivation's base factor is negative, which makes the
// closed form meaningless rather than merely slack
bool lower_bound_applicable(const HostInstance& inst, SwitchClass a, long long i);
bool hat_lower_applicable(const HostInstance& inst, SwitchType t, long long i);
}  // namespace formulas

enum class BoundProvider { Analytic, Oracle };

// All per-stratum parameters one sampler run needs. Under the analytic
// provider these are the closed forms; under the oracle provider they are
// exact extrema over exhaustively enumerated strata.
class BoundTable {
public:
    static BoundTable analytic(const HostInstance& inst, long long i1);
    // extrema computed over the catalog's strata with the supplied engine
    static BoundTable oracle(const HostInstance& inst, const StrataCatalog& catalog,
                             CountingEngine& engine);

    BoundProvider provider() const { return provider_; }
    long long i1() const { return i1_; }
    const Rational& eps() const { return epsilon_; }
    void set_eps(const Rational& e) { epsilon_ = e; }

    const Rational& easy_upper(long long i) const { return easy_up_.at(i); }
    const Rational& easy_lower(long long i) const { return easy_low_.at(i); }
    const Rational& upper(SwitchType t, long long i) const {
        return up_[type_index(t)].at(i);
    }
    const Rational& lower(SwitchClass a, long long i) const {
        return low_[class_index(a)].at(i);
    }
    const Rational& hat_lower(SwitchType t, long long i) const {
        return hat_[type_index(t)].at(i);
    }

    // booster proposal sampling is only exact when the upper bounds equal
    // the generation-space sizes, which is the analytic provider's case
    bool upper_is_space_size() const { return provider_ == BoundProvider::Analytic; }

    static int type_index(SwitchType t) { return static_cast<int>(t); }
    static int class_index(SwitchClass a) { return static_cast<int>(a); }

private:
    BoundProvider provider_ = BoundProvider::Analytic;
    long long i1_ = 0;
    Rational epsilon_;
    std::vector<Rational> easy_up_, easy_low_;
    std::vector<Rational> up_[9];
    std::vector<Rational> low_[7];
    std::vector<Rational> hat_[9];
};

}  // namespace dfactor
