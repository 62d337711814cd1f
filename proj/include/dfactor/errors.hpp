#pragma once

#include <stdexcept>
#include <string>

namespace dfactor {

enum class Errc {
    OddProduct,
    DegreeOutOfRange,
    EdgeMissing,
    EdgePresent,
    DegreeBroken,
    InvalidMove,
    NoValidMove,
    WrongVariant,
    BudgetExhausted,
    BoundGuard,
    SolverInvariantViolated,
    NotRegularComplement,
    UnknownOutcome,
    BadInput,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::OddProduct: return "OddProduct";
        case Errc::DegreeOutOfRange: return "DegreeOutOfRange";
        case Errc::EdgeMissing: return "EdgeMissing";
        case Errc::EdgePresent: return "EdgePresent";
        case Errc::DegreeBroken: return "DegreeBroken";
        case Errc::InvalidMove: return "InvalidMove";
        case Errc::NoValidMove: return "NoValidMove";
        case Errc::WrongVariant: return "WrongVariant";
        case Errc::BudgetExhausted: return "BudgetExhausted";
        case Errc::BoundGuard: return "BoundGuard";
        case Errc::SolverInvariantViolated: return "SolverInvariantViolated";
        case Errc::NotRegularComplement: return "NotRegularComplement";
        case Errc::UnknownOutcome: return "UnknownOutcome";
        case Errc::BadInput: return "BadInput";
    }
    return "Unknown";
}

}  // namespace dfactor
