#pragma once

#include <stdexcept>
#include <string>

namespace ncl {

enum class Errc {
    NonPrimeCharacteristic,
    ZeroToNegativePower,
    NotInTower,
    EnumerationTooLarge,
    NotInSubgroup,
    BadOrder,
    TableInvalid,
    SizeOverflow,
    NotAUnit,
    BadCharacterOrder,
    NonCyclicGroup,
    RingMismatch,
    TruncationMismatch,
    NonUnitConstantTerm,
    NoncommutativeRing,
    NotInvertible,
    PivotSearchExhausted,
    MultiChartSplitUnsupported,
    BadKummerOrder,
    VanishingFunction,
    PointNotOnBase,
    CocycleNotMultiplicative,
    NoSolutionWithinBounds,
    AmbiguousSolution,
    NotZeroDimensional,
    UnsupportedScheme,
    PNotInvertible,
    NoApplicableMethod,
    InvalidInput,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace ncl

// Evaluates the message only on failure.
#define NCL_REQUIRE(cond, code, what)                 \
    do {                                              \
        if (!(cond)) ::ncl::fail((code), (what));     \
    } while (0)

namespace ncl {

} // namespace ncl
