#include "ncl/error.hpp"

namespace ncl {

const char* errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case Errc::ZeroToNegativePower: return "ZeroToNegativePower";
    case Errc::NotInTower: return "NotInTower";
    case Errc::EnumerationTooLarge: return "EnumerationTooLarge";
    case Errc::NotInSubgroup: return "NotInSubgroup";
    case Errc::BadOrder: return "BadOrder";
    case Errc::TableInvalid: return "TableInvalid";
    case Errc::SizeOverflow: return "SizeOverflow";
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::BadCharacterOrder: return "BadCharacterOrder";
    case Errc::NonCyclicGroup: return "NonCyclicGroup";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::TruncationMismatch: return "TruncationMismatch";
    case Errc::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case Errc::NoncommutativeRing: return "NoncommutativeRing";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::PivotSearchExhausted: return "PivotSearchExhausted";
    case Errc::MultiChartSplitUnsupported: return "MultiChartSplitUnsupported";
    case Errc::BadKummerOrder: return "BadKummerOrder";
    case Errc::VanishingFunction: return "VanishingFunction";
    case Errc::PointNotOnBase: return "PointNotOnBase";
    case Errc::CocycleNotMultiplicative: return "CocycleNotMultiplicative";
    case Errc::NoSolutionWithinBounds: return "NoSolutionWithinBounds";
    case Errc::AmbiguousSolution: return "AmbiguousSolution";
    case Errc::NotZeroDimensional: return "NotZeroDimensional";
    case Errc::UnsupportedScheme: return "UnsupportedScheme";
    case Errc::PNotInvertible: return "PNotInvertible";
    case Errc::NoApplicableMethod: return "NoApplicableMethod";
    case Errc::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

} // namespace ncl
