#pragma once

// Zeta functions from point counts: exact rational reconstruction.

#include "ncl/series.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace ncl {

using QPoly = std::vector<mpq_class>;  // low-to-high

/// num/den with den(0) = 1, gcd-reduced.
struct RationalFunction {
    QPoly num{1}, den{1};

    int num_degree() const { return static_cast<int>(num.size()) - 1; }
    int den_degree() const { return static_cast<int>(den.size()) - 1; }
    /// Coefficients of the power series up to T^n inclusive.
    QPoly expand(int n) const;
    bool operator==(const RationalFunction& o) const { return num == o.num && den == o.den; }
    /// "(1 + 2T^2) / (1 - 3T + 2T^2)".
    std::string to_string() const;
    /// Integer linear factors pulled out: "1/((1 - T)(1 - 2T))".
    std::string pretty() const;
};

/// prod (1 - a T)^{+-1} from integer reciprocal roots.
RationalFunction rational_from_roots(const std::vector<std::int64_t>& num_roots,
                                     const std::vector<std::int64_t>& den_roots);

/// Z_0..Z_K of exp(sum N_n T^n / n) with counts[n-1] = N_n.
QPoly zeta_series_from_counts(const std::vector<std::uint64_t>& counts);

/// Unique Z with the given degree bounds matching the counts.
/// Throws NoSolutionWithinBounds or AmbiguousSolution.
RationalFunction zeta_reconstruct(const std::vector<std::uint64_t>& counts, int num_deg, int den_deg);
/// Smallest total degree that fits; within a total, smaller denominator degree first.
RationalFunction zeta_reconstruct_auto(const std::vector<std::uint64_t>& counts);

/// Series coefficients reduced into Z/n (or the integers of any coefficient ring).
TruncSeries rational_series_in(const QPoly& coeffs, const RingPtr& ring, int m);
TruncSeries rational_to_series(const RationalFunction& f, const RingPtr& ring, int m);

std::string qpoly_to_string(const QPoly& p);

} // namespace ncl
