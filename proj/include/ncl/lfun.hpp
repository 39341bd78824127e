#pragma once

// Euler factors and L-functions as K_1 classes over Lambda[T]/(T^m), and the
// trace-formula verifier.

#include "ncl/k1.hpp"
#include "ncl/series.hpp"
#include "ncl/sheaf.hpp"
#include "ncl/variety.hpp"
#include "ncl/zeta.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ncl {

/// Class of (1 - A T^d)^{-1} in K_1(Lambda[T]/(T^m)).
K1Class euler_factor_from_frobenius(const Matrix& a, int d, int m);
K1Class euler_factor(const SheafRep& f, const ClosedPoint& x, int m);

/// The deg(x)-block form 1 - Frob T reduced to diag(rep, 1, ..., 1).
struct BlockEulerFactor {
    Matrix source;            // 1 - Frob T of size deg(x) * rank
    K1Certificate certificate;
    K1Class cls;              // the Euler factor (inverse of [source])
    Verdict verdict;          // against euler_factor
};

BlockEulerFactor euler_factor_block_from_frobenius(const Matrix& a, int d, int m);
BlockEulerFactor euler_factor_block(const SheafRep& f, const ClosedPoint& x, int m);

/// Closed points per degree (index d - 1) seen while forming a product.
struct ProductStats {
    std::vector<std::uint64_t> closed_points;
};

/// Product of Euler factors over the closed points of degree < m, degree-major.
K1Class l_function(const SheafRep& f, int m, ProductStats* stats = nullptr);
/// L over the subfield base0 of the base field: point degrees scale by [F_q : base0].
K1Class l_subfield_view(const SheafRep& f, const FqField& base0, int m);
/// Coefficient n: sum over deg x | n of deg(x) tr(rho(Frob_x)^{n/deg x}).
TruncSeries power_sums(const SheafRep& f, int m);
/// The series k1_det(L) for commutative coefficients.
TruncSeries l_series(const K1Class& l);

/// [1 - Frob T on the global sections]^{-1} for zero-dimensional X.
K1Class global_side_dim0(const SheafRep& f, int m);
/// Tabulated cohomology of constant sheaves on A1, Gm and P1.
K1Class global_side_table(const SheafRep& f, int m);
/// The tabulated closed form for a builtin curve over F_q.
RationalFunction table_zeta(const std::string& name, std::uint64_t q);

struct GlobalSide {
    std::string method;
    K1Class value;
    Verdict verdict;
    std::string note;
};

struct LReport {
    std::string scheme;
    std::string sheaf;
    int m = 0;
    RingPtr ring;
    K1Class euler_product;
    std::optional<TruncSeries> series_form;
    std::vector<GlobalSide> global_sides;
    ProductStats stats;
    double seconds = 0;

    explicit LReport(K1Class l) : euler_product(std::move(l)) {}
    /// Worst verdict over the global sides.
    VerdictKind overall() const;
};

LReport make_report(const SheafRep& f, int m);

/// Methods: "dim0", "table", "covering-zeta", "character-product"; empty means all applicable.
/// Throws PNotInvertible or NoApplicableMethod.
LReport verify_trace_formula(const SheafRep& f, int m, const std::vector<std::string>& methods = {});

/// Residue characteristic p is a unit in Lambda.
bool p_invertible(const RingPtr& ring, std::uint32_t p);

} // namespace ncl
