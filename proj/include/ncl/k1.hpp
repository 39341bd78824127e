#pragma once

// K_1 classes of finite rings via elimination to a unit representative.

#include "ncl/matrix.hpp"
#include "ncl/ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ncl {

/// Elimination transcript: replaying moves on the source matrix yields diag(rep, 1, ..., 1).
struct K1Certificate {
    std::size_t size = 0;
    std::vector<ElemMove> moves;
};

/// A class in K_1(R), R possibly a series ring Lambda[T]/(T^m).
struct K1Class {
    RingPtr ring;
    RingElem rep;
    /// Ordered unit factors whose product is rep (kept for noncommutative rings).
    std::vector<RingElem> factors;
    std::optional<K1Certificate> certificate;

    K1Class(RingPtr r, RingElem u) : ring(std::move(r)), rep(std::move(u)) {}
};

K1Class k1_one(const RingPtr& ring);
K1Class k1_of_unit(const RingElem& u);
/// Throws NotInvertible or PivotSearchExhausted.
K1Class k1_of_matrix(const Matrix& m, bool keep_certificate = false);
/// Replays the moves on `m`, returning the resulting matrix.
Matrix k1_replay(const Matrix& m, const K1Certificate& cert);
/// True when the replay ends at diag(rep, 1, ..., 1).
bool k1_certificate_valid(const Matrix& m, const K1Certificate& cert, const RingElem& rep);

K1Class k1_mul(const K1Class& a, const K1Class& b);
K1Class k1_inverse(const K1Class& a);
/// Image under a hom (coefficientwise for series rings).
K1Class k1_map(const K1Class& a, const RingHom& h);

/// Determinant value; commutative rings only.
RingElem k1_det(const K1Class& c);

/// Subgroup of R^x generated by (1 + ab)(1 + ba)^{-1}, as sorted unit indices of `units`.
std::vector<std::size_t> k1_vaserstein_closure(const UnitGroup& units);
/// Memoized closure for small rings; elements of the subgroup.
std::vector<RingElem> k1_vaserstein_closure(const RingPtr& ring);

enum class VerdictKind { EqualCertified, EqualOnAllInvariants, Distinguished };

struct Verdict {
    VerdictKind kind = VerdictKind::EqualCertified;
    std::string detail;
};

const char* verdict_name(VerdictKind k);

/// Layered equality test; extra homs should have commutative targets.
Verdict k1_equal(const K1Class& a, const K1Class& b, const std::vector<RingHom>& homs = {});

} // namespace ncl
