#pragma once

// Truncated power series Lambda[T]/(T^m).

#include "ncl/matrix.hpp"
#include "ncl/ring.hpp"

#include <string>
#include <vector>

namespace ncl {

/// A series over a coefficient ring, stored as an element of Ring::series(base, m).
class TruncSeries {
public:
    explicit TruncSeries(RingElem elem);
    static TruncSeries zero(const RingPtr& base, int m);
    static TruncSeries one(const RingPtr& base, int m);
    static TruncSeries from_coeffs(const RingPtr& base, int m, const std::vector<RingElem>& coeffs);
    static TruncSeries from_ints(const RingPtr& base, int m, const std::vector<std::int64_t>& coeffs);
    /// c T^k.
    static TruncSeries monomial(const RingPtr& base, int m, const RingElem& c, int k);

    const RingPtr& base() const { return elem_.ring()->series_base(); }
    const RingPtr& series_ring() const { return elem_.ring(); }
    int m() const { return elem_.ring()->truncation(); }
    RingElem coeff(int k) const { return elem_.component(static_cast<std::size_t>(k)); }
    std::vector<RingElem> coeffs() const;
    const RingElem& elem() const { return elem_; }

    bool operator==(const TruncSeries& o) const { return elem_ == o.elem_; }
    bool operator!=(const TruncSeries& o) const { return !(elem_ == o.elem_); }

    std::string to_string() const { return elem_.to_string(); }

private:
    RingElem elem_;
};

TruncSeries ts_add(const TruncSeries& f, const TruncSeries& g);
TruncSeries ts_sub(const TruncSeries& f, const TruncSeries& g);
TruncSeries ts_mul(const TruncSeries& f, const TruncSeries& g);
/// Throws NonUnitConstantTerm.
TruncSeries ts_inv(const TruncSeries& f);
/// T * f' * f^{-1}; commutative coefficients only.
TruncSeries ts_log_derivative(const TruncSeries& f);
/// Keeps the coefficients below T^m (m <= f.m()).
TruncSeries ts_truncate(const TruncSeries& f, int m);
/// f(T^e) at truncation m_out.
TruncSeries ts_substitute_power(const TruncSeries& f, int e, int m_out);
/// Image of a series under a hom of coefficient rings.
TruncSeries ts_map(const TruncSeries& f, const RingHom& h);

/// sum_{k d < m} A^k T^{k d} as a matrix over Lambda[T]/(T^m); checked against 1 - A T^d.
Matrix ts_geom_inverse(const Matrix& a, int d, int m);
/// 1 - A T^d as a matrix over Lambda[T]/(T^m).
Matrix ts_one_minus(const Matrix& a, int d, int m);
/// Matrix of constants lifted into Lambda[T]/(T^m).
Matrix ts_lift_matrix(const Matrix& a, int m);

} // namespace ncl
