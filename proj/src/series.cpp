#include "ncl/series.hpp"

#include "ncl/error.hpp"

namespace ncl {

TruncSeries::TruncSeries(RingElem elem) : elem_(std::move(elem)) {
    NCL_REQUIRE(elem_.ring()->kind() == RingKind::Series, Errc::InvalidInput, "not a series");
}

TruncSeries TruncSeries::zero(const RingPtr& base, int m) { return TruncSeries(Ring::series(base, m)->zero()); }

TruncSeries TruncSeries::one(const RingPtr& base, int m) { return TruncSeries(Ring::series(base, m)->one()); }

TruncSeries TruncSeries::from_coeffs(const RingPtr& base, int m, const std::vector<RingElem>& coeffs) {
    return TruncSeries(make_series_elem(Ring::series(base, m), coeffs));
}

TruncSeries TruncSeries::from_ints(const RingPtr& base, int m, const std::vector<std::int64_t>& coeffs) {
    std::vector<RingElem> c;
    for (auto v : coeffs) c.push_back(base->from_int(v));
    return from_coeffs(base, m, c);
}

TruncSeries TruncSeries::monomial(const RingPtr& base, int m, const RingElem& c, int k) {
    std::vector<RingElem> coeffs(static_cast<std::size_t>(m), base->zero());
    if (k < m) coeffs[static_cast<std::size_t>(k)] = c;
    return from_coeffs(base, m, coeffs);
}

std::vector<RingElem> TruncSeries::coeffs() const {
    std::vector<RingElem> out;
    for (int k = 0; k < m(); ++k) out.push_back(coeff(k));
    return out;
}

namespace {
void check_pair(const TruncSeries& f, const TruncSeries& g) {
    NCL_REQUIRE(f.base()->same(*g.base()), Errc::RingMismatch, f.base()->describe() + " vs " + g.base()->describe());
    NCL_REQUIRE(f.m() == g.m(), Errc::TruncationMismatch,
            "T^" + std::to_string(f.m()) + " vs T^" + std::to_string(g.m()));
}
} // namespace

TruncSeries ts_add(const TruncSeries& f, const TruncSeries& g) {
    check_pair(f, g);
    return TruncSeries(f.elem() + g.elem());
}

TruncSeries ts_sub(const TruncSeries& f, const TruncSeries& g) {
    check_pair(f, g);
    return TruncSeries(f.elem() - g.elem());
}

TruncSeries ts_mul(const TruncSeries& f, const TruncSeries& g) {
    check_pair(f, g);
    return TruncSeries(f.elem() * g.elem());
}

TruncSeries ts_inv(const TruncSeries& f) {
    NCL_REQUIRE(f.coeff(0).is_unit(), Errc::NonUnitConstantTerm, "constant term " + f.coeff(0).to_string());
    const auto& base = f.base();
    const int m = f.m();
    const RingElem c0inv = f.coeff(0).inverse();
    // right inverse: f g = 1
    std::vector<RingElem> g{c0inv};
    for (int n = 1; n < m; ++n) {
        RingElem acc = base->zero();
        for (int k = 1; k <= n; ++k) acc += f.coeff(k) * g[static_cast<std::size_t>(n - k)];
        g.push_back(-(c0inv * acc));
    }
    // left inverse: h f = 1
    std::vector<RingElem> h{c0inv};
    for (int n = 1; n < m; ++n) {
        RingElem acc = base->zero();
        for (int k = 0; k < n; ++k) acc += h[static_cast<std::size_t>(k)] * f.coeff(n - k);
        h.push_back(-(acc * c0inv));
    }
    NCL_REQUIRE(g == h, Errc::NonUnitConstantTerm, "left and right inverses differ");
    TruncSeries out = TruncSeries::from_coeffs(base, m, g);
    NCL_REQUIRE(ts_mul(f, out).elem().is_one() && ts_mul(out, f).elem().is_one(), Errc::NonUnitConstantTerm,
            "inverse check failed");
    return out;
}

TruncSeries ts_log_derivative(const TruncSeries& f) {
    NCL_REQUIRE(f.base()->is_commutative(), Errc::NoncommutativeRing, "log derivative over " + f.base()->describe());
    const TruncSeries finv = ts_inv(f);
    std::vector<RingElem> d;
    for (int k = 0; k < f.m(); ++k) d.push_back(f.coeff(k) * f.base()->from_int(k));
    return ts_mul(TruncSeries::from_coeffs(f.base(), f.m(), d), finv);
}

TruncSeries ts_truncate(const TruncSeries& f, int m) {
    NCL_REQUIRE(m >= 1 && m <= f.m(), Errc::TruncationMismatch, "cannot truncate to a larger order");
    auto c = f.coeffs();
    c.resize(static_cast<std::size_t>(m), f.base()->zero());
    return TruncSeries::from_coeffs(f.base(), m, c);
}

TruncSeries ts_substitute_power(const TruncSeries& f, int e, int m_out) {
    NCL_REQUIRE(e >= 1, Errc::InvalidInput, "substitution exponent must be positive");
    NCL_REQUIRE((m_out - 1) / e < f.m(), Errc::TruncationMismatch, "source series is too short for the substitution");
    std::vector<RingElem> c(static_cast<std::size_t>(m_out), f.base()->zero());
    for (int k = 0; k * e < m_out; ++k) c[static_cast<std::size_t>(k * e)] = f.coeff(k);
    return TruncSeries::from_coeffs(f.base(), m_out, c);
}

TruncSeries ts_map(const TruncSeries& f, const RingHom& h) { return TruncSeries(h.apply(f.elem())); }

Matrix ts_lift_matrix(const Matrix& a, int m) {
    auto sr = Ring::series(a.ring(), m);
    Matrix out(sr, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, make_series_elem(sr, {a.at(i, j)}));
    return out;
}

Matrix ts_one_minus(const Matrix& a, int d, int m) {
    NCL_REQUIRE(a.square(), Errc::InvalidInput, "Frobenius matrix must be square");
    auto sr = Ring::series(a.ring(), m);
    Matrix out = Matrix::identity(sr, a.rows());
    if (d >= m) return out;
    const auto& base = a.ring();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            std::vector<RingElem> c(static_cast<std::size_t>(d) + 1, base->zero());
            if (i == j) c[0] = base->one();
            c[static_cast<std::size_t>(d)] = -a.at(i, j);
            out.set(i, j, make_series_elem(sr, c));
        }
    return out;
}

Matrix ts_geom_inverse(const Matrix& a, int d, int m) {
    NCL_REQUIRE(a.square() && d >= 1, Errc::InvalidInput, "geometric inverse needs a square matrix and d >= 1");
    const auto& base = a.ring();
    auto sr = Ring::series(base, m);
    const std::size_t n = a.rows();
    Matrix out(sr, n, n);
    Matrix power = Matrix::identity(base, n);
    const std::size_t w = base->width();
    for (int k = 0; k * d < m; ++k) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const auto src = power.entry(i, j);
                std::copy(src.begin(), src.end(),
                          out.entry(i, j).begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(k * d) * w));
            }
        power = power * a;
    }
    NCL_REQUIRE((out * ts_one_minus(a, d, m)).is_identity(), Errc::NotInvertible, "geometric inverse check failed");
    return out;
}

} // namespace ncl
