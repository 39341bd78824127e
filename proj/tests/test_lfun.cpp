#include "doctest.h"
#include "oracles.hpp"

#include "ncl/error.hpp"
#include "ncl/lfun.hpp"

#include <map>
#include <random>

using namespace ncl;

namespace {
const FqField& F(std::uint32_t p, int nu = 1) {
    static std::map<std::pair<std::uint32_t, int>, FqField> cache;
    auto it = cache.find({p, nu});
    if (it == cache.end()) it = cache.emplace(std::pair{p, nu}, FqField::make(p, nu)).first;
    return it->second;
}

TruncSeries ints(const RingPtr& r, int m, std::vector<std::int64_t> c) { return TruncSeries::from_ints(r, m, c); }

TruncSeries trivial_l(const std::string& name, const FqField& k, std::int64_t n, int m) {
    return l_series(l_function(sheaf_constant(cov_trivial(scheme_builtin(name, k)), Ring::zmod(n)), m));
}

// log base 2 in F_5^x
int dlog2(int v) {
    int e = 0, x = 1;
    while (x != v) x = x * 2 % 5, ++e;
    return e;
}
} // namespace

TEST_CASE("euler factors") {
    const RingPtr z9 = Ring::zmod(9);
    CHECK(TruncSeries(euler_factor_from_frobenius(Matrix::identity(z9, 1), 1, 4).rep) == ints(z9, 4, {1, 1, 1, 1}));
    CHECK(TruncSeries(euler_factor_from_frobenius(Matrix::from_ints(z9, 1, 1, {2}), 2, 5).rep) ==
          ints(z9, 5, {1, 0, 2, 0, 4}));
    CHECK(euler_factor_from_frobenius(Matrix::from_ints(z9, 1, 1, {2}), 5, 5).rep.is_one());

    const RingPtr z13 = Ring::zmod(13);
    const Scheme gm = scheme_builtin("Gm", F(5));
    const SheafRep chi = sheaf_character(cov_kummer(gm, 4, Polynomial::variable(F(5), 1, 0)), z13, z13->from_int(5));
    for (const auto& p : scheme_closed_points(gm, 1)) {
        if (p.rep[0] != 2) continue;
        // geometric class 3: 5^3 = 8 mod 13
        CHECK(TruncSeries(euler_factor(chi, p, 4).rep) == ts_inv(ints(z13, 4, {1, -8})));
    }
}

TEST_CASE("block form") {
    const RingPtr z9 = Ring::zmod(9);
    const Matrix u = Matrix::from_ints(z9, 1, 1, {4});
    const BlockEulerFactor b1 = euler_factor_block_from_frobenius(u, 1, 5);
    CHECK(b1.source == ts_one_minus(u, 1, 5));
    CHECK(b1.verdict.kind == VerdictKind::EqualCertified);

    const BlockEulerFactor b2 = euler_factor_block_from_frobenius(u, 2, 5);
    CHECK(b2.source.rows() == 2);
    CHECK(k1_certificate_valid(b2.source, b2.certificate, k1_inverse(b2.cls).rep));
    CHECK(TruncSeries(k1_inverse(b2.cls).rep) == ints(z9, 5, {1, 0, -4}));
    CHECK(b2.verdict.kind == VerdictKind::EqualCertified);

    std::mt19937_64 rng(31);
    const RingPtr r = Ring::group_ring(9, GroupTable::cyclic(2));
    for (int i = 0; i < 5; ++i) {
        Matrix a = Matrix::random(r, 2, 2, rng);
        while (!matrix_is_invertible(a)) a = Matrix::random(r, 2, 2, rng);
        const BlockEulerFactor b = euler_factor_block_from_frobenius(a, 3, 7);
        CHECK(b.verdict.kind == VerdictKind::EqualCertified);
        CHECK(k1_certificate_valid(b.source, b.certificate, k1_inverse(b.cls).rep));
    }
}

TEST_CASE("l-functions of constant sheaves") {
    CHECK(trivial_l("point(2)", F(2), 9, 5) == ints(Ring::zmod(9), 5, {1, 0, 1, 0, 1}));
    CHECK(trivial_l("A1", F(2), 9, 4) == ints(Ring::zmod(9), 4, {1, 2, 4, 8}));
    CHECK(trivial_l("P1", F(3), 9, 3) == ints(Ring::zmod(9), 3, {1, 4, 4}));
    CHECK(trivial_l("P1", F(2), 9, 3) == ints(Ring::zmod(9), 3, {1, 3, 7}));
    CHECK(trivial_l("A1", F(3), 4, 6) == ints(Ring::zmod(4), 6, oracle::closed_form({}, {3}, 6, 4)));
    CHECK(trivial_l("Gm", F(2), 9, 6) == ints(Ring::zmod(9), 6, oracle::closed_form({1}, {2}, 6, 9)));

    ProductStats st;
    l_function(sheaf_constant(cov_trivial(scheme_builtin("A1", F(2))), Ring::zmod(9)), 5, &st);
    CHECK(st.closed_points == std::vector<std::uint64_t>{2, 1, 2, 3});
}

TEST_CASE("subfield views") {
    const RingPtr z9 = Ring::zmod(9);
    const FqField& f4 = F(2, 2);
    const FqField f4t = F(2).extend(2);
    const SheafRep pt = sheaf_constant(cov_trivial(scheme_builtin("point(1)", f4t)), z9);
    CHECK(l_series(l_subfield_view(pt, F(2), 6)) == ints(z9, 6, {1, 0, 1, 0, 1, 0}));
    const SheafRep same = sheaf_constant(cov_trivial(scheme_builtin("Gm", f4)), z9);
    CHECK(l_subfield_view(same, f4, 6).rep == l_function(same, 6).rep);

    const SheafRep gm = sheaf_constant(cov_trivial(scheme_builtin("Gm", f4t)), z9);
    const TruncSeries big = l_series(l_function(gm, 3));
    CHECK(l_series(l_subfield_view(gm, F(2), 6)) == ts_substitute_power(big, 2, 6));
}

TEST_CASE("power sums") {
    const RingPtr z9 = Ring::zmod(9);
    CHECK(power_sums(sheaf_constant(cov_trivial(scheme_builtin("Gm", F(5))), z9), 3).coeff(1).values()[0] == 4);
    CHECK(power_sums(sheaf_constant(cov_trivial(scheme_builtin("P1", F(2))), z9), 3).coeff(2).values()[0] == 5);

    // log derivative of L is the power-sum series
    const SheafRep reg = sheaf_regular(cov_kummer(scheme_builtin("Gm", F(5)), 4, Polynomial::variable(F(5), 1, 0)),
                                       Ring::zmod(13));
    CHECK(ts_log_derivative(l_series(l_function(reg, 6))) == power_sums(reg, 6));
}

TEST_CASE("character sums fix the frobenius sign") {
    const RingPtr z13 = Ring::zmod(13);
    const Scheme a1 = scheme_builtin("A1", F(5));
    const Scheme gm = scheme_builtin("Gm", F(5));
    auto chi = [](int v) {  // 5^{geometric class of v}
        std::int64_t c = 1;
        for (int g = (4 - dlog2(v)) % 4; g > 0; --g) c = c * 5 % 13;
        return c;
    };

    // f = 2 on A1: n = 1 sums chi(2) five times; n = 2 sums chi(N(2)) = chi(4) 25 times
    const SheafRep c = sheaf_character(cov_kummer(a1, 4, Polynomial::constant(F(5), 1, 2)), z13, z13->from_int(5));
    const TruncSeries ps = power_sums(c, 3);
    CHECK(ps.coeff(1).values()[0] == oracle::md(5 * chi(2), 13));
    CHECK(ps.coeff(2).values()[0] == oracle::md(25 * chi(4), 13));
    CHECK(ps.coeff(1).values()[0] != oracle::md(5 * 5, 13));

    // f = x on Gm
    const SheafRep cx = sheaf_character(cov_kummer(gm, 4, Polynomial::variable(F(5), 1, 0)), z13, z13->from_int(5));
    std::int64_t s = 0;
    for (int a = 1; a < 5; ++a) s += chi(a);
    CHECK(power_sums(cx, 2).coeff(1).values()[0] == oracle::md(s, 13));
}

TEST_CASE("dimension zero verification") {
    const FqField& f5 = F(5);
    const RingPtr zc2 = Ring::group_ring(9, GroupTable::cyclic(2));
    const Scheme x = scheme_disjoint_union(scheme_builtin("point(1)", f5), scheme_builtin("point(3)", f5));
    const auto c2 = std::make_shared<const GroupTable>(GroupTable::cyclic(2));
    const SheafRep reg = sheaf_regular(cov_table_ordered(x, c2, 3, {1, 1}), zc2);
    const LReport r = verify_trace_formula(reg, 8, {"dim0"});
    REQUIRE(r.global_sides.size() == 1);
    CHECK(r.global_sides[0].verdict.kind == VerdictKind::EqualCertified);

    const SheafRep pt2 = sheaf_constant(cov_trivial(scheme_builtin("point(2)", f5)), Ring::zmod(9));
    CHECK(l_series(global_side_dim0(pt2, 5)) == ints(Ring::zmod(9), 5, {1, 0, 1, 0, 1}));
    CHECK(verify_trace_formula(pt2, 5).overall() == VerdictKind::EqualCertified);

    const SheafRep gm = sheaf_constant(cov_trivial(scheme_builtin("Gm", f5)), Ring::zmod(9));
    CHECK_THROWS_AS(global_side_dim0(gm, 4), Error);
}

TEST_CASE("tabulated global sides") {
    const SheafRep p1 = sheaf_constant(cov_trivial(scheme_builtin("P1", F(2))), Ring::zmod(9));
    const LReport r = verify_trace_formula(p1, 8, {"table"});
    CHECK(r.overall() == VerdictKind::EqualCertified);
    CHECK(table_zeta("Gm", 4) == rational_from_roots({1}, {4}));
}

TEST_CASE("kummer global sides") {
    const RingPtr z13 = Ring::zmod(13);
    const SheafRep reg =
        sheaf_regular(cov_kummer(scheme_builtin("Gm", F(5)), 4, Polynomial::variable(F(5), 1, 0)), z13);
    const LReport r = verify_trace_formula(reg, 6, {"covering-zeta", "character-product"});
    REQUIRE(r.global_sides.size() == 2);
    for (const auto& g : r.global_sides) CHECK(g.verdict.kind == VerdictKind::EqualCertified);
}

TEST_CASE("hypotheses") {
    const SheafRep bad = sheaf_constant(cov_trivial(scheme_builtin("point(2)", F(3))), Ring::zmod(9));
    try {
        verify_trace_formula(bad, 4);
        FAIL("expected PNotInvertible");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PNotInvertible);
    }
    CHECK_FALSE(p_invertible(Ring::group_ring(4, GroupTable::cyclic(2)), 2));
    CHECK(p_invertible(Ring::group_ring(4, GroupTable::cyclic(2)), 3));

    const FqField& f3 = F(3);
    const Polynomial x = Polynomial::variable(f3, 2, 0), y = Polynomial::variable(f3, 2, 1);
    const Scheme e = scheme_affine(f3, 2, {y.pow(2) - x.pow(3) + x}, {});
    const SheafRep fe = sheaf_constant(cov_trivial(e), Ring::zmod(8));
    try {
        verify_trace_formula(fe, 4);
        FAIL("expected NoApplicableMethod");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::NoApplicableMethod);
    }
}

TEST_CASE("truncation coherence") {
    const SheafRep reg =
        sheaf_regular(cov_kummer(scheme_builtin("Gm", F(5)), 4, Polynomial::variable(F(5), 1, 0)), Ring::zmod(13));
    CHECK(ts_truncate(l_series(l_function(reg, 9)), 8) == l_series(l_function(reg, 8)));
}
