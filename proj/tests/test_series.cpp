#include "doctest.h"
#include "oracles.hpp"

#include "ncl/error.hpp"
#include "ncl/series.hpp"

#include <random>

using namespace ncl;

namespace {
TruncSeries ints(const RingPtr& r, int m, std::vector<std::int64_t> c) { return TruncSeries::from_ints(r, m, c); }

TruncSeries random_series(const RingPtr& r, int m, std::mt19937_64& rng, bool unit) {
    std::vector<RingElem> c;
    for (int k = 0; k < m; ++k) c.push_back(r->random(rng));
    if (unit)
        while (!c[0].is_unit()) c[0] = r->random(rng);
    return TruncSeries::from_coeffs(r, m, c);
}
} // namespace

TEST_CASE("products") {
    const RingPtr z9 = Ring::zmod(9);
    CHECK(ts_mul(ints(z9, 4, {1, 1}), ints(z9, 4, {1, -1})) == ints(z9, 4, {1, 0, -1}));
    const TruncSeries f = ints(z9, 4, {2, 7, 1, 3});
    CHECK(ts_mul(f, TruncSeries::one(z9, 4)) == f);

    const RingPtr r = Ring::group_ring(4, GroupTable::cyclic(2));
    const RingElem s = r->group_element(1);
    const TruncSeries a = TruncSeries::from_coeffs(r, 4, {r->one(), s});
    const TruncSeries b = TruncSeries::from_coeffs(r, 4, {r->one(), -s});
    CHECK(ts_mul(a, b) == ints(r, 4, {1, 0, -1}));

    CHECK_THROWS_AS(ts_mul(ints(z9, 4, {1}), ints(z9, 5, {1})), Error);
    CHECK_THROWS_AS(ts_mul(ints(z9, 4, {1}), ints(Ring::zmod(3), 4, {1})), Error);
}

TEST_CASE("ring laws over Z/9[C2]") {
    const RingPtr r = Ring::group_ring(9, GroupTable::cyclic(2));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 30; ++i) {
        const auto f = random_series(r, 5, rng, false), g = random_series(r, 5, rng, false),
                   h = random_series(r, 5, rng, false);
        CHECK(ts_mul(ts_mul(f, g), h) == ts_mul(f, ts_mul(g, h)));
        CHECK(ts_mul(f, ts_add(g, h)) == ts_add(ts_mul(f, g), ts_mul(f, h)));
    }
}

TEST_CASE("noncommutative coefficient order is kept") {
    const RingPtr r = Ring::group_ring(3, GroupTable::symmetric3());
    const TruncSeries f = TruncSeries::monomial(r, 3, r->group_element(1), 1);
    const TruncSeries g = TruncSeries::monomial(r, 3, r->group_element(3), 1);
    CHECK(ts_mul(f, g).coeff(2) == r->group_element(1) * r->group_element(3));
    CHECK(ts_mul(f, g) != ts_mul(g, f));
}

TEST_CASE("inverses") {
    const RingPtr z9 = Ring::zmod(9);
    CHECK(ts_inv(TruncSeries::one(z9, 3)) == TruncSeries::one(z9, 3));
    CHECK(ts_inv(ints(z9, 4, {1, -2})) == ints(z9, 4, {1, 2, 4, 8}));
    // 2 + T: c0 = 5, c1 = -5 c0 = 2, c2 = -5 c1 = 8
    const TruncSeries g = ts_inv(ints(z9, 3, {2, 1}));
    CHECK(g == ints(z9, 3, {5, 2, 8}));
    CHECK(ts_mul(g, ints(z9, 3, {2, 1})) == TruncSeries::one(z9, 3));
    CHECK_THROWS_AS(ts_inv(ints(z9, 3, {3, 1})), Error);

    std::mt19937_64 rng(2);
    for (const RingPtr& r : {z9, Ring::group_ring(9, GroupTable::cyclic(2)), Ring::group_ring(4, GroupTable::symmetric3())})
        for (int i = 0; i < 100; ++i) {
            const auto f = random_series(r, 6, rng, true);
            const auto h = ts_inv(f);
            CHECK(ts_mul(f, h) == TruncSeries::one(r, 6));
            CHECK(ts_mul(h, f) == TruncSeries::one(r, 6));
        }
}

TEST_CASE("geometric inverses") {
    const RingPtr z9 = Ring::zmod(9);
    CHECK(ts_geom_inverse(Matrix(z9, 2, 2), 1, 5).is_identity());
    const Matrix u = Matrix::from_ints(z9, 1, 1, {4});
    CHECK(TruncSeries(ts_geom_inverse(u, 1, 4).at(0, 0)) == ints(z9, 4, {1, 4, 16, 64}));
    const Matrix nil = Matrix::from_ints(z9, 2, 2, {0, 1, 0, 0});
    const Matrix g = ts_geom_inverse(nil, 1, 5);
    Matrix expect = ts_lift_matrix(Matrix::identity(z9, 2), 5);
    expect.set(0, 1, TruncSeries::monomial(z9, 5, z9->one(), 1).elem());
    CHECK(g == expect);

    std::mt19937_64 rng(4);
    for (const RingPtr& r : {z9, Ring::group_ring(4, GroupTable::cyclic(2))})
        for (int d = 1; d <= 4; ++d) {
            const Matrix a = Matrix::random(r, 3, 3, rng);
            const Matrix inv = ts_geom_inverse(a, d, 9);
            CHECK((inv * ts_one_minus(a, d, 9)).is_identity());
            CHECK((ts_one_minus(a, d, 9) * inv).is_identity());
        }
}

TEST_CASE("log derivatives") {
    const RingPtr z9 = Ring::zmod(9);
    CHECK(ts_log_derivative(ts_inv(ints(z9, 5, {1, -2}))) == ints(z9, 5, {0, 2, 4, 8, 16}));
    CHECK(ts_log_derivative(TruncSeries::one(z9, 4)) == TruncSeries::zero(z9, 4));
    const auto p1 = TruncSeries::from_ints(z9, 4, oracle::closed_form({}, {1, 2}, 4, 9));
    CHECK(ts_log_derivative(p1) == ints(z9, 4, {0, 3, 5, 0}));
    CHECK_THROWS_AS(ts_log_derivative(TruncSeries::one(Ring::group_ring(3, GroupTable::symmetric3()), 3)), Error);

    // degree-d factors contribute d u^{n/d} at multiples of d
    const auto f = ts_inv(ints(z9, 7, {1, 0, 0, -2}));
    CHECK(ts_log_derivative(f) == ints(z9, 7, {0, 0, 0, 6, 0, 0, 12}));
}

TEST_CASE("truncation compatibility") {
    std::mt19937_64 rng(6);
    const RingPtr r = Ring::group_ring(9, GroupTable::cyclic(2));
    for (int i = 0; i < 20; ++i) {
        const auto f = random_series(r, 7, rng, true), g = random_series(r, 7, rng, true);
        auto cut = [](const TruncSeries& s) { return ts_truncate(s, 6); };
        CHECK(cut(ts_add(f, g)) == ts_add(cut(f), cut(g)));
        CHECK(cut(ts_sub(f, g)) == ts_sub(cut(f), cut(g)));
        CHECK(cut(ts_mul(f, g)) == ts_mul(cut(f), cut(g)));
        CHECK(cut(ts_inv(f)) == ts_inv(cut(f)));
    }
}

TEST_CASE("printing") {
    const RingPtr r = Ring::group_ring(9, GroupTable::cyclic(2));
    const TruncSeries f = TruncSeries::from_coeffs(r, 2, {r->one() + r->from_int(3) * r->group_element(1), r->one()});
    CHECK(f.to_string().find("[1 + 3*s]") != std::string::npos);
    CHECK(f.to_string().find("(mod T^2)") != std::string::npos);
}
