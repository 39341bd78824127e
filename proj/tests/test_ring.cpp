#include "doctest.h"

#include "ncl/error.hpp"
#include "ncl/ring.hpp"

#include <numeric>
#include <random>

using namespace ncl;

namespace {
RingElem c2(const RingPtr& r, std::int64_t a, std::int64_t b) {
    return r->from_int(a) + r->from_int(b) * r->group_element(1);
}
} // namespace

TEST_CASE("descriptors") {
    CHECK(Ring::zmod(9)->size() == 9);
    CHECK(Ring::zmod(9)->is_commutative());
    const RingPtr zc2 = Ring::group_ring(9, GroupTable::cyclic(2));
    CHECK(zc2->size() == 81);
    CHECK(zc2->is_commutative());
    const RingPtr s3 = Ring::group_ring(4, GroupTable::symmetric3());
    CHECK(s3->size() == 4096);
    CHECK_FALSE(s3->is_commutative());
    CHECK(Ring::product({Ring::zmod(3), Ring::zmod(4)})->size() == 12);
    CHECK_THROWS_AS(Ring::zmod(1), Error);
}

TEST_CASE("group tables are validated") {
    CHECK_THROWS_AS(GroupTable({{0, 1}, {0, 1}}), Error);
    const GroupTable s3 = GroupTable::symmetric3();
    CHECK_FALSE(s3.is_abelian());
    CHECK(s3.commutator_subgroup().size() == 3);
    CHECK(GroupTable::quaternion8().cyclic_generator() == -1);
    CHECK(GroupTable::cyclic(4).element_order(GroupTable::cyclic(4).cyclic_generator()) == 4);
}

TEST_CASE("units and inverses") {
    const RingPtr z9 = Ring::zmod(9);
    CHECK(z9->from_int(2).is_unit());
    CHECK(z9->from_int(2).inverse() == z9->from_int(5));
    CHECK_FALSE(z9->from_int(3).is_unit());
    CHECK_THROWS_AS(z9->from_int(3).inverse(), Error);

    const RingPtr r = Ring::group_ring(9, GroupTable::cyclic(2));
    CHECK_FALSE(c2(r, 3, 3).is_unit());
    CHECK(c2(r, 1, 3).is_unit());
    CHECK(c2(r, 1, 3).inverse() == c2(r, 1, -3));

    for (const RingPtr& ring : {r, Ring::group_ring(4, GroupTable::symmetric3()),
                                Ring::product({Ring::zmod(9), Ring::zmod(4)})}) {
        std::mt19937_64 rng(5);
        int seen = 0;
        while (seen < 200) {
            const RingElem a = ring->random(rng);
            if (!a.is_unit()) continue;
            ++seen;
            const RingElem b = a.inverse();
            CHECK((a * b).is_one());
            CHECK((b * a).is_one());
        }
    }
}

TEST_CASE("unit group sizes") {
    CHECK(UnitGroup(Ring::zmod(9)).size() == 6);
    CHECK(UnitGroup(Ring::zmod(4)).size() == 2);
    // Z/9[C2] ~ Z/9 x Z/9 via a + b s -> (a + b, a - b): 6 * 6 units
    const RingPtr r = Ring::group_ring(9, GroupTable::cyclic(2));
    std::size_t brute = 0;
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b)
            if (std::gcd(a + b, 9) == 1 && std::gcd(((a - b) % 9 + 9) % 9, 9) == 1) ++brute;
    CHECK(brute == 36);
    CHECK(UnitGroup(r).size() == brute);
}

TEST_CASE("jacobson radicals") {
    auto values = [](const JacobsonRadical& j) {
        std::vector<std::int64_t> v;
        for (const auto& e : j.elements()) v.push_back(e.values()[0]);
        std::sort(v.begin(), v.end());
        return v;
    };
    CHECK(values(ring_jacobson_radical(Ring::zmod(9))) == std::vector<std::int64_t>{0, 3, 6});
    CHECK(values(ring_jacobson_radical(Ring::zmod(2))) == std::vector<std::int64_t>{0});

    for (std::int64_t m : {4, 8, 9}) {
        const std::int64_t l = m == 9 ? 3 : 2;
        const RingPtr r = Ring::group_ring(m, GroupTable::cyclic(static_cast<int>(l == 2 ? 2 : 3)));
        const auto structural = ring_jacobson_radical(r);
        const auto definitional = ring_jacobson_radical_definitional(r);
        CHECK(structural.structural);
        for (const auto& x : r->enumerate(10'000)) CHECK(structural.contains(x) == definitional.contains(x));
        for (const auto& x : definitional.elements()) CHECK((r->one() + x).is_unit());
    }
    const RingPtr z4c2 = Ring::group_ring(4, GroupTable::cyclic(2));
    CHECK(ring_jacobson_radical_definitional(z4c2).elements().size() == 8);
}

TEST_CASE("homomorphisms") {
    const RingPtr r = Ring::group_ring(9, GroupTable::cyclic(2));
    const RingPtr z9 = Ring::zmod(9);
    const RingHom aug = RingHom::augmentation(r);
    CHECK(aug.apply(c2(r, 1, 3)) == z9->from_int(4));
    const RingHom chi = RingHom::character(r, z9->from_int(8));
    CHECK(chi.apply(c2(r, 5, 2)) == z9->from_int(3));
    CHECK_THROWS_AS(RingHom::character(r, z9->from_int(2)), Error);
    CHECK_THROWS_AS(RingHom::character(Ring::group_ring(9, GroupTable::symmetric3()), z9->from_int(1)), Error);

    const RingPtr s3 = Ring::group_ring(4, GroupTable::symmetric3());
    const RingHom ab = RingHom::abelianization(s3);
    CHECK(ab.target()->size() == 16);
    // transpositions go to the nontrivial class, 3-cycles to the identity
    const GroupTable& g = GroupTable::symmetric3();
    for (int e = 0; e < 6; ++e) {
        const RingElem img = ab.apply(s3->group_element(e));
        const bool odd = g.element_order(e) == 2;
        CHECK(img == (odd ? ab.target()->group_element(1) : ab.target()->one()));
    }

    std::mt19937_64 rng(9);
    for (const RingHom& h : {aug, chi, ab, RingHom::zmod_projection(z9, 3)}) {
        CHECK(h.apply(h.source()->one()).is_one());
        for (int i = 0; i < 50; ++i) {
            const RingElem a = h.source()->random(rng), b = h.source()->random(rng);
            CHECK(h.apply(a + b) == h.apply(a) + h.apply(b));
            CHECK(h.apply(a * b) == h.apply(a) * h.apply(b));
            if (a.is_unit()) CHECK(h.apply(a).is_unit());
        }
    }
}

TEST_CASE("hensel roots of unity") {
    const RingElem z = hensel_root_of_unity(Ring::zmod(13), 4);
    CHECK(z.pow(4).is_one());
    CHECK_FALSE(z.pow(2).is_one());
    const RingElem w = hensel_root_of_unity(Ring::zmod(49), 3);
    CHECK(w.pow(3).is_one());
    CHECK_FALSE(w.is_one());
}
