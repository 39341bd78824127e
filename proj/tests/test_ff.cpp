#include "doctest.h"

#include "ncl/error.hpp"
#include "ncl/ff.hpp"

#include <random>
#include <set>

using namespace ncl;

TEST_CASE("field construction picks the smallest modulus") {
    CHECK(FqField::make(2, 1).modulus() == std::vector<std::uint32_t>{0, 1});
    CHECK(FqField::make(5, 1).modulus() == std::vector<std::uint32_t>{0, 1});
    // x^3 + x + 1: the first irreducible cubic over F_2 in code order
    CHECK(FqField::make(2, 3).modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});
    CHECK_THROWS_AS(FqField::make(4, 1), Error);
}

TEST_CASE("irreducibility agrees with a root-free scan for cubics") {
    // a cubic over F_2 is irreducible iff it has no root
    for (std::uint32_t c = 0; c < 8; ++c) {
        std::vector<std::uint32_t> f{c & 1, (c >> 1) & 1, (c >> 2) & 1, 1};
        bool has_root = false;
        for (std::uint32_t x = 0; x < 2; ++x) {
            std::uint32_t v = (f[0] + f[1] * x + f[2] * x * x + x * x * x) % 2;
            has_root = has_root || v == 0;
        }
        CHECK(poly_is_irreducible_mod_p(f, 2) == !has_root);
    }
}

TEST_CASE("extension embeddings") {
    const FqField f2 = FqField::make(2, 1);
    CHECK(f2.extend(1).order() == 2);
    const FqField f4 = f2.extend(2);
    CHECK(f4.order() == 4);
    CHECK(f4.embed(f2.zero()).is_zero());
    CHECK(f4.embed(f2.one()).is_one());

    const FqField f5 = FqField::make(5, 1);
    const FqField f25 = f5.extend(2);
    const FqElem two = f25.embed(f5.from_int(2));
    CHECK(ff_pow(two, 5) == two);
    CHECK(f25.restrict_to_base(two) == std::optional<FqElem>(f5.from_int(2)));
    CHECK_FALSE(f25.restrict_to_base(f25.generator()).has_value());

    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const FqElem a = f5.from_int(static_cast<std::int64_t>(rng() % 5));
        const FqElem b = f5.from_int(static_cast<std::int64_t>(rng() % 5));
        CHECK(f25.embed(a + b) == f25.embed(a) + f25.embed(b));
        CHECK(f25.embed(a * b) == f25.embed(a) * f25.embed(b));
    }
}

TEST_CASE("powers and orders") {
    const FqField f8 = FqField::make(2, 3);
    CHECK(ff_pow(f8.zero(), 5).is_zero());
    CHECK_THROWS_AS(ff_pow(f8.zero(), -1), Error);
    const FqElem x = f8.generator();
    CHECK(ff_pow(x, 7).is_one());
    for (int k = 1; k < 7; ++k) CHECK_FALSE(ff_pow(x, k).is_one());
    CHECK(ff_order(x) == 7);
    for (const FqElem& a : FqField::make(3, 2).enumerate())
        if (!a.is_zero()) CHECK(ff_pow(a, 8).is_one());
}

TEST_CASE("frobenius is a ring map") {
    const FqField f = FqField::make(3, 3);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const std::uint32_t a = static_cast<std::uint32_t>(rng() % f.order());
        const std::uint32_t b = static_cast<std::uint32_t>(rng() % f.order());
        CHECK(f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b)));
        CHECK(f.frobenius(f.mul(a, b)) == f.mul(f.frobenius(a), f.frobenius(b)));
        CHECK(f.frobenius(a) == f.pow(a, 3));
    }
}

TEST_CASE("norms") {
    const FqField f5 = FqField::make(5, 1);
    const FqField f25 = f5.extend(2);
    const FqElem three = f5.from_int(3);
    CHECK(ff_norm(f5.from_int(3), f5) == three);
    CHECK(ff_norm(f25.zero(), f5).is_zero());
    const FqElem g = f25.primitive();
    CHECK(ff_order(g) == 24);
    CHECK(ff_order(ff_norm(g, f5)) == 4);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const FqElem a = f25.from_code(static_cast<std::uint32_t>(rng() % 25));
        const FqElem b = f25.from_code(static_cast<std::uint32_t>(rng() % 25));
        CHECK(ff_norm(a * b, f5) == ff_norm(a, f5) * ff_norm(b, f5));
    }
}

TEST_CASE("enumeration") {
    auto codes = [](const FqField& f) {
        std::vector<std::uint32_t> v;
        for (const auto& e : f.enumerate()) v.push_back(e.code());
        return v;
    };
    CHECK(codes(FqField::make(2, 1)) == std::vector<std::uint32_t>{0, 1});
    CHECK(codes(FqField::make(3, 1)) == std::vector<std::uint32_t>{0, 1, 2});
    const auto f4 = FqField::make(2, 2).enumerate();
    REQUIRE(f4.size() == 4);
    CHECK(f4[0].is_zero());
    std::set<std::uint32_t> all;
    for (const auto& a : f4)
        for (const auto& b : f4) all.insert((a + b).code());
    CHECK(all.size() == 4);
}

TEST_CASE("discrete logs in mu_r") {
    const FqField f5 = FqField::make(5, 1);
    const FqElem zeta = f5.from_int(2);
    CHECK(ff_dlog_mu(f5.one(), zeta, 4) == 0);
    CHECK(ff_dlog_mu(zeta, zeta, 4) == 1);
    CHECK(ff_dlog_mu(f5.from_int(4), zeta, 4) == 2);
    CHECK(ff_order(ff_root_of_unity(f5, 4)) == 4);
    CHECK_THROWS_AS(ff_root_of_unity(f5, 3), Error);
}
