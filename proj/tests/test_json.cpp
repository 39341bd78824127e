#include "doctest.h"

#include "ncl/error.hpp"
#include "ncl/json_io.hpp"

#include <functional>
#include <random>

using namespace ncl;

namespace {
Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return Errc::InvalidInput;
}
} // namespace

TEST_CASE("fields") {
    CHECK(field_from_json(Json::parse(R"J({"p": 2, "nu": 3})J")).order() == 8);
    CHECK(field_from_json(Json::parse(R"J({"q": 9})J")).order() == 9);
    CHECK(field_from_json(Json(5)).order() == 5);
    CHECK(prime_power(49) == std::pair<std::uint32_t, int>{7, 2});
    CHECK_THROWS_AS(field_from_json(Json(6)), Error);
}

TEST_CASE("rings and elements round trip") {
    for (const char* text : {R"J({"kind": "zmod", "m": 9})J", R"J({"kind": "group_ring", "m": 4, "group": "S3"})J",
                             R"J({"kind": "product", "factors": [{"kind": "zmod", "m": 3}, {"kind": "zmod", "m": 4}]})J"}) {
        const RingPtr r = ring_from_json(Json::parse(text));
        const RingPtr back = ring_from_json(ring_to_json(r));
        CHECK(back->same(*r));
        std::mt19937_64 rng(1);
        for (int i = 0; i < 20; ++i) {
            const RingElem e = r->random(rng);
            CHECK(elem_from_json(r, elem_to_json(e)) == e);
        }
    }
    const RingPtr z9 = Ring::zmod(9);
    const Matrix m = matrix_from_json(z9, Json::parse("[[1, 2], [-1, 10]]"));
    CHECK(m == Matrix::from_ints(z9, 2, 2, {1, 2, 8, 1}));
    CHECK(matrix_from_json(z9, matrix_to_json(m)) == m);
    CHECK_THROWS_AS(ring_from_json(Json::parse(R"J({"kind": "field"})J")), Error);
}

TEST_CASE("polynomials") {
    const FqField f3 = FqField::make(3, 1);
    const Polynomial x = Polynomial::variable(f3, 2, 0), y = Polynomial::variable(f3, 2, 1);
    CHECK(poly_parse(f3, {"x", "y"}, "y^2 - x^3 + x") == y.pow(2) - x.pow(3) + x);
    CHECK(poly_parse(f3, {"x", "y"}, "2*x*y + 4") == Polynomial::constant(f3, 2, 2) * x * y + Polynomial::constant(f3, 2, 1));
    CHECK(poly_from_json(f3, {"x", "y"}, Json::parse(R"J([{"exps": [1, 2], "c": 2}])J")) ==
          Polynomial::constant(f3, 2, 2) * x * y.pow(2));
    CHECK_THROWS_AS(poly_parse(f3, {"x"}, "x + z"), Error);
    CHECK_THROWS_AS(poly_parse(f3, {"x"}, "x^"), Error);
}

TEST_CASE("schemes") {
    const Scheme e = scheme_from_json(Json::parse(
        R"J({"field": 3, "charts": [{"nvars": 2, "vars": ["x", "y"], "eqs": ["y^2 - x^3 + x"]}], "name": "E"})J"));
    CHECK(e.name == "E");
    CHECK(scheme_point_counts(e, 1) == 3);
    const Scheme u = scheme_from_json(Json::parse(R"J({"field": 5, "union": ["point(1)", {"builtin": "point(2)"}]})J"));
    CHECK(scheme_point_counts_upto(u, 2) == std::vector<std::uint64_t>{1, 3});
    CHECK(scheme_point_counts(scheme_from_spec("builtin:Gm", 4), 1) == 3);
    CHECK_THROWS_AS(scheme_from_spec("P1", 4), Error);
}

TEST_CASE("sheaves") {
    const Scheme gm = scheme_from_spec("builtin:Gm", 5);
    const SheafRep chi = sheaf_from_json(
        gm, Json::parse(R"J({"covering": {"kind": "kummer", "r": 4, "f": "x"}, "type": "character", "zeta": 5})J"),
        Json::parse(R"J({"kind": "zmod", "m": 13})J"));
    CHECK(chi.shape == SheafShape::Character);
    CHECK(chi.rho[1] == Matrix::from_ints(Ring::zmod(13), 1, 1, {5}));
    const SheafRep aut = sheaf_from_json(
        gm, Json::parse(R"J({"covering": {"kind": "kummer", "r": 4, "f": "x"}, "type": "character", "zeta": "auto",
                            "ring": {"kind": "zmod", "m": 13}})J"));
    CHECK(aut.zeta->pow(4).is_one());
    CHECK(code_of([&] {
              sheaf_from_json(gm, Json::parse(R"J({"covering": {"kind": "kummer", "r": 3, "f": "x"}, "type": "regular",
                                                 "ring": {"kind": "zmod", "m": 13}})J"));
          }) == Errc::BadKummerOrder);
}

TEST_CASE("reports") {
    const Scheme p1 = scheme_from_spec("builtin:P1", 2);
    const SheafRep f = sheaf_from_json(p1, Json::parse(R"J({"ring": {"kind": "zmod", "m": 9}})J"));
    const LReport r = verify_trace_formula(f, 6, {"table"});
    const Json j = report_to_json(r);
    CHECK(j.at("version") == kReportVersion);
    CHECK(j.at("m") == 6);
    CHECK(j.at("series") == Json::parse("[1, 3, 7, 6, 4, 0]"));
    CHECK(j.at("overall") == "EqualCertified");
    CHECK(j.at("global_sides").at(0).at("method") == "table");
    CHECK_FALSE(j.contains("seconds"));
    CHECK(report_to_json(verify_trace_formula(f, 6, {"table"})).dump() == j.dump());
    CHECK(Json::parse(j.dump()) == j);
}
