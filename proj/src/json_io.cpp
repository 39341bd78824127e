#include "ncl/json_io.hpp"

#include "ncl/arith.hpp"
#include "ncl/error.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ncl {

namespace {

const Json& need(const Json& j, const char* key) {
    NCL_REQUIRE(j.is_object() && j.contains(key), Errc::InvalidInput, std::string("missing field '") + key + "'");
    return j.at(key);
}

std::int64_t as_int(const Json& j, const char* what) {
    NCL_REQUIRE(j.is_number_integer(), Errc::InvalidInput, std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

GroupPtr group_from_json(const Json& j) {
    if (j.is_string()) return std::make_shared<GroupTable>(GroupTable::builtin(j.get<std::string>()));
    const auto table = need(j, "table").get<std::vector<std::vector<int>>>();
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return std::make_shared<GroupTable>(GroupTable(table, labels, j.value("name", std::string())));
}

Json group_to_json(const GroupTable& g) {
    if (!g.name().empty()) {
        try {
            if (GroupTable::builtin(g.name()) == g) return g.name();
        } catch (const Error&) {
        }
    }
    return Json{{"table", g.table()}};
}

std::vector<std::string> default_vars(int n) {
    static const char* names[] = {"x", "y", "z", "w"};
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back(n <= 4 ? names[i] : "x" + std::to_string(i));
    return v;
}

} // namespace

std::pair<std::uint32_t, int> prime_power(std::uint64_t q) {
    NCL_REQUIRE(q >= 2, Errc::NonPrimeCharacteristic, "field order must be at least 2");
    const auto ps = prime_divisors(q);
    NCL_REQUIRE(ps.size() == 1, Errc::NonPrimeCharacteristic, std::to_string(q) + " is not a prime power");
    int nu = 0;
    for (std::uint64_t r = q; r > 1; r /= ps[0]) ++nu;
    return {static_cast<std::uint32_t>(ps[0]), nu};
}

// Fields and rings

FqField field_from_json(const Json& j) {
    if (j.is_number_integer()) {
        auto [p, nu] = prime_power(j.get<std::uint64_t>());
        return FqField::make(p, nu);
    }
    FqField f = j.contains("q") ? field_from_json(j.at("q"))
                                : FqField::make(static_cast<std::uint32_t>(as_int(need(j, "p"), "p")),
                                                static_cast<int>(j.contains("nu") ? as_int(j.at("nu"), "nu") : 1));
    if (j.contains("modulus")) {
        const auto mod = j.at("modulus").get<std::vector<std::uint32_t>>();
        NCL_REQUIRE(mod == f.modulus(), Errc::InvalidInput, "only the canonical modulus is supported");
    }
    return f;
}

Json field_to_json(const FqField& f) { return Json{{"p", f.p()}, {"nu", f.nu()}, {"modulus", f.modulus()}}; }

RingPtr ring_from_json(const Json& j) {
    const std::string kind = need(j, "kind").get<std::string>();
    if (kind == "zmod") return Ring::zmod(as_int(need(j, "m"), "m"));
    if (kind == "group_ring") return Ring::group_ring(as_int(need(j, "m"), "m"), group_from_json(need(j, "group")));
    if (kind == "product") {
        std::vector<RingPtr> fs;
        for (const auto& f : need(j, "factors")) fs.push_back(ring_from_json(f));
        return Ring::product(std::move(fs));
    }
    if (kind == "series") return Ring::series(ring_from_json(need(j, "base")), static_cast<int>(as_int(need(j, "m"), "m")));
    fail(Errc::InvalidInput, "unknown ring kind '" + kind + "'");
}

Json ring_to_json(const RingPtr& r) {
    switch (r->kind()) {
    case RingKind::ZMod: return Json{{"kind", "zmod"}, {"m", r->modulus()}};
    case RingKind::GroupRing:
        return Json{{"kind", "group_ring"}, {"m", r->modulus()}, {"group", group_to_json(*r->group())}};
    case RingKind::Product: {
        Json fs = Json::array();
        for (const auto& f : r->factors()) fs.push_back(ring_to_json(f));
        return Json{{"kind", "product"}, {"factors", fs}};
    }
    case RingKind::Series:
        return Json{{"kind", "series"}, {"base", ring_to_json(r->series_base())}, {"m", r->truncation()}};
    }
    return Json();
}

RingElem elem_from_json(const RingPtr& r, const Json& j) {
    if (j.is_number_integer()) return r->from_int(j.get<std::int64_t>());
    NCL_REQUIRE(j.is_array(), Errc::InvalidInput, "ring element must be an integer or an array");
    switch (r->kind()) {
    case RingKind::ZMod:
    case RingKind::GroupRing: return r->from_values(j.get<std::vector<std::int64_t>>());
    case RingKind::Product: {
        NCL_REQUIRE(j.size() == r->factors().size(), Errc::InvalidInput, "product element needs one part per factor");
        std::vector<RingElem> parts;
        for (std::size_t i = 0; i < j.size(); ++i) parts.push_back(elem_from_json(r->factors()[i], j[i]));
        return make_product_elem(r, parts);
    }
    case RingKind::Series: {
        std::vector<RingElem> c;
        for (const auto& x : j) c.push_back(elem_from_json(r->series_base(), x));
        c.resize(static_cast<std::size_t>(r->truncation()), r->series_base()->zero());
        return make_series_elem(r, c);
    }
    }
    fail(Errc::InvalidInput, "bad ring element");
}

Json elem_to_json(const RingElem& e) {
    const auto& r = e.ring();
    switch (r->kind()) {
    case RingKind::ZMod: return e.values()[0];
    case RingKind::GroupRing: return e.values();
    case RingKind::Product:
    case RingKind::Series: {
        const std::size_t n = r->kind() == RingKind::Product ? r->factors().size()
                                                              : static_cast<std::size_t>(r->truncation());
        Json a = Json::array();
        for (std::size_t i = 0; i < n; ++i) a.push_back(elem_to_json(e.component(i)));
        return a;
    }
    }
    return Json();
}

Matrix matrix_from_json(const RingPtr& r, const Json& j) {
    NCL_REQUIRE(j.is_array() && !j.empty() && j[0].is_array(), Errc::InvalidInput, "matrix must be a list of rows");
    Matrix m(r, j.size(), j[0].size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        NCL_REQUIRE(j[i].is_array() && j[i].size() == m.cols(), Errc::InvalidInput, "ragged matrix");
        for (std::size_t k = 0; k < m.cols(); ++k) m.set(i, k, elem_from_json(r, j[i][k]));
    }
    return m;
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(elem_to_json(m.at(i, k)));
        rows.push_back(row);
    }
    return rows;
}

// Polynomials

Polynomial poly_parse(const FqField& base, const std::vector<std::string>& vars, const std::string& text) {
    const int n = static_cast<int>(vars.size());
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto number = [&] {
        std::int64_t v = 0;
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            v = v * 10 + (text[pos++] - '0');
        NCL_REQUIRE(pos > start, Errc::InvalidInput, "expected a number in '" + text + "'");
        return v;
    };
    auto factor = [&]() -> Polynomial {
        skip();
        NCL_REQUIRE(pos < text.size(), Errc::InvalidInput, "unexpected end of '" + text + "'");
        Polynomial f = Polynomial::constant(base, n, 1);
        if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
            f = Polynomial::constant(base, n, number());
        } else {
            std::size_t start = pos;
            while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
            const std::string name = text.substr(start, pos - start);
            int idx = -1;
            for (int i = 0; i < n; ++i)
                if (vars[static_cast<std::size_t>(i)] == name) idx = i;
            NCL_REQUIRE(idx >= 0, Errc::InvalidInput, "unknown variable '" + name + "' in '" + text + "'");
            f = Polynomial::variable(base, n, idx);
        }
        skip();
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            skip();
            f = f.pow(static_cast<int>(number()));
        }
        return f;
    };
    Polynomial acc(base, n);
    skip();
    bool first = true;
    while (pos < text.size()) {
        int sign = 1;
        skip();
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
        } else {
            NCL_REQUIRE(first, Errc::InvalidInput, "expected + or - in '" + text + "'");
        }
        Polynomial term = factor();
        skip();
        while (pos < text.size() && text[pos] == '*') {
            ++pos;
            term = term * factor();
            skip();
        }
        acc = sign > 0 ? acc + term : acc - term;
        first = false;
    }
    NCL_REQUIRE(!first, Errc::InvalidInput, "empty polynomial");
    return acc;
}

Polynomial poly_from_json(const FqField& base, const std::vector<std::string>& vars, const Json& j) {
    if (j.is_string()) return poly_parse(base, vars, j.get<std::string>());
    if (j.is_number_integer()) return Polynomial::constant(base, static_cast<int>(vars.size()), j.get<std::int64_t>());
    NCL_REQUIRE(j.is_array(), Errc::InvalidInput, "polynomial must be a string or a list of terms");
    std::vector<Term> terms;
    for (const auto& t : j) {
        Term term;
        term.exps = need(t, "exps").get<std::vector<int>>();
        term.coeff = t.contains("code") ? t.at("code").get<std::uint32_t>()
                                        : base.from_int_code(as_int(need(t, "c"), "coefficient"));
        terms.push_back(std::move(term));
    }
    return Polynomial::from_terms(base, static_cast<int>(vars.size()), terms);
}

// Schemes

namespace {

Scheme scheme_over(const FqField& base, const Json& j) {
    if (j.is_string()) return scheme_builtin(j.get<std::string>(), base);
    Scheme s{base, {}, j.value("name", std::string())};
    if (j.contains("builtin")) {
        s = scheme_builtin(j.at("builtin").get<std::string>(), base);
    } else if (j.contains("union")) {
        bool first = true;
        for (const auto& part : j.at("union")) {
            Scheme p = scheme_over(base, part);
            s = first ? p : scheme_disjoint_union(s, p);
            first = false;
        }
        NCL_REQUIRE(!first, Errc::InvalidInput, "empty union");
    } else {
        for (const auto& c : need(j, "charts")) {
            const int nv = static_cast<int>(as_int(need(c, "nvars"), "nvars"));
            const auto vars = c.contains("vars") ? c.at("vars").get<std::vector<std::string>>() : default_vars(nv);
            NCL_REQUIRE(static_cast<int>(vars.size()) == nv, Errc::InvalidInput, "vars and nvars disagree");
            Chart ch;
            ch.nvars = nv;
            for (const auto& e : c.value("eqs", Json::array())) ch.eqs.push_back(poly_from_json(base, vars, e));
            for (const auto& e : c.value("neqs", Json::array())) ch.neqs.push_back(poly_from_json(base, vars, e));
            s.charts.push_back(std::move(ch));
        }
    }
    if (j.contains("name")) s.name = j.at("name").get<std::string>();
    if (s.name.empty()) s.name = "X";
    return s;
}

} // namespace

Scheme scheme_from_json(const Json& j) {
    NCL_REQUIRE(j.is_object(), Errc::InvalidInput, "scheme must be an object");
    return scheme_over(field_from_json(need(j, "field")), j);
}

Scheme scheme_from_spec(const std::string& spec, std::uint64_t q) {
    NCL_REQUIRE(spec.rfind("builtin:", 0) == 0, Errc::InvalidInput, "expected builtin:<name>, got '" + spec + "'");
    auto [p, nu] = prime_power(q);
    return scheme_builtin(spec.substr(8), FqField::make(p, nu));
}

// Sheaves

SheafRep sheaf_from_json(const Scheme& x, const Json& j, const Json& ring_fallback) {
    const Json cj = j.value("covering", Json{{"kind", "trivial"}});
    const std::string ck = need(cj, "kind").get<std::string>();
    std::optional<GaloisCovering> cov;
    if (ck == "trivial") {
        cov = cov_trivial(x);
    } else if (ck == "kummer") {
        const int r = static_cast<int>(as_int(need(cj, "r"), "r"));
        NCL_REQUIRE(!x.charts.empty(), Errc::InvalidInput, "empty scheme");
        const int nv = x.charts[0].nvars;
        const auto vars = cj.contains("vars") ? cj.at("vars").get<std::vector<std::string>>() : default_vars(nv);
        cov = cov_kummer(x, r, poly_from_json(x.base, vars, need(cj, "f")));
    } else if (ck == "table") {
        GroupPtr g = group_from_json(need(cj, "group"));
        if (cj.contains("classes")) {
            const auto cls = cj.at("classes").get<std::vector<int>>();
            cov = cov_table_ordered(x, g, static_cast<int>(as_int(need(cj, "max_degree"), "max_degree")), cls);
        } else {
            std::vector<std::pair<ClosedPoint, int>> pts;
            for (const auto& p : need(cj, "points")) {
                const int deg = static_cast<int>(as_int(need(p, "degree"), "degree"));
                ClosedPoint pt{deg, static_cast<int>(p.value("chart", 0)), x.base.extend(deg), {}};
                pt.rep = need(p, "rep").get<std::vector<std::uint32_t>>();
                pts.emplace_back(pt, static_cast<int>(as_int(need(p, "class"), "class")));
            }
            cov = cov_table(x, g, pts);
        }
    } else {
        fail(Errc::InvalidInput, "unknown covering kind '" + ck + "'");
    }

    const std::string type = j.value("type", std::string("constant"));
    if (type == "group_ring") return sheaf_group_ring(*cov, as_int(need(j, "m"), "m"));
    const Json rj = j.contains("ring") ? j.at("ring") : ring_fallback;
    NCL_REQUIRE(!rj.is_null(), Errc::InvalidInput, "sheaf needs a coefficient ring");
    const RingPtr ring = ring_from_json(rj);
    if (type == "constant") return sheaf_constant(*cov, ring, static_cast<std::size_t>(j.value("rank", 1)));
    if (type == "regular") return sheaf_regular(*cov, ring);
    if (type == "character") {
        const Json zj = j.value("zeta", Json("auto"));
        RingElem z = zj.is_string() ? hensel_root_of_unity(ring, cov->r) : elem_from_json(ring, zj);
        const int power = j.value("power", 1);
        if (power != 1) {
            Matrix gen(ring, 1, 1);
            gen.set(0, 0, z.pow(power));
            SheafRep s = sheaf_from_generator(*cov, gen);
            s.label = "character(" + z.to_string() + "^" + std::to_string(power) + ")";
            return s;
        }
        return sheaf_character(*cov, ring, z);
    }
    if (type == "generator") return sheaf_from_generator(*cov, matrix_from_json(ring, need(j, "generator")));
    if (type == "rho") {
        std::vector<Matrix> rho;
        for (const auto& m : need(j, "rho")) rho.push_back(matrix_from_json(ring, m));
        return sheaf_custom(*cov, std::move(rho));
    }
    fail(Errc::InvalidInput, "unknown sheaf type '" + type + "'");
}

// Reports

Json k1_to_json(const K1Class& c) {
    Json j{{"ring", c.ring->describe()}, {"rep", elem_to_json(c.rep)}};
    if (!c.ring->is_commutative()) j["factors"] = c.factors.size();
    if (c.certificate) j["certificate_moves"] = c.certificate->moves.size();
    return j;
}

Json verdict_to_json(const Verdict& v) { return Json{{"verdict", verdict_name(v.kind)}, {"detail", v.detail}}; }

Json report_to_json(const LReport& r, bool timing) {
    Json j;
    j["version"] = kReportVersion;
    j["scheme"] = r.scheme;
    j["sheaf"] = r.sheaf;
    j["ring"] = ring_to_json(r.ring);
    j["m"] = r.m;
    j["euler_product"] = k1_to_json(r.euler_product);
    if (r.series_form) j["series"] = elem_to_json(r.series_form->elem());
    j["closed_points"] = r.stats.closed_points;
    Json sides = Json::array();
    for (const auto& g : r.global_sides) {
        Json s{{"method", g.method}, {"value", k1_to_json(g.value)}};
        s.update(verdict_to_json(g.verdict));
        s["note"] = g.note;
        sides.push_back(s);
    }
    j["global_sides"] = sides;
    if (!r.global_sides.empty()) j["overall"] = verdict_name(r.overall());
    if (timing) j["seconds"] = r.seconds;
    return j;
}

Json closed_points_to_json(const Scheme& s, int max_deg) {
    Json pts = Json::array();
    for (const auto& p : scheme_closed_points(s, max_deg))
        pts.push_back(Json{{"degree", p.degree}, {"chart", p.chart}, {"rep", p.rep}});
    return pts;
}

Json json_load(const std::string& text_or_path) {
    std::size_t i = 0;
    while (i < text_or_path.size() && std::isspace(static_cast<unsigned char>(text_or_path[i]))) ++i;
    try {
        if (i < text_or_path.size() && (text_or_path[i] == '{' || text_or_path[i] == '['))
            return Json::parse(text_or_path);
        std::ifstream in(text_or_path);
        NCL_REQUIRE(in.good(), Errc::InvalidInput, "cannot read '" + text_or_path + "'");
        return Json::parse(in);
    } catch (const Json::exception& e) {
        fail(Errc::InvalidInput, std::string("malformed JSON: ") + e.what());
    }
}

} // namespace ncl
