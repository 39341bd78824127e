#include "ncl/lfun.hpp"

#include "ncl/arith.hpp"
#include "ncl/error.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>

namespace ncl {

namespace {

RingElem t_power(const RingPtr& sr, const RingElem& c, int k) {
    std::vector<RingElem> coeffs(static_cast<std::size_t>(sr->truncation()), sr->series_base()->zero());
    if (k < sr->truncation()) coeffs[static_cast<std::size_t>(k)] = c;
    return make_series_elem(sr, coeffs);
}

RingElem trace(const Matrix& a) {
    RingElem t = a.ring()->zero();
    for (std::size_t i = 0; i < a.rows(); ++i) t += a.at(i, i);
    return t;
}

K1Class class_of_series(const RingPtr& sr, const RingElem& rep) {
    K1Class c(sr, rep);
    if (!sr->is_commutative() && !rep.is_one()) c.factors.push_back(rep);
    return c;
}

} // namespace

// Euler factors

K1Class euler_factor_from_frobenius(const Matrix& a, int d, int m) {
    NCL_REQUIRE(a.square() && d >= 1 && m >= 1, Errc::InvalidInput, "Euler factor needs a square matrix, d, m >= 1");
    const auto sr = Ring::series(a.ring(), m);
    if (d >= m) return k1_one(sr);
    const Matrix geom = ts_geom_inverse(a, d, m);
    K1Class e = k1_inverse(k1_of_matrix(ts_one_minus(a, d, m)));
    if (sr->is_commutative())
        NCL_REQUIRE(k1_of_matrix(geom).rep == e.rep, Errc::InvalidInput,
                    "geometric series and inverse class disagree");
    return e;
}

K1Class euler_factor(const SheafRep& f, const ClosedPoint& x, int m) {
    return euler_factor_from_frobenius(f.frobenius_at(x), x.degree, m);
}

BlockEulerFactor euler_factor_block_from_frobenius(const Matrix& a, int d, int m) {
    NCL_REQUIRE(a.square() && d >= 1 && m >= 1, Errc::InvalidInput, "Euler factor needs a square matrix, d, m >= 1");
    const auto& base = a.ring();
    const auto sr = Ring::series(base, m);
    const std::size_t n = a.rows(), big = n * static_cast<std::size_t>(d);
    const RingElem minus_t = t_power(sr, -base->one(), 1);

    // 1 - Frob T with Frob the block cyclic matrix: block k -> k + 1, last -> first via rho.
    Matrix src = Matrix::identity(sr, big);
    for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(d); ++k)
        for (std::size_t i = 0; i < n; ++i) src.set((k + 1) * n + i, k * n + i, minus_t);
    const std::size_t last = (static_cast<std::size_t>(d) - 1) * n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            RingElem v = src.at(i, last + j) + t_power(sr, -a.at(i, j), 1);
            src.set(i, last + j, v);
        }

    std::vector<ElemMove> moves;
    Matrix cur = src;
    auto record = [&](ElemMove mv) {
        apply_move(cur, mv);
        moves.push_back(std::move(mv));
    };
    // The unitriangular A: row block k += T * row block k-1.
    const RingElem t = t_power(sr, base->one(), 1);
    for (std::size_t k = 1; k < static_cast<std::size_t>(d); ++k)
        for (std::size_t i = 0; i < n; ++i) record(ElemMove::add_row(k * n + i, (k - 1) * n + i, t));
    // Clear the last block column above the diagonal.
    for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(d); ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (a.at(i, j).is_zero()) continue;
                record(ElemMove::add_col(k * n + i, last + j, t_power(sr, a.at(i, j), static_cast<int>(k) + 1)));
            }
    Matrix expect = Matrix::identity(sr, big);
    expect.set_block(last, last, ts_one_minus(a, d, m));
    NCL_REQUIRE(cur == expect, Errc::InvalidInput, "block reduction did not reach diag(1, ..., 1 - rho T^d)");

    K1Class reduced = k1_of_matrix(cur, true);
    for (auto& mv : reduced.certificate->moves) moves.push_back(std::move(mv));
    K1Certificate cert{big, std::move(moves)};
    NCL_REQUIRE(k1_certificate_valid(src, cert, reduced.rep), Errc::PivotSearchExhausted,
                "block certificate does not replay");
    reduced.certificate.reset();

    BlockEulerFactor out{src, std::move(cert), k1_inverse(reduced), {}};
    out.verdict = k1_equal(out.cls, euler_factor_from_frobenius(a, d, m));
    return out;
}

BlockEulerFactor euler_factor_block(const SheafRep& f, const ClosedPoint& x, int m) {
    return euler_factor_block_from_frobenius(f.frobenius_at(x), x.degree, m);
}

// L-functions

namespace {

// Euler product with point degrees scaled by e.
K1Class euler_product(const SheafRep& f, int m, int e, ProductStats* stats) {
    NCL_REQUIRE(m >= 1, Errc::InvalidInput, "truncation must be positive");
    const auto sr = Ring::series(f.ring, m);
    const bool comm = sr->is_commutative();
    K1Class acc = k1_one(sr);
    if (stats) stats->closed_points.clear();
    for (int d = 1; d * e < m; ++d) {
        std::map<int, K1Class> cache;
        std::map<int, std::uint64_t> count;
        std::uint64_t npts = 0;
        scheme_for_each_closed_point(f.covering.base, d, [&](const ClosedPoint& x) {
            ++npts;
            const int g = frob_class(f.covering, x);
            auto it = cache.find(g);
            if (it == cache.end())
                it = cache.emplace(g, euler_factor_from_frobenius(f.rho[static_cast<std::size_t>(g)], d * e, m)).first;
            if (comm)
                ++count[g];
            else
                acc = k1_mul(acc, it->second);
        });
        if (comm)
            for (const auto& [g, k] : count) {
                const RingElem p = cache.at(g).rep.pow(static_cast<std::int64_t>(k));
                acc = K1Class(sr, acc.rep * p);
            }
        if (stats) stats->closed_points.push_back(npts);
    }
    return acc;
}

} // namespace

K1Class l_function(const SheafRep& f, int m, ProductStats* stats) { return euler_product(f, m, 1, stats); }

K1Class l_subfield_view(const SheafRep& f, const FqField& base0, int m) {
    const FqField& base = f.covering.base.base;
    NCL_REQUIRE(base0.p() == base.p() && base.nu() % base0.nu() == 0, Errc::NotInTower,
                "F_" + std::to_string(base0.order()) + " is not a subfield of F_" + std::to_string(base.order()));
    return euler_product(f, m, base.nu() / base0.nu(), nullptr);
}

TruncSeries power_sums(const SheafRep& f, int m) {
    NCL_REQUIRE(f.ring->is_commutative(), Errc::NoncommutativeRing, "power sums over " + f.ring->describe());
    const auto& g = *f.covering.group;
    std::vector<RingElem> c(static_cast<std::size_t>(m), f.ring->zero());
    for (int d = 1; d < m; ++d) {
        std::map<int, std::int64_t> count;
        scheme_for_each_closed_point(f.covering.base, d,
                                     [&](const ClosedPoint& x) { ++count[frob_class(f.covering, x)]; });
        for (const auto& [cls, k] : count)
            for (int n = d; n < m; n += d) {
                const RingElem tr = trace(f.rho[static_cast<std::size_t>(g.power(cls, n / d))]);
                c[static_cast<std::size_t>(n)] += tr * f.ring->from_int(static_cast<std::int64_t>(d) * k);
            }
    }
    return TruncSeries::from_coeffs(f.ring, m, c);
}

TruncSeries l_series(const K1Class& l) {
    NCL_REQUIRE(l.ring->kind() == RingKind::Series, Errc::InvalidInput, "not a class over a series ring");
    return TruncSeries(k1_det(l));
}

// Global sides

K1Class global_side_dim0(const SheafRep& f, int m) {
    const Scheme& x = f.covering.base;
    NCL_REQUIRE(scheme_is_zero_dimensional(x), Errc::NotZeroDimensional, x.name + " is not zero-dimensional");
    int max_deg = 1;
    for (const auto& c : x.charts) {
        int lowest = -1;
        for (const auto& e : c.eqs) {
            if (e.is_zero()) continue;
            const int k = e.degree_in(0);
            lowest = lowest < 0 ? k : std::min(lowest, k);
        }
        max_deg = std::max(max_deg, lowest);
    }
    const auto sr = Ring::series(f.ring, m);
    // Sections over the algebraic closure: one stalk per geometric point, Frobenius
    // moving along each orbit and closing it up with rho(Frob_x).
    std::vector<Matrix> blocks;
    for (const auto& pt : scheme_closed_points(x, max_deg)) {
        const Matrix& rho = f.frobenius_at(pt);
        const std::size_t n = f.rank, d = static_cast<std::size_t>(pt.degree);
        Matrix frob(f.ring, n * d, n * d);
        for (std::size_t k = 0; k + 1 < d; ++k) frob.set_block((k + 1) * n, k * n, Matrix::identity(f.ring, n));
        frob.set_block(0, (d - 1) * n, rho);
        blocks.push_back(ts_one_minus(frob, 1, m));
    }
    if (blocks.empty()) return k1_one(sr);
    return k1_inverse(k1_of_matrix(block_diagonal(blocks)));
}

RationalFunction table_zeta(const std::string& name, std::uint64_t q) {
    const auto qq = static_cast<std::int64_t>(q);
    if (name == "A1") return rational_from_roots({}, {qq});
    if (name == "Gm") return rational_from_roots({1}, {qq});
    if (name == "P1") return rational_from_roots({}, {1, qq});
    fail(Errc::UnsupportedScheme, "no tabulated cohomology for '" + name + "'");
}

K1Class global_side_table(const SheafRep& f, int m) {
    NCL_REQUIRE(f.is_constant(), Errc::UnsupportedScheme, "tabulated side needs a constant sheaf");
    const Scheme& x = f.covering.base;
    const RationalFunction z = table_zeta(x.name, x.base.order());
    const auto sr = Ring::series(f.ring, m);
    const RingElem one_rank = rational_to_series(z, f.ring, m).elem();
    return class_of_series(sr, one_rank.pow(static_cast<std::int64_t>(f.rank)));
}

// Verification

bool p_invertible(const RingPtr& ring, std::uint32_t p) {
    switch (ring->kind()) {
    case RingKind::ZMod:
    case RingKind::GroupRing: return std::gcd(ring->modulus(), static_cast<std::int64_t>(p)) == 1;
    case RingKind::Product:
        return std::all_of(ring->factors().begin(), ring->factors().end(),
                           [&](const RingPtr& r) { return p_invertible(r, p); });
    case RingKind::Series: return p_invertible(ring->series_base(), p);
    }
    return false;
}

VerdictKind LReport::overall() const {
    VerdictKind worst = VerdictKind::EqualCertified;
    for (const auto& g : global_sides) {
        if (g.verdict.kind == VerdictKind::Distinguished) return VerdictKind::Distinguished;
        if (g.verdict.kind == VerdictKind::EqualOnAllInvariants) worst = VerdictKind::EqualOnAllInvariants;
    }
    return worst;
}

LReport make_report(const SheafRep& f, int m) {
    const auto t0 = std::chrono::steady_clock::now();
    ProductStats stats;
    LReport r(l_function(f, m, &stats));
    r.scheme = f.covering.base.name;
    r.sheaf = f.label;
    r.m = m;
    r.ring = f.ring;
    r.stats = std::move(stats);
    if (f.ring->is_commutative()) r.series_form = l_series(r.euler_product);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

namespace {

bool is_builtin_curve(const std::string& name) { return name == "A1" || name == "Gm" || name == "P1"; }

std::optional<RingElem> character_root(const SheafRep& f) {
    if (f.covering.kind != CoveringKind::Kummer || f.ring->kind() != RingKind::ZMod) return std::nullopt;
    try {
        return hensel_root_of_unity(f.ring, f.covering.r);
    } catch (const Error&) {
        return std::nullopt;
    }
}

Scheme covering_curve(const SheafRep& f) {
    return scheme_kummer_cover(f.covering.base, f.covering.r, *f.covering.f);
}

GlobalSide covering_zeta(const SheafRep& f, const LReport& rep, int m) {
    const SheafRep triv = sheaf_constant(cov_trivial(covering_curve(f)), f.ring, 1);
    K1Class ly = l_function(triv, m);
    Verdict v = k1_equal(rep.euler_product, ly);
    return {"covering-zeta", std::move(ly), std::move(v), "L(Y, Lambda) over the Kummer curve"};
}

GlobalSide character_product(const SheafRep& f, int m, const RingElem& zeta) {
    const auto sr = Ring::series(f.ring, m);
    K1Class prod = k1_one(sr);
    RingElem z = f.ring->one();
    for (int j = 0; j < f.covering.r; ++j) {
        Matrix gen(f.ring, 1, 1);
        gen.set(0, 0, z);
        prod = k1_mul(prod, l_function(sheaf_from_generator(f.covering, gen), m));
        z = z * zeta;
    }
    const Scheme y = covering_curve(f);
    const auto counts = scheme_point_counts_upto(y, m - 1);
    const QPoly zy = zeta_series_from_counts(counts);
    K1Class value = class_of_series(sr, rational_series_in(zy, f.ring, m).elem());
    Verdict v = k1_equal(prod, value);
    return {"character-product", std::move(value), std::move(v),
            "product over " + std::to_string(f.covering.r) + " characters vs Z(Y) from point counts"};
}

} // namespace

LReport verify_trace_formula(const SheafRep& f, int m, const std::vector<std::string>& methods) {
    const Scheme& x = f.covering.base;
    const std::uint32_t p = x.base.p();
    NCL_REQUIRE(p_invertible(f.ring, p), Errc::PNotInvertible,
                "p = " + std::to_string(p) + " is not invertible in " + f.ring->describe());
    const auto t0 = std::chrono::steady_clock::now();

    const auto zeta = character_root(f);
    auto applicable = [&](const std::string& method) {
        if (method == "dim0") return scheme_is_zero_dimensional(x);
        if (method == "table") return f.is_constant() && is_builtin_curve(x.name);
        if (method == "covering-zeta")
            return f.covering.kind == CoveringKind::Kummer && f.shape == SheafShape::Regular &&
                   f.ring->is_commutative();
        if (method == "character-product") return zeta.has_value();
        fail(Errc::InvalidInput, "unknown method '" + method + "'");
    };
    std::vector<std::string> todo;
    if (methods.empty()) {
        for (const char* mth : {"dim0", "table", "covering-zeta", "character-product"})
            if (applicable(mth)) todo.emplace_back(mth);
        NCL_REQUIRE(!todo.empty(), Errc::NoApplicableMethod, "no global side applies to " + x.name);
    } else {
        for (const auto& mth : methods) {
            NCL_REQUIRE(applicable(mth), Errc::NoApplicableMethod, mth + " does not apply to " + x.name);
            todo.push_back(mth);
        }
    }

    LReport rep = make_report(f, m);
    for (const auto& mth : todo) {
        if (mth == "dim0") {
            K1Class g = global_side_dim0(f, m);
            Verdict v = k1_equal(rep.euler_product, g);
            rep.global_sides.push_back({mth, std::move(g), std::move(v), "global sections of the orbit model"});
        } else if (mth == "table") {
            K1Class g = global_side_table(f, m);
            Verdict v = k1_equal(rep.euler_product, g);
            rep.global_sides.push_back({mth, std::move(g), std::move(v), table_zeta(x.name, x.base.order()).pretty()});
        } else if (mth == "covering-zeta") {
            rep.global_sides.push_back(covering_zeta(f, rep, m));
        } else {
            rep.global_sides.push_back(character_product(f, m, *zeta));
        }
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace ncl
