#include "ncl/sheaf.hpp"

#include "ncl/error.hpp"

namespace ncl {

GaloisCovering cov_trivial(const Scheme& x) {
    GaloisCovering c(x);
    c.group = std::make_shared<GroupTable>(GroupTable::cyclic(1));
    return c;
}

GaloisCovering cov_kummer(const Scheme& x, int r, const Polynomial& f) {
    const std::uint64_t q = x.base.order();
    NCL_REQUIRE(r >= 1 && (q - 1) % static_cast<std::uint64_t>(r) == 0, Errc::BadKummerOrder,
                std::to_string(r) + " does not divide q - 1 = " + std::to_string(q - 1));
    NCL_REQUIRE(f.base() == x.base, Errc::InvalidInput, "Kummer function over the wrong field");
    Scheme cut = x;
    for (auto& ch : cut.charts) {
        NCL_REQUIRE(!ch.fiber && f.nvars() == ch.nvars, Errc::InvalidInput,
                    "Kummer function has the wrong number of variables");
        ch.neqs.push_back(f);
    }
    for (int d = 1; d <= kKummerCheckDegree; ++d) {
        std::uint64_t a = 0, b = 0;
        try {
            a = scheme_point_counts(x, d, 2'000'000);
            b = scheme_point_counts(cut, d, 2'000'000);
        } catch (const Error& e) {
            if (e.code() == Errc::EnumerationTooLarge) break;
            throw;
        }
        NCL_REQUIRE(a == b, Errc::VanishingFunction,
                    f.to_string() + " vanishes at " + std::to_string(a - b) + " points over F_{q^" +
                        std::to_string(d) + "}");
    }
    GaloisCovering c(x);
    c.kind = CoveringKind::Kummer;
    c.group = std::make_shared<GroupTable>(GroupTable::cyclic(r));
    c.r = r;
    c.f = f;
    return c;
}

GaloisCovering cov_table(const Scheme& x, GroupPtr group, const std::vector<std::pair<ClosedPoint, int>>& classes) {
    GaloisCovering c(x);
    c.kind = CoveringKind::Table;
    c.r = group->order();
    for (const auto& [pt, g] : classes) {
        NCL_REQUIRE(g >= 0 && g < group->order(), Errc::InvalidInput, "class index out of range");
        c.classes[PointKey{pt.degree, pt.chart, pt.rep}] = g;
    }
    c.group = std::move(group);
    return c;
}

GaloisCovering cov_table_ordered(const Scheme& x, GroupPtr group, int max_deg, const std::vector<int>& classes) {
    const auto pts = scheme_closed_points(x, max_deg);
    NCL_REQUIRE(pts.size() == classes.size(), Errc::InvalidInput,
                std::to_string(classes.size()) + " classes for " + std::to_string(pts.size()) + " closed points");
    std::vector<std::pair<ClosedPoint, int>> v;
    for (std::size_t i = 0; i < pts.size(); ++i) v.emplace_back(pts[i], classes[i]);
    return cov_table(x, std::move(group), v);
}

GaloisCovering cov_restrict(const GaloisCovering& cov, const Scheme& sub) {
    NCL_REQUIRE(sub.base == cov.base.base && sub.charts.size() == cov.base.charts.size(), Errc::InvalidInput,
                "subscheme does not match the covering's charts");
    GaloisCovering c = cov;
    c.base = sub;
    return c;
}

int frob_class(const GaloisCovering& cov, const ClosedPoint& x) {
    NCL_REQUIRE(x.chart >= 0 && static_cast<std::size_t>(x.chart) < cov.base.charts.size(), Errc::PointNotOnBase,
                "chart index out of range");
    switch (cov.kind) {
    case CoveringKind::Trivial: return cov.group->identity();
    case CoveringKind::Table: {
        auto it = cov.classes.find(PointKey{x.degree, x.chart, x.rep});
        NCL_REQUIRE(it != cov.classes.end(), Errc::PointNotOnBase, "no class assigned to this closed point");
        return it->second;
    }
    case CoveringKind::Kummer: break;
    }
    const FqField& base = cov.base.base;
    const auto r = static_cast<std::uint64_t>(cov.r);
    const FqElem zeta = ff_root_of_unity(base, r);
    const std::uint64_t e = (base.order() - 1) / r;
    auto symbol = [&](const std::vector<std::uint32_t>& pt) {
        const std::uint32_t alpha = cov.f->eval(x.field, pt.data());
        NCL_REQUIRE(alpha != 0, Errc::PointNotOnBase, "Kummer function vanishes at the point");
        const FqElem n = ff_norm(FqElem(x.field, alpha), base);
        const FqElem s(base, base.pow(n.code(), e));
        return ff_dlog_mu(s, zeta, r);
    };
    const auto orbit = x.orbit();
    const std::uint64_t arith = symbol(orbit[0]);
    for (std::size_t i = 1; i < orbit.size(); ++i)
        NCL_REQUIRE(symbol(orbit[i]) == arith, Errc::PointNotOnBase, "Frobenius class depends on the representative");
    return static_cast<int>((r - arith) % r);
}

// Sheaves

const Matrix& SheafRep::frobenius_at(const ClosedPoint& x) const {
    return rho[static_cast<std::size_t>(frob_class(covering, x))];
}

bool SheafRep::is_constant() const {
    for (const auto& m : rho)
        if (!m.is_identity()) return false;
    return true;
}

void sheaf_validate(const SheafRep& s) {
    const auto& g = *s.covering.group;
    NCL_REQUIRE(s.rho.size() == static_cast<std::size_t>(g.order()), Errc::InvalidInput,
                "representation needs one matrix per group element");
    for (const auto& m : s.rho)
        NCL_REQUIRE(m.ring()->same(*s.ring) && m.rows() == s.rank && m.cols() == s.rank, Errc::InvalidInput,
                    "representation matrix of the wrong shape");
    NCL_REQUIRE(s.rho[static_cast<std::size_t>(g.identity())].is_identity(), Errc::InvalidInput,
                "rho(e) is not the identity");
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            NCL_REQUIRE(s.rho[static_cast<std::size_t>(a)] * s.rho[static_cast<std::size_t>(b)] ==
                            s.rho[static_cast<std::size_t>(s.right_action ? g.mul(b, a) : g.mul(a, b))],
                        Errc::InvalidInput,
                        "rho is not multiplicative at (" + g.label(a) + ", " + g.label(b) + ")");
}

SheafRep sheaf_constant(const GaloisCovering& cov, const RingPtr& ring, std::size_t rank) {
    SheafRep s(cov, ring);
    s.rank = rank;
    s.rho.assign(static_cast<std::size_t>(cov.group->order()), Matrix::identity(ring, rank));
    s.shape = SheafShape::Constant;
    s.label = "constant";
    return s;
}

SheafRep sheaf_character(const GaloisCovering& cov, const RingPtr& ring, const RingElem& zeta) {
    const auto& g = *cov.group;
    const int gen = g.cyclic_generator();
    NCL_REQUIRE(gen >= 0, Errc::NonCyclicGroup, "characters need a cyclic covering group");
    const int r = g.order();
    NCL_REQUIRE(zeta.ring()->same(*ring) && ring->is_commutative(), Errc::BadCharacterOrder,
                "character values must lie in the commutative coefficient ring");
    NCL_REQUIRE(zeta.pow(r).is_one(), Errc::BadCharacterOrder, zeta.to_string() + "^" + std::to_string(r) + " != 1");
    for (int k = 1; k < r; ++k)
        NCL_REQUIRE(!zeta.pow(k).is_one(), Errc::BadCharacterOrder,
                    zeta.to_string() + " has order " + std::to_string(k) + " < " + std::to_string(r));
    SheafRep s(cov, ring);
    s.rank = 1;
    s.rho.assign(static_cast<std::size_t>(r), Matrix::identity(ring, 1));
    RingElem v = ring->one();
    for (int k = 0; k < r; ++k) {
        s.rho[static_cast<std::size_t>(g.power(gen, k))].set(0, 0, v);
        v = v * zeta;
    }
    s.shape = r == 1 ? SheafShape::Constant : SheafShape::Character;
    s.label = "character(" + zeta.to_string() + ")";
    s.zeta = zeta;
    sheaf_validate(s);
    return s;
}

SheafRep sheaf_regular(const GaloisCovering& cov, const RingPtr& ring) {
    const auto& g = *cov.group;
    const auto n = static_cast<std::size_t>(g.order());
    SheafRep s(cov, ring);
    s.rank = n;
    for (int a = 0; a < g.order(); ++a) {
        // e_x -> e_{x a^{-1}}
        Matrix m(ring, n, n);
        const int ainv = g.inverse(a);
        for (int x = 0; x < g.order(); ++x)
            m.set(static_cast<std::size_t>(g.mul(x, ainv)), static_cast<std::size_t>(x), ring->one());
        s.rho.push_back(std::move(m));
    }
    s.shape = n == 1 ? SheafShape::Constant : SheafShape::Regular;
    s.label = "regular";
    sheaf_validate(s);
    return s;
}

SheafRep sheaf_group_ring(const GaloisCovering& cov, std::int64_t modulus) {
    const auto ring = Ring::group_ring(modulus, cov.group);
    const auto& g = *cov.group;
    SheafRep s(cov, ring);
    s.rank = 1;
    for (int a = 0; a < g.order(); ++a) {
        Matrix m(ring, 1, 1);
        m.set(0, 0, ring->group_element(g.inverse(a)));
        s.rho.push_back(std::move(m));
    }
    s.shape = SheafShape::GroupRing;
    s.right_action = !g.is_abelian();
    s.label = "group_ring";
    sheaf_validate(s);
    return s;
}

SheafRep sheaf_from_generator(const GaloisCovering& cov, const Matrix& gen_image) {
    const auto& g = *cov.group;
    const int gen = g.cyclic_generator();
    NCL_REQUIRE(gen >= 0, Errc::NonCyclicGroup, "generator form needs a cyclic covering group");
    NCL_REQUIRE(gen_image.square(), Errc::InvalidInput, "generator image must be square");
    std::vector<Matrix> rho(static_cast<std::size_t>(g.order()), Matrix::identity(gen_image.ring(), gen_image.rows()));
    Matrix p = Matrix::identity(gen_image.ring(), gen_image.rows());
    for (int k = 0; k < g.order(); ++k) {
        rho[static_cast<std::size_t>(g.power(gen, k))] = p;
        p = p * gen_image;
    }
    NCL_REQUIRE(p.is_identity(), Errc::InvalidInput, "generator image does not have order dividing |G|");
    return sheaf_custom(cov, std::move(rho), "generated");
}

SheafRep sheaf_custom(const GaloisCovering& cov, std::vector<Matrix> rho, std::string label) {
    NCL_REQUIRE(!rho.empty(), Errc::InvalidInput, "empty representation");
    SheafRep s(cov, rho[0].ring());
    s.rank = rho[0].rows();
    s.rho = std::move(rho);
    s.shape = SheafShape::Custom;
    s.label = std::move(label);
    sheaf_validate(s);
    for (const auto& m : s.rho)
        NCL_REQUIRE(matrix_is_invertible(m), Errc::NotInvertible, "representation matrix is not invertible");
    if (s.is_constant()) s.shape = SheafShape::Constant;
    return s;
}

SheafRep sheaf_change_of_rings(const SheafRep& f, const RingHom& h) {
    NCL_REQUIRE(h.source()->same(*f.ring), Errc::RingMismatch,
                "hom source " + h.source()->describe() + " vs " + f.ring->describe());
    SheafRep s(f.covering, h.target());
    s.rank = f.rank;
    s.right_action = f.right_action;
    for (const auto& m : f.rho) s.rho.push_back(m.map(h));
    s.shape = f.shape == SheafShape::GroupRing ? SheafShape::Custom : f.shape;
    if (f.shape == SheafShape::Extension) s.shape = SheafShape::Custom;
    s.label = f.label + " via " + h.describe();
    if (f.zeta) s.zeta = h.apply(*f.zeta);
    sheaf_validate(s);
    return s;
}

namespace {
void check_same_base(const SheafRep& a, const SheafRep& b) {
    NCL_REQUIRE(a.ring->same(*b.ring), Errc::RingMismatch, a.ring->describe() + " vs " + b.ring->describe());
    NCL_REQUIRE(*a.covering.group == *b.covering.group && a.covering.kind == b.covering.kind &&
                    a.covering.r == b.covering.r && a.covering.classes == b.covering.classes &&
                    a.covering.base.charts.size() == b.covering.base.charts.size(),
                Errc::InvalidInput, "sheaves live on different coverings");
}
} // namespace

SheafRep sheaf_extension(const SheafRep& sub, const SheafRep& quot, const std::vector<Matrix>& cocycle) {
    check_same_base(sub, quot);
    const auto n = static_cast<std::size_t>(sub.covering.group->order());
    NCL_REQUIRE(cocycle.size() == n, Errc::InvalidInput, "cocycle needs one matrix per group element");
    SheafRep s(sub.covering, sub.ring);
    s.rank = sub.rank + quot.rank;
    NCL_REQUIRE(sub.right_action == quot.right_action, Errc::InvalidInput, "left and right actions cannot be mixed");
    s.right_action = sub.right_action;
    for (std::size_t g = 0; g < n; ++g) {
        NCL_REQUIRE(cocycle[g].rows() == sub.rank && cocycle[g].cols() == quot.rank &&
                        cocycle[g].ring()->same(*sub.ring),
                    Errc::InvalidInput, "cocycle matrix of the wrong shape");
        Matrix m(s.ring, s.rank, s.rank);
        m.set_block(0, 0, sub.rho[g]);
        m.set_block(0, sub.rank, cocycle[g]);
        m.set_block(sub.rank, sub.rank, quot.rho[g]);
        s.rho.push_back(std::move(m));
    }
    s.shape = SheafShape::Extension;
    s.label = "extension(" + sub.label + ", " + quot.label + ")";
    s.sub = std::make_shared<SheafRep>(sub);
    s.quot = std::make_shared<SheafRep>(quot);
    try {
        sheaf_validate(s);
    } catch (const Error& e) {
        fail(Errc::CocycleNotMultiplicative, e.what());
    }
    return s;
}

SheafRep sheaf_direct_sum(const SheafRep& a, const SheafRep& b) {
    std::vector<Matrix> zero;
    for (std::size_t g = 0; g < a.rho.size(); ++g) zero.emplace_back(a.ring, a.rank, b.rank);
    SheafRep s = sheaf_extension(a, b, zero);
    s.label = a.label + " + " + b.label;
    return s;
}

SheafRep sheaf_restrict(const SheafRep& f, const Scheme& sub) {
    SheafRep s = f;
    s.covering = cov_restrict(f.covering, sub);
    auto restrict_part = [&](const std::shared_ptr<const SheafRep>& p) {
        return p ? std::make_shared<SheafRep>(sheaf_restrict(*p, sub)) : nullptr;
    };
    s.sub = restrict_part(f.sub);
    s.quot = restrict_part(f.quot);
    return s;
}

} // namespace ncl
