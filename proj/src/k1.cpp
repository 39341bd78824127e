#include "ncl/k1.hpp"

#include "ncl/arith.hpp"
#include "ncl/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace ncl {

K1Class k1_one(const RingPtr& ring) { return K1Class(ring, ring->one()); }

K1Class k1_of_unit(const RingElem& u) {
    NCL_REQUIRE(u.is_unit(), Errc::NotAUnit, u.to_string() + " is not a unit");
    K1Class c(u.ring(), u);
    if (!u.ring()->is_commutative() && !u.is_one()) c.factors.push_back(u);
    return c;
}

K1Class k1_of_matrix(const Matrix& m, bool keep_certificate) {
    NCL_REQUIRE(m.square(), Errc::InvalidInput, "K_1 class of a non-square matrix");
    const auto& ring = m.ring();
    const std::size_t n = m.rows();
    if (n == 0) return k1_one(ring);
    NCL_REQUIRE(matrix_is_invertible(m), Errc::NotInvertible, "matrix is not invertible over " + ring->describe());

    Matrix a = m;
    std::vector<ElemMove> moves;
    auto record = [&](ElemMove mv) {
        apply_move(a, mv);
        if (keep_certificate) moves.push_back(std::move(mv));
    };
    for (std::size_t k = 0; k < n; ++k) {
        if (keep_certificate)
            make_unit_pivot(a, k, &moves);
        else
            make_unit_pivot(a, k, nullptr);
        const RingElem pinv = a.at(k, k).inverse();
        for (std::size_t i = k + 1; i < n; ++i)
            if (!ring->is_zero(a.entry(i, k))) record(ElemMove::add_row(i, k, -(a.at(i, k) * pinv)));
        for (std::size_t j = k + 1; j < n; ++j)
            if (!ring->is_zero(a.entry(k, j))) record(ElemMove::add_col(k, j, -(pinv * a.at(k, j))));
    }
    std::vector<RingElem> diag;
    for (std::size_t k = 0; k < n; ++k) diag.push_back(a.at(k, k));
    for (std::size_t k = 1; k < n; ++k)
        if (!diag[k].is_one()) record(ElemMove::scale_pair(ElemMove::Side::Col, k, 0, diag[k].inverse()));

    RingElem rep = ring->one();
    std::vector<RingElem> factors;
    for (const auto& d : diag) {
        if (d.is_one()) continue;
        rep = rep * d;
        factors.push_back(d);
    }
    K1Class c(ring, rep);
    if (!ring->is_commutative()) c.factors = std::move(factors);
    if (keep_certificate) {
        c.certificate = K1Certificate{n, std::move(moves)};
        NCL_REQUIRE(k1_certificate_valid(m, *c.certificate, rep), Errc::PivotSearchExhausted,
                "elimination transcript does not replay");
    }
    if (ring->is_commutative() && n <= 8)
        NCL_REQUIRE(matrix_det(m) == rep, Errc::InvalidInput, "elimination disagrees with the determinant");
    return c;
}

Matrix k1_replay(const Matrix& m, const K1Certificate& cert) {
    NCL_REQUIRE(m.rows() == cert.size && m.square(), Errc::InvalidInput, "certificate size mismatch");
    Matrix a = m;
    for (const auto& mv : cert.moves) apply_move(a, mv);
    return a;
}

bool k1_certificate_valid(const Matrix& m, const K1Certificate& cert, const RingElem& rep) {
    const Matrix a = k1_replay(m, cert);
    Matrix target = Matrix::identity(m.ring(), m.rows());
    target.set(0, 0, rep);
    return a == target;
}

K1Class k1_mul(const K1Class& a, const K1Class& b) {
    NCL_REQUIRE(a.ring->same(*b.ring), Errc::RingMismatch, a.ring->describe() + " vs " + b.ring->describe());
    K1Class c(a.ring, a.rep * b.rep);
    if (!a.ring->is_commutative()) {
        c.factors = a.factors;
        c.factors.insert(c.factors.end(), b.factors.begin(), b.factors.end());
    }
    return c;
}

K1Class k1_inverse(const K1Class& a) {
    K1Class c(a.ring, a.rep.inverse());
    for (auto it = a.factors.rbegin(); it != a.factors.rend(); ++it) c.factors.push_back(it->inverse());
    return c;
}

K1Class k1_map(const K1Class& a, const RingHom& h) {
    auto target = h.image_ring(a.ring);
    K1Class c(target, h.apply(a.rep));
    if (!target->is_commutative())
        for (const auto& f : a.factors) {
            RingElem g = h.apply(f);
            if (!g.is_one()) c.factors.push_back(std::move(g));
        }
    return c;
}

RingElem k1_det(const K1Class& c) {
    NCL_REQUIRE(c.ring->is_commutative(), Errc::NoncommutativeRing, "determinant over " + c.ring->describe());
    return c.rep;
}

// Vaserstein closure

std::vector<std::size_t> k1_vaserstein_closure(const UnitGroup& units) {
    const auto& ring = units.ring();
    const std::size_t w = ring->width();
    const std::uint64_t n = ring->size();
    std::vector<std::vector<Ring::Value>> all;
    all.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) all.push_back(ring->element_at(i).values());
    std::vector<std::size_t> inv(units.size());
    for (std::size_t i = 0; i < units.size(); ++i) inv[i] = units.inverse(i);

    std::vector<char> is_gen(units.size(), 0);
    std::vector<Ring::Value> ab(w), ba(w), one(w);
    ring->set_one(one);
    for (std::uint64_t x = 1; x < n; ++x)
        for (std::uint64_t y = x; y < n; ++y) {
            ring->mul(all[x], all[y], ab);
            ring->mul(all[y], all[x], ba);
            if (ab == ba) continue;
            ring->add(ab, one, ab);
            const auto s = units.index_of_raw(ab);
            if (s < 0) continue;
            ring->add(ba, one, ba);
            const auto t = units.index_of_raw(ba);
            is_gen[units.mul(static_cast<std::size_t>(s), inv[static_cast<std::size_t>(t)])] = 1;
        }
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < is_gen.size(); ++i)
        if (is_gen[i]) gens.push_back(i);
    return units.closure(gens);
}

namespace {
std::mutex closure_mutex;
std::map<std::string, std::vector<RingElem>> closure_cache;
} // namespace

std::vector<RingElem> k1_vaserstein_closure(const RingPtr& ring) {
    NCL_REQUIRE(ring->size() <= 1'000'000, Errc::EnumerationTooLarge, ring->describe() + " is too large");
    std::string key = ring->describe();
    if (ring->kind() == RingKind::GroupRing)
        for (const auto& row : ring->group()->table())
            for (int v : row) key += "," + std::to_string(v);
    {
        std::lock_guard<std::mutex> lock(closure_mutex);
        auto it = closure_cache.find(key);
        if (it != closure_cache.end()) return it->second;
    }
    UnitGroup units(ring);
    NCL_REQUIRE(units.size() <= 10'000, Errc::EnumerationTooLarge, "more than 10^4 units in " + ring->describe());
    std::vector<RingElem> out;
    for (auto i : k1_vaserstein_closure(units)) out.push_back(units.at(i));
    std::lock_guard<std::mutex> lock(closure_mutex);
    closure_cache.emplace(key, out);
    return out;
}

// Equality

const char* verdict_name(VerdictKind k) {
    switch (k) {
    case VerdictKind::EqualCertified: return "EqualCertified";
    case VerdictKind::EqualOnAllInvariants: return "EqualOnAllInvariants";
    case VerdictKind::Distinguished: return "Distinguished";
    }
    return "?";
}

namespace {

// Factors with ones dropped and u, u^{-1} pairs cancelled.
std::map<std::vector<Ring::Value>, long> normalized_factors(const K1Class& c) {
    std::map<std::vector<Ring::Value>, long> counts;
    for (const auto& f : c.factors)
        if (!f.is_one()) ++counts[f.values()];
    for (auto& [key, cnt] : counts) {
        if (cnt == 0) continue;
        const RingElem f(c.ring, key);
        const auto inv = f.inverse().values();
        if (inv == key) {
            cnt %= 2;
            continue;
        }
        auto it = counts.find(inv);
        if (it == counts.end()) continue;
        const long k = std::min(cnt, it->second);
        cnt -= k;
        it->second -= k;
    }
    for (auto it = counts.begin(); it != counts.end();)
        it = it->second == 0 ? counts.erase(it) : std::next(it);
    return counts;
}

RingPtr jac_reduction_target(const RingPtr& r) {
    const auto base = r->coefficient_ring();
    if (base->kind() != RingKind::ZMod && base->kind() != RingKind::GroupRing) return nullptr;
    const std::int64_t rad = radical(base->modulus());
    if (rad == base->modulus()) return nullptr;
    return base;
}

std::vector<RingHom> default_homs(const RingPtr& ring) {
    std::vector<RingHom> out;
    const auto base = ring->coefficient_ring();
    if (base->kind() == RingKind::GroupRing) {
        out.push_back(RingHom::augmentation(base));
        if (!base->group()->is_abelian()) out.push_back(RingHom::abelianization(base));
    }
    return out;
}

// Constant coefficient of a series-ring class.
K1Class mod_t(const K1Class& c) {
    const auto base = c.ring->series_base();
    K1Class out(base, c.rep.component(0));
    for (const auto& f : c.factors) {
        RingElem g = f.component(0);
        if (!g.is_one()) out.factors.push_back(std::move(g));
    }
    return out;
}

} // namespace

Verdict k1_equal(const K1Class& a, const K1Class& b, const std::vector<RingHom>& homs) {
    NCL_REQUIRE(a.ring->same(*b.ring), Errc::RingMismatch, a.ring->describe() + " vs " + b.ring->describe());
    const auto& ring = a.ring;
    if (a.rep == b.rep) return {VerdictKind::EqualCertified, "representatives coincide"};
    if (ring->is_commutative()) return {VerdictKind::Distinguished, "determinant"};

    if (!a.factors.empty() || !b.factors.empty()) {
        if (normalized_factors(a) == normalized_factors(b))
            return {VerdictKind::EqualCertified, "factor lists agree up to order"};
    }

    if (ring->kind() != RingKind::Series && ring->size() <= 4096) {
        const auto w = k1_vaserstein_closure(ring);
        const RingElem q = a.rep * b.rep.inverse();
        const bool in = std::find(w.begin(), w.end(), q) != w.end();
        if (in) return {VerdictKind::EqualCertified, "quotient lies in the Vaserstein closure"};
        return {VerdictKind::Distinguished, "quotient outside the Vaserstein closure"};
    }

    std::vector<RingHom> all = default_homs(ring);
    all.insert(all.end(), homs.begin(), homs.end());
    for (const auto& h : all) {
        const auto target = h.image_ring(ring);
        if (!target->is_commutative()) continue;
        if (h.apply(a.rep) != h.apply(b.rep)) return {VerdictKind::Distinguished, h.describe()};
    }
    if (ring->kind() == RingKind::Series) {
        const Verdict v = k1_equal(mod_t(a), mod_t(b), {});
        if (v.kind == VerdictKind::Distinguished) return {VerdictKind::Distinguished, "mod T: " + v.detail};
    }
    if (auto base = jac_reduction_target(ring)) {
        const RingHom h = RingHom::zmod_projection(base, radical(base->modulus()));
        const Verdict v = k1_equal(k1_map(a, h), k1_map(b, h), {});
        if (v.kind == VerdictKind::Distinguished) return {VerdictKind::Distinguished, "mod Jac: " + v.detail};
    }
    return {VerdictKind::EqualOnAllInvariants, "all invariants agree"};
}

} // namespace ncl
