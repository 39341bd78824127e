#pragma once

// Locally constant sheaves: a Galois covering of a scheme plus a
// representation rho: G -> GL_n(Lambda).

#include "ncl/matrix.hpp"
#include "ncl/ring.hpp"
#include "ncl/variety.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ncl {

enum class CoveringKind { Trivial, Kummer, Table };

/// Key of a closed point inside a Table covering.
struct PointKey {
    int degree = 1;
    int chart = 0;
    std::vector<std::uint32_t> rep;
    auto operator<=>(const PointKey&) const = default;
};

struct GaloisCovering {
    explicit GaloisCovering(Scheme b) : base(std::move(b)) {}
    Scheme base;
    CoveringKind kind = CoveringKind::Trivial;
    GroupPtr group;
    int r = 1;
    std::optional<Polynomial> f;
    std::map<PointKey, int> classes;
};

/// Degrees scanned by cov_kummer for zeros of f.
inline constexpr int kKummerCheckDegree = 3;

GaloisCovering cov_trivial(const Scheme& x);
/// y^r = f over X; throws BadKummerOrder or VanishingFunction.
GaloisCovering cov_kummer(const Scheme& x, int r, const Polynomial& f);
/// Frobenius classes assigned by hand.
GaloisCovering cov_table(const Scheme& x, GroupPtr group, const std::vector<std::pair<ClosedPoint, int>>& classes);
/// Classes given in closed-point order (degree-major) for every point of degree <= max_deg.
GaloisCovering cov_table_ordered(const Scheme& x, GroupPtr group, int max_deg, const std::vector<int>& classes);
/// Same covering over a subscheme cut out by extra equations on the same charts.
GaloisCovering cov_restrict(const GaloisCovering& cov, const Scheme& sub);

/// Geometric Frobenius class at a closed point (group element index).
int frob_class(const GaloisCovering& cov, const ClosedPoint& x);

enum class SheafShape { Constant, Character, Regular, GroupRing, Custom, Extension };

struct SheafRep {
    SheafRep(GaloisCovering cov, RingPtr r) : covering(std::move(cov)), ring(std::move(r)) {}
    GaloisCovering covering;
    RingPtr ring;
    std::size_t rank = 1;
    /// rho[g] for every group element g.
    std::vector<Matrix> rho;
    SheafShape shape = SheafShape::Custom;
    /// rho(ab) = rho(b) rho(a): a homomorphism into the opposite ring (Lambda[G]^# over noncommutative G).
    bool right_action = false;
    std::string label;
    /// Character sheaves: the image of the generator.
    std::optional<RingElem> zeta;
    std::shared_ptr<const SheafRep> sub, quot;

    const Matrix& frobenius_at(const ClosedPoint& x) const;
    bool is_constant() const;
};

/// Checks rho(e) = 1, invertibility and multiplicativity on all pairs.
void sheaf_validate(const SheafRep& s);

SheafRep sheaf_constant(const GaloisCovering& cov, const RingPtr& ring, std::size_t rank = 1);
/// rho(k) = zeta^k on a cyclic covering; zeta must have exact order r.
SheafRep sheaf_character(const GaloisCovering& cov, const RingPtr& ring, const RingElem& zeta);
/// Right translation by g^{-1} on Lambda^|G|.
SheafRep sheaf_regular(const GaloisCovering& cov, const RingPtr& ring);
/// Lambda[G]^# as a rank-one sheaf over Lambda[G]: Frobenius acts by g^{-1}.
SheafRep sheaf_group_ring(const GaloisCovering& cov, std::int64_t modulus);
/// rho(g) from the image of a generator of a cyclic group.
SheafRep sheaf_from_generator(const GaloisCovering& cov, const Matrix& gen_image);
SheafRep sheaf_custom(const GaloisCovering& cov, std::vector<Matrix> rho, std::string label = "custom");
SheafRep sheaf_change_of_rings(const SheafRep& f, const RingHom& h);
/// g -> [[rho_sub(g), c(g)], [0, rho_quot(g)]]; throws CocycleNotMultiplicative.
SheafRep sheaf_extension(const SheafRep& sub, const SheafRep& quot, const std::vector<Matrix>& cocycle);
SheafRep sheaf_direct_sum(const SheafRep& a, const SheafRep& b);
/// Same representation over a subscheme.
SheafRep sheaf_restrict(const SheafRep& f, const Scheme& sub);

} // namespace ncl
