#pragma once

// Finite coefficient rings.
//
// A Ring is an immutable descriptor shared by all of its elements. Four kinds
// exist: Z/m, the group ring Z/m[G], finite products, and the truncated series
// ring R[T]/(T^m) over any of them. Every element is a flat vector of residues
// whose layout is fixed by the descriptor, so matrices, unit tests and the K_1
// machinery work the same way over all kinds.

#include "ncl/group.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace ncl {

class Ring;
class RingElem;
using RingPtr = std::shared_ptr<const Ring>;

enum class RingKind { ZMod, GroupRing, Product, Series };

/// Elements allowed in a group ring Z/m[G] (m^|G|).
inline constexpr std::uint64_t kMaxGroupRingSize = 1'000'000'000;
/// Sentinel returned by Ring::size() when the ring is too large to count.
inline constexpr std::uint64_t kUncountable = ~std::uint64_t{0};

class Ring : public std::enable_shared_from_this<Ring> {
public:
    using Value = std::int64_t;
    using Span = std::span<Value>;
    using CSpan = std::span<const Value>;

    static RingPtr zmod(std::int64_t m);
    static RingPtr group_ring(std::int64_t m, GroupPtr group);
    static RingPtr group_ring(std::int64_t m, const GroupTable& group);
    static RingPtr product(std::vector<RingPtr> factors);
    static RingPtr series(RingPtr base, int truncation);

    RingKind kind() const { return kind_; }
    /// Residue modulus for ZMod and GroupRing.
    std::int64_t modulus() const { return m_; }
    const GroupPtr& group() const { return group_; }
    const std::vector<RingPtr>& factors() const { return factors_; }
    /// Coefficient ring of a Series ring.
    const RingPtr& series_base() const { return base_; }
    int truncation() const { return trunc_; }

    std::size_t width() const { return width_; }
    /// Number of elements, or kUncountable.
    std::uint64_t size() const { return size_; }
    bool is_commutative() const { return commutative_; }
    /// Additive characteristic.
    std::int64_t characteristic() const { return characteristic_; }
    /// Ring below all Series wrappers.
    RingPtr coefficient_ring() const;

    bool same(const Ring& other) const;
    std::string describe() const;

    RingElem zero() const;
    RingElem one() const;
    RingElem from_int(std::int64_t v) const;
    RingElem from_values(std::vector<Value> v) const;
    /// Group element g as an element of Z/m[G].
    RingElem group_element(int g) const;
    RingElem random(std::mt19937_64& rng) const;
    /// Element with a given index in the enumeration order (mixed radix on the residues).
    RingElem element_at(std::uint64_t index) const;
    std::vector<RingElem> enumerate(std::uint64_t bound) const;

    // Raw operations; out must not alias the inputs of mul/mul_acc.
    void set_zero(Span out) const;
    void set_one(Span out) const;
    void set_int(std::int64_t v, Span out) const;
    void add(CSpan a, CSpan b, Span out) const;
    void sub(CSpan a, CSpan b, Span out) const;
    void neg(CSpan a, Span out) const;
    void mul(CSpan a, CSpan b, Span out) const;
    void mul_acc(CSpan a, CSpan b, Span acc) const;
    bool is_zero(CSpan a) const;
    bool is_one(CSpan a) const;
    bool is_unit(CSpan a) const;
    /// Two-sided inverse; false when a is not a unit.
    bool inverse(CSpan a, Span out) const;

    RingPtr ptr() const { return shared_from_this(); }

    Ring(RingKind kind, std::int64_t m, GroupPtr group, std::vector<RingPtr> factors, RingPtr base, int trunc);

private:
    RingKind kind_;
    std::int64_t m_ = 0;
    GroupPtr group_;
    std::vector<RingPtr> factors_;
    std::vector<std::size_t> offsets_;
    RingPtr base_;
    int trunc_ = 0;
    std::size_t width_ = 1;
    std::uint64_t size_ = 0;
    bool commutative_ = true;
    std::int64_t characteristic_ = 0;

    bool group_ring_inverse(CSpan a, Span out) const;
};

class RingElem {
public:
    RingElem(RingPtr ring, std::vector<Ring::Value> v);

    const RingPtr& ring() const { return ring_; }
    Ring::CSpan data() const { return v_; }
    Ring::Span data_mut() { return v_; }
    const std::vector<Ring::Value>& values() const { return v_; }

    bool is_zero() const { return ring_->is_zero(v_); }
    bool is_one() const { return ring_->is_one(v_); }
    bool is_unit() const { return ring_->is_unit(v_); }
    /// Throws NotAUnit.
    RingElem inverse() const;
    RingElem pow(std::int64_t k) const;

    RingElem operator+(const RingElem& b) const;
    RingElem operator-(const RingElem& b) const;
    RingElem operator-() const;
    RingElem operator*(const RingElem& b) const;
    RingElem& operator+=(const RingElem& b);
    RingElem& operator-=(const RingElem& b);
    bool operator==(const RingElem& b) const;
    bool operator!=(const RingElem& b) const { return !(*this == b); }
    bool operator<(const RingElem& b) const { return v_ < b.v_; }

    /// Component of a Product element, or coefficient of a Series element.
    RingElem component(std::size_t i) const;

    std::string to_string() const;

private:
    RingPtr ring_;
    std::vector<Ring::Value> v_;
};

/// Builds an element of a Series ring from its coefficients.
RingElem make_series_elem(const RingPtr& series_ring, const std::vector<RingElem>& coeffs);

/// Builds an element of a Product ring from its components.
RingElem make_product_elem(const RingPtr& product_ring, const std::vector<RingElem>& parts);

/// Enumerated unit group with index-level multiplication.
class UnitGroup {
public:
    explicit UnitGroup(RingPtr ring, std::uint64_t bound = 1'000'000);

    const RingPtr& ring() const { return ring_; }
    std::size_t size() const { return elems_.size(); }
    const RingElem& at(std::size_t i) const { return elems_[i]; }
    const std::vector<RingElem>& elements() const { return elems_; }
    /// Index of a unit, or -1.
    std::int64_t index_of(const RingElem& u) const;
    std::size_t mul(std::size_t a, std::size_t b) const;
    std::size_t inverse(std::size_t a) const;
    /// Subgroup generated by the given indices (sorted indices).
    std::vector<std::size_t> closure(const std::vector<std::size_t>& generators) const;

private:
    RingPtr ring_;
    std::vector<RingElem> elems_;
    std::vector<std::uint64_t> index_;  // ring enumeration index -> unit index + 1
    std::vector<std::int64_t> radix_;

public:
    /// Enumeration index of any ring element.
    std::uint64_t encode(Ring::CSpan a) const;
    /// Unit index from raw values, or -1.
    std::int64_t index_of_raw(Ring::CSpan a) const { return static_cast<std::int64_t>(index_[encode(a)]) - 1; }
};

/// Jacobson radical as a membership test plus (for small rings) its elements.
struct JacobsonRadical {
    RingPtr ring;
    std::function<bool(const RingElem&)> contains;
    bool structural = false;
    std::vector<RingElem> elements(std::uint64_t bound = 10'000) const;
};

/// Definitional scan {x : 1 - r x is a unit for all r}; ring size <= bound.
JacobsonRadical ring_jacobson_radical_definitional(const RingPtr& ring, std::uint64_t bound = 10'000);
/// Structural description; falls back to the definitional scan when no rule applies.
JacobsonRadical ring_jacobson_radical(const RingPtr& ring);

enum class HomKind { Identity, Character, Abelianization, Augmentation, ZModProjection, Compose };

/// A unital ring homomorphism between finite rings. Applied to elements of
/// Series rings over the source it acts coefficientwise.
class RingHom {
public:
    static RingHom identity(RingPtr ring);
    /// Z/m[C_r] -> target with generator s -> zeta (zeta^r = 1).
    static RingHom character(RingPtr source, RingElem zeta);
    static RingHom abelianization(RingPtr source);
    static RingHom augmentation(RingPtr source);
    static RingHom zmod_projection(RingPtr source, std::int64_t new_modulus);
    /// x -> second(first(x)).
    static RingHom compose(const RingHom& first, const RingHom& second);

    HomKind kind() const { return kind_; }
    const RingPtr& source() const { return source_; }
    const RingPtr& target() const { return target_; }
    std::string describe() const;

    RingElem apply(const RingElem& a) const;
    /// Target ring for elements of `ring` (the source or a series ring over it).
    RingPtr image_ring(const RingPtr& ring) const;

private:
    HomKind kind_ = HomKind::Identity;
    RingPtr source_, target_;
    std::optional<RingElem> zeta_;
    std::vector<int> projection_;
    std::shared_ptr<const RingHom> first_, second_;
    RingElem apply_base(const RingElem& a) const;
};

/// Order-r root of unity in Z/l^n by Hensel lifting (r | l - 1).
RingElem hensel_root_of_unity(const RingPtr& zmod, std::int64_t r);

} // namespace ncl
