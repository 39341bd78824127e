#pragma once

// Finite fields F_q = F_p[x]/(modulus) with element codes.
//
// An element is stored as its code sum_i c_i p^i (coefficients little-endian in
// degree). Multiplication goes through discrete log / antilog tables that are
// built once per (p, nu) and shared by every handle to that field. Extensions
// built with FqField::extend remember their base and an explicit embedding.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace ncl {

class FqElem;

namespace detail {
struct FieldArith;
struct FieldData;
} // namespace detail

/// Largest field for which tables are built (and therefore the largest field
/// that can be constructed at all).
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 22;

/// Default element bound for FqField::enumerate.
inline constexpr std::uint64_t kDefaultEnumerationBound = 1'000'000;

class FqField {
public:
    /// F_{p^nu} with the smallest monic irreducible modulus (ordered by code).
    static FqField make(std::uint32_t p, int nu);

    /// F_{q^d} over this field, with a fixed embedding of this field.
    FqField extend(int d) const;

    std::uint32_t p() const;
    int nu() const;
    std::uint64_t order() const;
    /// Monic modulus, coefficients low-to-high (length nu + 1).
    const std::vector<std::uint32_t>& modulus() const;

    /// Declared base of the tower, if this field came from extend().
    std::optional<FqField> base() const;
    /// Degree over the declared base (1 when there is none).
    int degree_over_base() const;

    /// Same p, nu and modulus: elements can be mixed freely.
    bool same_arithmetic(const FqField& other) const;
    bool operator==(const FqField& other) const { return same_arithmetic(other); }

    FqElem zero() const;
    FqElem one() const;
    FqElem from_int(std::int64_t v) const;
    FqElem from_code(std::uint32_t code) const;
    FqElem from_coeffs(std::span<const std::int64_t> coeffs) const;
    /// The generator x of F_p[x]/(modulus).
    FqElem generator() const;
    /// A primitive element (the table generator).
    FqElem primitive() const;

    /// Image of an element of base() under the stored embedding.
    FqElem embed(const FqElem& a) const;
    std::uint32_t embed_code(std::uint32_t base_code) const;
    /// Inverse of the embedding; empty when a is outside the embedded base.
    std::optional<FqElem> restrict_to_base(const FqElem& a) const;

    /// All elements once, in code order.
    std::vector<FqElem> enumerate(std::uint64_t bound = kDefaultEnumerationBound) const;

    // Code-level arithmetic for hot loops.
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t k) const;
    std::uint32_t from_int_code(std::int64_t v) const;
    /// a^(q^e) where q is the order of the declared base (p when there is none).
    std::uint32_t frobenius(std::uint32_t a, int e = 1) const;
    /// Discrete log to the primitive element; a must be nonzero.
    std::uint64_t log(std::uint32_t a) const;

    const detail::FieldData& data() const { return *d_; }

private:
    explicit FqField(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
    std::shared_ptr<const detail::FieldData> d_;
    friend class FqElem;
};

class FqElem {
public:
    FqElem(FqField field, std::uint32_t code) : field_(std::move(field)), code_(code) {}

    const FqField& field() const { return field_; }
    std::uint32_t code() const { return code_; }
    std::vector<std::uint32_t> coeffs() const;
    bool is_zero() const { return code_ == 0; }
    bool is_one() const { return code_ == 1; }

    FqElem operator+(const FqElem& b) const;
    FqElem operator-(const FqElem& b) const;
    FqElem operator-() const;
    FqElem operator*(const FqElem& b) const;
    FqElem operator/(const FqElem& b) const;
    FqElem inverse() const;
    bool operator==(const FqElem& b) const;
    bool operator!=(const FqElem& b) const { return !(*this == b); }

private:
    FqField field_;
    std::uint32_t code_;
};

/// a^k by square-and-multiply; negative k requires a != 0.
FqElem ff_pow(const FqElem& a, std::int64_t k);

/// Norm from a's field down to its declared base: a^((q^d - 1)/(q - 1)).
FqElem ff_norm(const FqElem& a, const FqField& down_to);

/// Multiplicative order of a nonzero element.
std::uint64_t ff_order(const FqElem& a);

/// The e in [0, r) with zeta^e = z.
std::uint64_t ff_dlog_mu(const FqElem& z, const FqElem& zeta, std::uint64_t r);

/// Smallest-code element of exact multiplicative order r (r | q - 1).
FqElem ff_root_of_unity(const FqField& field, std::uint64_t r);

/// Irreducibility of a monic polynomial over Z/p (coefficients low-to-high).
bool poly_is_irreducible_mod_p(const std::vector<std::uint32_t>& monic, std::uint32_t p);

} // namespace ncl
