#include "ncl/ring.hpp"

#include "ncl/arith.hpp"
#include "ncl/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace ncl {

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == kUncountable || b == kUncountable) return kUncountable;
    if (a != 0 && b > (kUncountable - 1) / a) return kUncountable;
    return a * b;
}

// Per-position radices of an element layout.
void collect_radix(const Ring& r, std::vector<std::int64_t>& out) {
    switch (r.kind()) {
    case RingKind::ZMod: out.push_back(r.modulus()); break;
    case RingKind::GroupRing: out.insert(out.end(), static_cast<std::size_t>(r.group()->order()), r.modulus()); break;
    case RingKind::Product:
        for (const auto& f : r.factors()) collect_radix(*f, out);
        break;
    case RingKind::Series:
        for (int i = 0; i < r.truncation(); ++i) collect_radix(*r.series_base(), out);
        break;
    }
}

// Rank test over F_l of an n x n matrix (row-major).
bool full_rank_mod_prime(std::vector<std::int64_t> a, std::size_t n, std::int64_t l) {
    for (auto& v : a) v = mod_reduce(v, l);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = n;
        for (std::size_t i = k; i < n; ++i)
            if (a[i * n + k] != 0) {
                piv = i;
                break;
            }
        if (piv == n) return false;
        if (piv != k)
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
        const std::int64_t inv = mod_inverse(a[k * n + k], l);
        for (std::size_t i = k + 1; i < n; ++i) {
            const std::int64_t f = mod_mul(a[i * n + k], inv, l);
            if (!f) continue;
            for (std::size_t j = k; j < n; ++j) a[i * n + j] = mod_reduce(a[i * n + j] - mod_mul(f, a[k * n + j], l), l);
        }
    }
    return true;
}

bool zmod_matrix_invertible(const std::vector<std::int64_t>& a, std::size_t n, std::int64_t m) {
    for (auto l : prime_divisors(static_cast<std::uint64_t>(m)))
        if (!full_rank_mod_prime(a, n, static_cast<std::int64_t>(l))) return false;
    return true;
}

// Gauss-Jordan over Z/m with unit pivots; the matrix must be invertible.
std::vector<std::int64_t> zmod_matrix_inverse(std::vector<std::int64_t> a, std::size_t n, std::int64_t m) {
    std::vector<std::int64_t> inv(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1 % m;
    auto is_unit = [m](std::int64_t v) { return std::gcd(v, m) == 1; };
    auto row_axpy = [&](std::size_t dst, std::size_t src, std::int64_t t) {
        for (std::size_t j = 0; j < n; ++j) {
            a[dst * n + j] = mod_reduce(a[dst * n + j] + mod_mul(t, a[src * n + j], m), m);
            inv[dst * n + j] = mod_reduce(inv[dst * n + j] + mod_mul(t, inv[src * n + j], m), m);
        }
    };
    std::mt19937_64 rng(0x6e636cULL);
    for (std::size_t k = 0; k < n; ++k) {
        if (!is_unit(a[k * n + k])) {
            bool done = false;
            for (std::size_t i = k + 1; i < n && !done; ++i)
                if (is_unit(a[i * n + k])) {
                    for (std::size_t j = 0; j < n; ++j) {
                        std::swap(a[k * n + j], a[i * n + j]);
                        std::swap(inv[k * n + j], inv[i * n + j]);
                    }
                    done = true;
                }
            for (int attempt = 0; attempt < 4096 && !done; ++attempt) {
                std::vector<std::int64_t> t(n, 0);
                std::int64_t v = a[k * n + k];
                for (std::size_t i = k + 1; i < n; ++i) {
                    t[i] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(m));
                    v = mod_reduce(v + mod_mul(t[i], a[i * n + k], m), m);
                }
                if (is_unit(v)) {
                    for (std::size_t i = k + 1; i < n; ++i)
                        if (t[i]) row_axpy(k, i, t[i]);
                    done = true;
                }
            }
            NCL_REQUIRE(done, Errc::PivotSearchExhausted, "no unit pivot over Z/" + std::to_string(m));
        }
        const std::int64_t pinv = mod_inverse(a[k * n + k], m);
        for (std::size_t j = 0; j < n; ++j) {
            a[k * n + j] = mod_mul(a[k * n + j], pinv, m);
            inv[k * n + j] = mod_mul(inv[k * n + j], pinv, m);
        }
        for (std::size_t i = 0; i < n; ++i)
            if (i != k && a[i * n + k]) row_axpy(i, k, m - a[i * n + k]);
    }
    return inv;
}

} // namespace

// Ring construction

Ring::Ring(RingKind kind, std::int64_t m, GroupPtr group, std::vector<RingPtr> factors, RingPtr base, int trunc)
    : kind_(kind), m_(m), group_(std::move(group)), factors_(std::move(factors)), base_(std::move(base)),
      trunc_(trunc) {
    switch (kind_) {
    case RingKind::ZMod:
        width_ = 1;
        size_ = static_cast<std::uint64_t>(m_);
        commutative_ = true;
        characteristic_ = m_;
        break;
    case RingKind::GroupRing:
        width_ = static_cast<std::size_t>(group_->order());
        size_ = 1;
        for (int i = 0; i < group_->order(); ++i) size_ = sat_mul(size_, static_cast<std::uint64_t>(m_));
        commutative_ = group_->is_abelian();
        characteristic_ = m_;
        break;
    case RingKind::Product:
        width_ = 0;
        size_ = 1;
        commutative_ = true;
        characteristic_ = 1;
        for (const auto& f : factors_) {
            offsets_.push_back(width_);
            width_ += f->width();
            size_ = sat_mul(size_, f->size());
            commutative_ = commutative_ && f->is_commutative();
            characteristic_ = std::lcm(characteristic_, f->characteristic());
        }
        offsets_.push_back(width_);
        break;
    case RingKind::Series:
        width_ = base_->width() * static_cast<std::size_t>(trunc_);
        size_ = 1;
        for (int i = 0; i < trunc_; ++i) size_ = sat_mul(size_, base_->size());
        commutative_ = base_->is_commutative();
        characteristic_ = base_->characteristic();
        break;
    }
}

RingPtr Ring::zmod(std::int64_t m) {
    NCL_REQUIRE(m >= 2, Errc::InvalidInput, "modulus must be at least 2");
    NCL_REQUIRE(m < (std::int64_t{1} << 31), Errc::SizeOverflow, "modulus too large");
    return std::make_shared<const Ring>(RingKind::ZMod, m, nullptr, std::vector<RingPtr>{}, nullptr, 0);
}

RingPtr Ring::group_ring(std::int64_t m, GroupPtr group) {
    NCL_REQUIRE(m >= 2, Errc::InvalidInput, "modulus must be at least 2");
    NCL_REQUIRE(group != nullptr, Errc::InvalidInput, "missing group");
    const std::uint64_t size =
        ipow_bounded(static_cast<std::uint64_t>(m), static_cast<unsigned>(group->order()), kMaxGroupRingSize);
    NCL_REQUIRE(size != 0, Errc::SizeOverflow, "group ring has more than 10^9 elements");
    return std::make_shared<const Ring>(RingKind::GroupRing, m, std::move(group), std::vector<RingPtr>{}, nullptr, 0);
}

RingPtr Ring::group_ring(std::int64_t m, const GroupTable& group) {
    return group_ring(m, std::make_shared<const GroupTable>(group));
}

RingPtr Ring::product(std::vector<RingPtr> factors) {
    NCL_REQUIRE(!factors.empty(), Errc::InvalidInput, "empty product");
    return std::make_shared<const Ring>(RingKind::Product, 0, nullptr, std::move(factors), nullptr, 0);
}

RingPtr Ring::series(RingPtr base, int truncation) {
    NCL_REQUIRE(truncation >= 1, Errc::InvalidInput, "truncation order must be at least 1");
    NCL_REQUIRE(base != nullptr, Errc::InvalidInput, "missing base ring");
    return std::make_shared<const Ring>(RingKind::Series, 0, nullptr, std::vector<RingPtr>{}, std::move(base),
                                        truncation);
}

RingPtr Ring::coefficient_ring() const {
    if (kind_ == RingKind::Series) return base_->coefficient_ring();
    return ptr();
}

bool Ring::same(const Ring& o) const {
    if (this == &o) return true;
    if (kind_ != o.kind_) return false;
    switch (kind_) {
    case RingKind::ZMod: return m_ == o.m_;
    case RingKind::GroupRing: return m_ == o.m_ && (group_ == o.group_ || *group_ == *o.group_);
    case RingKind::Product:
        if (factors_.size() != o.factors_.size()) return false;
        for (std::size_t i = 0; i < factors_.size(); ++i)
            if (!factors_[i]->same(*o.factors_[i])) return false;
        return true;
    case RingKind::Series: return trunc_ == o.trunc_ && base_->same(*o.base_);
    }
    return false;
}

std::string Ring::describe() const {
    switch (kind_) {
    case RingKind::ZMod: return "Z/" + std::to_string(m_);
    case RingKind::GroupRing:
        return "Z/" + std::to_string(m_) + "[" + (group_->name().empty() ? "G" + std::to_string(group_->order()) : group_->name()) + "]";
    case RingKind::Product: {
        std::string s;
        for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? " x " : "") + factors_[i]->describe();
        return "(" + s + ")";
    }
    case RingKind::Series: return base_->describe() + "[T]/(T^" + std::to_string(trunc_) + ")";
    }
    return "?";
}

RingElem Ring::zero() const { return RingElem(ptr(), std::vector<Value>(width_, 0)); }

RingElem Ring::one() const {
    std::vector<Value> v(width_, 0);
    set_one(v);
    return RingElem(ptr(), std::move(v));
}

RingElem Ring::from_int(std::int64_t x) const {
    std::vector<Value> v(width_, 0);
    set_int(x, v);
    return RingElem(ptr(), std::move(v));
}

RingElem Ring::from_values(std::vector<Value> v) const {
    NCL_REQUIRE(v.size() == width_, Errc::InvalidInput, "element has the wrong width for " + describe());
    std::vector<std::int64_t> radix;
    collect_radix(*this, radix);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_reduce(v[i], radix[i]);
    return RingElem(ptr(), std::move(v));
}

RingElem Ring::group_element(int g) const {
    NCL_REQUIRE(kind_ == RingKind::GroupRing, Errc::InvalidInput, "not a group ring");
    NCL_REQUIRE(g >= 0 && g < group_->order(), Errc::InvalidInput, "group index out of range");
    std::vector<Value> v(width_, 0);
    v[static_cast<std::size_t>(g)] = 1 % m_;
    return RingElem(ptr(), std::move(v));
}

RingElem Ring::random(std::mt19937_64& rng) const {
    std::vector<std::int64_t> radix;
    collect_radix(*this, radix);
    std::vector<Value> v(width_);
    for (std::size_t i = 0; i < width_; ++i) v[i] = static_cast<Value>(rng() % static_cast<std::uint64_t>(radix[i]));
    return RingElem(ptr(), std::move(v));
}

RingElem Ring::element_at(std::uint64_t index) const {
    std::vector<std::int64_t> radix;
    collect_radix(*this, radix);
    std::vector<Value> v(width_);
    for (std::size_t i = 0; i < width_; ++i) {
        v[i] = static_cast<Value>(index % static_cast<std::uint64_t>(radix[i]));
        index /= static_cast<std::uint64_t>(radix[i]);
    }
    return RingElem(ptr(), std::move(v));
}

std::vector<RingElem> Ring::enumerate(std::uint64_t bound) const {
    NCL_REQUIRE(size_ != kUncountable && size_ <= bound, Errc::EnumerationTooLarge,
            describe() + " is too large to enumerate");
    std::vector<RingElem> out;
    out.reserve(size_);
    for (std::uint64_t i = 0; i < size_; ++i) out.push_back(element_at(i));
    return out;
}

// Raw arithmetic

void Ring::set_zero(Span out) const { std::fill(out.begin(), out.end(), 0); }

void Ring::set_one(Span out) const { set_int(1, out); }

void Ring::set_int(std::int64_t x, Span out) const {
    set_zero(out);
    switch (kind_) {
    case RingKind::ZMod: out[0] = mod_reduce(x, m_); break;
    case RingKind::GroupRing: out[static_cast<std::size_t>(group_->identity())] = mod_reduce(x, m_); break;
    case RingKind::Product:
        for (std::size_t i = 0; i < factors_.size(); ++i)
            factors_[i]->set_int(x, out.subspan(offsets_[i], factors_[i]->width()));
        break;
    case RingKind::Series: base_->set_int(x, out.subspan(0, base_->width())); break;
    }
}

void Ring::add(CSpan a, CSpan b, Span out) const {
    switch (kind_) {
    case RingKind::ZMod:
    case RingKind::GroupRing:
        for (std::size_t i = 0; i < width_; ++i) {
            Value s = a[i] + b[i];
            out[i] = s >= m_ ? s - m_ : s;
        }
        break;
    case RingKind::Product:
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const auto w = factors_[i]->width();
            factors_[i]->add(a.subspan(offsets_[i], w), b.subspan(offsets_[i], w), out.subspan(offsets_[i], w));
        }
        break;
    case RingKind::Series: {
        const auto w = base_->width();
        for (int k = 0; k < trunc_; ++k) {
            const auto o = static_cast<std::size_t>(k) * w;
            base_->add(a.subspan(o, w), b.subspan(o, w), out.subspan(o, w));
        }
        break;
    }
    }
}

void Ring::neg(CSpan a, Span out) const {
    switch (kind_) {
    case RingKind::ZMod:
    case RingKind::GroupRing:
        for (std::size_t i = 0; i < width_; ++i) out[i] = a[i] == 0 ? 0 : m_ - a[i];
        break;
    case RingKind::Product:
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const auto w = factors_[i]->width();
            factors_[i]->neg(a.subspan(offsets_[i], w), out.subspan(offsets_[i], w));
        }
        break;
    case RingKind::Series: {
        const auto w = base_->width();
        for (int k = 0; k < trunc_; ++k) {
            const auto o = static_cast<std::size_t>(k) * w;
            base_->neg(a.subspan(o, w), out.subspan(o, w));
        }
        break;
    }
    }
}

void Ring::sub(CSpan a, CSpan b, Span out) const {
    std::vector<Value> nb(width_);
    neg(b, nb);
    add(a, nb, out);
}

void Ring::mul_acc(CSpan a, CSpan b, Span acc) const {
    switch (kind_) {
    case RingKind::ZMod: acc[0] = (acc[0] + mod_mul(a[0], b[0], m_)) % m_; break;
    case RingKind::GroupRing: {
        const int g = group_->order();
        for (int x = 0; x < g; ++x) {
            const Value ax = a[static_cast<std::size_t>(x)];
            if (!ax) continue;
            for (int y = 0; y < g; ++y) {
                const Value by = b[static_cast<std::size_t>(y)];
                if (!by) continue;
                auto& slot = acc[static_cast<std::size_t>(group_->mul(x, y))];
                slot = (slot + mod_mul(ax, by, m_)) % m_;
            }
        }
        break;
    }
    case RingKind::Product:
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const auto w = factors_[i]->width();
            factors_[i]->mul_acc(a.subspan(offsets_[i], w), b.subspan(offsets_[i], w), acc.subspan(offsets_[i], w));
        }
        break;
    case RingKind::Series: {
        const auto w = base_->width();
        for (int i = 0; i < trunc_; ++i) {
            const auto ai = a.subspan(static_cast<std::size_t>(i) * w, w);
            if (base_->is_zero(ai)) continue;
            for (int j = 0; i + j < trunc_; ++j) {
                base_->mul_acc(ai, b.subspan(static_cast<std::size_t>(j) * w, w),
                               acc.subspan(static_cast<std::size_t>(i + j) * w, w));
            }
        }
        break;
    }
    }
}

void Ring::mul(CSpan a, CSpan b, Span out) const {
    set_zero(out);
    mul_acc(a, b, out);
}

bool Ring::is_zero(CSpan a) const {
    return std::all_of(a.begin(), a.end(), [](Value v) { return v == 0; });
}

bool Ring::is_one(CSpan a) const {
    std::vector<Value> one(width_);
    set_one(one);
    return std::equal(a.begin(), a.end(), one.begin());
}

bool Ring::is_unit(CSpan a) const {
    switch (kind_) {
    case RingKind::ZMod: return std::gcd(a[0], m_) == 1;
    case RingKind::GroupRing: {
        // right-regular matrix R[x][y] = a_{x^{-1} y}
        const int g = group_->order();
        std::vector<std::int64_t> mat(static_cast<std::size_t>(g * g));
        for (int x = 0; x < g; ++x)
            for (int y = 0; y < g; ++y)
                mat[static_cast<std::size_t>(x * g + y)] = a[static_cast<std::size_t>(group_->mul(group_->inverse(x), y))];
        return zmod_matrix_invertible(mat, static_cast<std::size_t>(g), m_);
    }
    case RingKind::Product:
        for (std::size_t i = 0; i < factors_.size(); ++i)
            if (!factors_[i]->is_unit(a.subspan(offsets_[i], factors_[i]->width()))) return false;
        return true;
    case RingKind::Series: return base_->is_unit(a.subspan(0, base_->width()));
    }
    return false;
}

bool Ring::group_ring_inverse(CSpan a, Span out) const {
    const int g = group_->order();
    std::vector<std::int64_t> mat(static_cast<std::size_t>(g * g));
    for (int x = 0; x < g; ++x)
        for (int y = 0; y < g; ++y)
            mat[static_cast<std::size_t>(x * g + y)] = a[static_cast<std::size_t>(group_->mul(group_->inverse(x), y))];
    if (!zmod_matrix_invertible(mat, static_cast<std::size_t>(g), m_)) return false;
    // x R = e_identity  =>  x = e_identity R^{-1}
    const auto inv = zmod_matrix_inverse(std::move(mat), static_cast<std::size_t>(g), m_);
    const auto id = static_cast<std::size_t>(group_->identity());
    for (std::size_t y = 0; y < static_cast<std::size_t>(g); ++y) out[y] = inv[id * static_cast<std::size_t>(g) + y];
    return true;
}

bool Ring::inverse(CSpan a, Span out) const {
    switch (kind_) {
    case RingKind::ZMod: {
        if (std::gcd(a[0], m_) != 1) return false;
        out[0] = mod_inverse(a[0], m_);
        return true;
    }
    case RingKind::GroupRing: {
        if (!group_ring_inverse(a, out)) return false;
        break;
    }
    case RingKind::Product:
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const auto w = factors_[i]->width();
            if (!factors_[i]->inverse(a.subspan(offsets_[i], w), out.subspan(offsets_[i], w))) return false;
        }
        return true;
    case RingKind::Series: {
        // right inverse g: f g = 1, g_n = -f_0^{-1} sum_{k>=1} f_k g_{n-k}
        const auto w = base_->width();
        std::vector<Value> f0inv(w);
        if (!base_->inverse(a.subspan(0, w), f0inv)) return false;
        set_zero(out);
        std::copy(f0inv.begin(), f0inv.end(), out.begin());
        std::vector<Value> acc(w), tmp(w);
        for (int n = 1; n < trunc_; ++n) {
            base_->set_zero(acc);
            for (int k = 1; k <= n; ++k)
                base_->mul_acc(a.subspan(static_cast<std::size_t>(k) * w, w),
                               CSpan(out.data() + static_cast<std::size_t>(n - k) * w, w), acc);
            base_->mul(f0inv, acc, tmp);
            base_->neg(tmp, out.subspan(static_cast<std::size_t>(n) * w, w));
        }
        break;
    }
    }
    // A one-sided inverse in a finite ring is two-sided; assert it.
    std::vector<Value> check(width_);
    mul(out, a, check);
    NCL_REQUIRE(is_one(check), Errc::NotAUnit, "inverse failed the two-sided check in " + describe());
    mul(a, out, check);
    NCL_REQUIRE(is_one(check), Errc::NotAUnit, "inverse failed the two-sided check in " + describe());
    return true;
}

// RingElem

RingElem::RingElem(RingPtr ring, std::vector<Ring::Value> v) : ring_(std::move(ring)), v_(std::move(v)) {}

namespace {
void check_ring(const RingElem& a, const RingElem& b) {
    NCL_REQUIRE(a.ring() == b.ring() || a.ring()->same(*b.ring()), Errc::RingMismatch,
            a.ring()->describe() + " vs " + b.ring()->describe());
}
} // namespace

RingElem RingElem::inverse() const {
    std::vector<Ring::Value> out(v_.size());
    NCL_REQUIRE(ring_->inverse(v_, out), Errc::NotAUnit, to_string() + " is not a unit of " + ring_->describe());
    return RingElem(ring_, std::move(out));
}

RingElem RingElem::pow(std::int64_t k) const {
    if (k < 0) return inverse().pow(-k);
    RingElem r = ring_->one(), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

RingElem RingElem::operator+(const RingElem& b) const {
    check_ring(*this, b);
    std::vector<Ring::Value> out(v_.size());
    ring_->add(v_, b.v_, out);
    return RingElem(ring_, std::move(out));
}

RingElem RingElem::operator-(const RingElem& b) const {
    check_ring(*this, b);
    std::vector<Ring::Value> out(v_.size());
    ring_->sub(v_, b.v_, out);
    return RingElem(ring_, std::move(out));
}

RingElem RingElem::operator-() const {
    std::vector<Ring::Value> out(v_.size());
    ring_->neg(v_, out);
    return RingElem(ring_, std::move(out));
}

RingElem RingElem::operator*(const RingElem& b) const {
    check_ring(*this, b);
    std::vector<Ring::Value> out(v_.size());
    ring_->mul(v_, b.v_, out);
    return RingElem(ring_, std::move(out));
}

RingElem& RingElem::operator+=(const RingElem& b) {
    check_ring(*this, b);
    ring_->add(v_, b.v_, v_);
    return *this;
}

RingElem& RingElem::operator-=(const RingElem& b) {
    check_ring(*this, b);
    ring_->sub(v_, b.v_, v_);
    return *this;
}

bool RingElem::operator==(const RingElem& b) const {
    return (ring_ == b.ring_ || ring_->same(*b.ring_)) && v_ == b.v_;
}

RingElem RingElem::component(std::size_t i) const {
    if (ring_->kind() == RingKind::Product) {
        const auto& f = ring_->factors().at(i);
        std::size_t off = 0;
        for (std::size_t k = 0; k < i; ++k) off += ring_->factors()[k]->width();
        return RingElem(f, std::vector<Ring::Value>(v_.begin() + static_cast<std::ptrdiff_t>(off),
                                                    v_.begin() + static_cast<std::ptrdiff_t>(off + f->width())));
    }
    NCL_REQUIRE(ring_->kind() == RingKind::Series, Errc::InvalidInput, "component() needs a product or series");
    NCL_REQUIRE(i < static_cast<std::size_t>(ring_->truncation()), Errc::InvalidInput, "coefficient index out of range");
    const auto& b = ring_->series_base();
    const auto w = b->width();
    return RingElem(b, std::vector<Ring::Value>(v_.begin() + static_cast<std::ptrdiff_t>(i * w),
                                                v_.begin() + static_cast<std::ptrdiff_t>((i + 1) * w)));
}

std::string RingElem::to_string() const {
    std::ostringstream os;
    switch (ring_->kind()) {
    case RingKind::ZMod: os << v_[0]; break;
    case RingKind::GroupRing: {
        const auto& g = *ring_->group();
        os << '[';
        bool first = true;
        for (int x = 0; x < g.order(); ++x) {
            const auto c = v_[static_cast<std::size_t>(x)];
            if (!c) continue;
            if (!first) os << " + ";
            first = false;
            if (x == g.identity())
                os << c;
            else if (c == 1)
                os << g.label(x);
            else
                os << c << '*' << g.label(x);
        }
        if (first) os << '0';
        os << ']';
        break;
    }
    case RingKind::Product:
        os << '(';
        for (std::size_t i = 0; i < ring_->factors().size(); ++i) os << (i ? ", " : "") << component(i).to_string();
        os << ')';
        break;
    case RingKind::Series: {
        const int m = ring_->truncation();
        for (int k = 0; k < m; ++k) {
            if (k) os << " + ";
            os << component(static_cast<std::size_t>(k)).to_string();
            if (k == 1) os << "*T";
            if (k > 1) os << "*T^" << k;
        }
        os << " (mod T^" << m << ')';
        break;
    }
    }
    return os.str();
}

RingElem make_series_elem(const RingPtr& series_ring, const std::vector<RingElem>& coeffs) {
    NCL_REQUIRE(series_ring->kind() == RingKind::Series, Errc::InvalidInput, "not a series ring");
    const auto& b = series_ring->series_base();
    std::vector<Ring::Value> v(series_ring->width(), 0);
    const std::size_t n = std::min<std::size_t>(coeffs.size(), static_cast<std::size_t>(series_ring->truncation()));
    for (std::size_t k = 0; k < n; ++k) {
        NCL_REQUIRE(coeffs[k].ring()->same(*b), Errc::RingMismatch, "series coefficient ring mismatch");
        std::copy(coeffs[k].values().begin(), coeffs[k].values().end(),
                  v.begin() + static_cast<std::ptrdiff_t>(k * b->width()));
    }
    return RingElem(series_ring, std::move(v));
}

RingElem make_product_elem(const RingPtr& product_ring, const std::vector<RingElem>& parts) {
    NCL_REQUIRE(product_ring->kind() == RingKind::Product && parts.size() == product_ring->factors().size(),
            Errc::InvalidInput, "component count mismatch");
    std::vector<Ring::Value> v;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        NCL_REQUIRE(parts[i].ring()->same(*product_ring->factors()[i]), Errc::RingMismatch, "product component ring mismatch");
        v.insert(v.end(), parts[i].values().begin(), parts[i].values().end());
    }
    return RingElem(product_ring, std::move(v));
}

// UnitGroup

UnitGroup::UnitGroup(RingPtr ring, std::uint64_t bound) : ring_(std::move(ring)) {
    NCL_REQUIRE(ring_->size() != kUncountable && ring_->size() <= bound, Errc::EnumerationTooLarge,
            ring_->describe() + " is too large to enumerate its units");
    collect_radix(*ring_, radix_);
    index_.assign(ring_->size(), 0);
    for (std::uint64_t i = 0; i < ring_->size(); ++i) {
        RingElem e = ring_->element_at(i);
        if (e.is_unit()) {
            elems_.push_back(std::move(e));
            index_[i] = elems_.size();
        }
    }
}

std::uint64_t UnitGroup::encode(Ring::CSpan a) const {
    std::uint64_t idx = 0;
    for (std::size_t i = radix_.size(); i-- > 0;)
        idx = idx * static_cast<std::uint64_t>(radix_[i]) + static_cast<std::uint64_t>(a[i]);
    return idx;
}

std::int64_t UnitGroup::index_of(const RingElem& u) const {
    NCL_REQUIRE(u.ring()->same(*ring_), Errc::RingMismatch, "unit from another ring");
    return index_of_raw(u.data());
}

std::size_t UnitGroup::mul(std::size_t a, std::size_t b) const {
    return static_cast<std::size_t>(index_of(elems_[a] * elems_[b]));
}

std::size_t UnitGroup::inverse(std::size_t a) const {
    return static_cast<std::size_t>(index_of(elems_[a].inverse()));
}

std::vector<std::size_t> UnitGroup::closure(const std::vector<std::size_t>& generators) const {
    const std::size_t n = elems_.size();
    const auto one = static_cast<std::size_t>(index_of(ring_->one()));
    std::vector<char> in(n, 0);
    std::vector<std::size_t> members{one};
    in[one] = 1;
    std::vector<std::size_t> gens;
    for (std::size_t g : generators) {
        if (in[g]) continue;
        gens.push_back(g);
        // re-close: multiply every member by every kept generator until stable
        std::vector<std::size_t> frontier = members;
        while (!frontier.empty()) {
            std::vector<std::size_t> next;
            for (std::size_t h : frontier)
                for (std::size_t s : gens) {
                    const std::size_t p = mul(h, s);
                    if (!in[p]) {
                        in[p] = 1;
                        members.push_back(p);
                        next.push_back(p);
                    }
                }
            frontier = std::move(next);
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

// Jacobson radical

std::vector<RingElem> JacobsonRadical::elements(std::uint64_t bound) const {
    std::vector<RingElem> out;
    for (const auto& x : ring->enumerate(bound))
        if (contains(x)) out.push_back(x);
    return out;
}

JacobsonRadical ring_jacobson_radical_definitional(const RingPtr& ring, std::uint64_t bound) {
    const auto all = ring->enumerate(bound);
    const RingElem one = ring->one();
    auto members = std::make_shared<std::set<std::vector<Ring::Value>>>();
    for (const auto& x : all) {
        bool ok = true;
        for (const auto& r : all) {
            if (!(one - r * x).is_unit()) {
                ok = false;
                break;
            }
        }
        if (ok) members->insert(x.values());
    }
    JacobsonRadical jr;
    jr.ring = ring;
    jr.structural = false;
    jr.contains = [members](const RingElem& x) { return members->count(x.values()) > 0; };
    return jr;
}

namespace {

// Membership rule for Z/m[G]; empty when no structural rule applies.
std::optional<std::function<bool(const RingElem&)>> group_ring_radical_rule(const RingPtr& ring) {
    const std::int64_t m = ring->modulus();
    const auto& g = ring->group();
    struct Part {
        std::int64_t l, power;
        int rule;  // 0: augmentation, 1: l-multiples, 2: nilpotent mod l
    };
    std::vector<Part> parts;
    for (auto lu : prime_divisors(static_cast<std::uint64_t>(m))) {
        const auto l = static_cast<std::int64_t>(lu);
        std::int64_t pw = 1;
        while (m % (pw * l) == 0) pw *= l;
        int rule;
        if (g->is_l_group(l))
            rule = 0;
        else if (g->order() % l != 0)
            rule = 1;
        else if (g->is_abelian())
            rule = 2;
        else
            return std::nullopt;
        parts.push_back({l, pw, rule});
    }
    auto grp = g;
    return [parts, grp](const RingElem& x) {
        const auto& v = x.values();
        for (const auto& part : parts) {
            if (part.rule == 0) {
                std::int64_t s = 0;
                for (auto c : v) s += c;
                if (s % part.l != 0) return false;
            } else if (part.rule == 1) {
                for (auto c : v)
                    if (c % part.l != 0) return false;
            } else {
                auto fl = Ring::group_ring(part.l, grp);
                std::vector<Ring::Value> red(v.size());
                for (std::size_t i = 0; i < v.size(); ++i) red[i] = v[i] % part.l;
                RingElem y(fl, red);
                if (!y.pow(grp->order()).is_zero()) return false;
            }
        }
        return true;
    };
}

std::function<bool(const RingElem&)> radical_rule(const RingPtr& ring) {
    switch (ring->kind()) {
    case RingKind::ZMod: {
        const std::int64_t rad = radical(ring->modulus());
        return [rad](const RingElem& x) { return x.values()[0] % rad == 0; };
    }
    case RingKind::GroupRing: {
        if (auto rule = group_ring_radical_rule(ring)) return *rule;
        auto def = ring_jacobson_radical_definitional(ring);
        return def.contains;
    }
    case RingKind::Product: {
        std::vector<std::function<bool(const RingElem&)>> rules;
        for (const auto& f : ring->factors()) rules.push_back(radical_rule(f));
        return [rules](const RingElem& x) {
            for (std::size_t i = 0; i < rules.size(); ++i)
                if (!rules[i](x.component(i))) return false;
            return true;
        };
    }
    case RingKind::Series: {
        auto base = radical_rule(ring->series_base());
        return [base](const RingElem& x) { return base(x.component(0)); };
    }
    }
    return {};
}

} // namespace

JacobsonRadical ring_jacobson_radical(const RingPtr& ring) {
    JacobsonRadical jr;
    jr.ring = ring;
    jr.structural = true;
    jr.contains = radical_rule(ring);
    return jr;
}

// RingHom

RingHom RingHom::identity(RingPtr ring) {
    RingHom h;
    h.kind_ = HomKind::Identity;
    h.source_ = ring;
    h.target_ = std::move(ring);
    return h;
}

RingHom RingHom::character(RingPtr source, RingElem zeta) {
    NCL_REQUIRE(source->kind() == RingKind::GroupRing, Errc::InvalidInput, "character needs a group ring source");
    const int gen = source->group()->cyclic_generator();
    NCL_REQUIRE(gen >= 0, Errc::NonCyclicGroup, "character needs a cyclic group");
    const int r = source->group()->order();
    NCL_REQUIRE(zeta.pow(r).is_one(), Errc::BadCharacterOrder, "zeta^|G| != 1");
    NCL_REQUIRE(source->modulus() % zeta.ring()->characteristic() == 0, Errc::InvalidInput,
            "target characteristic must divide the source modulus");
    RingHom h;
    h.kind_ = HomKind::Character;
    h.source_ = std::move(source);
    h.target_ = zeta.ring();
    // projection[x] = k with x = gen^k
    h.projection_.assign(static_cast<std::size_t>(r), 0);
    int cur = h.source_->group()->identity();
    for (int k = 0; k < r; ++k) {
        h.projection_[static_cast<std::size_t>(cur)] = k;
        cur = h.source_->group()->mul(cur, gen);
    }
    h.zeta_ = std::move(zeta);
    return h;
}

RingHom RingHom::abelianization(RingPtr source) {
    NCL_REQUIRE(source->kind() == RingKind::GroupRing, Errc::InvalidInput, "abelianization needs a group ring source");
    auto ab = abelianize(*source->group());
    RingHom h;
    h.kind_ = HomKind::Abelianization;
    h.target_ = Ring::group_ring(source->modulus(), ab.quotient);
    h.source_ = std::move(source);
    h.projection_ = std::move(ab.projection);
    return h;
}

RingHom RingHom::augmentation(RingPtr source) {
    NCL_REQUIRE(source->kind() == RingKind::GroupRing, Errc::InvalidInput, "augmentation needs a group ring source");
    RingHom h;
    h.kind_ = HomKind::Augmentation;
    h.target_ = Ring::zmod(source->modulus());
    h.source_ = std::move(source);
    return h;
}

RingHom RingHom::zmod_projection(RingPtr source, std::int64_t new_modulus) {
    NCL_REQUIRE(source->kind() == RingKind::ZMod || source->kind() == RingKind::GroupRing, Errc::InvalidInput,
            "projection needs Z/m or Z/m[G]");
    NCL_REQUIRE(new_modulus >= 2 && source->modulus() % new_modulus == 0, Errc::InvalidInput,
            "new modulus must divide the old one");
    RingHom h;
    h.kind_ = HomKind::ZModProjection;
    h.target_ = source->kind() == RingKind::ZMod ? Ring::zmod(new_modulus)
                                                 : Ring::group_ring(new_modulus, source->group());
    h.source_ = std::move(source);
    return h;
}

RingHom RingHom::compose(const RingHom& first, const RingHom& second) {
    NCL_REQUIRE(first.target()->same(*second.source()), Errc::RingMismatch, "homs do not compose");
    RingHom h;
    h.kind_ = HomKind::Compose;
    h.source_ = first.source();
    h.target_ = second.target();
    h.first_ = std::make_shared<const RingHom>(first);
    h.second_ = std::make_shared<const RingHom>(second);
    return h;
}

std::string RingHom::describe() const {
    switch (kind_) {
    case HomKind::Identity: return "identity on " + source_->describe();
    case HomKind::Character: return "character s -> " + zeta_->to_string() + " into " + target_->describe();
    case HomKind::Abelianization: return "abelianization " + source_->describe() + " -> " + target_->describe();
    case HomKind::Augmentation: return "augmentation " + source_->describe() + " -> " + target_->describe();
    case HomKind::ZModProjection: return "reduction " + source_->describe() + " -> " + target_->describe();
    case HomKind::Compose: return second_->describe() + " after " + first_->describe();
    }
    return "?";
}

RingElem RingHom::apply_base(const RingElem& a) const {
    NCL_REQUIRE(a.ring()->same(*source_), Errc::RingMismatch, "hom applied outside its source");
    const auto& v = a.values();
    switch (kind_) {
    case HomKind::Identity: return a;
    case HomKind::Character: {
        RingElem out = target_->zero();
        RingElem zk = target_->one();
        std::vector<RingElem> powers;
        for (int k = 0; k < source_->group()->order(); ++k) {
            powers.push_back(zk);
            zk = zk * *zeta_;
        }
        for (std::size_t x = 0; x < v.size(); ++x)
            if (v[x]) out += target_->from_int(v[x]) * powers[static_cast<std::size_t>(projection_[x])];
        return out;
    }
    case HomKind::Abelianization: {
        std::vector<Ring::Value> w(target_->width(), 0);
        for (std::size_t x = 0; x < v.size(); ++x) {
            auto& slot = w[static_cast<std::size_t>(projection_[x])];
            slot = (slot + v[x]) % source_->modulus();
        }
        return RingElem(target_, std::move(w));
    }
    case HomKind::Augmentation: {
        std::int64_t s = 0;
        for (auto c : v) s = (s + c) % source_->modulus();
        return target_->from_int(s);
    }
    case HomKind::ZModProjection: {
        std::vector<Ring::Value> w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] % target_->modulus();
        return RingElem(target_, std::move(w));
    }
    case HomKind::Compose: return second_->apply(first_->apply(a));
    }
    return a;
}

RingPtr RingHom::image_ring(const RingPtr& ring) const {
    if (ring->same(*source_)) return target_;
    NCL_REQUIRE(ring->kind() == RingKind::Series, Errc::RingMismatch, "hom applied outside its source");
    return Ring::series(image_ring(ring->series_base()), ring->truncation());
}

RingElem RingHom::apply(const RingElem& a) const {
    if (a.ring()->same(*source_)) return apply_base(a);
    NCL_REQUIRE(a.ring()->kind() == RingKind::Series, Errc::RingMismatch, "hom applied outside its source");
    auto target = image_ring(a.ring());
    std::vector<RingElem> coeffs;
    for (int k = 0; k < a.ring()->truncation(); ++k) coeffs.push_back(apply(a.component(static_cast<std::size_t>(k))));
    return make_series_elem(target, coeffs);
}

RingElem hensel_root_of_unity(const RingPtr& zmod, std::int64_t r) {
    NCL_REQUIRE(zmod->kind() == RingKind::ZMod, Errc::InvalidInput, "Hensel lifting needs Z/l^n");
    const std::int64_t m = zmod->modulus();
    const auto primes = prime_divisors(static_cast<std::uint64_t>(m));
    NCL_REQUIRE(primes.size() == 1, Errc::BadCharacterOrder, "modulus is not a prime power");
    const auto l = static_cast<std::int64_t>(primes[0]);
    NCL_REQUIRE(r >= 1 && (l - 1) % r == 0, Errc::BadCharacterOrder,
            "no root of unity of order " + std::to_string(r) + " in Z/" + std::to_string(m));
    auto exact_order = [](std::int64_t x, std::int64_t r_, std::int64_t mod) {
        if (mod_pow(x, static_cast<std::uint64_t>(r_), mod) != 1 % mod) return false;
        for (auto q : prime_divisors(static_cast<std::uint64_t>(r_)))
            if (mod_pow(x, static_cast<std::uint64_t>(r_) / q, mod) == 1 % mod) return false;
        return true;
    };
    std::int64_t x = -1;
    for (std::int64_t c = 1; c < l; ++c)
        if (exact_order(c, r, l)) {
            x = c;
            break;
        }
    NCL_REQUIRE(x >= 0, Errc::BadCharacterOrder, "no root of unity mod l");
    // Newton: x <- x - (x^r - 1) / (r x^(r-1))
    for (int it = 0; it < 64; ++it) {
        const std::int64_t fx = mod_reduce(mod_pow(x, static_cast<std::uint64_t>(r), m) - 1, m);
        if (fx == 0) break;
        const std::int64_t d = mod_mul(r % m, mod_pow(x, static_cast<std::uint64_t>(r - 1), m), m);
        const std::int64_t dinv = mod_inverse(d, m);
        x = mod_reduce(x - mod_mul(fx, dinv, m), m);
    }
    NCL_REQUIRE(exact_order(x, r, m), Errc::BadCharacterOrder, "Hensel lift failed");
    return zmod->from_int(x);
}

} // namespace ncl
