#include "ncl/ff.hpp"

#include "ncl/arith.hpp"
#include "ncl/error.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <unordered_map>

namespace ncl {

namespace detail {

struct FieldArith {
    std::uint32_t p = 2;
    int nu = 1;
    std::uint64_t order = 2;
    std::vector<std::uint32_t> modulus;  // monic, low-to-high
    std::vector<std::uint32_t> pw;       // p^i, i < nu
    std::vector<std::uint32_t> exp;      // exp[i] = g^i, i < order - 1
    std::vector<std::uint32_t> log;      // log[exp[i]] = i
    std::uint32_t primitive = 1;
};

struct FieldData {
    std::shared_ptr<const FieldArith> arith;
    std::shared_ptr<const FieldData> base;
    int degree = 1;
    std::uint64_t base_order = 0;            // q of the declared base, or p
    std::vector<std::uint32_t> embed;        // base code -> code here
    std::unordered_map<std::uint32_t, std::uint32_t> restrict;
};

} // namespace detail

namespace {

using detail::FieldArith;
using detail::FieldData;
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic f, over Z/p.
Poly poly_rem(Poly a, const Poly& f, std::uint32_t p) {
    const std::size_t n = f.size() - 1;
    trim(a);
    while (a.size() > n) {
        const std::uint64_t c = a.back();
        const std::size_t shift = a.size() - 1 - n;
        for (std::size_t i = 0; i <= n; ++i) {
            const std::uint64_t sub = (c * f[i]) % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
    return poly_rem(std::move(r), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
    Poly r{1};
    r = poly_rem(r, f, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // make b monic, then a mod b
        const auto inv = static_cast<std::uint32_t>(mod_inverse(b.back(), p));
        for (auto& c : b) c = static_cast<std::uint32_t>((std::uint64_t{c} * inv) % p);
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly decode(std::uint32_t code, std::uint32_t p, int nu) {
    Poly c(static_cast<std::size_t>(nu), 0);
    for (int i = 0; i < nu; ++i) {
        c[static_cast<std::size_t>(i)] = code % p;
        code /= p;
    }
    trim(c);
    return c;
}

std::uint32_t encode(const Poly& c, std::uint32_t p) {
    std::uint32_t code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * p + c[i];
    return code;
}

Poly find_modulus(std::uint32_t p, int nu) {
    if (nu == 1) return {0, 1};
    const std::uint64_t count = ipow(p, static_cast<unsigned>(nu));
    for (std::uint64_t low = 0; low < count; ++low) {
        Poly f = decode(static_cast<std::uint32_t>(low), p, nu);
        f.resize(static_cast<std::size_t>(nu), 0);
        f.push_back(1);
        if (poly_is_irreducible_mod_p(f, p)) return f;
    }
    fail(Errc::InvalidInput, "no irreducible polynomial found");
}

std::shared_ptr<const FieldArith> build_arith(std::uint32_t p, int nu) {
    auto a = std::make_shared<FieldArith>();
    a->p = p;
    a->nu = nu;
    a->order = ipow(p, static_cast<unsigned>(nu));
    a->modulus = find_modulus(p, nu);
    a->pw.resize(static_cast<std::size_t>(nu));
    for (int i = 0; i < nu; ++i) a->pw[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(ipow(p, static_cast<unsigned>(i)));

    const std::uint64_t group = a->order - 1;
    const auto primes = prime_divisors(group);
    std::uint32_t g = 1;
    if (group > 1) {
        for (std::uint32_t cand = 2; cand < a->order; ++cand) {
            const Poly c = decode(cand, p, nu);
            bool primitive = true;
            for (auto l : primes) {
                Poly r = poly_powmod(c, group / l, a->modulus, p);
                if (r.size() == 1 && r[0] == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                g = cand;
                break;
            }
        }
    }
    a->primitive = g;
    a->exp.resize(group);
    a->log.assign(a->order, 0);
    const Poly gp = decode(g, p, nu);
    const bool g_is_x = (nu > 1 && g == p);
    Poly cur{1};
    for (std::uint64_t i = 0; i < group; ++i) {
        const std::uint32_t code = encode(cur, p);
        a->exp[i] = code;
        a->log[code] = static_cast<std::uint32_t>(i);
        if (g_is_x) {
            cur.insert(cur.begin(), 0);
            cur = poly_rem(std::move(cur), a->modulus, p);
        } else {
            cur = poly_mulmod(cur, gp, a->modulus, p);
        }
    }
    return a;
}

std::shared_ptr<const FieldArith> cached_arith(std::uint32_t p, int nu) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, int>, std::shared_ptr<const FieldArith>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, nu}];
    if (!slot) slot = build_arith(p, nu);
    return slot;
}

std::shared_ptr<const FieldData> plain_field(std::uint32_t p, int nu) {
    auto d = std::make_shared<FieldData>();
    d->arith = cached_arith(p, nu);
    d->base_order = p;
    return d;
}

} // namespace

bool poly_is_irreducible_mod_p(const std::vector<std::uint32_t>& monic, std::uint32_t p) {
    Poly f = monic;
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t n = f.size() - 1;
    if (n == 1) return true;
    if (f[0] == 0) return false;
    Poly xp{0, 1};
    Poly h = poly_rem(xp, f, p);
    for (std::size_t i = 1; i <= n / 2; ++i) {
        h = poly_powmod(h, p, f, p);
        Poly t = h;
        t.resize(std::max<std::size_t>(t.size(), 2), 0);
        t[1] = (t[1] + p - 1) % p;
        Poly g = poly_gcd(f, t, p);
        if (g.size() > 1) return false;
    }
    return true;
}

// FqField

FqField FqField::make(std::uint32_t p, int nu) {
    NCL_REQUIRE(is_prime(p), Errc::NonPrimeCharacteristic, "p = " + std::to_string(p) + " is not prime");
    NCL_REQUIRE(nu >= 1, Errc::InvalidInput, "extension degree must be positive");
    const std::uint64_t q = ipow_bounded(p, static_cast<unsigned>(nu), kMaxFieldOrder);
    NCL_REQUIRE(q != 0, Errc::SizeOverflow,
            "field of order " + std::to_string(p) + "^" + std::to_string(nu) + " exceeds the table limit");
    return FqField(plain_field(p, nu));
}

FqField FqField::extend(int d) const {
    NCL_REQUIRE(d >= 1, Errc::InvalidInput, "extension degree must be positive");
    const auto& self = *d_;
    const std::uint32_t p = self.arith->p;
    const int nu = self.arith->nu;
    const bool canonical = !self.base;

    static std::mutex mu;
    static std::map<std::tuple<std::uint32_t, int, int>, std::shared_ptr<const FieldData>> cache;
    if (canonical) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({p, nu, d});
        if (it != cache.end()) return FqField(it->second);
    }

    FqField big = make(p, nu * d);
    auto out = std::make_shared<FieldData>();
    out->arith = big.d_->arith;
    out->base = d_;
    out->degree = d;
    out->base_order = self.arith->order;

    // Root of the base modulus: smallest code in the extension.
    const auto& bm = self.arith->modulus;
    std::uint32_t theta = 0;
    bool found = false;
    for (std::uint32_t c = 0; c < big.order() && !found; ++c) {
        std::uint32_t v = 0;
        for (std::size_t i = bm.size(); i-- > 0;) v = big.add(big.mul(v, c), bm[i]);
        if (v == 0) {
            theta = c;
            found = true;
        }
    }
    NCL_REQUIRE(found, Errc::NotInTower, "base modulus has no root in the extension");

    const std::uint64_t q = self.arith->order;
    out->embed.resize(q);
    for (std::uint32_t c = 0; c < q; ++c) {
        // sum_i c_i theta^i, coefficients c_i in F_p
        std::uint32_t v = 0, rest = c, tp = 1;
        for (int i = 0; i < nu; ++i) {
            v = big.add(v, big.mul(rest % p, tp));
            rest /= p;
            tp = big.mul(tp, theta);
        }
        out->embed[c] = v;
        out->restrict.emplace(v, c);
    }
    std::shared_ptr<const FieldData> result = out;
    if (canonical) {
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(std::make_tuple(p, nu, d), result);
    }
    return FqField(result);
}

std::uint32_t FqField::p() const { return d_->arith->p; }
int FqField::nu() const { return d_->arith->nu; }
std::uint64_t FqField::order() const { return d_->arith->order; }
const std::vector<std::uint32_t>& FqField::modulus() const { return d_->arith->modulus; }

std::optional<FqField> FqField::base() const {
    if (!d_->base) return std::nullopt;
    return FqField(d_->base);
}

int FqField::degree_over_base() const { return d_->degree; }

bool FqField::same_arithmetic(const FqField& other) const { return d_->arith == other.d_->arith; }

FqElem FqField::zero() const { return FqElem(*this, 0); }
FqElem FqField::one() const { return FqElem(*this, 1); }
FqElem FqField::from_int(std::int64_t v) const { return FqElem(*this, from_int_code(v)); }

FqElem FqField::from_code(std::uint32_t code) const {
    NCL_REQUIRE(code < order(), Errc::InvalidInput, "element code out of range");
    return FqElem(*this, code);
}

FqElem FqField::from_coeffs(std::span<const std::int64_t> coeffs) const {
    const std::uint32_t p = this->p();
    Poly c;
    for (auto v : coeffs) c.push_back(static_cast<std::uint32_t>(mod_reduce(v, p)));
    c = poly_rem(std::move(c), modulus(), p);
    return FqElem(*this, encode(c, p));
}

FqElem FqField::generator() const {
    if (nu() == 1) return zero();
    return FqElem(*this, p());
}

FqElem FqField::primitive() const { return FqElem(*this, d_->arith->primitive); }

FqElem FqField::embed(const FqElem& a) const {
    NCL_REQUIRE(d_->base && a.field().same_arithmetic(FqField(d_->base)), Errc::NotInTower,
            "element is not in the declared base of this field");
    return FqElem(*this, d_->embed[a.code()]);
}

std::uint32_t FqField::embed_code(std::uint32_t base_code) const {
    if (!d_->base) return base_code;
    return d_->embed[base_code];
}

std::optional<FqElem> FqField::restrict_to_base(const FqElem& a) const {
    NCL_REQUIRE(d_->base != nullptr, Errc::NotInTower, "field has no declared base");
    auto it = d_->restrict.find(a.code());
    if (it == d_->restrict.end()) return std::nullopt;
    return FqElem(FqField(d_->base), it->second);
}

std::vector<FqElem> FqField::enumerate(std::uint64_t bound) const {
    NCL_REQUIRE(order() <= bound, Errc::EnumerationTooLarge,
            "field of order " + std::to_string(order()) + " exceeds the enumeration bound");
    std::vector<FqElem> out;
    out.reserve(order());
    for (std::uint64_t c = 0; c < order(); ++c) out.emplace_back(*this, static_cast<std::uint32_t>(c));
    return out;
}

std::uint32_t FqField::add(std::uint32_t a, std::uint32_t b) const {
    const auto& ar = *d_->arith;
    if (ar.p == 2) return a ^ b;
    if (ar.nu == 1) {
        const std::uint32_t s = a + b;
        return s >= ar.p ? s - ar.p : s;
    }
    std::uint32_t r = 0;
    for (int i = 0; i < ar.nu; ++i) {
        std::uint32_t s = a % ar.p + b % ar.p;
        if (s >= ar.p) s -= ar.p;
        r += s * ar.pw[static_cast<std::size_t>(i)];
        a /= ar.p;
        b /= ar.p;
    }
    return r;
}

std::uint32_t FqField::neg(std::uint32_t a) const {
    const auto& ar = *d_->arith;
    if (ar.p == 2) return a;
    std::uint32_t r = 0;
    for (int i = 0; i < ar.nu; ++i) {
        const std::uint32_t c = a % ar.p;
        r += (c ? ar.p - c : 0) * ar.pw[static_cast<std::size_t>(i)];
        a /= ar.p;
    }
    return r;
}

std::uint32_t FqField::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FqField::mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (a == 1) return b;
    if (b == 1) return a;
    const auto& ar = *d_->arith;
    const std::uint64_t n = ar.order - 1;
    std::uint64_t e = std::uint64_t{ar.log[a]} + ar.log[b];
    if (e >= n) e -= n;
    return ar.exp[e];
}

std::uint32_t FqField::inv(std::uint32_t a) const {
    NCL_REQUIRE(a != 0, Errc::ZeroToNegativePower, "inverse of zero");
    const auto& ar = *d_->arith;
    const std::uint64_t n = ar.order - 1;
    const std::uint64_t l = ar.log[a];
    return ar.exp[l == 0 ? 0 : n - l];
}

std::uint32_t FqField::pow(std::uint32_t a, std::uint64_t k) const {
    if (k == 0) return 1;
    if (a == 0) return 0;
    const auto& ar = *d_->arith;
    const std::uint64_t n = ar.order - 1;
    const auto e = static_cast<std::uint64_t>((static_cast<unsigned __int128>(ar.log[a]) * k) % n);
    return ar.exp[e];
}

std::uint32_t FqField::from_int_code(std::int64_t v) const {
    return static_cast<std::uint32_t>(mod_reduce(v, d_->arith->p));
}

std::uint32_t FqField::frobenius(std::uint32_t a, int e) const {
    if (a == 0) return 0;
    const auto& ar = *d_->arith;
    const std::uint64_t n = ar.order - 1;
    if (n == 0) return a;
    // orders stay below 2^22, so products fit in 64 bits
    std::uint64_t k = 1;
    const std::uint64_t q = d_->base_order % n;
    for (int i = 0; i < e; ++i) k = (k * q) % n;
    return ar.exp[(k * ar.log[a]) % n];
}

std::uint64_t FqField::log(std::uint32_t a) const {
    NCL_REQUIRE(a != 0, Errc::InvalidInput, "log of zero");
    return d_->arith->log[a];
}

// FqElem

std::vector<std::uint32_t> FqElem::coeffs() const {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(field_.nu()), 0);
    std::uint32_t v = code_;
    for (auto& x : c) {
        x = v % field_.p();
        v /= field_.p();
    }
    return c;
}

namespace {
void check_same(const FqElem& a, const FqElem& b) {
    NCL_REQUIRE(a.field().same_arithmetic(b.field()), Errc::NotInTower, "elements of different fields");
}
} // namespace

FqElem FqElem::operator+(const FqElem& b) const {
    check_same(*this, b);
    return FqElem(field_, field_.add(code_, b.code_));
}
FqElem FqElem::operator-(const FqElem& b) const {
    check_same(*this, b);
    return FqElem(field_, field_.sub(code_, b.code_));
}
FqElem FqElem::operator-() const { return FqElem(field_, field_.neg(code_)); }
FqElem FqElem::operator*(const FqElem& b) const {
    check_same(*this, b);
    return FqElem(field_, field_.mul(code_, b.code_));
}
FqElem FqElem::operator/(const FqElem& b) const {
    check_same(*this, b);
    return FqElem(field_, field_.mul(code_, field_.inv(b.code_)));
}
FqElem FqElem::inverse() const { return FqElem(field_, field_.inv(code_)); }
bool FqElem::operator==(const FqElem& b) const {
    return field_.same_arithmetic(b.field_) && code_ == b.code_;
}

FqElem ff_pow(const FqElem& a, std::int64_t k) {
    if (k < 0) {
        NCL_REQUIRE(!a.is_zero(), Errc::ZeroToNegativePower, "zero raised to a negative power");
        return ff_pow(a.inverse(), -k);
    }
    // square-and-multiply on codes
    const FqField& f = a.field();
    std::uint32_t r = 1, b = a.code();
    auto e = static_cast<std::uint64_t>(k);
    while (e) {
        if (e & 1) r = f.mul(r, b);
        b = f.mul(b, b);
        e >>= 1;
    }
    return FqElem(f, r);
}

FqElem ff_norm(const FqElem& a, const FqField& down_to) {
    const FqField& f = a.field();
    const auto base = f.base();
    if (!base) {
        NCL_REQUIRE(f.same_arithmetic(down_to), Errc::NotInTower, "field is not an extension of the target");
        return a;
    }
    NCL_REQUIRE(base->same_arithmetic(down_to), Errc::NotInTower, "target is not the declared base");
    if (a.is_zero()) return down_to.zero();
    const std::uint64_t q = down_to.order();
    const std::uint64_t big = f.order();
    const std::uint64_t e = (big - 1) / (q - 1);
    const FqElem n(f, f.pow(a.code(), e));
    auto r = f.restrict_to_base(n);
    NCL_REQUIRE(r.has_value(), Errc::NotInTower, "norm landed outside the base");
    return FqElem(down_to, r->code());
}

std::uint64_t ff_order(const FqElem& a) {
    NCL_REQUIRE(!a.is_zero(), Errc::InvalidInput, "zero has no multiplicative order");
    const std::uint64_t n = a.field().order() - 1;
    if (n == 0) return 1;
    return n / std::gcd(a.field().log(a.code()), n);
}

std::uint64_t ff_dlog_mu(const FqElem& z, const FqElem& zeta, std::uint64_t r) {
    NCL_REQUIRE(r >= 1, Errc::BadOrder, "order must be positive");
    NCL_REQUIRE(!zeta.is_zero() && ff_order(zeta) == r, Errc::BadOrder, "zeta does not have exact order r");
    NCL_REQUIRE(!z.is_zero() && ff_pow(z, static_cast<std::int64_t>(r)).is_one(), Errc::NotInSubgroup,
            "z is not an r-th root of unity");
    FqElem cur = z.field().one();
    for (std::uint64_t e = 0; e < r; ++e) {
        if (cur == z) return e;
        cur = cur * zeta;
    }
    fail(Errc::NotInSubgroup, "z is not a power of zeta");
}

FqElem ff_root_of_unity(const FqField& field, std::uint64_t r) {
    NCL_REQUIRE(r >= 1 && (field.order() - 1) % r == 0, Errc::BadOrder, "r does not divide q - 1");
    for (std::uint64_t c = 1; c < field.order(); ++c) {
        FqElem e(field, static_cast<std::uint32_t>(c));
        if (ff_order(e) == r) return e;
    }
    fail(Errc::BadOrder, "no element of the requested order");
}

} // namespace ncl
