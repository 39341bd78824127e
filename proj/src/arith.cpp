#include "ncl/arith.hpp"

#include <numeric>

namespace ncl {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> lo, hi;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            lo.push_back(d);
            if (d != n / d) hi.push_back(n / d);
        }
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

std::uint64_t ipow_bounded(std::uint64_t base, unsigned exp, std::uint64_t limit) {
    std::uint64_t r = 1;
    while (exp--) {
        if (base != 0 && r > limit / base) return 0;
        r *= base;
    }
    return r > limit ? 0 : r;
}

std::int64_t mod_reduce(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t r0 = m, r1 = mod_reduce(a, m);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) return 0;
    return mod_reduce(s0, m);
}

std::int64_t mod_pow(std::int64_t a, std::uint64_t e, std::int64_t m) {
    std::int64_t r = 1 % m, b = mod_reduce(a, m);
    while (e) {
        if (e & 1) r = mod_mul(r, b, m);
        b = mod_mul(b, b, m);
        e >>= 1;
    }
    return r;
}

std::int64_t radical(std::int64_t m) {
    std::int64_t r = 1;
    for (auto p : prime_divisors(static_cast<std::uint64_t>(m))) r *= static_cast<std::int64_t>(p);
    return r;
}

int moebius(std::uint64_t n) {
    int mu = 1;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

} // namespace ncl
