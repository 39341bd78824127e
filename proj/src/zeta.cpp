#include "ncl/zeta.hpp"

#include "ncl/arith.hpp"
#include "ncl/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ncl {

namespace {

void trim(QPoly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    if (p.empty()) p.push_back(0);
}

bool is_zero(const QPoly& p) { return p.size() == 1 && p[0] == 0; }

QPoly mul(const QPoly& a, const QPoly& b) {
    QPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    trim(c);
    return c;
}

// a = q b + r
void divmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
    trim(a);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, 0);
    while (!is_zero(a) && a.size() >= b.size()) {
        const std::size_t s = a.size() - b.size();
        const mpq_class c = a.back() / b.back();
        q[s] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[s + i] -= c * b[i];
        a.pop_back();
        trim(a);
    }
    trim(q);
    r = a;
}

QPoly poly_gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!is_zero(b)) {
        QPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

void normalize(RationalFunction& f) {
    trim(f.num);
    trim(f.den);
    const QPoly g = poly_gcd(f.num, f.den);
    if (g.size() > 1) {
        QPoly q, r;
        divmod(f.num, g, q, r);
        f.num = q;
        divmod(f.den, g, q, r);
        f.den = q;
    }
    const mpq_class c = f.den[0];
    NCL_REQUIRE(c != 0, Errc::InvalidInput, "denominator vanishes at T = 0");
    for (auto& x : f.num) x /= c;
    for (auto& x : f.den) x /= c;
}

std::string term_str(const mpq_class& c, int k, bool first) {
    std::ostringstream os;
    mpq_class a = abs(c);
    if (first)
        os << (c < 0 ? "-" : "");
    else
        os << (c < 0 ? " - " : " + ");
    if (k == 0 || a != 1) os << a.get_str();
    if (k >= 1) os << 'T';
    if (k >= 2) os << '^' << k;
    return os.str();
}

bool integral(const QPoly& p) {
    return std::all_of(p.begin(), p.end(), [](const mpq_class& c) { return c.get_den() == 1; });
}

// Integer reciprocal roots a of p, i.e. factors (1 - a T), with multiplicity.
std::vector<std::int64_t> pull_linear_factors(QPoly& p) {
    std::vector<std::int64_t> roots;
    if (!integral(p) || p[0] != 1) return roots;
    bool progress = true;
    while (progress && p.size() > 1) {
        progress = false;
        const mpz_class lead = abs(p.back().get_num());
        if (!lead.fits_slong_p()) break;
        std::vector<std::int64_t> cands;
        for (auto d : divisors(static_cast<std::uint64_t>(lead.get_si()))) {
            cands.push_back(static_cast<std::int64_t>(d));
            cands.push_back(-static_cast<std::int64_t>(d));
        }
        for (auto a : cands) {
            // p(1/a) = 0 <=> sum_k p_k a^{n-k} = 0
            mpq_class acc = 0;
            mpz_class pw = 1;
            for (std::size_t k = p.size(); k-- > 0;) {
                acc += p[k] * mpq_class(pw);
                pw *= a;
            }
            if (acc != 0) continue;
            QPoly q, r;
            divmod(p, QPoly{1, mpq_class(-a)}, q, r);
            p = q;
            roots.push_back(a);
            progress = true;
            break;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::string factored(QPoly p, bool& multi) {
    const auto roots = pull_linear_factors(p);
    std::map<std::int64_t, int> mult;
    for (auto a : roots) ++mult[a];
    std::vector<std::string> parts;
    for (const auto& [a, k] : mult) {
        std::string f = "(1" + term_str(mpq_class(-a), 1, false) + ")";
        if (k > 1) f += "^" + std::to_string(k);
        parts.push_back(f);
    }
    if (p.size() > 1) parts.push_back("(" + qpoly_to_string(p) + ")");
    else if (p[0] != 1) parts.insert(parts.begin(), p[0].get_str());
    multi = parts.size() > 1 || (parts.size() == 1 && mult.size() == 1 && mult.begin()->second > 1);
    std::string s;
    for (const auto& x : parts) s += x;
    return s.empty() ? "1" : s;
}

} // namespace

std::string qpoly_to_string(const QPoly& p) {
    std::string s;
    bool first = true;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == 0) continue;
        s += term_str(p[k], static_cast<int>(k), first);
        first = false;
    }
    return first ? "0" : s;
}

QPoly RationalFunction::expand(int n) const {
    QPoly out(static_cast<std::size_t>(n) + 1, 0);
    for (int k = 0; k <= n; ++k) {
        mpq_class v = k < static_cast<int>(num.size()) ? num[static_cast<std::size_t>(k)] : mpq_class(0);
        for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j)
            v -= den[static_cast<std::size_t>(j)] * out[static_cast<std::size_t>(k - j)];
        out[static_cast<std::size_t>(k)] = v / den[0];
    }
    return out;
}

std::string RationalFunction::to_string() const {
    return "(" + qpoly_to_string(num) + ") / (" + qpoly_to_string(den) + ")";
}

std::string RationalFunction::pretty() const {
    bool multi_num = false, multi_den = false;
    std::string n = factored(num, multi_num);
    std::string d = factored(den, multi_den);
    if (d == "1") return n;
    if (multi_den) d = "(" + d + ")";
    return n + "/" + d;
}

RationalFunction rational_from_roots(const std::vector<std::int64_t>& num_roots,
                                     const std::vector<std::int64_t>& den_roots) {
    RationalFunction f;
    for (auto a : num_roots) f.num = mul(f.num, QPoly{1, mpq_class(-a)});
    for (auto a : den_roots) f.den = mul(f.den, QPoly{1, mpq_class(-a)});
    normalize(f);
    return f;
}

QPoly zeta_series_from_counts(const std::vector<std::uint64_t>& counts) {
    const std::size_t k = counts.size();
    QPoly z(k + 1, 0);
    z[0] = 1;
    // n Z_n = sum_{j=1}^n N_j Z_{n-j}
    for (std::size_t n = 1; n <= k; ++n) {
        mpq_class acc = 0;
        for (std::size_t j = 1; j <= n; ++j) acc += mpq_class(mpz_class(std::to_string(counts[j - 1]))) * z[n - j];
        z[n] = acc / static_cast<unsigned long>(n);
    }
    return z;
}

RationalFunction zeta_reconstruct(const std::vector<std::uint64_t>& counts, int num_deg, int den_deg) {
    const int kk = static_cast<int>(counts.size());
    NCL_REQUIRE(num_deg >= 0 && den_deg >= 0, Errc::InvalidInput, "degree bounds must be nonnegative");
    NCL_REQUIRE(kk >= num_deg + den_deg + 1, Errc::InvalidInput,
                "need at least " + std::to_string(num_deg + den_deg + 1) + " counts");
    const QPoly z = zeta_series_from_counts(counts);
    auto zc = [&](int i) { return i < 0 ? mpq_class(0) : z[static_cast<std::size_t>(i)]; };

    // z_k + sum_{j=1}^{b} d_j z_{k-j} = 0 for num_deg < k <= K
    const int b = den_deg;
    std::vector<std::vector<mpq_class>> rows;
    for (int k = num_deg + 1; k <= kk; ++k) {
        std::vector<mpq_class> row(static_cast<std::size_t>(b) + 1);
        for (int j = 1; j <= b; ++j) row[static_cast<std::size_t>(j - 1)] = zc(k - j);
        row[static_cast<std::size_t>(b)] = -zc(k);
        rows.push_back(std::move(row));
    }
    std::size_t rank = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < b; ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][static_cast<std::size_t>(c)] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        const mpq_class inv = 1 / rows[rank][static_cast<std::size_t>(c)];
        for (auto& x : rows[rank]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][static_cast<std::size_t>(c)] == 0) continue;
            const mpq_class f = rows[i][static_cast<std::size_t>(c)];
            for (std::size_t j = 0; j <= static_cast<std::size_t>(b); ++j) rows[i][j] -= f * rows[rank][j];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (std::size_t i = rank; i < rows.size(); ++i)
        NCL_REQUIRE(rows[i][static_cast<std::size_t>(b)] == 0, Errc::NoSolutionWithinBounds,
                    "no rational function with degrees (" + std::to_string(num_deg) + ", " +
                        std::to_string(den_deg) + ") fits the counts");
    NCL_REQUIRE(static_cast<int>(rank) == b, Errc::AmbiguousSolution,
                "degree bounds (" + std::to_string(num_deg) + ", " + std::to_string(den_deg) +
                    ") leave a family of solutions");

    RationalFunction f;
    f.den.assign(static_cast<std::size_t>(b) + 1, 0);
    f.den[0] = 1;
    for (std::size_t i = 0; i < rank; ++i)
        f.den[static_cast<std::size_t>(pivot_col[i]) + 1] = rows[i][static_cast<std::size_t>(b)];
    f.num.assign(static_cast<std::size_t>(num_deg) + 1, 0);
    for (int k = 0; k <= num_deg; ++k)
        for (int j = 0; j <= std::min(k, b); ++j)
            f.num[static_cast<std::size_t>(k)] += f.den[static_cast<std::size_t>(j)] * zc(k - j);
    normalize(f);
    NCL_REQUIRE(f.expand(kk) == z, Errc::NoSolutionWithinBounds, "re-expansion does not reproduce the counts");
    return f;
}

RationalFunction zeta_reconstruct_auto(const std::vector<std::uint64_t>& counts) {
    const int kk = static_cast<int>(counts.size());
    for (int total = 0; total < kk; ++total)
        for (int b = 0; b <= total; ++b) {
            try {
                return zeta_reconstruct(counts, total - b, b);
            } catch (const Error& e) {
                if (e.code() != Errc::NoSolutionWithinBounds && e.code() != Errc::AmbiguousSolution) throw;
            }
        }
    fail(Errc::NoSolutionWithinBounds, "no rational function of total degree < " + std::to_string(kk) + " fits");
}

TruncSeries rational_series_in(const QPoly& coeffs, const RingPtr& ring, int m) {
    NCL_REQUIRE(static_cast<int>(coeffs.size()) >= m, Errc::TruncationMismatch, "not enough coefficients");
    const std::int64_t n = ring->characteristic();
    std::vector<RingElem> c;
    for (int k = 0; k < m; ++k) {
        const mpq_class& x = coeffs[static_cast<std::size_t>(k)];
        const mpz_class num = x.get_num() % n, den = x.get_den() % n;
        const std::int64_t dinv = mod_inverse(den.get_si(), n);
        NCL_REQUIRE(dinv != 0, Errc::NotInvertible, "denominator " + x.get_den().get_str() + " is not invertible");
        c.push_back(ring->from_int(mod_mul(mod_reduce(num.get_si(), n), dinv, n)));
    }
    return TruncSeries::from_coeffs(ring, m, c);
}

TruncSeries rational_to_series(const RationalFunction& f, const RingPtr& ring, int m) {
    return rational_series_in(f.expand(m - 1), ring, m);
}

} // namespace ncl
