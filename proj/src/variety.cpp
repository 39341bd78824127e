#include "ncl/variety.hpp"

#include "ncl/arith.hpp"
#include "ncl/error.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

namespace ncl {

// Threads

namespace {

unsigned default_threads() {
    if (const char* env = std::getenv("NCL_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

std::atomic<unsigned> g_threads{0};

// Splits [0, total) into contiguous chunks processed by fn(begin, end, chunk).
template <class Fn>
std::size_t parallel_chunks(std::uint64_t total, Fn&& fn) {
    const unsigned t = thread_count();
    const std::uint64_t min_chunk = 1 << 14;
    std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(t, std::max<std::uint64_t>(1, total / min_chunk)));
    if (chunks <= 1) {
        fn(std::uint64_t{0}, total, std::size_t{0});
        return 1;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::uint64_t b = total * c / chunks, e = total * (c + 1) / chunks;
        pool.emplace_back([&, b, e, c] {
            try {
                fn(b, e, c);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
    return chunks;
}

} // namespace

void set_thread_count(unsigned n) { g_threads = n; }

unsigned thread_count() {
    const unsigned v = g_threads.load();
    return v ? v : default_threads();
}

// Polynomial

Polynomial::Polynomial(FqField base, int nvars) : base_(std::move(base)), nvars_(nvars) {
    NCL_REQUIRE(nvars >= 0, Errc::InvalidInput, "negative variable count");
}

Polynomial Polynomial::constant(const FqField& base, int nvars, std::int64_t c) {
    Polynomial p(base, nvars);
    p.terms_.push_back({std::vector<int>(static_cast<std::size_t>(nvars), 0), base.from_int_code(c)});
    p.normalize();
    return p;
}

Polynomial Polynomial::variable(const FqField& base, int nvars, int i) {
    NCL_REQUIRE(i >= 0 && i < nvars, Errc::InvalidInput, "variable index out of range");
    Polynomial p(base, nvars);
    std::vector<int> e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.terms_.push_back({e, 1});
    return p;
}

Polynomial Polynomial::from_terms(const FqField& base, int nvars, const std::vector<Term>& terms) {
    Polynomial p(base, nvars);
    for (const auto& t : terms) {
        NCL_REQUIRE(static_cast<int>(t.exps.size()) == nvars, Errc::InvalidInput, "exponent vector has the wrong length");
        for (int e : t.exps) NCL_REQUIRE(e >= 0, Errc::InvalidInput, "negative exponent");
        NCL_REQUIRE(t.coeff < base.order(), Errc::InvalidInput, "coefficient code outside the base field");
        p.terms_.push_back(t);
    }
    p.normalize();
    return p;
}

void Polynomial::normalize() {
    std::map<std::vector<int>, std::uint32_t> acc;
    for (const auto& t : terms_) {
        auto [it, inserted] = acc.emplace(t.exps, t.coeff);
        if (!inserted) it->second = base_.add(it->second, t.coeff);
    }
    terms_.clear();
    for (const auto& [e, c] : acc)
        if (c != 0) terms_.push_back({e, c});
}

int Polynomial::degree_in(int var) const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exps[static_cast<std::size_t>(var)]);
    return d;
}

Polynomial Polynomial::operator+(const Polynomial& b) const {
    NCL_REQUIRE(nvars_ == b.nvars_ && base_ == b.base_, Errc::InvalidInput, "polynomial shape mismatch");
    Polynomial out = *this;
    out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
    out.normalize();
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& b) const {
    Polynomial nb = b;
    for (auto& t : nb.terms_) t.coeff = base_.neg(t.coeff);
    return *this + nb;
}

Polynomial Polynomial::operator*(const Polynomial& b) const {
    NCL_REQUIRE(nvars_ == b.nvars_ && base_ == b.base_, Errc::InvalidInput, "polynomial shape mismatch");
    Polynomial out(base_, nvars_);
    for (const auto& s : terms_)
        for (const auto& t : b.terms_) {
            Term u{s.exps, base_.mul(s.coeff, t.coeff)};
            for (std::size_t i = 0; i < u.exps.size(); ++i) u.exps[i] += t.exps[i];
            out.terms_.push_back(std::move(u));
        }
    out.normalize();
    return out;
}

Polynomial Polynomial::pow(int k) const {
    Polynomial r = constant(base_, nvars_, 1);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

Polynomial Polynomial::with_vars(int nvars) const {
    NCL_REQUIRE(nvars >= nvars_, Errc::InvalidInput, "cannot drop variables");
    Polynomial out(base_, nvars);
    for (auto t : terms_) {
        t.exps.resize(static_cast<std::size_t>(nvars), 0);
        out.terms_.push_back(std::move(t));
    }
    out.normalize();
    return out;
}

std::uint32_t Polynomial::eval(const FqField& field, const std::uint32_t* x) const {
    const auto fb = field.base();
    const bool embed = fb && fb->same_arithmetic(base_);
    NCL_REQUIRE(embed || field.same_arithmetic(base_), Errc::NotInTower, "evaluation field does not contain the base");
    std::uint32_t acc = 0;
    for (const auto& t : terms_) {
        std::uint32_t v = embed ? field.embed_code(t.coeff) : t.coeff;
        for (std::size_t i = 0; i < t.exps.size() && v; ++i) {
            const int e = t.exps[i];
            if (e == 0) continue;
            v = field.mul(v, e == 1 ? x[i] : field.pow(x[i], static_cast<std::uint64_t>(e)));
        }
        acc = field.add(acc, v);
    }
    return acc;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        bool mono = false;
        std::ostringstream m;
        for (std::size_t i = 0; i < it->exps.size(); ++i) {
            if (!it->exps[i]) continue;
            if (mono) m << '*';
            mono = true;
            m << 'x' << i;
            if (it->exps[i] > 1) m << '^' << it->exps[i];
        }
        if (!mono)
            os << it->coeff;
        else if (it->coeff == 1)
            os << m.str();
        else
            os << it->coeff << '*' << m.str();
    }
    return os.str();
}

// Charts and schemes

Chart Chart::explicit_form() const {
    if (!fiber) return *this;
    Chart c;
    c.nvars = nvars;
    c.eqs = eqs;
    c.neqs = neqs;
    const auto& base = fiber->f.base();
    Polynomial y = Polynomial::variable(base, nvars, nvars - 1);
    c.eqs.push_back(y.pow(fiber->r) - fiber->f.with_vars(nvars));
    return c;
}

Polynomial degree_d_irreducible(const FqField& base, int d) {
    NCL_REQUIRE(d >= 1, Errc::InvalidInput, "degree must be positive");
    const FqField big = base.extend(d);
    const auto primes = prime_divisors(static_cast<std::uint64_t>(d));
    std::uint32_t alpha = 0;
    bool found = false;
    for (std::uint32_t c = 0; c < big.order() && !found; ++c) {
        bool proper = true;
        for (auto l : primes)
            if (big.frobenius(c, d / static_cast<int>(l)) == c) proper = false;
        if (proper) {
            alpha = c;
            found = true;
        }
    }
    NCL_REQUIRE(found, Errc::InvalidInput, "no element of exact degree " + std::to_string(d));
    // prod_j (X - F^j(alpha)) in big[X], low-to-high
    std::vector<std::uint32_t> poly{1};
    std::uint32_t conj = alpha;
    for (int j = 0; j < d; ++j) {
        std::vector<std::uint32_t> next(poly.size() + 1, 0);
        const std::uint32_t neg = big.neg(conj);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = big.add(next[i + 1], poly[i]);
            next[i] = big.add(next[i], big.mul(poly[i], neg));
        }
        poly = std::move(next);
        conj = big.frobenius(conj, 1);
    }
    std::vector<Term> terms;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        auto r = big.restrict_to_base(FqElem(big, poly[i]));
        NCL_REQUIRE(r.has_value(), Errc::NotInTower, "minimal polynomial left the base field");
        if (r->code()) terms.push_back({{static_cast<int>(i)}, r->code()});
    }
    return Polynomial::from_terms(base, 1, terms);
}

Scheme scheme_builtin(const std::string& name, const FqField& base) {
    Scheme s{base, {}, name};
    if (name == "A1") {
        s.charts.push_back(Chart{1, {}, {}, std::nullopt});
    } else if (name == "Gm") {
        s.charts.push_back(Chart{1, {}, {Polynomial::variable(base, 1, 0)}, std::nullopt});
    } else if (name == "P1") {
        s.charts.push_back(Chart{1, {}, {}, std::nullopt});
        s.charts.push_back(Chart{1, {Polynomial::variable(base, 1, 0)}, {}, std::nullopt});
    } else if (name.rfind("point(", 0) == 0 && name.back() == ')') {
        int d = 0;
        try {
            d = std::stoi(name.substr(6, name.size() - 7));
        } catch (...) {
            d = 0;
        }
        NCL_REQUIRE(d >= 1, Errc::InvalidInput, "bad point degree in '" + name + "'");
        s.charts.push_back(Chart{1, {degree_d_irreducible(base, d)}, {}, std::nullopt});
    } else {
        fail(Errc::InvalidInput, "unknown builtin scheme '" + name + "'");
    }
    return s;
}

Scheme scheme_affine(const FqField& base, int nvars, std::vector<Polynomial> eqs, std::vector<Polynomial> neqs,
                     std::string name) {
    for (const auto& p : eqs)
        NCL_REQUIRE(p.nvars() == nvars && p.base() == base, Errc::InvalidInput, "equation has the wrong shape");
    for (const auto& p : neqs)
        NCL_REQUIRE(p.nvars() == nvars && p.base() == base, Errc::InvalidInput, "inequation has the wrong shape");
    Scheme s{base, {}, std::move(name)};
    s.charts.push_back(Chart{nvars, std::move(eqs), std::move(neqs), std::nullopt});
    return s;
}

Scheme scheme_disjoint_union(const Scheme& a, const Scheme& b) {
    NCL_REQUIRE(a.base == b.base, Errc::InvalidInput, "disjoint union over different bases");
    Scheme s{a.base, a.charts, a.name + "+" + b.name};
    s.charts.insert(s.charts.end(), b.charts.begin(), b.charts.end());
    return s;
}

std::pair<Scheme, Scheme> scheme_open_closed_split(const Scheme& s, const Polynomial& cut) {
    NCL_REQUIRE(s.charts.size() == 1, Errc::MultiChartSplitUnsupported, "split needs a single-chart scheme");
    const Chart& c = s.charts[0];
    NCL_REQUIRE(cut.nvars() == c.nvars && cut.base() == s.base, Errc::InvalidInput, "cut has the wrong shape");
    Scheme u = s, z = s;
    u.charts[0].neqs.push_back(cut);
    z.charts[0].eqs.push_back(cut);
    u.name = s.name + "[" + cut.to_string() + "!=0]";
    z.name = s.name + "[" + cut.to_string() + "=0]";
    return {u, z};
}

Scheme scheme_kummer_cover(const Scheme& x, int r, const Polynomial& f) {
    NCL_REQUIRE(r >= 1, Errc::BadKummerOrder, "Kummer order must be positive");
    Scheme y{x.base, {}, x.name + "~y^" + std::to_string(r)};
    for (const auto& c : x.charts) {
        NCL_REQUIRE(!c.fiber, Errc::UnsupportedScheme, "iterated Kummer covers are not supported");
        NCL_REQUIRE(f.nvars() == c.nvars, Errc::InvalidInput, "Kummer function has the wrong number of variables");
        Chart out;
        out.nvars = c.nvars + 1;
        for (const auto& p : c.eqs) out.eqs.push_back(p.with_vars(out.nvars));
        for (const auto& p : c.neqs) out.neqs.push_back(p.with_vars(out.nvars));
        out.fiber = KummerFiber{r, f};
        y.charts.push_back(std::move(out));
    }
    return y;
}

bool scheme_is_zero_dimensional(const Scheme& s) {
    for (const auto& c : s.charts) {
        if (c.fiber || c.nvars != 1) return false;
        bool has_eq = false;
        for (const auto& e : c.eqs) has_eq = has_eq || !e.is_zero();
        if (!has_eq) return false;
    }
    return true;
}

// Enumeration

namespace {

// Polynomial with coefficients already embedded in the evaluation field.
struct CompiledPoly {
    std::vector<std::uint32_t> coeffs;
    std::vector<std::vector<int>> exps;

    CompiledPoly(const Polynomial& p, const FqField& field) {
        const std::uint32_t zero = 0;
        for (const auto& t : p.terms()) {
            // evaluating the constant monomial embeds the coefficient
            Polynomial mono = Polynomial::from_terms(p.base(), 0, {Term{{}, t.coeff}});
            coeffs.push_back(mono.eval(field, &zero));
            exps.push_back(t.exps);
        }
    }

    std::uint32_t eval(const FqField& field, const std::uint32_t* x) const {
        std::uint32_t acc = 0;
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            std::uint32_t v = coeffs[k];
            const auto& e = exps[k];
            for (std::size_t i = 0; i < e.size() && v; ++i) {
                if (e[i] == 0) continue;
                v = field.mul(v, e[i] == 1 ? x[i] : field.pow(x[i], static_cast<std::uint64_t>(e[i])));
            }
            acc = field.add(acc, v);
        }
        return acc;
    }
};

struct ChartWalker {
    const Chart& chart;
    const FqField& field;
    std::uint64_t q;  // field order
    int k;            // base variables
    std::vector<CompiledPoly> eqs, neqs;
    std::optional<CompiledPoly> f;

    ChartWalker(const Chart& c, const FqField& fld, std::uint64_t order, int vars)
        : chart(c), field(fld), q(order), k(vars) {
        for (const auto& e : c.eqs) eqs.emplace_back(e, fld);
        for (const auto& n : c.neqs) neqs.emplace_back(n, fld);
        if (c.fiber) f.emplace(c.fiber->f, fld);
    }

    bool admissible(const std::uint32_t* x) const {
        for (const auto& e : eqs)
            if (e.eval(field, x) != 0) return false;
        for (const auto& n : neqs)
            if (n.eval(field, x) == 0) return false;
        return true;
    }

    void decode(std::uint64_t idx, std::vector<std::uint32_t>& x) const {
        for (int i = k; i-- > 0;) {
            x[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(idx % q);
            idx /= q;
        }
    }

    void next(std::vector<std::uint32_t>& x) const {
        for (int i = k; i-- > 0;) {
            if (++x[static_cast<std::size_t>(i)] < q) return;
            x[static_cast<std::size_t>(i)] = 0;
        }
    }
};

std::uint64_t tuple_count(std::uint64_t q, int k, std::uint64_t budget) {
    const std::uint64_t n = ipow_bounded(q, static_cast<unsigned>(k), budget);
    NCL_REQUIRE(n != 0 || k == 0, Errc::EnumerationTooLarge,
            std::to_string(q) + "^" + std::to_string(k) + " tuples exceed the enumeration budget");
    return k == 0 ? 1 : n;
}

std::uint64_t fiber_size(const FqField& f, int r, std::uint32_t c) {
    if (c == 0) return 1;
    const std::uint64_t n = f.order() - 1;
    const std::uint64_t g = std::gcd(static_cast<std::uint64_t>(r), n);
    return f.log(c) % g == 0 ? g : 0;
}

// Sorted solutions of y^r = c.
std::vector<std::uint32_t> fiber_roots(const FqField& f, int r, std::uint32_t c) {
    if (c == 0) return {0};
    const std::uint64_t n = f.order() - 1;
    const std::uint64_t g = std::gcd(static_cast<std::uint64_t>(r), n);
    const std::uint64_t l = f.log(c);
    if (l % g) return {};
    const std::uint64_t np = n / g;
    std::uint64_t k0 = 0;
    if (np > 1) {
        const auto rinv = static_cast<std::uint64_t>(
            mod_inverse(static_cast<std::int64_t>((static_cast<std::uint64_t>(r) / g) % np), static_cast<std::int64_t>(np)));
        k0 = static_cast<std::uint64_t>(mod_mul(static_cast<std::int64_t>((l / g) % np), static_cast<std::int64_t>(rinv),
                                                static_cast<std::int64_t>(np)));
    }
    const std::uint32_t h = f.primitive().code();
    std::vector<std::uint32_t> out;
    for (std::uint64_t j = 0; j < g; ++j) out.push_back(f.pow(h, k0 + j * np));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::uint64_t scheme_point_counts(const Scheme& s, int n, std::uint64_t budget) {
    NCL_REQUIRE(n >= 1, Errc::InvalidInput, "point counts start at n = 1");
    const FqField field = s.base.extend(n);
    const std::uint64_t q = field.order();
    std::uint64_t total = 0;
    for (const auto& chart : s.charts) {
        ChartWalker w{chart, field, q, chart.base_vars()};
        const std::uint64_t count = tuple_count(q, w.k, budget);
        std::vector<std::uint64_t> partial(thread_count() + 1, 0);
        parallel_chunks(count, [&](std::uint64_t b, std::uint64_t e, std::size_t c) {
            std::vector<std::uint32_t> x(static_cast<std::size_t>(std::max(w.k, 1)), 0);
            w.decode(b, x);
            std::uint64_t acc = 0;
            for (std::uint64_t i = b; i < e; ++i, w.next(x)) {
                if (!w.admissible(x.data())) continue;
                acc += chart.fiber ? fiber_size(field, chart.fiber->r, w.f->eval(field, x.data())) : 1;
            }
            partial[c] = acc;
        });
        total = std::accumulate(partial.begin(), partial.end(), total);
    }
    return total;
}

std::vector<std::uint64_t> scheme_point_counts_upto(const Scheme& s, int n_max, std::uint64_t budget) {
    std::vector<std::uint64_t> out;
    for (int n = 1; n <= n_max; ++n) out.push_back(scheme_point_counts(s, n, budget));
    return out;
}

std::vector<std::vector<std::uint32_t>> ClosedPoint::orbit() const {
    std::vector<std::vector<std::uint32_t>> out{rep};
    for (int j = 1; j < degree; ++j) {
        auto next = out.back();
        for (auto& c : next) c = field.frobenius(c, 1);
        out.push_back(std::move(next));
    }
    return out;
}

void scheme_for_each_closed_point(const Scheme& s, int d, const std::function<void(const ClosedPoint&)>& fn,
                                  std::uint64_t budget) {
    NCL_REQUIRE(d >= 1, Errc::InvalidInput, "degree must be positive");
    const FqField field = s.base.extend(d);
    const std::uint64_t q = field.order();
    const auto primes = prime_divisors(static_cast<std::uint64_t>(d));

    for (std::size_t ci = 0; ci < s.charts.size(); ++ci) {
        const Chart& chart = s.charts[ci];
        ChartWalker w{chart, field, q, chart.base_vars()};
        const std::uint64_t count = tuple_count(q, w.k, budget);
        const int nv = chart.nvars;

        auto in_subfield = [&](const std::vector<std::uint32_t>& t) {
            for (auto l : primes) {
                const int e = d / static_cast<int>(l);
                bool fixed = true;
                for (auto c : t)
                    if (field.frobenius(c, e) != c) {
                        fixed = false;
                        break;
                    }
                if (fixed) return true;
            }
            return false;
        };
        // true when no conjugate F^j(t), 0 < j < d, is lexicographically smaller
        auto is_orbit_min = [&](const std::vector<std::uint32_t>& t, std::vector<std::uint32_t>& conj) {
            conj = t;
            for (int j = 1; j < d; ++j) {
                for (auto& c : conj) c = field.frobenius(c, 1);
                if (conj < t) return false;
            }
            return true;
        };

        if (!chart.fiber && d > 1) {
            // Sweep in lexicographic order; the first orbit element met is the smallest.
            std::vector<bool> seen(count, false);
            std::vector<std::uint32_t> x(static_cast<std::size_t>(std::max(w.k, 1)), 0), conj;
            for (std::uint64_t i = 0; i < count; ++i, w.next(x)) {
                if (seen[i] || !w.admissible(x.data())) continue;
                conj.assign(x.begin(), x.begin() + w.k);
                int len = 0;
                while (true) {
                    for (auto& c : conj) c = field.frobenius(c, 1);
                    ++len;
                    std::uint64_t idx = 0;
                    for (auto c : conj) idx = idx * q + c;
                    if (idx == i) break;
                    seen[idx] = true;
                }
                if (len == d) fn(ClosedPoint{d, static_cast<int>(ci), field, std::vector<std::uint32_t>(x.begin(), x.begin() + w.k)});
            }
            continue;
        }

        std::vector<std::vector<ClosedPoint>> found(thread_count() + 1);
        parallel_chunks(count, [&](std::uint64_t b, std::uint64_t e, std::size_t c) {
            std::vector<std::uint32_t> x(static_cast<std::size_t>(std::max(w.k, 1)), 0);
            w.decode(b, x);
            std::vector<std::uint32_t> t(static_cast<std::size_t>(nv)), conj;
            auto& out = found[c];
            for (std::uint64_t i = b; i < e; ++i, w.next(x)) {
                if (d > 1) {
                    // cheap rejection on the first coordinate's orbit
                    bool reject = false;
                    if (w.k > 0) {
                        std::uint32_t y = x[0];
                        for (int j = 1; j < d && !reject; ++j) {
                            y = field.frobenius(y, 1);
                            if (y < x[0]) reject = true;
                        }
                    }
                    if (reject) continue;
                }
                if (!w.admissible(x.data())) continue;
                std::copy(x.begin(), x.begin() + w.k, t.begin());
                auto emit = [&] {
                    if (d > 1 && (in_subfield(t) || !is_orbit_min(t, conj))) return;
                    out.push_back(ClosedPoint{d, static_cast<int>(ci), field, t});
                };
                if (chart.fiber) {
                    for (auto y : fiber_roots(field, chart.fiber->r, w.f->eval(field, x.data()))) {
                        t[static_cast<std::size_t>(nv - 1)] = y;
                        emit();
                    }
                } else {
                    emit();
                }
            }
        });
        for (const auto& chunk : found)
            for (const auto& p : chunk) fn(p);
    }
}

std::vector<ClosedPoint> scheme_closed_points(const Scheme& s, int max_deg, std::uint64_t budget) {
    std::vector<ClosedPoint> out;
    for (int d = 1; d <= max_deg; ++d)
        scheme_for_each_closed_point(s, d, [&](const ClosedPoint& p) { out.push_back(p); }, budget);
    return out;
}

} // namespace ncl
