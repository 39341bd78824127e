#include "ncl/group.hpp"

#include "ncl/error.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>

namespace ncl {

GroupTable::GroupTable(std::vector<std::vector<int>> mult, std::vector<std::string> labels, std::string name)
    : name_(std::move(name)) {
    order_ = static_cast<int>(mult.size());
    NCL_REQUIRE(order_ >= 1, Errc::TableInvalid, "empty group table");
    mult_.reserve(static_cast<std::size_t>(order_ * order_));
    for (const auto& row : mult) {
        NCL_REQUIRE(static_cast<int>(row.size()) == order_, Errc::TableInvalid, "table is not square");
        for (int v : row) {
            NCL_REQUIRE(v >= 0 && v < order_, Errc::TableInvalid, "table entry out of range");
            mult_.push_back(v);
        }
    }
    // rows and columns are permutations
    for (int a = 0; a < order_; ++a) {
        std::vector<char> row_seen(static_cast<std::size_t>(order_), 0), col_seen(static_cast<std::size_t>(order_), 0);
        for (int b = 0; b < order_; ++b) {
            row_seen[static_cast<std::size_t>(mul(a, b))] = 1;
            col_seen[static_cast<std::size_t>(mul(b, a))] = 1;
        }
        NCL_REQUIRE(std::all_of(row_seen.begin(), row_seen.end(), [](char c) { return c; }) &&
                    std::all_of(col_seen.begin(), col_seen.end(), [](char c) { return c; }),
                Errc::TableInvalid, "table rows/columns are not permutations");
    }
    identity_ = -1;
    for (int e = 0; e < order_ && identity_ < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < order_ && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
        if (ok) identity_ = e;
    }
    NCL_REQUIRE(identity_ >= 0, Errc::TableInvalid, "no identity element");
    inverse_.assign(static_cast<std::size_t>(order_), -1);
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
            if (mul(a, b) == identity_ && mul(b, a) == identity_) inverse_[static_cast<std::size_t>(a)] = b;
    NCL_REQUIRE(std::none_of(inverse_.begin(), inverse_.end(), [](int v) { return v < 0; }), Errc::TableInvalid,
            "missing inverse");

    auto assoc = [&](int a, int b, int c) { return mul(mul(a, b), c) == mul(a, mul(b, c)); };
    if (order_ <= 64) {
        for (int a = 0; a < order_; ++a)
            for (int b = 0; b < order_; ++b)
                for (int c = 0; c < order_; ++c)
                    NCL_REQUIRE(assoc(a, b, c), Errc::TableInvalid, "table is not associative");
    } else {
        std::mt19937 rng(12345);
        std::uniform_int_distribution<int> pick(0, order_ - 1);
        for (int t = 0; t < 20000; ++t)
            NCL_REQUIRE(assoc(pick(rng), pick(rng), pick(rng)), Errc::TableInvalid, "table is not associative");
    }

    if (labels.empty()) {
        labels_.resize(static_cast<std::size_t>(order_));
        for (int a = 0; a < order_; ++a)
            labels_[static_cast<std::size_t>(a)] = a == identity_ ? "1" : "g" + std::to_string(a);
    } else {
        NCL_REQUIRE(static_cast<int>(labels.size()) == order_, Errc::TableInvalid, "label count mismatch");
        labels_ = std::move(labels);
    }
}

GroupTable GroupTable::cyclic(int r) {
    NCL_REQUIRE(r >= 1, Errc::TableInvalid, "cyclic group order must be positive");
    std::vector<std::vector<int>> t(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r)));
    std::vector<std::string> labels(static_cast<std::size_t>(r));
    for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % r;
        labels[static_cast<std::size_t>(a)] = a == 0 ? "1" : (a == 1 ? "s" : "s^" + std::to_string(a));
    }
    return GroupTable(std::move(t), std::move(labels), "C" + std::to_string(r));
}

namespace {

// Group from a list of permutations closed under composition; element 0 must be the identity.
template <std::size_t N>
GroupTable from_permutations(const std::vector<std::array<int, N>>& perms, std::vector<std::string> labels,
                             std::string name) {
    const std::size_t n = perms.size();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            // (a*b)(i) = a(b(i))
            std::array<int, N> c{};
            for (std::size_t i = 0; i < N; ++i) c[i] = perms[a][static_cast<std::size_t>(perms[b][i])];
            auto it = std::find(perms.begin(), perms.end(), c);
            t[a][b] = static_cast<int>(it - perms.begin());
        }
    }
    return GroupTable(std::move(t), std::move(labels), std::move(name));
}

} // namespace

GroupTable GroupTable::symmetric3() {
    std::vector<std::array<int, 3>> perms{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    return from_permutations(perms, {"1", "(23)", "(12)", "(123)", "(132)", "(13)"}, "S3");
}

GroupTable GroupTable::dihedral4() {
    // symmetries of the square acting on vertices 0..3
    std::vector<std::array<int, 4>> perms{{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2},
                                          {0, 3, 2, 1}, {1, 0, 3, 2}, {2, 1, 0, 3}, {3, 2, 1, 0}};
    return from_permutations(perms, {"1", "r", "r^2", "r^3", "f", "rf", "r^2f", "r^3f"}, "D4");
}

GroupTable GroupTable::quaternion8() {
    // indices: 1, -1, i, -i, j, -j, k, -k
    auto idx = [](int sign, int unit) { return unit * 2 + (sign < 0 ? 1 : 0); };
    // unit products: table[u][v] = (sign, unit) for u, v in {1, i, j, k}
    const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            const int sa = (a % 2) ? -1 : 1, ua = a / 2;
            const int sb = (b % 2) ? -1 : 1, ub = b / 2;
            t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = idx(sa * sb * sgn[ua][ub], unit[ua][ub]);
        }
    return GroupTable(std::move(t), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"}, "Q8");
}

GroupTable GroupTable::builtin(const std::string& name) {
    if (name == "S3") return symmetric3();
    if (name == "D4") return dihedral4();
    if (name == "Q8") return quaternion8();
    if (name.size() >= 2 && name[0] == 'C') {
        int r = 0;
        try {
            r = std::stoi(name.substr(1));
        } catch (...) {
            r = 0;
        }
        if (r >= 1 && r <= 4096) return cyclic(r);
    }
    fail(Errc::InvalidInput, "unknown builtin group '" + name + "'");
}

int GroupTable::power(int a, std::int64_t k) const {
    if (k < 0) return power(inverse(a), -k);
    int r = identity_;
    for (std::int64_t i = 0; i < k % element_order(a); ++i) r = mul(r, a);
    return r;
}

int GroupTable::element_order(int a) const {
    int k = 1, cur = a;
    while (cur != identity_) {
        cur = mul(cur, a);
        ++k;
    }
    return k;
}

std::vector<std::vector<int>> GroupTable::table() const {
    std::vector<std::vector<int>> t(static_cast<std::size_t>(order_));
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b) t[static_cast<std::size_t>(a)].push_back(mul(a, b));
    return t;
}

bool GroupTable::is_abelian() const {
    for (int a = 0; a < order_; ++a)
        for (int b = a + 1; b < order_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

int GroupTable::cyclic_generator() const {
    for (int a = 0; a < order_; ++a)
        if (element_order(a) == order_) return a;
    return -1;
}

bool GroupTable::is_l_group(std::int64_t l) const {
    int n = order_;
    while (n % l == 0) n /= static_cast<int>(l);
    return n == 1;
}

std::vector<int> GroupTable::commutator_subgroup() const {
    std::set<int> h{identity_};
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b) h.insert(mul(mul(a, b), mul(inverse(a), inverse(b))));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(h.begin(), h.end());
        for (int a : cur)
            for (int b : cur)
                if (h.insert(mul(a, b)).second) grew = true;
    }
    return {h.begin(), h.end()};
}

Abelianization abelianize(const GroupTable& g) {
    const auto comm = g.commutator_subgroup();
    const int n = g.order();
    std::vector<int> coset(static_cast<std::size_t>(n), -1);
    std::vector<int> reps;
    for (int a = 0; a < n; ++a) {
        if (coset[static_cast<std::size_t>(a)] >= 0) continue;
        const int idx = static_cast<int>(reps.size());
        reps.push_back(a);
        for (int c : comm) coset[static_cast<std::size_t>(g.mul(a, c))] = idx;
    }
    const std::size_t k = reps.size();
    std::vector<std::vector<int>> t(k, std::vector<int>(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            t[a][b] = coset[static_cast<std::size_t>(g.mul(reps[a], reps[b]))];
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < k; ++a) labels.push_back(a == 0 ? "1" : "[" + g.label(reps[a]) + "]");
    auto q = std::make_shared<const GroupTable>(std::move(t), std::move(labels), g.name() + "^ab");
    return {q, coset};
}

} // namespace ncl
