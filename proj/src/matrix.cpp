#include "ncl/matrix.hpp"

#include "ncl/arith.hpp"
#include "ncl/error.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace ncl {

Matrix::Matrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols * ring_->width(), 0) {}

Matrix Matrix::identity(RingPtr ring, std::size_t n) {
    Matrix m(std::move(ring), n, n);
    for (std::size_t i = 0; i < n; ++i) m.ring_->set_one(m.entry(i, i));
    return m;
}

Matrix Matrix::from_entries(RingPtr ring, const std::vector<std::vector<RingElem>>& entries) {
    const std::size_t r = entries.size(), c = r ? entries[0].size() : 0;
    Matrix m(std::move(ring), r, c);
    for (std::size_t i = 0; i < r; ++i) {
        NCL_REQUIRE(entries[i].size() == c, Errc::InvalidInput, "ragged matrix");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, entries[i][j]);
    }
    return m;
}

Matrix Matrix::from_ints(RingPtr ring, std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& v) {
    NCL_REQUIRE(v.size() == rows * cols, Errc::InvalidInput, "wrong number of matrix entries");
    Matrix m(std::move(ring), rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.ring_->set_int(v[i * cols + j], m.entry(i, j));
    return m;
}

Matrix Matrix::random(RingPtr ring, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    Matrix m(ring, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, ring->random(rng));
    return m;
}

RingElem Matrix::at(std::size_t i, std::size_t j) const {
    const auto e = entry(i, j);
    return RingElem(ring_, std::vector<Ring::Value>(e.begin(), e.end()));
}

void Matrix::set(std::size_t i, std::size_t j, const RingElem& v) {
    NCL_REQUIRE(v.ring()->same(*ring_), Errc::RingMismatch, "matrix entry from " + v.ring()->describe());
    std::copy(v.values().begin(), v.values().end(), data_.begin() + static_cast<std::ptrdiff_t>(offset(i, j)));
}

Ring::Span Matrix::entry(std::size_t i, std::size_t j) {
    return Ring::Span(data_.data() + offset(i, j), ring_->width());
}

Ring::CSpan Matrix::entry(std::size_t i, std::size_t j) const {
    return Ring::CSpan(data_.data() + offset(i, j), ring_->width());
}

Matrix Matrix::operator*(const Matrix& b) const {
    NCL_REQUIRE(ring_->same(*b.ring_), Errc::RingMismatch, "matrix product over different rings");
    NCL_REQUIRE(cols_ == b.rows_, Errc::InvalidInput, "matrix shapes do not match");
    Matrix out(ring_, rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const auto a = entry(i, k);
            if (ring_->is_zero(a)) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) ring_->mul_acc(a, b.entry(k, j), out.entry(i, j));
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& b) const {
    NCL_REQUIRE(ring_->same(*b.ring_) && rows_ == b.rows_ && cols_ == b.cols_, Errc::InvalidInput, "matrix sum mismatch");
    Matrix out(ring_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) ring_->add(entry(i, j), b.entry(i, j), out.entry(i, j));
    return out;
}

Matrix Matrix::operator-(const Matrix& b) const {
    NCL_REQUIRE(ring_->same(*b.ring_) && rows_ == b.rows_ && cols_ == b.cols_, Errc::InvalidInput, "matrix difference mismatch");
    Matrix out(ring_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) ring_->sub(entry(i, j), b.entry(i, j), out.entry(i, j));
    return out;
}

bool Matrix::operator==(const Matrix& b) const {
    return rows_ == b.rows_ && cols_ == b.cols_ && ring_->same(*b.ring_) && data_ == b.data_;
}

Matrix Matrix::map(const RingHom& h) const {
    Matrix out(h.image_ring(ring_), rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.set(i, j, h.apply(at(i, j)));
    return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix out(ring_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) {
            const auto src = entry(r0 + i, c0 + j);
            std::copy(src.begin(), src.end(), out.entry(i, j).begin());
        }
    return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    NCL_REQUIRE(ring_->same(*b.ring_), Errc::RingMismatch, "block from another ring");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) {
            const auto src = b.entry(i, j);
            std::copy(src.begin(), src.end(), entry(r0 + i, c0 + j).begin());
        }
}

bool Matrix::is_identity() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i == j ? !ring_->is_one(entry(i, j)) : !ring_->is_zero(entry(i, j))) return false;
    return true;
}

void Matrix::add_row_multiple(std::size_t i, std::size_t j, const RingElem& r) {
    NCL_REQUIRE(i != j, Errc::InvalidInput, "row move needs distinct rows");
    for (std::size_t c = 0; c < cols_; ++c) {
        const auto src = entry(j, c);
        if (ring_->is_zero(src)) continue;
        ring_->mul_acc(r.data(), src, entry(i, c));
    }
}

void Matrix::add_col_multiple(std::size_t i, std::size_t j, const RingElem& r) {
    NCL_REQUIRE(i != j, Errc::InvalidInput, "column move needs distinct columns");
    for (std::size_t k = 0; k < rows_; ++k) {
        const auto src = entry(k, i);
        if (ring_->is_zero(src)) continue;
        ring_->mul_acc(src, r.data(), entry(k, j));
    }
}

void Matrix::swap_whitehead(std::size_t i, std::size_t j) {
    NCL_REQUIRE(i != j, Errc::InvalidInput, "swap needs distinct rows");
    std::vector<Ring::Value> tmp(ring_->width());
    for (std::size_t c = 0; c < cols_; ++c) {
        auto a = entry(i, c), b = entry(j, c);
        ring_->neg(a, tmp);
        std::copy(b.begin(), b.end(), a.begin());
        std::copy(tmp.begin(), tmp.end(), b.begin());
    }
}

void Matrix::scale_row(std::size_t i, const RingElem& u) {
    std::vector<Ring::Value> tmp(ring_->width());
    for (std::size_t c = 0; c < cols_; ++c) {
        ring_->mul(u.data(), entry(i, c), tmp);
        std::copy(tmp.begin(), tmp.end(), entry(i, c).begin());
    }
}

void Matrix::scale_col(std::size_t j, const RingElem& u) {
    std::vector<Ring::Value> tmp(ring_->width());
    for (std::size_t r = 0; r < rows_; ++r) {
        ring_->mul(entry(r, j), u.data(), tmp);
        std::copy(tmp.begin(), tmp.end(), entry(r, j).begin());
    }
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).to_string();
        os << ']';
    }
    os << ']';
    return os.str();
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
    NCL_REQUIRE(!blocks.empty(), Errc::InvalidInput, "no blocks");
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Matrix out(blocks[0].ring(), r, c);
    r = c = 0;
    for (const auto& b : blocks) {
        out.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return out;
}

// Moves

ElemMove ElemMove::add_row(std::size_t i, std::size_t j, RingElem r) {
    ElemMove m;
    m.op = Op::AddRow;
    m.i = i;
    m.j = j;
    m.r = std::move(r);
    return m;
}

ElemMove ElemMove::add_col(std::size_t i, std::size_t j, RingElem r) {
    ElemMove m;
    m.op = Op::AddCol;
    m.i = i;
    m.j = j;
    m.r = std::move(r);
    return m;
}

ElemMove ElemMove::swap(std::size_t i, std::size_t j) {
    ElemMove m;
    m.op = Op::SwapWhitehead;
    m.i = i;
    m.j = j;
    return m;
}

ElemMove ElemMove::scale_pair(Side side, std::size_t i, std::size_t j, RingElem u) {
    ElemMove m;
    m.op = Op::ScalePair;
    m.side = side;
    m.i = i;
    m.j = j;
    m.r = std::move(u);
    return m;
}

void apply_move(Matrix& m, const ElemMove& mv) {
    switch (mv.op) {
    case ElemMove::Op::AddRow: m.add_row_multiple(mv.i, mv.j, *mv.r); break;
    case ElemMove::Op::AddCol: m.add_col_multiple(mv.i, mv.j, *mv.r); break;
    case ElemMove::Op::SwapWhitehead: m.swap_whitehead(mv.i, mv.j); break;
    case ElemMove::Op::ScalePair: {
        NCL_REQUIRE(mv.i != mv.j, Errc::InvalidInput, "scale-pair needs distinct indices");
        const RingElem inv = mv.r->inverse();
        if (mv.side == ElemMove::Side::Row) {
            m.scale_row(mv.i, *mv.r);
            m.scale_row(mv.j, inv);
        } else {
            m.scale_col(mv.i, *mv.r);
            m.scale_col(mv.j, inv);
        }
        break;
    }
    }
}

// Pivot search

void make_unit_pivot(Matrix& m, std::size_t k, std::vector<ElemMove>* moves) {
    const auto& ring = m.ring();
    auto record = [&](ElemMove mv) {
        apply_move(m, mv);
        if (moves) moves->push_back(std::move(mv));
    };
    if (ring->is_unit(m.entry(k, k))) return;

    std::vector<std::size_t> cand;
    for (std::size_t i = k + 1; i < m.rows(); ++i)
        if (!ring->is_zero(m.entry(i, k))) cand.push_back(i);

    for (std::size_t i : cand)
        if (ring->is_unit(m.entry(i, k))) {
            record(ElemMove::swap(k, i));
            return;
        }
    NCL_REQUIRE(!cand.empty(), Errc::PivotSearchExhausted, "column has no nonzero entry below the pivot");

    const RingElem a = m.at(k, k);
    // a + t b for t drawn from the column entries, +-1, small integers
    std::vector<RingElem> ts;
    for (std::size_t i = k; i < m.rows(); ++i)
        if (!ring->is_zero(m.entry(i, k))) ts.push_back(m.at(i, k));
    for (std::int64_t v : {1, -1, 2, -2, 3, -3, 4, 5}) ts.push_back(ring->from_int(v));
    if (ring->kind() == RingKind::GroupRing)
        for (int g = 0; g < ring->group()->order(); ++g) ts.push_back(ring->group_element(g));
    for (std::size_t i : cand) {
        const RingElem b = m.at(i, k);
        for (const auto& t : ts)
            if ((a + t * b).is_unit()) {
                record(ElemMove::add_row(k, i, t));
                return;
            }
    }

    // bounded pseudorandom combinations, seeded per search
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    for (int attempt = 0; attempt < 2000; ++attempt) {
        std::vector<RingElem> coef;
        RingElem v = a;
        for (std::size_t i : cand) {
            coef.push_back(ring->random(rng));
            v += coef.back() * m.at(i, k);
        }
        if (v.is_unit()) {
            for (std::size_t t = 0; t < cand.size(); ++t)
                if (!coef[t].is_zero()) record(ElemMove::add_row(k, cand[t], coef[t]));
            return;
        }
    }

    if (ring->size() <= 10'000) {
        for (std::size_t i : cand) {
            const RingElem b = m.at(i, k);
            for (std::uint64_t idx = 0; idx < ring->size(); ++idx) {
                RingElem t = ring->element_at(idx);
                if ((a + t * b).is_unit()) {
                    record(ElemMove::add_row(k, i, t));
                    return;
                }
            }
        }
    }
    fail(Errc::PivotSearchExhausted, "no unit pivot found in column " + std::to_string(k) + " over " + ring->describe());
}

// Invertibility

namespace {

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

// Z/m-linear matrix of v -> v M on row vectors (group ring entries expand to regular blocks).
std::vector<std::int64_t> blow_up(const Matrix& m, std::size_t& size) {
    const auto& ring = m.ring();
    const std::size_t n = m.rows();
    if (ring->kind() == RingKind::ZMod) {
        size = n;
        std::vector<std::int64_t> out(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] = m.entry(i, j)[0];
        return out;
    }
    const auto& g = *ring->group();
    const std::size_t w = static_cast<std::size_t>(g.order());
    size = n * w;
    std::vector<std::int64_t> out(size * size);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto a = m.entry(i, j);
            for (std::size_t x = 0; x < w; ++x)
                for (std::size_t y = 0; y < w; ++y)
                    out[(i * w + x) * size + j * w + y] =
                        a[static_cast<std::size_t>(g.mul(g.inverse(static_cast<int>(x)), static_cast<int>(y)))];
        }
    return out;
}

Matrix component_matrix(const Matrix& m, std::size_t c) {
    const auto& f = m.ring()->factors()[c];
    Matrix out(f, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.set(i, j, m.at(i, j).component(c));
    return out;
}

} // namespace

bool matrix_is_invertible(const Matrix& m) {
    if (!m.square()) return false;
    const auto& ring = m.ring();
    switch (ring->kind()) {
    case RingKind::ZMod:
    case RingKind::GroupRing: {
        std::size_t size = 0;
        const auto big = blow_up(m, size);
        for (auto l : prime_divisors(static_cast<std::uint64_t>(ring->modulus())))
            if (!full_rank_mod_prime(big, size, static_cast<std::int64_t>(l))) return false;
        return true;
    }
    case RingKind::Product:
        for (std::size_t c = 0; c < ring->factors().size(); ++c)
            if (!matrix_is_invertible(component_matrix(m, c))) return false;
        return true;
    case RingKind::Series: {
        Matrix c0(ring->series_base(), m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) c0.set(i, j, m.at(i, j).component(0));
        return matrix_is_invertible(c0);
    }
    }
    return false;
}

Matrix matrix_inverse(const Matrix& m) {
    NCL_REQUIRE(matrix_is_invertible(m), Errc::NotInvertible, "matrix is not invertible over " + m.ring()->describe());
    const std::size_t n = m.rows();
    Matrix a = m;
    Matrix inv = Matrix::identity(m.ring(), n);
    // Gauss-Jordan: every row move on a is mirrored on inv.
    std::vector<ElemMove> moves;
    for (std::size_t k = 0; k < n; ++k) {
        moves.clear();
        make_unit_pivot(a, k, &moves);
        for (const auto& mv : moves) apply_move(inv, mv);
        const RingElem pinv = a.at(k, k).inverse();
        a.scale_row(k, pinv);
        inv.scale_row(k, pinv);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m.ring()->is_zero(a.entry(i, k))) continue;
            const RingElem t = -a.at(i, k);
            a.add_row_multiple(i, k, t);
            inv.add_row_multiple(i, k, t);
        }
    }
    NCL_REQUIRE((inv * m).is_identity() && (m * inv).is_identity(), Errc::NotInvertible, "inverse check failed");
    return inv;
}

RingElem matrix_det(const Matrix& m) {
    NCL_REQUIRE(m.square(), Errc::InvalidInput, "determinant of a non-square matrix");
    const auto& ring = m.ring();
    NCL_REQUIRE(ring->is_commutative(), Errc::NoncommutativeRing, "determinant over " + ring->describe());
    const std::size_t n = m.rows();
    NCL_REQUIRE(n <= 20, Errc::SizeOverflow, "subset expansion limited to 20 rows");
    if (n == 0) return ring->one();
    // dp[S]: signed sum over assignments of rows 0..|S|-1 to the column set S
    const std::size_t full = (std::size_t{1} << n);
    const std::size_t w = ring->width();
    std::vector<Ring::Value> dp(full * w, 0);
    ring->set_one(Ring::Span(dp.data(), w));
    std::vector<Ring::Value> term(w);
    for (std::size_t s = 0; s < full; ++s) {
        Ring::CSpan cur(dp.data() + s * w, w);
        if (ring->is_zero(cur)) continue;
        const std::size_t row = static_cast<std::size_t>(std::popcount(s));
        if (row == n) continue;
        for (std::size_t c = 0; c < n; ++c) {
            if (s & (std::size_t{1} << c)) continue;
            // sign: number of used columns greater than c
            const int inversions = std::popcount(s >> (c + 1));
            ring->mul(cur, m.entry(row, c), term);
            if (inversions & 1) ring->neg(term, term);
            Ring::Span dst(dp.data() + (s | (std::size_t{1} << c)) * w, w);
            ring->add(dst, term, dst);
        }
    }
    return RingElem(ring, std::vector<Ring::Value>(dp.begin() + static_cast<std::ptrdiff_t>((full - 1) * w),
                                                   dp.begin() + static_cast<std::ptrdiff_t>(full * w)));
}

} // namespace ncl
