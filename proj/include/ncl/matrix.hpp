#pragma once

// Dense matrices over a Ring, elementary moves, and invertibility.

#include "ncl/ring.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ncl {

class Matrix {
public:
    Matrix(RingPtr ring, std::size_t rows, std::size_t cols);
    static Matrix identity(RingPtr ring, std::size_t n);
    static Matrix from_entries(RingPtr ring, const std::vector<std::vector<RingElem>>& entries);
    /// Row-major integers reduced into the ring.
    static Matrix from_ints(RingPtr ring, std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& v);
    static Matrix random(RingPtr ring, std::size_t rows, std::size_t cols, std::mt19937_64& rng);

    const RingPtr& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    RingElem at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, const RingElem& v);
    Ring::Span entry(std::size_t i, std::size_t j);
    Ring::CSpan entry(std::size_t i, std::size_t j) const;

    Matrix operator*(const Matrix& b) const;
    Matrix operator+(const Matrix& b) const;
    Matrix operator-(const Matrix& b) const;
    bool operator==(const Matrix& b) const;
    bool operator!=(const Matrix& b) const { return !(*this == b); }

    /// Entrywise image under a hom.
    Matrix map(const RingHom& h) const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    bool is_identity() const;

    // In-place elementary operations.
    /// row_i += r * row_j
    void add_row_multiple(std::size_t i, std::size_t j, const RingElem& r);
    /// col_j += col_i * r
    void add_col_multiple(std::size_t i, std::size_t j, const RingElem& r);
    /// row_i <- row_j, row_j <- -row_i
    void swap_whitehead(std::size_t i, std::size_t j);
    void scale_row(std::size_t i, const RingElem& u);
    void scale_col(std::size_t j, const RingElem& u);

    std::string to_string() const;

private:
    RingPtr ring_;
    std::size_t rows_, cols_;
    std::vector<Ring::Value> data_;
    std::size_t offset(std::size_t i, std::size_t j) const { return (i * cols_ + j) * ring_->width(); }
};

Matrix block_diagonal(const std::vector<Matrix>& blocks);

/// One elementary move of an elimination transcript.
struct ElemMove {
    enum class Op { AddRow, AddCol, SwapWhitehead, ScalePair };
    enum class Side { Row, Col };
    Op op = Op::AddRow;
    std::size_t i = 0, j = 0;
    std::optional<RingElem> r;
    Side side = Side::Row;

    static ElemMove add_row(std::size_t i, std::size_t j, RingElem r);
    static ElemMove add_col(std::size_t i, std::size_t j, RingElem r);
    static ElemMove swap(std::size_t i, std::size_t j);
    /// Row side: row_i <- u row_i, row_j <- u^{-1} row_j; column side uses right multiplication.
    static ElemMove scale_pair(Side side, std::size_t i, std::size_t j, RingElem u);
};

void apply_move(Matrix& m, const ElemMove& mv);

/// Makes entry (k, k) a unit using row moves among rows >= k; appends the moves.
/// Throws PivotSearchExhausted when no combination of the rows works.
void make_unit_pivot(Matrix& m, std::size_t k, std::vector<ElemMove>* moves);

bool matrix_is_invertible(const Matrix& m);
/// Throws NotInvertible.
Matrix matrix_inverse(const Matrix& m);
/// Determinant by subset expansion (commutative rings only).
RingElem matrix_det(const Matrix& m);

} // namespace ncl
