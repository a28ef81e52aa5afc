#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "loopgr/series.hpp"

namespace loopgr {

// Dense row-major matrix of Laurent series over a common ring. No
// invertibility is implied; see LoopMatrix for group elements.
class SeriesMatrix {
public:
    SeriesMatrix() = default;
    SeriesMatrix(const Ring& ring, std::size_t rows, std::size_t cols);
    SeriesMatrix(const Ring& ring, std::size_t rows, std::size_t cols, std::vector<LaurentSeries> entries);

    static SeriesMatrix identity(const Ring& ring, std::size_t n);
    // diag(t^e_1, ..., t^e_n)
    static SeriesMatrix monomial_diagonal(const Ring& ring, const std::vector<int>& exponents);
    static SeriesMatrix diagonal(const std::vector<LaurentSeries>& entries);

    const Ring& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const LaurentSeries& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    LaurentSeries& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const std::vector<LaurentSeries>& entries() const { return data_; }

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);

    friend bool operator==(const SeriesMatrix&, const SeriesMatrix&) = default;

private:
    Ring ring_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<LaurentSeries> data_;
};

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator-(const SeriesMatrix& a);

SeriesMatrix transpose(const SeriesMatrix& a);
// Cofactor expansion; exact on exact entries.
LaurentSeries determinant(const SeriesMatrix& a);
SeriesMatrix adjugate(const SeriesMatrix& a);

// Every entry is zero on its known window.
bool is_zero_to_precision(const SeriesMatrix& a);
bool approx_equal(const SeriesMatrix& a, const SeriesMatrix& b);
bool is_exact(const SeriesMatrix& a);
// Least absolute precision over all entries.
int absolute_precision(const SeriesMatrix& a);
// Least known entry valuation; nullopt when every entry is zero on its window.
std::optional<int> min_valuation(const SeriesMatrix& a);

SeriesMatrix truncated(const SeriesMatrix& a, int absolute_precision);
SeriesMatrix residue(const SeriesMatrix& a);
SeriesMatrix lift_to(const SeriesMatrix& a, const Ring& artinian);

std::ostream& operator<<(std::ostream& os, const SeriesMatrix& a);

// Rank of a matrix over a field (exact Gaussian elimination).
std::size_t rank(std::vector<std::vector<Scalar>> rows);
// Determinant of a scalar matrix over a field.
Scalar determinant(std::vector<std::vector<Scalar>> rows, const Ring& ring);

} // namespace loopgr
