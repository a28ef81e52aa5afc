#include "loopgr/matrix.hpp"

#include <algorithm>
#include <numeric>

#include "loopgr/errors.hpp"

namespace loopgr {

SeriesMatrix::SeriesMatrix(const Ring& ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, LaurentSeries::zero(ring))
{
}

SeriesMatrix::SeriesMatrix(const Ring& ring, std::size_t rows, std::size_t cols, std::vector<LaurentSeries> entries)
    : ring_(ring), rows_(rows), cols_(cols), data_(std::move(entries))
{
    if (data_.size() != rows * cols) throw DomainError("matrix entry count does not match its shape");
    for (const auto& e : data_) require_same_ring(e.ring(), ring_);
}

SeriesMatrix SeriesMatrix::identity(const Ring& ring, std::size_t n)
{
    SeriesMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentSeries::constant(Scalar::one(ring));
    return m;
}

SeriesMatrix SeriesMatrix::monomial_diagonal(const Ring& ring, const std::vector<int>& exponents)
{
    SeriesMatrix m(ring, exponents.size(), exponents.size());
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        m(i, i) = LaurentSeries::monomial(Scalar::one(ring), exponents[i]);
    }
    return m;
}

SeriesMatrix SeriesMatrix::diagonal(const std::vector<LaurentSeries>& entries)
{
    if (entries.empty()) throw DomainError("empty diagonal");
    SeriesMatrix m(entries.front().ring(), entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

void SeriesMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void SeriesMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b)
{
    require_same_ring(a.ring(), b.ring());
    if (a.cols() != b.rows()) throw DomainError("matrix size mismatch in product");
    SeriesMatrix c(a.ring(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            LaurentSeries acc = LaurentSeries::zero(a.ring());
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (a(i, k).is_exact_zero() || b(k, j).is_exact_zero()) continue;
                acc += a(i, k) * b(k, j);
            }
            c(i, j) = std::move(acc);
        }
    }
    return c;
}

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b)
{
    require_same_ring(a.ring(), b.ring());
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix size mismatch in sum");
    SeriesMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    }
    return c;
}

SeriesMatrix operator-(const SeriesMatrix& a)
{
    SeriesMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = -a(i, j);
    }
    return c;
}

SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) { return a + (-b); }

SeriesMatrix transpose(const SeriesMatrix& a)
{
    SeriesMatrix t(a.ring(), a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    }
    return t;
}

namespace {

SeriesMatrix minor_matrix(const SeriesMatrix& a, std::size_t row, std::size_t col)
{
    const std::size_t n = a.rows();
    SeriesMatrix m(a.ring(), n - 1, n - 1);
    for (std::size_t i = 0, mi = 0; i < n; ++i) {
        if (i == row) continue;
        for (std::size_t j = 0, mj = 0; j < n; ++j) {
            if (j == col) continue;
            m(mi, mj++) = a(i, j);
        }
        ++mi;
    }
    return m;
}

LaurentSeries laplace_determinant(const SeriesMatrix& a)
{
    const std::size_t n = a.rows();
    if (n == 0) return LaurentSeries::constant(Scalar::one(a.ring()));
    if (n == 1) return a(0, 0);
    if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    LaurentSeries det = LaurentSeries::zero(a.ring());
    for (std::size_t j = 0; j < n; ++j) {
        if (a(0, j).is_exact_zero()) continue;
        LaurentSeries term = a(0, j) * laplace_determinant(minor_matrix(a, 0, j));
        if (j % 2 == 0) {
            det += term;
        } else {
            det -= term;
        }
    }
    return det;
}

// Gaussian elimination with valuation-minimizing full pivoting.
LaurentSeries elimination_determinant(SeriesMatrix a)
{
    const std::size_t n = a.rows();
    LaurentSeries det = LaurentSeries::constant(Scalar::one(a.ring()));
    for (std::size_t k = 0; k < n; ++k) {
        std::optional<std::pair<std::size_t, std::size_t>> pivot;
        int best = 0;
        for (std::size_t i = k; i < n; ++i) {
            for (std::size_t j = k; j < n; ++j) {
                auto v = a(i, j).valuation();
                if (v && a(i, j).is_unit() && (!pivot || *v < best)) {
                    pivot = {i, j};
                    best = *v;
                }
            }
        }
        if (!pivot) {
            bool exact = true;
            for (std::size_t i = k; i < n; ++i) {
                for (std::size_t j = k; j < n; ++j) exact = exact && a(i, j).is_exact_zero();
            }
            if (exact) return LaurentSeries::zero(a.ring());
            // Unknown remaining block: the determinant is only known to be small.
            long prec = kExact;
            for (std::size_t i = k; i < n; ++i) {
                for (std::size_t j = k; j < n; ++j) prec = std::min<long>(prec, a(i, j).order_lower_bound());
            }
            const long bound = std::clamp<long>(prec * static_cast<long>(n - k), -kMaxPrecision * 64L, kMaxPrecision * 64L);
            return det * LaurentSeries::zero(a.ring(), static_cast<int>(bound));
        }
        auto [pi, pj] = *pivot;
        if (pi != k) {
            a.swap_rows(pi, k);
            det = -det;
        }
        if (pj != k) {
            a.swap_cols(pj, k);
            det = -det;
        }
        det = det * a(k, k);
        const LaurentSeries inv = a(k, k).inverse();
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k).is_exact_zero()) continue;
            const LaurentSeries c = a(i, k) * inv;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= c * a(k, j);
            a(i, k) = LaurentSeries::zero(a.ring());
        }
    }
    return det;
}

} // namespace

LaurentSeries determinant(const SeriesMatrix& a)
{
    if (!a.is_square()) throw DomainError("determinant of a non-square matrix");
    if (a.rows() <= 4) return laplace_determinant(a);
    return elimination_determinant(a);
}

SeriesMatrix adjugate(const SeriesMatrix& a)
{
    if (!a.is_square()) throw DomainError("adjugate of a non-square matrix");
    const std::size_t n = a.rows();
    SeriesMatrix adj(a.ring(), n, n);
    if (n == 1) {
        adj(0, 0) = LaurentSeries::constant(Scalar::one(a.ring()));
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            LaurentSeries c = determinant(minor_matrix(a, i, j));
            adj(j, i) = (i + j) % 2 == 0 ? c : -c;
        }
    }
    return adj;
}

bool is_zero_to_precision(const SeriesMatrix& a)
{
    return std::all_of(a.entries().begin(), a.entries().end(),
                       [](const LaurentSeries& e) { return e.is_zero_to_precision(); });
}

bool approx_equal(const SeriesMatrix& a, const SeriesMatrix& b)
{
    if (!(a.ring() == b.ring()) || a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return is_zero_to_precision(a - b);
}

bool is_exact(const SeriesMatrix& a)
{
    return std::all_of(a.entries().begin(), a.entries().end(), [](const LaurentSeries& e) { return e.is_exact(); });
}

int absolute_precision(const SeriesMatrix& a)
{
    int p = kExact;
    for (const auto& e : a.entries()) p = std::min(p, e.absolute_precision());
    return p;
}

std::optional<int> min_valuation(const SeriesMatrix& a)
{
    std::optional<int> best;
    for (const auto& e : a.entries()) {
        if (auto v = e.valuation(); v && (!best || *v < *best)) best = v;
    }
    return best;
}

SeriesMatrix truncated(const SeriesMatrix& a, int absolute_precision)
{
    SeriesMatrix t = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) t(i, j) = a(i, j).truncated(absolute_precision);
    }
    return t;
}

SeriesMatrix residue(const SeriesMatrix& a)
{
    std::vector<LaurentSeries> e;
    e.reserve(a.entries().size());
    for (const auto& x : a.entries()) e.push_back(x.residue());
    return SeriesMatrix(a.ring().residue_field(), a.rows(), a.cols(), std::move(e));
}

SeriesMatrix lift_to(const SeriesMatrix& a, const Ring& artinian)
{
    std::vector<LaurentSeries> e;
    e.reserve(a.entries().size());
    for (const auto& x : a.entries()) e.push_back(x.lift_to(artinian));
    return SeriesMatrix(artinian, a.rows(), a.cols(), std::move(e));
}

std::ostream& operator<<(std::ostream& os, const SeriesMatrix& a)
{
    os << "[";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? ", " : "") << a(i, j);
        os << "]";
    }
    return os << "]";
}

std::size_t rank(std::vector<std::vector<Scalar>> rows)
{
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c].is_zero()) ++p;
        if (p == rows.size()) continue;
        if (!rows[p][c].ring().is_field()) throw DomainError("rank requires a field");
        std::swap(rows[p], rows[r]);
        const Scalar inv = rows[r][c].inverse();
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c].is_zero()) continue;
            const Scalar f = rows[i][c] * inv;
            for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

Scalar determinant(std::vector<std::vector<Scalar>> rows, const Ring& ring)
{
    if (!ring.is_field()) throw DomainError("scalar determinant requires a field");
    const std::size_t n = rows.size();
    Scalar det = Scalar::one(ring);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && rows[p][c].is_zero()) ++p;
        if (p == n) return Scalar::zero(ring);
        if (p != c) {
            std::swap(rows[p], rows[c]);
            det = -det;
        }
        det *= rows[c][c];
        const Scalar inv = rows[c][c].inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (rows[i][c].is_zero()) continue;
            const Scalar f = rows[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) rows[i][j] -= f * rows[c][j];
        }
    }
    return det;
}

} // namespace loopgr
