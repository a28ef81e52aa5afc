#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "loopgr/matrix.hpp"

namespace loopgr {

enum class Group { GL, SL };

// An element of GL(n, A((t))): an n x n matrix of Laurent series whose
// determinant has known valuation and unit leading coefficient. SL is a
// constraint flag: det == 1 on its known window.
//
// The inverse and the pole bound are computed on first use and cached; the
// cache is shared between copies and filled at most once.
class LoopMatrix {
public:
    explicit LoopMatrix(SeriesMatrix entries, Group group = Group::GL);

    static LoopMatrix identity(const Ring& ring, std::size_t n, Group group = Group::GL);
    // t^lambda = diag(t^lambda_1, ..., t^lambda_n)
    static LoopMatrix monomial(const Ring& ring, const std::vector<int>& lambda);

    std::size_t size() const { return entries_.rows(); }
    const Ring& ring() const { return entries_.ring(); }
    Group group() const { return group_; }
    const SeriesMatrix& entries() const { return entries_; }
    const LaurentSeries& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
    const LaurentSeries& determinant() const { return det_; }

    const LoopMatrix& inverse() const;

    // Same matrix, with the SL flag verified or dropped.
    LoopMatrix with_group(Group group) const { return LoopMatrix(entries_, group); }

private:
    struct Cache;

    SeriesMatrix entries_;
    Group group_;
    LaurentSeries det_;
    std::shared_ptr<Cache> cache_;
};

std::ostream& operator<<(std::ostream& os, const LoopMatrix& a);

LoopMatrix mat_mul(const LoopMatrix& a, const LoopMatrix& b);
inline LoopMatrix operator*(const LoopMatrix& a, const LoopMatrix& b) { return mat_mul(a, b); }

// Two-sided inverse. Adjugate over the determinant for n <= 3, Gauss-Jordan
// elimination with valuation-minimizing pivots above.
LoopMatrix mat_inverse(const LoopMatrix& a);

namespace detail {
SeriesMatrix inverse_by_adjugate(const SeriesMatrix& a, const LaurentSeries& det);
SeriesMatrix inverse_by_elimination(const SeriesMatrix& a);
} // namespace detail

// Least N >= 0 with every entry of a and of a^{-1} of valuation >= -N, i.e.
// the filtration index of GL(n)^(N) containing a.
int pole_bound(const LoopMatrix& a);

// a lies in GL(n, A[[t]]): no poles and an invertible constant-term matrix.
bool is_positive(const LoopMatrix& a);
bool is_positive(const SeriesMatrix& a);

LoopMatrix transpose_inverse(const LoopMatrix& a);

// Residue / constant lift of all coefficients (for Artinian bases).
LoopMatrix residue(const LoopMatrix& a);
LoopMatrix lift_to(const LoopMatrix& a, const Ring& artinian);

bool approx_equal(const LoopMatrix& a, const LoopMatrix& b);

// Deterministic generators for tests and the CLI.
LoopMatrix random_positive(const Ring& ring, std::size_t n, std::uint64_t seed, Group group = Group::GL);

struct GeneratedLoop {
    LoopMatrix loop;
    std::vector<int> lambda; // dominant cocharacter used in the construction
};

// p * t^lambda * q with p, q random positive loops and lambda dominant with
// entries in [-max_pole, max_pole] (zero-sum for SL).
GeneratedLoop random_loop(const Ring& ring, std::size_t n, int max_pole, std::uint64_t seed,
                          Group group = Group::GL);

} // namespace loopgr
