#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "loopgr/cartan.hpp"
#include "loopgr/loops.hpp"
#include "loopgr/series.hpp"

namespace loopgr {

// A rational point r of the affine line.
struct MarkedPoint {
    Scalar r;
};

// Gluing data for a rank-n bundle on P^1: the trivial bundle on the
// complement of the marked points, glued at each r_i through the lattice
// alpha_i * k[[t]]^n in the local coordinate t - r_i. The optional loop at
// infinity is written in the coordinate s = 1/t.
class ModificationDatum {
public:
    ModificationDatum(const Ring& ring, std::size_t n);
    ModificationDatum(std::vector<MarkedPoint> points, std::vector<LoopMatrix> loops,
                      std::optional<LoopMatrix> infinity_loop = std::nullopt);

    const Ring& ring() const { return ring_; }
    std::size_t rank() const { return n_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<MarkedPoint>& points() const { return points_; }
    const std::vector<LoopMatrix>& loops() const { return loops_; }
    const std::optional<LoopMatrix>& infinity_loop() const { return infinity_loop_; }

    std::optional<std::size_t> index_of(const Scalar& r) const;

private:
    void validate() const;

    Ring ring_;
    std::size_t n_ = 0;
    std::vector<MarkedPoint> points_;
    std::vector<LoopMatrix> loops_;
    std::optional<LoopMatrix> infinity_loop_;
};

// Grothendieck splitting O(a_1) + ... + O(a_n), a non-increasing.
struct SplittingType {
    std::vector<int> a;

    int degree() const;
    bool is_zero() const;
    friend bool operator==(const SplittingType&, const SplittingType&) = default;
};

// h0(B, m) for m = m_min, m_min + 1, ...
struct H0Table {
    int m_min = 0;
    std::vector<int> values;

    int m_max() const { return m_min + static_cast<int>(values.size()) - 1; }
    int at(int m) const { return values.at(static_cast<std::size_t>(m - m_min)); }
};

// f(t + r_i) for each component.
std::vector<LaurentSeries> expand_at(const std::vector<RationalFunction>& v, const ModificationDatum& b,
                                     std::size_t i, int relative_precision = kDefaultPrecision);

// f(1/s) as a Laurent series in s.
LaurentSeries expand_at_infinity(const RationalFunction& f, int relative_precision = kDefaultPrecision);

// Dimension of the sections of the glued bundle twisted by m at infinity.
// Requires a field backend.
int h0(const ModificationDatum& b, int m);

// h0 over the twist range -(P n) - 1 .. (P n) + 1, P the sum of pole bounds.
H0Table h0_scan(const ModificationDatum& b);

// The unique non-increasing tuple with h0(m) = sum max(0, a_i + m + 1) on the
// table. Throws InconsistentH0 when no tuple fits.
SplittingType fit_splitting_type(const H0Table& table, std::size_t n);

SplittingType splitting_type(const ModificationDatum& b);
bool is_trivial(const ModificationDatum& b);
bool is_isomorphic(const ModificationDatum& b1, const ModificationDatum& b2);

// Appends (p, g), or replaces alpha by alpha * g when p is already marked.
ModificationDatum modify(const ModificationDatum& b, const MarkedPoint& p, const LoopMatrix& g);

// Changes the trivialization on the affine chart by g, a matrix of rational
// functions with poles only at marked points and determinant c * prod (t - r_i)^e_i.
// Each alpha_i becomes g(t + r_i) alpha_i and the infinity loop becomes
// g(1/s) alpha_inf. Non-exact expansions use `relative_precision`.
ModificationDatum retrivialize(const ModificationDatum& b, const std::vector<std::vector<RationalFunction>>& g,
                               int relative_precision = 64);

// Per-point strata, the infinity loop last when present.
std::vector<Cocharacter> strata_of(const ModificationDatum& b, int working_precision = kDefaultPrecision);
bool all_strata_zero(const ModificationDatum& b, int working_precision = kDefaultPrecision);

} // namespace loopgr
