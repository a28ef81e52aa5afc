#include "loopgr/cartan.hpp"

#include <algorithm>
#include <numeric>

namespace loopgr {

Cocharacter::Cocharacter(std::vector<int> lambda) : lambda_(std::move(lambda))
{
    if (!std::is_sorted(lambda_.begin(), lambda_.end(), std::greater<>())) {
        throw DomainError("cocharacter is not dominant (non-increasing)");
    }
}

Cocharacter Cocharacter::dominant(std::vector<int> tuple)
{
    std::sort(tuple.begin(), tuple.end(), std::greater<>());
    return Cocharacter(std::move(tuple));
}

int Cocharacter::sum() const { return std::accumulate(lambda_.begin(), lambda_.end(), 0); }

bool Cocharacter::is_zero() const
{
    return std::all_of(lambda_.begin(), lambda_.end(), [](int x) { return x == 0; });
}

Cocharacter Cocharacter::dual() const
{
    std::vector<int> d(lambda_.rbegin(), lambda_.rend());
    for (auto& x : d) x = -x;
    return Cocharacter(std::move(d));
}

std::ostream& operator<<(std::ostream& os, const Cocharacter& c)
{
    os << "(";
    for (std::size_t i = 0; i < c.values().size(); ++i) os << (i ? ", " : "") << c.values()[i];
    return os << ")";
}

CoarseStratum CoarseStratum::of(const Cocharacter& lambda)
{
    CoarseStratum s;
    s.orbit.push_back(lambda);
    if (Cocharacter d = lambda.dual(); !(d == lambda)) s.orbit.push_back(std::move(d));
    std::sort(s.orbit.begin(), s.orbit.end(), std::greater<>());
    return s;
}

SeriesMatrix CartanFactorization::product() const
{
    return u.entries() * SeriesMatrix::monomial_diagonal(u.ring(), lambda.values()) * v.entries();
}

CartanFactorization smith_normal_form(const LoopMatrix& a, int working_precision)
{
    const std::size_t n = a.size();
    const Ring& ring = a.ring();
    const int retry = std::min(kMaxPrecision, 2 * working_precision);

    // Invariant: a == left * m * right.
    SeriesMatrix m = a.entries();
    SeriesMatrix left = SeriesMatrix::identity(ring, n);
    SeriesMatrix right = SeriesMatrix::identity(ring, n);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pi = n;
        std::size_t pj = n;
        int best = 0;
        for (std::size_t i = k; i < n; ++i) {
            for (std::size_t j = k; j < n; ++j) {
                auto v = m(i, j).valuation();
                if (v && (pi == n || *v < best)) {
                    pi = i;
                    pj = j;
                    best = *v;
                }
            }
        }
        if (pi == n) {
            bool exact = true;
            for (std::size_t i = k; i < n; ++i) {
                for (std::size_t j = k; j < n; ++j) exact = exact && m(i, j).is_exact_zero();
            }
            if (exact) throw SingularToPrecision("remaining block vanishes identically");
            throw InsufficientPrecision("remaining block is zero on its known window", retry);
        }
        // Entries that are zero to precision could hide a smaller valuation.
        for (std::size_t i = k; i < n; ++i) {
            for (std::size_t j = k; j < n; ++j) {
                if (!m(i, j).valuation() && m(i, j).absolute_precision() < best) {
                    throw InsufficientPrecision("pivot valuation is not certified", retry);
                }
            }
        }
        if (!m(pi, pj).is_unit()) throw NonUnitLeading("pivot has a non-unit leading coefficient");

        m.swap_rows(k, pi);
        left.swap_cols(k, pi);
        m.swap_cols(k, pj);
        right.swap_rows(k, pj);

        const LaurentSeries pivot_inv = m(k, k).inverse(working_precision);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k).is_exact_zero()) continue;
            const LaurentSeries c = m(i, k) * pivot_inv;
            if (!(m(i, k) - c * m(k, k)).is_zero_to_precision()) {
                throw InsufficientPrecision("row elimination lost its leading terms", retry);
            }
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= c * m(k, j);
            m(i, k) = LaurentSeries::zero(ring);
            for (std::size_t r = 0; r < n; ++r) left(r, k) += left(r, i) * c;
        }
        for (std::size_t j = k + 1; j < n; ++j) {
            if (m(k, j).is_exact_zero()) continue;
            const LaurentSeries c = pivot_inv * m(k, j);
            if (!(m(k, j) - m(k, k) * c).is_zero_to_precision()) {
                throw InsufficientPrecision("column elimination lost its leading terms", retry);
            }
            m(k, j) = LaurentSeries::zero(ring);
            for (std::size_t col = 0; col < n; ++col) right(k, col) += c * right(j, col);
        }
    }

    // m is diagonal with entries t^e_k w_k, w_k a unit of A[[t]]; the e_k are
    // non-decreasing because each pivot has minimal valuation in its block.
    std::vector<int> exponents(n);
    for (std::size_t k = 0; k < n; ++k) {
        exponents[k] = *m(k, k).valuation();
        const LaurentSeries w = m(k, k).shifted(-exponents[k]);
        for (std::size_t r = 0; r < n; ++r) left(r, k) = left(r, k) * w;
    }

    // Stable descending order gives the dominant representative and leaves
    // blocks of equal exponents in place.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return exponents[i] > exponents[j]; });
    std::vector<int> lambda(n);
    SeriesMatrix sorted_left(ring, n, n);
    SeriesMatrix sorted_right(ring, n, n);
    for (std::size_t k = 0; k < n; ++k) {
        lambda[k] = exponents[order[k]];
        for (std::size_t r = 0; r < n; ++r) {
            sorted_left(r, k) = left(r, order[k]);
            sorted_right(k, r) = right(order[k], r);
        }
    }
    left = std::move(sorted_left);
    right = std::move(sorted_right);

    CartanFactorization f{LoopMatrix(std::move(left)), Cocharacter(std::move(lambda)), LoopMatrix(std::move(right))};

    if (!is_positive(f.u) || !is_positive(f.v)) {
        throw InsufficientPrecision("Cartan factors are not certified positive", retry);
    }
    const SeriesMatrix residual = f.product() - a.entries();
    const int floor = min_valuation(a.entries()).value_or(0);
    if (!is_zero_to_precision(residual) || absolute_precision(residual) <= floor) {
        throw InsufficientPrecision("reconstruction is not certified", retry);
    }
    return f;
}

Cocharacter stratum(const LoopMatrix& a, int working_precision)
{
    return smith_normal_form(a, working_precision).lambda;
}

CoarseStratum coarse_stratum(const LoopMatrix& a, int working_precision)
{
    return CoarseStratum::of(stratum(a, working_precision));
}

ParabolicType parabolic_type(const Cocharacter& lambda)
{
    ParabolicType p;
    const auto& v = lambda.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i == 0 || v[i] != v[i - 1]) {
            p.blocks.push_back(1);
        } else {
            ++p.blocks.back();
        }
    }
    return p;
}

} // namespace loopgr
