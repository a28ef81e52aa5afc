#include "loopgr/loops.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <random>

#include "loopgr/errors.hpp"

namespace loopgr {

struct LoopMatrix::Cache {
    std::once_flag once;
    std::unique_ptr<LoopMatrix> inverse;
};

LoopMatrix::LoopMatrix(SeriesMatrix entries, Group group)
    : entries_(std::move(entries)), group_(group), cache_(std::make_shared<Cache>())
{
    if (!entries_.is_square() || entries_.rows() == 0) throw DomainError("loop matrices are square and non-empty");
    det_ = loopgr::determinant(entries_);
    if (det_.is_exact_zero()) throw SingularToPrecision("determinant vanishes identically");
    if (det_.is_zero_to_precision()) {
        throw SingularToPrecision("determinant is zero on its known window (precision " +
                                  std::to_string(det_.absolute_precision()) + ")");
    }
    if (!det_.is_unit()) throw NonUnitLeading("determinant has a non-unit leading coefficient");
    if (group_ == Group::SL && !approx_equal(det_, LaurentSeries::constant(Scalar::one(ring())))) {
        throw DomainError("SL-flagged loop has determinant " + det_.to_string());
    }
}

LoopMatrix LoopMatrix::identity(const Ring& ring, std::size_t n, Group group)
{
    return LoopMatrix(SeriesMatrix::identity(ring, n), group);
}

LoopMatrix LoopMatrix::monomial(const Ring& ring, const std::vector<int>& lambda)
{
    const bool zero_sum = std::accumulate(lambda.begin(), lambda.end(), 0) == 0;
    return LoopMatrix(SeriesMatrix::monomial_diagonal(ring, lambda), zero_sum ? Group::SL : Group::GL);
}

const LoopMatrix& LoopMatrix::inverse() const
{
    std::call_once(cache_->once, [this] { cache_->inverse = std::make_unique<LoopMatrix>(mat_inverse(*this)); });
    return *cache_->inverse;
}

std::ostream& operator<<(std::ostream& os, const LoopMatrix& a) { return os << a.entries(); }

LoopMatrix mat_mul(const LoopMatrix& a, const LoopMatrix& b)
{
    if (a.size() != b.size()) throw DomainError("loop size mismatch");
    require_same_ring(a.ring(), b.ring());
    const Group g = a.group() == Group::SL && b.group() == Group::SL ? Group::SL : Group::GL;
    return LoopMatrix(a.entries() * b.entries(), g);
}

namespace detail {

SeriesMatrix inverse_by_adjugate(const SeriesMatrix& a, const LaurentSeries& det)
{
    const LaurentSeries det_inv = det.inverse();
    SeriesMatrix adj = adjugate(a);
    for (std::size_t i = 0; i < adj.rows(); ++i) {
        for (std::size_t j = 0; j < adj.cols(); ++j) adj(i, j) = adj(i, j) * det_inv;
    }
    return adj;
}

SeriesMatrix inverse_by_elimination(const SeriesMatrix& a)
{
    const std::size_t n = a.rows();
    SeriesMatrix left = a;
    SeriesMatrix right = SeriesMatrix::identity(a.ring(), n);
    for (std::size_t k = 0; k < n; ++k) {
        std::optional<std::size_t> pivot;
        int best = 0;
        for (std::size_t i = k; i < n; ++i) {
            auto v = left(i, k).valuation();
            if (v && left(i, k).is_unit() && (!pivot || *v < best)) {
                pivot = i;
                best = *v;
            }
        }
        if (!pivot) {
            bool exact = true;
            for (std::size_t i = k; i < n; ++i) exact = exact && left(i, k).is_exact_zero();
            if (exact) throw SingularToPrecision("no pivot in column " + std::to_string(k));
            throw InsufficientPrecision("pivot in column " + std::to_string(k) + " cannot be certified",
                                        2 * kDefaultPrecision);
        }
        left.swap_rows(*pivot, k);
        right.swap_rows(*pivot, k);
        const LaurentSeries inv = left(k, k).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            left(k, j) = left(k, j) * inv;
            right(k, j) = right(k, j) * inv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || left(i, k).is_exact_zero()) continue;
            const LaurentSeries f = left(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                left(i, j) -= f * left(k, j);
                right(i, j) -= f * right(k, j);
            }
            left(i, k) = LaurentSeries::zero(a.ring());
        }
    }
    return right;
}

} // namespace detail

LoopMatrix mat_inverse(const LoopMatrix& a)
{
    if (a.size() <= 3) return LoopMatrix(detail::inverse_by_adjugate(a.entries(), a.determinant()), a.group());
    return LoopMatrix(detail::inverse_by_elimination(a.entries()), a.group());
}

namespace {

// Least N with every entry of m of valuation >= -N, certified against
// entries that are zero to precision.
int entry_pole_bound(const SeriesMatrix& m, int floor)
{
    int bound = floor;
    for (const auto& e : m.entries()) {
        if (auto v = e.valuation()) bound = std::max(bound, -*v);
    }
    for (const auto& e : m.entries()) {
        if (!e.valuation() && e.absolute_precision() < -bound) {
            throw InsufficientPrecision("pole order of an entry is not determined", 2 * kDefaultPrecision);
        }
    }
    return bound;
}

} // namespace

int pole_bound(const LoopMatrix& a)
{
    const int n = entry_pole_bound(a.entries(), 0);
    return entry_pole_bound(a.inverse().entries(), n);
}

bool is_positive(const SeriesMatrix& a)
{
    for (const auto& e : a.entries()) {
        if (auto v = e.valuation(); v && *v < 0) return false;
    }
    for (const auto& e : a.entries()) {
        if (e.absolute_precision() < 1) {
            throw InsufficientPrecision("constant term of an entry is not known", 2 * kDefaultPrecision);
        }
    }
    const Ring residue = a.ring().residue_field();
    std::vector<std::vector<Scalar>> constant(a.rows(), std::vector<Scalar>(a.cols(), Scalar::zero(residue)));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) constant[i][j] = a(i, j).coefficient(0).residue();
    }
    return !determinant(std::move(constant), residue).is_zero();
}

bool is_positive(const LoopMatrix& a) { return is_positive(a.entries()); }

LoopMatrix transpose_inverse(const LoopMatrix& a) { return LoopMatrix(transpose(a.inverse().entries()), a.group()); }

LoopMatrix residue(const LoopMatrix& a) { return LoopMatrix(residue(a.entries()), a.group()); }

LoopMatrix lift_to(const LoopMatrix& a, const Ring& artinian)
{
    return LoopMatrix(lift_to(a.entries(), artinian), a.group());
}

bool approx_equal(const LoopMatrix& a, const LoopMatrix& b) { return approx_equal(a.entries(), b.entries()); }

namespace {

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Sampler {
public:
    Sampler(const Ring& ring, std::uint64_t seed) : ring_(ring), engine_(splitmix(seed)) {}

    int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

    Scalar field_element(const Ring& field, bool nonzero)
    {
        for (;;) {
            Scalar s = Scalar::from_int(field, integer(-3, 3));
            if (!nonzero || !s.is_zero()) return s;
        }
    }

    // Random element of ring_; a unit when `unit` is set.
    Scalar element(bool unit)
    {
        if (ring_.is_field()) return field_element(ring_, unit);
        std::vector<Scalar> c;
        c.push_back(field_element(ring_.residue_field(), unit));
        for (int k = 1; k < ring_.nilpotency; ++k) c.push_back(field_element(ring_.residue_field(), false));
        return Scalar::from_coefficients(ring_, std::move(c));
    }

    LaurentSeries polynomial(int degree)
    {
        std::vector<Scalar> c;
        for (int k = 0; k <= degree; ++k) c.push_back(element(false));
        return LaurentSeries::from_coefficients(ring_, 0, std::move(c));
    }

    const Ring& ring() const { return ring_; }

private:
    Ring ring_;
    std::mt19937_64 engine_;
};

SeriesMatrix elementary(const Ring& ring, std::size_t n, std::size_t i, std::size_t j, const LaurentSeries& f)
{
    SeriesMatrix e = SeriesMatrix::identity(ring, n);
    e(i, j) = f;
    return e;
}

SeriesMatrix random_unipotent_word(Sampler& s, std::size_t n, int length)
{
    SeriesMatrix m = SeriesMatrix::identity(s.ring(), n);
    if (n < 2) return m;
    for (int k = 0; k < length; ++k) {
        const auto i = static_cast<std::size_t>(s.integer(0, static_cast<int>(n) - 1));
        auto j = static_cast<std::size_t>(s.integer(0, static_cast<int>(n) - 2));
        if (j >= i) ++j;
        m = m * elementary(s.ring(), n, i, j, s.polynomial(s.integer(0, 2)));
    }
    return m;
}

} // namespace

LoopMatrix random_positive(const Ring& ring, std::size_t n, std::uint64_t seed, Group group)
{
    if (n == 0) throw DomainError("loop size must be positive");
    Sampler s(ring, seed);
    SeriesMatrix diag = SeriesMatrix::identity(ring, n);
    if (group == Group::GL) {
        // Unit power series on the diagonal: c + a t with c a unit.
        for (std::size_t i = 0; i < n; ++i) {
            const bool linear = s.integer(0, 1) == 1;
            std::vector<Scalar> c{s.element(true)};
            if (linear) c.push_back(s.element(false));
            diag(i, i) = LaurentSeries::from_coefficients(ring, 0, std::move(c));
        }
        if (n > 1 && s.integer(0, 1) == 1) {
            diag.swap_rows(0, static_cast<std::size_t>(s.integer(1, static_cast<int>(n) - 1)));
        }
    } else if (n > 1) {
        const Scalar c = s.element(true);
        diag(0, 0) = LaurentSeries::constant(c);
        diag(1, 1) = LaurentSeries::constant(c.inverse());
    }
    const int length = static_cast<int>(n) + 1;
    SeriesMatrix m = random_unipotent_word(s, n, length) * diag * random_unipotent_word(s, n, length);
    return LoopMatrix(std::move(m), group);
}

GeneratedLoop random_loop(const Ring& ring, std::size_t n, int max_pole, std::uint64_t seed, Group group)
{
    if (max_pole < 0) throw DomainError("pole bound must be non-negative");
    Sampler s(ring, seed ^ 0x5851f42d4c957f2dULL);
    std::vector<int> lambda(n, 0);
    for (;;) {
        for (auto& l : lambda) l = s.integer(-max_pole, max_pole);
        if (group == Group::GL) break;
        const int rest = -std::accumulate(lambda.begin(), lambda.end() - 1, 0);
        if (std::abs(rest) <= max_pole) {
            lambda.back() = rest;
            break;
        }
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    const LoopMatrix p = random_positive(ring, n, splitmix(seed), group);
    const LoopMatrix q = random_positive(ring, n, splitmix(seed + 1), group);
    LoopMatrix loop(p.entries() * SeriesMatrix::monomial_diagonal(ring, lambda) * q.entries(), group);
    return {std::move(loop), std::move(lambda)};
}

} // namespace loopgr
