#include "loopgr/p1bundles.hpp"

#include <algorithm>
#include <numeric>

namespace loopgr {

namespace {

int pole_order(const SeriesMatrix& a)
{
    const auto v = min_valuation(a);
    return v ? std::max(0, -*v) : 0;
}

// alpha^{-1}, known at least up to t^required.
SeriesMatrix local_inverse(const LoopMatrix& a, int required)
{
    const SeriesMatrix adj = adjugate(a.entries());
    const LaurentSeries& det = a.determinant();
    const int rel = std::max(1, required + *det.valuation() - min_valuation(adj).value_or(0) + 1);
    if (rel > kMaxPrecision) throw InsufficientPrecision("local inverse needs too many coefficients", kMaxPrecision);
    const LaurentSeries det_inv = det.inverse(rel);
    SeriesMatrix inv(a.ring(), a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) inv(i, j) = adj(i, j) * det_inv;
    }
    if (absolute_precision(inv) < required) {
        throw InsufficientPrecision("loop is not known to enough precision for the gluing conditions", 0);
    }
    return inv;
}

SeriesMatrix scaled_entries(const SeriesMatrix& a, const LaurentSeries& f)
{
    SeriesMatrix r(a.ring(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * f;
    }
    return r;
}

// Number of times t - r divides p.
int root_order(const Polynomial& p, const Scalar& r)
{
    const Polynomial q = p.taylor_shift(r);
    int k = 0;
    while (k <= q.degree() && q.coefficient(k).is_zero()) ++k;
    return k;
}

// p with all factors t - r_i removed.
Polynomial strip_roots(Polynomial p, const std::vector<MarkedPoint>& points)
{
    for (const auto& pt : points) {
        const int k = root_order(p, pt.r);
        if (k == 0) continue;
        const Polynomial shifted = p.taylor_shift(pt.r);
        const auto& c = shifted.coefficients();
        p = Polynomial(p.ring(), std::vector<Scalar>(c.begin() + k, c.end())).taylor_shift(-pt.r);
    }
    return p;
}

bool supported_on(const Polynomial& p, const std::vector<MarkedPoint>& points)
{
    return strip_roots(p, points).degree() == 0;
}

RationalFunction det_rational(const std::vector<std::vector<RationalFunction>>& g)
{
    const std::size_t n = g.size();
    if (n == 1) return g[0][0];
    RationalFunction acc(Polynomial(g[0][0].ring()));
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<RationalFunction>> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<RationalFunction> row;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) row.push_back(g[i][k]);
            }
            sub.push_back(std::move(row));
        }
        const RationalFunction term = g[0][j] * det_rational(sub);
        acc = j % 2 == 0 ? acc + term : acc - term;
    }
    return acc;
}

// The linear system behind h0: for each glued chart, C = alpha^{-1} times
// the expansion of 1 / prod (t - r_j)^{N_j}, known at all negative exponents.
struct GluingSystem {
    Ring ring;
    std::size_t n = 0;
    int pole_sum = 0;  // D = sum N_i
    int inf_pole = 0;  // N_inf
    std::vector<Scalar> centers;
    std::vector<SeriesMatrix> local;
    std::optional<SeriesMatrix> at_infinity;
};

GluingSystem build_system(const ModificationDatum& b)
{
    if (!b.ring().is_field()) throw NotImplemented("h0 requires a field backend");
    GluingSystem sys;
    sys.ring = b.ring();
    sys.n = b.rank();
    const Ring& ring = b.ring();
    const Scalar one = Scalar::one(ring);

    std::vector<int> poles;
    Polynomial denom = Polynomial::constant(one);
    Polynomial reversed = Polynomial::constant(one);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const int p = pole_order(b.loops()[i].entries());
        poles.push_back(p);
        sys.pole_sum += p;
        const Scalar& r = b.points()[i].r;
        denom = denom * Polynomial::linear(r).pow(p);
        reversed = reversed * Polynomial(ring, {one, -r}).pow(p);
    }

    for (std::size_t i = 0; i < b.size(); ++i) {
        const SeriesMatrix beta = local_inverse(b.loops()[i], poles[i]);
        const int beta_pole = pole_order(beta);
        const LaurentSeries s =
            expand_shift(RationalFunction(Polynomial::constant(one), denom), b.points()[i].r, beta_pole + poles[i] + 1);
        sys.centers.push_back(b.points()[i].r);
        sys.local.push_back(scaled_entries(beta, s));
    }

    if (const auto& inf = b.infinity_loop()) {
        sys.inf_pole = pole_order(inf->entries());
        const SeriesMatrix beta = local_inverse(*inf, sys.inf_pole);
        const LaurentSeries q = reversed.to_series().inverse(sys.inf_pole + pole_order(beta) + 1);
        sys.at_infinity = scaled_entries(beta, q);
    }
    return sys;
}

int h0_of(const GluingSystem& sys, int m)
{
    const int top = m + sys.pole_sum + sys.inf_pole;  // max degree of the numerator
    if (top < 0) return 0;
    const std::size_t width = static_cast<std::size_t>(top) + 1;
    const std::size_t unknowns = sys.n * width;
    const Scalar zero = Scalar::zero(sys.ring);
    std::vector<std::vector<Scalar>> rows;

    for (std::size_t i = 0; i < sys.local.size(); ++i) {
        const SeriesMatrix& c = sys.local[i];
        const auto low = min_valuation(c);
        if (!low || *low >= 0) continue;
        // (t + r_i)^d
        std::vector<LaurentSeries> powers{LaurentSeries::constant(Scalar::one(sys.ring))};
        const LaurentSeries shift = Polynomial::linear(-sys.centers[i]).to_series();
        for (std::size_t d = 1; d < width; ++d) powers.push_back(powers.back() * shift);

        for (std::size_t k = 0; k < sys.n; ++k) {
            std::vector<LaurentSeries> cols;
            for (std::size_t j = 0; j < sys.n; ++j) {
                for (std::size_t d = 0; d < width; ++d) cols.push_back(c(k, j) * powers[d]);
            }
            for (int e = *low; e < 0; ++e) {
                std::vector<Scalar> row(unknowns, zero);
                for (std::size_t u = 0; u < unknowns; ++u) row[u] = cols[u].coefficient(e);
                rows.push_back(std::move(row));
            }
        }
    }

    if (sys.at_infinity) {
        const SeriesMatrix& c = *sys.at_infinity;
        const auto low = min_valuation(c);
        if (low) {
            // t^d contributes s^(m + D - d) to the expansion at infinity.
            const int first = *low + m + sys.pole_sum - top;
            for (std::size_t k = 0; k < sys.n; ++k) {
                for (int e = first; e < 0; ++e) {
                    std::vector<Scalar> row(unknowns, zero);
                    for (std::size_t j = 0; j < sys.n; ++j) {
                        for (std::size_t d = 0; d < width; ++d) {
                            const int shift = m + sys.pole_sum - static_cast<int>(d);
                            row[j * width + d] = c(k, j).coefficient(e - shift);
                        }
                    }
                    rows.push_back(std::move(row));
                }
            }
        }
    }

    const std::size_t r = rows.empty() ? 0 : rank(std::move(rows));
    return static_cast<int>(unknowns - r);
}

} // namespace

ModificationDatum::ModificationDatum(const Ring& ring, std::size_t n) : ring_(ring), n_(n) { validate(); }

ModificationDatum::ModificationDatum(std::vector<MarkedPoint> points, std::vector<LoopMatrix> loops,
                                     std::optional<LoopMatrix> infinity_loop)
    : points_(std::move(points)), loops_(std::move(loops)), infinity_loop_(std::move(infinity_loop))
{
    const LoopMatrix* any = !loops_.empty() ? &loops_.front() : infinity_loop_ ? &*infinity_loop_ : nullptr;
    if (!any) throw DomainError("datum without loops needs an explicit ring and rank");
    ring_ = any->ring();
    n_ = any->size();
    validate();
}

void ModificationDatum::validate() const
{
    if (n_ == 0) throw DomainError("bundle rank must be positive");
    if (points_.size() != loops_.size()) throw DomainError("one loop per marked point is required");
    for (const auto& l : loops_) {
        require_same_ring(ring_, l.ring());
        if (l.size() != n_) throw DomainError("loops must share one size");
    }
    if (infinity_loop_) {
        require_same_ring(ring_, infinity_loop_->ring());
        if (infinity_loop_->size() != n_) throw DomainError("loops must share one size");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        require_same_ring(ring_, points_[i].r.ring());
        for (std::size_t j = 0; j < i; ++j) {
            if (!(points_[i].r - points_[j].r).is_unit()) {
                throw DomainError("marked points " + points_[j].r.to_string() + " and " + points_[i].r.to_string() +
                                  " do not differ by a unit");
            }
        }
    }
}

std::optional<std::size_t> ModificationDatum::index_of(const Scalar& r) const
{
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].r == r) return i;
    }
    return std::nullopt;
}

int SplittingType::degree() const { return std::accumulate(a.begin(), a.end(), 0); }

bool SplittingType::is_zero() const
{
    return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

std::vector<LaurentSeries> expand_at(const std::vector<RationalFunction>& v, const ModificationDatum& b,
                                     std::size_t i, int relative_precision)
{
    if (i >= b.size()) throw DomainError("point index out of range");
    std::vector<LaurentSeries> out;
    for (const auto& f : v) out.push_back(expand_shift(f, b.points()[i].r, relative_precision));
    return out;
}

LaurentSeries expand_at_infinity(const RationalFunction& f, int relative_precision)
{
    if (f.is_zero()) return LaurentSeries::zero(f.ring());
    auto rev = [](const Polynomial& p) {
        std::vector<Scalar> c(p.coefficients().rbegin(), p.coefficients().rend());
        return Polynomial(p.ring(), std::move(c)).to_series();
    };
    const int shift = f.denominator().degree() - f.numerator().degree();
    return (rev(f.numerator()) * rev(f.denominator()).inverse(relative_precision)).shifted(shift);
}

int h0(const ModificationDatum& b, int m) { return h0_of(build_system(b), m); }

H0Table h0_scan(const ModificationDatum& b)
{
    int p = 0;
    for (const auto& l : b.loops()) p += pole_bound(l);
    if (b.infinity_loop()) p += pole_bound(*b.infinity_loop());
    const int reach = p * static_cast<int>(b.rank()) + 1;

    const GluingSystem sys = build_system(b);
    H0Table table{-reach, {}};
    for (int m = -reach; m <= reach; ++m) table.values.push_back(h0_of(sys, m));
    return table;
}

SplittingType fit_splitting_type(const H0Table& table, std::size_t n)
{
    if (table.values.size() < 2 || table.values.front() != 0) {
        throw InconsistentH0("h0 table does not start at zero");
    }
    // delta(m) = h0(m) - h0(m-1) counts the a_i >= -m.
    SplittingType s;
    int prev = 0;
    for (int m = table.m_min + 1; m <= table.m_max(); ++m) {
        const int delta = table.at(m) - table.at(m - 1);
        if (delta < prev || delta > static_cast<int>(n)) throw InconsistentH0("h0 increments are not monotone");
        s.a.insert(s.a.end(), static_cast<std::size_t>(delta - prev), -m);
        prev = delta;
    }
    if (s.a.size() != n) throw InconsistentH0("h0 increments do not reach the rank");
    for (int m = table.m_min; m <= table.m_max(); ++m) {
        int expected = 0;
        for (int x : s.a) expected += std::max(0, x + m + 1);
        if (expected != table.at(m)) throw InconsistentH0("no splitting type fits the h0 table");
    }
    return s;
}

SplittingType splitting_type(const ModificationDatum& b) { return fit_splitting_type(h0_scan(b), b.rank()); }

bool is_trivial(const ModificationDatum& b) { return splitting_type(b).is_zero(); }

bool is_isomorphic(const ModificationDatum& b1, const ModificationDatum& b2)
{
    require_same_ring(b1.ring(), b2.ring());
    return b1.rank() == b2.rank() && splitting_type(b1) == splitting_type(b2);
}

ModificationDatum modify(const ModificationDatum& b, const MarkedPoint& p, const LoopMatrix& g)
{
    require_same_ring(b.ring(), g.ring());
    if (g.size() != b.rank()) throw DomainError("loops must share one size");
    std::vector<MarkedPoint> points = b.points();
    std::vector<LoopMatrix> loops = b.loops();
    if (auto i = b.index_of(p.r)) {
        loops[*i] = mat_mul(loops[*i], g);
    } else {
        points.push_back(p);
        loops.push_back(g);
    }
    return ModificationDatum(std::move(points), std::move(loops), b.infinity_loop());
}

ModificationDatum retrivialize(const ModificationDatum& b, const std::vector<std::vector<RationalFunction>>& g,
                               int relative_precision)
{
    const std::size_t n = b.rank();
    if (g.size() != n || std::any_of(g.begin(), g.end(), [&](const auto& row) { return row.size() != n; })) {
        throw DomainError("gauge matrix has the wrong size");
    }
    for (const auto& row : g) {
        for (const auto& f : row) {
            require_same_ring(b.ring(), f.ring());
            if (!supported_on(f.denominator(), b.points())) {
                throw DomainError("gauge entry has a pole away from the marked points");
            }
        }
    }
    const RationalFunction det = det_rational(g);
    if (det.is_zero()) throw SingularToPrecision("gauge matrix is singular");
    const Polynomial num = strip_roots(det.numerator(), b.points());
    const Polynomial den = strip_roots(det.denominator(), b.points());
    if (num.degree() != den.degree() ||
        !(num * Polynomial::constant(den.coefficients().back()) == den * Polynomial::constant(num.coefficients().back()))) {
        throw DomainError("gauge determinant vanishes away from the marked points");
    }

    auto expand = [&](auto&& f) {
        std::vector<LaurentSeries> e;
        for (const auto& row : g) {
            for (const auto& x : row) e.push_back(f(x));
        }
        return SeriesMatrix(b.ring(), n, n, std::move(e));
    };

    std::vector<LoopMatrix> loops;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const Scalar& r = b.points()[i].r;
        const SeriesMatrix gi = expand([&](const RationalFunction& f) { return expand_shift(f, r, relative_precision); });
        loops.emplace_back(gi * b.loops()[i].entries());
    }
    const SeriesMatrix ginf =
        expand([&](const RationalFunction& f) { return expand_at_infinity(f, relative_precision); });
    LoopMatrix inf(b.infinity_loop() ? ginf * b.infinity_loop()->entries() : ginf);
    return ModificationDatum(b.points(), std::move(loops), std::move(inf));
}

std::vector<Cocharacter> strata_of(const ModificationDatum& b, int working_precision)
{
    std::vector<Cocharacter> out;
    auto one = [&](const LoopMatrix& l) {
        out.push_back(with_precision_retry([&](int p) { return stratum(l, p); }, working_precision));
    };
    for (const auto& l : b.loops()) one(l);
    if (b.infinity_loop()) one(*b.infinity_loop());
    return out;
}

bool all_strata_zero(const ModificationDatum& b, int working_precision)
{
    const auto s = strata_of(b, working_precision);
    return std::all_of(s.begin(), s.end(), [](const Cocharacter& c) { return c.is_zero(); });
}

} // namespace loopgr
