#include "loopgr/factorization.hpp"

#include <random>

namespace loopgr {

namespace {

void normalize(std::vector<ElementaryFactor>& factors)
{
    std::vector<ElementaryFactor> out;
    for (auto& f : factors) {
        if (!out.empty() && out.back().i == f.i && out.back().j == f.j) {
            out.back().param += f.param;
        } else {
            out.push_back(std::move(f));
        }
        if (out.back().param.is_exact_zero()) out.pop_back();
    }
    factors = std::move(out);
}

std::vector<ElementaryFactor> factor_sl2(const SeriesMatrix& m, int working_precision, bool shifted)
{
    const Ring& ring = m.ring();
    const LaurentSeries one = LaurentSeries::constant(Scalar::one(ring));
    const LaurentSeries& a = m(0, 0);
    const LaurentSeries& c = m(1, 0);
    const LaurentSeries& d = m(1, 1);

    if (c.valuation()) {
        const LaurentSeries c_inv = c.inverse(working_precision);
        return {{0, 1, (a - one) * c_inv}, {1, 0, c}, {0, 1, (d - one) * c_inv}};
    }
    if (shifted) throw InsufficientPrecision("no (2,1) entry with known valuation", 2 * working_precision);
    // Both the (1,2)-unit case and the diagonal case go through E21(1) M,
    // whose (2,1) entry a + c has the valuation of a.
    const SeriesMatrix e21 = ElementaryFactor{1, 0, one}.matrix(2);
    std::vector<ElementaryFactor> rest = factor_sl2(e21 * m, working_precision, true);
    rest.insert(rest.begin(), ElementaryFactor{1, 0, -one});
    return rest;
}

} // namespace

SeriesMatrix ElementaryFactor::matrix(std::size_t n) const
{
    SeriesMatrix e = SeriesMatrix::identity(param.ring(), n);
    e(i, j) = param;
    return e;
}

SeriesMatrix Factorization::product() const
{
    SeriesMatrix p = gamma.entries();
    for (const auto& f : factors) p = p * f.matrix(n);
    return p;
}

Factorization factor_elementary(const LoopMatrix& m, int working_precision)
{
    const Ring& ring = m.ring();
    if (m.size() > 2) throw NotImplemented("elementary factorization is implemented for SL(2) only");
    if (m.size() != 2) throw DomainError("elementary factorization needs a 2 x 2 loop");
    if (!ring.is_field()) throw DomainError("elementary factorization needs a field backend");
    if (!approx_equal(m.determinant(), LaurentSeries::constant(Scalar::one(ring)))) {
        throw DomainError("loop determinant is not 1");
    }

    Factorization f{ring, 2, LoopMatrix::identity(ring, 2, Group::SL), factor_sl2(m.entries(), working_precision, false)};
    normalize(f.factors);
    if (f.factors.size() > kMaxFactors) throw DomainError("factor count exceeds the bound");
    if (!approx_equal(f.product(), m.entries())) {
        throw InsufficientPrecision("factorization does not reconstruct the loop", 2 * working_precision);
    }
    return f;
}

Factorization lift_factorization(const Factorization& f, const Ring& artinian,
                                 const std::vector<std::optional<LaurentSeries>>& perturbations)
{
    if (artinian.kind != RingKind::artinian) throw DomainError("lift target must be an Artinian ring");
    require_same_ring(f.ring, artinian.residue_field());
    if (perturbations.size() > f.factors.size()) throw DomainError("more perturbations than factors");

    Factorization out{artinian, f.n, lift_to(f.gamma, artinian), {}};
    for (std::size_t k = 0; k < f.factors.size(); ++k) {
        ElementaryFactor e = f.factors[k];
        e.param = e.param.lift_to(artinian);
        if (k < perturbations.size() && perturbations[k]) {
            const LaurentSeries& p = *perturbations[k];
            require_same_ring(artinian, p.ring());
            if (!p.residue().is_zero_to_precision()) {
                throw DomainError("perturbation does not lie in the maximal ideal");
            }
            e.param += p;
        }
        out.factors.push_back(std::move(e));
    }
    return out;
}

Factorization reduce(const Factorization& f)
{
    Factorization out{f.ring.residue_field(), f.n, residue(f.gamma), {}};
    for (const auto& e : f.factors) out.factors.push_back({e.i, e.j, e.param.residue()});
    return out;
}

ModificationDatum reduce(const ModificationDatum& b)
{
    std::vector<MarkedPoint> points;
    for (const auto& p : b.points()) points.push_back({p.r.residue()});
    std::vector<LoopMatrix> loops;
    for (const auto& l : b.loops()) loops.push_back(residue(l));
    std::optional<LoopMatrix> inf;
    if (b.infinity_loop()) inf = residue(*b.infinity_loop());
    if (loops.empty() && !inf) return ModificationDatum(b.ring().residue_field(), b.rank());
    return ModificationDatum(std::move(points), std::move(loops), std::move(inf));
}

std::vector<std::optional<LaurentSeries>> random_perturbations(const Factorization& f, const Ring& artinian,
                                                              std::uint64_t seed)
{
    if (artinian.kind != RingKind::artinian) throw DomainError("lift target must be an Artinian ring");
    std::mt19937_64 rng(seed);
    std::vector<std::optional<LaurentSeries>> out;
    const auto top = static_cast<std::uint64_t>(std::max(1, artinian.nilpotency - 1));
    for (std::size_t k = 0; k < f.factors.size(); ++k) {
        // c x^e t^k with e >= 1
        const int e = 1 + static_cast<int>(rng() % top);
        std::vector<Scalar> coeffs(static_cast<std::size_t>(e) + 1, Scalar::zero(f.ring));
        coeffs.back() = Scalar::from_int(f.ring, 1 + static_cast<long>(rng() % 3));
        const Scalar x = Scalar::from_coefficients(artinian, coeffs);
        out.emplace_back(LaurentSeries::monomial(x, static_cast<int>(rng() % 5) - 2));
    }
    return out;
}

ModificationDatum extend_point(const ModificationDatum& b, const Ring& artinian, std::optional<std::uint64_t> seed,
                               int working_precision)
{
    if (b.rank() != 2) throw NotImplemented("point extension is implemented for SL(2) only");
    std::uint64_t next = seed.value_or(0);

    auto lift_loop = [&](const LoopMatrix& l) {
        const Factorization f = with_precision_retry(
            [&](int p) { return factor_elementary(l, p); }, working_precision);
        std::vector<std::optional<LaurentSeries>> perturb;
        if (seed) perturb = random_perturbations(f, artinian, next++);
        return LoopMatrix(lift_factorization(f, artinian, perturb).product(), Group::SL);
    };

    std::vector<MarkedPoint> points;
    for (const auto& p : b.points()) points.push_back({p.r.lift_to(artinian)});
    std::vector<LoopMatrix> loops;
    for (const auto& l : b.loops()) loops.push_back(lift_loop(l));
    std::optional<LoopMatrix> inf;
    if (b.infinity_loop()) inf = lift_loop(*b.infinity_loop());
    if (loops.empty() && !inf) return ModificationDatum(artinian, b.rank());
    return ModificationDatum(std::move(points), std::move(loops), std::move(inf));
}

} // namespace loopgr
