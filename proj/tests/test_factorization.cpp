#include <doctest.h>

#include "helpers.hpp"
#include "loopgr/factorization.hpp"

using namespace testing;

namespace {

const LaurentSeries Z = LaurentSeries::zero(Q);
const Ring A2 = Ring::artinian(Q, 2);
const Ring A3 = Ring::artinian(Q, 3);

LaurentSeries xt(int k, const Ring& ring)
{
    return LaurentSeries::monomial(Scalar::from_coefficients(ring, {sc("0"), sc("1")}), k);
}

void check_unipotent(const Factorization& f)
{
    for (const auto& e : f.factors) {
        const SeriesMatrix m = e.matrix(2);
        CHECK(determinant(m) == cst(1, f.ring));
        CHECK(m(0, 0) + m(1, 1) == cst(2, f.ring));
    }
}

bool same_factors(const Factorization& a, const Factorization& b)
{
    if (a.factors.size() != b.factors.size()) return false;
    for (std::size_t k = 0; k < a.factors.size(); ++k) {
        const auto& x = a.factors[k];
        const auto& y = b.factors[k];
        if (x.i != y.i || x.j != y.j || !(x.param == y.param)) return false;
    }
    return true;
}

} // namespace

TEST_CASE("factor_elementary examples")
{
    const Factorization single = factor_elementary(e12(tp(-3)));
    REQUIRE(single.factors.size() == 1);
    CHECK(single.factors[0].i == 0);
    CHECK(single.factors[0].j == 1);
    CHECK(single.factors[0].param == tp(-3));

    const LoopMatrix rot = loop({{Z, cst(1)}, {cst(-1), Z}}, Group::SL);
    const Factorization r = factor_elementary(rot);
    REQUIRE(r.factors.size() == 3);
    CHECK(r.factors[0].param == cst(1));
    CHECK(r.factors[1].is_upper() == false);
    CHECK(r.factors[1].param == cst(-1));
    CHECK(r.factors[2].param == cst(1));
    CHECK(r.product() == rot.entries());

    // diag(u, u^-1), u = 1 + t: E21(-1) E12((u-1)/u) E21(u) E12((u^-1 - 1)/u).
    const LaurentSeries u = series({{0, "1"}, {1, "1"}});
    const LoopMatrix dg = loop({{u, Z}, {Z, u.inverse(20)}}, Group::SL);
    const Factorization f = factor_elementary(dg);
    CHECK(f.factors.size() == 4);
    CHECK(f.factors.size() <= kMaxFactors);
    CHECK(approx_equal(f.product(), dg.entries()));
    check_unipotent(f);

    CHECK(factor_elementary(LoopMatrix::identity(Q, 2)).factors.empty());
}

TEST_CASE("factor_elementary errors")
{
    CHECK_THROWS_AS(factor_elementary(LoopMatrix::identity(Q, 3)), NotImplemented);
    CHECK_THROWS_AS(factor_elementary(LoopMatrix::monomial(Q, {1, 0})), DomainError);
    CHECK_THROWS_AS(factor_elementary(LoopMatrix::identity(A2, 2)), DomainError);
}

TEST_CASE("lift_factorization")
{
    const Factorization f = factor_elementary(e12(tp(-1)));
    const Factorization lifted = lift_factorization(f, A2);
    REQUIRE(lifted.factors.size() == 1);
    CHECK(lifted.factors[0].param == tp(-1, A2));
    CHECK(same_factors(reduce(lifted), f));

    const Factorization perturbed = lift_factorization(f, A2, {xt(-2, A2)});
    CHECK_FALSE(perturbed.factors[0].param == tp(-1, A2));
    CHECK(same_factors(reduce(perturbed), f));

    CHECK_THROWS_AS(lift_factorization(f, A2, {tp(0, A2)}), DomainError);
    CHECK_THROWS_AS(lift_factorization(f, Q), DomainError);

    const LoopMatrix rot = loop({{Z, cst(1)}, {cst(-1), Z}}, Group::SL);
    const Factorization r = factor_elementary(rot);
    const SeriesMatrix up = lift_factorization(r, A3, {std::nullopt, xt(1, A3)}).product();
    CHECK(residue(up) == rot.entries());
    CHECK(determinant(up) == cst(1, A3));
}

TEST_CASE("extend_point examples")
{
    const ModificationDatum id({{sc("0")}}, {LoopMatrix::identity(Q, 2, Group::SL)});
    const ModificationDatum lifted = extend_point(id, A2);
    CHECK(lifted.ring() == A2);
    CHECK(lifted.loops()[0].entries() == SeriesMatrix::identity(A2, 2));

    const ModificationDatum d({{sc("0")}}, {LoopMatrix::monomial(Q, {1, -1})});
    const ModificationDatum dl = extend_point(d, A2);
    CHECK(stratum(residue(dl.loops()[0])) == Cocharacter({1, -1}));

    const ModificationDatum u({{sc("0")}}, {e12(tp(-1))});
    const ModificationDatum ul = extend_point(u, A2, 7);
    const ModificationDatum back = reduce(ul);
    CHECK(back.points()[0].r == sc("0"));
    CHECK(back.loops()[0].entries() == u.loops()[0].entries());
    CHECK_FALSE(ul.loops()[0].entries() == lift_to(u.loops()[0], A2).entries());
}

TEST_CASE("factorization properties on random SL(2) loops")
{
    for (std::uint64_t s = 0; s < 200; ++s) {
        CAPTURE(s);
        const LoopMatrix m = random_loop(Q, 2, 2, s, Group::SL).loop;
        const Factorization f = factor_elementary(m);
        CHECK(f.factors.size() <= kMaxFactors);
        CHECK(approx_equal(f.product(), m.entries()));
        check_unipotent(f);
        CHECK(same_factors(reduce(lift_factorization(f, A3)), f));
        if (!f.factors.empty()) {
            CHECK(same_factors(reduce(lift_factorization(f, A3, {xt(static_cast<int>(s % 5) - 2, A3)})), f));
        }
    }
    const Ring f3 = Ring::prime_field(3);
    for (std::uint64_t s = 0; s < 50; ++s) {
        const LoopMatrix m = random_loop(f3, 2, 2, s, Group::SL).loop;
        CHECK(approx_equal(factor_elementary(m).product(), m.entries()));
    }
}

TEST_CASE("surjectivity witness")
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        const ModificationDatum b({{Scalar::from_int(Q, static_cast<long>(s % 5))}},
                                  {random_loop(Q, 2, 2, 1000 + s, Group::SL).loop});
        const ModificationDatum up = extend_point(b, A3, s);
        const ModificationDatum back = reduce(up);
        CHECK(back.points()[0].r == b.points()[0].r);
        CHECK(approx_equal(back.loops()[0], b.loops()[0]));
    }
}
