#include <doctest.h>

#include "helpers.hpp"
#include "loopgr/errors.hpp"

using namespace testing;

namespace {

const LaurentSeries Z = LaurentSeries::zero(Q);

LoopMatrix diag(int a, int b) { return LoopMatrix::monomial(Q, {a, b}); }

} // namespace

TEST_CASE("mat_mul")
{
    const LoopMatrix a = loop({{cst(1), tp(-1)}, {Z, cst(1)}});
    CHECK(mat_mul(LoopMatrix::identity(Q, 2), a).entries() == a.entries());
    CHECK(mat_mul(diag(1, -1), diag(-1, 1)).entries() == SeriesMatrix::identity(Q, 2));

    const LoopMatrix b = loop({{cst(1), Z}, {tp(1), cst(1)}});
    CHECK(mat_mul(a, b).entries() == mat({{cst(2), tp(-1)}, {tp(1), cst(1)}}));

    CHECK_THROWS_AS(mat_mul(a, LoopMatrix::identity(Q, 3)), DomainError);
    CHECK_THROWS_AS(mat_mul(a, LoopMatrix::identity(Ring::prime_field(3), 2)), BackendMismatch);
}

TEST_CASE("mat_inverse")
{
    CHECK(mat_inverse(LoopMatrix::identity(Q, 3)).entries() == SeriesMatrix::identity(Q, 3));
    CHECK(mat_inverse(diag(2, -2)).entries() == diag(-2, 2).entries());

    const LoopMatrix u = loop({{cst(1), tp(-1)}, {Z, cst(1)}});
    const LoopMatrix inv = mat_inverse(u);
    CHECK(inv.entries() == mat({{cst(1), -tp(-1)}, {Z, cst(1)}}));
    CHECK(mat_mul(u, inv).entries() == SeriesMatrix::identity(Q, 2));
    CHECK(mat_mul(inv, u).entries() == SeriesMatrix::identity(Q, 2));

    CHECK_THROWS_AS(loop({{cst(1), cst(1)}, {cst(1), cst(1)}}), SingularToPrecision);
    CHECK_THROWS_AS(loop({{series({{3, "1"}}, 5), Z}, {Z, LaurentSeries::zero(Q, 2)}}), SingularToPrecision);
    CHECK_THROWS_AS(LoopMatrix(diag(1, 0).entries(), Group::SL), DomainError);
    CHECK_NOTHROW(LoopMatrix(diag(1, -1).entries(), Group::SL));
}

TEST_CASE("adjugate and elimination inverses agree")
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const LoopMatrix a = random_loop(Q, 3, 2, seed).loop;
        const SeriesMatrix adj = detail::inverse_by_adjugate(a.entries(), a.determinant());
        const SeriesMatrix elim = detail::inverse_by_elimination(a.entries());
        CHECK(approx_equal(adj, elim));
        CHECK(approx_equal(a.entries() * elim, SeriesMatrix::identity(Q, 3)));
    }
    for (std::size_t n : {4u, 5u}) {
        const LoopMatrix a = random_loop(Q, n, 1, 17 + n).loop;
        const LoopMatrix inv = mat_inverse(a);
        CHECK(approx_equal(mat_mul(a, inv).entries(), SeriesMatrix::identity(Q, n)));
        CHECK(approx_equal(mat_mul(inv, a).entries(), SeriesMatrix::identity(Q, n)));
    }
}

TEST_CASE("pole_bound")
{
    CHECK(pole_bound(LoopMatrix::identity(Q, 2)) == 0);
    CHECK(pole_bound(diag(-3, 3)) == 3);
    CHECK(pole_bound(loop({{cst(1), tp(-1)}, {Z, cst(1)}})) == 1);
    // Pole only in the inverse.
    CHECK(pole_bound(diag(2, 0)) == 2);
}

TEST_CASE("is_positive")
{
    CHECK(is_positive(LoopMatrix::identity(Q, 2)));
    CHECK_FALSE(is_positive(diag(1, -1)));
    CHECK(is_positive(loop({{cst(1), tp(1)}, {tp(2), cst(1)}})));
    // No poles but singular constant term.
    CHECK_FALSE(is_positive(diag(1, 0)));
    CHECK_THROWS_AS(is_positive(loop({{cst(1), LaurentSeries::zero(Q, 0)}, {Z, cst(1)}})), InsufficientPrecision);

    // Artinian base: residue test on the constant-term determinant.
    const Ring art = Ring::artinian(Q, 2);
    const Scalar x = Scalar::from_coefficients(art, {sc("0"), sc("1")});
    const LaurentSeries one = cst(1, art);
    const LaurentSeries xs = LaurentSeries::constant(x);
    CHECK(is_positive(loop({{one + xs, xs}, {xs, one}})));
    CHECK_FALSE(is_positive(LoopMatrix::monomial(art, {1, -1})));
}

TEST_CASE("random generators")
{
    for (std::uint64_t s = 0; s < 50; ++s) {
        CHECK(is_positive(random_positive(Q, 2, s)));
        CHECK(is_positive(random_positive(Ring::prime_field(3), 3, s, Group::SL)));
        CHECK(is_positive(random_loop(Q, 2, 0, s).loop));
        const GeneratedLoop g = random_loop(Q, 3, 2, s);
        CHECK(pole_bound(g.loop) <= 2);
        CHECK(pole_bound(g.loop) <= 4);
        const GeneratedLoop sl = random_loop(Q, 2, 2, s, Group::SL);
        CHECK(sl.loop.group() == Group::SL);
        CHECK(sl.lambda[0] + sl.lambda[1] == 0);
    }
    // Deterministic per seed.
    CHECK(random_loop(Q, 3, 2, 9).loop.entries() == random_loop(Q, 3, 2, 9).loop.entries());
    CHECK_FALSE(random_loop(Q, 3, 2, 9).loop.entries() == random_loop(Q, 3, 2, 10).loop.entries());
}

TEST_CASE("loop group laws on random samples")
{
    for (std::size_t n : {1u, 2u, 3u}) {
        CAPTURE(n);
        for (std::uint64_t s = 0; s < 200; ++s) {
            const LoopMatrix a = random_loop(Q, n, 2, 3 * s).loop;
            const LoopMatrix b = random_loop(Q, n, 2, 3 * s + 1).loop;
            const LoopMatrix c = random_loop(Q, n, 1, 3 * s + 2).loop;
            CHECK(approx_equal(mat_mul(mat_mul(a, b), c), mat_mul(a, mat_mul(b, c))));
            CHECK(approx_equal(mat_mul(a, a.inverse()).entries(), SeriesMatrix::identity(Q, n)));
            CHECK(pole_bound(mat_mul(a, b)) <= pole_bound(a) + pole_bound(b));
            CHECK(*mat_mul(a, b).determinant().valuation() == *a.determinant().valuation() + *b.determinant().valuation());

            const LoopMatrix p = random_positive(Q, n, 5 * s);
            const LoopMatrix q = random_positive(Q, n, 5 * s + 1);
            CHECK(is_positive(mat_mul(p, q)));
        }
    }
}
