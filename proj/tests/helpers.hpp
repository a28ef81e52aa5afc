#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "loopgr/loops.hpp"
#include "loopgr/series.hpp"

namespace testing {

using namespace loopgr;

inline const Ring Q = Ring::rationals();

inline Scalar sc(const std::string& text, const Ring& ring = Q) { return Scalar::parse(ring, text); }

// series({{-1, "1"}, {2, "3/4"}}, prec) = t^-1 + 3/4 t^2 + O(t^prec)
inline LaurentSeries series(std::initializer_list<std::pair<int, const char*>> terms, int prec = kExact,
                            const Ring& ring = Q)
{
    LaurentSeries s = LaurentSeries::zero(ring, prec);
    for (const auto& [e, c] : terms) s += LaurentSeries::monomial(Scalar::parse(ring, c), e);
    return s.truncated(prec);
}

inline LaurentSeries tp(int k, const Ring& ring = Q) { return LaurentSeries::monomial(Scalar::one(ring), k); }
inline LaurentSeries cst(long c, const Ring& ring = Q) { return LaurentSeries::constant(Scalar::from_int(ring, c)); }

inline SeriesMatrix mat(const std::vector<std::vector<LaurentSeries>>& rows)
{
    const Ring ring = rows.front().front().ring();
    std::vector<LaurentSeries> e;
    for (const auto& r : rows) e.insert(e.end(), r.begin(), r.end());
    return SeriesMatrix(ring, rows.size(), rows.front().size(), std::move(e));
}

inline LoopMatrix loop(const std::vector<std::vector<LaurentSeries>>& rows, Group g = Group::GL)
{
    return LoopMatrix(mat(rows), g);
}

// E_ij(f) in GL(2), 1-based positions as in the usual notation.
inline LoopMatrix e12(const LaurentSeries& f)
{
    const Ring& r = f.ring();
    return loop({{cst(1, r), f}, {LaurentSeries::zero(r), cst(1, r)}}, Group::SL);
}

inline LoopMatrix e21(const LaurentSeries& f)
{
    const Ring& r = f.ring();
    return loop({{cst(1, r), LaurentSeries::zero(r)}, {f, cst(1, r)}}, Group::SL);
}

} // namespace testing
