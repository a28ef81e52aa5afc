#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "loopgr/loops.hpp"
#include "loopgr/p1bundles.hpp"

namespace loopgr {

// E_ij(param): the identity plus `param` at (i, j), i != j, 0-based.
struct ElementaryFactor {
    std::size_t i = 0;
    std::size_t j = 1;
    LaurentSeries param;

    SeriesMatrix matrix(std::size_t n) const;
    bool is_upper() const { return i < j; }
};

// gamma * factors[0] * factors[1] * ...
struct Factorization {
    Ring ring;
    std::size_t n = 2;
    LoopMatrix gamma;
    std::vector<ElementaryFactor> factors;

    SeriesMatrix product() const;
};

inline constexpr std::size_t kMaxFactors = 8;

// Writes an SL(2) loop over a field as at most kMaxFactors elementary
// matrices, gamma = I. Uses M = E12((a-1)/c) E21(c) E12((d-1)/c) when the
// (2,1) entry c has known valuation, and M = E21(-1) * factor(E21(1) M)
// otherwise. Adjacent factors at the same position are merged and exact
// zero parameters dropped.
//
// Throws NotImplemented for n > 2, DomainError off a field or when det != 1.
Factorization factor_elementary(const LoopMatrix& m, int working_precision = kDefaultPrecision);

// Constant lift of every parameter into `artinian`; perturbations[k], when
// present, is added to factor k and must reduce to zero.
Factorization lift_factorization(const Factorization& f, const Ring& artinian,
                                 const std::vector<std::optional<LaurentSeries>>& perturbations = {});

// One perturbation c x^e t^k per factor, e >= 1, drawn from `seed`.
std::vector<std::optional<LaurentSeries>> random_perturbations(const Factorization& f, const Ring& artinian,
                                                              std::uint64_t seed);

// Coefficientwise image in the residue field.
Factorization reduce(const Factorization& f);
ModificationDatum reduce(const ModificationDatum& b);

// Lifts a datum of SL(2) loops over k to `artinian` by factoring, lifting
// and multiplying out each loop. With a seed, every factor gets a random
// perturbation in the maximal ideal.
ModificationDatum extend_point(const ModificationDatum& b, const Ring& artinian,
                               std::optional<std::uint64_t> seed = std::nullopt,
                               int working_precision = kDefaultPrecision);

} // namespace loopgr
