#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "loopgr/errors.hpp"
#include "loopgr/loops.hpp"

namespace loopgr {

// A dominant cocharacter of the diagonal torus: a non-increasing integer
// tuple, the chosen representative of its S_n-orbit.
class Cocharacter {
public:
    Cocharacter() = default;
    // Throws DomainError unless `lambda` is non-increasing.
    explicit Cocharacter(std::vector<int> lambda);
    // Sorts an arbitrary tuple into its dominant representative.
    static Cocharacter dominant(std::vector<int> tuple);

    const std::vector<int>& values() const { return lambda_; }
    std::size_t size() const { return lambda_.size(); }
    int sum() const;
    bool is_zero() const;

    // The image under the outer automorphism g -> (g^T)^{-1}: reverse(-lambda).
    Cocharacter dual() const;

    friend bool operator==(const Cocharacter&, const Cocharacter&) = default;
    friend auto operator<=>(const Cocharacter&, const Cocharacter&) = default;

private:
    std::vector<int> lambda_;
};

std::ostream& operator<<(std::ostream& os, const Cocharacter& c);

// A stratum up to the outer automorphism: the set {lambda, dual(lambda)},
// stored in decreasing lexicographic order.
struct CoarseStratum {
    std::vector<Cocharacter> orbit;

    static CoarseStratum of(const Cocharacter& lambda);
    // Lexicographically largest member, used when one representative is needed.
    const Cocharacter& canonical() const { return orbit.front(); }

    friend bool operator==(const CoarseStratum&, const CoarseStratum&) = default;
};

// Multiplicities of the distinct values of lambda, in order; the type of the
// parabolic subgroup stabilizing t^lambda.
struct ParabolicType {
    std::vector<int> blocks;

    // A proper parabolic has more than one block.
    bool is_proper() const { return blocks.size() > 1; }
    friend bool operator==(const ParabolicType&, const ParabolicType&) = default;
};

// a = u * t^lambda * v with u, v positive.
struct CartanFactorization {
    LoopMatrix u;
    Cocharacter lambda;
    LoopMatrix v;

    SeriesMatrix product() const;
};

// Smith normal form over A[[t]] (A a field, or an Artinian ring whose pivots
// stay units). Pivots are chosen by minimal valuation, ties by smallest row
// then column. Exact non-monomial pivots are inverted with
// `working_precision` known coefficients.
//
// Throws InsufficientPrecision when a pivot or the reconstruction cannot be
// certified, SingularToPrecision when a remaining block vanishes identically.
CartanFactorization smith_normal_form(const LoopMatrix& a, int working_precision = kDefaultPrecision);

Cocharacter stratum(const LoopMatrix& a, int working_precision = kDefaultPrecision);
CoarseStratum coarse_stratum(const LoopMatrix& a, int working_precision = kDefaultPrecision);
ParabolicType parabolic_type(const Cocharacter& lambda);

// Retries `fn(precision)` with doubled precision on InsufficientPrecision,
// up to kMaxPrecision.
template <class Fn>
auto with_precision_retry(Fn&& fn, int precision = kDefaultPrecision)
{
    for (;;) {
        try {
            return fn(precision);
        } catch (const InsufficientPrecision&) {
            if (precision >= kMaxPrecision) throw;
            precision = std::min(kMaxPrecision, 2 * precision);
        }
    }
}

} // namespace loopgr
