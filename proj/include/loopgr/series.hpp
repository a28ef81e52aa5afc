#pragma once

#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "loopgr/scalar.hpp"

namespace loopgr {

// Absolute precision of an exact (finitely supported) series.
inline constexpr int kExact = std::numeric_limits<int>::max();
// Relative precision used whenever an exact series has to be truncated.
inline constexpr int kDefaultPrecision = 16;
inline constexpr int kMaxPrecision = 4096;

// A truncated formal Laurent series over one of the exact coefficient rings.
//
// The value is  sum_{k >= start} c_k t^k + O(t^P)  where P is the absolute
// precision; P == kExact marks a Laurent polynomial known exactly. Stored
// coefficients are trimmed so that the first and last stored entries are
// nonzero and every stored exponent is below P.
//
// The valuation is the exponent of the first nonzero coefficient. It is
// unknown (nullopt) when every known coefficient vanishes. Over an Artinian
// ring the leading coefficient can be nilpotent; such series are not
// invertible here.
class LaurentSeries {
public:
    LaurentSeries() = default; // exact rational zero

    static LaurentSeries zero(const Ring& ring, int absolute_precision = kExact);
    static LaurentSeries constant(const Scalar& c);
    static LaurentSeries monomial(const Scalar& c, int exponent);
    // c_0 t^start + c_1 t^(start+1) + ... + O(t^absolute_precision)
    static LaurentSeries from_coefficients(const Ring& ring, int start, std::vector<Scalar> coefficients,
                                           int absolute_precision = kExact);

    const Ring& ring() const { return ring_; }

    std::optional<int> valuation() const;
    int absolute_precision() const { return precision_; }
    // Number of known coefficients from the valuation on; nullopt when exact
    // or when the valuation is unknown.
    std::optional<int> relative_precision() const;
    bool is_exact() const { return precision_ == kExact; }
    bool is_exact_zero() const { return is_exact() && coeffs_.empty(); }
    // True when every known coefficient vanishes (exact zero included).
    bool is_zero_to_precision() const { return coeffs_.empty(); }
    bool is_monomial() const { return is_exact() && coeffs_.size() == 1; }

    // Coefficient of t^k; throws InsufficientPrecision above the window.
    Scalar coefficient(int k) const;
    Scalar leading_coefficient() const;
    // Lowest and one-past-highest stored exponents (stored range may be empty).
    int support_begin() const { return start_; }
    int support_end() const { return start_ + static_cast<int>(coeffs_.size()); }
    // Lower bound for the exponent of any possibly nonzero term.
    int order_lower_bound() const;

    // Unit of A((t)) in the sense used here: known valuation and unit leading
    // coefficient.
    bool is_unit() const;

    LaurentSeries truncated(int absolute_precision) const;
    LaurentSeries shifted(int k) const; // multiplication by t^k
    LaurentSeries scaled(const Scalar& c) const;

    // Inverse of a unit series. Exact monomials invert exactly; other exact
    // series are truncated to `relative_precision` known coefficients;
    // inexact series keep their own relative precision.
    LaurentSeries inverse(int relative_precision = kDefaultPrecision) const;

    LaurentSeries operator-() const;
    LaurentSeries& operator+=(const LaurentSeries& rhs);
    LaurentSeries& operator-=(const LaurentSeries& rhs);

    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);

    // Structural equality: same ring, precision and coefficients.
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);

    // Maps every coefficient to the residue field / lifts it into `artinian`.
    LaurentSeries residue() const;
    LaurentSeries lift_to(const Ring& artinian) const;

    std::string to_string() const;

private:
    void normalize();

    Ring ring_;
    int start_ = 0;
    std::vector<Scalar> coeffs_;
    int precision_ = kExact;
};

std::ostream& operator<<(std::ostream& os, const LaurentSeries& s);

// a and b agree on the window where both are known.
bool approx_equal(const LaurentSeries& a, const LaurentSeries& b);

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries invert(const LaurentSeries& a, int relative_precision = kDefaultPrecision);
std::optional<int> valuation(const LaurentSeries& a);

// Dense polynomial in t with coefficients in a ring.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(const Ring& ring) : ring_(ring) {}
    Polynomial(const Ring& ring, std::vector<Scalar> coefficients);

    static Polynomial constant(const Scalar& c);
    static Polynomial monomial(const Scalar& c, int degree);
    // t - r
    static Polynomial linear(const Scalar& r);

    const Ring& ring() const { return ring_; }
    const std::vector<Scalar>& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Scalar coefficient(int k) const;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const;
    Polynomial pow(int k) const;

    // p(t + r)
    Polynomial taylor_shift(const Scalar& r) const;
    Scalar evaluate(const Scalar& x) const;
    LaurentSeries to_series() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void normalize();

    Ring ring_;
    std::vector<Scalar> coeffs_;
};

// num / den with den != 0, kept exact. Not reduced to lowest terms.
class RationalFunction {
public:
    RationalFunction() : RationalFunction(Polynomial(Ring::rationals())) {}
    explicit RationalFunction(Polynomial num);
    RationalFunction(Polynomial num, Polynomial den);

    const Ring& ring() const { return num_.ring(); }
    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFunction operator-() const { return {-num_, den_}; }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    RationalFunction inverse() const;
    RationalFunction pow(int k) const;

    std::string to_string() const;

private:
    Polynomial num_;
    Polynomial den_;
};

// Expands f(t + r) as a Laurent series at t = 0 with `relative_precision`
// known coefficients. Exact whenever the shifted denominator is a monomial.
LaurentSeries expand_shift(const RationalFunction& f, const Scalar& r,
                           int relative_precision = kDefaultPrecision);

// Substitutes t = phi(s) into a, where phi has valuation exactly 1. The result
// is a series in s.
LaurentSeries substitute(const LaurentSeries& a, const LaurentSeries& phi,
                         int relative_precision = kDefaultPrecision);

} // namespace loopgr
