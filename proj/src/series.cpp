#include "loopgr/series.hpp"

#include <algorithm>
#include <sstream>

#include "loopgr/errors.hpp"

namespace loopgr {

namespace {

// a + b on absolute precisions, saturating at kExact.
int add_precision(long a, long b)
{
    if (a == kExact || b == kExact) return kExact;
    long s = a + b;
    if (s >= kExact) return kExact - 1;
    if (s <= -kExact) return -kExact + 1;
    return static_cast<int>(s);
}

int retry_hint(int current)
{
    return std::min(kMaxPrecision, 2 * std::max(current, kDefaultPrecision));
}

} // namespace

LaurentSeries LaurentSeries::zero(const Ring& ring, int absolute_precision)
{
    LaurentSeries s;
    s.ring_ = ring;
    s.precision_ = absolute_precision;
    return s;
}

LaurentSeries LaurentSeries::constant(const Scalar& c) { return monomial(c, 0); }

LaurentSeries LaurentSeries::monomial(const Scalar& c, int exponent)
{
    return from_coefficients(c.ring(), exponent, {c});
}

LaurentSeries LaurentSeries::from_coefficients(const Ring& ring, int start, std::vector<Scalar> coefficients,
                                               int absolute_precision)
{
    LaurentSeries s;
    s.ring_ = ring;
    s.start_ = start;
    for (const auto& c : coefficients) require_same_ring(c.ring(), ring);
    s.coeffs_ = std::move(coefficients);
    s.precision_ = absolute_precision;
    s.normalize();
    return s;
}

void LaurentSeries::normalize()
{
    if (precision_ != kExact) {
        long keep = static_cast<long>(precision_) - start_;
        if (keep < static_cast<long>(coeffs_.size())) coeffs_.resize(static_cast<std::size_t>(std::max(0L, keep)));
    }
    auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return !c.is_zero(); });
    start_ += static_cast<int>(first - coeffs_.begin());
    coeffs_.erase(coeffs_.begin(), first);
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.empty()) start_ = 0;
}

std::optional<int> LaurentSeries::valuation() const
{
    if (coeffs_.empty()) return std::nullopt;
    return start_;
}

std::optional<int> LaurentSeries::relative_precision() const
{
    if (coeffs_.empty() || is_exact()) return std::nullopt;
    return precision_ - start_;
}

Scalar LaurentSeries::coefficient(int k) const
{
    if (k >= precision_) {
        throw InsufficientPrecision("coefficient of t^" + std::to_string(k) + " is beyond the known window",
                                    retry_hint(k + 1 - order_lower_bound()));
    }
    if (k < start_ || k >= support_end()) return Scalar::zero(ring_);
    return coeffs_[static_cast<std::size_t>(k - start_)];
}

Scalar LaurentSeries::leading_coefficient() const
{
    if (coeffs_.empty()) throw ZeroToPrecision("series is zero on its known window");
    return coeffs_.front();
}

int LaurentSeries::order_lower_bound() const { return coeffs_.empty() ? precision_ : start_; }

bool LaurentSeries::is_unit() const { return !coeffs_.empty() && coeffs_.front().is_unit(); }

LaurentSeries LaurentSeries::truncated(int absolute_precision) const
{
    LaurentSeries s = *this;
    s.precision_ = std::min(precision_, absolute_precision);
    s.normalize();
    return s;
}

LaurentSeries LaurentSeries::shifted(int k) const
{
    LaurentSeries s = *this;
    if (!coeffs_.empty()) s.start_ += k;
    s.precision_ = add_precision(precision_, k);
    return s;
}

LaurentSeries LaurentSeries::scaled(const Scalar& c) const
{
    require_same_ring(ring_, c.ring());
    LaurentSeries s = *this;
    for (auto& x : s.coeffs_) x *= c;
    s.normalize();
    return s;
}

LaurentSeries LaurentSeries::inverse(int relative_precision) const
{
    if (coeffs_.empty()) throw ZeroToPrecision("cannot invert a series that is zero on its known window");
    if (!coeffs_.front().is_unit()) {
        throw NonUnitLeading("leading coefficient " + coeffs_.front().to_string() + " is not a unit");
    }
    const Scalar u0_inv = coeffs_.front().inverse();
    if (is_monomial()) return monomial(u0_inv, -start_);

    const int known = is_exact() ? relative_precision : precision_ - start_;
    if (known < 1) throw InsufficientPrecision("no known coefficients to invert", retry_hint(known));
    std::vector<Scalar> b(static_cast<std::size_t>(known), Scalar::zero(ring_));
    b[0] = u0_inv;
    for (int k = 1; k < known; ++k) {
        Scalar acc = Scalar::zero(ring_);
        const int top = std::min<int>(k, static_cast<int>(coeffs_.size()) - 1);
        for (int j = 1; j <= top; ++j) acc += coeffs_[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k - j)];
        b[static_cast<std::size_t>(k)] = -(acc * u0_inv);
    }
    return from_coefficients(ring_, -start_, std::move(b), -start_ + known);
}

LaurentSeries LaurentSeries::operator-() const
{
    LaurentSeries s = *this;
    for (auto& c : s.coeffs_) c = -c;
    return s;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& rhs)
{
    require_same_ring(ring_, rhs.ring_);
    const int prec = std::min(precision_, rhs.precision_);
    if (rhs.coeffs_.empty()) {
        precision_ = prec;
        normalize();
        return *this;
    }
    if (coeffs_.empty()) {
        coeffs_ = rhs.coeffs_;
        start_ = rhs.start_;
        precision_ = prec;
        normalize();
        return *this;
    }
    const int lo = std::min(start_, rhs.start_);
    const int hi = std::max(support_end(), rhs.support_end());
    std::vector<Scalar> out(static_cast<std::size_t>(hi - lo), Scalar::zero(ring_));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out[static_cast<std::size_t>(start_ - lo) + k] = coeffs_[k];
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) {
        out[static_cast<std::size_t>(rhs.start_ - lo) + k] += rhs.coeffs_[k];
    }
    start_ = lo;
    coeffs_ = std::move(out);
    precision_ = prec;
    normalize();
    return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& rhs) { return *this += -rhs; }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b)
{
    require_same_ring(a.ring_, b.ring_);
    if (a.is_exact_zero() || b.is_exact_zero()) return LaurentSeries::zero(a.ring_);
    const int prec = std::min(add_precision(a.order_lower_bound(), b.precision_),
                              add_precision(b.order_lower_bound(), a.precision_));
    if (a.coeffs_.empty() || b.coeffs_.empty()) return LaurentSeries::zero(a.ring_, prec);

    const int lo = a.start_ + b.start_;
    long len = static_cast<long>(a.coeffs_.size() + b.coeffs_.size()) - 1;
    if (prec != kExact) len = std::min<long>(len, static_cast<long>(prec) - lo);
    if (len <= 0) return LaurentSeries::zero(a.ring_, prec);

    std::vector<Scalar> out(static_cast<std::size_t>(len), Scalar::zero(a.ring_));
    for (std::size_t i = 0; i < a.coeffs_.size() && static_cast<long>(i) < len; ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size() && static_cast<long>(i + j) < len; ++j) {
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return LaurentSeries::from_coefficients(a.ring_, lo, std::move(out), prec);
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b)
{
    return a.ring_ == b.ring_ && a.precision_ == b.precision_ && a.start_ == b.start_ && a.coeffs_ == b.coeffs_;
}

LaurentSeries LaurentSeries::residue() const
{
    LaurentSeries s = *this;
    s.ring_ = ring_.residue_field();
    for (auto& c : s.coeffs_) c = c.residue();
    s.normalize();
    return s;
}

LaurentSeries LaurentSeries::lift_to(const Ring& artinian) const
{
    LaurentSeries s = *this;
    s.ring_ = artinian;
    for (auto& c : s.coeffs_) c = c.lift_to(artinian);
    return s;
}

std::string LaurentSeries::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k].is_zero()) continue;
        const int e = start_ + static_cast<int>(k);
        if (!first) os << " + ";
        first = false;
        const bool one = coeffs_[k] == Scalar::one(ring_);
        if (e == 0) {
            os << coeffs_[k];
        } else {
            if (!one) os << "(" << coeffs_[k] << ")*";
            os << "t";
            if (e != 1) os << "^" << e;
        }
    }
    if (!is_exact()) {
        if (!first) os << " + ";
        first = false;
        os << "O(t^" << precision_ << ")";
    }
    return first ? "0" : os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentSeries& s) { return os << s.to_string(); }

bool approx_equal(const LaurentSeries& a, const LaurentSeries& b)
{
    if (!(a.ring() == b.ring())) return false;
    return (a - b).is_zero_to_precision();
}

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b) { return a + b; }
LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b) { return a * b; }
LaurentSeries invert(const LaurentSeries& a, int relative_precision) { return a.inverse(relative_precision); }
std::optional<int> valuation(const LaurentSeries& a) { return a.valuation(); }

// ---------------------------------------------------------------------------

Polynomial::Polynomial(const Ring& ring, std::vector<Scalar> coefficients)
    : ring_(ring), coeffs_(std::move(coefficients))
{
    for (const auto& c : coeffs_) require_same_ring(c.ring(), ring_);
    normalize();
}

Polynomial Polynomial::constant(const Scalar& c) { return Polynomial(c.ring(), {c}); }

Polynomial Polynomial::monomial(const Scalar& c, int degree)
{
    std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1, Scalar::zero(c.ring()));
    v.back() = c;
    return Polynomial(c.ring(), std::move(v));
}

Polynomial Polynomial::linear(const Scalar& r) { return Polynomial(r.ring(), {-r, Scalar::one(r.ring())}); }

void Polynomial::normalize()
{
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Scalar Polynomial::coefficient(int k) const
{
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Scalar::zero(ring_);
    return coeffs_[static_cast<std::size_t>(k)];
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs)
{
    require_same_ring(ring_, rhs.ring_);
    if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Scalar::zero(ring_));
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    normalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) { return *this += -rhs; }

Polynomial Polynomial::operator-() const
{
    Polynomial p = *this;
    for (auto& c : p.coeffs_) c = -c;
    return p;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    require_same_ring(a.ring_, b.ring_);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar::zero(a.ring_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(a.ring_, std::move(out));
}

Polynomial Polynomial::pow(int k) const
{
    if (k < 0) throw DomainError("negative polynomial power");
    Polynomial result = constant(Scalar::one(ring_));
    for (int i = 0; i < k; ++i) result = result * *this;
    return result;
}

Polynomial Polynomial::taylor_shift(const Scalar& r) const
{
    require_same_ring(ring_, r.ring());
    const Polynomial t_plus_r(ring_, {r, Scalar::one(ring_)});
    Polynomial result(ring_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) result = result * t_plus_r + constant(*it);
    return result;
}

Scalar Polynomial::evaluate(const Scalar& x) const
{
    Scalar acc = Scalar::zero(ring_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

LaurentSeries Polynomial::to_series() const { return LaurentSeries::from_coefficients(ring_, 0, coeffs_); }

// ---------------------------------------------------------------------------

RationalFunction::RationalFunction(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(Scalar::one(num_.ring())))
{
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den))
{
    require_same_ring(num_.ring(), den_.ring());
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b)
{
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b)
{
    return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunction RationalFunction::inverse() const
{
    if (num_.is_zero()) throw DomainError("inverse of the zero rational function");
    return {den_, num_};
}

RationalFunction RationalFunction::pow(int k) const
{
    if (k < 0) return inverse().pow(-k);
    return {num_.pow(k), den_.pow(k)};
}

std::string RationalFunction::to_string() const
{
    auto poly = [](const Polynomial& p) { return p.to_series().to_string(); };
    return "(" + poly(num_) + ")/(" + poly(den_) + ")";
}

LaurentSeries expand_shift(const RationalFunction& f, const Scalar& r, int relative_precision)
{
    const LaurentSeries num = f.numerator().taylor_shift(r).to_series();
    const LaurentSeries den = f.denominator().taylor_shift(r).to_series();
    if (den.is_zero_to_precision()) throw UndetectableValuation("shifted denominator vanishes");
    return num * den.inverse(relative_precision);
}

LaurentSeries substitute(const LaurentSeries& a, const LaurentSeries& phi, int relative_precision)
{
    require_same_ring(a.ring(), phi.ring());
    if (phi.valuation() != 1 || !phi.is_unit()) {
        throw DomainError("substitution requires a series of valuation one with unit leading coefficient");
    }
    const Ring& ring = a.ring();
    LaurentSeries result = LaurentSeries::zero(ring);
    if (!a.is_zero_to_precision()) {
        const int lo = a.support_begin();
        const int hi = a.support_end();
        // phi^lo, then multiply up by phi.
        LaurentSeries power = LaurentSeries::constant(Scalar::one(ring));
        if (lo < 0) {
            const LaurentSeries phi_inv = phi.inverse(relative_precision);
            for (int k = 0; k < -lo; ++k) power = power * phi_inv;
        } else {
            for (int k = 0; k < lo; ++k) power = power * phi;
        }
        for (int e = lo; e < hi; ++e) {
            const Scalar c = a.coefficient(e);
            if (!c.is_zero()) result += power.scaled(c);
            if (e + 1 < hi) power = power * phi;
        }
    }
    // a = (known part) + O(t^P) maps to O(s^P).
    return result.truncated(a.absolute_precision());
}

} // namespace loopgr
