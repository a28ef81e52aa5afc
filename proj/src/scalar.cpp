#include "loopgr/scalar.hpp"

#include <charconv>
#include <sstream>

#include "loopgr/errors.hpp"

namespace loopgr {

namespace {

bool is_prime(std::uint32_t p)
{
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p)
{
    std::uint64_t result = 1 % p;
    base %= p;
    while (exp > 0) {
        if (exp & 1u) result = result * base % p;
        base = base * base % p;
        exp >>= 1u;
    }
    return result;
}

std::uint64_t reduce_mpz(const mpz_class& z, std::uint32_t p)
{
    mpz_class r = z % p;
    if (r < 0) r += p;
    return r.get_ui();
}

int parse_int(std::string_view text)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw SchemaError("bad integer in ring description: '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

Ring Ring::prime_field(std::uint32_t p)
{
    if (p >= (1u << 31) || !is_prime(p)) {
        throw DomainError("F_p requires a prime p < 2^31, got " + std::to_string(p));
    }
    Ring r;
    r.kind = RingKind::prime_field;
    r.modulus = p;
    return r;
}

Ring Ring::artinian(const Ring& residue, int m)
{
    if (!residue.is_field()) throw DomainError("Artinian residue ring must be Q or F_p");
    if (m < 1) throw DomainError("Artinian nilpotency index must be positive");
    Ring r;
    r.kind = RingKind::artinian;
    r.modulus = residue.modulus;
    r.nilpotency = m;
    return r;
}

Ring Ring::parse(std::string_view text)
{
    std::string_view head = text;
    int m = 0;
    if (auto pos = text.find("[x]/x^"); pos != std::string_view::npos) {
        head = text.substr(0, pos);
        m = parse_int(text.substr(pos + 6));
    }
    Ring base;
    if (head == "Q") {
        base = rationals();
    } else if (!head.empty() && head.front() == 'F') {
        int p = parse_int(head.substr(1));
        if (p <= 0) throw SchemaError("bad prime in ring description");
        base = prime_field(static_cast<std::uint32_t>(p));
    } else {
        throw SchemaError("unknown ring '" + std::string(text) + "'");
    }
    return m > 0 ? artinian(base, m) : base;
}

Ring Ring::residue_field() const
{
    if (is_field()) return *this;
    return modulus == 0 ? rationals() : prime_field(modulus);
}

std::string Ring::name() const
{
    std::string base = modulus == 0 ? "Q" : "F" + std::to_string(modulus);
    if (kind == RingKind::artinian) base += "[x]/x^" + std::to_string(nilpotency);
    return base;
}

std::ostream& operator<<(std::ostream& os, const Ring& ring) { return os << ring.name(); }

void require_same_ring(const Ring& a, const Ring& b)
{
    if (!(a == b)) throw BackendMismatch("coefficient rings differ: " + a.name() + " vs " + b.name());
}

Scalar Scalar::zero(const Ring& ring)
{
    Scalar s;
    s.ring_ = ring;
    switch (ring.kind) {
    case RingKind::rational: s.value_ = mpq_class(0); break;
    case RingKind::prime_field: s.value_ = std::uint64_t{0}; break;
    case RingKind::artinian:
        s.value_ = std::vector<Scalar>(static_cast<std::size_t>(ring.nilpotency), zero(ring.residue_field()));
        break;
    }
    return s;
}

Scalar Scalar::one(const Ring& ring) { return from_int(ring, 1); }

Scalar Scalar::from_int(const Ring& ring, long value) { return from_rational(ring, mpq_class(value)); }

Scalar Scalar::from_rational(const Ring& ring, const mpq_class& value)
{
    Scalar s = zero(ring);
    switch (ring.kind) {
    case RingKind::rational: s.value_ = value; break;
    case RingKind::prime_field: {
        std::uint64_t num = reduce_mpz(value.get_num(), ring.modulus);
        std::uint64_t den = reduce_mpz(value.get_den(), ring.modulus);
        if (den == 0) throw DomainError("denominator vanishes in F_" + std::to_string(ring.modulus));
        s.value_ = num * pow_mod(den, ring.modulus - 2, ring.modulus) % ring.modulus;
        break;
    }
    case RingKind::artinian:
        std::get<std::vector<Scalar>>(s.value_)[0] = from_rational(ring.residue_field(), value);
        break;
    }
    return s;
}

Scalar Scalar::from_coefficients(const Ring& ring, std::vector<Scalar> coefficients)
{
    if (ring.is_field()) {
        if (coefficients.size() > 1) throw DomainError("field elements take a single coefficient");
        return coefficients.empty() ? zero(ring) : coefficients.front();
    }
    const Ring residue = ring.residue_field();
    for (const auto& c : coefficients) require_same_ring(c.ring(), residue);
    // Coefficients beyond x^(m-1) vanish in k[x]/(x^m).
    coefficients.resize(static_cast<std::size_t>(ring.nilpotency), zero(residue));
    Scalar s;
    s.ring_ = ring;
    s.value_ = std::move(coefficients);
    return s;
}

Scalar Scalar::parse(const Ring& ring, std::string_view text)
{
    std::string str(text);
    while (!str.empty() && str.front() == ' ') str.erase(str.begin());
    while (!str.empty() && str.back() == ' ') str.pop_back();
    if (!str.empty() && str.front() == '+') str.erase(str.begin());
    mpq_class q;
    if (str.empty() || q.set_str(str, 10) != 0) {
        throw SchemaError("bad coefficient literal '" + std::string(text) + "'");
    }
    if (q.get_den() == 0) throw SchemaError("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return from_rational(ring, q);
}

bool Scalar::is_zero() const
{
    switch (ring_.kind) {
    case RingKind::rational: return sgn(std::get<mpq_class>(value_)) == 0;
    case RingKind::prime_field: return std::get<std::uint64_t>(value_) == 0;
    case RingKind::artinian:
        for (const auto& c : std::get<std::vector<Scalar>>(value_)) {
            if (!c.is_zero()) return false;
        }
        return true;
    }
    return true;
}

bool Scalar::is_unit() const
{
    if (ring_.is_field()) return !is_zero();
    return !std::get<std::vector<Scalar>>(value_)[0].is_zero();
}

Scalar Scalar::inverse() const
{
    if (!is_unit()) throw NonUnitLeading("inverse of non-unit scalar " + to_string());
    Scalar s = *this;
    switch (ring_.kind) {
    case RingKind::rational: s.value_ = mpq_class(1) / std::get<mpq_class>(value_); break;
    case RingKind::prime_field:
        s.value_ = pow_mod(std::get<std::uint64_t>(value_), ring_.modulus - 2, ring_.modulus);
        break;
    case RingKind::artinian: {
        // Power-series inversion truncated at x^m.
        const auto& a = std::get<std::vector<Scalar>>(value_);
        std::vector<Scalar> b(a.size(), zero(ring_.residue_field()));
        const Scalar a0_inv = a[0].inverse();
        b[0] = a0_inv;
        for (std::size_t k = 1; k < a.size(); ++k) {
            Scalar acc = zero(ring_.residue_field());
            for (std::size_t j = 1; j <= k; ++j) acc += a[j] * b[k - j];
            b[k] = -(acc * a0_inv);
        }
        s.value_ = std::move(b);
        break;
    }
    }
    return s;
}

Scalar Scalar::operator-() const
{
    Scalar s = *this;
    switch (ring_.kind) {
    case RingKind::rational: s.value_ = -std::get<mpq_class>(value_); break;
    case RingKind::prime_field: {
        auto v = std::get<std::uint64_t>(value_);
        s.value_ = v == 0 ? 0 : ring_.modulus - v;
        break;
    }
    case RingKind::artinian:
        for (auto& c : std::get<std::vector<Scalar>>(s.value_)) c = -c;
        break;
    }
    return s;
}

Scalar& Scalar::operator+=(const Scalar& rhs)
{
    require_same_ring(ring_, rhs.ring_);
    switch (ring_.kind) {
    case RingKind::rational: std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_); break;
    case RingKind::prime_field: {
        auto& v = std::get<std::uint64_t>(value_);
        v = (v + std::get<std::uint64_t>(rhs.value_)) % ring_.modulus;
        break;
    }
    case RingKind::artinian: {
        auto& a = std::get<std::vector<Scalar>>(value_);
        const auto& b = std::get<std::vector<Scalar>>(rhs.value_);
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
        break;
    }
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar& Scalar::operator*=(const Scalar& rhs)
{
    require_same_ring(ring_, rhs.ring_);
    switch (ring_.kind) {
    case RingKind::rational: std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_); break;
    case RingKind::prime_field: {
        auto& v = std::get<std::uint64_t>(value_);
        v = v * std::get<std::uint64_t>(rhs.value_) % ring_.modulus;
        break;
    }
    case RingKind::artinian: {
        const auto& a = std::get<std::vector<Scalar>>(value_);
        const auto& b = std::get<std::vector<Scalar>>(rhs.value_);
        std::vector<Scalar> c(a.size(), zero(ring_.residue_field()));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].is_zero()) continue;
            for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
        }
        value_ = std::move(c);
        break;
    }
    }
    return *this;
}

bool operator==(const Scalar& a, const Scalar& b)
{
    if (!(a.ring_ == b.ring_)) return false;
    return a.value_ == b.value_;
}

Scalar Scalar::residue() const
{
    if (ring_.is_field()) return *this;
    return std::get<std::vector<Scalar>>(value_)[0];
}

Scalar Scalar::lift_to(const Ring& artinian) const
{
    if (artinian.is_field()) {
        require_same_ring(ring_, artinian);
        return *this;
    }
    require_same_ring(ring_, artinian.residue_field());
    return from_coefficients(artinian, {*this});
}

Scalar Scalar::coefficient(int k) const
{
    if (ring_.is_field()) return k == 0 ? *this : zero(ring_);
    const auto& c = std::get<std::vector<Scalar>>(value_);
    if (k < 0 || k >= static_cast<int>(c.size())) return zero(ring_.residue_field());
    return c[static_cast<std::size_t>(k)];
}

const mpq_class& Scalar::rational() const { return std::get<mpq_class>(value_); }

std::uint64_t Scalar::residue_mod_p() const { return std::get<std::uint64_t>(value_); }

std::string Scalar::to_string() const
{
    switch (ring_.kind) {
    case RingKind::rational: return std::get<mpq_class>(value_).get_str();
    case RingKind::prime_field: return std::to_string(std::get<std::uint64_t>(value_));
    case RingKind::artinian: {
        const auto& c = std::get<std::vector<Scalar>>(value_);
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            if (k == 0) {
                os << c[k];
            } else {
                os << "(" << c[k] << ")*x";
                if (k > 1) os << "^" << k;
            }
        }
        return first ? "0" : os.str();
    }
    }
    return {};
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

} // namespace loopgr
