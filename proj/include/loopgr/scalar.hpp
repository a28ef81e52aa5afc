#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace loopgr {

enum class RingKind { rational, prime_field, artinian };

// Describes one of the exact coefficient rings:
//   Q, F_p (p < 2^31 prime), and the Artinian local rings k[x]/(x^m) with
//   k = Q or F_p.
struct Ring {
    RingKind kind = RingKind::rational;
    // p for F_p, and for an Artinian ring over F_p. Zero means Q.
    std::uint32_t modulus = 0;
    // m for k[x]/(x^m); zero for fields.
    int nilpotency = 0;

    static Ring rationals() { return {}; }
    static Ring prime_field(std::uint32_t p);
    static Ring artinian(const Ring& residue, int m);

    // Parses "Q", "F7", "Q[x]/x^3", "F5[x]/x^2".
    static Ring parse(std::string_view text);

    bool is_field() const { return kind != RingKind::artinian; }
    Ring residue_field() const;
    std::string name() const;

    friend bool operator==(const Ring&, const Ring&) = default;
};

std::ostream& operator<<(std::ostream& os, const Ring& ring);

// Throws BackendMismatch unless both rings agree.
void require_same_ring(const Ring& a, const Ring& b);

// An element of one of the coefficient rings. Arithmetic is exact.
class Scalar {
public:
    Scalar() = default; // rational zero

    static Scalar zero(const Ring& ring);
    static Scalar one(const Ring& ring);
    static Scalar from_int(const Ring& ring, long value);
    static Scalar from_rational(const Ring& ring, const mpq_class& value);
    // Artinian element c_0 + c_1 x + ... from residue-field coefficients.
    static Scalar from_coefficients(const Ring& ring, std::vector<Scalar> coefficients);
    // Exact decimal fraction "p/q" or integer "p", mapped into `ring`.
    static Scalar parse(const Ring& ring, std::string_view text);

    const Ring& ring() const { return ring_; }

    bool is_zero() const;
    bool is_unit() const;

    Scalar inverse() const;
    Scalar operator-() const;

    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    friend bool operator==(const Scalar& a, const Scalar& b);

    // Image in the residue field (identity on fields).
    Scalar residue() const;
    // Constant lift of a residue-field element into an Artinian ring.
    Scalar lift_to(const Ring& artinian) const;
    // Coefficient of x^k of an Artinian element, as a residue-field scalar.
    Scalar coefficient(int k) const;
    // True if this Artinian element lies in the maximal ideal (x).
    bool in_maximal_ideal() const { return !is_unit(); }

    const mpq_class& rational() const;
    std::uint64_t residue_mod_p() const;

    // "p/q" for fields; for Artinian elements a polynomial in x.
    std::string to_string() const;

private:
    Ring ring_;
    std::variant<mpq_class, std::uint64_t, std::vector<Scalar>> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace loopgr
