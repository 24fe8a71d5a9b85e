#pragma once

#include <gmpxx.h>

#include <string>

namespace quotmmp {

// The coefficient field of a computation: the rationals (characteristic 0)
// or a prime field F_p with p < 2^31. Every scalar and matrix carries one of
// these, and values from different fields never mix.
class FieldSpec {
public:
    FieldSpec() = default;  // rationals

    static FieldSpec rationals() { return FieldSpec{}; }
    static FieldSpec prime_field(long p);

    bool is_rational() const { return p_ == 0; }
    long characteristic() const { return p_; }

    bool operator==(const FieldSpec&) const = default;

    std::string str() const;  // "Q" or "F_p"

private:
    explicit FieldSpec(long p) : p_(p) {}
    long p_ = 0;
};

// An element of Q or of F_p, tagged with its field. Rationals are kept as
// normalized arbitrary-precision fractions; prime-field elements as a plain
// residue in [0, p), which keeps the enumeration loops allocation-free.
class Scalar {
public:
    Scalar() = default;  // rational zero

    Scalar(FieldSpec field, long value);
    Scalar(FieldSpec field, const mpz_class& value);
    Scalar(FieldSpec field, const mpq_class& value);

    static Scalar zero(FieldSpec field) { return Scalar(field, 0L); }
    static Scalar one(FieldSpec field) { return Scalar(field, 1L); }

    const FieldSpec& field() const { return field_; }
    mpq_class value() const;

    bool is_zero() const { return field_.is_rational() ? v_ == 0 : r_ == 0; }
    bool is_one() const { return field_.is_rational() ? v_ == 1 : r_ == 1; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // "5", "-3/2", residues as plain integers.
    std::string str() const;

    // Parses the formats produced by str(); for F_p, rationals p/q are
    // reduced via a modular inverse of q.
    static Scalar parse(FieldSpec field, const std::string& text);

private:
    Scalar(FieldSpec field, long residue, bool) : field_(field), r_(residue) {}
    void require_same_field(const Scalar& o) const;

    FieldSpec field_;
    long r_ = 0;      // residue, prime fields only
    mpq_class v_ = 0;  // value, rationals only
};

}  // namespace quotmmp
