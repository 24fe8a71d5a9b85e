#include "quotmmp/field.hpp"

#include <stdexcept>

namespace quotmmp {

FieldSpec FieldSpec::prime_field(long p) {
    if (p < 2) throw std::invalid_argument("prime field characteristic must be >= 2");
    if (p >= (1L << 31)) throw std::invalid_argument("prime field characteristic must be < 2^31");
    mpz_class z(p);
    if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
        throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    return FieldSpec(p);
}

std::string FieldSpec::str() const {
    return is_rational() ? "Q" : "F_" + std::to_string(p_);
}

namespace {

long mod_reduce(long v, long p) {
    long r = v % p;
    return r < 0 ? r + p : r;
}

// residue of num/den mod p via the extended Euclidean inverse
long mod_inverse(long a, long p) {
    long t = 0, new_t = 1, r = p, new_r = mod_reduce(a, p);
    if (new_r == 0) throw std::domain_error("inverse of zero");
    while (new_r != 0) {
        long quot = r / new_r;
        t -= quot * new_t;
        std::swap(t, new_t);
        r -= quot * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw std::domain_error("element not invertible: gcd exceeds 1");
    return mod_reduce(t, p);
}

long residue_of(const mpq_class& q, long p) {
    mpz_class pz(p), num_r, den_r;
    mpz_fdiv_r(num_r.get_mpz_t(), q.get_num().get_mpz_t(), pz.get_mpz_t());
    long num = num_r.get_si();
    if (q.get_den() == 1) return num;
    mpz_fdiv_r(den_r.get_mpz_t(), q.get_den().get_mpz_t(), pz.get_mpz_t());
    long den = den_r.get_si();
    if (den == 0) throw std::domain_error("denominator not invertible mod " + std::to_string(p));
    return mod_reduce(num * mod_inverse(den, p), p);
}

}  // namespace

Scalar::Scalar(FieldSpec field, long value) : field_(field) {
    if (field_.is_rational())
        v_ = value;
    else
        r_ = mod_reduce(value, field_.characteristic());
}

Scalar::Scalar(FieldSpec field, const mpz_class& value) : field_(field) {
    if (field_.is_rational()) {
        v_ = value;
    } else {
        mpz_class pz(field_.characteristic()), rz;
        mpz_fdiv_r(rz.get_mpz_t(), value.get_mpz_t(), pz.get_mpz_t());
        r_ = rz.get_si();
    }
}

Scalar::Scalar(FieldSpec field, const mpq_class& value) : field_(field) {
    if (field_.is_rational()) {
        v_ = value;
        v_.canonicalize();
    } else {
        mpq_class canon = value;
        canon.canonicalize();
        r_ = residue_of(canon, field_.characteristic());
    }
}

mpq_class Scalar::value() const {
    return field_.is_rational() ? v_ : mpq_class(r_);
}

void Scalar::require_same_field(const Scalar& o) const {
    if (!(field_ == o.field_))
        throw std::invalid_argument("scalars from different fields combined: " + field_.str() +
                                    " vs " + o.field_.str());
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_field(o);
    if (field_.is_rational()) return Scalar(field_, mpq_class(v_ + o.v_));
    return Scalar(field_, mod_reduce(r_ + o.r_, field_.characteristic()), true);
}

Scalar Scalar::operator-(const Scalar& o) const {
    require_same_field(o);
    if (field_.is_rational()) return Scalar(field_, mpq_class(v_ - o.v_));
    return Scalar(field_, mod_reduce(r_ - o.r_, field_.characteristic()), true);
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_field(o);
    if (field_.is_rational()) return Scalar(field_, mpq_class(v_ * o.v_));
    // residues < 2^31, so the product fits in a signed 64-bit long
    return Scalar(field_, mod_reduce(r_ * o.r_, field_.characteristic()), true);
}

Scalar Scalar::operator/(const Scalar& o) const {
    require_same_field(o);
    return *this * o.inverse();
}

Scalar Scalar::operator-() const {
    if (field_.is_rational()) return Scalar(field_, mpq_class(-v_));
    return Scalar(field_, r_ == 0 ? 0 : field_.characteristic() - r_, true);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (field_.is_rational()) return Scalar(field_, mpq_class(1 / v_));
    return Scalar(field_, mod_inverse(r_, field_.characteristic()), true);
}

bool Scalar::operator==(const Scalar& o) const {
    if (!(field_ == o.field_)) return false;
    return field_.is_rational() ? v_ == o.v_ : r_ == o.r_;
}

std::string Scalar::str() const {
    return field_.is_rational() ? v_.get_str() : std::to_string(r_);
}

Scalar Scalar::parse(FieldSpec field, const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("cannot parse field element '" + text + "'");
    q.canonicalize();
    return Scalar(field, q);
}

}  // namespace quotmmp
