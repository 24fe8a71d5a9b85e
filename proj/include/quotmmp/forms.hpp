#pragma once

#include <string>
#include <vector>

#include "quotmmp/matrix.hpp"

namespace quotmmp {

// Homogeneous binary form of fixed degree in x, y, stored densely in the
// monomial basis x^m, x^(m-1)y, ..., y^m. The zero form of every degree is
// representable.
class BinaryForm {
public:
    BinaryForm(FieldSpec field, int degree);  // zero form

    static BinaryForm monomial(FieldSpec field, int degree, int j, const Scalar& c);
    static BinaryForm constant(FieldSpec field, const Scalar& c);

    int degree() const { return degree_; }
    const FieldSpec& field() const { return field_; }

    // Coefficient of x^(degree-j) y^j.
    const Scalar& coeff(int j) const;
    void set_coeff(int j, const Scalar& c);

    bool is_zero() const;

    BinaryForm operator+(const BinaryForm& o) const;
    BinaryForm operator-(const BinaryForm& o) const;
    BinaryForm operator*(const BinaryForm& o) const;  // degrees add
    BinaryForm operator*(const Scalar& c) const;
    BinaryForm operator-() const;
    bool operator==(const BinaryForm& o) const;
    bool operator!=(const BinaryForm& o) const { return !(*this == o); }

    BinaryForm times_x() const;  // multiplication by x (degree + 1)
    BinaryForm times_y() const;

    std::string str() const;

    // Parses the polynomial grammar: a sum of terms `c`, `c*x^a*y^b`,
    // `x^a*y^b`. With expected_degree >= 0 every term must have total degree
    // equal to it (zero is accepted at any degree); with expected_degree < 0
    // the degree is inferred and the input must be homogeneous.
    static BinaryForm parse(FieldSpec field, const std::string& text, int expected_degree = -1);

private:
    int degree_;
    FieldSpec field_;
    std::vector<Scalar> coeff_;
};

// GCD of two binary forms, monic in the sense that the leading (lowest-j)
// coefficient is 1. gcd(0, g) = g up to that normalization.
BinaryForm form_gcd(const BinaryForm& a, const BinaryForm& b);

// Determinant of a square matrix of forms; column j must be homogeneous of
// one degree so the result is homogeneous of the total degree.
BinaryForm form_det(const std::vector<std::vector<BinaryForm>>& m);

// The moduli configuration (n, r, d) with s = n - r and the derived
// bottom-level defect l = ceil(d/s)*s - d shared by every operation.
struct ModuliParams {
    int n = 2;
    int r = 0;
    int d = 0;

    static ModuliParams checked(int n, int r, int d);

    int s() const { return n - r; }
    int ceil_d_s() const;            // ceil(d/s)
    int floor_d_s() const { return d / s(); }
    int l() const { return ceil_d_s() * s() - d; }
    int dim_R() const { return n * d + r * s(); }

    // dim V_m = n(m+1); V_{-1} is the zero space.
    int dim_Vm(int m) const { return m < 0 ? 0 : n * (m + 1); }
    // Row count of a point of G_m = Gr((m+1)s - d, V_m).
    int gm_subspace_dim(int m) const { return (m + 1) * s() - d; }

    bool operator==(const ModuliParams&) const = default;
};

// Position of e_i (x^(m-j) y^j) in the fixed lexicographic-(i, j) ordering of
// the basis of V_m = V (x) H^0(O(m)).
int basis_index(int n, int m, int i, int j);

// Index of v_k (x) h_t in V_m (x) H, with the x-block first (t = 0) and the
// y-block second (t = 1).
int vh_index(int n, int m, int t, int k);

// Matrix of j_m : V_{m-1} -> V_m (x) H, v(x)f |-> v(x)(xf)(x)y - v(x)(yf)(x)x.
// Shape 2n(m+1) x nm; full column rank. Requires m >= 1.
ExactMatrix jm_matrix(FieldSpec field, int n, int m);

// Matrix of k_m : V_{m-1} (x) H^dual -> V_m with the convention
// k_m(v(x)f(x)x^dual) = -v(yf), k_m(v(x)f(x)y^dual) = v(xf).
// Shape n(m+1) x 2nm; surjective. Requires m >= 1.
ExactMatrix km_matrix(FieldSpec field, int n, int m);

// Evaluation V_m (x) H -> V_{m+1} (multiplication); ev o j_m = 0.
ExactMatrix evaluation_matrix(FieldSpec field, int n, int m);

}  // namespace quotmmp
