#pragma once

#include <vector>

#include "quotmmp/field.hpp"

namespace quotmmp {

// Dense matrix over Q or F_p. Zero-row and zero-column matrices are legal;
// all entries share the matrix field (mixed-field writes are rejected).
class ExactMatrix {
public:
    ExactMatrix(FieldSpec field, int rows, int cols);

    static ExactMatrix identity(FieldSpec field, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    const Scalar& at(int r, int c) const { return a_[index(r, c)]; }
    void set(int r, int c, const Scalar& v);
    void set(int r, int c, long v) { set(r, c, Scalar(field_, v)); }

    ExactMatrix transposed() const;
    ExactMatrix operator*(const ExactMatrix& o) const;
    bool operator==(const ExactMatrix& o) const;
    bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

    bool is_zero() const;

    // Rows of `top` followed by rows of `bottom`; column counts must agree.
    static ExactMatrix vstack(const ExactMatrix& top, const ExactMatrix& bottom);

    // The submatrix of the given rows, in order.
    ExactMatrix take_rows(const std::vector<int>& rows) const;

    void swap_rows(int r1, int r2);

    std::string str() const;  // human-readable, for diagnostics

private:
    int index(int r, int c) const;

    int rows_;
    int cols_;
    FieldSpec field_;
    std::vector<Scalar> a_;
};

struct RrefResult {
    ExactMatrix matrix;
    int rank = 0;
    std::vector<int> pivot_columns;
};

// Reduced row echelon form with first-nonzero pivoting. Deterministic: equal
// inputs give identical output, and rref is idempotent.
RrefResult rref(const ExactMatrix& m);

int rank(const ExactMatrix& m);

// Canonical RREF basis of the right null space {v : m v = 0}, one basis
// vector per row. Row count is always cols(m) - rank(m).
ExactMatrix kernel_basis(const ExactMatrix& m);

// Number of subdim-dimensional subspaces of an ambient-dimensional vector
// space over F_q. Exact; requires 0 <= subdim <= ambient and q >= 2.
mpz_class gaussian_binomial(int subdim, int ambient, const mpz_class& q);

}  // namespace quotmmp
