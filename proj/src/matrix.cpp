#include "quotmmp/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace quotmmp {

ExactMatrix::ExactMatrix(FieldSpec field, int rows, int cols)
    : rows_(rows), cols_(cols), field_(field) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    a_.assign(static_cast<size_t>(rows) * cols, Scalar::zero(field));
}

ExactMatrix ExactMatrix::identity(FieldSpec field, int n) {
    ExactMatrix m(field, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

int ExactMatrix::index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("matrix index out of range");
    return r * cols_ + c;
}

void ExactMatrix::set(int r, int c, const Scalar& v) {
    if (!(v.field() == field_))
        throw std::invalid_argument("entry field " + v.field().str() +
                                    " does not match matrix field " + field_.str());
    a_[index(r, c)] = v;
}

ExactMatrix ExactMatrix::transposed() const {
    ExactMatrix t(field_, cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.a_[c * rows_ + r] = at(r, c);
    return t;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
    if (!(field_ == o.field_)) throw std::invalid_argument("matrix fields differ in product");
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shapes incompatible in product");
    ExactMatrix p(field_, rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& x = at(r, k);
            if (x.is_zero()) continue;
            for (int c = 0; c < o.cols_; ++c) {
                const Scalar& y = o.at(k, c);
                if (y.is_zero()) continue;
                p.a_[r * p.cols_ + c] += x * y;
            }
        }
    return p;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && a_ == o.a_;
}

bool ExactMatrix::is_zero() const {
    for (const Scalar& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& top, const ExactMatrix& bottom) {
    if (top.cols_ != bottom.cols_) throw std::invalid_argument("vstack column mismatch");
    if (!(top.field_ == bottom.field_)) throw std::invalid_argument("vstack field mismatch");
    ExactMatrix m(top.field_, top.rows_ + bottom.rows_, top.cols_);
    for (int r = 0; r < top.rows_; ++r)
        for (int c = 0; c < top.cols_; ++c) m.a_[r * m.cols_ + c] = top.at(r, c);
    for (int r = 0; r < bottom.rows_; ++r)
        for (int c = 0; c < top.cols_; ++c)
            m.a_[(top.rows_ + r) * m.cols_ + c] = bottom.at(r, c);
    return m;
}

ExactMatrix ExactMatrix::take_rows(const std::vector<int>& rows) const {
    ExactMatrix m(field_, static_cast<int>(rows.size()), cols_);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int c = 0; c < cols_; ++c) m.a_[i * cols_ + c] = at(rows[i], c);
    return m;
}

void ExactMatrix::swap_rows(int r1, int r2) {
    if (r1 == r2) return;
    for (int c = 0; c < cols_; ++c) std::swap(a_[index(r1, c)], a_[index(r2, c)]);
}

std::string ExactMatrix::str() const {
    std::ostringstream out;
    out << rows_ << "x" << cols_ << " over " << field_.str() << "\n";
    for (int r = 0; r < rows_; ++r) {
        out << "[";
        for (int c = 0; c < cols_; ++c) out << (c ? " " : "") << at(r, c).str();
        out << "]\n";
    }
    return out.str();
}

RrefResult rref(const ExactMatrix& m) {
    ExactMatrix a = m;
    std::vector<int> pivots;
    int pr = 0;
    for (int c = 0; c < a.cols() && pr < a.rows(); ++c) {
        int sel = -1;
        for (int r = pr; r < a.rows(); ++r)
            if (!a.at(r, c).is_zero()) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        a.swap_rows(pr, sel);
        Scalar inv = a.at(pr, c).inverse();
        for (int j = c; j < a.cols(); ++j) a.set(pr, j, a.at(pr, j) * inv);
        for (int r = 0; r < a.rows(); ++r) {
            if (r == pr) continue;
            Scalar f = a.at(r, c);
            if (f.is_zero()) continue;
            for (int j = c; j < a.cols(); ++j) a.set(r, j, a.at(r, j) - f * a.at(pr, j));
        }
        pivots.push_back(c);
        ++pr;
    }
    return RrefResult{std::move(a), pr, std::move(pivots)};
}

int rank(const ExactMatrix& m) { return rref(m).rank; }

ExactMatrix kernel_basis(const ExactMatrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : r.pivot_columns) is_pivot[c] = true;

    ExactMatrix basis(m.field(), m.cols() - r.rank, m.cols());
    int row = 0;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        basis.set(row, f, 1);
        for (int i = 0; i < r.rank; ++i)
            basis.set(row, r.pivot_columns[i], -r.matrix.at(i, f));
        ++row;
    }
    // The per-free-column vectors form a basis but not necessarily an
    // echelon one; canonicalize.
    return rref(basis).matrix;
}

mpz_class gaussian_binomial(int subdim, int ambient, const mpz_class& q) {
    if (subdim < 0 || subdim > ambient)
        throw std::domain_error("gaussian_binomial requires 0 <= subdim <= ambient");
    if (q < 2) throw std::domain_error("gaussian_binomial requires q >= 2");
    // prod_{i=1..k} (q^(N-k+i) - 1) / (q^i - 1); the division is exact.
    mpz_class num = 1, den = 1, qp;
    for (int i = 1; i <= subdim; ++i) {
        mpz_pow_ui(qp.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(ambient - subdim + i));
        num *= qp - 1;
        mpz_pow_ui(qp.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(i));
        den *= qp - 1;
    }
    mpz_class out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

}  // namespace quotmmp
