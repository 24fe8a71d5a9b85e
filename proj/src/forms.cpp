#include "quotmmp/forms.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "quotmmp/errors.hpp"

namespace quotmmp {

BinaryForm::BinaryForm(FieldSpec field, int degree) : degree_(degree), field_(field) {
    if (degree < 0) throw std::invalid_argument("binary form degree must be nonnegative");
    coeff_.assign(degree + 1, Scalar::zero(field));
}

BinaryForm BinaryForm::monomial(FieldSpec field, int degree, int j, const Scalar& c) {
    BinaryForm f(field, degree);
    f.set_coeff(j, c);
    return f;
}

BinaryForm BinaryForm::constant(FieldSpec field, const Scalar& c) {
    return monomial(field, 0, 0, c);
}

const Scalar& BinaryForm::coeff(int j) const {
    if (j < 0 || j > degree_) throw std::out_of_range("form coefficient index");
    return coeff_[j];
}

void BinaryForm::set_coeff(int j, const Scalar& c) {
    if (j < 0 || j > degree_) throw std::out_of_range("form coefficient index");
    if (!(c.field() == field_)) throw std::invalid_argument("coefficient field mismatch");
    coeff_[j] = c;
}

bool BinaryForm::is_zero() const {
    for (const Scalar& c : coeff_)
        if (!c.is_zero()) return false;
    return true;
}

BinaryForm BinaryForm::operator+(const BinaryForm& o) const {
    if (degree_ != o.degree_) throw std::invalid_argument("adding forms of different degrees");
    BinaryForm out(field_, degree_);
    for (int j = 0; j <= degree_; ++j) out.coeff_[j] = coeff_[j] + o.coeff_[j];
    return out;
}

BinaryForm BinaryForm::operator-(const BinaryForm& o) const { return *this + (-o); }

BinaryForm BinaryForm::operator*(const BinaryForm& o) const {
    if (!(field_ == o.field_)) throw std::invalid_argument("form field mismatch");
    BinaryForm out(field_, degree_ + o.degree_);
    for (int j = 0; j <= degree_; ++j) {
        if (coeff_[j].is_zero()) continue;
        for (int k = 0; k <= o.degree_; ++k) {
            if (o.coeff_[k].is_zero()) continue;
            out.coeff_[j + k] += coeff_[j] * o.coeff_[k];
        }
    }
    return out;
}

BinaryForm BinaryForm::operator*(const Scalar& c) const {
    BinaryForm out(field_, degree_);
    for (int j = 0; j <= degree_; ++j) out.coeff_[j] = coeff_[j] * c;
    return out;
}

BinaryForm BinaryForm::operator-() const {
    BinaryForm out(field_, degree_);
    for (int j = 0; j <= degree_; ++j) out.coeff_[j] = -coeff_[j];
    return out;
}

bool BinaryForm::operator==(const BinaryForm& o) const {
    return degree_ == o.degree_ && field_ == o.field_ && coeff_ == o.coeff_;
}

BinaryForm BinaryForm::times_x() const {
    BinaryForm out(field_, degree_ + 1);
    for (int j = 0; j <= degree_; ++j) out.coeff_[j] = coeff_[j];
    return out;
}

BinaryForm BinaryForm::times_y() const {
    BinaryForm out(field_, degree_ + 1);
    for (int j = 0; j <= degree_; ++j) out.coeff_[j + 1] = coeff_[j];
    return out;
}

std::string BinaryForm::str() const {
    std::ostringstream out;
    bool first = true;
    for (int j = 0; j <= degree_; ++j) {
        const Scalar& c = coeff_[j];
        if (c.is_zero()) continue;
        std::string cs = c.str();
        bool negative = !cs.empty() && cs[0] == '-';
        if (first) {
            if (negative) out << "-";
        } else {
            out << (negative ? " - " : " + ");
        }
        if (negative) cs = cs.substr(1);
        int xe = degree_ - j, ye = j;
        bool unit = (cs == "1");
        if (!unit || (xe == 0 && ye == 0)) out << cs;
        if (xe > 0) {
            if (!unit) out << "*";
            out << "x";
            if (xe > 1) out << "^" << xe;
        }
        if (ye > 0) {
            if (!unit || xe > 0) out << "*";
            out << "y";
            if (ye > 1) out << "^" << ye;
        }
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

namespace {

struct Term {
    mpq_class c;
    int xe = 0;
    int ye = 0;
};

// Recursive-descent parser for the grammar:
//   expr := [sign] term (sign term)*
//   term := factor ('*' factor)*
//   factor := number | 'x' ['^' nat] | 'y' ['^' nat]
//   number := nat ['/' nat]
class FormParser {
public:
    explicit FormParser(const std::string& s) : s_(s) {}

    std::vector<Term> parse() {
        std::vector<Term> terms;
        skip_ws();
        if (eof()) throw ParseError("empty polynomial", col());
        bool neg = take_sign();
        terms.push_back(parse_term(neg));
        skip_ws();
        while (!eof()) {
            char c = peek();
            if (c != '+' && c != '-') throw ParseError("expected '+' or '-'", col());
            bool negate = (c == '-');
            ++pos_;
            terms.push_back(parse_term(negate));
            skip_ws();
        }
        return terms;
    }

private:
    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    int col() const { return static_cast<int>(pos_) + 1; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    bool take_sign() {
        skip_ws();
        if (!eof() && (peek() == '+' || peek() == '-')) {
            bool neg = peek() == '-';
            ++pos_;
            return neg;
        }
        return false;
    }

    int parse_nat() {
        skip_ws();
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected a number", col());
        size_t start = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        std::string digits = s_.substr(start, pos_ - start);
        if (digits.size() > 4)
            throw ParseError("exponent too large", static_cast<int>(start) + 1);
        return std::stoi(digits);
    }

    mpq_class parse_number() {
        skip_ws();
        size_t start = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == start) throw ParseError("expected a coefficient", col());
        // base 10 explicitly: the gmp string constructors treat a leading
        // zero as octal
        mpq_class q(mpz_class(s_.substr(start, pos_ - start), 10));
        if (!eof() && peek() == '/') {
            ++pos_;
            size_t dstart = pos_;
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            if (pos_ == dstart) throw ParseError("expected a denominator", col());
            mpq_class den(mpz_class(s_.substr(dstart, pos_ - dstart), 10));
            if (den == 0) throw ParseError("zero denominator", static_cast<int>(dstart) + 1);
            q /= den;
        }
        q.canonicalize();
        return q;
    }

    Term parse_term(bool negate) {
        Term t;
        t.c = negate ? mpq_class(-1) : mpq_class(1);
        bool have_factor = false;
        for (;;) {
            skip_ws();
            if (eof()) break;
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                t.c *= parse_number();
                have_factor = true;
            } else if (c == 'x' || c == 'y') {
                ++pos_;
                int e = 1;
                skip_ws();
                if (!eof() && peek() == '^') {
                    ++pos_;
                    e = parse_nat();
                }
                (c == 'x' ? t.xe : t.ye) += e;
                have_factor = true;
            } else {
                break;
            }
            skip_ws();
            if (!eof() && peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!have_factor) throw ParseError("expected a term", col());
        return t;
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace

BinaryForm BinaryForm::parse(FieldSpec field, const std::string& text, int expected_degree) {
    std::vector<Term> terms = FormParser(text).parse();

    int degree = expected_degree;
    for (const Term& t : terms) {
        if (t.c == 0) continue;
        int total = t.xe + t.ye;
        if (degree < 0)
            degree = total;
        else if (total != degree)
            throw ParseError("term of degree " + std::to_string(total) +
                                 " in a form of degree " + std::to_string(degree),
                             1);
    }
    if (degree < 0) degree = 0;  // all terms vanished

    BinaryForm f(field, degree);
    for (const Term& t : terms) {
        if (t.c == 0) continue;
        int j = t.ye;
        f.set_coeff(j, f.coeff(j) + Scalar(field, t.c));
    }
    return f;
}

namespace {

// Number of leading (j = 0 side) zero coefficients = y-valuation; trailing
// zeros = x-valuation.
int y_valuation(const BinaryForm& f) {
    for (int j = 0; j <= f.degree(); ++j)
        if (!f.coeff(j).is_zero()) return j;
    return f.degree() + 1;
}

int x_valuation(const BinaryForm& f) {
    for (int j = f.degree(); j >= 0; --j)
        if (!f.coeff(j).is_zero()) return f.degree() - j;
    return f.degree() + 1;
}

// Univariate polynomials over the field as coefficient vectors, index =
// exponent; used only by the gcd below.
using Poly = std::vector<Scalar>;

int poly_deg(const Poly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (!p[i].is_zero()) return i;
    return -1;
}

Poly poly_rem(Poly a, const Poly& b) {
    int db = poly_deg(b);
    Scalar lead = b[db].inverse();
    for (int da = poly_deg(a); da >= db; da = poly_deg(a)) {
        Scalar f = a[da] * lead;
        for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
    }
    return a;
}

}  // namespace

BinaryForm form_gcd(const BinaryForm& a, const BinaryForm& b) {
    FieldSpec field = a.field();
    if (a.is_zero() && b.is_zero()) return BinaryForm(field, 0);
    if (a.is_zero()) return form_gcd(b, a);

    int ax = x_valuation(a), ay = y_valuation(a);
    int gx, gy;
    Poly u, v;
    auto dehom = [&](const BinaryForm& f, int fx, int fy) {
        // strip x^fx y^fy, then substitute y = 1
        Poly p;
        int core = f.degree() - fx - fy;
        p.assign(core + 1, Scalar::zero(field));
        for (int j = fy; j <= f.degree() - fx; ++j) p[f.degree() - fx - j] = f.coeff(j);
        return p;
    };

    if (b.is_zero()) {
        gx = ax;
        gy = ay;
        u = dehom(a, ax, ay);
        v.clear();
    } else {
        int bx = x_valuation(b), by = y_valuation(b);
        gx = std::min(ax, bx);
        gy = std::min(ay, by);
        u = dehom(a, ax, ay);
        v = dehom(b, bx, by);
    }

    while (poly_deg(v) >= 0) {
        Poly r = poly_rem(u, v);
        u = v;
        v = r;
    }
    int du = poly_deg(u);
    Scalar lead = u[du].inverse();

    // Re-homogenize u (degree du, full support at x^du since the core parts
    // had nonzero constant terms) and restore the monomial factor.
    BinaryForm g(field, gx + gy + du);
    for (int i = 0; i <= du; ++i) g.set_coeff(gy + (du - i), u[i] * lead);
    return g;
}

BinaryForm form_det(const std::vector<std::vector<BinaryForm>>& m) {
    int k = static_cast<int>(m.size());
    if (k == 0) throw std::invalid_argument("determinant of empty matrix");
    FieldSpec field = m[0][0].field();

    // Laplace expansion along columns, memoized on the set of used rows
    // (which determines the column).
    std::map<unsigned, BinaryForm> memo;
    std::function<BinaryForm(int, unsigned)> det = [&](int c, unsigned used) -> BinaryForm {
        if (c == k) return BinaryForm::constant(field, Scalar::one(field));
        auto it = memo.find(used);
        if (it != memo.end()) return it->second;
        int rem_deg = 0;
        for (int j = c; j < k; ++j) rem_deg += m[0][j].degree();
        BinaryForm acc(field, rem_deg);
        int sign_toggle = 0;
        for (int rI = 0; rI < k; ++rI) {
            if (used & (1u << rI)) continue;
            const BinaryForm& e = m[rI][c];
            if (!e.is_zero()) {
                BinaryForm contrib = e * det(c + 1, used | (1u << rI));
                acc = (sign_toggle % 2 == 0) ? acc + contrib : acc - contrib;
            }
            ++sign_toggle;
        }
        memo.emplace(used, acc);
        return acc;
    };
    return det(0, 0u);
}

ModuliParams ModuliParams::checked(int n, int r, int d) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (r < 0 || r > n - 1) throw std::invalid_argument("r must satisfy 0 <= r <= n-1");
    if (d < 0) throw std::invalid_argument("d must be >= 0");
    return ModuliParams{n, r, d};
}

int ModuliParams::ceil_d_s() const { return (d + s() - 1) / s(); }

int basis_index(int n, int m, int i, int j) {
    if (i < 0 || i >= n) throw std::out_of_range("vector index out of range");
    if (j < 0 || j > m) throw std::out_of_range("monomial index out of range");
    return i * (m + 1) + j;
}

int vh_index(int n, int m, int t, int k) {
    if (t < 0 || t > 1) throw std::out_of_range("H index out of range");
    if (k < 0 || k >= n * (m + 1)) throw std::out_of_range("V_m index out of range");
    return t * n * (m + 1) + k;
}

ExactMatrix jm_matrix(FieldSpec field, int n, int m) {
    if (m <= 0) throw std::domain_error("jm_matrix requires m >= 1");
    ExactMatrix J(field, 2 * n * (m + 1), n * m);
    Scalar one = Scalar::one(field);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m - 1; ++j) {
            int col = basis_index(n, m - 1, i, j);
            // e_i x^(m-1-j) y^j |-> e_i x^(m-j) y^j (x) y - e_i x^(m-1-j) y^(j+1) (x) x
            J.set(vh_index(n, m, 1, basis_index(n, m, i, j)), col, one);
            J.set(vh_index(n, m, 0, basis_index(n, m, i, j + 1)), col, -one);
        }
    return J;
}

ExactMatrix km_matrix(FieldSpec field, int n, int m) {
    if (m <= 0) throw std::domain_error("km_matrix requires m >= 1");
    ExactMatrix K(field, n * (m + 1), 2 * n * m);
    Scalar one = Scalar::one(field);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m - 1; ++j) {
            int src = basis_index(n, m - 1, i, j);
            // (x)x^dual: -y * (e_i x^(m-1-j) y^j); (x)y^dual: +x * same
            K.set(basis_index(n, m, i, j + 1), src, -one);
            K.set(basis_index(n, m, i, j), n * m + src, one);
        }
    return K;
}

ExactMatrix evaluation_matrix(FieldSpec field, int n, int m) {
    if (m < 0) throw std::domain_error("evaluation_matrix requires m >= 0");
    ExactMatrix E(field, n * (m + 2), 2 * n * (m + 1));
    Scalar one = Scalar::one(field);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) {
            int k = basis_index(n, m, i, j);
            E.set(basis_index(n, m + 1, i, j), vh_index(n, m, 0, k), one);      // * x
            E.set(basis_index(n, m + 1, i, j + 1), vh_index(n, m, 1, k), one);  // * y
        }
    return E;
}

}  // namespace quotmmp
