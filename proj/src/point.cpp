#include "quotmmp/point.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace quotmmp {

SheafMapPoint::SheafMapPoint(ModuliParams params, FieldSpec field,
                             std::vector<int> column_degrees,
                             std::vector<std::vector<BinaryForm>> entries)
    : params_(params), field_(field), degrees_(std::move(column_degrees)),
      entries_(std::move(entries)) {
    int s = params_.s();
    if (static_cast<int>(degrees_.size()) != s)
        throw std::invalid_argument("expected " + std::to_string(s) + " column degrees");
    for (int a : degrees_)
        if (a < 0) throw std::invalid_argument("column degrees must be nonnegative");
    if (static_cast<int>(entries_.size()) != params_.n)
        throw std::invalid_argument("expected " + std::to_string(params_.n) + " rows");
    for (const auto& row : entries_) {
        if (static_cast<int>(row.size()) != s)
            throw std::invalid_argument("expected " + std::to_string(s) + " columns");
        for (int j = 0; j < s; ++j) {
            if (!(row[j].field() == field_))
                throw std::invalid_argument("entry field does not match the point field");
            if (row[j].degree() != degrees_[j])
                throw std::invalid_argument("entry degree " + std::to_string(row[j].degree()) +
                                            " does not match column degree " +
                                            std::to_string(degrees_[j]));
        }
    }
}

std::string SheafMapPoint::str() const {
    std::ostringstream out;
    for (int i = 0; i < params_.n; ++i) {
        out << "[";
        for (int j = 0; j < params_.s(); ++j) out << (j ? ", " : "") << entries_[i][j].str();
        out << "]\n";
    }
    return out.str();
}

std::vector<std::vector<int>> row_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    if (k > n) return out;
    for (;;) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

int complement_sign(const std::vector<int>& subset, int n) {
    std::vector<bool> in(n, false);
    for (int i : subset) in[i] = true;
    std::vector<int> perm(subset);
    for (int i = 0; i < n; ++i)
        if (!in[i]) perm.push_back(i);
    int inversions = 0;
    for (size_t a = 0; a < perm.size(); ++a)
        for (size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

std::vector<BinaryForm> pluecker_point(const SheafMapPoint& pt) {
    PointDiagnostics diag = validate(pt);
    if (!diag.ok) {
        std::string msg = "invalid point:";
        for (const auto& v : diag.violations) msg += " " + v + ";";
        throw std::domain_error(msg);
    }
    const ModuliParams& params = pt.params();
    int s = params.s();
    std::vector<BinaryForm> minors;
    for (const auto& rows : row_subsets(params.n, s)) {
        std::vector<std::vector<BinaryForm>> sub(s);
        for (int a = 0; a < s; ++a) {
            sub[a].reserve(s);
            for (int j = 0; j < s; ++j) sub[a].push_back(pt.entry(rows[a], j));
        }
        minors.push_back(form_det(sub));
    }
    return minors;
}

PointDiagnostics validate(const SheafMapPoint& pt) {
    PointDiagnostics diag;
    const std::vector<int>& a = pt.column_degrees();
    int sum = std::accumulate(a.begin(), a.end(), 0);
    if (sum != pt.params().d) {
        diag.ok = false;
        diag.violations.push_back("column degrees sum to " + std::to_string(sum) +
                                  ", expected d = " + std::to_string(pt.params().d));
    }
    if (!std::is_sorted(a.rbegin(), a.rend())) {
        diag.ok = false;
        diag.violations.push_back("column degrees are not nonincreasing");
    }

    // Generic injectivity: some maximal minor must be a nonzero form.
    int s = pt.params().s();
    bool some_nonzero = false;
    for (const auto& rows : row_subsets(pt.params().n, s)) {
        std::vector<std::vector<BinaryForm>> sub(s);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) sub[i].push_back(pt.entry(rows[i], j));
        if (!form_det(sub).is_zero()) {
            some_nonzero = true;
            break;
        }
    }
    if (!some_nonzero) {
        diag.ok = false;
        diag.violations.push_back("every maximal minor vanishes (map not injective)");
    }
    return diag;
}

namespace {

// Spanning rows of the image of H^0(E(m)) -> V_m: column j contributes the
// vectors mu * (column j) for each monomial mu of degree m - a_j.
ExactMatrix section_rows(const SheafMapPoint& pt, int m) {
    const ModuliParams& params = pt.params();
    int n = params.n, s = params.s();
    int rows = 0;
    for (int j = 0; j < s; ++j) rows += std::max(0, m - pt.column_degrees()[j] + 1);
    ExactMatrix mat(pt.field(), rows, params.dim_Vm(m));
    int row = 0;
    for (int j = 0; j < s; ++j) {
        int a = pt.column_degrees()[j];
        for (int t = 0; t <= m - a; ++t, ++row) {
            // mu = x^(m-a-t) y^t
            for (int i = 0; i < n; ++i) {
                const BinaryForm& e = pt.entry(i, j);
                for (int k = 0; k <= a; ++k)
                    mat.set(row, basis_index(n, m, i, t + k), e.coeff(k));
            }
        }
    }
    return mat;
}

int h0_dimension(const SheafMapPoint& pt, int m) {
    int dim = 0;
    for (int a : pt.column_degrees()) dim += std::max(0, m - a + 1);
    return dim;
}

}  // namespace

GrassmannPoint h0_subspace(const SheafMapPoint& pt, int m) {
    const ModuliParams& params = pt.params();
    for (int a : pt.column_degrees())
        if (a > m + 1)
            throw std::domain_error("column degree " + std::to_string(a) + " exceeds m + 1 = " +
                                    std::to_string(m + 1) + " (H^1 obstruction)");
    if (m < 0) {
        // V_{-1} = 0; only legal when there are no sections at all (d = 0 fits here).
        if (h0_dimension(pt, m) != 0 || params.gm_subspace_dim(m) != 0)
            throw std::domain_error("no sections below degree 0");
        return GrassmannPoint(params, m, ExactMatrix(pt.field(), 0, 0));
    }
    ExactMatrix rows = section_rows(pt, m);
    int expected = params.gm_subspace_dim(m);
    RrefResult r = rref(rows);
    if (r.rank != expected)
        throw std::domain_error("H0-injectivity failure: section image has dimension " +
                                std::to_string(r.rank) + ", expected " + std::to_string(expected));
    return GrassmannPoint(params, m, rows);
}

StarCheck check_star(const SheafMapPoint& pt, int m) {
    const ModuliParams& params = pt.params();
    if (m < params.ceil_d_s())
        throw std::domain_error("no model R_m exists below ceil(d/s) = " +
                                std::to_string(params.ceil_d_s()));
    StarCheck out;
    out.cond_i = validate(pt).ok;

    out.cond_ii = true;
    for (int a : pt.column_degrees())
        if (a > m) out.cond_ii = false;

    // iii: injectivity of H^0(E(m)) -> V_m. Columns of degree > m contribute
    // no sections; the image rank must equal dim H^0(E(m)).
    int expected = h0_dimension(pt, m);
    ExactMatrix rows = section_rows(pt, m);
    out.cond_iii = (rank(rows) == expected);

    out.ok = out.cond_i && out.cond_ii && out.cond_iii;
    std::ostringstream detail;
    if (!out.cond_i) detail << "condition i fails (type invariants); ";
    if (!out.cond_ii) detail << "condition ii fails (some a_j > m, H^1(E(m-1)) != 0); ";
    if (!out.cond_iii) detail << "condition iii fails (H^0(E(m)) -> V_m not injective); ";
    out.detail = detail.str();
    return out;
}

std::vector<int> balanced_column_degrees(const ModuliParams& params) {
    int c = params.ceil_d_s(), l = params.l(), s = params.s();
    std::vector<int> a(s, c);
    for (int j = s - l; j < s; ++j) a[j] = c - 1;
    return a;
}

namespace {

// Coefficient layout of a degree-t vector of forms (v_1, ..., v_n):
// position i*(t+1) + k holds the coefficient of x^(t-k)y^k in v_i.
ExactMatrix transpose_system(const SheafMapPoint& pt, int t) {
    const ModuliParams& params = pt.params();
    int n = params.n, s = params.s();
    int unknowns = n * (t + 1);
    int eqs = 0;
    for (int a : pt.column_degrees()) eqs += a + t + 1;
    ExactMatrix A(pt.field(), eqs, unknowns);
    int eq0 = 0;
    for (int j = 0; j < s; ++j) {
        int a = pt.column_degrees()[j];
        // sum_i entry(i, j) * v_i = 0 in degree a + t
        for (int i = 0; i < n; ++i) {
            const BinaryForm& e = pt.entry(i, j);
            for (int k = 0; k <= a; ++k) {
                if (e.coeff(k).is_zero()) continue;
                for (int u = 0; u <= t; ++u)
                    A.set(eq0 + k + u, i * (t + 1) + u, A.at(eq0 + k + u, i * (t + 1) + u) + e.coeff(k));
            }
        }
        eq0 += a + t + 1;
    }
    return A;
}

// Rows spanning x*S + y*S inside the degree-t layout, given rows spanning S
// in the degree-(t-1) layout.
ExactMatrix lift_rows(const ExactMatrix& lower, int n, int t) {
    ExactMatrix out(lower.field(), 2 * lower.rows(), n * (t + 1));
    for (int r = 0; r < lower.rows(); ++r)
        for (int i = 0; i < n; ++i)
            for (int k = 0; k <= t - 1; ++k) {
                const Scalar& c = lower.at(r, i * t + k);
                if (c.is_zero()) continue;
                out.set(2 * r, i * (t + 1) + k, c);          // * x
                out.set(2 * r + 1, i * (t + 1) + k + 1, c);  // * y
            }
    return out;
}

}  // namespace

SheafMapPoint dualize(const SheafMapPoint& pt) {
    const ModuliParams& params = pt.params();
    int n = params.n, s = params.s(), r = params.r, d = params.d;

    std::vector<BinaryForm> minors = pluecker_point(pt);  // also validates
    BinaryForm g = minors[0];
    for (size_t i = 1; i < minors.size(); ++i) g = form_gcd(g, minors[i]);
    if (g.is_zero() || g.degree() > 0)
        throw std::domain_error(
            "quotient not locally free (gcd of maximal minors is " + g.str() +
            "); dual point undefined in R'");
    if (r == 0)
        throw std::domain_error("dualize needs r >= 1: the kernel of iota^T is zero");

    // Minimal generators of ker(iota^T), degree by degree. Generator degrees
    // are bounded by d.
    std::vector<std::pair<int, std::vector<Scalar>>> generators;  // (degree, coefficients)
    ExactMatrix prev_sol(pt.field(), 0, 0);
    for (int t = 0; t <= d && static_cast<int>(generators.size()) < r; ++t) {
        ExactMatrix sol = kernel_basis(transpose_system(pt, t));
        ExactMatrix old = t == 0 ? ExactMatrix(pt.field(), 0, n)
                                 : lift_rows(prev_sol, n, t);
        RrefResult base = rref(old);
        // Adjoin solution rows that enlarge the span of the lifted lower-degree
        // part; sol is in RREF, so the selection is canonical.
        std::vector<int> keep(base.rank);
        std::iota(keep.begin(), keep.end(), 0);
        ExactMatrix span = base.matrix.take_rows(keep);
        int current_rank = base.rank;
        for (int row = 0; row < sol.rows(); ++row) {
            ExactMatrix candidate = ExactMatrix::vstack(span, sol.take_rows({row}));
            if (rank(candidate) > current_rank) {
                span = candidate;
                ++current_rank;
                std::vector<Scalar> coeffs;
                for (int c = 0; c < sol.cols(); ++c) coeffs.push_back(sol.at(row, c));
                generators.emplace_back(t, std::move(coeffs));
            }
        }
        prev_sol = std::move(sol);
    }

    if (static_cast<int>(generators.size()) != r)
        throw std::logic_error("kernel generator extraction found " +
                               std::to_string(generators.size()) + " generators, expected " +
                               std::to_string(r));
    int total = 0;
    for (const auto& gen : generators) total += gen.first;
    if (total != d)
        throw std::logic_error("kernel generator degrees sum to " + std::to_string(total) +
                               ", expected " + std::to_string(d));

    // Columns ordered by nonincreasing degree; extraction found them in
    // nondecreasing order, so reverse. Equal-degree columns swap order,
    // which is still a fixed deterministic choice.
    std::reverse(generators.begin(), generators.end());

    ModuliParams dual_params = ModuliParams::checked(n, s, d);
    std::vector<int> degrees;
    std::vector<std::vector<BinaryForm>> entries(n);
    for (const auto& gen : generators) degrees.push_back(gen.first);
    for (int i = 0; i < n; ++i) {
        for (const auto& gen : generators) {
            int t = gen.first;
            BinaryForm f(pt.field(), t);
            for (int k = 0; k <= t; ++k) f.set_coeff(k, gen.second[i * (t + 1) + k]);
            entries[i].push_back(f);
        }
    }
    return SheafMapPoint(dual_params, pt.field(), std::move(degrees), std::move(entries));
}

}  // namespace quotmmp
