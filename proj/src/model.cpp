#include "quotmmp/model.hpp"

#include <stdexcept>

#include "quotmmp/point.hpp"

namespace quotmmp {

GrassmannPoint::GrassmannPoint(ModuliParams params, int level, const ExactMatrix& spanning_rows)
    : params_(params), level_(level), basis_(FieldSpec::rationals(), 0, 0) {
    if (level < params.ceil_d_s() - 1)
        throw std::domain_error("level below ceil(d/s) - 1");
    int expected = params.gm_subspace_dim(level);
    if (expected < 0) throw std::domain_error("(level+1)s - d is negative");
    if (spanning_rows.cols() != params.dim_Vm(level))
        throw std::invalid_argument("spanning rows have wrong ambient dimension");
    RrefResult r = rref(spanning_rows);
    if (r.rank != expected)
        throw std::domain_error("subspace dimension " + std::to_string(r.rank) +
                                " differs from (m+1)s - d = " + std::to_string(expected));
    std::vector<int> keep(r.rank);
    for (int i = 0; i < r.rank; ++i) keep[i] = i;
    basis_ = r.matrix.take_rows(keep);
}

bool GrassmannPoint::operator==(const GrassmannPoint& o) const {
    return params_ == o.params_ && level_ == o.level_ && basis_ == o.basis_;
}

mpz_class FiberShape::point_count(const mpz_class& q) const {
    if (quotient > ambient) return 0;
    return gaussian_binomial(ambient - quotient, ambient, q);
}

GrassmannPoint gm_point(const SheafMapPoint& pt, int m) {
    // h0_subspace already enforces a_j <= m+1 and the dimension (m+1)s - d;
    // it reports a shortfall as an injectivity failure, which here means the
    // point is outside the domain of g_m.
    try {
        return h0_subspace(pt, m);
    } catch (const std::domain_error& e) {
        throw std::domain_error(std::string(e.what()) +
                                "; point outside the domain of g_m at level " + std::to_string(m));
    }
}

RmPoint rm_point(const SheafMapPoint& pt, int m) {
    StarCheck star = check_star(pt, m);
    if (!star.ok)
        throw std::domain_error("condition (*_" + std::to_string(m) + ") fails: " + star.detail);
    RmPoint p{m, gm_point(pt, m - 1), gm_point(pt, m)};
    if (!verify_rm(p)) throw std::logic_error("R_m vanishing failed on a (*_m) point");
    return p;
}

namespace {

// Rows spanning K (x) H inside V_m (x) H, x-block then y-block.
ExactMatrix tensor_H_rows(const ExactMatrix& basis, int n, int m) {
    int dim = n * (m + 1);
    ExactMatrix out(basis.field(), 2 * basis.rows(), 2 * dim);
    for (int r = 0; r < basis.rows(); ++r)
        for (int c = 0; c < dim; ++c) {
            out.set(2 * r, vh_index(n, m, 0, c), basis.at(r, c));
            out.set(2 * r + 1, vh_index(n, m, 1, c), basis.at(r, c));
        }
    return out;
}

// Rows = images of the low basis under j_m, as vectors in V_m (x) H.
ExactMatrix jm_image_rows(const ExactMatrix& low_basis, FieldSpec field, int n, int m) {
    return low_basis * jm_matrix(field, n, m).transposed();
}

// Images of the basis rows under multiplication V_m -> V_{m+1} by x and y;
// this is k_{m+1} restricted to K (x) H^dual up to signs, which do not
// affect ranks.
ExactMatrix k_image_rows(const ExactMatrix& basis, int n, int m) {
    ExactMatrix out(basis.field(), 2 * basis.rows(), n * (m + 2));
    for (int r = 0; r < basis.rows(); ++r)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= m; ++j) {
                const Scalar& v = basis.at(r, basis_index(n, m, i, j));
                if (v.is_zero()) continue;
                // row 2r: -y * b ; row 2r+1: x * b
                out.set(2 * r, basis_index(n, m + 1, i, j + 1), -v);
                out.set(2 * r + 1, basis_index(n, m + 1, i, j), v);
            }
    return out;
}

}  // namespace

bool verify_rm(const RmPoint& p) {
    const ModuliParams& params = p.low.params();
    if (!(params == p.high.params())) throw std::domain_error("R_m pair parameter mismatch");
    if (p.low.level() != p.m - 1 || p.high.level() != p.m)
        throw std::domain_error("R_m pair levels do not match m-1, m");
    if (p.low.dim() == 0) return true;  // vacuous, covers m = 0 with V_{-1} = 0
    int n = params.n;
    ExactMatrix highH = tensor_H_rows(p.high.basis(), n, p.m);
    ExactMatrix images = jm_image_rows(p.low.basis(), p.high.basis().field(), n, p.m);
    int base = 2 * p.high.dim();
    return rank(ExactMatrix::vstack(highH, images)) == base;
}

StratumClassifier::StratumClassifier(FieldSpec field, ModuliParams params, int m)
    : field_(field), params_(params), m_(m) {
    if (m < params.ceil_d_s() - 1)
        throw std::domain_error("stratum classification needs level >= ceil(d/s) - 1");
    pr2_defined_ = m >= params.ceil_d_s();
    if (pr2_defined_ && m >= 1) jmT_ = jm_matrix(field, params.n, m).transposed();
}

int StratumClassifier::index_pr2(const ExactMatrix& basis) const {
    if (!pr2_defined_) throw std::domain_error("pr_2 index needs level >= ceil(d/s)");
    if (m_ == 0) return 0;  // d = 0 here, and V_{-1} = 0 makes the composite zero
    ExactMatrix kH = tensor_H_rows(basis, params_.n, m_);
    // rank of V_{m-1} -> (V_m/K)(x)H = rank(stack) - dim K(x)H
    ExactMatrix stack = ExactMatrix::vstack(kH, jmT_.value());
    int composite_rank = rank(stack) - 2 * basis.rows();
    return m_ * params_.r + params_.d - composite_rank;
}

int StratumClassifier::index_pr1(const ExactMatrix& basis) const {
    int s = params_.s();
    int generic = std::min(2 * ((m_ + 1) * s - params_.d), (m_ + 2) * s - params_.d);
    int rk = basis.rows() == 0 ? 0 : rank(k_image_rows(basis, params_.n, m_));
    return generic - rk;
}

bool StratumClassifier::rm_vanishing(const ExactMatrix& low, const ExactMatrix& high) const {
    if (low.rows() == 0) return true;
    ExactMatrix highH = tensor_H_rows(high, params_.n, m_);
    ExactMatrix images = jm_image_rows(low, field_, params_.n, m_);
    return rank(ExactMatrix::vstack(highH, images)) == 2 * high.rows();
}

int stratum_index_pr2(const GrassmannPoint& K) {
    StratumClassifier cls(K.basis().field(), K.params(), K.level());
    return cls.index_pr2(K.basis());
}

int stratum_index_pr1(const GrassmannPoint& K) {
    StratumClassifier cls(K.basis().field(), K.params(), K.level());
    return cls.index_pr1(K.basis());
}

int stratum_index_bound(const ModuliParams& params, int m) {
    int c = params.ceil_d_s();
    if (m == c - 1) {
        int l = params.l();
        if (l == 0) return 0;
        return l - (l + c - 1) / c;  // l - ceil(l / ceil(d/s))
    }
    return params.d / (m + 1);
}

StratumProfile profile_for_index(const ModuliParams& params, int m, int i) {
    int c = params.ceil_d_s();
    if (m < c - 1) throw std::domain_error("no stratification below level ceil(d/s) - 1");
    if (i < 0) throw std::domain_error("stratum index must be nonnegative");
    if (i > stratum_index_bound(params, m))
        throw std::domain_error("empty stratum: index " + std::to_string(i) + " exceeds bound " +
                                std::to_string(stratum_index_bound(params, m)));
    StratumProfile prof;
    prof.m = m;
    prof.index = i;
    int n = params.n, r = params.r, s = params.s(), d = params.d, l = params.l();
    if (m == c - 1) {
        prof.stratum_dim = static_cast<long>(n) * ((c - 1) * l - c * i) +
                           static_cast<long>(n - l + i) * (l - i);
        prof.pr2_fiber = std::nullopt;
        prof.pr1_fiber = FiberShape{(c + 1) * n - 2 * l + i, (c + 1) * r + d};
    } else {
        prof.stratum_dim = static_cast<long>(n) * (d - (m + 1) * i) +
                           static_cast<long>(r + i) * (s - i);
        prof.pr2_fiber = FiberShape{m * s - d + i, m * s - d};
        prof.pr1_fiber = FiberShape{(m + 2) * r + d + i, (m + 2) * r + d};
    }
    return prof;
}

StratumProfile fiber_profile(const GrassmannPoint& K) {
    const ModuliParams& params = K.params();
    int m = K.level();
    StratumClassifier cls(K.basis().field(), params, m);
    int i1 = cls.index_pr1(K.basis());
    int i = i1;
    if (cls.has_pr2()) {
        int i2 = cls.index_pr2(K.basis());
        if ((i1 >= 0 || i2 >= 0) && i1 != i2)
            throw std::logic_error("stratum index mismatch: pr_1 gives " + std::to_string(i1) +
                                   ", pr_2 gives " + std::to_string(i2));
        i = i2;
    }
    if (i < 0)
        throw std::domain_error("point lies outside the image (stratum index " +
                                std::to_string(i) + ")");
    return profile_for_index(params, m, i);
}

}  // namespace quotmmp
