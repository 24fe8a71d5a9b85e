#pragma once

#include <optional>
#include <string>

#include "quotmmp/forms.hpp"

namespace quotmmp {

class SheafMapPoint;

// A point of G_m = Gr((m+1)s - d, V_m): a subspace in canonical reduced
// row echelon form. Level -1 is the zero space V_{-1} (used when d = 0).
class GrassmannPoint {
public:
    // Canonicalizes the spanning rows via RREF; the row space must have
    // dimension exactly (level+1)s - d.
    GrassmannPoint(ModuliParams params, int level, const ExactMatrix& spanning_rows);

    const ModuliParams& params() const { return params_; }
    int level() const { return level_; }
    const ExactMatrix& basis() const { return basis_; }
    int dim() const { return basis_.rows(); }

    bool operator==(const GrassmannPoint& o) const;

private:
    ModuliParams params_;
    int level_;
    ExactMatrix basis_;
};

// A point of R_m in G_{m-1} x G_m: the pair (K_{m-1}, K_m). The defining
// vanishing j_m(low) subset of high (x) H is checked by verify_rm.
struct RmPoint {
    int m = 0;
    GrassmannPoint low;
    GrassmannPoint high;
};

struct FiberShape {
    int ambient = 0;   // fiber = Grassmannian of `quotient`-dim quotients
    int quotient = 0;  // of an `ambient`-dim space
    bool operator==(const FiberShape&) const = default;

    bool is_point() const { return ambient == quotient || quotient == 0; }
    mpz_class point_count(const mpz_class& q) const;
};

struct StratumProfile {
    int m = 0;
    int index = 0;
    long stratum_dim = 0;
    std::optional<FiberShape> pr2_fiber;  // absent at the bottom level
    FiberShape pr1_fiber;
};

// g_m at the point level: h0_subspace wrapped at level m, with the dimension
// requirement (m+1)s - d enforced. Requires a_j <= m + 1 for all j.
GrassmannPoint gm_point(const SheafMapPoint& pt, int m);

// (g_{m-1}, g_m). Requires check_star(pt, m); the vanishing invariant holds
// by construction and is re-verified.
RmPoint rm_point(const SheafMapPoint& pt, int m);

// True iff j_m maps the low subspace into high (x) H, i.e. the composite
// into (V_m / high) (x) H vanishes.
bool verify_rm(const RmPoint& p);

// Rank defect of V_{m-1} -> (V_m / K) (x) H below the generic value mr + d.
// Nonnegative exactly when K lies in the image of pr_2 : R_m -> G_m.
// Requires level >= ceil(d/s).
int stratum_index_pr2(const GrassmannPoint& K);

// Rank defect of k_{m+1} restricted to K (x) H^dual below the generic value
// min(2((m+1)s - d), (m+2)s - d). Nonnegative exactly when K lies in the
// image of pr_1 : R_{m+1} -> G_m. Requires level >= ceil(d/s) - 1.
int stratum_index_pr1(const GrassmannPoint& K);

// Stratum data for a point with nonnegative index: the index from both
// projections (which must agree), the stratum dimension, and the fiber
// shapes of pr_1 and pr_2 over it.
StratumProfile fiber_profile(const GrassmannPoint& K);

// The same shape data from the parameters alone; throws "empty stratum" for
// an index above the emptiness bound.
StratumProfile profile_for_index(const ModuliParams& params, int m, int i);

// Largest occupied stratum index at level m: floor(d/(m+1)), or the
// bottom-level bound l - ceil(l / ceil(d/s)) at m = ceil(d/s) - 1.
int stratum_index_bound(const ModuliParams& params, int m);

// Precomputes the structural matrices for classifying many level-m subspaces
// (the census path). Pure and safe to share across threads.
class StratumClassifier {
public:
    StratumClassifier(FieldSpec field, ModuliParams params, int m);

    int index_pr2(const ExactMatrix& rref_basis) const;  // requires m >= ceil(d/s)
    int index_pr1(const ExactMatrix& rref_basis) const;
    bool has_pr2() const { return pr2_defined_; }

    // Containment test for the R_m vanishing on raw RREF bases.
    bool rm_vanishing(const ExactMatrix& low, const ExactMatrix& high) const;

private:
    FieldSpec field_;
    ModuliParams params_;
    int m_;
    bool pr2_defined_ = false;
    std::optional<ExactMatrix> jmT_;  // rows = j_m images of the V_{m-1} basis
};

}  // namespace quotmmp
