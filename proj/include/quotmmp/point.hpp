#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quotmmp/forms.hpp"
#include "quotmmp/model.hpp"

namespace quotmmp {

// A sheaf map iota : E -> V (x) O with an explicit splitting
// E = (+)_j O(-a_j), stored as the n x s matrix of binary forms whose column
// j is homogeneous of degree a_j. Immutable after construction.
class SheafMapPoint {
public:
    // Throws on shape violations (sizes, entry degrees, field mixing).
    // Mathematical invariants are reported by validate() instead.
    SheafMapPoint(ModuliParams params, FieldSpec field, std::vector<int> column_degrees,
                  std::vector<std::vector<BinaryForm>> entries);

    const ModuliParams& params() const { return params_; }
    const FieldSpec& field() const { return field_; }
    const std::vector<int>& column_degrees() const { return degrees_; }
    const BinaryForm& entry(int i, int j) const { return entries_[i][j]; }

    std::string str() const;

private:
    ModuliParams params_;
    FieldSpec field_;
    std::vector<int> degrees_;
    std::vector<std::vector<BinaryForm>> entries_;
};

struct PointDiagnostics {
    bool ok = true;
    std::vector<std::string> violations;
};

// Checks the degree bookkeeping (sum of column degrees = d, nonincreasing
// order) and generic injectivity (some maximal minor is a nonzero form).
PointDiagnostics validate(const SheafMapPoint& pt);

// The image of H^0(E(m)) -> V_m in canonical RREF. Requires a_j <= m + 1 for
// every column; throws on an injectivity shortfall (dimension below
// (m+1)s - d).
GrassmannPoint h0_subspace(const SheafMapPoint& pt, int m);

struct StarCheck {
    bool ok = false;
    bool cond_i = false;    // type invariants (rank/degree bookkeeping, injectivity)
    bool cond_ii = false;   // H^1(E(m-1)) = 0, i.e. a_j <= m for all j
    bool cond_iii = false;  // H^0(E(m)) -> V_m injective
    std::string detail;
};

// Condition (*_m). Requires m >= ceil(d/s); below that no model exists and a
// domain error is thrown.
StarCheck check_star(const SheafMapPoint& pt, int m);

// The dual point on the R' side (parameters (n, s, d)): an n x r matrix
// whose columns are the canonical minimal generators of ker(iota^T), found
// degree by degree. Requires coker(iota) locally free, equivalently that the
// gcd of the maximal minors of iota is a nonzero constant.
SheafMapPoint dualize(const SheafMapPoint& pt);

// The C(n, s) maximal minors of the matrix, indexed by the s-subsets of rows
// in lexicographic order; never all zero for a valid point.
std::vector<BinaryForm> pluecker_point(const SheafMapPoint& pt);

// The lexicographically ordered k-subsets of {0, ..., n-1}.
std::vector<std::vector<int>> row_subsets(int n, int k);

// Sign of the permutation (S, complement of S) of {0, ..., n-1}; pairs each
// Pluecker coordinate with its complementary dual coordinate.
int complement_sign(const std::vector<int>& subset, int n);

// Column degrees of the balanced splitting: s - l columns of degree
// ceil(d/s) followed by l of degree ceil(d/s) - 1.
std::vector<int> balanced_column_degrees(const ModuliParams& params);

}  // namespace quotmmp
