#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "quotmmp/model.hpp"

namespace quotmmp {

// Streams every k-dimensional subspace of F_q^N exactly once as a canonical
// RREF basis matrix, ordered by lexicographic pivot pattern and then by the
// free entries. q must be a prime <= 7, and the subspace count must stay
// under the cap.
class SubspaceEnumerator {
public:
    SubspaceEnumerator(int k, int N, long q, const mpz_class& cap);

    static mpz_class count(int k, int N, long q);

    // Fills `out` with the next subspace basis; false when exhausted.
    bool next(ExactMatrix& out);

    const FieldSpec& field() const { return field_; }

private:
    void fill(ExactMatrix& out) const;
    bool advance();

    int k_, N_;
    long q_;
    FieldSpec field_;
    std::vector<int> pivots_;
    std::vector<std::pair<int, int>> free_positions_;
    std::vector<long> free_values_;
    bool done_ = false;
    bool fresh_pattern_ = true;
};

struct CensusOptions {
    mpz_class cap{10000000};  // refuse enumerations beyond this many objects
    int threads = 1;
    bool direct_count = false;  // also count R_m pairs by double enumeration
};

// Exhaustive classification of G_m(F_q) by stratum index.
struct CensusResult {
    ModuliParams params;
    int m = 0;
    long q = 0;

    mpz_class total;                      // |G_m(F_q)|
    std::map<int, mpz_class> counts;      // pr_2 index (pr_1 index at the bottom level)
    std::map<int, mpz_class> counts_pr1;  // pr_1 index, always computed
    long agreement_failures = 0;          // two-sided index mismatches (must be 0)
    int max_index = 0;                    // largest nonnegative index observed

    bool bottom_level = false;            // m = ceil(d/s) - 1, pr_2 undefined
    std::optional<mpz_class> rm_stratified;  // |R_m(F_q)| via pr_2 fiber sums
    std::optional<mpz_class> rm_direct;      // |R_m(F_q)| by pair enumeration
};

CensusResult census(const ModuliParams& params, int m, long q,
                    const CensusOptions& opts = {});

// Two independent computations of |R_{m+1}(F_q)|: a pr_1-stratified sum over
// G_m and the pr_2-stratified census at level m+1. At the bottom level also
// checks that every occupied pr_1 fiber has more than one point.
struct Pr1CrossCheck {
    CensusResult level_m;
    mpz_class pr1_stratified;                  // over G_m with pr_1 fibers
    std::optional<mpz_class> next_level_count; // census(m+1) stratified count
    bool counts_agree = false;
    bool fibers_nontrivial = false;  // bottom level: every fiber has > 1 point
};

Pr1CrossCheck cross_check_pr1(const ModuliParams& params, int m, long q,
                              const CensusOptions& opts = {});

}  // namespace quotmmp
