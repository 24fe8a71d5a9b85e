#include "quotmmp/census.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "quotmmp/errors.hpp"

namespace quotmmp {

namespace {

bool small_prime(long q) { return q == 2 || q == 3 || q == 5 || q == 7; }

std::vector<std::pair<int, int>> free_positions_for(const std::vector<int>& pivots, int N) {
    std::vector<bool> is_pivot(N, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < pivots.size(); ++i)
        for (int c = pivots[i] + 1; c < N; ++c)
            if (!is_pivot[c]) out.emplace_back(static_cast<int>(i), c);
    return out;
}

bool next_combination(std::vector<int>& cur, int n) {
    int k = static_cast<int>(cur.size());
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) return false;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    return true;
}

}  // namespace

SubspaceEnumerator::SubspaceEnumerator(int k, int N, long q, const mpz_class& cap)
    : k_(k), N_(N), q_(q), field_(FieldSpec::rationals()) {
    if (k < 0 || k > N) throw std::domain_error("subspace dimension out of range");
    if (!small_prime(q)) throw std::domain_error("enumeration supports prime q <= 7 only");
    field_ = FieldSpec::prime_field(q);
    mpz_class total = count(k, N, q);
    if (total > cap)
        throw CapExceededError("enumeration of " + total.get_str() +
                                   " subspaces exceeds the cap of " + cap.get_str(),
                               total);
    pivots_.resize(k);
    std::iota(pivots_.begin(), pivots_.end(), 0);
    free_positions_ = free_positions_for(pivots_, N);
    free_values_.assign(free_positions_.size(), 0);
}

mpz_class SubspaceEnumerator::count(int k, int N, long q) {
    return gaussian_binomial(k, N, mpz_class(q));
}

void SubspaceEnumerator::fill(ExactMatrix& out) const {
    out = ExactMatrix(field_, k_, N_);
    for (int i = 0; i < k_; ++i) out.set(i, pivots_[i], 1);
    for (size_t t = 0; t < free_positions_.size(); ++t)
        out.set(free_positions_[t].first, free_positions_[t].second, free_values_[t]);
}

bool SubspaceEnumerator::advance() {
    // odometer over the free entries, last position fastest
    for (int t = static_cast<int>(free_values_.size()) - 1; t >= 0; --t) {
        if (++free_values_[t] < q_) return true;
        free_values_[t] = 0;
    }
    if (!next_combination(pivots_, N_)) return false;
    free_positions_ = free_positions_for(pivots_, N_);
    free_values_.assign(free_positions_.size(), 0);
    return true;
}

bool SubspaceEnumerator::next(ExactMatrix& out) {
    if (done_) return false;
    if (fresh_pattern_) {
        fresh_pattern_ = false;
        fill(out);
        return true;
    }
    if (!advance()) {
        done_ = true;
        return false;
    }
    fill(out);
    return true;
}

namespace {

struct Tally {
    std::map<int, mpz_class> counts_pr2;
    std::map<int, mpz_class> counts_pr1;
    long agreement_failures = 0;

    void merge(const Tally& o) {
        for (const auto& [i, c] : o.counts_pr2) counts_pr2[i] += c;
        for (const auto& [i, c] : o.counts_pr1) counts_pr1[i] += c;
        agreement_failures += o.agreement_failures;
    }
};

// Visits every subspace whose pivot pattern index is congruent to
// `stripe` mod `stride`; the per-pattern work is independent, so striping
// partitions the enumeration.
template <typename Fn>
void visit_stripe(int k, int N, long q, int stripe, int stride, Fn&& fn) {
    FieldSpec field = FieldSpec::prime_field(q);
    std::vector<int> pivots(k);
    std::iota(pivots.begin(), pivots.end(), 0);
    long pattern_index = 0;
    do {
        if (pattern_index % stride == stripe) {
            auto free_pos = free_positions_for(pivots, N);
            std::vector<long> values(free_pos.size(), 0);
            for (;;) {
                ExactMatrix mat(field, k, N);
                for (int i = 0; i < k; ++i) mat.set(i, pivots[i], 1);
                for (size_t t = 0; t < free_pos.size(); ++t)
                    mat.set(free_pos[t].first, free_pos[t].second, values[t]);
                fn(mat);
                int t = static_cast<int>(values.size()) - 1;
                while (t >= 0 && ++values[t] == q) values[t--] = 0;
                if (t < 0) break;
            }
        }
        ++pattern_index;
    } while (next_combination(pivots, N));
}

}  // namespace

CensusResult census(const ModuliParams& params, int m, long q, const CensusOptions& opts) {
    if (m < params.ceil_d_s() - 1)
        throw std::domain_error("census needs level >= ceil(d/s) - 1");
    if (!small_prime(q)) throw std::domain_error("census supports prime q <= 7 only");

    CensusResult res;
    res.params = params;
    res.m = m;
    res.q = q;
    res.bottom_level = (m == params.ceil_d_s() - 1);

    int k = params.gm_subspace_dim(m);
    int N = params.dim_Vm(m);
    res.total = SubspaceEnumerator::count(k, N, q);
    if (res.total > opts.cap)
        throw CapExceededError("census of " + res.total.get_str() +
                                   " subspaces exceeds the cap of " + opts.cap.get_str(),
                               res.total);

    FieldSpec field = FieldSpec::prime_field(q);
    StratumClassifier cls(field, params, m);

    int threads = std::max(1, opts.threads);
    std::vector<Tally> tallies(threads);
    auto work = [&](int stripe) {
        Tally& tally = tallies[stripe];
        visit_stripe(k, N, q, stripe, threads, [&](const ExactMatrix& basis) {
            int i1 = cls.index_pr1(basis);
            tally.counts_pr1[i1] += 1;
            if (cls.has_pr2()) {
                int i2 = cls.index_pr2(basis);
                tally.counts_pr2[i2] += 1;
                if ((i1 >= 0 || i2 >= 0) && i1 != i2) ++tally.agreement_failures;
            }
        });
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    Tally merged;
    for (const Tally& t : tallies) merged.merge(t);

    res.counts_pr1 = std::move(merged.counts_pr1);
    res.counts = cls.has_pr2() ? std::move(merged.counts_pr2) : res.counts_pr1;
    res.agreement_failures = merged.agreement_failures;
    res.max_index = 0;
    for (const auto& [i, c] : res.counts)
        if (c > 0 && i > res.max_index) res.max_index = i;

    if (!res.bottom_level) {
        // |R_m(F_q)| as the Grassmannian-bundle sum over the pr_2 strata.
        mpz_class sum = 0;
        for (const auto& [i, c] : res.counts) {
            if (i < 0) continue;
            sum += c * profile_for_index(params, m, i).pr2_fiber->point_count(q);
        }
        res.rm_stratified = sum;
    }

    if (opts.direct_count && !res.bottom_level) {
        int klow = params.gm_subspace_dim(m - 1);
        int Nlow = params.dim_Vm(m - 1);
        mpz_class pairs = SubspaceEnumerator::count(klow, Nlow, q) * res.total;
        if (pairs > opts.cap)
            throw CapExceededError("pair enumeration of " + pairs.get_str() +
                                       " candidates exceeds the cap of " + opts.cap.get_str(),
                                   pairs);
        mpz_class direct = 0;
        ExactMatrix low(field, 0, 0), high(field, 0, 0);
        SubspaceEnumerator louter(klow, Nlow, q, opts.cap);
        while (louter.next(low)) {
            SubspaceEnumerator hinner(k, N, q, opts.cap);
            while (hinner.next(high))
                if (cls.rm_vanishing(low, high)) direct += 1;
        }
        res.rm_direct = direct;
    }
    return res;
}

Pr1CrossCheck cross_check_pr1(const ModuliParams& params, int m, long q,
                              const CensusOptions& opts) {
    Pr1CrossCheck out{census(params, m, q, opts), 0, std::nullopt, false, true};

    for (const auto& [i, c] : out.level_m.counts_pr1) {
        if (i < 0) continue;
        FiberShape fiber = profile_for_index(params, m, i).pr1_fiber;
        mpz_class pts = fiber.point_count(q);
        out.pr1_stratified += c * pts;
        if (out.level_m.bottom_level && c > 0 && pts <= 1) out.fibers_nontrivial = false;
    }

    try {
        CensusResult next = census(params, m + 1, q, opts);
        out.next_level_count = next.rm_stratified;
        out.counts_agree = next.rm_stratified.has_value() &&
                           *next.rm_stratified == out.pr1_stratified;
    } catch (const CapExceededError&) {
        // level m+1 too large: report the pr_1 sum alone
        out.counts_agree = false;
    }
    return out;
}

}  // namespace quotmmp
