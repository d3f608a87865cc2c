#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "schreierlab/action.hpp"
#include "schreierlab/errors.hpp"
#include "schreierlab/multiset.hpp"
#include "schreierlab/point_set.hpp"
#include "schreierlab/rng.hpp"

namespace schreierlab {

// Every Monte Carlo verifier reports the empirical frequency, the analytic
// bound, and a 3-sigma margin -- never a bare pass/fail. "With high
// probability" has no finite-n meaning, so this is the honest desk-scale
// reading of each lemma.
struct BoundCheck {
    double empirical = 0;
    double analytic_bound = 0;
    std::uint64_t trials = 0;
    double std_error = 0;
    bool satisfied = false;

    static BoundCheck from_counts(std::uint64_t successes, std::uint64_t trials,
                                  double analytic_bound) {
        BoundCheck c;
        c.trials = trials;
        c.analytic_bound = analytic_bound;
        c.empirical = trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
        c.std_error = trials == 0 ? 0.0 : std::sqrt(c.empirical * (1.0 - c.empirical) /
                                                    static_cast<double>(trials));
        c.satisfied = c.empirical >= analytic_bound - 3.0 * c.std_error;
        return c;
    }
};

namespace detail {

// X^A as a bitmap, X given as a point list.
inline PointSet image_of_points(const ActionInstance& instance,
                                const std::vector<std::uint32_t>& points,
                                const std::vector<GroupElement>& elements) {
    PointSet out(instance.degree());
    for (const auto& g : elements)
        for (const auto x : points) out.insert(instance.act(g, x));
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Exact double-counting identity: sum_g |X^g cap Y| = (|G|/n) |X| |Y|.
// ---------------------------------------------------------------------------

struct DoubleCountResult {
    std::uint64_t lhs_sum = 0;
    std::uint64_t rhs = 0;
    std::uint64_t stabilizer_order = 0;  // |G| / n
    bool equal = false;
};

inline DoubleCountResult double_count_check(const ActionInstance& instance, const PointSet& x,
                                            const PointSet& y, std::uint64_t budget) {
    const auto order = instance.group_order();
    if (!order) throw OrderUnknown("double_count_check requires the exact group order");
    const auto elements = instance.enumerate_group(budget);  // throws BudgetExceeded
    const auto xs = x.to_vector();
    DoubleCountResult result;
    result.stabilizer_order = *order / instance.degree();
    for (const auto& g : elements) {
        std::uint64_t hits = 0;
        for (const auto px : xs)
            if (y.contains(instance.act(g, px))) ++hits;
        result.lhs_sum += hits;
    }
    result.rhs = result.stabilizer_order * x.size() * y.size();
    result.equal = result.lhs_sum == result.rhs;
    return result;
}

// ---------------------------------------------------------------------------
// One-step growth: P(|X^A| >= k(|X| - r)) >= (1 - 1/s)^k, valid under
// n >= k s |X|^2 / r.
// ---------------------------------------------------------------------------

struct OneStepResult {
    BoundCheck check;
    bool precondition_met = false;  // n >= k s |X|^2 / r
    double threshold = 0;           // k (|X| - r)
};

inline OneStepResult one_step_growth_check(const ActionInstance& instance, const PointSet& x,
                                           std::uint64_t k, double r, double s,
                                           std::uint64_t trials, SeededRng& rng,
                                           bool allow_unmet_preconditions = false) {
    if (k < 1 || trials < 1 || !(r > 0.0) || !(s > 0.0))
        throw PreconditionUnmet("one_step_growth_check requires k >= 1, trials >= 1, r > 0, s > 0");
    const double n = static_cast<double>(instance.degree());
    const double xsize = static_cast<double>(x.size());
    const bool pre = n >= static_cast<double>(k) * s * xsize * xsize / r;
    if (!pre && !allow_unmet_preconditions)
        throw PreconditionUnmet("growth condition n >= k*s*|X|^2/r fails; pass "
                                "allow-unmet-preconditions to run anyway");
    const auto xs = x.to_vector();
    const double threshold = static_cast<double>(k) * (xsize - r);
    std::uint64_t successes = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto a = sample_multiset(instance, k, rng);
        const auto image = detail::image_of_points(instance, xs, a.elements);
        if (static_cast<double>(image.size()) >= threshold - 1e-9) ++successes;
    }
    OneStepResult result;
    result.precondition_met = pre;
    result.threshold = threshold;
    result.check = BoundCheck::from_counts(successes, trials, std::pow(1.0 - 1.0 / s, static_cast<double>(k)));
    return result;
}

// ---------------------------------------------------------------------------
// Explicit growth: P(|X^A| >= sqrt(k)|X|) >= (1 - 2/k^(d-1))^k whenever
// k >= 4, d >= 2 and |X| <= n / k^d.
// ---------------------------------------------------------------------------

struct ExplicitGrowthResult {
    BoundCheck check;
    bool precondition_met = false;
    double threshold = 0;  // sqrt(k) |X|
};

inline ExplicitGrowthResult explicit_growth_check(const ActionInstance& instance, const PointSet& x,
                                                  std::uint64_t k, double d, std::uint64_t trials,
                                                  SeededRng& rng,
                                                  bool allow_unmet_preconditions = false) {
    if (trials < 1) throw PreconditionUnmet("explicit_growth_check requires trials >= 1");
    const double n = static_cast<double>(instance.degree());
    const double xsize = static_cast<double>(x.size());
    const bool pre = k >= 4 && d >= 2.0 &&
                     xsize <= n / std::pow(static_cast<double>(k), d);
    if (!pre && !allow_unmet_preconditions)
        throw PreconditionUnmet("explicit growth requires k >= 4, d >= 2 and |X| <= n/k^d; pass "
                                "allow-unmet-preconditions to run anyway");
    const auto xs = x.to_vector();
    const double threshold = std::sqrt(static_cast<double>(k)) * xsize;
    std::uint64_t successes = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto a = sample_multiset(instance, k, rng);
        const auto image = detail::image_of_points(instance, xs, a.elements);
        if (static_cast<double>(image.size()) >= threshold - 1e-9) ++successes;
    }
    const double bound =
        std::pow(1.0 - 2.0 / std::pow(static_cast<double>(k), d - 1.0), static_cast<double>(k));
    ExplicitGrowthResult result;
    result.precondition_met = pre;
    result.threshold = threshold;
    result.check = BoundCheck::from_counts(successes, trials, bound);
    return result;
}

// ---------------------------------------------------------------------------
// Fill lemma: with |X| >= n/m and k >= 4m log n, P(X^B = Omega) >= 1 - 2^(-k/m).
// The sharper union bound 1 - n(1 - |X|/n)^k holds unconditionally, and on
// any transitive action the per-point miss probability is exactly
// (1 - |X|/n)^k; both are tracked as oracles.
// ---------------------------------------------------------------------------

struct FillResult {
    BoundCheck vs_lemma;             // empirical cover frequency vs 1 - 2^(-k/m)
    double exact_union_bound = 0;    // 1 - n (1 - |X|/n)^k, clamped to [0,1]
    bool lemma_precondition_met = false;  // k >= 4 m log n
    double m = 0;                    // n / |X|
    double per_point_empirical = 0;  // miss frequency over trials * n point-events
    double per_point_exact = 0;      // (1 - |X|/n)^k
    std::uint64_t per_point_misses = 0;
    std::uint64_t trials = 0;
};

inline FillResult fill_check(const ActionInstance& instance, const PointSet& x, std::uint64_t k,
                             std::uint64_t trials, SeededRng& rng) {
    if (x.size() < 1) throw PreconditionUnmet("fill_check requires |X| >= 1");
    if (k < 1 || trials < 1) throw PreconditionUnmet("fill_check requires k >= 1 and trials >= 1");
    const double n = static_cast<double>(instance.degree());
    const auto xs = x.to_vector();
    FillResult result;
    result.trials = trials;
    result.m = n / static_cast<double>(x.size());
    result.lemma_precondition_met =
        static_cast<double>(k) >= 4.0 * result.m * std::log(n);
    const double miss_one = 1.0 - static_cast<double>(x.size()) / n;
    result.per_point_exact = std::pow(miss_one, static_cast<double>(k));
    result.exact_union_bound = std::max(0.0, 1.0 - n * result.per_point_exact);
    std::uint64_t covers = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto b = sample_multiset(instance, k, rng);
        const auto image = detail::image_of_points(instance, xs, b.elements);
        const std::uint64_t covered = image.size();
        if (covered == instance.degree()) ++covers;
        result.per_point_misses += instance.degree() - covered;
    }
    const double lemma_bound = 1.0 - std::exp2(-static_cast<double>(k) / result.m);
    result.vs_lemma = BoundCheck::from_counts(covers, trials, lemma_bound);
    result.per_point_empirical = static_cast<double>(result.per_point_misses) /
                                 (static_cast<double>(trials) * n);
    return result;
}

} // namespace schreierlab
