#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schreierlab/action.hpp"
#include "schreierlab/diameter.hpp"
#include "schreierlab/errors.hpp"
#include "schreierlab/graph.hpp"
#include "schreierlab/lemmas.hpp"
#include "schreierlab/multiset.hpp"
#include "schreierlab/point_set.hpp"
#include "schreierlab/rng.hpp"
#include "schreierlab/schedule.hpp"

namespace schreierlab {

enum class GrowthMode {
    Lemma6,  // D blocks of h, condition threshold n/h^(2/eps), target n/k^(2/eps)
    Prop1,   // half-split plus C2 blocks of k^(eps^2), target n/k^(eps/2)
    Direct,  // undivided multiset grown to an explicit target
};

inline const char* to_string(GrowthMode m) {
    switch (m) {
        case GrowthMode::Lemma6: return "lemma6";
        case GrowthMode::Prop1: return "prop1";
        case GrowthMode::Direct: return "direct";
    }
    return "?";
}

struct GrowthTrace {
    GrowthMode mode = GrowthMode::Direct;
    std::vector<std::uint64_t> stage_sizes;        // stage_sizes[0] = 1 (X = {omega})
    std::optional<std::uint32_t> failure_stage;    // 1-based stage where the smallness
                                                   // condition |X| <= n/h^d failed; by the
                                                   // proof's contrapositive this certifies
                                                   // |X| > n/h^d >= target
    std::uint64_t final_size = 1;
    double target = 0;
    bool target_reached = false;
    std::uint64_t radius = 0;                      // image_union applications performed
    double epsilon = 0;
    std::uint64_t k = 0;
    std::uint64_t seed = 0;
    double analytic_floor = 0;                     // mode's probability floor, clamped to [0,1]
    std::optional<ProofSchedule> schedule;
};

namespace detail {

struct GrowthOutcome {
    GrowthTrace trace;
    PointSet sphere;
};

inline PointSet image_of_set(const ActionInstance& instance, const PointSet& x,
                             const std::vector<GroupElement>& elements) {
    PointSet out(instance.degree());
    x.for_each([&](std::uint64_t p) {
        for (const auto& g : elements) out.insert(instance.act(g, p));
    });
    return out;
}

// Apply Cor.-5 style blocks: before each block, certify and stop if the
// current sphere already beats the smallness threshold n/b^d.
inline void run_blocks(const ActionInstance& instance, GrowthOutcome& out,
                       const std::vector<GeneratorMultiset>& blocks, double condition_threshold) {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (static_cast<double>(out.sphere.size()) > condition_threshold) {
            out.trace.failure_stage = static_cast<std::uint32_t>(out.trace.stage_sizes.size());
            return;
        }
        out.sphere = image_of_set(instance, out.sphere, blocks[i].elements);
        out.trace.stage_sizes.push_back(out.sphere.size());
        out.trace.radius += 1;
    }
}

inline GrowthOutcome lemma6_trace(const ActionInstance& instance, Point omega,
                                  const GeneratorMultiset& a, double epsilon,
                                  std::optional<double> C) {
    const std::uint64_t k = a.k();
    const double n = static_cast<double>(instance.degree());
    const auto sched = proof_schedule(n, k, epsilon, C);
    if (sched.h < 4)
        throw ScheduleInfeasible("h >= 4",
                                 "lemma6 schedule block size h = " + std::to_string(sched.h) +
                                     " is below the explicit-growth minimum 4");
    GrowthOutcome out{GrowthTrace{}, PointSet(instance.degree())};
    out.sphere.insert(omega);
    out.trace.mode = GrowthMode::Lemma6;
    out.trace.epsilon = epsilon;
    out.trace.k = k;
    out.trace.schedule = sched;
    out.trace.stage_sizes.push_back(1);
    out.trace.target = n / std::pow(static_cast<double>(k), 2.0 / epsilon);
    out.trace.analytic_floor = std::min(1.0, std::max(0.0, sched.probability_floor));

    std::vector<std::uint64_t> sizes(sched.D, sched.h);
    const auto blocks = split_multiset(a, sizes);
    const double condition_threshold =
        n / std::pow(static_cast<double>(sched.h), 2.0 / epsilon);
    run_blocks(instance, out, blocks, condition_threshold);

    out.trace.final_size = out.sphere.size();
    out.trace.target_reached = out.trace.failure_stage.has_value() ||
                               static_cast<double>(out.trace.final_size) >= out.trace.target;
    return out;
}

inline GrowthOutcome prop1_trace(const ActionInstance& instance, Point omega,
                                 const GeneratorMultiset& a, double epsilon) {
    const std::uint64_t k = a.k();
    const double n = static_cast<double>(instance.degree());
    if (!(epsilon > 0.0 && epsilon <= 0.25))
        throw ScheduleInfeasible("d = 1/(2*eps) >= 2",
                                 "prop1 mode needs epsilon <= 1/4 so the explicit-growth "
                                 "exponent d = 1/(2*eps) is at least 2");
    const std::uint64_t b =
        static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(k), epsilon * epsilon)));
    if (b < 4)
        throw ScheduleInfeasible("floor(k^(eps^2)) >= 4",
                                 "prop1 block size floor(k^(eps^2)) = " + std::to_string(b) +
                                     " is below the explicit-growth minimum 4");
    const std::uint64_t c2 =
        static_cast<std::uint64_t>(std::ceil(6.0 / (epsilon * epsilon * epsilon)));
    if (k / 2 + c2 * b > k)
        throw ScheduleInfeasible("k/2 + C2*k^(eps^2) <= k",
                                 "prop1 split needs k/2 + C2*b <= k; got " +
                                     std::to_string(k / 2 + c2 * b) + " > " + std::to_string(k));

    // First half grows via the block schedule at epsilon/2 (the proof's
    // "up to replacing epsilon" step), then C2 small blocks finish the job.
    std::vector<std::uint64_t> sizes;
    sizes.push_back(k / 2);
    for (std::uint64_t i = 0; i < c2; ++i) sizes.push_back(b);
    const auto parts = split_multiset(a, sizes);

    GrowthOutcome out = lemma6_trace(instance, omega, parts[0], epsilon / 2.0, std::nullopt);
    out.trace.mode = GrowthMode::Prop1;
    out.trace.epsilon = epsilon;
    out.trace.k = k;
    out.trace.target = n / std::pow(static_cast<double>(k), epsilon / 2.0);
    const double floor_value =
        1.0 - 12.0 / (epsilon * epsilon * epsilon *
                      std::pow(static_cast<double>(k), epsilon / 2.0 - epsilon * epsilon));
    out.trace.analytic_floor = std::min(1.0, std::max(0.0, floor_value));
    out.trace.failure_stage.reset();

    std::vector<GeneratorMultiset> blocks(parts.begin() + 1, parts.end());
    const double condition_threshold =
        n / std::pow(static_cast<double>(b), 1.0 / (2.0 * epsilon));
    run_blocks(instance, out, blocks, condition_threshold);

    out.trace.final_size = out.sphere.size();
    out.trace.target_reached = out.trace.failure_stage.has_value() ||
                               static_cast<double>(out.trace.final_size) >= out.trace.target;
    return out;
}

// Iterate the whole multiset until the sphere reaches the target, stalls at
// a fixpoint, or hits the pragmatic 4n ceiling.
inline GrowthOutcome direct_trace(const ActionInstance& instance, Point omega,
                                  const GeneratorMultiset& a, double epsilon, double target) {
    GrowthOutcome out{GrowthTrace{}, PointSet(instance.degree())};
    out.sphere.insert(omega);
    out.trace.mode = GrowthMode::Direct;
    out.trace.epsilon = epsilon;
    out.trace.k = a.k();
    out.trace.target = target;
    out.trace.stage_sizes.push_back(1);
    const std::uint64_t cap = 4 * instance.degree();
    while (static_cast<double>(out.sphere.size()) < target && out.trace.radius < cap) {
        PointSet next = image_of_set(instance, out.sphere, a.elements);
        const bool stalled = next == out.sphere;
        out.sphere = std::move(next);
        out.trace.stage_sizes.push_back(out.sphere.size());
        out.trace.radius += 1;
        if (stalled) break;
    }
    out.trace.final_size = out.sphere.size();
    out.trace.target_reached = static_cast<double>(out.trace.final_size) >= target;
    return out;
}

} // namespace detail

// Trace one sampled multiset through the chosen growth schedule. Lemma6 and
// Prop1 follow the proofs' block splits literally and throw
// ScheduleInfeasible (naming the failing inequality) when the parameters
// cannot honor them; Direct grows the undivided multiset toward the
// n/k^(eps/2) target.
inline GrowthTrace growth_trace(const ActionInstance& instance, Point omega, std::uint64_t k,
                                double epsilon, GrowthMode mode, SeededRng& rng,
                                std::optional<double> C = std::nullopt) {
    const auto a = sample_multiset(instance, k, rng);
    detail::GrowthOutcome out{GrowthTrace{}, PointSet(0)};
    switch (mode) {
        case GrowthMode::Lemma6:
            out = detail::lemma6_trace(instance, omega, a, epsilon, C);
            break;
        case GrowthMode::Prop1:
            out = detail::prop1_trace(instance, omega, a, epsilon);
            break;
        case GrowthMode::Direct: {
            const double target = static_cast<double>(instance.degree()) /
                                  std::pow(static_cast<double>(k), epsilon / 2.0);
            out = detail::direct_trace(instance, omega, a, epsilon, target);
            break;
        }
    }
    out.trace.seed = rng.seed();
    return out.trace;
}

// ---------------------------------------------------------------------------
// The main theorem's proof, executed as a program: grow a sphere with k/4
// elements, fill it to Omega with fresh elements, repeat on the reverse side
// with an independent copy, and double. The certificate bounds the diameter
// of the Schreier graph on the union multiset.
// ---------------------------------------------------------------------------

struct PipelineReport {
    GrowthTrace growth;            // forward growth stage
    GrowthTrace growth_reverse;
    std::uint64_t k = 0;
    std::uint64_t growth_elements = 0;    // k/4 per side
    std::uint64_t fill_elements = 0;      // ceil(4 (k/4)^(eps/2) log n) per side
    double epsilon = 0;
    bool precondition_met = false;        // k >= (log n)^(1+eps); reported, not enforced
    std::uint64_t fill_radius = 0;        // T with sphere_B(omega, T) = Omega on both sides
    std::uint64_t certificate = 0;        // 2T >= diameter of the union graph
    std::uint64_t elements_consumed = 0;  // 2(k/4) + 2 * fill_elements
    bool budget_ok = false;               // elements_consumed <= k
    DiameterReport cross_check;           // auto_diameter on the union multiset
    bool certificate_sound = false;       // certificate >= exact (or >= lower bound)
    std::uint64_t seed = 0;
};

inline PipelineReport theorem_pipeline(const ActionInstance& instance, Point omega,
                                       std::uint64_t k, double epsilon, SeededRng& rng,
                                       std::uint64_t diameter_budget = kDefaultDiameterBudget,
                                       std::uint32_t pivot_count = kDefaultPivotCount) {
    const std::uint64_t n = instance.degree();
    if (n < 2) throw PreconditionUnmet("theorem_pipeline requires degree >= 2");
    const std::uint64_t quarter = k / 4;
    if (quarter < 1) throw PipelineStageFailed("growth", "k/4 < 1: no growth elements available");

    PipelineReport report;
    report.k = k;
    report.epsilon = epsilon;
    report.seed = rng.seed();
    report.growth_elements = quarter;
    const double log_n = std::log(static_cast<double>(n));
    report.precondition_met =
        static_cast<double>(k) >= std::pow(log_n, 1.0 + epsilon);

    // delta = eps/2 applied to the k/4 growth elements, as in the theorem's
    // proof; the fill count is the 4 m log n of the fill lemma with m = k1^delta.
    const double m_target = std::pow(static_cast<double>(quarter), epsilon / 2.0);
    const double growth_target = static_cast<double>(n) / m_target;
    report.fill_elements =
        static_cast<std::uint64_t>(std::max(1.0, std::ceil(4.0 * m_target * log_n)));

    const auto a1 = sample_multiset(instance, quarter, rng);
    auto fwd = detail::direct_trace(instance, omega, a1, epsilon, growth_target);
    report.growth = fwd.trace;
    if (!fwd.trace.target_reached)
        throw PipelineStageFailed("growth", "forward sphere stalled at " +
                                                std::to_string(fwd.trace.final_size) +
                                                " points, target " +
                                                std::to_string(fwd.trace.target));

    const auto f1 = sample_multiset(instance, report.fill_elements, rng);
    const PointSet filled_fwd = detail::image_of_set(instance, fwd.sphere, f1.elements);
    if (!filled_fwd.is_full())
        throw PipelineStageFailed("fill", "forward fill left " +
                                              std::to_string(n - filled_fwd.size()) +
                                              " of " + std::to_string(n) + " points uncovered");

    // Reverse side: an independent copy, grown with inverted elements. A and
    // A^{-1} share a distribution, so this mirrors the doubling argument.
    const auto a2 = sample_multiset(instance, quarter, rng);
    const auto f2 = sample_multiset(instance, report.fill_elements, rng);
    const auto a2_inv = invert_multiset(instance, a2);
    const auto f2_inv = invert_multiset(instance, f2);
    auto rev = detail::direct_trace(instance, omega, a2_inv, epsilon, growth_target);
    report.growth_reverse = rev.trace;
    if (!rev.trace.target_reached)
        throw PipelineStageFailed("reverse-growth", "reverse sphere stalled at " +
                                                        std::to_string(rev.trace.final_size) +
                                                        " points, target " +
                                                        std::to_string(rev.trace.target));
    const PointSet filled_rev = detail::image_of_set(instance, rev.sphere, f2_inv.elements);
    if (!filled_rev.is_full())
        throw PipelineStageFailed("reverse-fill", "reverse fill left " +
                                                      std::to_string(n - filled_rev.size()) +
                                                      " of " + std::to_string(n) +
                                                      " points uncovered");

    // Once a sphere equals Omega it stays Omega (generators are bijections),
    // so both sides cover at T = max of the two fill radii, and the doubling
    // argument gives diam <= 2T for the union multiset.
    const std::uint64_t t_fwd = fwd.trace.radius + 1;
    const std::uint64_t t_rev = rev.trace.radius + 1;
    report.fill_radius = std::max(t_fwd, t_rev);
    report.certificate = 2 * report.fill_radius;
    report.elements_consumed = 2 * quarter + 2 * report.fill_elements;
    report.budget_ok = report.elements_consumed <= k;

    const auto union_set = concat_multisets(concat_multisets(a1, f1), concat_multisets(a2, f2));
    const auto graph = build_graph(instance, union_set);
    report.cross_check = auto_diameter(graph, diameter_budget, pivot_count, &rng);
    if (report.cross_check.exact)
        report.certificate_sound = report.certificate >= *report.cross_check.exact;
    else if (report.cross_check.lower)
        report.certificate_sound = report.certificate >= *report.cross_check.lower;
    return report;
}

} // namespace schreierlab
