#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>

#include "schreierlab/errors.hpp"
#include "schreierlab/graph.hpp"
#include "schreierlab/parallel.hpp"
#include "schreierlab/rng.hpp"

namespace schreierlab {

enum class DiameterMethod { AllPairs, PivotBounds };

inline const char* to_string(DiameterMethod m) {
    return m == DiameterMethod::AllPairs ? "all-pairs" : "pivot-bounds";
}

struct DiameterReport {
    bool connected = false;
    std::optional<std::uint64_t> exact;
    std::optional<std::uint64_t> lower;
    std::optional<std::uint64_t> upper;
    DiameterMethod method = DiameterMethod::AllPairs;
    std::uint32_t pivots_used = 0;
};

inline constexpr std::uint64_t kDefaultDiameterBudget = 2'000'000'000ull;
inline constexpr std::uint32_t kDefaultPivotCount = 4;

namespace detail {

// n * n * k in 128 bits, so the budget comparison never overflows.
inline bool all_pairs_within_budget(const SchreierGraph& g, std::uint64_t budget) {
    const unsigned __int128 cost = static_cast<unsigned __int128>(g.degree()) * g.degree() * g.k();
    return cost <= budget;
}

} // namespace detail

// Max over all sources of the BFS eccentricity. The per-source runs
// distribute over workers and combine by max, so the result is independent
// of the worker count.
inline DiameterReport exact_diameter(const SchreierGraph& graph,
                                     std::uint64_t budget = kDefaultDiameterBudget,
                                     unsigned workers = 1) {
    if (!graph.is_connected()) throw GraphDisconnected("exact_diameter requires a connected graph");
    if (!detail::all_pairs_within_budget(graph, budget))
        throw BudgetExceeded(graph.degree() * graph.k(),
                             "all-pairs BFS cost n*n*k exceeds the budget");
    const std::uint64_t n = graph.degree();
    std::atomic<std::uint64_t> best{0};
    parallel_for(n, workers, [&](std::uint64_t source) {
        const auto ecc = graph.eccentricity(source, n + 1);
        // Connected graphs always cover; guard anyway.
        const std::uint64_t value = ecc ? *ecc : 0;
        std::uint64_t cur = best.load(std::memory_order_relaxed);
        while (value > cur && !best.compare_exchange_weak(cur, value)) {
        }
    });
    DiameterReport report;
    report.connected = true;
    report.method = DiameterMethod::AllPairs;
    report.exact = best.load();
    report.lower = report.upper = report.exact;
    return report;
}

// Sandwich bounds from a handful of pivots: every observed eccentricity is a
// lower bound, and for any pivot w, d(x,y) <= d(x,w) + d(w,y) gives
// diam <= bwd_ecc(w) + fwd_ecc(w). The first pivot is point 0; Schreier
// graphs are not vertex-transitive, so extra pivots materially tighten both
// sides. Farthest vertices of each sweep are re-used as lower-bound
// candidates (double-sweep heuristic; affects tightness, never soundness).
inline DiameterReport pivot_bounds(const SchreierGraph& graph, std::uint32_t pivot_count,
                                   SeededRng& rng) {
    if (!graph.is_connected()) throw GraphDisconnected("pivot_bounds requires a connected graph");
    const std::uint64_t n = graph.degree();
    const SchreierGraph rev = graph.reverse();
    std::uint64_t lower = 0;
    std::uint64_t upper = UINT64_MAX;
    if (pivot_count == 0) pivot_count = 1;
    for (std::uint32_t i = 0; i < pivot_count; ++i) {
        const Point pivot = i == 0 ? 0 : rng.next_below(n);
        const auto fwd = graph.bfs_to_saturation(pivot, n + 1);
        const auto bwd = rev.bfs_to_saturation(pivot, n + 1);
        lower = std::max({lower, fwd.radius, bwd.radius});
        upper = std::min(upper, fwd.radius + bwd.radius);
        // Double sweep: the vertex farthest *to* the pivot is a promising
        // source; the vertex farthest *from* it a promising sink.
        const auto sweep_fwd = graph.bfs_to_saturation(bwd.farthest, n + 1);
        const auto sweep_bwd = rev.bfs_to_saturation(fwd.farthest, n + 1);
        lower = std::max({lower, sweep_fwd.radius, sweep_bwd.radius});
    }
    DiameterReport report;
    report.connected = true;
    report.method = DiameterMethod::PivotBounds;
    report.pivots_used = pivot_count;
    report.lower = lower;
    report.upper = upper;
    return report;
}

// Exact when the all-pairs budget allows, pivot bounds otherwise;
// disconnection is embedded in the report rather than thrown.
inline DiameterReport auto_diameter(const SchreierGraph& graph,
                                    std::uint64_t budget = kDefaultDiameterBudget,
                                    std::uint32_t pivot_count = kDefaultPivotCount,
                                    SeededRng* rng = nullptr, unsigned workers = 1) {
    if (!graph.is_connected()) {
        DiameterReport report;
        report.connected = false;
        report.method = DiameterMethod::PivotBounds;
        return report;
    }
    if (detail::all_pairs_within_budget(graph, budget))
        return exact_diameter(graph, budget, workers);
    SeededRng fallback(0);
    return pivot_bounds(graph, pivot_count, rng ? *rng : fallback);
}

} // namespace schreierlab
