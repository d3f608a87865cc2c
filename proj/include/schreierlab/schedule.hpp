#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "schreierlab/errors.hpp"

namespace schreierlab {

// The split of k generators into D blocks of h used by the sphere-growth
// argument, together with its two feasibility flags. Pure arithmetic on
// logarithms: n only enters through log n, so astronomically large n is fine.
struct ProofSchedule {
    double C = 0;
    std::uint64_t D = 0;
    std::uint64_t h = 0;
    bool feasible_hD = false;     // h * D <= k
    bool feasible_growth = false; // h^(D/2) > n
    double epsilon = 0;
    std::uint64_t k = 0;
    double n = 0;
    double log_n = 0;
    // 1 - 2D / h^(2/eps - 1); the growth argument's success floor. Can be
    // far below zero at desk scale, which is reported, not hidden.
    double probability_floor = 0;
};

namespace detail {

inline bool growth_feasible(std::uint64_t k, std::uint64_t D, double log_n) {
    if (D == 0) return false;
    const std::uint64_t h = k / D;
    if (h < 2) return false;  // h = 1 can never satisfy h^(D/2) > n for n >= 2
    return 0.5 * static_cast<double>(D) * std::log(static_cast<double>(h)) > log_n;
}

} // namespace detail

inline ProofSchedule proof_schedule(double n, std::uint64_t k, double epsilon,
                                    std::optional<double> C = std::nullopt) {
    if (!(n >= 2.0)) throw PreconditionUnmet("proof_schedule requires n >= 2");
    if (k < 2) throw PreconditionUnmet("proof_schedule requires k >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw PreconditionUnmet("proof_schedule requires epsilon in (0,1)");
    if (C && !(*C > 0.0)) throw PreconditionUnmet("proof_schedule requires C > 0");

    const double log_n = std::log(n);
    const double log_k = std::log(static_cast<double>(k));

    ProofSchedule sched;
    sched.epsilon = epsilon;
    sched.k = k;
    sched.n = n;
    sched.log_n = log_n;

    if (C) {
        sched.C = *C;
        sched.D = static_cast<std::uint64_t>(std::floor(*C * log_n / log_k));
    } else {
        // Default C: the smallest value whose block count D makes
        // h^(D/2) > n hold. The left side is not monotone in D, so scan.
        // When no D works (the usual desk-scale situation) fall back to the
        // D maximizing (D/2) log h and report feasible_growth = false.
        const std::uint64_t d_max = std::min<std::uint64_t>(k, 10'000'000ull);
        std::uint64_t chosen = 0;
        double best_score = -1.0;
        std::uint64_t best_d = 1;
        for (std::uint64_t d = 1; d <= d_max; ++d) {
            const std::uint64_t h = k / d;
            if (h == 0) break;
            const double score = 0.5 * static_cast<double>(d) * std::log(static_cast<double>(h));
            if (score > best_score) {
                best_score = score;
                best_d = d;
            }
            if (detail::growth_feasible(k, d, log_n)) {
                chosen = d;
                break;
            }
        }
        if (chosen == 0) chosen = best_d;
        sched.D = chosen;
        sched.C = (static_cast<double>(chosen) + 0.5) * log_k / log_n;
    }

    if (sched.D == 0) throw DegenerateSchedule("schedule has D = 0 blocks");
    sched.h = k / sched.D;
    if (sched.h == 0) throw DegenerateSchedule("schedule has block size h = 0");

    sched.feasible_hD = sched.h * sched.D <= k;
    sched.feasible_growth = detail::growth_feasible(k, sched.D, log_n);
    const double exponent = 2.0 / epsilon - 1.0;
    sched.probability_floor =
        1.0 - 2.0 * static_cast<double>(sched.D) *
                  std::exp(-exponent * std::log(static_cast<double>(sched.h)));
    return sched;
}

} // namespace schreierlab
