#pragma once

#include <cmath>

#include "json.hpp"

#include "schreierlab/diameter.hpp"
#include "schreierlab/growth.hpp"
#include "schreierlab/lemmas.hpp"
#include "schreierlab/schedule.hpp"

namespace schreierlab {

// Trace schema: {"mode", "stages":[sizes], "failure_stage", "final_size",
// "bound", "empirical", "trials", "seed"}. Per-trial objects carry the run's
// aggregate empirical frequency so each object is self-contained.
inline nlohmann::ordered_json trace_to_json(const GrowthTrace& trace, double empirical,
                                            std::uint64_t trials) {
    nlohmann::ordered_json j;
    j["mode"] = to_string(trace.mode);
    j["stages"] = trace.stage_sizes;
    if (trace.failure_stage)
        j["failure_stage"] = *trace.failure_stage;
    else
        j["failure_stage"] = nullptr;
    j["final_size"] = trace.final_size;
    j["bound"] = trace.analytic_floor;
    j["empirical"] = empirical;
    j["trials"] = trials;
    j["seed"] = trace.seed;
    j["target"] = trace.target;
    j["target_reached"] = trace.target_reached;
    j["radius"] = trace.radius;
    return j;
}

inline nlohmann::ordered_json schedule_to_json(const ProofSchedule& s) {
    nlohmann::ordered_json j;
    j["C"] = s.C;
    j["D"] = s.D;
    j["h"] = s.h;
    j["feasible_hD"] = s.feasible_hD;
    j["feasible_growth"] = s.feasible_growth;
    j["epsilon"] = s.epsilon;
    j["k"] = s.k;
    j["n"] = s.n;
    j["probability_floor"] = s.probability_floor;
    return j;
}

inline nlohmann::ordered_json bound_check_to_json(const BoundCheck& c) {
    nlohmann::ordered_json j;
    j["empirical"] = c.empirical;
    j["analytic_bound"] = c.analytic_bound;
    j["trials"] = c.trials;
    j["std_error"] = c.std_error;
    j["satisfied"] = c.satisfied;
    return j;
}

inline nlohmann::ordered_json diameter_to_json(const DiameterReport& r) {
    nlohmann::ordered_json j;
    j["connected"] = r.connected;
    j["method"] = to_string(r.method);
    auto put = [&](const char* key, const std::optional<std::uint64_t>& v) {
        if (v)
            j[key] = *v;
        else
            j[key] = nullptr;
    };
    put("exact", r.exact);
    put("lower", r.lower);
    put("upper", r.upper);
    j["pivots_used"] = r.pivots_used;
    return j;
}

inline nlohmann::ordered_json pipeline_to_json(const PipelineReport& r) {
    nlohmann::ordered_json j;
    j["growth"] = trace_to_json(r.growth, r.growth.target_reached ? 1.0 : 0.0, 1);
    j["growth_reverse"] =
        trace_to_json(r.growth_reverse, r.growth_reverse.target_reached ? 1.0 : 0.0, 1);
    j["k"] = r.k;
    j["epsilon"] = r.epsilon;
    j["precondition_met"] = r.precondition_met;
    j["growth_elements"] = r.growth_elements;
    j["fill_elements"] = r.fill_elements;
    j["fill_radius"] = r.fill_radius;
    j["doubling_diameter_bound"] = r.certificate;
    j["elements_consumed"] = r.elements_consumed;
    j["budget_ok"] = r.budget_ok;
    j["cross_check"] = diameter_to_json(r.cross_check);
    j["certificate_sound"] = r.certificate_sound;
    j["seed"] = r.seed;
    return j;
}

} // namespace schreierlab
