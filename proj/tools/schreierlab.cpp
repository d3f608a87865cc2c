// Command-line surface: single-instance diameters, grid sweeps, growth
// traces, the end-to-end certificate pipeline, per-lemma verifiers, and the
// proof-schedule calculator.
//
// Exit codes: 0 success, 1 usage error, 2 runtime error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "schreierlab/action.hpp"
#include "schreierlab/diameter.hpp"
#include "schreierlab/errors.hpp"
#include "schreierlab/graph.hpp"
#include "schreierlab/growth.hpp"
#include "schreierlab/json_out.hpp"
#include "schreierlab/lemmas.hpp"
#include "schreierlab/multiset.hpp"
#include "schreierlab/rng.hpp"
#include "schreierlab/schedule.hpp"
#include "schreierlab/sweep.hpp"

namespace {

using namespace schreierlab;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + out_path + "' for writing");
    out << text;
    if (!out) throw IoError("write to '" + out_path + "' failed");
}

SweepMode parse_mode(const std::string& mode) {
    if (mode == "exact") return SweepMode::Exact;
    if (mode == "bounds") return SweepMode::Bounds;
    if (mode == "auto") return SweepMode::Auto;
    throw CLI::ValidationError("--mode", "expected exact|bounds|auto");
}

// Uniform random subset of the given size, for the lemma verifiers.
PointSet random_subset(const ActionInstance& instance, std::uint64_t size, SeededRng& rng) {
    const std::uint64_t n = instance.degree();
    if (size > n) throw PreconditionUnmet("subset size exceeds the degree");
    std::vector<std::uint32_t> pool(n);
    for (std::uint64_t i = 0; i < n; ++i) pool[i] = static_cast<std::uint32_t>(i);
    PointSet out(n);
    for (std::uint64_t i = 0; i < size; ++i) {
        const std::uint64_t j = i + rng.next_below(n - i);
        std::swap(pool[i], pool[j]);
        out.insert(pool[i]);
    }
    return out;
}

void emit_rows(const std::vector<ResultRow>& rows, const std::string& format,
               const std::string& out_path, const std::string& plot_path) {
    std::ostringstream body;
    if (format == "json")
        emit_json(rows, body);
    else
        emit_csv(rows, body);
    write_output(body.str(), out_path);
    if (!plot_path.empty()) emit_plot(rows, plot_path);
}

struct CommonFlags {
    std::string family;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1;
    std::string out;
    std::string format = "csv";
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"schreierlab: random Schreier graph diameters, growth traces and lemma checks"};
    app.require_subcommand(1);

    // --- info ---------------------------------------------------------
    auto* info = app.add_subcommand("info", "List the supported action families");

    // --- diameter -----------------------------------------------------
    auto* diameter_cmd = app.add_subcommand("diameter", "Diameter of one instance per trial");
    CommonFlags dia;
    std::uint64_t dia_k = 2;
    std::string dia_mode = "auto";
    std::uint64_t dia_budget = kDefaultDiameterBudget;
    std::uint32_t dia_pivots = kDefaultPivotCount;
    bool dia_no_covering = false;
    bool dia_stable = false;
    std::string dia_plot;
    diameter_cmd->add_option("--family", dia.family, "Family spec, e.g. cyclic:m=10")->required();
    diameter_cmd->add_option("--k", dia_k, "Generator count");
    diameter_cmd->add_option("--trials", dia.trials, "Independent trials");
    diameter_cmd->add_option("--seed", dia.seed, "Master seed");
    diameter_cmd->add_option("--mode", dia_mode, "exact|bounds|auto");
    diameter_cmd->add_option("--budget", dia_budget, "All-pairs lookup budget");
    diameter_cmd->add_option("--pivots", dia_pivots, "Pivot count for bounds mode");
    diameter_cmd->add_option("--out", dia.out, "Output path (stdout if omitted)");
    diameter_cmd->add_option("--format", dia.format, "csv|json");
    diameter_cmd->add_option("--plot", dia_plot, "Also write an SVG ratio plot");
    diameter_cmd->add_flag("--no-covering", dia_no_covering, "Skip the covering-radius column");
    diameter_cmd->add_flag("--stable-output", dia_stable, "Zero elapsed_ms for byte-stable output");

    // --- sweep ----------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "Grid sweep over families and degrees");
    SweepConfig sweep;
    std::string sweep_mode = "auto";
    std::string sweep_out, sweep_format = "csv", sweep_plot;
    std::optional<std::uint64_t> sweep_k;
    std::optional<double> sweep_delta;
    double sweep_epsilon = 0.5;
    bool sweep_no_covering = false;
    sweep_cmd->add_option("--family", sweep.families, "Family template (repeatable)")->required();
    sweep_cmd->add_option("--n", sweep.degrees, "Degree grid (repeatable)")->required();
    sweep_cmd->add_option("--k", sweep_k, "Fixed k rule");
    sweep_cmd->add_option("--epsilon", sweep_epsilon, "k = ceil((log n)^(1+eps)) rule (default)");
    sweep_cmd->add_option("--delta", sweep_delta, "k = ceil(n^delta) rule");
    sweep_cmd->add_option("--trials", sweep.trials, "Trials per cell");
    sweep_cmd->add_option("--seed", sweep.master_seed, "Master seed");
    sweep_cmd->add_option("--mode", sweep_mode, "exact|bounds|auto");
    sweep_cmd->add_option("--budget", sweep.budget, "All-pairs lookup budget");
    sweep_cmd->add_option("--pivots", sweep.pivot_count, "Pivot count for bounds mode");
    sweep_cmd->add_option("--workers", sweep.workers, "Worker threads (0 = auto)");
    sweep_cmd->add_option("--out", sweep_out, "Output path (stdout if omitted)");
    sweep_cmd->add_option("--format", sweep_format, "csv|json");
    sweep_cmd->add_option("--plot", sweep_plot, "Also write an SVG ratio plot");
    sweep_cmd->add_flag("--no-covering", sweep_no_covering, "Skip the covering-radius column");
    sweep_cmd->add_flag("--stable-output", sweep.stable_output,
                        "Zero elapsed_ms for byte-stable output");

    // --- growth-trace ---------------------------------------------------
    auto* growth_cmd = app.add_subcommand("growth-trace", "Stage-by-stage sphere growth");
    CommonFlags gro;
    gro.format = "json";
    std::uint64_t gro_k = 16;
    double gro_eps = 0.5;
    std::string gro_mode = "lemma6";
    std::uint64_t gro_point = 0;
    std::optional<double> gro_C;
    growth_cmd->add_option("--family", gro.family, "Family spec")->required();
    growth_cmd->add_option("--k", gro_k, "Generator count")->required();
    growth_cmd->add_option("--epsilon", gro_eps, "Epsilon parameter")->required();
    growth_cmd->add_option("--mode", gro_mode, "lemma6|prop1|direct");
    growth_cmd->add_option("--trials", gro.trials, "Independent trials");
    growth_cmd->add_option("--seed", gro.seed, "Master seed");
    growth_cmd->add_option("--point", gro_point, "Base point omega");
    growth_cmd->add_option("--C", gro_C, "Schedule constant (default: smallest feasible)");
    growth_cmd->add_option("--out", gro.out, "Output path");

    // --- pipeline -------------------------------------------------------
    auto* pipe_cmd = app.add_subcommand("pipeline", "Run the diameter-certificate pipeline");
    CommonFlags pipe;
    std::uint64_t pipe_k = 32;
    double pipe_eps = 0.5;
    std::uint64_t pipe_point = 0;
    std::uint64_t pipe_budget = kDefaultDiameterBudget;
    std::uint32_t pipe_pivots = kDefaultPivotCount;
    pipe_cmd->add_option("--family", pipe.family, "Family spec")->required();
    pipe_cmd->add_option("--k", pipe_k, "Total element budget k")->required();
    pipe_cmd->add_option("--epsilon", pipe_eps, "Epsilon parameter")->required();
    pipe_cmd->add_option("--trials", pipe.trials, "Independent trials");
    pipe_cmd->add_option("--seed", pipe.seed, "Master seed");
    pipe_cmd->add_option("--point", pipe_point, "Base point omega");
    pipe_cmd->add_option("--budget", pipe_budget, "Cross-check all-pairs budget");
    pipe_cmd->add_option("--pivots", pipe_pivots, "Cross-check pivot count");
    pipe_cmd->add_option("--out", pipe.out, "Output path");

    // --- lemma ----------------------------------------------------------
    auto* lemma_cmd = app.add_subcommand("lemma", "Per-lemma verifiers");
    lemma_cmd->require_subcommand(1);

    auto* dc_cmd = lemma_cmd->add_subcommand("double-count", "Exact double-counting identity");
    CommonFlags dc;
    std::uint64_t dc_budget = 50'000;
    std::uint64_t dc_x = 4, dc_y = 4;
    dc_cmd->add_option("--family", dc.family, "Family spec")->required();
    dc_cmd->add_option("--budget", dc_budget, "Enumeration budget on |G|");
    dc_cmd->add_option("--x-size", dc_x, "Size of the random set X");
    dc_cmd->add_option("--y-size", dc_y, "Size of the random set Y");
    dc_cmd->add_option("--trials", dc.trials, "Random (X, Y) cases");
    dc_cmd->add_option("--seed", dc.seed, "Master seed");
    dc_cmd->add_option("--out", dc.out, "Output path");

    auto* os_cmd = lemma_cmd->add_subcommand("one-step", "One-step growth bound");
    CommonFlags os;
    std::uint64_t os_x = 2, os_k = 2;
    double os_r = 1.0, os_s = 8.0;
    bool os_allow = false;
    os.trials = 10'000;
    os_cmd->add_option("--family", os.family, "Family spec")->required();
    os_cmd->add_option("--x-size", os_x, "Size of the random set X");
    os_cmd->add_option("--k", os_k, "Generator count");
    os_cmd->add_option("--r", os_r, "Loss parameter r");
    os_cmd->add_option("--s", os_s, "Probability parameter s");
    os_cmd->add_option("--trials", os.trials, "Monte Carlo trials");
    os_cmd->add_option("--seed", os.seed, "Master seed");
    os_cmd->add_flag("--allow-unmet-preconditions", os_allow, "Run even if the lemma hypothesis fails");
    os_cmd->add_option("--out", os.out, "Output path");

    auto* eg_cmd = lemma_cmd->add_subcommand("explicit-growth", "sqrt(k) growth bound");
    CommonFlags eg;
    std::uint64_t eg_x = 1, eg_k = 4;
    double eg_d = 2.0;
    bool eg_allow = false;
    eg.trials = 10'000;
    eg_cmd->add_option("--family", eg.family, "Family spec")->required();
    eg_cmd->add_option("--x-size", eg_x, "Size of the random set X");
    eg_cmd->add_option("--k", eg_k, "Generator count");
    eg_cmd->add_option("--d", eg_d, "Smallness exponent d");
    eg_cmd->add_option("--trials", eg.trials, "Monte Carlo trials");
    eg_cmd->add_option("--seed", eg.seed, "Master seed");
    eg_cmd->add_flag("--allow-unmet-preconditions", eg_allow, "Run even if the lemma hypothesis fails");
    eg_cmd->add_option("--out", eg.out, "Output path");

    auto* fl_cmd = lemma_cmd->add_subcommand("fill", "Covering bound with union-bound oracle");
    CommonFlags fl;
    std::uint64_t fl_x = 8, fl_k = 23;
    fl.trials = 10'000;
    fl_cmd->add_option("--family", fl.family, "Family spec")->required();
    fl_cmd->add_option("--x-size", fl_x, "Size of the random set X");
    fl_cmd->add_option("--k", fl_k, "Generator count");
    fl_cmd->add_option("--trials", fl.trials, "Monte Carlo trials");
    fl_cmd->add_option("--seed", fl.seed, "Master seed");
    fl_cmd->add_option("--out", fl.out, "Output path");

    // --- schedule -------------------------------------------------------
    auto* sched_cmd = app.add_subcommand("schedule", "Proof-schedule arithmetic (no group built)");
    double sched_n = 0;
    std::uint64_t sched_k = 0;
    double sched_eps = 0.5;
    std::optional<double> sched_C;
    std::string sched_out;
    sched_cmd->add_option("--n", sched_n, "Degree (any magnitude; only log n is used)")->required();
    sched_cmd->add_option("--k", sched_k, "Generator count")->required();
    sched_cmd->add_option("--epsilon", sched_eps, "Epsilon parameter")->required();
    sched_cmd->add_option("--C", sched_C, "Schedule constant (default: smallest feasible)");
    sched_cmd->add_option("--out", sched_out, "Output path");

    try {
        app.parse(argc, argv);

        if (info->parsed()) {
            std::cout << "Supported families (grammar: name:key=val[,key=val]*):\n"
                      << "  sym:n=N0           symmetric group on N0 points, degree N0\n"
                      << "  sym-tuples:n=N0,r=R  symmetric group on ordered r-tuples, degree "
                         "N0*(N0-1)*...*(N0-R+1)\n"
                      << "  cyclic:m=M         Z_M acting on itself, degree M\n"
                      << "  abelian:m=M,d=D    Z_M^D acting on itself, degree M^D\n"
                      << "  dihedral:m=M       dihedral group on the M vertices of an M-gon, degree M\n"
                      << "  affine:p=P         x -> ax+b over F_P (P prime), degree P\n"
                      << "  proj:p=P           PGL(2,P) on the projective line (P prime), degree P+1\n";
            return 0;
        }

        if (diameter_cmd->parsed()) {
            const ActionInstance instance = build_action(dia.family);
            RowOptions opt;
            opt.mode = parse_mode(dia_mode);
            opt.budget = dia_budget;
            opt.pivot_count = dia_pivots;
            opt.record_covering = !dia_no_covering;
            opt.stable_timing = dia_stable;
            std::vector<ResultRow> rows;
            for (std::uint64_t t = 0; t < dia.trials; ++t) {
                const std::uint64_t seed = derive_trial_seed(dia.seed, t);
                rows.push_back(compute_row(instance, dia_k, static_cast<std::uint32_t>(t), seed, opt));
            }
            emit_rows(rows, dia.format, dia.out, dia_plot);
            return 0;
        }

        if (sweep_cmd->parsed()) {
            if (sweep_k)
                sweep.k_rule = {KRule::Kind::Fixed, static_cast<double>(*sweep_k)};
            else if (sweep_delta)
                sweep.k_rule = {KRule::Kind::Fraction, *sweep_delta};
            else
                sweep.k_rule = {KRule::Kind::Power, sweep_epsilon};
            sweep.mode = parse_mode(sweep_mode);
            sweep.record_covering = !sweep_no_covering;
            const auto rows = run_sweep(sweep);
            emit_rows(rows, sweep_format, sweep_out, sweep_plot);
            return 0;
        }

        if (growth_cmd->parsed()) {
            GrowthMode mode;
            if (gro_mode == "lemma6")
                mode = GrowthMode::Lemma6;
            else if (gro_mode == "prop1")
                mode = GrowthMode::Prop1;
            else if (gro_mode == "direct")
                mode = GrowthMode::Direct;
            else
                throw CLI::ValidationError("--mode", "expected lemma6|prop1|direct");
            const ActionInstance instance = build_action(gro.family);
            std::vector<GrowthTrace> traces;
            std::uint64_t reached = 0;
            for (std::uint64_t t = 0; t < gro.trials; ++t) {
                SeededRng rng(derive_trial_seed(gro.seed, t));
                traces.push_back(growth_trace(instance, gro_point, gro_k, gro_eps, mode, rng, gro_C));
                if (traces.back().target_reached) ++reached;
            }
            const double empirical = static_cast<double>(reached) / static_cast<double>(gro.trials);
            nlohmann::ordered_json out;
            if (gro.trials == 1) {
                out = trace_to_json(traces[0], empirical, gro.trials);
            } else {
                out = nlohmann::ordered_json::array();
                for (const auto& tr : traces) out.push_back(trace_to_json(tr, empirical, gro.trials));
            }
            write_output(out.dump(2) + "\n", gro.out);
            return 0;
        }

        if (pipe_cmd->parsed()) {
            const ActionInstance instance = build_action(pipe.family);
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (std::uint64_t t = 0; t < pipe.trials; ++t) {
                SeededRng rng(derive_trial_seed(pipe.seed, t));
                nlohmann::ordered_json entry;
                try {
                    const auto report = theorem_pipeline(instance, pipe_point, pipe_k, pipe_eps, rng,
                                                         pipe_budget, pipe_pivots);
                    entry = pipeline_to_json(report);
                } catch (const PipelineStageFailed& e) {
                    entry["failed_stage"] = e.stage;
                    entry["detail"] = e.what();
                    entry["seed"] = rng.seed();
                }
                arr.push_back(entry);
            }
            write_output((pipe.trials == 1 ? arr[0] : arr).dump(2) + "\n", pipe.out);
            return 0;
        }

        if (dc_cmd->parsed()) {
            const ActionInstance instance = build_action(dc.family);
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (std::uint64_t t = 0; t < dc.trials; ++t) {
                SeededRng rng(derive_trial_seed(dc.seed, t));
                const auto x = random_subset(instance, dc_x, rng);
                const auto y = random_subset(instance, dc_y, rng);
                const auto result = double_count_check(instance, x, y, dc_budget);
                nlohmann::ordered_json entry;
                entry["lhs_sum"] = result.lhs_sum;
                entry["rhs"] = result.rhs;
                entry["stabilizer_order"] = result.stabilizer_order;
                entry["equal"] = result.equal;
                entry["x_size"] = x.size();
                entry["y_size"] = y.size();
                arr.push_back(entry);
            }
            write_output((dc.trials == 1 ? arr[0] : arr).dump(2) + "\n", dc.out);
            return 0;
        }

        if (os_cmd->parsed()) {
            const ActionInstance instance = build_action(os.family);
            SeededRng rng(os.seed);
            const auto x = random_subset(instance, os_x, rng);
            const auto result =
                one_step_growth_check(instance, x, os_k, os_r, os_s, os.trials, rng, os_allow);
            nlohmann::ordered_json j = bound_check_to_json(result.check);
            j["precondition_met"] = result.precondition_met;
            j["threshold"] = result.threshold;
            j["seed"] = os.seed;
            write_output(j.dump(2) + "\n", os.out);
            return 0;
        }

        if (eg_cmd->parsed()) {
            const ActionInstance instance = build_action(eg.family);
            SeededRng rng(eg.seed);
            const auto x = random_subset(instance, eg_x, rng);
            const auto result =
                explicit_growth_check(instance, x, eg_k, eg_d, eg.trials, rng, eg_allow);
            nlohmann::ordered_json j = bound_check_to_json(result.check);
            j["precondition_met"] = result.precondition_met;
            j["threshold"] = result.threshold;
            j["seed"] = eg.seed;
            write_output(j.dump(2) + "\n", eg.out);
            return 0;
        }

        if (fl_cmd->parsed()) {
            const ActionInstance instance = build_action(fl.family);
            SeededRng rng(fl.seed);
            const auto x = random_subset(instance, fl_x, rng);
            const auto result = fill_check(instance, x, fl_k, fl.trials, rng);
            nlohmann::ordered_json j;
            j["vs_lemma"] = bound_check_to_json(result.vs_lemma);
            j["exact_union_bound"] = result.exact_union_bound;
            j["lemma_precondition_met"] = result.lemma_precondition_met;
            j["m"] = result.m;
            j["per_point_empirical"] = result.per_point_empirical;
            j["per_point_exact"] = result.per_point_exact;
            j["per_point_misses"] = result.per_point_misses;
            j["trials"] = result.trials;
            j["seed"] = fl.seed;
            write_output(j.dump(2) + "\n", fl.out);
            return 0;
        }

        if (sched_cmd->parsed()) {
            const auto sched = proof_schedule(sched_n, sched_k, sched_eps, sched_C);
            write_output(schedule_to_json(sched).dump(2) + "\n", sched_out);
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const schreierlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
