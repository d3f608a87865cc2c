#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "schreierlab/action.hpp"
#include "schreierlab/diameter.hpp"
#include "schreierlab/errors.hpp"
#include "schreierlab/graph.hpp"
#include "schreierlab/multiset.hpp"
#include "schreierlab/parallel.hpp"
#include "schreierlab/rng.hpp"

namespace schreierlab {

// How k scales with the degree across a sweep.
struct KRule {
    enum class Kind { Fixed, Power, Fraction };
    Kind kind = Kind::Power;
    double value = 0.5;  // k itself, the epsilon of (log n)^(1+eps), or the delta of n^delta

    std::uint64_t resolve(std::uint64_t n) const {
        double k = 1.0;
        switch (kind) {
            case Kind::Fixed: k = value; break;
            case Kind::Power:
                k = std::ceil(std::pow(std::log(static_cast<double>(n)), 1.0 + value));
                break;
            case Kind::Fraction:
                k = std::ceil(std::pow(static_cast<double>(n), value));
                break;
        }
        return k < 1.0 ? 1 : static_cast<std::uint64_t>(k);
    }

    std::string label() const {
        char buf[64];
        switch (kind) {
            case Kind::Fixed:
                std::snprintf(buf, sizeof buf, "fixed(%llu)", static_cast<unsigned long long>(value));
                break;
            case Kind::Power: std::snprintf(buf, sizeof buf, "power(%g)", value); break;
            case Kind::Fraction: std::snprintf(buf, sizeof buf, "fraction(%g)", value); break;
        }
        return buf;
    }
};

enum class SweepMode { Exact, Bounds, Auto };

struct SweepConfig {
    std::vector<std::string> families;  // templates, e.g. "sym", "cyclic", "abelian:m=2"
    std::vector<std::uint64_t> degrees;
    KRule k_rule;
    std::uint32_t trials = 1;
    std::uint64_t master_seed = 0;
    SweepMode mode = SweepMode::Auto;
    std::uint64_t budget = kDefaultDiameterBudget;
    std::uint32_t pivot_count = kDefaultPivotCount;
    bool record_covering = true;
    bool stable_output = false;  // zero the elapsed_ms column for byte-stable files
    unsigned workers = 0;        // 0 = auto, capped by SCHREIER_LAB_THREADS
};

struct ResultRow {
    std::string family;
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint32_t trial = 0;
    std::uint64_t seed = 0;
    bool connected = false;
    std::optional<std::uint64_t> diam_lower;
    std::optional<std::uint64_t> diam_upper;
    std::optional<std::uint64_t> diam_exact;
    std::optional<std::uint64_t> covering_radius;
    std::optional<double> ratio;  // diam_upper / (log n / log k), the conservative statistic
    std::int64_t elapsed_ms = 0;
    std::string error;  // per-row failure note; never part of the CSV schema
};

// Instantiate a family template at degree n. Fully parameterized specs pass
// through (their degree must then match). Templates leave the size parameter
// to be filled: sym -> sym:n=N, cyclic -> cyclic:m=N, dihedral -> dihedral:m=N,
// affine -> affine:p=N, proj -> proj:p=N-1, abelian:m=M -> d with M^d = N,
// sym-tuples:r=R -> the n0 whose falling factorial hits N.
inline FamilySpec resolve_family(const std::string& text, std::uint64_t n) {
    std::string_view name;
    std::vector<std::pair<std::string, std::uint64_t>> kvs;
    detail::parse_kv(text, name, kvs);
    auto find = [&](const char* key) -> std::optional<std::uint64_t> {
        for (const auto& [k, v] : kvs)
            if (k == key) return v;
        return std::nullopt;
    };
    FamilySpec spec;
    if (name == "sym") {
        spec.family = Family::SymmetricNatural;
        spec.n0 = find("n").value_or(n);
    } else if (name == "sym-tuples") {
        spec.family = Family::SymmetricTuples;
        auto r = find("r");
        if (!r) throw InvalidFamilyParams("sym-tuples template requires r");
        spec.r = *r;
        if (auto n0 = find("n")) {
            spec.n0 = *n0;
        } else {
            std::uint64_t base = spec.r;
            for (;; ++base) {
                auto deg = detail::falling_factorial(base, spec.r);
                if (!deg || *deg > n)
                    throw InvalidFamilyParams("no n0 gives sym-tuples degree " + std::to_string(n) +
                                              " at r=" + std::to_string(spec.r));
                if (*deg == n) break;
            }
            spec.n0 = base;
        }
    } else if (name == "cyclic") {
        spec.family = Family::CyclicRegular;
        spec.m = find("m").value_or(n);
    } else if (name == "abelian") {
        spec.family = Family::AbelianPowerRegular;
        auto m = find("m");
        if (!m) throw InvalidFamilyParams("abelian template requires m");
        spec.m = *m;
        if (auto d = find("d")) {
            spec.d = *d;
        } else {
            if (spec.m < 2) throw InvalidFamilyParams("abelian template requires m >= 2");
            std::uint64_t exp = 0, power = 1;
            while (power < n) {
                power *= spec.m;
                ++exp;
            }
            if (power != n)
                throw InvalidFamilyParams("degree " + std::to_string(n) + " is not a power of m=" +
                                          std::to_string(spec.m));
            spec.d = exp;
        }
    } else if (name == "dihedral") {
        spec.family = Family::Dihedral;
        spec.m = find("m").value_or(n);
    } else if (name == "affine") {
        spec.family = Family::AffinePrime;
        spec.p = find("p").value_or(n);
    } else if (name == "proj") {
        spec.family = Family::ProjectiveLine;
        spec.p = find("p").value_or(n > 0 ? n - 1 : 0);
    } else {
        throw InvalidFamilyParams("unknown family template '" + std::string(name) + "'");
    }
    return spec;
}

struct RowOptions {
    SweepMode mode = SweepMode::Auto;
    std::uint64_t budget = kDefaultDiameterBudget;
    std::uint32_t pivot_count = kDefaultPivotCount;
    bool record_covering = true;
    bool stable_timing = false;
};

// One trial: derive-seeded sample, build, measure. All failure modes land in
// the row instead of escaping.
inline ResultRow compute_row(const ActionInstance& instance, std::uint64_t k, std::uint32_t trial,
                             std::uint64_t seed, const RowOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    ResultRow row;
    row.family = instance.spec().to_string();
    row.n = instance.degree();
    row.k = k;
    row.trial = trial;
    row.seed = seed;
    try {
        SeededRng rng(seed);
        const auto gens = sample_multiset(instance, k, rng);
        const auto graph = build_graph(instance, gens);
        row.connected = graph.is_connected();
        if (row.connected) {
            DiameterReport report;
            switch (opt.mode) {
                case SweepMode::Exact:
                    report = exact_diameter(graph, opt.budget);
                    break;
                case SweepMode::Bounds:
                    report = pivot_bounds(graph, opt.pivot_count, rng);
                    break;
                case SweepMode::Auto:
                    report = auto_diameter(graph, opt.budget, opt.pivot_count, &rng);
                    break;
            }
            row.diam_lower = report.lower;
            row.diam_upper = report.upper;
            row.diam_exact = report.exact;
            if (opt.record_covering)
                row.covering_radius = graph.covering_radius(0);
            if (row.diam_upper && k >= 2) {
                const double log_ratio = std::log(static_cast<double>(row.n)) /
                                         std::log(static_cast<double>(k));
                row.ratio = static_cast<double>(*row.diam_upper) / log_ratio;
            }
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    const auto stop = std::chrono::steady_clock::now();
    row.elapsed_ms = opt.stable_timing
                         ? 0
                         : std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
    return row;
}

// Deterministic given the master seed: cells are laid out in sorted
// (family, n, trial) order, each trial's seed derives from its flat index,
// and workers write results by index.
inline std::vector<ResultRow> run_sweep(const SweepConfig& config) {
    if (config.families.empty() || config.degrees.empty() || config.trials < 1)
        throw PreconditionUnmet("sweep requires nonempty family and n grids and trials >= 1");

    std::vector<std::string> families = config.families;
    std::sort(families.begin(), families.end());
    std::vector<std::uint64_t> degrees = config.degrees;
    std::sort(degrees.begin(), degrees.end());

    struct Cell {
        std::string family_template;
        std::uint64_t n;
        std::uint32_t trial;
    };
    std::vector<Cell> cells;
    cells.reserve(families.size() * degrees.size() * config.trials);
    for (const auto& fam : families)
        for (const auto n : degrees)
            for (std::uint32_t t = 0; t < config.trials; ++t) cells.push_back({fam, n, t});

    RowOptions opt;
    opt.mode = config.mode;
    opt.budget = config.budget;
    opt.pivot_count = config.pivot_count;
    opt.record_covering = config.record_covering;
    opt.stable_timing = config.stable_output;

    std::vector<ResultRow> rows(cells.size());
    parallel_for(cells.size(), config.workers, [&](std::uint64_t i) {
        const auto& cell = cells[i];
        const std::uint64_t seed = derive_trial_seed(config.master_seed, i);
        try {
            const auto spec = resolve_family(cell.family_template, cell.n);
            const ActionInstance instance(spec);
            const std::uint64_t k = config.k_rule.resolve(cell.n);
            rows[i] = compute_row(instance, k, cell.trial, seed, opt);
        } catch (const std::exception& e) {
            rows[i].family = cell.family_template;
            rows[i].n = cell.n;
            rows[i].trial = cell.trial;
            rows[i].seed = seed;
            rows[i].error = e.what();
        }
    });
    return rows;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_ratio(double value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

template <typename T>
std::string opt_to_string(const std::optional<T>& value) {
    return value ? std::to_string(*value) : std::string();
}

} // namespace detail

inline const char* kCsvHeader =
    "family,n,k,trial,seed,connected,diam_lower,diam_upper,diam_exact,covering_radius,ratio,"
    "elapsed_ms";

inline void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& row : rows) {
        out << row.family << ',' << row.n << ',' << row.k << ',' << row.trial << ',' << row.seed
            << ',' << (row.connected ? "true" : "false") << ','
            << detail::opt_to_string(row.diam_lower) << ',' << detail::opt_to_string(row.diam_upper)
            << ',' << detail::opt_to_string(row.diam_exact) << ','
            << detail::opt_to_string(row.covering_radius) << ','
            << (row.ratio ? detail::format_ratio(*row.ratio) : std::string()) << ','
            << row.elapsed_ms << '\n';
    }
}

inline void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    emit_csv(rows, out);
    if (!out) throw IoError("write to '" + path + "' failed");
}

inline nlohmann::ordered_json row_to_json(const ResultRow& row) {
    nlohmann::ordered_json j;
    j["family"] = row.family;
    j["n"] = row.n;
    j["k"] = row.k;
    j["trial"] = row.trial;
    j["seed"] = row.seed;
    j["connected"] = row.connected;
    auto put = [&](const char* key, const std::optional<std::uint64_t>& v) {
        if (v)
            j[key] = *v;
        else
            j[key] = nullptr;
    };
    put("diam_lower", row.diam_lower);
    put("diam_upper", row.diam_upper);
    put("diam_exact", row.diam_exact);
    put("covering_radius", row.covering_radius);
    if (row.ratio)
        j["ratio"] = *row.ratio;
    else
        j["ratio"] = nullptr;
    j["elapsed_ms"] = row.elapsed_ms;
    if (!row.error.empty()) j["error"] = row.error;
    return j;
}

inline void emit_json(const std::vector<ResultRow>& rows, std::ostream& out) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) arr.push_back(row_to_json(row));
    out << arr.dump(2) << '\n';
}

inline void emit_json(const std::vector<ResultRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    emit_json(rows, out);
    if (!out) throw IoError("write to '" + path + "' failed");
}

// Self-contained SVG: max and median of the ratio column against log2 n.
// One family per plot.
inline std::string render_plot(const std::vector<ResultRow>& rows) {
    auto template_of = [](const std::string& label) {
        const auto colon = label.find(':');
        return label.substr(0, colon);
    };
    std::string family;
    for (const auto& row : rows) {
        const std::string t = template_of(row.family);
        if (family.empty())
            family = t;
        else if (t != family)
            throw PreconditionUnmet("emit_plot requires rows from a single family, got '" + family +
                                    "' and '" + t + "'");
    }

    // Group ratios by n.
    std::vector<std::uint64_t> ns;
    for (const auto& row : rows)
        if (row.ratio && std::find(ns.begin(), ns.end(), row.n) == ns.end()) ns.push_back(row.n);
    std::sort(ns.begin(), ns.end());
    struct Pt {
        double x, max_ratio, median_ratio;
    };
    std::vector<Pt> points;
    for (const auto n : ns) {
        std::vector<double> ratios;
        for (const auto& row : rows)
            if (row.n == n && row.ratio) ratios.push_back(*row.ratio);
        std::sort(ratios.begin(), ratios.end());
        const double median = ratios.size() % 2 == 1
                                  ? ratios[ratios.size() / 2]
                                  : 0.5 * (ratios[ratios.size() / 2 - 1] + ratios[ratios.size() / 2]);
        points.push_back({std::log2(static_cast<double>(n)), ratios.back(), median});
    }

    const double width = 640, height = 420, ml = 64, mr = 24, mt = 32, mb = 48;
    double x_min = 0, x_max = 1, y_max = 1;
    if (!points.empty()) {
        x_min = points.front().x;
        x_max = points.back().x;
        if (x_max == x_min) x_max = x_min + 1;
        for (const auto& p : points) y_max = std::max(y_max, p.max_ratio);
        y_max *= 1.1;
    }
    auto sx = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * (width - ml - mr); };
    auto sy = [&](double y) { return height - mb - y / y_max * (height - mt - mb); };
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
           "viewBox=\"0 0 640 420\">\n"
        << "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n"
        << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(height - mb) << "\" x2=\"" << fmt(width - mr)
        << "\" y2=\"" << fmt(height - mb) << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(ml) << "\" y2=\""
        << fmt(height - mb) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fmt(width / 2) << "\" y=\"" << fmt(height - 12)
        << "\" text-anchor=\"middle\" font-size=\"13\">log2 n</text>\n"
        << "<text x=\"16\" y=\"" << fmt(height / 2)
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
        << fmt(height / 2) << ")\">diam_upper / log_k n</text>\n"
        << "<text x=\"" << fmt(width / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << family << "</text>\n";

    auto polyline = [&](const char* color, const char* dash, auto value_of) {
        if (points.empty()) return;
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\"";
        if (dash[0]) svg << " stroke-dasharray=\"" << dash << "\"";
        svg << " stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (i) svg << ' ';
            svg << fmt(sx(points[i].x)) << ',' << fmt(sy(value_of(points[i])));
        }
        svg << "\"/>\n";
    };
    polyline("#1f77b4", "", [](const Pt& p) { return p.max_ratio; });
    polyline("#ff7f0e", "5,3", [](const Pt& p) { return p.median_ratio; });
    for (const auto& p : points) {
        svg << "<circle cx=\"" << fmt(sx(p.x)) << "\" cy=\"" << fmt(sy(p.max_ratio))
            << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
        svg << "<circle cx=\"" << fmt(sx(p.x)) << "\" cy=\"" << fmt(sy(p.median_ratio))
            << "\" r=\"3\" fill=\"#ff7f0e\"/>\n";
    }
    svg << "<text x=\"" << fmt(width - mr) << "\" y=\"" << fmt(mt + 4)
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"#1f77b4\">max</text>\n"
        << "<text x=\"" << fmt(width - mr) << "\" y=\"" << fmt(mt + 20)
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"#ff7f0e\">median</text>\n"
        << "</svg>\n";
    return svg.str();
}

inline void emit_plot(const std::vector<ResultRow>& rows, const std::string& path) {
    const std::string svg = render_plot(rows);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << svg;
    if (!out) throw IoError("write to '" + path + "' failed");
}

} // namespace schreierlab
