#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schreierlab/action.hpp"
#include "schreierlab/errors.hpp"
#include "schreierlab/multiset.hpp"
#include "schreierlab/point_set.hpp"

namespace schreierlab {

namespace detail {

struct GraphData {
    std::uint64_t degree = 0;
    std::vector<std::vector<std::uint32_t>> fwd;  // one permutation table per generator
    std::string family_label;
    std::once_flag rev_once;
    std::vector<std::vector<std::uint32_t>> rev;  // inverse tables, built on first use
};

} // namespace detail

// Implicit directed multigraph on [0, n): one edge (p, table[p]) per
// generator. Immutable after build; BFS scratch is per call, so concurrent
// queries on one graph are safe.
class SchreierGraph {
public:
    SchreierGraph(std::shared_ptr<detail::GraphData> data, bool reversed)
        : data_(std::move(data)), reversed_(reversed) {}

    std::uint64_t degree() const { return data_->degree; }
    std::uint64_t k() const { return data_->fwd.size(); }
    const std::string& family_label() const { return data_->family_label; }
    bool is_reversed() const { return reversed_; }

    const std::vector<std::uint32_t>& table(std::uint64_t i) const {
        return tables()[i];
    }

    // Default pragmatic ceiling for exact-length covering searches; sphere
    // sequences are eventually periodic, so non-covering instances would
    // otherwise loop forever.
    std::uint64_t default_cutoff() const { return 4 * data_->degree; }

    // One gather step: the union of the images of X under every generator.
    PointSet image_union(const PointSet& x) const {
        PointSet out(degree());
        gather(x, out);
        return out;
    }

    // Exact-length sphere: endpoints of length-t walks from omega.
    PointSet sphere(Point omega, std::uint64_t t) const {
        PointSet cur(degree());
        cur.insert(omega);
        PointSet next(degree());
        for (std::uint64_t i = 0; i < t; ++i) {
            next.clear();
            gather(cur, next);
            std::swap(cur, next);
        }
        return cur;
    }

    PointSet ball(Point omega, std::uint64_t t) const {
        BfsScratch s(degree(), omega);
        for (std::uint64_t level = 0; level < t; ++level)
            if (!expand(s)) break;
        return std::move(s.visited);
    }

    struct BfsResult {
        bool covered = false;            // ball reached all of [0, n)
        std::uint64_t radius = 0;        // eccentricity when covered, else last level with growth
        std::uint64_t visited_count = 0;
        std::uint64_t farthest = 0;      // some vertex at maximal distance
    };

    BfsResult bfs_to_saturation(Point omega, std::uint64_t max_levels) const {
        BfsScratch s(degree(), omega);
        std::uint64_t level = 0;
        std::uint64_t farthest = omega;
        while (level < max_levels) {
            if (!expand(s)) break;
            ++level;
            s.frontier.for_each([&](std::uint64_t p) { farthest = p; });
            if (s.count == degree()) break;
        }
        return {s.count == degree(), level, s.count, farthest};
    }

    // min t with ball(omega, t) = [0, n); disconnected reachability (or a
    // cutoff hit) yields nullopt, never a number.
    std::optional<std::uint64_t> eccentricity(Point omega, std::uint64_t cutoff) const {
        const auto r = bfs_to_saturation(omega, cutoff);
        if (!r.covered) return std::nullopt;
        return r.radius;
    }

    std::optional<std::uint64_t> eccentricity(Point omega) const {
        return eccentricity(omega, default_cutoff());
    }

    // min t with sphere(omega, t) = [0, n) -- the exact-length covering
    // quantity. Can exceed the eccentricity or fail to exist at all.
    std::optional<std::uint64_t> covering_radius(Point omega, std::uint64_t cutoff) const {
        PointSet cur(degree());
        cur.insert(omega);
        PointSet next(degree());
        for (std::uint64_t t = 0; t <= cutoff; ++t) {
            if (cur.is_full()) return t;
            next.clear();
            gather(cur, next);
            std::swap(cur, next);
        }
        return std::nullopt;
    }

    std::optional<std::uint64_t> covering_radius(Point omega) const {
        return covering_radius(omega, default_cutoff());
    }

    SchreierGraph reverse() const {
        ensure_reverse();
        return SchreierGraph(data_, !reversed_);
    }

    // A single forward BFS decides strong connectivity: in a finite group
    // s^{-1} = s^{ord(s)-1}, so forward reachability from a point equals its
    // orbit under the generated subgroup.
    bool is_connected() const {
        if (degree() == 0) return false;
        return bfs_to_saturation(0, degree() + 1).covered;
    }

private:
    std::shared_ptr<detail::GraphData> data_;
    bool reversed_ = false;

    const std::vector<std::vector<std::uint32_t>>& tables() const {
        if (!reversed_) return data_->fwd;
        ensure_reverse();
        return data_->rev;
    }

    void ensure_reverse() const {
        std::call_once(data_->rev_once, [&] {
            data_->rev.resize(data_->fwd.size());
            for (std::size_t i = 0; i < data_->fwd.size(); ++i) {
                const auto& t = data_->fwd[i];
                auto& r = data_->rev[i];
                r.resize(t.size());
                for (std::uint32_t p = 0; p < t.size(); ++p) r[t[p]] = p;
            }
        });
    }

    void gather(const PointSet& from, PointSet& into) const {
        // Generator-major with ascending point order: each table is then
        // read in increasing index order, which keeps large frontiers
        // streaming instead of hopping.
        for (const auto& t : tables())
            from.for_each([&](std::uint64_t p) { into.insert(t[p]); });
    }

    struct BfsScratch {
        PointSet visited;
        PointSet frontier;
        PointSet next;
        std::uint64_t count;
        BfsScratch(std::uint64_t n, Point omega)
            : visited(n), frontier(n), next(n), count(1) {
            visited.insert(omega);
            frontier.insert(omega);
        }
    };

    // One BFS level; returns false once the frontier stops producing
    // unvisited points.
    bool expand(BfsScratch& s) const {
        s.next.clear();
        gather(s.frontier, s.next);
        s.next.subtract(s.visited);
        const std::uint64_t fresh = s.next.size();
        if (fresh == 0) return false;
        s.visited.union_with(s.next);
        s.count += fresh;
        std::swap(s.frontier, s.next);
        return true;
    }
};

inline SchreierGraph build_graph(const ActionInstance& instance, const GeneratorMultiset& gens) {
    if (gens.elements.empty()) throw EmptyGeneratorSet("generator multiset is empty");
    if (gens.family != instance.family())
        throw FamilyMismatch("generator multiset family does not match the action");
    auto data = std::make_shared<detail::GraphData>();
    data->degree = instance.degree();
    data->family_label = instance.spec().to_string();
    data->fwd.reserve(gens.elements.size());
    for (const auto& g : gens.elements) data->fwd.push_back(instance.materialize(g));
    return SchreierGraph(std::move(data), false);
}

} // namespace schreierlab
