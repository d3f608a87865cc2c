#pragma once

#include <cstdint>
#include <vector>

#include "schreierlab/action.hpp"
#include "schreierlab/errors.hpp"
#include "schreierlab/rng.hpp"

namespace schreierlab {

// Ordered multiset of generators. The ordering is a sampling artifact kept
// for reproducibility and for proof-style splitting; the mathematics only
// sees the underlying multiset.
struct GeneratorMultiset {
    Family family;
    std::vector<GroupElement> elements;

    std::uint64_t k() const { return elements.size(); }
};

// k i.i.d. uniform draws, order preserved.
inline GeneratorMultiset sample_multiset(const ActionInstance& instance, std::uint64_t k,
                                         SeededRng& rng) {
    if (k < 1) throw PreconditionUnmet("sample_multiset requires k >= 1");
    GeneratorMultiset out{instance.family(), {}};
    out.elements.reserve(k);
    for (std::uint64_t i = 0; i < k; ++i) out.elements.push_back(instance.sample_uniform(rng));
    return out;
}

namespace detail {

inline bool elements_equal(const GroupElement& a, const GroupElement& b) {
    if (a.family != b.family) return false;
    if (a.payload.index() != b.payload.index()) return false;
    if (const auto* pa = std::get_if<PermTable>(&a.payload))
        return pa->img == std::get<PermTable>(b.payload).img;
    if (const auto* ra = std::get_if<Residue>(&a.payload))
        return ra->v == std::get<Residue>(b.payload).v;
    if (const auto* va = std::get_if<ResidueVec>(&a.payload))
        return va->v == std::get<ResidueVec>(b.payload).v;
    if (const auto* da = std::get_if<DihedralPair>(&a.payload)) {
        const auto& db = std::get<DihedralPair>(b.payload);
        return da->rot == db.rot && da->flip == db.flip;
    }
    if (const auto* fa = std::get_if<AffineMap>(&a.payload)) {
        const auto& fb = std::get<AffineMap>(b.payload);
        return fa->a == fb.a && fa->b == fb.b;
    }
    if (const auto* ma = std::get_if<ProjMat>(&a.payload)) {
        const auto& mb = std::get<ProjMat>(b.payload);
        return ma->e0 == mb.e0 && ma->e1 == mb.e1 && ma->e2 == mb.e2 && ma->e3 == mb.e3;
    }
    return false;
}

} // namespace detail

// Uniform over k-subsets, by resampling any draw that collides with an
// earlier one. Mirrors the footnote distinction between multisets and sets;
// not used by the main harness.
inline GeneratorMultiset sample_set_distinct(const ActionInstance& instance, std::uint64_t k,
                                             SeededRng& rng, std::uint64_t retry_cap = 1000) {
    if (k < 1) throw PreconditionUnmet("sample_set_distinct requires k >= 1");
    if (auto order = instance.group_order(); order && k > *order)
        throw RetryExhausted("cannot draw " + std::to_string(k) + " distinct elements from a group of order " +
                             std::to_string(*order));
    GeneratorMultiset out{instance.family(), {}};
    out.elements.reserve(k);
    while (out.elements.size() < k) {
        std::uint64_t attempts = 0;
        for (;;) {
            GroupElement candidate = instance.sample_uniform(rng);
            bool fresh = true;
            for (const auto& seen : out.elements)
                if (detail::elements_equal(candidate, seen)) {
                    fresh = false;
                    break;
                }
            if (fresh) {
                out.elements.push_back(std::move(candidate));
                break;
            }
            if (++attempts >= retry_cap)
                throw RetryExhausted("distinct sampling exhausted " + std::to_string(retry_cap) +
                                     " retries at k=" + std::to_string(k));
        }
    }
    return out;
}

// Elementwise inverse, same order.
inline GeneratorMultiset invert_multiset(const ActionInstance& instance, const GeneratorMultiset& a) {
    GeneratorMultiset out{a.family, {}};
    out.elements.reserve(a.elements.size());
    for (const auto& g : a.elements) out.elements.push_back(instance.invert(g));
    return out;
}

// Consecutive disjoint slices in sampling order; the tail beyond sum(sizes)
// is the discarded remainder A'. Because draws are i.i.d., each slice is
// distributed as mu(size) and the slices are independent.
inline std::vector<GeneratorMultiset> split_multiset(const GeneratorMultiset& a,
                                                     const std::vector<std::uint64_t>& sizes) {
    std::uint64_t total = 0;
    for (auto s : sizes) total += s;
    if (total > a.elements.size())
        throw SizesExceedK("split sizes sum to " + std::to_string(total) + " but k = " +
                           std::to_string(a.elements.size()));
    std::vector<GeneratorMultiset> parts;
    parts.reserve(sizes.size());
    std::uint64_t offset = 0;
    for (auto s : sizes) {
        GeneratorMultiset part{a.family, {}};
        part.elements.assign(a.elements.begin() + offset, a.elements.begin() + offset + s);
        parts.push_back(std::move(part));
        offset += s;
    }
    return parts;
}

// Concatenation, used to assemble pipeline unions.
inline GeneratorMultiset concat_multisets(const GeneratorMultiset& a, const GeneratorMultiset& b) {
    if (a.family != b.family) throw FamilyMismatch("cannot concatenate multisets across families");
    GeneratorMultiset out{a.family, a.elements};
    out.elements.insert(out.elements.end(), b.elements.begin(), b.elements.end());
    return out;
}

} // namespace schreierlab
