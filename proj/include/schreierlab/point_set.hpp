#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace schreierlab {

// Subset of [0, n) as a bitmap with a lazily cached cardinality.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::uint64_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    static PointSet full(std::uint64_t universe) {
        PointSet s(universe);
        for (auto& w : s.words_) w = ~0ull;
        if (universe % 64 != 0 && !s.words_.empty())
            s.words_.back() &= (1ull << (universe % 64)) - 1;
        s.count_ = universe;
        s.dirty_ = false;
        return s;
    }

    std::uint64_t universe() const { return universe_; }

    void insert(std::uint64_t p) {
        words_[p >> 6] |= 1ull << (p & 63);
        dirty_ = true;
    }

    // Insert and report whether the point was new.
    bool test_and_insert(std::uint64_t p) {
        std::uint64_t& w = words_[p >> 6];
        const std::uint64_t bit = 1ull << (p & 63);
        if (w & bit) return false;
        w |= bit;
        dirty_ = true;
        return true;
    }

    bool contains(std::uint64_t p) const { return (words_[p >> 6] >> (p & 63)) & 1; }

    void clear() {
        std::fill(words_.begin(), words_.end(), 0ull);
        count_ = 0;
        dirty_ = false;
    }

    std::uint64_t size() const {
        if (dirty_) {
            std::uint64_t c = 0;
            for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
            count_ = c;
            dirty_ = false;
        }
        return count_;
    }

    bool empty() const { return size() == 0; }
    bool is_full() const { return size() == universe_; }

    void union_with(const PointSet& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        dirty_ = true;
    }

    void subtract(const PointSet& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
        dirty_ = true;
    }

    bool operator==(const PointSet& other) const {
        return universe_ == other.universe_ && words_ == other.words_;
    }

    template <typename F>
    void for_each(F&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                const int bit = std::countr_zero(w);
                fn(static_cast<std::uint64_t>(wi * 64 + static_cast<std::uint64_t>(bit)));
                w &= w - 1;
            }
        }
    }

    std::vector<std::uint32_t> to_vector() const {
        std::vector<std::uint32_t> out;
        out.reserve(size());
        for_each([&](std::uint64_t p) { out.push_back(static_cast<std::uint32_t>(p)); });
        return out;
    }

private:
    std::uint64_t universe_ = 0;
    std::vector<std::uint64_t> words_;
    mutable std::uint64_t count_ = 0;
    mutable bool dirty_ = false;
};

} // namespace schreierlab
