#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace netarch {

// Fenwick (binary indexed) tree over unsigned 64-bit weights supporting append,
// point update and inverse-CDF selection. All arithmetic is integral, so prefix
// sums are exact and selection agrees bit-for-bit with a left-to-right linear scan
// over the same weight array.
class weight_index {
public:
    weight_index() = default;

    void reserve(std::size_t capacity) { tree_.reserve(capacity + 1); }

    std::size_t size() const { return size_; }
    std::uint64_t total() const { return total_; }

    // Appends one weight at index size().
    void append(std::uint64_t w) {
        if (tree_.empty()) tree_.push_back(0);
        std::size_t i = ++size_;
        std::uint64_t v = w;
        // tree_[i] covers (i - lowbit(i), i]; fold in the sibling blocks below i.
        for (std::size_t j = i - 1; j > i - (i & (~i + 1)); j -= j & (~j + 1)) v += tree_[j];
        tree_.push_back(v);
        total_ += w;
        if ((size_ & (size_ - 1)) == 0) top_bit_ = size_;
    }

    // Adds a signed delta to the weight at 0-based index idx.
    void add(std::size_t idx, std::int64_t delta) {
        const std::uint64_t d = static_cast<std::uint64_t>(delta);
        for (std::size_t i = idx + 1; i <= size_; i += i & (~i + 1)) tree_[i] += d;
        total_ += d;
    }

    std::uint64_t prefix(std::size_t count) const {
        std::uint64_t s = 0;
        for (std::size_t i = count; i > 0; i -= i & (~i + 1)) s += tree_[i];
        return s;
    }

    std::uint64_t weight_at(std::size_t idx) const {
        return prefix(idx + 1) - prefix(idx);
    }

    // Smallest 0-based index j with w_0 + ... + w_j > threshold.
    // Requires threshold < total().
    std::size_t select(std::uint64_t threshold) const {
        assert(threshold < total_);
        std::size_t pos = 0;
        for (std::size_t step = top_bit_; step > 0; step >>= 1) {
            std::size_t nxt = pos + step;
            if (nxt <= size_ && tree_[nxt] <= threshold) {
                pos = nxt;
                threshold -= tree_[pos];
            }
        }
        return pos;  // pos vertices have cumulative weight <= original threshold
    }

private:
    std::vector<std::uint64_t> tree_;  // 1-based
    std::size_t size_ = 0;
    std::size_t top_bit_ = 0;
    std::uint64_t total_ = 0;
};

}  // namespace netarch
