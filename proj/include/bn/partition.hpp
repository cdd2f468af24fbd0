#pragma once

#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <stdexcept>
#include <vector>

#include "bn/game.hpp"

// Layer indexing for the tablebase: positions with a fixed placed-token count
// m are the length-l non-increasing vectors summing to m, enumerated in
// descending lexicographic order. (m,0,...,0) has rank 0. The order is part
// of the persisted-file contract.

namespace bn {

/// Counts of partitions of m into at most `parts` parts, each at most `cap`,
/// precomputed densely for m <= max_sum, parts <= max_parts.
class PartitionCounter {
public:
    PartitionCounter(std::uint32_t max_sum, std::uint32_t max_parts)
        : m_(max_sum), l_(max_parts), c_((max_sum + 1) * (max_parts + 1) * (max_sum + 1), 0) {
        // count(m, j, cap) = sum over first part v <= min(cap, m) of
        // count(m - v, j - 1, v); count(0, *, *) = 1.
        for (std::uint32_t j = 0; j <= l_; ++j)
            for (std::uint32_t cap = 0; cap <= m_; ++cap) at(0, j, cap) = 1;
        for (std::uint32_t j = 1; j <= l_; ++j) {
            for (std::uint32_t m = 1; m <= m_; ++m) {
                std::uint64_t run = 0;
                // cap ascending so the v-sum can be kept incrementally
                for (std::uint32_t cap = 1; cap <= m_; ++cap) {
                    if (cap <= m) run += at(m - cap, j - 1, cap);
                    at(m, j, cap) = run;
                }
            }
        }
    }

    std::uint64_t count(std::uint32_t m, std::uint32_t parts, std::uint32_t cap) const {
        if (m == 0) return 1;
        if (parts == 0) return 0;
        if (cap > m_) cap = m_;
        if (m > m_ || parts > l_) throw std::out_of_range("partition counter range");
        return at(m, parts, cap);
    }

    std::uint64_t layer_size(std::uint32_t stacks, std::uint32_t m) const {
        return count(m, stacks, m);
    }

    /// Rank of a canonical position within its layer (descending-lex order).
    std::uint64_t rank(std::span<const height_t> s) const {
        std::uint64_t r = 0;
        std::uint32_t rem = 0;
        for (height_t h : s) rem += h;
        std::uint32_t cap = rem; // s[0] is unbounded within the layer
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::uint32_t lo = s[i];
            std::uint32_t hi = std::min(cap, rem);
            // everything with a strictly larger part at position i precedes s
            for (std::uint32_t v = lo + 1; v <= hi; ++v)
                r += count(rem - v, static_cast<std::uint32_t>(s.size() - i - 1), v);
            rem -= lo;
            cap = lo;
        }
        return r;
    }

    std::uint64_t rank(const Position& p) const { return rank(p.heights()); }

    Position unrank(std::uint32_t stacks, std::uint32_t m, std::uint64_t r) const {
        if (r >= layer_size(stacks, m)) throw std::out_of_range("partition rank out of range");
        std::vector<height_t> s(stacks, 0);
        std::uint32_t rem = m;
        std::uint32_t cap = m;
        for (std::uint32_t i = 0; i < stacks; ++i) {
            std::uint32_t hi = std::min(cap, rem);
            for (std::uint32_t v = hi;; --v) {
                std::uint64_t block = count(rem - v, stacks - i - 1, v);
                if (r < block) {
                    s[i] = v;
                    rem -= v;
                    cap = v;
                    break;
                }
                r -= block;
                if (v == 0) throw std::logic_error("unrank walked off the layer");
            }
        }
        return Position(std::move(s));
    }

    /// Advance a canonical vector to its descending-lex successor in the same
    /// layer. Returns false when s was the last partition.
    static bool next_partition(std::span<height_t> s) {
        const std::size_t l = s.size();
        // pivot: rightmost i where s[i] can drop by one and the tail sum still
        // fits under the new cap
        std::uint32_t tail = 0;
        for (std::size_t ip1 = l; ip1 > 0; --ip1) {
            std::size_t i = ip1 - 1;
            std::uint32_t rest = tail + s[i]; // sum of s[i..]
            if (s[i] >= 1) {
                std::uint32_t v = s[i] - 1;
                std::uint32_t rem = rest - v;
                if (static_cast<std::uint64_t>(l - i - 1) * v >= rem) {
                    s[i] = v;
                    std::uint32_t cap = v;
                    for (std::size_t j = i + 1; j < l; ++j) {
                        height_t take = std::min(cap, rem);
                        s[j] = take;
                        rem -= take;
                    }
                    return true;
                }
            }
            tail = rest;
        }
        return false;
    }

    /// First partition of the layer: (m, 0, ..., 0).
    static void first_partition(std::span<height_t> s, std::uint32_t m) {
        if (s.empty()) {
            if (m) throw std::invalid_argument("no stacks");
            return;
        }
        s[0] = m;
        for (std::size_t i = 1; i < s.size(); ++i) s[i] = 0;
    }

private:
    std::uint64_t& at(std::uint32_t m, std::uint32_t j, std::uint32_t cap) {
        return c_[(static_cast<std::size_t>(m) * (l_ + 1) + j) * (m_ + 1) + cap];
    }
    std::uint64_t at(std::uint32_t m, std::uint32_t j, std::uint32_t cap) const {
        return c_[(static_cast<std::size_t>(m) * (l_ + 1) + j) * (m_ + 1) + cap];
    }

    std::uint32_t m_, l_;
    std::vector<std::uint64_t> c_;
};

namespace detail {
inline const PartitionCounter& shared_counter(std::uint32_t m, std::uint32_t parts) {
    static std::mutex mu;
    static std::unique_ptr<PartitionCounter> cached;
    static std::uint32_t have_m = 0, have_l = 0;
    std::lock_guard<std::mutex> lk(mu);
    if (!cached || have_m < m || have_l < parts) {
        std::uint32_t want_m = std::max(have_m, m);
        std::uint32_t want_l = std::max(have_l, parts);
        std::uint64_t bytes = std::uint64_t(want_m + 1) * (want_m + 1) * (want_l + 1) * 8;
        if (bytes > (1ull << 30))
            throw std::length_error("partition table for sums up to " + std::to_string(want_m) +
                                    " would need " + std::to_string(bytes >> 20) + " MiB");
        have_m = want_m;
        have_l = want_l;
        cached = std::make_unique<PartitionCounter>(have_m, have_l);
    }
    return *cached;
}
} // namespace detail

/// Number of partitions of m into at most `stacks` parts.
inline std::uint64_t layer_size(std::uint32_t stacks, std::uint32_t m) {
    if (stacks < 1) throw std::invalid_argument("stacks must be >= 1");
    return detail::shared_counter(m, stacks).layer_size(stacks, m);
}

inline std::uint64_t partition_rank(const Position& p) {
    std::uint32_t m = static_cast<std::uint32_t>(p.total());
    return detail::shared_counter(m, static_cast<std::uint32_t>(p.size())).rank(p);
}

inline Position partition_unrank(std::uint32_t stacks, std::uint32_t m, std::uint64_t r) {
    return detail::shared_counter(m, stacks).unrank(stacks, m, r);
}

} // namespace bn
