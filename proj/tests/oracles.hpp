#pragma once

// Test-only oracles, kept independent of the solver and strategy code paths
// they are used to check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "bn/game.hpp"

namespace oracle {

using bn::height_t;

// Plain recursive outcome search over building positions, no memoization.
// Returns true if the player to move wins (N).
inline bool naive_building_n(std::vector<height_t> heights, std::uint32_t remaining, bn::Rule rule) {
    std::sort(heights.begin(), heights.end(), std::greater<>());
    if (remaining == 0) {
        std::uint64_t x = 0;
        height_t mx = 0;
        std::uint32_t ones = 0;
        for (height_t h : heights) {
            x ^= h;
            mx = std::max(mx, h);
            if (h == 1) ++ones;
        }
        if (rule == bn::Rule::Normal) return x != 0;
        if (mx >= 2) return x != 0;
        return ones % 2 == 0;
    }
    std::set<std::vector<height_t>> succs;
    for (std::size_t i = 0; i < heights.size(); ++i) {
        std::vector<height_t> s = heights;
        ++s[i];
        std::sort(s.begin(), s.end(), std::greater<>());
        succs.insert(std::move(s));
    }
    for (const auto& s : succs)
        if (!naive_building_n(s, remaining - 1, rule)) return true;
    return false;
}

// Misère Nim by direct game-tree search (a player who cannot move wins).
inline bool misere_nim_n(std::vector<height_t> heights) {
    std::sort(heights.begin(), heights.end(), std::greater<>());
    static std::map<std::vector<height_t>, bool> memo;
    auto it = memo.find(heights);
    if (it != memo.end()) return it->second;
    bool any_move = false;
    bool win = false;
    for (std::size_t i = 0; i < heights.size() && !win; ++i) {
        for (height_t take = 1; take <= heights[i] && !win; ++take) {
            any_move = true;
            std::vector<height_t> s = heights;
            s[i] -= take;
            if (!misere_nim_n(s)) win = true;
        }
    }
    if (!any_move) win = true;
    memo[heights] = win;
    return win;
}

// All non-increasing length-l vectors summing to m, descending-lex order.
inline void gen_partitions(std::uint32_t l, std::uint32_t m, std::uint32_t cap,
                           std::vector<height_t>& cur,
                           std::vector<std::vector<height_t>>& out) {
    if (cur.size() == l) {
        if (m == 0) out.push_back(cur);
        return;
    }
    std::uint32_t hi = std::min(cap, m);
    for (std::uint32_t v = hi;; --v) {
        cur.push_back(v);
        gen_partitions(l, m - v, v, cur, out);
        cur.pop_back();
        if (v == 0) break;
    }
}

inline std::vector<std::vector<height_t>> all_partitions(std::uint32_t l, std::uint32_t m) {
    std::vector<std::vector<height_t>> out;
    std::vector<height_t> cur;
    gen_partitions(l, m, m, cur, out);
    return out;
}

inline unsigned ref_mex(const std::vector<unsigned>& vals) {
    for (unsigned g = 0;; ++g)
        if (std::find(vals.begin(), vals.end(), g) == vals.end()) return g;
}

// Recursive Grundy values over building positions, memoized on its own map;
// shares nothing with the layered solver.
inline unsigned recursive_grundy(std::vector<height_t> heights, std::uint32_t remaining,
                                 std::map<std::pair<std::vector<height_t>, std::uint32_t>, unsigned>& memo) {
    std::sort(heights.begin(), heights.end(), std::greater<>());
    if (remaining == 0) {
        unsigned x = 0;
        for (height_t h : heights) x ^= h;
        return x;
    }
    auto key = std::make_pair(heights, remaining);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::set<std::vector<height_t>> succs;
    for (std::size_t i = 0; i < heights.size(); ++i) {
        std::vector<height_t> s = heights;
        ++s[i];
        std::sort(s.begin(), s.end(), std::greater<>());
        succs.insert(std::move(s));
    }
    std::vector<unsigned> opts;
    for (const auto& s : succs) opts.push_back(recursive_grundy(s, remaining - 1, memo));
    unsigned g = ref_mex(opts);
    memo.emplace(std::move(key), g);
    return g;
}

} // namespace oracle
