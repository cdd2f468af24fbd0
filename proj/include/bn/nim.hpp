#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>

// Nim-sum arithmetic and the bitwise facts the rest of the library leans on.
// Everything here is pure and stateless.

namespace bn {

using nim_value = std::uint64_t;

inline nim_value nim_sum(std::span<const nim_value> values) {
    nim_value acc = 0;
    for (nim_value v : values) acc ^= v;
    return acc;
}

inline nim_value nim_sum(std::initializer_list<nim_value> values) {
    nim_value acc = 0;
    for (nim_value v : values) acc ^= v;
    return acc;
}

/// True iff x = 2^k - 1 for some k >= 0 (so 0 counts, as 2^0 - 1).
inline bool is_mersenne(nim_value x) {
    return (x & (x + 1)) == 0;
}

/// True iff x = 2^k - 1 for some k >= 1 (excludes 0).
inline bool is_mersenne_pos(nim_value x) {
    return x != 0 && is_mersenne(x);
}

/// Bit k of x.
inline bool has_k_component(nim_value x, unsigned k) {
    if (k >= 64) return false;
    return (x >> k) & 1u;
}

// The numbered Nim-sum facts, as per-instance checks. NS1..NS5 are binary or
// unary, NS6 takes the stack vector, NS7 takes y followed by the stacks.
// Each evaluator returns whether the fact's implication holds for the given
// arguments; the exhaustive property suite drives them over full ranges.
enum class NsFact { NS1, NS2, NS3, NS4, NS5, NS6, NS7 };

namespace detail {

inline bool ns5_instance(nim_value x, nim_value y) {
    if (x > y) throw std::invalid_argument("NS5 requires 0 <= x <= y");
    nim_value s = x ^ (y - x);
    // Mersenne y: equality must hold for every x. Otherwise only <= is a
    // per-instance statement; the existential strict witness is a suite-level
    // check.
    return is_mersenne_pos(y) ? s == y : s <= y;
}

} // namespace detail

inline bool check_ns_fact(NsFact fact, std::span<const nim_value> args) {
    auto need = [&](std::size_t lo, std::size_t hi = 0) {
        std::size_t n = args.size();
        if (hi == 0) hi = lo;
        if (n < lo || n > hi) throw std::invalid_argument("NS fact arity mismatch");
    };
    switch (fact) {
    case NsFact::NS1:
        need(2);
        return ((args[0] ^ args[1]) == 0) == (args[0] == args[1]);
    case NsFact::NS2:
        need(2);
        return (args[0] ^ args[1]) <= args[0] + args[1];
    case NsFact::NS3: {
        need(1);
        nim_value s = args[0] ^ (args[0] + 1);
        return s >= 1 && is_mersenne(s);
    }
    case NsFact::NS4: {
        need(1);
        nim_value x = args[0];
        nim_value s = x ^ (x + 1);
        if (is_mersenne(x)) return s == 2 * x + 1;
        return s < x;
    }
    case NsFact::NS5:
        need(2);
        return detail::ns5_instance(args[0], args[1]);
    case NsFact::NS6: {
        need(1, std::dynamic_extent);
        nim_value shifted = args[0] + 1;
        for (std::size_t i = 1; i < args.size(); ++i) shifted ^= args[i];
        if (shifted != 0) return true; // hypothesis not met
        nim_value plain = nim_sum(args);
        return is_mersenne_pos(plain);
    }
    case NsFact::NS7: {
        need(2, std::dynamic_extent);
        nim_value y = args[0];
        nim_value sum = 0, acc = y;
        for (std::size_t i = 1; i < args.size(); ++i) {
            sum += args[i];
            acc ^= args[i];
        }
        if (y <= sum) return true; // hypothesis not met
        return acc > 0;
    }
    }
    throw std::invalid_argument("unknown NS fact");
}

inline bool check_ns_fact(NsFact fact, std::initializer_list<nim_value> args) {
    return check_ns_fact(fact, std::span<const nim_value>(args.begin(), args.size()));
}

} // namespace bn
