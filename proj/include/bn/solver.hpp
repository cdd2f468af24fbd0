#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bn/game.hpp"
#include "bn/partition.hpp"

namespace bn {

/// Misère Nim rule for the terminal layer: P iff the Nim-sum is 0 and some
/// stack has height >= 2, or all stacks are 0/1 with an odd number of 1s.
inline Outcome misere_terminal_outcome(const Position& p) {
    if (p.max_height() >= 2) return p.nim() == 0 ? Outcome::P : Outcome::N;
    std::uint32_t ones = 0;
    for (height_t h : p.heights())
        if (h == 1) ++ones;
    return (ones % 2 == 1) ? Outcome::P : Outcome::N;
}

struct SolveOptions {
    bool want_grundy = false;
    unsigned jobs = 1;
    std::uint64_t budget_bytes = 512ull << 20;
};

struct SolveStats {
    std::uint64_t entries = 0;
    std::uint64_t largest_layer = 0;
};

/// Outcomes (and optionally Grundy values) for every building position of
/// BN(tokens, stacks), layered by placed-token count m. Immutable once built.
class SolveTable {
public:
    SolveTable(GameParams params, Rule rule, bool grundy)
        : params_(params), rule_(rule), grundy_(grundy),
          counter_(std::make_shared<PartitionCounter>(params.tokens, params.stacks)),
          layers_(params.tokens + 1), sizes_(params.tokens + 1, 0) {
        for (std::uint32_t m = 0; m <= params_.tokens; ++m)
            sizes_[m] = counter_->layer_size(params_.stacks, m);
    }

    const GameParams& params() const { return params_; }
    Rule rule() const { return rule_; }
    bool has_grundy() const { return grundy_; }
    const PartitionCounter& counter() const { return *counter_; }

    std::uint64_t layer_entries(std::uint32_t m) const { return sizes_.at(m); }
    std::uint64_t total_entries() const {
        std::uint64_t t = 0;
        for (auto s : sizes_) t += s;
        return t;
    }

    std::vector<std::uint8_t>& layer_data(std::uint32_t m) { return layers_.at(m); }
    const std::vector<std::uint8_t>& layer_data(std::uint32_t m) const { return layers_.at(m); }

    std::uint64_t layer_bytes(std::uint32_t m) const {
        return grundy_ ? sizes_[m] : (sizes_[m] + 7) / 8;
    }

    Outcome outcome_at(std::uint32_t m, std::uint64_t rank) const {
        if (grundy_) return layers_[m][rank] != 0 ? Outcome::N : Outcome::P;
        return (layers_[m][rank >> 3] >> (rank & 7)) & 1 ? Outcome::N : Outcome::P;
    }

    std::uint8_t grundy_at(std::uint32_t m, std::uint64_t rank) const {
        if (!grundy_) throw std::logic_error("table was built without Grundy data");
        return layers_[m][rank];
    }

    void set_outcome(std::uint32_t m, std::uint64_t rank, Outcome o) {
        if (o == Outcome::N) layers_[m][rank >> 3] |= std::uint8_t(1u << (rank & 7));
    }
    void set_grundy(std::uint32_t m, std::uint64_t rank, std::uint8_t g) {
        layers_[m][rank] = g;
    }

    std::uint32_t placed_of(const BuildingPosition& b) const {
        check(b);
        return static_cast<std::uint32_t>(b.position.total());
    }

    Outcome outcome_of(const BuildingPosition& b) const {
        std::uint32_t m = placed_of(b);
        return outcome_at(m, counter_->rank(b.position));
    }

    std::uint8_t grundy_of(const BuildingPosition& b) const {
        std::uint32_t m = placed_of(b);
        return grundy_at(m, counter_->rank(b.position));
    }

    /// All building moves whose successor is a P entry, ascending target index.
    std::vector<Move> best_moves(const BuildingPosition& b) const {
        check(b);
        if (b.remaining == 0) throw std::invalid_argument("building is over (\xce\xbe=0)");
        std::uint32_t m = static_cast<std::uint32_t>(b.position.total());
        std::vector<Move> out;
        std::uint32_t classes = b.position.class_count();
        for (std::uint32_t c = 0; c < classes; ++c) {
            Position succ = b.position.raised(c);
            if (outcome_at(m + 1, counter_->rank(succ)) == Outcome::P) out.push_back(Move{c});
        }
        return out;
    }

private:
    void check(const BuildingPosition& b) const {
        if (b.position.size() != params_.stacks)
            throw std::invalid_argument("position stack count does not match table");
        if (b.position.total() + b.remaining != params_.tokens)
            throw std::invalid_argument("position/remaining inconsistent with table token count");
    }

    GameParams params_;
    Rule rule_;
    bool grundy_;
    std::shared_ptr<PartitionCounter> counter_;
    std::vector<std::vector<std::uint8_t>> layers_; // index m = placed tokens
    std::vector<std::uint64_t> sizes_;
};

namespace detail {

inline void for_range_parallel(std::uint64_t count, unsigned jobs, std::uint64_t align,
                               const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
    if (jobs <= 1 || count < 4096) {
        fn(0, count);
        return;
    }
    std::uint64_t chunk = (count + jobs - 1) / jobs;
    chunk = (chunk + align - 1) / align * align;
    std::vector<std::thread> threads;
    for (std::uint64_t start = 0; start < count; start += chunk) {
        std::uint64_t end = std::min(count, start + chunk);
        threads.emplace_back([&fn, start, end] { fn(start, end); });
    }
    for (auto& t : threads) t.join();
}

// mex of a small value set
inline std::uint8_t mex(std::span<const std::uint16_t> vals) {
    for (std::uint16_t g = 0;; ++g) {
        bool hit = false;
        for (std::uint16_t v : vals)
            if (v == g) { hit = true; break; }
        if (!hit) return static_cast<std::uint8_t>(g);
    }
}

} // namespace detail

inline std::uint64_t estimate_table_bytes(const GameParams& params, bool grundy) {
    // the dense partition-count table is the dominant cost and is quadratic
    // in the token count; size it arithmetically before allocating anything
    std::uint64_t side = params.tokens + 1;
    std::uint64_t counter_bytes = side * side * (params.stacks + 1) * sizeof(std::uint64_t);
    if (counter_bytes > (1ull << 30)) return counter_bytes;
    std::uint64_t bytes = counter_bytes;
    PartitionCounter counter(params.tokens, params.stacks);
    for (std::uint32_t m = 0; m <= params.tokens; ++m) {
        std::uint64_t n = counter.layer_size(params.stacks, m);
        bytes += grundy ? n : (n + 7) / 8;
        bytes += n * sizeof(std::uint64_t) / 8; // rank scratch, amortized
    }
    return bytes;
}

/// Layered retrograde solve of BN(params.tokens, params.stacks).
inline SolveTable solve(const GameParams& params, Rule rule, const SolveOptions& opts = {},
                        SolveStats* stats = nullptr) {
    params.validate();
    if (opts.want_grundy && rule == Rule::Misere)
        throw std::invalid_argument("Grundy values are not defined here for the misère rule");
    if (opts.want_grundy && (params.tokens > 255 || params.stacks > 255))
        throw std::invalid_argument("Grundy tables require tokens and stacks <= 255 (byte entries)");
    std::uint64_t est = estimate_table_bytes(params, opts.want_grundy);
    if (opts.budget_bytes && est > opts.budget_bytes)
        throw std::runtime_error("table would need about " + std::to_string(est >> 20) +
                                 " MiB, over the budget of " + std::to_string(opts.budget_bytes >> 20) + " MiB");

    SolveTable t(params, rule, opts.want_grundy);
    const std::uint32_t n = params.tokens;
    const std::uint32_t L = params.stacks;
    const PartitionCounter& pc = t.counter();

    for (std::uint32_t mi = 0; mi <= n; ++mi) {
        std::uint32_t m = n - mi; // from the terminal layer upward
        std::uint64_t count = t.layer_entries(m);
        t.layer_data(m).assign(t.layer_bytes(m), 0);
        if (stats) {
            stats->entries += count;
            stats->largest_layer = std::max(stats->largest_layer, count);
        }
        std::uint32_t xi = n - m;

        auto work = [&](std::uint64_t lo, std::uint64_t hi) {
            if (lo >= hi) return;
            Position p = pc.unrank(L, m, lo);
            std::vector<height_t> h(p.heights().begin(), p.heights().end());
            std::vector<height_t> succ(L);
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                if (xi == 0) {
                    Position cur{std::vector<height_t>(h)};
                    Outcome o = rule == Rule::Normal ? bouton_outcome(cur) : misere_terminal_outcome(cur);
                    if (opts.want_grundy) {
                        t.set_grundy(m, idx, static_cast<std::uint8_t>(cur.nim()));
                    } else {
                        t.set_outcome(m, idx, o);
                    }
                } else {
                    // one successor per distinct height class
                    std::uint16_t opt_grundy[256];
                    std::uint32_t nopts = 0;
                    bool any_p = false;
                    for (std::uint32_t i = 0; i < L; ++i) {
                        if (i > 0 && h[i] == h[i - 1]) continue;
                        succ.assign(h.begin(), h.end());
                        std::uint32_t j = i;
                        ++succ[j];
                        while (j > 0 && succ[j - 1] < succ[j]) {
                            std::swap(succ[j - 1], succ[j]);
                            --j;
                        }
                        std::uint64_t srank = pc.rank(succ);
                        if (opts.want_grundy) {
                            std::uint8_t g = t.grundy_at(m + 1, srank);
                            opt_grundy[nopts++] = g;
                            if (g == 0) any_p = true;
                        } else if (t.outcome_at(m + 1, srank) == Outcome::P) {
                            any_p = true;
                            break;
                        }
                    }
                    if (opts.want_grundy) {
                        t.set_grundy(m, idx, detail::mex({opt_grundy, nopts}));
                    } else if (any_p) {
                        t.set_outcome(m, idx, Outcome::N);
                    }
                }
                if (idx + 1 < hi) PartitionCounter::next_partition(h);
            }
        };
        detail::for_range_parallel(count, opts.jobs, 8, work);
    }
    return t;
}

/// Root outcome only, retaining two layers at a time.
inline Outcome solve_root(const GameParams& params, Rule rule, SolveStats* stats = nullptr,
                          unsigned jobs = 1) {
    params.validate();
    const std::uint32_t n = params.tokens;
    const std::uint32_t L = params.stacks;
    PartitionCounter pc(n, L);
    std::vector<std::uint8_t> prev, cur;
    for (std::uint32_t mi = 0; mi <= n; ++mi) {
        std::uint32_t m = n - mi;
        std::uint64_t count = pc.layer_size(L, m);
        cur.assign((count + 7) / 8, 0);
        if (stats) {
            stats->entries += count;
            stats->largest_layer = std::max(stats->largest_layer, count);
        }
        std::uint32_t xi = n - m;
        auto work = [&](std::uint64_t lo, std::uint64_t hi) {
            if (lo >= hi) return;
            Position p = pc.unrank(L, m, lo);
            std::vector<height_t> h(p.heights().begin(), p.heights().end());
            std::vector<height_t> succ(L);
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                bool is_n;
                if (xi == 0) {
                    nim_value acc = 0;
                    for (height_t x : h) acc ^= x;
                    if (rule == Rule::Normal) {
                        is_n = acc != 0;
                    } else {
                        Position curp{std::vector<height_t>(h)};
                        is_n = misere_terminal_outcome(curp) == Outcome::N;
                    }
                } else {
                    is_n = false;
                    for (std::uint32_t i = 0; i < L && !is_n; ++i) {
                        if (i > 0 && h[i] == h[i - 1]) continue;
                        succ.assign(h.begin(), h.end());
                        std::uint32_t j = i;
                        ++succ[j];
                        while (j > 0 && succ[j - 1] < succ[j]) {
                            std::swap(succ[j - 1], succ[j]);
                            --j;
                        }
                        std::uint64_t srank = pc.rank(succ);
                        if (((prev[srank >> 3] >> (srank & 7)) & 1) == 0) is_n = true;
                    }
                }
                if (is_n) cur[idx >> 3] |= std::uint8_t(1u << (idx & 7));
                if (idx + 1 < hi) PartitionCounter::next_partition(h);
            }
        };
        detail::for_range_parallel(count, jobs, 8, work);
        prev.swap(cur);
    }
    return (prev[0] & 1) ? Outcome::N : Outcome::P;
}

/// Full-table audit of the N/P recurrence, terminal labels, and (when present)
/// Grundy/outcome consistency. Returns the first offending (m, rank) if any.
inline std::optional<std::pair<std::uint32_t, std::uint64_t>> audit_table(const SolveTable& t) {
    const std::uint32_t n = t.params().tokens;
    const std::uint32_t L = t.params().stacks;
    const PartitionCounter& pc = t.counter();
    for (std::uint32_t m = 0; m <= n; ++m) {
        std::uint64_t count = t.layer_entries(m);
        if (count == 0) continue;
        std::vector<height_t> h(L);
        PartitionCounter::first_partition(h, m);
        std::uint32_t xi = n - m;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Position p{std::vector<height_t>(h)};
            Outcome o = t.outcome_at(m, idx);
            bool ok;
            if (xi == 0) {
                Outcome want = t.rule() == Rule::Normal ? bouton_outcome(p) : misere_terminal_outcome(p);
                ok = o == want;
                if (ok && t.has_grundy()) ok = t.grundy_at(m, idx) == p.nim();
            } else {
                bool any_p = false;
                for (std::uint32_t c = 0; c < p.class_count(); ++c) {
                    Position s = p.raised(c);
                    if (t.outcome_at(m + 1, pc.rank(s)) == Outcome::P) any_p = true;
                }
                ok = (o == Outcome::N) == any_p;
                if (ok && t.has_grundy()) ok = (t.grundy_at(m, idx) == 0) == (o == Outcome::P);
            }
            if (!ok) return std::make_pair(m, idx);
            PartitionCounter::next_partition(h);
        }
    }
    return std::nullopt;
}

} // namespace bn
