#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bn/game.hpp"
#include "bn/solver.hpp"

namespace bn {

/// A scripted player could not continue: the position is outside the lines
/// its strategy covers. Certification treats this as a failure, never as a
/// silent fallback.
class StrategyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class PlayerRole : std::uint8_t { P1 = 0, P2 = 1 };

inline const char* role_name(PlayerRole r) { return r == PlayerRole::P1 ? "P1" : "P2"; }

/// The mover at a building position: P1 places the 1st, 3rd, ... token.
inline PlayerRole mover_of(const GameParams& params, const BuildingPosition& b) {
    std::uint64_t placed = params.tokens - b.remaining;
    return placed % 2 == 0 ? PlayerRole::P1 : PlayerRole::P2;
}

using TableProvider = std::function<std::shared_ptr<const SolveTable>(GameParams, Rule)>;

/// Process-wide solve cache keyed by (tokens, stacks, rule).
inline TableProvider default_table_provider() {
    struct Cache {
        std::mutex mu;
        std::map<std::tuple<std::uint32_t, std::uint32_t, int>, std::shared_ptr<const SolveTable>> tables;
    };
    static Cache cache;
    return [](GameParams params, Rule rule) {
        auto key = std::make_tuple(params.tokens, params.stacks, static_cast<int>(rule));
        std::lock_guard<std::mutex> lk(cache.mu);
        auto it = cache.tables.find(key);
        if (it != cache.tables.end()) return it->second;
        auto t = std::make_shared<SolveTable>(solve(params, rule));
        cache.tables.emplace(key, t);
        return std::static_pointer_cast<const SolveTable>(t);
    };
}

// ---------------------------------------------------------------------------
// Move helpers

/// Raise the tallest class. A designated matched pair may be disregarded:
/// two stacks of that height are treated as off the board.
inline Move high_move(const BuildingPosition& b, std::optional<height_t> disregard_pair = {}) {
    if (b.remaining == 0) throw StrategyError("no tokens left to place");
    const Position& p = b.position;
    std::uint32_t classes = p.class_count();
    for (std::uint32_t c = 0; c < classes; ++c) {
        if (disregard_pair && p.class_height(c) == *disregard_pair) {
            std::size_t first = p.index_of_class(c);
            std::size_t count = 0;
            for (std::size_t i = first; i < p.size() && p[i] == p[first]; ++i) ++count;
            if (count <= 2) continue;
        }
        return Move{c};
    }
    throw StrategyError("every stack is excluded");
}

/// Raise the minimal class.
inline Move low_move(const BuildingPosition& b) {
    if (b.remaining == 0) throw StrategyError("no tokens left to place");
    return Move{b.position.class_count() - 1};
}

/// The re-pairing reply: after the adversary's placement, make every height
/// >= 1 occur an even number of times again. Empty when no such move exists.
inline std::optional<Move> mirror_move_opt(const Position& p) {
    std::map<height_t, int> mult;
    for (height_t h : p.heights())
        if (h >= 1) ++mult[h];
    std::vector<height_t> odd;
    for (auto [h, c] : mult)
        if (c % 2) odd.push_back(h);
    if (odd.size() == 1 && odd[0] == 1) {
        if (auto c = p.class_of_height(0)) return Move{*c};
        return std::nullopt;
    }
    if (odd.size() == 2 && odd[1] == odd[0] + 1) {
        if (auto c = p.class_of_height(odd[0])) return Move{*c};
    }
    return std::nullopt;
}

inline Move mirror_move(const BuildingPosition& b) {
    if (b.remaining == 0) throw StrategyError("no tokens left to place");
    if (auto m = mirror_move_opt(b.position)) return *m;
    throw StrategyError("no re-pairing move from " + b.position.to_string());
}

/// Strategy I reply: restore the (y, x, x) shape, y >= x.
inline Move strategy_I_move(const BuildingPosition& b) {
    if (b.position.size() != 3) throw StrategyError("three stacks required");
    if (b.remaining == 0) throw StrategyError("no tokens left to place");
    for (std::uint32_t c = 0; c < b.position.class_count(); ++c) {
        Position s = b.position.raised(c);
        if (s[1] == s[2]) return Move{c};
    }
    throw StrategyError("no move restores the (y,x,x) shape from " + b.position.to_string());
}

/// Strategy II reply: restore s1 = s2 + s3.
inline Move strategy_II_move(const BuildingPosition& b) {
    if (b.position.size() != 3) throw StrategyError("three stacks required");
    if (b.remaining == 0) throw StrategyError("no tokens left to place");
    for (std::uint32_t c = 0; c < b.position.class_count(); ++c) {
        Position s = b.position.raised(c);
        if (s[0] == s[1] + s[2]) return Move{c};
    }
    throw StrategyError("no move restores s1 = s2 + s3 from " + b.position.to_string());
}

/// During building, a move to Nim-sum 0 (ascending class order), if any.
inline std::optional<Move> zeroing_build_move(const Position& p) {
    for (std::uint32_t c = 0; c < p.class_count(); ++c)
        if (p.raised(c).nim() == 0) return Move{c};
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Players

class Player {
public:
    virtual ~Player() = default;
    virtual Move next_move(const BuildingPosition& b) = 0;
    virtual std::unique_ptr<Player> clone() const = 0;
    /// Serialized internal state, used to merge transposed certification
    /// branches. Stateless players return "".
    virtual std::string state_key() const { return {}; }
};

namespace detail {
template <typename Derived>
class StatelessPlayer : public Player {
public:
    std::unique_ptr<Player> clone() const final {
        return std::make_unique<Derived>(static_cast<const Derived&>(*this));
    }
};
} // namespace detail

class HighPlayer final : public detail::StatelessPlayer<HighPlayer> {
public:
    Move next_move(const BuildingPosition& b) override { return high_move(b); }
};

class LowPlayer final : public detail::StatelessPlayer<LowPlayer> {
public:
    Move next_move(const BuildingPosition& b) override { return low_move(b); }
};

class StrategyIPlayer final : public detail::StatelessPlayer<StrategyIPlayer> {
public:
    Move next_move(const BuildingPosition& b) override { return strategy_I_move(b); }
};

class StrategyIIPlayer final : public detail::StatelessPlayer<StrategyIIPlayer> {
public:
    Move next_move(const BuildingPosition& b) override { return strategy_II_move(b); }
};

class MirrorPlayer final : public detail::StatelessPlayer<MirrorPlayer> {
public:
    Move next_move(const BuildingPosition& b) override { return mirror_move(b); }
};

/// Second player for odd l > 3 and even n <= l+3: mirrors, with the two
/// scripted endgame adjustments, and a Nim-sum-0 placement on the last token.
class P2EndgamePlayer final : public detail::StatelessPlayer<P2EndgamePlayer> {
public:
    explicit P2EndgamePlayer(GameParams params) : params_(params) {
        if (params.stacks % 2 == 0 || params.stacks <= 3)
            throw StrategyError("endgame strategy needs an odd stack count > 3");
        if (params.tokens % 2 != 0 || params.tokens > params.stacks + 3)
            throw StrategyError("endgame strategy covers even token counts <= stacks + 3");
    }

    Move next_move(const BuildingPosition& b) override {
        const std::uint32_t l = params_.stacks;
        const std::uint32_t n = params_.tokens;
        if (b.position.size() != l || b.position.total() + b.remaining != n)
            throw StrategyError("position inconsistent with the game parameters");
        const Position& p = b.position;
        // the two proof adjustments, both overriding the plain mirror
        if (n == l + 1 && b.remaining == 3 && counts_are(p, l - 2, 2))
            return Move{*p.class_of_height(1)};
        if (n == l + 3 && b.remaining == 3 && counts_are(p, l, 0))
            return Move{*p.class_of_height(1)};
        if (auto m = mirror_move_opt(p)) return *m;
        if (b.remaining == 1) {
            if (auto m = zeroing_build_move(p)) return *m;
            throw StrategyError("no Nim-sum-0 placement from " + p.to_string());
        }
        throw StrategyError("mirroring broke early at " + b.to_string());
    }

private:
    static bool counts_are(const Position& p, std::uint32_t ones, std::uint32_t zeros) {
        std::uint32_t c1 = 0, c0 = 0;
        for (height_t h : p.heights()) {
            if (h == 1) ++c1;
            else if (h == 0) ++c0;
            else return false;
        }
        return c1 == ones && c0 == zeros;
    }

    GameParams params_;
};

/// Perfect play from a solve table: the first winning placement, else the
/// lowest-index delaying move.
class TablePlayer final : public detail::StatelessPlayer<TablePlayer> {
public:
    explicit TablePlayer(std::shared_ptr<const SolveTable> table) : table_(std::move(table)) {
        if (!table_) throw StrategyError("no table available");
    }

    Move next_move(const BuildingPosition& b) override {
        if (b.remaining == 0) throw StrategyError("building is over");
        auto best = table_->best_moves(b);
        return best.empty() ? Move{0} : best[0];
    }

private:
    std::shared_ptr<const SolveTable> table_;
};

// ---------------------------------------------------------------------------
// First-player strategy for BN(2n, 5), n >= 5.
//
// The move logic below follows the constructive win proof: a perfect-play
// table for 5 <= n <= 12; for n = 2^k - 1 the low strategy (with the k=5
// commitment line); otherwise the pi/delta phase plan, reusing the strategy
// for a smaller game "on top" of a matched pair when the adversary builds
// one. Stacks are tracked by internal labels so that pedestal bookkeeping
// survives canonicalization.

namespace detail {

struct CompositeCore {
    enum class Mode : std::uint8_t { Table, Lemma6, Cases };

    std::uint32_t n = 0; // tokens per player; the game is BN(2n, 5)
    Mode mode = Mode::Table;
    std::array<std::uint32_t, 5> h{}; // labeled heights, this core's coordinates
    std::uint32_t my_made = 0, adv_made = 0;

    // Cases
    std::uint32_t k = 0, p = 0;
    bool case2 = false;
    bool case2_late = false;
    bool adv_max_in_pi = false;
    bool high_forever = false;
    bool regime_a = false;
    std::unique_ptr<CompositeCore> sub;
    std::uint32_t pedestal = 0;
    std::array<bool, 5> is_ped{};

    // Lemma 6 (tokens 2n = 2^K - 2)
    std::uint32_t big_k = 0, bottom = 0;
    std::array<bool, 5> committed{};

    std::shared_ptr<const SolveTable> table;

    void init(std::uint32_t n_tokens_each, const TableProvider& tables) {
        n = n_tokens_each;
        if (n < 5) throw StrategyError("the second player wins below ten tokens");
        if (n <= 12) {
            mode = Mode::Table;
            table = tables({2 * n, 5}, Rule::Normal);
            return;
        }
        if ((n & (n + 1)) == 0) {
            mode = Mode::Lemma6;
            big_k = std::bit_width(n + 1); // 2n = 2^big_k - 2
            bottom = 1u << (big_k - 3);
            return;
        }
        mode = Mode::Cases;
        k = std::bit_width(n - 1); // 2^(k-1) < n <= 2^k
        p = 1u << (k - 1);
        case2 = (n - p) <= 4;
    }

    CompositeCore() = default;
    CompositeCore(const CompositeCore& o)
        : n(o.n), mode(o.mode), h(o.h), my_made(o.my_made), adv_made(o.adv_made), k(o.k), p(o.p),
          case2(o.case2), case2_late(o.case2_late), adv_max_in_pi(o.adv_max_in_pi),
          high_forever(o.high_forever), regime_a(o.regime_a),
          sub(o.sub ? std::make_unique<CompositeCore>(*o.sub) : nullptr), pedestal(o.pedestal),
          is_ped(o.is_ped), big_k(o.big_k), bottom(o.bottom), committed(o.committed),
          table(o.table) {}

    std::uint32_t max_height() const {
        std::uint32_t m = 0;
        for (auto v : h) m = std::max(m, v);
        return m;
    }

    /// Role of a stack beyond its height, recursing into sub-games. Stacks
    /// with equal height and equal attribute key are interchangeable; every
    /// label pick below breaks height ties by this key so that behavior
    /// depends only on the attributed multiset (which is also the memo key).
    std::string attr_key(std::uint32_t i) const {
        std::string s;
        s += is_ped[i] ? 'p' : (committed[i] ? 'c' : '.');
        if (sub) s += sub->attr_key(i);
        return s;
    }

    std::uint32_t pick(std::uint32_t height) const {
        int best = -1;
        std::string best_key;
        for (std::uint32_t i = 0; i < 5; ++i) {
            if (h[i] != height) continue;
            std::string key = attr_key(i);
            if (best < 0 || key > best_key) {
                best = static_cast<int>(i);
                best_key = std::move(key);
            }
        }
        if (best < 0) throw StrategyError("internal board lost track of a stack");
        return static_cast<std::uint32_t>(best);
    }

    std::uint32_t label_high() const { return pick(max_height()); }

    std::uint32_t label_low() const {
        std::uint32_t m = h[0];
        for (auto v : h) m = std::min(m, v);
        return pick(m);
    }

    /// Label holding the i-th tallest stack (ties by attribute key).
    std::uint32_t label_kth(std::uint32_t kth) const {
        std::array<std::uint32_t, 5> idx{0, 1, 2, 3, 4};
        std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) {
            if (h[a] != h[b]) return h[a] > h[b];
            return attr_key(a) > attr_key(b);
        });
        return idx[kth];
    }

    std::uint32_t sorted_height(std::uint32_t kth) const { return h[label_kth(kth)]; }

    bool two_matched_rest_zero(std::uint32_t v) const {
        std::uint32_t at = 0, zero = 0;
        for (auto x : h) {
            if (x == v) ++at;
            else if (x == 0) ++zero;
        }
        return v > 0 && at == 2 && zero == 3;
    }

    /// Tokens still needed to fill every stack to the bottom-layer height.
    std::uint32_t bottom_deficit() const {
        std::uint32_t d = 0;
        for (auto v : h)
            if (v < bottom) d += bottom - v;
        return d;
    }

    void activate_sub(std::uint32_t ped, const TableProvider& tables) {
        pedestal = ped;
        std::uint32_t found = 0;
        for (std::uint32_t i = 0; i < 5; ++i) {
            is_ped[i] = h[i] == ped;
            if (is_ped[i]) ++found;
        }
        if (found != 2) throw StrategyError("pedestal activation on a non-matched board");
        sub = std::make_unique<CompositeCore>();
        sub->init(n - ped, tables);
    }

    void apply_adversary(std::uint32_t label) {
        std::uint32_t v = h[label];
        if (mode == Mode::Cases && !sub && adv_made < p && v == max_height()) adv_max_in_pi = true;
        ++h[label];
        ++adv_made;
        if (sub) sub->apply_adversary(label);
    }

    /// Decide this core's move, apply it to the internal boards, and return
    /// (label, height before the placement).
    std::pair<std::uint32_t, std::uint32_t> choose_and_apply(const TableProvider& tables) {
        std::uint32_t label = 0;
        switch (mode) {
        case Mode::Table: label = choose_table(); break;
        case Mode::Lemma6: label = choose_lemma6(); break;
        case Mode::Cases: label = choose_cases(tables); break;
        }
        std::uint32_t before = h[label];
        ++h[label];
        ++my_made;
        return {label, before};
    }

private:
    std::uint32_t choose_table() const {
        std::vector<height_t> v(h.begin(), h.end());
        Position pos = Position::canonicalize(std::move(v));
        std::uint32_t placed = my_made + adv_made;
        BuildingPosition b{pos, 2 * n - placed};
        auto best = table->best_moves(b);
        std::uint32_t cls = best.empty() ? 0 : best[0].target;
        return pick(pos.class_height(cls));
    }

    /// Exact final-moves analysis on raw heights: can this side force a
    /// nonzero Nim-sum once all tokens are down? Only consulted for the last
    /// few plies, where the win argument is itself a finite case check.
    static bool forces_nonzero(std::array<std::uint32_t, 5>& board, std::uint32_t ours,
                               std::uint32_t theirs, bool our_turn) {
        if (ours == 0 && theirs == 0) {
            nim_value acc = 0;
            for (auto v : board) acc ^= v;
            return acc != 0;
        }
        if (our_turn && ours > 0) {
            for (auto& v : board) {
                ++v;
                bool win = forces_nonzero(board, ours - 1, theirs, false);
                --v;
                if (win) return true;
            }
            return false;
        }
        if (!our_turn && theirs > 0) {
            for (auto& v : board) {
                ++v;
                bool win = forces_nonzero(board, ours, theirs - 1, true);
                --v;
                if (!win) return false;
            }
            return true;
        }
        return forces_nonzero(board, ours, theirs, !our_turn);
    }

    std::uint32_t choose_lemma6() {
        std::uint32_t left = n - my_made;
        std::uint32_t deficit = bottom_deficit();
        std::uint32_t his_left = n - adv_made;
        if (left <= 3) {
            // final placements: the remaining plies are a finite case check
            int committed_first = -1;
            for (std::uint32_t i = 0; i < 5; ++i)
                if (committed[i]) committed_first = static_cast<int>(i);
            for (std::uint32_t kth = 0; kth <= 5; ++kth) {
                std::uint32_t label;
                if (kth == 0) {
                    if (committed_first < 0) continue;
                    label = static_cast<std::uint32_t>(committed_first);
                } else {
                    label = label_kth(kth - 1);
                }
                std::array<std::uint32_t, 5> board = h;
                ++board[label];
                if (forces_nonzero(board, left - 1, his_left, false)) return label;
            }
            // nothing provably safe; fall through to the scripted move
        }
        for (std::uint32_t i = 0; i < 5; ++i)
            if (committed[i]) return i;
        // While the deficit fits in this side's remaining tokens, playing low
        // guarantees the bottom layers fill, and any full-bottom end shape has
        // an odd component count somewhere.
        if (deficit <= left) return label_low();
        // Unfillable. The danger is the adversary completing a second stack
        // to 2B, matching the tall stack's 2^(K-2) component. That needs a
        // non-tallest stack already at bottom height with enough adversary
        // tokens left to close the distance.
        std::uint32_t pet = label_high();
        bool match_threat = false;
        for (std::uint32_t i = 0; i < 5; ++i) {
            if (i == pet || h[i] < bottom || h[i] >= 2 * bottom) continue;
            if (his_left >= 2 * bottom - h[i]) match_threat = true;
        }
        if (big_k == 5) {
            if (match_threat) {
                std::uint32_t c = label_kth(2);
                committed[c] = true;
                return c;
            }
            return label_low();
        }
        return match_threat ? label_high() : label_low();
    }

    std::uint32_t sub_move(const TableProvider& tables) {
        auto [label, before] = sub->choose_and_apply(tables);
        (void)before;
        return label;
    }

    std::uint32_t choose_cases(const TableProvider& tables) {
        if (sub) return sub_move(tables);
        if (case2 && !case2_late && my_made == p / 2) {
            if (two_matched_rest_zero(p / 2)) {
                activate_sub(p / 2, tables);
                return sub_move(tables);
            }
            case2_late = true;
        }
        if (my_made == p) {
            if (adv_max_in_pi) {
                high_forever = true;
            } else if (two_matched_rest_zero(p)) {
                std::uint32_t delta = n - p;
                if (delta < 5)
                    throw StrategyError("matched pi-phase with delta <= 4; case 2(ii) has no covered line");
                activate_sub(p, tables);
                return sub_move(tables);
            } else if (n == (1u << k)) {
                high_forever = true;
            }
        }
        if (my_made < p || high_forever) return label_high();
        if (!regime_a) {
            std::int64_t xi = my_made - p; // completed delta-phase rounds
            std::int64_t s2 = sorted_height(1);
            std::int64_t gap = static_cast<std::int64_t>(p) - static_cast<std::int64_t>(n - p);
            if (s2 - xi < gap) regime_a = true;
        }
        if (regime_a) return label_high();
        return label_kth(2); // keep the third stack growing
    }

public:
    /// Canonical state digest: stacks sorted with their attribute keys, so
    /// label permutations that cannot affect future play share a key.
    void serialize(std::string& out) const {
        out += 'C';
        out += std::to_string(n);
        out += static_cast<char>('a' + static_cast<int>(mode));
        std::array<std::uint32_t, 5> idx{0, 1, 2, 3, 4};
        std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) {
            if (h[a] != h[b]) return h[a] > h[b];
            return attr_key(a) > attr_key(b);
        });
        for (auto i : idx) {
            out += std::to_string(h[i]);
            out += attr_key(i);
        }
        out += std::to_string(my_made);
        out += ':';
        out += std::to_string(adv_made);
        out += case2_late ? 'L' : '.';
        out += adv_max_in_pi ? 'M' : '.';
        out += high_forever ? 'H' : '.';
        out += regime_a ? 'A' : '.';
        if (sub) {
            out += '{';
            sub->serialize(out);
            out += '}';
        }
    }
};

} // namespace detail

class P1CompositePlayer final : public Player {
public:
    P1CompositePlayer(GameParams params, TableProvider tables = default_table_provider())
        : params_(params), tables_(std::move(tables)) {
        if (params.stacks != 5) throw StrategyError("the composite strategy plays five stacks");
        if (params.tokens % 2 != 0) throw StrategyError("odd token counts are second-player wins");
        core_.init(params.tokens / 2, tables_);
    }

    P1CompositePlayer(const P1CompositePlayer& o)
        : params_(o.params_), tables_(o.tables_), core_(o.core_) {}

    std::unique_ptr<Player> clone() const override {
        return std::make_unique<P1CompositePlayer>(*this);
    }

    Move next_move(const BuildingPosition& b) override {
        if (b.position.size() != 5) throw StrategyError("five stacks required");
        if (b.position.total() + b.remaining != params_.tokens)
            throw StrategyError("position inconsistent with the game parameters");
        std::uint32_t placed = static_cast<std::uint32_t>(b.position.total());
        if (placed % 2 != 0) throw StrategyError("not the first player's turn");
        std::uint32_t applied = core_.my_made + core_.adv_made;
        if (placed == applied + 1) {
            core_.apply_adversary(infer_adversary_label(b.position));
        } else if (!(placed == applied && applied == 0)) {
            throw StrategyError("position is not a continuation of this player's game");
        }
        if (sorted_board() != std::vector<height_t>(b.position.heights().begin(), b.position.heights().end()))
            throw StrategyError("observed position diverged from the tracked game");
        auto [label, before] = core_.choose_and_apply(tables_);
        (void)label;
        return Move{*b.position.class_of_height(before)};
    }

    std::string state_key() const override {
        std::string s;
        core_.serialize(s);
        return s;
    }

private:
    std::vector<height_t> sorted_board() const {
        std::vector<height_t> v(core_.h.begin(), core_.h.end());
        std::sort(v.begin(), v.end(), std::greater<>());
        return v;
    }

    std::uint32_t infer_adversary_label(const Position& cur) const {
        std::map<height_t, int> delta;
        for (height_t x : cur.heights()) ++delta[x];
        for (auto v : core_.h) --delta[v];
        std::vector<std::pair<height_t, int>> nz;
        for (auto [height, d] : delta)
            if (d != 0) nz.emplace_back(height, d);
        if (nz.size() != 2 || nz[0].second != -1 || nz[1].second != 1 || nz[1].first != nz[0].first + 1)
            throw StrategyError("position is not one placement after the tracked game");
        // any stack at the raised height is a consistent reading of the
        // adversary's move; take the attribute-canonical one
        return core_.pick(nz[0].first);
    }

    GameParams params_;
    TableProvider tables_;
    detail::CompositeCore core_;
};

// ---------------------------------------------------------------------------
// Registry

inline const std::vector<std::string>& strategy_ids() {
    static const std::vector<std::string> ids = {
        "strategy-i", "strategy-ii", "mirror", "high", "low", "p2-endgame", "p1-composite", "table"};
    return ids;
}

inline std::unique_ptr<Player> make_player(std::string_view id, PlayerRole role, GameParams params,
                                           const TableProvider& tables = default_table_provider()) {
    auto require_role = [&](PlayerRole want) {
        if (role != want)
            throw StrategyError(std::string(id) + " is a " + role_name(want) + " strategy");
    };
    if (id == "high") return std::make_unique<HighPlayer>();
    if (id == "low") return std::make_unique<LowPlayer>();
    if (id == "strategy-i") {
        require_role(PlayerRole::P1);
        if (params.stacks != 3) throw StrategyError("strategy-i plays three stacks");
        return std::make_unique<StrategyIPlayer>();
    }
    if (id == "strategy-ii") {
        require_role(PlayerRole::P2);
        if (params.stacks != 3) throw StrategyError("strategy-ii plays three stacks");
        return std::make_unique<StrategyIIPlayer>();
    }
    if (id == "mirror") {
        require_role(PlayerRole::P2);
        return std::make_unique<MirrorPlayer>();
    }
    if (id == "p2-endgame") {
        require_role(PlayerRole::P2);
        return std::make_unique<P2EndgamePlayer>(params);
    }
    if (id == "p1-composite") {
        require_role(PlayerRole::P1);
        return std::make_unique<P1CompositePlayer>(params, tables);
    }
    if (id == "table") return std::make_unique<TablePlayer>(tables(params, Rule::Normal));
    throw StrategyError("unknown strategy id: " + std::string(id));
}

// Arithmetic shape of the five-stack first-player strategy for a given n
// (tokens 2n): which branch of the win argument the phase plan would use.
// The player itself answers from a perfect-play table for n <= 12.
enum class CompositeCase { Lemma6, Case1, Case2 };

inline std::uint32_t largest_power_below(std::uint32_t n) {
    return 1u << (std::bit_width(n - 1) - 1); // p(n), for n >= 2
}

inline CompositeCase composite_case(std::uint32_t n) {
    if (n < 5) throw StrategyError("second player wins below ten tokens");
    if ((n & (n + 1)) == 0) return CompositeCase::Lemma6;
    std::uint32_t p = largest_power_below(n);
    return (n - p) <= 4 ? CompositeCase::Case2 : CompositeCase::Case1;
}

inline bool composite_plays_from_table(std::uint32_t n) { return n >= 5 && n <= 12; }

} // namespace bn
