#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bn/nim.hpp"

namespace bn {

using height_t = std::uint32_t;

// Heights never exceed the token total, which is capped by configuration.
inline constexpr std::uint32_t kMaxTokens = 1u << 16;

enum class Outcome : std::uint8_t { P = 0, N = 1 };

inline char outcome_char(Outcome o) { return o == Outcome::P ? 'P' : 'N'; }

enum class Rule : std::uint8_t { Normal = 0, Misere = 1 };

struct GameParams {
    std::uint32_t tokens = 0;
    std::uint32_t stacks = 0;

    void validate() const {
        if (stacks < 1) throw std::invalid_argument("stacks must be >= 1");
        if (stacks > 0xFFFF) throw std::invalid_argument("stacks out of range");
        if (tokens > kMaxTokens) throw std::invalid_argument("token count exceeds configured cap");
    }
    bool operator==(const GameParams&) const = default;
};

/// Stack heights in canonical (non-increasing) order.
class Position {
public:
    Position() = default;
    explicit Position(std::vector<height_t> canonical) : h_(std::move(canonical)) {
        for (std::size_t i = 1; i < h_.size(); ++i)
            if (h_[i - 1] < h_[i]) throw std::invalid_argument("position not canonical");
    }

    static Position canonicalize(std::vector<height_t> raw) {
        std::sort(raw.begin(), raw.end(), std::greater<>());
        return Position(std::move(raw));
    }

    std::span<const height_t> heights() const { return h_; }
    std::size_t size() const { return h_.size(); }
    height_t operator[](std::size_t i) const { return h_[i]; }
    std::uint64_t total() const { return std::accumulate(h_.begin(), h_.end(), std::uint64_t{0}); }
    height_t max_height() const { return h_.empty() ? 0 : h_.front(); }
    height_t min_height() const { return h_.empty() ? 0 : h_.back(); }

    nim_value nim() const {
        nim_value acc = 0;
        for (height_t h : h_) acc ^= h;
        return acc;
    }

    /// Raise one stack of the class'th distinct height (0 = tallest class),
    /// keeping canonical order.
    Position raised(std::uint32_t cls) const {
        std::vector<height_t> v = h_;
        std::size_t i = index_of_class(cls);
        ++v[i];
        while (i > 0 && v[i - 1] < v[i]) {
            std::swap(v[i - 1], v[i]);
            --i;
        }
        Position p;
        p.h_ = std::move(v);
        return p;
    }

    /// Number of distinct heights.
    std::uint32_t class_count() const {
        std::uint32_t n = 0;
        for (std::size_t i = 0; i < h_.size(); ++i)
            if (i == 0 || h_[i] != h_[i - 1]) ++n;
        return n;
    }

    /// First stack index of the given distinct-height class.
    std::size_t index_of_class(std::uint32_t cls) const {
        std::uint32_t seen = 0;
        for (std::size_t i = 0; i < h_.size(); ++i) {
            if (i == 0 || h_[i] != h_[i - 1]) {
                if (seen == cls) return i;
                ++seen;
            }
        }
        throw std::out_of_range("no such height class");
    }

    height_t class_height(std::uint32_t cls) const { return h_[index_of_class(cls)]; }

    /// Class index whose height equals h, if present.
    std::optional<std::uint32_t> class_of_height(height_t h) const {
        std::uint32_t cls = 0;
        for (std::size_t i = 0; i < h_.size(); ++i) {
            if (i == 0 || h_[i] != h_[i - 1]) {
                if (h_[i] == h) return cls;
                ++cls;
            }
        }
        return std::nullopt;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < h_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(h_[i]);
        }
        return s;
    }

    static Position parse(std::string_view text, std::uint32_t expect_stacks = 0) {
        std::vector<height_t> v;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t comma = text.find(',', pos);
            std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
            unsigned long val = 0;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), val);
            if (ec != std::errc{} || p != tok.data() + tok.size() || tok.empty())
                throw std::invalid_argument("bad position text: '" + std::string(text) + "'");
            v.push_back(static_cast<height_t>(val));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        if (expect_stacks && v.size() != expect_stacks)
            throw std::invalid_argument("position has wrong stack count");
        return canonicalize(std::move(v));
    }

    bool operator==(const Position&) const = default;
    auto operator<=>(const Position&) const = default;

private:
    std::vector<height_t> h_;
};

struct BuildingPosition {
    Position position;
    std::uint32_t remaining = 0; // tokens not yet placed

    std::string to_string() const {
        return position.to_string() + ";\xce\xbe=" + std::to_string(remaining);
    }

    // Accepts "5,3,2,1;ξ=4" and the ASCII spelling "5,3,2,1;xi=4".
    static BuildingPosition parse(std::string_view text, std::uint32_t expect_stacks = 0) {
        std::size_t semi = text.find(';');
        if (semi == std::string_view::npos)
            throw std::invalid_argument("building position needs ';\xce\xbe=<n>' suffix");
        Position p = Position::parse(text.substr(0, semi), expect_stacks);
        std::string_view rest = text.substr(semi + 1);
        if (rest.starts_with("\xce\xbe=")) rest.remove_prefix(3);
        else if (rest.starts_with("xi=")) rest.remove_prefix(3);
        unsigned long rem = 0;
        auto [q, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), rem);
        if (ec != std::errc{} || q != rest.data() + rest.size() || rest.empty())
            throw std::invalid_argument("bad remaining-token count");
        return BuildingPosition{std::move(p), static_cast<std::uint32_t>(rem)};
    }

    bool operator==(const BuildingPosition&) const = default;
};

/// A building move: which distinct height class receives the next token.
struct Move {
    std::uint32_t target = 0;
    bool operator==(const Move&) const = default;
};

inline Position canonicalize(std::vector<height_t> raw) {
    return Position::canonicalize(std::move(raw));
}

/// One successor per distinct resulting position, ordered by target class.
inline std::vector<std::pair<Move, BuildingPosition>> legal_moves(const BuildingPosition& b) {
    std::vector<std::pair<Move, BuildingPosition>> out;
    if (b.remaining == 0) return out;
    std::uint32_t classes = b.position.class_count();
    out.reserve(classes);
    for (std::uint32_t c = 0; c < classes; ++c)
        out.emplace_back(Move{c}, BuildingPosition{b.position.raised(c), b.remaining - 1});
    return out;
}

/// Theorem-1 outcome of a plain Nim position.
inline Outcome bouton_outcome(const Position& p) {
    return p.nim() == 0 ? Outcome::P : Outcome::N;
}

/// True iff the Nim-sum is neither 0 nor 2^h - 1 (h >= 1): a builder who just
/// moved here cannot be answered into Nim-sum 0 by a single added token.
inline bool corollary1_safe(const Position& p) {
    nim_value s = p.nim();
    return s != 0 && !is_mersenne_pos(s);
}

} // namespace bn

template <>
struct std::hash<bn::Position> {
    std::size_t operator()(const bn::Position& p) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (bn::height_t x : p.heights()) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};
