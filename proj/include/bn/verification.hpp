#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "bn/game.hpp"
#include "bn/nim.hpp"
#include "bn/solver.hpp"
#include "bn/strategies.hpp"

namespace bn {

// ---------------------------------------------------------------------------
// Exhaustive adversary certification

struct CertOptions {
    bool use_memo = true;
    bool check_leaf_win = true;
    /// Called after every move with the resulting position; return false (and
    /// fill msg) to flag a violation. holder_moved tells whose move it was.
    std::function<bool(const BuildingPosition&, bool holder_moved, std::string& msg)> invariant;
};

struct CertResult {
    bool pass = true;
    std::uint64_t nodes = 0;
    std::uint64_t leaves = 0;
    std::string reason;                  // why it failed, when it did
    std::vector<std::string> transcript; // the failing line, move by move
};

namespace detail {

struct CertRun {
    GameParams params;
    PlayerRole role;
    const CertOptions& opts;
    CertResult res;
    std::unordered_set<std::string> memo_pass;
    std::vector<std::string> line;

    CertRun(GameParams g, PlayerRole r, const CertOptions& o) : params(g), role(r), opts(o) {}

    bool fail(std::string why) {
        res.pass = false;
        res.reason = std::move(why);
        res.transcript = line;
        return false;
    }

    bool step(const BuildingPosition& nb, PlayerRole mover, bool holder, Player& pl) {
        line.push_back(std::string(role_name(mover)) + " -> " + nb.to_string());
        bool ok = true;
        std::string msg;
        if (opts.invariant && !opts.invariant(nb, holder, msg)) ok = fail("invariant violated: " + msg);
        if (ok) ok = walk(nb, pl);
        line.pop_back();
        return ok;
    }

    bool walk(const BuildingPosition& b, Player& pl) {
        ++res.nodes;
        if (b.remaining == 0) {
            ++res.leaves;
            if (!opts.check_leaf_win) return true;
            nim_value s = b.position.nim();
            bool holder_starts_nim = mover_of(params, b) == role;
            bool holder_wins = holder_starts_nim == (s != 0);
            if (!holder_wins)
                return fail("leaf " + b.position.to_string() + " has Nim-sum " + std::to_string(s) +
                            (holder_starts_nim ? " with the strategy holder to move"
                                               : " with the adversary to move"));
            return true;
        }
        PlayerRole mover = mover_of(params, b);
        std::string key;
        if (opts.use_memo) {
            key = b.position.to_string();
            key += mover == role ? '*' : '-';
            key += pl.state_key();
            if (memo_pass.count(key)) return true;
        }
        bool ok;
        if (mover == role) {
            Move mv;
            try {
                mv = pl.next_move(b);
            } catch (const StrategyError& e) {
                return fail("strategy refused at " + b.to_string() + ": " + e.what());
            }
            if (mv.target >= b.position.class_count())
                return fail("strategy returned an invalid move at " + b.to_string());
            BuildingPosition nb{b.position.raised(mv.target), b.remaining - 1};
            ok = step(nb, mover, true, pl);
        } else {
            ok = true;
            std::uint32_t classes = b.position.class_count();
            for (std::uint32_t c = 0; c < classes && ok; ++c) {
                BuildingPosition nb{b.position.raised(c), b.remaining - 1};
                std::unique_ptr<Player> branch = pl.clone();
                ok = step(nb, mover, false, *branch);
            }
        }
        if (ok && opts.use_memo) memo_pass.insert(key);
        return ok;
    }
};

} // namespace detail

/// Fix one side's moves by the given player and branch over every adversary
/// reply; pass iff the certified side wins the Nim stage on every leaf (or,
/// with check_leaf_win off, iff no invariant violation or refusal occurs).
inline CertResult exhaustive_strategy_check(const Player& prototype, PlayerRole role,
                                            GameParams params, const CertOptions& opts = {}) {
    params.validate();
    detail::CertRun run(params, role, opts);
    std::unique_ptr<Player> pl = prototype.clone();
    BuildingPosition root{Position(std::vector<height_t>(params.stacks, 0)), params.tokens};
    run.walk(root, *pl);
    return run.res;
}

inline CertResult exhaustive_strategy_check(std::string_view strategy_id, PlayerRole role,
                                            GameParams params, const CertOptions& opts = {},
                                            const TableProvider& tables = default_table_provider()) {
    std::unique_ptr<Player> pl = make_player(strategy_id, role, params, tables);
    return exhaustive_strategy_check(*pl, role, params, opts);
}

// ---------------------------------------------------------------------------
// Claims and reports

enum class Verdict : std::uint8_t { Pass, Fail, Skipped, Finding };

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
    case Verdict::Finding: return "finding";
    }
    return "?";
}

struct CellResult {
    std::string cell;
    Verdict verdict = Verdict::Pass;
    std::string detail; // counterexample or notes
    double millis = 0;
};

struct Report {
    std::string claim;
    std::vector<CellResult> cells;
    double total_millis = 0;

    Verdict overall() const {
        bool finding = false, skipped = false;
        for (const auto& c : cells) {
            if (c.verdict == Verdict::Fail) return Verdict::Fail;
            finding |= c.verdict == Verdict::Finding;
            skipped |= c.verdict == Verdict::Skipped;
        }
        if (finding) return Verdict::Finding;
        if (skipped) return Verdict::Skipped;
        return Verdict::Pass;
    }

    /// 0 all pass, 1 any fail, 2 finding present, 3 budget skip present.
    int exit_code() const {
        switch (overall()) {
        case Verdict::Pass: return 0;
        case Verdict::Fail: return 1;
        case Verdict::Finding: return 2;
        case Verdict::Skipped: return 3;
        }
        return 1;
    }

    std::string to_text() const {
        std::string out = "# claim " + claim + " elapsed_ms=" + std::to_string(total_millis) + "\n";
        for (const auto& c : cells) {
            out += c.cell;
            out += ": ";
            out += verdict_name(c.verdict);
            out += " (" + std::to_string(c.millis) + " ms)";
            if (!c.detail.empty()) out += "  " + c.detail;
            out += '\n';
        }
        out += "overall: ";
        out += verdict_name(overall());
        out += '\n';
        return out;
    }

    /// Stable machine form: wall times only on the header line.
    std::string to_machine() const {
        std::string out = "# claim=" + claim + " elapsed_ms=" + std::to_string(total_millis) + "\n";
        for (const auto& c : cells) {
            nlohmann::json j{{"claim", claim},
                             {"cell", c.cell},
                             {"verdict", verdict_name(c.verdict)},
                             {"counterexample", c.detail}};
            out += j.dump();
            out += '\n';
        }
        return out;
    }
};

enum class ClaimId {
    Thm1Bouton,
    Thm2Easy,
    Lemma1Strategies,
    Lemma2NsFacts,
    Corollary1,
    Thm3Three,
    Thm4Small,
    LemmaDs8,
    Lemma2k2,
    LemmaSpecial,
    Thm5Five,
    GrundyRange,
    GrundyParity,
    MisereEquivalence,
    Conjecture1Sweep,
};

inline const std::vector<std::pair<ClaimId, std::string_view>>& claim_names() {
    static const std::vector<std::pair<ClaimId, std::string_view>> names = {
        {ClaimId::Thm1Bouton, "thm1-bouton-consistency"},
        {ClaimId::Thm2Easy, "thm2-easy-cases"},
        {ClaimId::Lemma1Strategies, "lemma1-strategies"},
        {ClaimId::Lemma2NsFacts, "lemma2-ns-facts"},
        {ClaimId::Corollary1, "corollary1"},
        {ClaimId::Thm3Three, "thm3-three-stacks"},
        {ClaimId::Thm4Small, "thm4-small-n"},
        {ClaimId::LemmaDs8, "lemma-ds8"},
        {ClaimId::Lemma2k2, "lemma-2k2"},
        {ClaimId::LemmaSpecial, "lemma-special-cases"},
        {ClaimId::Thm5Five, "thm5-five-stacks"},
        {ClaimId::GrundyRange, "grundy-range"},
        {ClaimId::GrundyParity, "grundy-parity"},
        {ClaimId::MisereEquivalence, "misere-equivalence"},
        {ClaimId::Conjecture1Sweep, "conjecture1-sweep"},
    };
    return names;
}

inline std::string claim_name(ClaimId id) {
    for (auto& [cid, name] : claim_names())
        if (cid == id) return std::string(name);
    return "?";
}

inline std::optional<ClaimId> claim_from_name(std::string_view name) {
    for (auto& [cid, cname] : claim_names())
        if (cname == name) return cid;
    return std::nullopt;
}

struct VerifyOptions {
    unsigned jobs = 1;
    bool extended = false; // larger optional ranges (e.g. 126-token run)
    std::uint64_t budget_bytes = 512ull << 20;
    std::uint32_t max_tokens = 0; // 0 = each claim's full standard grid

    bool in_range(std::uint32_t tokens) const { return max_tokens == 0 || tokens <= max_tokens; }
};

namespace detail {

inline std::string cert_detail(const CertResult& c) {
    if (c.pass) return "nodes=" + std::to_string(c.nodes);
    std::string d = c.reason;
    for (const auto& line : c.transcript) {
        d += " | ";
        d += line;
    }
    return d;
}

class CellTimer {
public:
    explicit CellTimer(Report& r) : r_(r) {}

    void add(std::string name, Verdict v, std::string detail = {}) {
        auto now = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(now - last_).count();
        r_.cells.push_back({std::move(name), v, std::move(detail), ms});
        r_.total_millis += ms;
        last_ = now;
    }

private:
    Report& r_;
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

inline Outcome root_outcome(std::uint32_t tokens, std::uint32_t stacks, Rule rule, unsigned jobs) {
    return solve_root({tokens, stacks}, rule, nullptr, jobs);
}

/// Expected root outcome where the theory settles it; empty when only
/// conjectured (odd stacks > 5, tokens > stacks + 3).
inline std::optional<Outcome> theory_outcome(std::uint32_t stacks, std::uint32_t tokens) {
    if (tokens == 0) return Outcome::P;
    if (tokens % 2 == 1) return Outcome::P;
    if (stacks == 1) return Outcome::N;
    if (stacks % 2 == 0) return Outcome::P;
    if (stacks == 3) return is_mersenne(static_cast<nim_value>(tokens) + 1) ? Outcome::P : Outcome::N;
    if (stacks == 5) return tokens <= 8 ? Outcome::P : Outcome::N;
    if (tokens <= stacks + 3) return Outcome::P;
    return std::nullopt;
}

} // namespace detail

// ---------------------------------------------------------------------------
// The conjecture sweep

struct SweepCell {
    std::uint32_t stacks = 0, tokens = 0;
    Outcome outcome = Outcome::P;
    double millis = 0;
    std::uint64_t entries = 0;
    Verdict verdict = Verdict::Pass;
};

struct SweepResult {
    Report report;
    std::vector<SweepCell> cells;

    std::string csv() const {
        std::string out = "stacks,tokens,outcome,solve_ms,entries\n";
        for (const auto& c : cells) {
            out += std::to_string(c.stacks) + ',' + std::to_string(c.tokens) + ',' +
                   outcome_char(c.outcome) + ',' + std::to_string(c.millis) + ',' +
                   std::to_string(c.entries) + '\n';
        }
        return out;
    }
};

/// Solve every (stacks, even tokens <= cap) cell. A P cell that contradicts a
/// settled theorem fails; a P cell beyond settled theory is a finding.
inline SweepResult sweep(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& columns,
                         const VerifyOptions& opts = {}) {
    SweepResult res;
    res.report.claim = claim_name(ClaimId::Conjecture1Sweep);
    detail::CellTimer timer(res.report);
    for (auto [stacks, cap] : columns) {
        if (opts.max_tokens) cap = std::min(cap, opts.max_tokens);
        for (std::uint32_t tokens = 2; tokens <= cap; tokens += 2) {
            if (estimate_table_bytes({tokens, stacks}, false) > opts.budget_bytes) {
                timer.add("l=" + std::to_string(stacks) + " tokens=" + std::to_string(tokens),
                          Verdict::Skipped, "over memory budget");
                continue;
            }
            auto t0 = std::chrono::steady_clock::now();
            SolveStats stats;
            Outcome out = solve_root({tokens, stacks}, Rule::Normal, &stats, opts.jobs);
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            auto expected = detail::theory_outcome(stacks, tokens);
            Verdict v;
            std::string note;
            if (expected && out != *expected) {
                v = Verdict::Fail;
                note = std::string("expected ") + outcome_char(*expected) + " by settled theory";
            } else if (!expected && out == Outcome::P) {
                v = Verdict::Finding;
                note = "P cell beyond settled theory: a counterexample candidate";
            } else {
                v = Verdict::Pass;
            }
            res.cells.push_back({stacks, tokens, out, ms, stats.entries, v});
            timer.add("l=" + std::to_string(stacks) + " tokens=" + std::to_string(tokens), v, note);
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// verify()

inline Report verify(ClaimId id, const VerifyOptions& opts = {});

namespace detail {

inline Report verify_thm1(const VerifyOptions& opts) {
    Report r{claim_name(ClaimId::Thm1Bouton), {}, 0};
    CellTimer timer(r);
    struct Cfg { std::uint32_t tokens, stacks; Rule rule; };
    for (Cfg cfg : {Cfg{10, 5, Rule::Normal}, Cfg{12, 3, Rule::Normal}, Cfg{9, 4, Rule::Normal},
                    Cfg{11, 5, Rule::Misere}}) {
        SolveTable t = solve({cfg.tokens, cfg.stacks}, cfg.rule, {.jobs = opts.jobs});
        std::string bad;
        std::vector<height_t> h(cfg.stacks);
        PartitionCounter::first_partition(h, cfg.tokens);
        for (std::uint64_t idx = 0; idx < t.layer_entries(cfg.tokens); ++idx) {
            Position p{std::vector<height_t>(h)};
            Outcome want = cfg.rule == Rule::Normal ? bouton_outcome(p) : misere_terminal_outcome(p);
            if (t.outcome_at(cfg.tokens, idx) != want) {
                bad = p.to_string();
                break;
            }
            PartitionCounter::next_partition(h);
        }
        timer.add("tokens=" + std::to_string(cfg.tokens) + " l=" + std::to_string(cfg.stacks) +
                      (cfg.rule == Rule::Misere ? " misere" : ""),
                  bad.empty() ? Verdict::Pass : Verdict::Fail, bad);
    }
    return r;
}

inline Report verify_thm2(const VerifyOptions& opts) {
    Report r{claim_name(ClaimId::Thm2Easy), {}, 0};
    CellTimer timer(r);
    for (std::uint32_t l : {3u, 4u, 5u}) {
        bool ok = true;
        std::string bad;
        for (std::uint32_t n = 1; n <= 13; n += 2)
            if (opts.in_range(n) && root_outcome(n, l, Rule::Normal, opts.jobs) != Outcome::P) {
                ok = false;
                bad = "n=" + std::to_string(n);
                break;
            }
        timer.add("odd-n l=" + std::to_string(l), ok ? Verdict::Pass : Verdict::Fail, bad);
    }
    for (std::uint32_t l : {2u, 4u, 6u}) {
        bool ok = true;
        std::string bad;
        for (std::uint32_t n = 2; n <= 12; n += 2)
            if (opts.in_range(n) && root_outcome(n, l, Rule::Normal, opts.jobs) != Outcome::P) {
                ok = false;
                bad = "n=" + std::to_string(n);
                break;
            }
        timer.add("even-n even-l l=" + std::to_string(l), ok ? Verdict::Pass : Verdict::Fail, bad);
    }
    return r;
}

inline bool leaf_shape_I(const Position& s) {
    return (s[1] == s[2] || s[1] == s[2] + 1) && s[0] >= s[2] + 1;
}

inline Report verify_lemma1(const VerifyOptions& opts) {
    Report r{claim_name(ClaimId::Lemma1Strategies), {}, 0};
    CellTimer timer(r);
    for (std::uint32_t n = 2; n <= 12; n += 2) {
        if (!opts.in_range(n)) continue;
        CertOptions co;
        co.check_leaf_win = false;
        co.invariant = [](const BuildingPosition& b, bool holder, std::string& msg) {
            if (holder && b.position[1] != b.position[2]) {
                msg = "not of the form (y,x,x): " + b.position.to_string();
                return false;
            }
            if (!holder && b.remaining == 0 && !leaf_shape_I(b.position)) {
                msg = "final shape off the lemma: " + b.position.to_string();
                return false;
            }
            return true;
        };
        CertResult c = exhaustive_strategy_check(StrategyIPlayer{}, PlayerRole::P1, {n, 3}, co);
        timer.add("strategy-i-form n=" + std::to_string(n), c.pass ? Verdict::Pass : Verdict::Fail,
                  cert_detail(c));
    }
    for (std::uint32_t n = 2; n <= 12; n += 2) {
        if (!opts.in_range(n)) continue;
        CertOptions co;
        co.check_leaf_win = false;
        co.invariant = [](const BuildingPosition& b, bool holder, std::string& msg) {
            if (holder && b.position[0] != b.position[1] + b.position[2]) {
                msg = "s1 != s2+s3: " + b.position.to_string();
                return false;
            }
            return true;
        };
        CertResult c = exhaustive_strategy_check(StrategyIIPlayer{}, PlayerRole::P2, {n, 3}, co);
        timer.add("strategy-ii-form n=" + std::to_string(n), c.pass ? Verdict::Pass : Verdict::Fail,
                  cert_detail(c));
    }
    // win certifications, following the three-stacks theorem
    for (std::uint32_t n = 2; n <= 14; n += 2) {
        if (!opts.in_range(n)) continue;
        bool exceptional = is_mersenne(static_cast<nim_value>(n) + 1); // n = 2^k - 2
        CertResult c = exhaustive_strategy_check(StrategyIPlayer{}, PlayerRole::P1, {n, 3});
        bool ok = c.pass != exceptional;
        timer.add("strategy-i-wins n=" + std::to_string(n) + (exceptional ? " (expect fail)" : ""),
                  ok ? Verdict::Pass : Verdict::Fail,
                  ok ? "nodes=" + std::to_string(c.nodes) : cert_detail(c));
        if (exceptional) {
            CertResult c2 = exhaustive_strategy_check(StrategyIIPlayer{}, PlayerRole::P2, {n, 3});
            timer.add("strategy-ii-wins n=" + std::to_string(n),
                      c2.pass ? Verdict::Pass : Verdict::Fail, cert_detail(c2));
        }
    }
    return r;
}

inline Report verify_ns_facts(const VerifyOptions&) {
    Report r{claim_name(ClaimId::Lemma2NsFacts), {}, 0};
    CellTimer timer(r);

    bool ok = true;
    std::string bad;
    for (nim_value x = 0; x < 1024 && ok; ++x)
        for (nim_value y = 0; y < 1024 && ok; ++y)
            if (!check_ns_fact(NsFact::NS1, {x, y}) || !check_ns_fact(NsFact::NS2, {x, y}) ||
                (((x ^ y) == x + y) != ((x & y) == 0))) {
                ok = false;
                bad = std::to_string(x) + "," + std::to_string(y);
            }
    std::mt19937_64 rng(0x5eedULL);
    for (int i = 0; i < 10000 && ok; ++i) {
        nim_value x = rng(), y = rng();
        if (!check_ns_fact(NsFact::NS1, {x, y})) {
            ok = false;
            bad = std::to_string(x) + "," + std::to_string(y);
        }
    }
    timer.add("NS1+NS2 (10-bit exhaustive, 64-bit random)", ok ? Verdict::Pass : Verdict::Fail, bad);

    ok = true;
    bad.clear();
    for (nim_value x = 0; x < (1 << 16) && ok; ++x)
        if (!check_ns_fact(NsFact::NS3, {x}) || !check_ns_fact(NsFact::NS4, {x})) {
            ok = false;
            bad = std::to_string(x);
        }
    timer.add("NS3+NS4 (16-bit exhaustive)", ok ? Verdict::Pass : Verdict::Fail, bad);

    ok = true;
    bad.clear();
    for (nim_value y = 1; y < 4096 && ok; ++y) {
        if (is_mersenne_pos(y)) {
            for (nim_value x = 0; x <= y && ok; ++x)
                if ((x ^ (y - x)) != y) {
                    ok = false;
                    bad = "y=" + std::to_string(y) + " x=" + std::to_string(x);
                }
        } else {
            bool strict = false;
            for (nim_value x = 0; x <= y && !strict; ++x)
                if ((x ^ (y - x)) < y) strict = true;
            if (!strict) {
                ok = false;
                bad = "y=" + std::to_string(y) + " has no strict split";
            }
        }
    }
    timer.add("NS5 (both directions, y < 4096)", ok ? Verdict::Pass : Verdict::Fail, bad);

    ok = true;
    bad.clear();
    for (nim_value a = 0; a < 64 && ok; ++a)
        for (nim_value b = 0; b < 64 && ok; ++b)
            for (nim_value c = 0; c < 64 && ok; ++c)
                if (!check_ns_fact(NsFact::NS6, {a, b, c})) {
                    ok = false;
                    bad = std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c);
                }
    timer.add("NS6 (l=3, heights < 64)", ok ? Verdict::Pass : Verdict::Fail, bad);

    ok = true;
    bad.clear();
    for (nim_value s1 = 0; s1 < 32 && ok; ++s1)
        for (nim_value s2 = 0; s2 <= s1 && ok; ++s2)
            for (nim_value s3 = 0; s3 <= s2 && ok; ++s3)
                for (nim_value s4 = 0; s4 <= s3 && ok; ++s4)
                    for (nim_value s5 = 0; s5 <= s4 && ok; ++s5) {
                        nim_value sum = s1 + s2 + s3 + s4 + s5;
                        nim_value fold = s1 ^ s2 ^ s3 ^ s4 ^ s5;
                        for (nim_value y = sum + 1; y <= sum + 32; ++y)
                            if ((y ^ fold) == 0) {
                                ok = false;
                                bad = "y=" + std::to_string(y);
                            }
                    }
    timer.add("NS7 (l<=5, heights < 32, y <= sum+32)", ok ? Verdict::Pass : Verdict::Fail, bad);
    return r;
}

inline Report verify_corollary1(const VerifyOptions&) {
    Report r{claim_name(ClaimId::Corollary1), {}, 0};
    CellTimer timer(r);
    bool ok = true;
    std::string bad;
    for (height_t a = 0; a <= 24 && ok; ++a)
        for (height_t b = 0; b <= a && ok; ++b)
            for (height_t c = 0; c <= b && ok; ++c) {
                Position p{std::vector<height_t>{a, b, c}};
                if (!corollary1_safe(p)) continue;
                for (std::uint32_t cls = 0; cls < p.class_count(); ++cls)
                    if (p.raised(cls).nim() == 0) {
                        ok = false;
                        bad = p.to_string();
                    }
            }
    timer.add("safe => no zeroing reply (l=3, heights <= 24)", ok ? Verdict::Pass : Verdict::Fail, bad);

    // the converse is false: (2,5) has Mersenne Nim-sum yet no zeroing reply
    Position w = Position::parse("5,2");
    bool witness = !corollary1_safe(w);
    for (std::uint32_t cls = 0; cls < w.class_count(); ++cls)
        if (w.raised(cls).nim() == 0) witness = false;
    timer.add("not-iff witness 2+5", witness ? Verdict::Pass : Verdict::Fail);
    return r;
}

inline Report verify_thm3(const VerifyOptions& opts) {
    Report r{claim_name(ClaimId::Thm3Three), {}, 0};
    CellTimer timer(r);
    for (std::uint32_t n = 2; n <= 62; n += 2) {
        if (!opts.in_range(n)) continue;
        bool exceptional = is_mersenne(static_cast<nim_value>(n) + 1);
        Outcome got = root_outcome(n, 3, Rule::Normal, opts.jobs);
        bool ok = (got == Outcome::P) == exceptional;
        timer.add("n=" + std::to_string(n), ok ? Verdict::Pass : Verdict::Fail,
                  ok ? "" : std::string("root ") + outcome_char(got));
    }
    return r;
}

inline Report verify_thm4(const VerifyOptions& opts) {
    Report r{claim_name(ClaimId::Thm4Small), {}, 0};
    CellTimer timer(r);
    auto root_cell = [&](std::uint32_t l, std::uint32_t n) {
        if (!opts.in_range(n)) return;
        Outcome got = root_outcome(n, l, Rule::Normal, opts.jobs);
        timer.add("root l=" + std::to_string(l) + " n=" + std::to_string(n),
                  got == Outcome::P ? Verdict::Pass : Verdict::Fail,
                  got == Outcome::P ? "" : "root N");
    };
    for (std::uint32_t n : {2u, 4u, 6u, 8u}) root_cell(5, n);
    for (std::uint32_t n = 2; n <= 10; n += 2) root_cell(7, n);
    for (std::uint32_t n = 2; n <= 12; n += 2) root_cell(9, n);
    struct Cell { std::uint32_t l, n; };
    for (Cell cell : {Cell{5, 6}, Cell{5, 8}, Cell{7, 8}, Cell{7, 10}, Cell{9, 12}}) {
        if (!opts.in_range(cell.n)) continue;
        CertResult c = exhaustive_strategy_check(P2EndgamePlayer{{cell.n, cell.l}}, PlayerRole::P2,
                                                 {cell.n, cell.l});
        timer.add("p2-endgame l=" + std::to_string(cell.l) + " n=" + std::to_string(cell.n),
                  c.pass ? Verdict::Pass : Verdict::Fail, cert_detail(c));
    }
    return r;
}

inline Report verify_ds8(const VerifyOptions&) {
    Report r{claim_name(ClaimId::LemmaDs8), {}, 0};
    CellTimer timer(r);
    for (nim_value pi : {1u, 2u, 4u}) {
        bool ok = true;
        std::string bad;
        for (nim_value x1 = 0; x1 <= 12 && ok; ++x1)
            for (nim_value x2 = 0; x2 <= 12 && ok; ++x2)
                for (nim_value x3 = 0; x3 <= 12 && ok; ++x3)
                    for (nim_value x4 = 0; x4 <= 12 && ok; ++x4)
                        for (nim_value x5 = 0; x5 <= 12 && ok; ++x5) {
                            nim_value plain = x1 ^ x2 ^ x3 ^ x4 ^ x5;
                            if (plain == 0) continue;
                            if (((x1 + pi) ^ (x2 + pi) ^ x3 ^ x4 ^ x5) != 0) continue;
                            if (x1 + x2 + x3 + x4 + x5 < 4 * pi) {
                                ok = false;
                                bad = std::to_string(x1) + "," + std::to_string(x2) + "," +
                                      std::to_string(x3) + "," + std::to_string(x4) + "," +
                                      std::to_string(x5);
                            }
                        }
        timer.add("pi=" + std::to_string(pi), ok ? Verdict::Pass : Verdict::Fail, bad);
    }
    return r;
}

inline Report verify_lemma_2k2(const VerifyOptions& opts) {
    Report r{claim_name(ClaimId::Lemma2k2), {}, 0};
    CellTimer timer(r);
    std::vector<std::uint32_t> tokens_list = {62};
    if (opts.extended) tokens_list.push_back(126);
    for (std::uint32_t tokens : tokens_list) {
        if (!opts.in_range(tokens)) continue;
        if (estimate_table_bytes({tokens, 5}, false) > opts.budget_bytes) {
            timer.add("tokens=" + std::to_string(tokens), Verdict::Skipped, "over memory budget");
            continue;
        }
        Outcome got = root_outcome(tokens, 5, Rule::Normal, opts.jobs);
        timer.add("tokens=" + std::to_string(tokens),
                  got == Outcome::N ? Verdict::Pass : Verdict::Fail,
                  got == Outcome::N ? "" : "root P");
    }
    return r;
}

inline Report verify_lemma_special(const VerifyOptions& opts) {
    Report r{claim_name(ClaimId::LemmaSpecial), {}, 0};
    CellTimer timer(r);
    for (std::uint32_t n = 5; n <= 12; ++n) {
        if (!opts.in_range(2 * n)) continue;
        Outcome got = root_outcome(2 * n, 5, Rule::Normal, opts.jobs);
        timer.add("n=" + std::to_string(n), got == Outcome::N ? Verdict::Pass : Verdict::Fail,
                  got == Outcome::N ? "" : "root P");
    }
    return r;
}

inline Report verify_thm5(const VerifyOptions& opts) {
    Report r{claim_name(ClaimId::Thm5Five), {}, 0};
    CellTimer timer(r);
    for (std::uint32_t n = 2; n <= 16; ++n) {
        if (!opts.in_range(2 * n)) continue;
        Outcome got = root_outcome(2 * n, 5, Rule::Normal, opts.jobs);
        Outcome want = n >= 5 ? Outcome::N : Outcome::P;
        timer.add("root n=" + std::to_string(n), got == want ? Verdict::Pass : Verdict::Fail,
                  got == want ? "" : std::string("root ") + outcome_char(got));
    }
    for (std::uint32_t n = 5; n <= 10; ++n) {
        if (!opts.in_range(2 * n)) continue;
        CertResult c = exhaustive_strategy_check(P1CompositePlayer{{2 * n, 5}}, PlayerRole::P1,
                                                 {2 * n, 5});
        timer.add("p1-composite n=" + std::to_string(n), c.pass ? Verdict::Pass : Verdict::Fail,
                  cert_detail(c));
    }
    return r;
}

inline Report verify_grundy(ClaimId id, const VerifyOptions& opts) {
    Report r{claim_name(id), {}, 0};
    CellTimer timer(r);
    timer.add("interpretation", Verdict::Pass,
              "strict building positions read as \xce\xbe >= 1; \xce\xbe = 0 entries carry the "
              "plain Nim value");
    struct Range { std::uint32_t l, lo, hi; };
    std::vector<Range> ranges = {{5, 10, 20}};
    if (opts.extended) ranges.push_back({7, 12, 16});
    for (Range range : ranges) {
        for (std::uint32_t tokens = range.lo; tokens <= range.hi; tokens += 2) {
            if (!opts.in_range(tokens)) continue;
            SolveTable t = solve({tokens, range.l}, Rule::Normal,
                                 {.want_grundy = true, .jobs = opts.jobs});
            bool ok = true;
            std::string bad;
            for (std::uint32_t m = 0; m < tokens && ok; ++m) { // xi >= 1 layers
                for (std::uint64_t idx = 0; idx < t.layer_entries(m) && ok; ++idx) {
                    std::uint8_t g = t.grundy_at(m, idx);
                    bool fine;
                    if (id == ClaimId::GrundyRange) {
                        fine = g <= 2;
                    } else {
                        fine = (m % 2 == 0) ? g <= 2 : g <= 1; // P1 moves at even placed counts
                    }
                    if (!fine) {
                        ok = false;
                        bad = "m=" + std::to_string(m) + " " +
                              t.counter().unrank(range.l, m, idx).to_string() + " g=" + std::to_string(g);
                    }
                }
            }
            timer.add("l=" + std::to_string(range.l) + " tokens=" + std::to_string(tokens),
                      ok ? Verdict::Pass : Verdict::Fail, bad);
        }
    }
    return r;
}

inline Report verify_misere(const VerifyOptions& opts) {
    Report r{claim_name(ClaimId::MisereEquivalence), {}, 0};
    CellTimer timer(r);
    for (std::uint32_t tokens = 6; tokens <= 14; ++tokens) {
        if (!opts.in_range(tokens)) continue;
        SolveTable norm = solve({tokens, 5}, Rule::Normal, {.jobs = opts.jobs});
        SolveTable mis = solve({tokens, 5}, Rule::Misere, {.jobs = opts.jobs});
        std::uint64_t entries = 0, diffs = 0;
        std::string first_diff;
        for (std::uint32_t m = 0; m <= tokens; ++m) {
            for (std::uint64_t idx = 0; idx < norm.layer_entries(m); ++idx) {
                ++entries;
                if (norm.outcome_at(m, idx) != mis.outcome_at(m, idx)) {
                    ++diffs;
                    if (first_diff.empty())
                        first_diff = "m=" + std::to_string(m) + " " +
                                     norm.counter().unrank(5, m, idx).to_string();
                }
            }
        }
        bool root_ok = norm.outcome_at(0, 0) == mis.outcome_at(0, 0);
        bool ok = root_ok && diffs == 0;
        timer.add("tokens=" + std::to_string(tokens), ok ? Verdict::Pass : Verdict::Fail,
                  ok ? "entries=" + std::to_string(entries) + " agreement=full"
                     : "diffs=" + std::to_string(diffs) + " first=" + first_diff);
    }
    return r;
}

} // namespace detail

inline Report verify(ClaimId id, const VerifyOptions& opts) {
    switch (id) {
    case ClaimId::Thm1Bouton: return detail::verify_thm1(opts);
    case ClaimId::Thm2Easy: return detail::verify_thm2(opts);
    case ClaimId::Lemma1Strategies: return detail::verify_lemma1(opts);
    case ClaimId::Lemma2NsFacts: return detail::verify_ns_facts(opts);
    case ClaimId::Corollary1: return detail::verify_corollary1(opts);
    case ClaimId::Thm3Three: return detail::verify_thm3(opts);
    case ClaimId::Thm4Small: return detail::verify_thm4(opts);
    case ClaimId::LemmaDs8: return detail::verify_ds8(opts);
    case ClaimId::Lemma2k2: return detail::verify_lemma_2k2(opts);
    case ClaimId::LemmaSpecial: return detail::verify_lemma_special(opts);
    case ClaimId::Thm5Five: return detail::verify_thm5(opts);
    case ClaimId::GrundyRange: return detail::verify_grundy(ClaimId::GrundyRange, opts);
    case ClaimId::GrundyParity: return detail::verify_grundy(ClaimId::GrundyParity, opts);
    case ClaimId::MisereEquivalence: return detail::verify_misere(opts);
    case ClaimId::Conjecture1Sweep:
        return sweep({{3, 62}, {5, 24}, {7, 20}}, opts).report;
    }
    throw std::invalid_argument("unknown claim");
}

} // namespace bn
