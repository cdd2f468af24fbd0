#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bn/game.hpp"
#include "bn/solver.hpp"
#include "bn/strategies.hpp"
#include "bn/tablebase.hpp"
#include "bn/verification.hpp"

namespace bn::cli {

struct Common {
    std::uint32_t tokens = 0;
    std::uint32_t stacks = 0;
    std::string rule = "normal";
    std::string format = "text";
    std::string cache_dir;
    unsigned jobs = 1;
    std::uint64_t budget_mb = 512;

    Rule parsed_rule() const { return rule == "misere" ? Rule::Misere : Rule::Normal; }
    GameParams params() const { return {tokens, stacks}; }
    SolveOptions solve_options(bool grundy = false) const {
        return {.want_grundy = grundy, .jobs = jobs, .budget_bytes = budget_mb << 20};
    }
    VerifyOptions verify_options() const {
        VerifyOptions v;
        v.jobs = jobs;
        v.budget_bytes = budget_mb << 20;
        return v;
    }
};

namespace detail {

inline std::filesystem::path cache_path(const Common& c, bool grundy) {
    std::string name = "bn-l" + std::to_string(c.stacks) + "-n" + std::to_string(c.tokens) + "-" +
                       (c.parsed_rule() == Rule::Misere ? "misere" : "normal") + "-" +
                       (grundy ? "g" : "o") + "-v" + std::to_string(kTableFormatVersion) + ".tbl";
    return std::filesystem::path(c.cache_dir) / name;
}

/// Solve, or reuse a cached tablebase when a cache directory is configured.
inline SolveTable obtain_table(const Common& c, bool grundy, std::ostream& err) {
    if (!c.cache_dir.empty()) {
        std::filesystem::path path = cache_path(c, grundy);
        if (std::filesystem::exists(path)) {
            try {
                SolveTable t = load_table(path);
                if (t.params() == c.params() && t.rule() == c.parsed_rule() &&
                    t.has_grundy() == grundy)
                    return t;
                err << "cache entry " << path.string() << " does not match; resolving\n";
            } catch (const TablebaseError& e) {
                err << "cache entry " << path.string() << " unusable (" << e.what()
                    << "); resolving\n";
            }
        }
        SolveTable t = solve(c.params(), c.parsed_rule(), c.solve_options(grundy));
        std::filesystem::create_directories(c.cache_dir);
        save_table(t, path);
        return t;
    }
    return solve(c.params(), c.parsed_rule(), c.solve_options(grundy));
}

inline const char* winner_of_root(Outcome root) { return root == Outcome::N ? "P1" : "P2"; }

inline BuildingPosition root_position(const GameParams& g) {
    return {Position(std::vector<height_t>(g.stacks, 0)), g.tokens};
}

// Perfect Nim-stage play: among the moves to Nim-sum 0, the one whose
// successor is lexicographically smallest; from a lost position, take one
// token from the smallest nonzero stack.
struct NimMove {
    std::size_t stack = 0; // index into the canonical position
    height_t take = 0;
};

inline std::optional<NimMove> nim_engine_move(const Position& p) {
    std::optional<NimMove> best;
    std::optional<Position> best_succ;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (height_t take = 1; take <= p[i]; ++take) {
            std::vector<height_t> v(p.heights().begin(), p.heights().end());
            v[i] -= take;
            Position succ = Position::canonicalize(std::move(v));
            if (succ.nim() != 0) continue;
            if (!best_succ || succ < *best_succ) {
                best_succ = succ;
                best = NimMove{i, take};
            }
        }
    }
    if (best) return best;
    for (std::size_t ri = p.size(); ri-- > 0;) {
        if (p[ri] > 0) return NimMove{ri, 1};
    }
    return std::nullopt; // no tokens anywhere
}

inline int cmd_outcome(const Common& c, std::ostream& out, std::ostream& err) {
    SolveTable t = obtain_table(c, false, err);
    Outcome root = t.outcome_of(root_position(c.params()));
    if (c.format == "machine") {
        nlohmann::json j{{"tokens", c.tokens},
                         {"stacks", c.stacks},
                         {"rule", c.rule},
                         {"outcome", std::string(1, outcome_char(root))},
                         {"winner", winner_of_root(root)}};
        out << j.dump() << "\n";
    } else {
        out << outcome_char(root) << " \xe2\x80\x94 " << winner_of_root(root) << " wins\n";
    }
    return 0;
}

inline int cmd_best_move(const Common& c, const std::string& position_text,
                         std::optional<std::uint32_t> remaining, std::ostream& out,
                         std::ostream& err) {
    BuildingPosition b;
    if (position_text.find(';') != std::string::npos) {
        b = BuildingPosition::parse(position_text, c.stacks);
    } else {
        if (!remaining) throw CLI::ValidationError("--remaining is required without a ;\xce\xbe= suffix");
        b = {Position::parse(position_text, c.stacks), *remaining};
    }
    SolveTable t = obtain_table(c, false, err);
    auto moves = t.best_moves(b);
    if (c.format == "machine") {
        nlohmann::json succ = nlohmann::json::array();
        for (Move m : moves) succ.push_back(b.position.raised(m.target).to_string());
        out << nlohmann::json{{"position", b.to_string()}, {"winning", succ}}.dump() << "\n";
        return 0;
    }
    if (moves.empty()) {
        out << "no winning move\n";
    } else {
        for (Move m : moves)
            out << "\xe2\x86\x92 " << b.position.raised(m.target).to_string() << "\n";
    }
    return 0;
}

inline int cmd_solve(const Common& c, bool grundy, const std::string& out_path, std::ostream& out) {
    SolveStats stats;
    SolveTable t = solve(c.params(), c.parsed_rule(), c.solve_options(grundy), &stats);
    save_table(t, std::filesystem::path(out_path));
    Outcome root = t.outcome_of(root_position(c.params()));
    out << "wrote " << out_path << ": " << stats.entries << " entries, root "
        << outcome_char(root) << " (" << winner_of_root(root) << " wins)\n";
    return 0;
}

inline int cmd_grundy(const Common& c, std::ostream& out, std::ostream& err) {
    SolveTable t = obtain_table(c, true, err);
    std::array<std::uint64_t, 256> support{};
    for (std::uint32_t m = 0; m <= c.tokens; ++m) {
        std::array<std::uint64_t, 256> hist{};
        for (std::uint64_t i = 0; i < t.layer_entries(m); ++i) ++hist[t.grundy_at(m, i)];
        out << "m=" << m << " \xce\xbe=" << (c.tokens - m) << ":";
        for (std::size_t g = 0; g < hist.size(); ++g) {
            if (!hist[g]) continue;
            out << " g" << g << "=" << hist[g];
            if (m < c.tokens) support[g] += hist[g];
        }
        out << "\n";
    }
    out << "support over \xce\xbe>=1: {";
    bool first = true;
    for (std::size_t g = 0; g < support.size(); ++g) {
        if (!support[g]) continue;
        out << (first ? "" : ", ") << g;
        first = false;
    }
    out << "}\n";
    return 0;
}

inline int cmd_verify(const Common& c, const std::string& claim, bool extended,
                      std::uint32_t max_tokens, std::ostream& out) {
    VerifyOptions opts = c.verify_options();
    opts.extended = extended;
    opts.max_tokens = max_tokens;
    std::vector<ClaimId> ids;
    if (claim == "all") {
        for (auto& [id, name] : claim_names()) ids.push_back(id);
    } else {
        auto id = claim_from_name(claim);
        if (!id) throw CLI::ValidationError("unknown claim '" + claim + "'");
        ids.push_back(*id);
    }
    int severity = 0;
    auto worse = [](int a, int b) {
        auto rank = [](int e) { return e == 1 ? 3 : e == 2 ? 2 : e == 3 ? 1 : 0; };
        return rank(a) >= rank(b) ? a : b;
    };
    for (ClaimId id : ids) {
        Report r = verify(id, opts);
        out << (c.format == "machine" ? r.to_machine() : r.to_text());
        severity = worse(severity, r.exit_code());
    }
    return severity;
}

inline int cmd_sweep(const Common& c, const std::string& csv_path, std::ostream& out) {
    SweepResult s = sweep({{3, 62}, {5, 24}, {7, 20}}, c.verify_options());
    if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        f << s.csv();
        out << "wrote " << csv_path << "\n";
    }
    if (c.format == "csv") {
        out << s.csv();
    } else {
        out << (c.format == "machine" ? s.report.to_machine() : s.report.to_text());
    }
    return s.report.exit_code();
}

inline int cmd_simulate(const Common& c, const std::string& p1_id, const std::string& p2_id,
                        std::ostream& out) {
    GameParams g = c.params();
    g.validate();
    if (p1_id == "exhaustive" || p2_id == "exhaustive") {
        bool certify_p1 = p2_id == "exhaustive";
        std::string id = certify_p1 ? p1_id : p2_id;
        PlayerRole role = certify_p1 ? PlayerRole::P1 : PlayerRole::P2;
        auto player = make_player(id, role, g);
        CertResult r = exhaustive_strategy_check(*player, role, g);
        out << "certification of " << id << " as " << role_name(role) << ": "
            << (r.pass ? "pass" : "FAIL") << " (nodes=" << r.nodes << ", leaves=" << r.leaves
            << ")\n";
        if (!r.pass) {
            out << r.reason << "\n";
            for (const auto& line : r.transcript) out << "  " << line << "\n";
        }
        return r.pass ? 0 : 1;
    }
    auto p1 = make_player(p1_id, PlayerRole::P1, g);
    auto p2 = make_player(p2_id, PlayerRole::P2, g);
    BuildingPosition b = root_position(g);
    while (b.remaining > 0) {
        PlayerRole mover = mover_of(g, b);
        Player& pl = mover == PlayerRole::P1 ? *p1 : *p2;
        Move mv = pl.next_move(b);
        b = {b.position.raised(mv.target), b.remaining - 1};
        out << role_name(mover) << " -> " << b.to_string() << "\n";
    }
    nim_value s = b.position.nim();
    PlayerRole nim_starter = mover_of(g, b);
    PlayerRole winner = s != 0 ? nim_starter
                               : (nim_starter == PlayerRole::P1 ? PlayerRole::P2 : PlayerRole::P1);
    out << "final " << b.position.to_string() << " (Nim-sum " << s << "), " << role_name(winner)
        << " wins\n";
    return 0;
}

inline int cmd_play(const Common& c, const std::string& human_role, const std::string& engine_id,
                    const std::string& transcript_path, std::istream& in, std::ostream& out) {
    GameParams g = c.params();
    g.validate();
    PlayerRole human = human_role == "P1" ? PlayerRole::P1 : PlayerRole::P2;
    PlayerRole engine_role = human == PlayerRole::P1 ? PlayerRole::P2 : PlayerRole::P1;
    auto engine = make_player(engine_id, engine_role, g);
    std::ofstream transcript;
    if (!transcript_path.empty()) transcript.open(transcript_path);
    auto log = [&](const std::string& line) {
        out << line << "\n";
        if (transcript.is_open()) transcript << line << "\n";
    };

    log("building nim: " + std::to_string(g.tokens) + " tokens on " + std::to_string(g.stacks) +
        " stacks; you are " + role_name(human) + ", engine plays " + engine_id);
    BuildingPosition b = root_position(g);
    while (b.remaining > 0) {
        PlayerRole mover = mover_of(g, b);
        if (mover == human) {
            out << b.to_string() << "  your move: stack 1-" << g.stacks << " receives a token > "
                << std::flush;
            std::string line;
            if (!std::getline(in, line)) {
                log("(end of input; session aborted)");
                return 0;
            }
            unsigned long idx = 0;
            try {
                idx = std::stoul(line);
            } catch (...) {
                out << "enter a stack number between 1 and " << g.stacks << "\n";
                continue;
            }
            if (idx < 1 || idx > g.stacks) {
                out << "enter a stack number between 1 and " << g.stacks << "\n";
                continue;
            }
            auto cls = b.position.class_of_height(b.position[idx - 1]);
            b = {b.position.raised(*cls), b.remaining - 1};
            log(std::string(role_name(mover)) + " -> " + b.to_string());
        } else {
            Move mv;
            try {
                mv = engine->next_move(b);
            } catch (const StrategyError& e) {
                log(std::string("engine strategy gave up: ") + e.what());
                return 1;
            }
            b = {b.position.raised(mv.target), b.remaining - 1};
            log(std::string(role_name(mover)) + " -> " + b.to_string());
        }
    }

    log("nim stage begins at " + b.position.to_string());
    Position p = b.position;
    PlayerRole to_move = mover_of(g, b);
    while (true) {
        if (p.total() == 0) {
            PlayerRole winner =
                c.parsed_rule() == Rule::Misere
                    ? to_move
                    : (to_move == PlayerRole::P1 ? PlayerRole::P2 : PlayerRole::P1);
            log(std::string(role_name(winner)) + " wins");
            return 0;
        }
        if (to_move == human) {
            out << p.to_string() << "  your move: <stack> <count> > " << std::flush;
            std::string line;
            if (!std::getline(in, line)) {
                log("(end of input; session aborted)");
                return 0;
            }
            std::istringstream ss(line);
            std::size_t idx = 0;
            height_t take = 0;
            if (!(ss >> idx >> take) || idx < 1 || idx > p.size() || take < 1 || take > p[idx - 1]) {
                out << "enter '<stack> <count>' with 1 <= count <= stack height\n";
                continue;
            }
            std::vector<height_t> v(p.heights().begin(), p.heights().end());
            v[idx - 1] -= take;
            p = Position::canonicalize(std::move(v));
        } else {
            auto mv = nim_engine_move(p);
            std::vector<height_t> v(p.heights().begin(), p.heights().end());
            log(std::string(role_name(to_move)) + " takes " + std::to_string(mv->take) +
                " from the stack of " + std::to_string(v[mv->stack]));
            v[mv->stack] -= mv->take;
            p = Position::canonicalize(std::move(v));
        }
        log(std::string(role_name(to_move)) + " -> " + p.to_string());
        to_move = to_move == PlayerRole::P1 ? PlayerRole::P2 : PlayerRole::P1;
    }
}

} // namespace detail

/// Entry point shared by the binary and the tests.
inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"building nim workbench: solver, strategies, and claim checks"};
    app.require_subcommand(1);

    Common common;
    if (const char* env = std::getenv("BN_CACHE_DIR")) common.cache_dir = env;

    auto add_common = [&](CLI::App* sub, bool need_params = true) {
        auto* t = sub->add_option("--tokens", common.tokens, "total token count");
        auto* s = sub->add_option("--stacks", common.stacks, "stack count");
        if (need_params) {
            t->required();
            s->required();
        }
        sub->add_option("--rule", common.rule, "normal or misere")
            ->check(CLI::IsMember({"normal", "misere"}));
        sub->add_option("--format", common.format, "text, machine, or csv")
            ->check(CLI::IsMember({"text", "machine", "csv"}));
        sub->add_option("--cache-dir", common.cache_dir, "tablebase cache directory");
        sub->add_option("--jobs", common.jobs, "solver worker threads");
        sub->add_option("--budget-mb", common.budget_mb, "memory budget for solving");
    };

    auto* outcome = app.add_subcommand("outcome", "who wins BN(tokens, stacks)");
    add_common(outcome);

    auto* best = app.add_subcommand("best-move", "winning placements from a building position");
    add_common(best);
    std::string position_text;
    std::optional<std::uint32_t> remaining;
    best->add_option("--position", position_text, "heights, e.g. 5,3,2,1 or 5,3,2,1;xi=4")
        ->required();
    std::uint32_t remaining_raw = 0;
    auto* rem_opt = best->add_option("--remaining", remaining_raw, "tokens not yet placed");

    auto* solve_cmd = app.add_subcommand("solve", "solve and write a tablebase file");
    add_common(solve_cmd);
    std::string out_path;
    bool want_grundy = false;
    solve_cmd->add_option("--out", out_path, "output file")->required();
    solve_cmd->add_flag("--grundy", want_grundy, "store Grundy values");

    auto* grundy_cmd = app.add_subcommand("grundy", "Grundy histogram per layer");
    add_common(grundy_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "run a claim check");
    add_common(verify_cmd, false);
    std::string claim = "all";
    bool extended = false;
    std::uint32_t max_tokens = 0;
    std::string claim_help = "claim id or 'all'; ids:";
    for (auto& [id, name] : claim_names()) claim_help += " " + std::string(name);
    verify_cmd->add_option("--claim", claim, claim_help);
    verify_cmd->add_flag("--extended", extended, "include the larger optional ranges");
    verify_cmd->add_option("--max-tokens", max_tokens, "cap each claim's grid at this token count");

    auto* sweep_cmd = app.add_subcommand("sweep", "conjecture sweep over (stacks, tokens)");
    add_common(sweep_cmd, false);
    std::string csv_path;
    sweep_cmd->add_option("--csv", csv_path, "write the CSV here");

    auto* sim = app.add_subcommand("simulate", "scripted strategy match or certification");
    add_common(sim);
    std::string p1_id = "table", p2_id = "table";
    sim->add_option("--p1", p1_id, "P1 strategy id");
    sim->add_option("--p2", p2_id, "P2 strategy id or 'exhaustive'");

    auto* play = app.add_subcommand("play", "interactive two-stage session");
    add_common(play);
    std::string human_role = "P1", engine_id = "table", transcript_path;
    play->add_option("--human", human_role, "your side")->check(CLI::IsMember({"P1", "P2"}));
    play->add_option("--engine", engine_id, "engine strategy id");
    play->add_option("--transcript", transcript_path, "write the session transcript here");

    std::vector<const char*> argv;
    argv.push_back("bn");
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*outcome) return detail::cmd_outcome(common, out, err);
        if (*best) {
            if (rem_opt->count()) remaining = remaining_raw;
            return detail::cmd_best_move(common, position_text, remaining, out, err);
        }
        if (*solve_cmd) return detail::cmd_solve(common, want_grundy, out_path, out);
        if (*grundy_cmd) return detail::cmd_grundy(common, out, err);
        if (*verify_cmd) return detail::cmd_verify(common, claim, extended, max_tokens, out);
        if (*sweep_cmd) return detail::cmd_sweep(common, csv_path, out);
        if (*sim) return detail::cmd_simulate(common, p1_id, p2_id, out);
        if (*play) return detail::cmd_play(common, human_role, engine_id, transcript_path, in, out);
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const StrategyError& e) {
        err << "strategy error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace bn::cli
