#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bn/strategies.hpp"
#include "bn/verification.hpp"

using namespace bn;

namespace {

// Test adversaries.
class RandomPlayer final : public detail::StatelessPlayer<RandomPlayer> {
public:
    explicit RandomPlayer(std::uint64_t seed) : rng_(seed) {}
    Move next_move(const BuildingPosition& b) override {
        std::uniform_int_distribution<std::uint32_t> d(0, b.position.class_count() - 1);
        return Move{d(rng_)};
    }

private:
    std::mt19937_64 rng_;
};

// Tries the wrapped strategy; if it refuses, falls back to the lowest class.
class FallbackPlayer final : public Player {
public:
    explicit FallbackPlayer(std::unique_ptr<Player> inner) : inner_(std::move(inner)) {}
    FallbackPlayer(const FallbackPlayer& o) : inner_(o.inner_->clone()) {}
    std::unique_ptr<Player> clone() const override { return std::make_unique<FallbackPlayer>(*this); }
    Move next_move(const BuildingPosition& b) override {
        try {
            return inner_->next_move(b);
        } catch (const StrategyError&) {
            return Move{0};
        }
    }

private:
    std::unique_ptr<Player> inner_;
};

Position play_out(Player& p1, Player& p2, GameParams params) {
    BuildingPosition b{Position(std::vector<height_t>(params.stacks, 0)), params.tokens};
    while (b.remaining > 0) {
        Player& pl = mover_of(params, b) == PlayerRole::P1 ? p1 : p2;
        Move mv = pl.next_move(b);
        REQUIRE(mv.target < b.position.class_count());
        b = BuildingPosition{b.position.raised(mv.target), b.remaining - 1};
    }
    return b.position;
}

} // namespace

TEST_CASE("high and low moves") {
    BuildingPosition b{Position::parse("4,2,2,1,1"), 3};
    CHECK(b.position.raised(high_move(b).target) == Position::parse("5,2,2,1,1"));
    CHECK(b.position.raised(low_move(b).target) == Position::parse("4,2,2,2,1"));

    BuildingPosition c{Position::parse("4,4,3,1,0"), 2};
    CHECK(c.position.raised(high_move(c, 4).target) == Position::parse("4,4,4,1,0"));
    CHECK(c.position.raised(high_move(c).target) == Position::parse("5,4,3,1,0"));
}

TEST_CASE("strategy I replies") {
    CHECK(strategy_I_move({Position::parse("0,0,0"), 8}) == Move{0});
    BuildingPosition tall{Position::parse("4,1,1"), 3};
    CHECK(tall.position.raised(strategy_I_move(tall).target) == Position::parse("5,1,1"));
    BuildingPosition shrt{Position::parse("3,2,1"), 3};
    CHECK(shrt.position.raised(strategy_I_move(shrt).target) == Position::parse("3,2,2"));
    CHECK_THROWS_AS(strategy_I_move({Position::parse("5,3,1"), 2}), StrategyError);
    CHECK_THROWS_AS(strategy_I_move({Position::parse("1,1,1,1"), 2}), StrategyError);
}

TEST_CASE("strategy II replies") {
    BuildingPosition open{Position::parse("1,0,0"), 5};
    CHECK(open.position.raised(strategy_II_move(open).target) == Position::parse("1,1,0"));
    BuildingPosition a{Position::parse("4,2,1"), 3};
    CHECK(a.position.raised(strategy_II_move(a).target) == Position::parse("4,3,1"));
    BuildingPosition b{Position::parse("3,3,1"), 3};
    CHECK(b.position.raised(strategy_II_move(b).target) == Position::parse("4,3,1"));
}

TEST_CASE("mirror replies") {
    BuildingPosition a{Position::parse("1,0,0,0"), 3};
    CHECK(a.position.raised(mirror_move(a).target) == Position::parse("1,1,0,0"));
    BuildingPosition b{Position::parse("2,1,0,0,0"), 1};
    CHECK(b.position.raised(mirror_move(b).target) == Position::parse("2,2,0,0,0"));
    BuildingPosition c{Position::parse("3,2,1,1"), 1};
    CHECK(c.position.raised(mirror_move(c).target) == Position::parse("3,3,1,1"));
    // all ones, no zero stack left: not mirrorable
    CHECK_THROWS_AS(mirror_move({Position::parse("1,1,1,1,1"), 2}), StrategyError);
}

TEST_CASE("p2 endgame scripted adjustments") {
    P2EndgamePlayer six({6, 5});
    BuildingPosition trig{Position::parse("1,1,1,0,0"), 3};
    CHECK(trig.position.raised(six.next_move(trig).target) == Position::parse("2,1,1,0,0"));

    P2EndgamePlayer eight({8, 5});
    BuildingPosition ones{Position::parse("1,1,1,1,1"), 3};
    CHECK(ones.position.raised(eight.next_move(ones).target) == Position::parse("2,1,1,1,1"));

    // last token goes to Nim-sum zero
    BuildingPosition last{Position::parse("2,2,1,1,1"), 1};
    CHECK(last.position.raised(eight.next_move(last).target).nim() == 0);

    CHECK_THROWS_AS(P2EndgamePlayer({10, 5}), StrategyError); // n > stacks + 3
    CHECK_THROWS_AS(P2EndgamePlayer({6, 4}), StrategyError);  // even stacks
}

TEST_CASE("table player") {
    auto tables = default_table_provider();
    TablePlayer two(tables({2, 3}, Rule::Normal));
    BuildingPosition b{Position::parse("1,0,0"), 1};
    CHECK(b.position.raised(two.next_move(b).target) == Position::parse("1,1,0"));

    TablePlayer six(tables({6, 3}, Rule::Normal));
    CHECK(six.next_move({Position::parse("0,0,0"), 6}) == Move{0}); // nothing wins; delay
    CHECK_THROWS_AS(six.next_move({Position::parse("3,2,1"), 0}), StrategyError);
}

TEST_CASE("registry ids and role checks") {
    GameParams g35{6, 3};
    CHECK(make_player("strategy-i", PlayerRole::P1, g35) != nullptr);
    CHECK_THROWS_AS(make_player("strategy-i", PlayerRole::P2, g35), StrategyError);
    CHECK_THROWS_AS(make_player("strategy-ii", PlayerRole::P1, g35), StrategyError);
    CHECK_THROWS_AS(make_player("nope", PlayerRole::P1, g35), StrategyError);
    CHECK(strategy_ids().size() == 8);
}

TEST_CASE("strategy-i certification matches the three-stack theorem") {
    for (std::uint32_t n = 2; n <= 14; n += 2) {
        CertResult c = exhaustive_strategy_check(StrategyIPlayer{}, PlayerRole::P1, {n, 3});
        bool exceptional = (n == 2 || n == 6 || n == 14);
        CHECK(c.pass == !exceptional);
        if (!c.pass) CHECK_FALSE(c.transcript.empty());
    }
}

TEST_CASE("strategy-ii certification wins exactly the exceptional cases") {
    for (std::uint32_t n : {2u, 6u, 14u}) {
        CertResult c = exhaustive_strategy_check(StrategyIIPlayer{}, PlayerRole::P2, {n, 3});
        CHECK(c.pass);
    }
    for (std::uint32_t n : {4u, 8u, 10u, 12u}) {
        CertResult c = exhaustive_strategy_check(StrategyIIPlayer{}, PlayerRole::P2, {n, 3});
        CHECK_FALSE(c.pass);
    }
}

TEST_CASE("mirror certification for even stack counts") {
    for (std::uint32_t l : {2u, 4u, 6u}) {
        for (std::uint32_t n = 2; n <= 12; n += 2) {
            CertOptions co;
            co.invariant = [](const BuildingPosition& b, bool holder, std::string& msg) {
                if (!holder) return true;
                std::map<height_t, int> mult;
                for (height_t h : b.position.heights())
                    if (h >= 1) ++mult[h];
                for (auto [h, c] : mult)
                    if (c % 2) {
                        msg = "odd multiplicity after the mirror move: " + b.position.to_string();
                        return false;
                    }
                return true;
            };
            CertResult c = exhaustive_strategy_check(MirrorPlayer{}, PlayerRole::P2, {n, l}, co);
            INFO("l=" << l << " n=" << n << " " << c.reason);
            CHECK(c.pass);
        }
    }
    // odd stack count, fewer tokens than stacks
    for (std::uint32_t n : {2u, 4u}) {
        CertResult c = exhaustive_strategy_check(MirrorPlayer{}, PlayerRole::P2, {n, 5});
        CHECK(c.pass);
    }
}

TEST_CASE("p2-endgame certification") {
    struct Cell { std::uint32_t l, n; };
    for (Cell cell : {Cell{5, 2}, Cell{5, 4}, Cell{5, 6}, Cell{5, 8}, Cell{7, 8}, Cell{7, 10}, Cell{9, 12}}) {
        CertResult c = exhaustive_strategy_check(P2EndgamePlayer{{cell.n, cell.l}}, PlayerRole::P2,
                                                 {cell.n, cell.l});
        INFO("l=" << cell.l << " n=" << cell.n << " " << c.reason);
        CHECK(c.pass);
    }
}

TEST_CASE("p1-composite certification for the table range") {
    for (std::uint32_t n = 5; n <= 10; ++n) {
        CertResult c = exhaustive_strategy_check(P1CompositePlayer{{2 * n, 5}}, PlayerRole::P1,
                                                 {2 * n, 5});
        INFO("n=" << n << " " << c.reason);
        CHECK(c.pass);
    }
}

TEST_CASE("p1-composite certification beyond the table range") {
    // covers case 1 (13,14,24), the power of two (16), lemma-6 at K=5,6,7
    // (15,31,63), case 2 (17..20), and two-level recursion (33: case 2 on
    // top of case 2 on top of the table)
    for (std::uint32_t n : {13u, 14u, 15u, 16u, 17u, 18u, 19u, 20u, 24u, 31u, 33u, 63u}) {
        CertResult c = exhaustive_strategy_check(P1CompositePlayer{{2 * n, 5}}, PlayerRole::P1,
                                                 {2 * n, 5});
        INFO("n=" << n << " " << c.reason);
        CHECK(c.pass);
    }
}

TEST_CASE("p1-composite case arithmetic") {
    CHECK(composite_case(13) == CompositeCase::Case1);
    CHECK(largest_power_below(13) == 8);
    CHECK(composite_case(9) == CompositeCase::Case2);
    CHECK(largest_power_below(9) == 8);
    CHECK(composite_case(31) == CompositeCase::Lemma6);
    CHECK(composite_case(15) == CompositeCase::Lemma6);
    CHECK(composite_case(17) == CompositeCase::Case2);
    CHECK(composite_case(16) == CompositeCase::Case1);
    CHECK(composite_plays_from_table(9));
    CHECK_FALSE(composite_plays_from_table(13));
    CHECK_THROWS_AS(composite_case(4), StrategyError);
}

TEST_CASE("p1-composite beats scripted and random adversaries beyond the table range") {
    auto tables = default_table_provider();
    for (std::uint32_t n : {13u, 14u, 15u, 16u, 17u, 20u, 31u}) {
        GameParams g{2 * n, 5};
        std::vector<std::unique_ptr<Player>> adversaries;
        adversaries.push_back(std::make_unique<TablePlayer>(tables(g, Rule::Normal)));
        adversaries.push_back(std::make_unique<HighPlayer>());
        adversaries.push_back(std::make_unique<LowPlayer>());
        adversaries.push_back(std::make_unique<FallbackPlayer>(std::make_unique<MirrorPlayer>()));
        for (std::uint64_t seed = 1; seed <= 25; ++seed)
            adversaries.push_back(std::make_unique<RandomPlayer>(seed * 7919 + n));
        for (auto& adv : adversaries) {
            P1CompositePlayer p1{g, tables};
            Position final_pos = play_out(p1, *adv, g);
            INFO("n=" << n << " final " << final_pos.to_string());
            CHECK(final_pos.nim() != 0);
        }
    }
}

TEST_CASE("p1-composite refuses off-strategy histories") {
    P1CompositePlayer p1{{26, 5}};
    (void)p1.next_move({Position::parse("0,0,0,0,0"), 26});
    // two tokens appeared at once
    CHECK_THROWS_AS(p1.next_move({Position::parse("2,1,0,0,0"), 23}), StrategyError);
    CHECK_THROWS_AS((P1CompositePlayer{{8, 5}}), StrategyError);  // P2 wins this game
    CHECK_THROWS_AS((P1CompositePlayer{{13, 5}}), StrategyError); // odd token count
}

TEST_CASE("table player certifications through the solver") {
    auto tables = default_table_provider();
    CertResult p1win = exhaustive_strategy_check(TablePlayer{tables({10, 5}, Rule::Normal)},
                                                 PlayerRole::P1, {10, 5});
    CHECK(p1win.pass);
    CertResult p2win = exhaustive_strategy_check(TablePlayer{tables({8, 5}, Rule::Normal)},
                                                 PlayerRole::P2, {8, 5});
    CHECK(p2win.pass);
}

TEST_CASE("certification is deterministic and counts nodes") {
    CertResult a = exhaustive_strategy_check(StrategyIPlayer{}, PlayerRole::P1, {8, 3});
    CertResult b = exhaustive_strategy_check(StrategyIPlayer{}, PlayerRole::P1, {8, 3});
    CHECK(a.nodes == b.nodes);
    CHECK(a.leaves == b.leaves);
    CHECK(a.nodes > 0);
}
