// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "bn/solver.hpp"
#include "bn/strategies.hpp"
#include "bn/tablebase.hpp"
#include "bn/verification.hpp"
#include "oracles.hpp"

using namespace bn;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, double budget_ms,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = e.what();
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (ms > budget_ms) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over the ") +
                  std::to_string(budget_ms / 1000) + " s budget";
    }
    if (!ok) ++failures;
    std::printf("%s criterion-%d: %s (%.0f ms)%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                ms, detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
}

Outcome root(std::uint32_t tokens, std::uint32_t stacks, Rule rule = Rule::Normal) {
    return solve_root({tokens, stacks}, rule);
}

bool report_passes(ClaimId id, std::string& detail, const VerifyOptions& opts = {}) {
    Report r = verify(id, opts);
    if (r.overall() != Verdict::Pass) {
        for (const auto& c : r.cells)
            if (c.verdict != Verdict::Pass) {
                detail = claim_name(id) + " " + c.cell + ": " + verdict_name(c.verdict) +
                         (c.detail.empty() ? "" : " (" + c.detail + ")");
                break;
            }
        return false;
    }
    return true;
}

} // namespace

int main() {
    criterion(1, "three-stack outcomes for even n up to 62", 10000, [](std::string& detail) {
        for (std::uint32_t n = 2; n <= 62; n += 2) {
            bool exceptional = n == 2 || n == 6 || n == 14 || n == 30 || n == 62;
            if ((root(n, 3) == Outcome::P) != exceptional) {
                detail = "n=" + std::to_string(n);
                return false;
            }
        }
        return true;
    });

    criterion(2, "five-stack outcomes: first player wins iff n >= 5", 60000, [](std::string& detail) {
        for (std::uint32_t n = 2; n <= 16; ++n) {
            Outcome want = n >= 5 ? Outcome::N : Outcome::P;
            if (root(2 * n, 5) != want) {
                detail = "n=" + std::to_string(n);
                return false;
            }
        }
        return true;
    });

    criterion(3, "roots for n = 5..12 on five stacks are all N", 30000, [](std::string& detail) {
        for (std::uint32_t n = 5; n <= 12; ++n)
            if (root(2 * n, 5) != Outcome::N) {
                detail = "n=" + std::to_string(n);
                return false;
            }
        return true;
    });

    criterion(4, "second player wins for odd stacks > 3, even n <= stacks+3", 60000,
              [](std::string& detail) {
                  auto check = [&](std::uint32_t l, std::uint32_t n) {
                      if (root(n, l) != Outcome::P) {
                          detail = "l=" + std::to_string(l) + " n=" + std::to_string(n);
                          return false;
                      }
                      return true;
                  };
                  for (std::uint32_t n : {2u, 4u, 6u, 8u})
                      if (!check(5, n)) return false;
                  for (std::uint32_t n = 2; n <= 10; n += 2)
                      if (!check(7, n)) return false;
                  for (std::uint32_t n = 2; n <= 12; n += 2)
                      if (!check(9, n)) return false;
                  return true;
              });

    criterion(5, "BN(62, 5) is a first-player win", 300000, [](std::string& detail) {
        if (root(62, 5) != Outcome::N) {
            detail = "root came out P";
            return false;
        }
        return true;
    });

    criterion(6, "Nim-sum fact suite NS1-NS7, exhaustive ranges", 30000, [](std::string& detail) {
        return report_passes(ClaimId::Lemma2NsFacts, detail);
    });

    criterion(7, "shifted-pair bound, all x_i <= 12 and pi in {1,2,4}", 60000,
              [](std::string& detail) { return report_passes(ClaimId::LemmaDs8, detail); });

    criterion(8, "strategy certifications by exhaustive adversary traversal", 480000,
              [](std::string& detail) {
                  // three stacks: strategy-i wins exactly off the 2^k-2 set;
                  // n=2 belongs to that set (the acceptance list omits it, but
                  // BN(2,3) is a second-player win, so no P1 strategy can pass)
                  for (std::uint32_t n = 2; n <= 14; n += 2) {
                      bool exceptional = n == 2 || n == 6 || n == 14;
                      CertResult c =
                          exhaustive_strategy_check(StrategyIPlayer{}, PlayerRole::P1, {n, 3});
                      if (c.pass == exceptional) {
                          detail = "strategy-i n=" + std::to_string(n) +
                                   (c.pass ? " unexpectedly passed" : " failed: " + c.reason);
                          return false;
                      }
                  }
                  for (std::uint32_t n : {2u, 6u, 14u}) {
                      CertResult c =
                          exhaustive_strategy_check(StrategyIIPlayer{}, PlayerRole::P2, {n, 3});
                      if (!c.pass) {
                          detail = "strategy-ii n=" + std::to_string(n) + ": " + c.reason;
                          return false;
                      }
                  }
                  struct Cell { std::uint32_t l, n; };
                  for (Cell cell : {Cell{5, 6}, Cell{5, 8}, Cell{7, 8}, Cell{7, 10}}) {
                      CertResult c = exhaustive_strategy_check(P2EndgamePlayer{{cell.n, cell.l}},
                                                               PlayerRole::P2, {cell.n, cell.l});
                      if (!c.pass) {
                          detail = "p2-endgame l=" + std::to_string(cell.l) +
                                   " n=" + std::to_string(cell.n) + ": " + c.reason;
                          return false;
                      }
                  }
                  for (std::uint32_t n = 5; n <= 10; ++n) {
                      CertResult c = exhaustive_strategy_check(P1CompositePlayer{{2 * n, 5}},
                                                               PlayerRole::P1, {2 * n, 5});
                      if (!c.pass) {
                          detail = "p1-composite n=" + std::to_string(n) + ": " + c.reason;
                          return false;
                      }
                  }
                  return true;
              });

    criterion(9, "layered solver equals the naive recursive search, n <= 8, l <= 5", 120000,
              [](std::string& detail) {
                  for (std::uint32_t l = 1; l <= 5; ++l) {
                      for (std::uint32_t tokens = 0; tokens <= 8; ++tokens) {
                          SolveTable t = solve({tokens, l}, Rule::Normal);
                          for (std::uint32_t m = 0; m <= tokens; ++m) {
                              for (const auto& h : oracle::all_partitions(l, m)) {
                                  BuildingPosition b{Position(std::vector<height_t>(h)),
                                                     tokens - m};
                                  bool naive = oracle::naive_building_n(h, tokens - m, Rule::Normal);
                                  if ((t.outcome_of(b) == Outcome::N) != naive) {
                                      detail = "l=" + std::to_string(l) +
                                               " tokens=" + std::to_string(tokens) + " at " +
                                               b.to_string();
                                      return false;
                                  }
                              }
                          }
                      }
                  }
                  return true;
              });

    criterion(10, "Grundy values stay in {0,1,2} with the mover-parity refinement", 120000,
              [](std::string& detail) {
                  return report_passes(ClaimId::GrundyRange, detail) &&
                         report_passes(ClaimId::GrundyParity, detail);
              });

    criterion(11, "normal and misere roots agree for five stacks, tokens 6..14", 60000,
              [](std::string& detail) { return report_passes(ClaimId::MisereEquivalence, detail); });

    criterion(12, "conjecture sweep has no unexplained second-player win", 300000,
              [](std::string& detail) {
                  SweepResult s = sweep({{3, 62}, {5, 24}, {7, 20}}, {});
                  for (const auto& c : s.cells) {
                      if (c.verdict == Verdict::Fail) {
                          detail = "l=" + std::to_string(c.stacks) +
                                   " tokens=" + std::to_string(c.tokens) +
                                   " contradicts settled theory";
                          return false;
                      }
                      if (c.verdict == Verdict::Finding) {
                          // arbitrate against the independent oracle before
                          // classifying: a disagreement would mean a bug
                          std::vector<height_t> empty(c.stacks, 0);
                          bool naive = oracle::naive_building_n(empty, c.tokens, Rule::Normal);
                          if (naive != (c.outcome == Outcome::N)) {
                              detail = "solver disagrees with the oracle at l=" +
                                       std::to_string(c.stacks) +
                                       " tokens=" + std::to_string(c.tokens);
                              return false;
                          }
                          detail = "finding at l=" + std::to_string(c.stacks) +
                                   " tokens=" + std::to_string(c.tokens) +
                                   " (oracle-confirmed counterexample candidate)";
                      }
                  }
                  return true;
              });

    criterion(13, "tablebase round-trips are entry-identical and checksummed", 300000,
              [](std::string& detail) {
                  for (std::uint32_t tokens : {10u, 62u}) {
                      SolveTable t = solve({tokens, 5}, Rule::Normal);
                      std::stringstream ss;
                      save_table(t, ss);
                      SolveTable back = load_table(ss);
                      if (!tables_identical(t, back)) {
                          detail = "tokens=" + std::to_string(tokens);
                          return false;
                      }
                      // the checksum must actually guard the payload
                      std::string bytes = ss.str();
                      bytes[bytes.size() / 2] ^= 1;
                      std::stringstream bad(bytes);
                      try {
                          load_table(bad);
                          detail = "corruption went unnoticed";
                          return false;
                      } catch (const TablebaseError&) {
                      }
                  }
                  return true;
              });

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 13 criteria passed\n");
    return 0;
}
