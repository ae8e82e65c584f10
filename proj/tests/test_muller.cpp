#include "oracles.hpp"

#include "tga/muller_solver.hpp"
#include "tga/parity.hpp"

#include <gtest/gtest.h>

#include <random>

namespace tga {
namespace {

using testing::brute_force_muller;
using testing::small_formulas;

BoolExpr P(int b) { return BoolExpr::prop(b); }

TEST(ZielonkaTree, SingleBuchiAtom) {
  auto f = MullerCondition::from_formula(InfFormula::gf(P(0)));
  auto t = ZielonkaTree::build(f);
  ASSERT_EQ(f.atoms(), 1u);
  const auto& root = t.node(t.root());
  EXPECT_TRUE(root.good);
  EXPECT_EQ(root.label, (LiteralSet{1, 1}));
  ASSERT_EQ(root.children.size(), 1u);
  const auto& child = t.node(root.children[0]);
  EXPECT_FALSE(child.good);
  EXPECT_EQ(child.label, (LiteralSet{0, 1}));
  EXPECT_EQ(t.memory(), 1u);
}

TEST(ZielonkaTree, Phi1MemoryIsN) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto t = ZielonkaTree::build(MullerCondition::from_formula(build_phi1(n)));
    EXPECT_EQ(t.memory(), n) << "n=" << n;
  }
}

TEST(ZielonkaTree, Phi2MemoryIsPower) {
  for (std::size_t n = 1; n <= 2; ++n)
    for (std::size_t m = 1; m <= 2; ++m) {
      auto t = ZielonkaTree::build(MullerCondition::from_formula(build_phi2(n, m)));
      std::uint64_t want = 1;
      for (std::size_t i = 0; i < m; ++i) want *= n + 1;
      EXPECT_EQ(t.memory(), want) << "n=" << n << " m=" << m;
    }
}

TEST(ZielonkaTree, GeneralisedBuchiNeedsOneStatePerTarget) {
  for (int k = 1; k <= 4; ++k) {
    std::vector<InfFormula> parts;
    for (int i = 0; i < k; ++i) parts.push_back(InfFormula::gf(P(i)));
    auto f = MullerCondition::from_formula(InfFormula::conj(parts));
    EXPECT_EQ(ZielonkaTree::build(f).memory(), static_cast<std::uint64_t>(k));
    // the opponent's co-Büchi disjunction is positional
    EXPECT_EQ(ZielonkaTree::build(f.complement()).memory(), 1u);
  }
}

// Children are maximal proper subsets of opposite polarity.
TEST(ZielonkaTree, ChildrenAlternateAndShrink) {
  for (const auto& nf : small_formulas()) {
    auto f = MullerCondition::from_formula(nf.f);
    auto t = ZielonkaTree::build(f);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto& v = t.node(static_cast<int>(i));
      EXPECT_EQ(v.good, f.accepts(v.label)) << nf.name;
      for (int c : v.children) {
        const auto& w = t.node(c);
        EXPECT_NE(w.good, v.good) << nf.name;
        EXPECT_TRUE(w.label.subset_of(v.label) && w.label != v.label) << nf.name;
      }
    }
  }
}

TEST(ZielonkaTree, SmallFormulasNeedAtMostTwoStates) {
  for (const auto& nf : small_formulas()) {
    auto f = MullerCondition::from_formula(nf.f);
    EXPECT_LE(ZielonkaTree::build(f).memory(), 2u) << nf.name;
    EXPECT_LE(ZielonkaTree::build(f.complement()).memory(), 2u) << nf.name;
  }
}

TEST(MullerCondition, ComplementFlipsEveryConsistentSet) {
  for (const auto& nf : small_formulas()) {
    auto f = MullerCondition::from_formula(nf.f);
    auto g = f.complement();
    std::uint32_t all = f.all();
    for (std::uint32_t pos = 0; pos <= all; ++pos)
      for (std::uint32_t neg = 0; neg <= all; ++neg) {
        LiteralSet b{pos, neg};
        if (!b.consistent(all)) continue;
        EXPECT_NE(f.accepts(b), g.accepts(b)) << nf.name;
      }
  }
}

TEST(MullerSolver, TrueWinsEverywhereWithoutMemory) {
  Arena a;
  a.add_node(Player::One, 0);
  a.add_node(Player::Two, 1);
  a.add_edge(0, 1);
  a.add_edge(1, 0);
  a.add_edge(1, 1);
  a.finalize();
  auto sol = solve_muller(a, MullerCondition::from_formula(InfFormula::constant(true)));
  EXPECT_EQ(mask_count(sol.win), 2u);
  EXPECT_EQ(sol.strategy.memory(), 1);
}

TEST(MullerSolver, SelfLoopBuchi) {
  Arena a;
  a.add_node(Player::One, 1);
  a.add_edge(0, 0);
  a.finalize();
  auto sol = solve_muller(a, MullerCondition::from_formula(InfFormula::gf(P(0))));
  EXPECT_TRUE(sol.win[0]);
  EXPECT_EQ(sol.strategy.memory(), 1);
  EXPECT_EQ(sol.strategy.move(0, 0), 0);
}

// Player 1 alternates between a p-node and a q-node through a hub it owns.
TEST(MullerSolver, GeneralisedBuchiUsesMemory) {
  Arena a;
  a.add_node(Player::One, 0);  // hub
  a.add_node(Player::Two, 1);  // p
  a.add_node(Player::Two, 2);  // q
  a.add_edge(0, 1);
  a.add_edge(0, 2);
  a.add_edge(1, 0);
  a.add_edge(2, 0);
  a.finalize();
  auto f = MullerCondition::from_formula(InfFormula::conj({InfFormula::gf(P(0)), InfFormula::gf(P(1))}));
  auto sol = solve_muller(a, f);
  EXPECT_EQ(mask_count(sol.win), 3u);
  EXPECT_EQ(sol.strategy.memory(), 2);
  const auto& s = sol.strategy;
  EXPECT_TRUE(testing::strategy_wins(
      a, f, Player::One, s.memory(), [&](int mu, int u) { return s.update(mu, u); },
      [&](int mu, int u) { return s.move(mu, u); }, sol.win));
  // no positional strategy exists
  auto bf = brute_force_muller(a, f, 1);
  EXPECT_EQ(mask_count(bf.win1), 0u);
}

void expect_matches_oracle(const Arena& a, const MullerCondition& f, const std::string& what) {
  auto sol1 = solve_muller(a, f, Player::One);
  auto sol2 = solve_muller(a, f.complement(), Player::Two);
  auto bf = brute_force_muller(a, f, 2);
  ASSERT_TRUE(bf.complete) << what;
  ASSERT_TRUE(bf.consistent) << what;
  EXPECT_EQ(sol1.win, bf.win1) << what;
  EXPECT_EQ(sol2.win, bf.win2) << what;
  EXPECT_EQ(solve_muller_via_parity(a, f, Player::One), sol1.win) << what;
  const auto& s = sol1.strategy;
  if (!s.empty()) {
    EXPECT_LE(static_cast<std::uint64_t>(s.memory()), sol1.tree_memory) << what;
    EXPECT_TRUE(testing::strategy_wins(
        a, f, Player::One, s.memory(), [&](int mu, int u) { return s.update(mu, u); },
        [&](int mu, int u) { return s.move(mu, u); }, sol1.win))
        << what;
  }
}

TEST(MullerSolver, MatchesOracleOnAllTwoNodeArenas) {
  for (const auto& nf : small_formulas()) {
    auto f = MullerCondition::from_formula(nf.f);
    for (int n = 1; n <= 2; ++n)
      for (const Arena& a : testing::all_arenas_up_to_iso(n, nf.atoms)) expect_matches_oracle(a, f, nf.name);
  }
}

TEST(MullerSolver, MatchesOracleOnRandomArenas) {
  std::mt19937_64 rng(7);
  auto fs = small_formulas();
  for (int i = 0; i < 60; ++i) {
    const auto& nf = fs[i % fs.size()];
    int n = 3 + static_cast<int>(rng() % 3);
    Arena a = testing::random_arena(rng, n, nf.atoms, 2);
    expect_matches_oracle(a, MullerCondition::from_formula(nf.f), nf.name + " #" + std::to_string(i));
  }
}

TEST(MullerSolver, RestrictedToClosedSubgame) {
  // node 2 is a trap for player 1; the subgame {0,1} is closed
  Arena a;
  a.add_node(Player::One, 1);
  a.add_node(Player::Two, 0);
  a.add_node(Player::One, 0);
  a.add_edge(0, 1);
  a.add_edge(0, 2);
  a.add_edge(1, 0);
  a.add_edge(2, 2);
  a.finalize();
  auto f = MullerCondition::from_formula(InfFormula::gf(P(0)));
  NodeMask sub = {1, 1, 0};
  auto sol = solve_muller(a, f, Player::One, sub);
  EXPECT_TRUE(sol.win[0]);
  EXPECT_TRUE(sol.win[1]);
  EXPECT_FALSE(sol.win[2]);
  EXPECT_EQ(sol.strategy.move(sol.strategy.update(0, 0), 0), 1);
}

TEST(Parity, SmallGame) {
  // 0 (P1, prio 1) -> 1 (P2, prio 0) -> 0 ; 1 -> 2 (P1, prio 1) -> 2
  ParityGame g;
  g.owner = {Player::One, Player::Two, Player::One};
  g.succ = {{1}, {0, 2}, {2}};
  g.priority = {1, 0, 1};
  auto s = solve_parity(g);
  EXPECT_EQ(s.win, (std::vector<char>{0, 0, 0}));
  g.priority = {1, 0, 2};
  s = solve_parity(g);
  EXPECT_EQ(s.win, (std::vector<char>{1, 1, 1}));
}

TEST(Parity, CapacityGuard) {
  Arena a;
  a.add_node(Player::One, 0);
  a.add_edge(0, 0);
  a.finalize();
  auto f = MullerCondition::from_formula(build_phi1(5));
  EXPECT_THROW(solve_muller_via_parity(a, f, Player::One, {}, 2), CapacityError);
}

}  // namespace
}  // namespace tga
