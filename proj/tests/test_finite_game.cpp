#include "oracles.hpp"

#include "tga/concrete.hpp"
#include "tga/enlarged.hpp"
#include "tga/finite_game.hpp"
#include "tga/region.hpp"

#include <gtest/gtest.h>

#include <random>

namespace tga {
namespace {

using testing::corpus_files;
using testing::corpus_path;

GameSpec single_clock(const std::string& body = "") {
  return parse_gamespec_or_throw("game g\nclocks x\np1-actions a\np2-actions b\nloc l initial inv true\n" + body +
                                 "safe l\n");
}

// ---------------------------------------------------------------- predicates

TEST(Predicates, ZeroDelayFromZero) {
  auto spec = single_clock();
  auto p = update_predicates(spec.model, std::vector<Time>{0}, Time(0), 1, false, false);
  EXPECT_TRUE(p.bl1);
  EXPECT_EQ(p.vpos, 0);
  EXPECT_EQ(p.vge1, 0);
  EXPECT_EQ(p.vstar, 0);
}

TEST(Predicates, StaysAboveConstant) {
  auto spec = single_clock();
  auto p = update_predicates(spec.model, std::vector<Time>{2}, Time(1), 2, false, false);
  EXPECT_FALSE(p.bl1);
  EXPECT_EQ(p.vstar, 1);
  EXPECT_EQ(p.vge1, 1);
}

TEST(Predicates, HitsExactlyOne) {
  auto spec = single_clock();
  auto p = update_predicates(spec.model, std::vector<Time>{Time(1, 2)}, Time(1, 2), 1, false, false);
  EXPECT_EQ(p.vge1, 1);
  EXPECT_EQ(p.vpos, 1);
  EXPECT_EQ(p.vstar, 0);
}

TEST(Predicates, BlameOnTies) {
  auto spec = single_clock();
  std::vector<Time> k = {Time(1, 3)};
  EXPECT_TRUE(update_predicates(spec.model, k, Time(0), 2, true, true).bl1);
  EXPECT_FALSE(update_predicates(spec.model, k, Time(0), 2, true, false).bl1);
  EXPECT_TRUE(update_predicates(spec.model, k, Time(0), 1, true, false).bl1);
}

TEST(Predicates, RegionLevelStutterAtZero) {
  auto spec = single_clock();
  auto sp = RegionSpace::of(spec.model);
  auto r = region_of(sp, LocId{0}, std::vector<Time>{0});
  auto p = region_predicates(1, r, r, 1, false, false);
  EXPECT_EQ(p.vpos, 0);
  EXPECT_TRUE(p.bl1);
}

TEST(Predicates, RegionLevelInMaximalRegion) {
  auto spec = load_gamespec(corpus_path("paper_a3"));
  auto sp = RegionSpace::of(spec.model);
  auto r = region_of(sp, LocId{0}, std::vector<Time>{5, 7});
  ASSERT_TRUE(is_maximal(sp, r));
  auto p = region_predicates(2, r, r, 2, false, false);
  EXPECT_EQ(p.vstar, 3);
  EXPECT_EQ(p.vge1, 3);
}

// The region-level reading agrees with the concrete one on every sampled delay.
TEST(Predicates, RegionAndConcreteAgree) {
  for (const auto& f : corpus_files()) {
    auto spec = load_gamespec(f);
    const auto& m = spec.model;
    auto sp = RegionSpace::of(m);
    std::mt19937_64 rng(9);
    for (const Region& r : enumerate_regions(m)) {
      auto v = random_point(sp, r, rng);
      for (const Time& d : representative_delays(sp, v)) {
        auto target = region_of(sp, r.loc, advance(sp, v, d));
        for (int w : {1, 2}) {
          auto c = update_predicates(m, v, d, w, false, false);
          auto a = region_predicates(m.clock_count(), r, target, w, false, false);
          EXPECT_EQ(c, a) << f << " " << to_string(r, m) << " d=" << to_pq(d);
        }
      }
    }
  }
}

TEST(Tick, Crossings) {
  auto t = tick_update(Time(0), Time(1));
  EXPECT_TRUE(t.tick);
  EXPECT_EQ(t.z, Time(0));
  t = tick_update(Time(1, 2), Time(1, 4));
  EXPECT_FALSE(t.tick);
  EXPECT_EQ(t.z, Time(3, 4));
  t = tick_update(Time(3, 4), Time(1, 2));
  EXPECT_TRUE(t.tick);
  EXPECT_EQ(t.z, Time(1, 4));
}

// ---------------------------------------------------------------- finite game

TEST(FiniteGame, StutterOnlyModel) {
  auto spec = parse_gamespec_or_throw("game g\nclocks x\np1-actions\np2-actions\nloc l initial inv true\nsafe l\n");
  auto g = build_finite_game(spec.model);
  ASSERT_GT(g.size(), 0u);
  for (std::size_t s = 0; s < g.size(); ++s) {
    const auto& b = g.base(static_cast<int>(s));
    EXPECT_LE(b.chain.size(), 4u);
    EXPECT_EQ(b.m1.size(), b.chain.size());
    for (std::size_t k = 0; k < b.m1.size(); ++k) {
      EXPECT_FALSE(b.m1[k].action);
      EXPECT_EQ(b.m1[k].k, k);
    }
    EXPECT_EQ(b.m2.size(), 2 * b.chain.size());
  }
}

TEST(FiniteGame, StateCountBound) {
  auto spec = load_gamespec(corpus_path("paper_a3"));
  auto g = build_finite_game(spec.model);
  EXPECT_LE(g.size(), enumerate_regions(spec.model).size() * 2 * 64);
  auto all = build_finite_game(spec.model, Encoding::Predicates, {.all_predicates = true});
  EXPECT_GE(all.size(), g.size());
}

TEST(FiniteGame, TableMatchesDelta) {
  for (const auto& f : corpus_files()) {
    auto spec = load_gamespec(f);
    for (Encoding enc : {Encoding::Predicates, Encoding::Tick}) {
      auto g = build_finite_game(spec.model, enc);
      for (std::size_t s = 0; s < g.size(); ++s) {
        const int si = static_cast<int>(s);
        for (std::size_t i1 = 0; i1 < g.moves1(si).size(); ++i1)
          for (std::size_t i2 = 0; i2 < g.moves2(si).size(); ++i2)
            ASSERT_EQ(g.state(g.succ(si, i1, i2)), g.delta(si, g.moves1(si)[i1], g.moves2(si)[i2])) << f;
      }
    }
  }
}

// Both players aim at the same chain entry, player 2 with its stutter; the
// scheduler index decides.
TEST(FiniteGame, TieGoesToSchedulerChoice) {
  auto spec = load_gamespec(corpus_path("paper_a3"));
  const auto& m = spec.model;
  auto g = build_finite_game(m);
  auto a1_1 = m.find_action("a1_1");
  bool checked = false;
  for (std::size_t s = 0; s < g.size() && !checked; ++s) {
    const int si = static_cast<int>(s);
    const auto& b = g.base(si);
    for (std::size_t i1 = 0; i1 < b.m1.size(); ++i1)
      for (std::size_t i2 = 0; i2 < b.m2.size(); ++i2) {
        if (b.m1[i1].k != b.m2[i2].k || b.m1[i1].action != a1_1 || b.m2[i2].action) continue;
        const auto& next = g.state(g.succ(si, i1, i2));
        if (b.m2[i2].i == 2) {
          EXPECT_EQ(next.base, b.succ2[i2]);
          EXPECT_FALSE(next.pred.bl1);
        } else {
          EXPECT_EQ(next.base, b.succ1[i1]);
          EXPECT_TRUE(next.pred.bl1);
        }
        checked = true;
      }
  }
  EXPECT_TRUE(checked) << "no state where a1_1 meets a stutter at the same chain entry";
}

TEST(FiniteGame, EarlierProposalWins) {
  auto spec = load_gamespec(corpus_path("paper_a3"));
  auto g = build_finite_game(spec.model);
  for (std::size_t s = 0; s < g.size(); ++s) {
    const int si = static_cast<int>(s);
    const auto& b = g.base(si);
    for (std::size_t i1 = 0; i1 < b.m1.size(); ++i1)
      for (std::size_t i2 = 0; i2 < b.m2.size(); ++i2) {
        const auto& next = g.state(g.succ(si, i1, i2));
        if (b.m1[i1].k < b.m2[i2].k) {
          EXPECT_EQ(next.base, b.succ1[i1]);
          EXPECT_TRUE(next.pred.bl1);
        } else if (b.m1[i1].k > b.m2[i2].k) {
          EXPECT_EQ(next.base, b.succ2[i2]);
          EXPECT_FALSE(next.pred.bl1);
        }
      }
  }
}

TEST(FiniteGame, TurnArenaShape) {
  auto spec = load_gamespec(corpus_path("watchdog"));
  auto g = build_finite_game(spec.model);
  auto t = to_turn_arena(g, spec.safe);
  std::size_t p2 = 0;
  for (std::size_t s = 0; s < g.size(); ++s) p2 += g.moves1(static_cast<int>(s)).size();
  EXPECT_EQ(t.arena.size(), g.size() + p2);
  for (std::size_t u = 0; u < t.arena.size(); ++u) {
    EXPECT_FALSE(t.arena.succ[u].empty());
    EXPECT_EQ(t.arena.owner[u], u < g.size() ? Player::One : Player::Two);
  }
  for (std::size_t s = 0; s < g.size(); ++s)
    for (std::size_t i1 = 0; i1 < g.moves1(static_cast<int>(s)).size(); ++i1) {
      int u = t.p2_node[s][i1];
      EXPECT_EQ(t.node_state(u), static_cast<int>(s));
      std::set<int> want;
      for (std::size_t i2 = 0; i2 < g.moves2(static_cast<int>(s)).size(); ++i2)
        want.insert(g.succ(static_cast<int>(s), i1, i2));
      EXPECT_EQ(std::set<int>(t.arena.succ[u].begin(), t.arena.succ[u].end()), want);
    }
}

TEST(CPre, TrivialSets) {
  auto spec = load_gamespec(corpus_path("paper_a3"));
  auto g = build_finite_game(spec.model);
  StateSet all(g.size(), 1), none(g.size(), 0);
  EXPECT_EQ(cpre1(g, all), all);
  EXPECT_EQ(cpre1(g, none), none);
}

TEST(CPre, SafetyFixpointIsClosed) {
  for (const auto& f : corpus_files()) {
    auto spec = load_gamespec(f);
    auto g = build_finite_game(spec.model);
    auto z = safety_fixpoint(g, spec.safe);
    auto c = cpre1(g, z);
    for (std::size_t s = 0; s < g.size(); ++s)
      if (z[s]) {
        EXPECT_TRUE(c[s]) << f;
      }
  }
}

// One-step controllability read off concrete moves agrees with CPre1.
TEST(CPre, MatchesConcreteControllability) {
  std::mt19937_64 rng(21);
  for (const auto& f : corpus_files()) {
    auto spec = load_gamespec(f);
    for (Encoding enc : {Encoding::Predicates, Encoding::Tick}) {
      auto g = build_finite_game(spec.model, enc);
      StateSet z(g.size());
      for (auto& b : z) b = rng() % 5 != 0;
      auto c = cpre1(g, z);
      for (int i = 0; i < 20; ++i) {
        int s = static_cast<int>(rng() % g.size());
        auto at = random_point(g.space(), g.state(s).base, rng);
        EXPECT_EQ(testing::concrete_cpre(g, z, s, at), c[s] != 0) << f << " state " << s;
      }
    }
  }
}

TEST(FiniteGame, RandomModelsTableMatchesDelta) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto spec = parse_gamespec_or_throw(testing::random_model_text(seed));
    auto g = build_finite_game(spec.model);
    for (std::size_t s = 0; s < g.size(); s += 3) {
      const int si = static_cast<int>(s);
      for (std::size_t i1 = 0; i1 < g.moves1(si).size(); ++i1)
        for (std::size_t i2 = 0; i2 < g.moves2(si).size(); ++i2)
          ASSERT_EQ(g.state(g.succ(si, i1, i2)), g.delta(si, g.moves1(si)[i1], g.moves2(si)[i2])) << seed;
    }
  }
}

}  // namespace
}  // namespace tga
