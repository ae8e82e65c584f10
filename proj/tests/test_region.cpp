#include "oracles.hpp"

#include "tga/concrete.hpp"
#include "tga/region.hpp"

#include <gtest/gtest.h>

#include <random>

namespace tga {
namespace {

using testing::corpus_files;
using testing::corpus_path;

TimedGameModel clocks_only(std::size_t n, const std::string& inv = "true") {
  std::string cl = n == 1 ? "x" : "x y";
  return parse_gamespec_or_throw("game g\nclocks " + cl + "\np1-actions\np2-actions\nloc l initial inv " + inv +
                                 "\nsafe l\n")
      .model;
}

RegionSpace space(std::vector<std::uint32_t> c) {
  RegionSpace sp;
  sp.cmax = std::move(c);
  return sp;
}

TEST(Region, AllIntegerValuation) {
  auto sp = space({1, 1});
  auto r = region_of(sp, LocId{0}, std::vector<Time>{0, 0});
  EXPECT_TRUE(r.is_zero(0));
  EXPECT_TRUE(r.is_zero(1));
  EXPECT_EQ(r.blocks, 0);
}

TEST(Region, BeyondAndFraction) {
  auto sp = space({1, 1});
  auto r = region_of(sp, LocId{0}, std::vector<Time>{Time(3, 2), Time(1, 4)});
  EXPECT_TRUE(r.beyond(0));
  EXPECT_EQ(r.h[0], 1);
  EXPECT_EQ(r.cls[1], 1);
  EXPECT_EQ(r.h[1], 0);
  EXPECT_EQ(r.blocks, 1);
  auto v = sample(sp, r);
  EXPECT_EQ(v, (ClockValuation{Time(2), Time(1, 2)}));
}

TEST(Region, EqualFractionsShareBlock) {
  auto sp = space({1, 1});
  auto r = region_of(sp, LocId{0}, std::vector<Time>{Time(1, 2), Time(1, 2)});
  EXPECT_EQ(r.cls[0], 1);
  EXPECT_EQ(r.cls[1], 1);
  EXPECT_EQ(r.blocks, 1);
}

TEST(Region, SampleOfIntegralRegionIsExact) {
  auto sp = space({2, 2});
  auto r = region_of(sp, LocId{0}, std::vector<Time>{2, 1});
  EXPECT_EQ(sample(sp, r), (ClockValuation{Time(2), Time(1)}));
}

TEST(Region, TimeSuccessorLeavesAndHitsIntegers) {
  auto sp = space({1, 1});
  auto zero = region_of(sp, LocId{0}, std::vector<Time>{0, 0});
  auto s = time_successor(sp, zero).region;
  EXPECT_EQ(s.cls[0], 1);
  EXPECT_EQ(s.cls[1], 1);
  EXPECT_EQ(s.h[0], 0);
  auto t = time_successor(sp, s).region;
  EXPECT_TRUE(t.integral(0) && t.integral(1));
  EXPECT_EQ(t.h[0], 1);
  EXPECT_EQ(t.h[1], 1);
}

TEST(Region, FullResetAndDisabledGuard) {
  auto spec = load_gamespec(corpus_path("paper_a3"));
  const auto& m = spec.model;
  RegionSpace sp = RegionSpace::of(m);
  auto r = region_of(sp, *m.find_location("l2"), std::vector<Time>{Time(1, 2), Time(1, 3)});
  auto z = apply_reset(r, {ClockId{0}, ClockId{1}});
  EXPECT_TRUE(z.is_zero(0) && z.is_zero(1));
  // a1_0 requires x<=0 and x has a positive fraction here
  auto l0 = region_of(sp, *m.find_location("l0"), std::vector<Time>{Time(1, 2), Time(1, 3)});
  auto a = m.find_action("a1_0");
  for (std::size_t i : m.edges_from(l0.loc))
    if (m.edges[i].action == *a) {
      EXPECT_FALSE(discrete_successor(m, l0, m.edges[i]));
    }
}

TEST(Region, OneClockHasFourRegions) {
  auto m = clocks_only(1);
  EXPECT_EQ(enumerate_regions(m).size(), 4u);
  EXPECT_EQ(testing::grid_region_count(m), 4u);
}

TEST(Region, TwoClocksMatchDenseSampling) {
  auto m = clocks_only(2);
  auto sp = RegionSpace::of(m);
  std::set<Region> hit;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    // denominators 2..6 place points on diagonals and edges often enough
    auto coord = [&] { return Time(static_cast<long>(rng() % 19), 6); };
    hit.insert(region_of(sp, LocId{0}, std::vector<Time>{coord(), coord()}));
  }
  EXPECT_EQ(enumerate_regions(m).size(), hit.size());
  EXPECT_EQ(enumerate_regions(m).size(), testing::grid_region_count(m));
}

TEST(Region, CorpusCountsMatchGridAndBound) {
  for (const auto& f : corpus_files()) {
    auto spec = load_gamespec(f);
    auto regions = enumerate_regions(spec.model);
    EXPECT_EQ(regions.size(), testing::grid_region_count(spec.model)) << f;
    EXPECT_LE(BigInt(regions.size()), region_count_bound(spec.model)) << f;
  }
}

TEST(Region, BoundFormulaOnReceptiveRegionExample) {
  auto spec = load_gamespec(corpus_path("paper_a3"));
  EXPECT_EQ(region_count_bound(spec.model), BigInt(512));
  EXPECT_LE(enumerate_regions(spec.model).size(), 512u);
}

TEST(Region, SampleIsInsideItsRegion) {
  for (const auto& f : corpus_files()) {
    auto spec = load_gamespec(f);
    auto sp = RegionSpace::of(spec.model);
    std::mt19937_64 rng(5);
    for (const Region& r : enumerate_regions(spec.model)) {
      EXPECT_EQ(region_of(sp, r.loc, sample(sp, r)), r) << f;
      EXPECT_EQ(region_of(sp, r.loc, random_point(sp, r, rng)), r) << f;
    }
  }
}

TEST(Region, TimeChainIsMonotone) {
  auto spec = load_gamespec(corpus_path("two_clock_race"));
  auto sp = RegionSpace::of(spec.model);
  for (const Region& r : enumerate_regions(spec.model)) {
    auto chain = time_chain(sp, r);
    ASSERT_FALSE(chain.empty());
    EXPECT_EQ(chain.front().region, r);
    EXPECT_TRUE(is_maximal(sp, chain.back().region));
    // the sample of r reaches each entry in order
    auto v = sample(sp, r);
    std::size_t k = 0;
    for (const Time& d : representative_delays(sp, v)) {
      auto at = region_of(sp, r.loc, advance(sp, v, d));
      while (k < chain.size() && chain[k].region != at) ++k;
      EXPECT_LT(k, chain.size());
    }
  }
}

TEST(Region, WrapClockSpace) {
  auto spec = load_gamespec(corpus_path("watchdog"));
  auto sp = RegionSpace::with_wrap_clock(spec.model);
  EXPECT_EQ(sp.clocks(), 2u);
  EXPECT_EQ(sp.wrap, 1);
  auto r = region_of(sp, LocId{0}, std::vector<Time>{0, 0});
  auto chain = time_chain(sp, r);
  bool wrapped = false;
  for (auto& e : chain) wrapped |= e.wrapped;
  EXPECT_TRUE(wrapped);
}

TEST(Region, Bisimulation) {
  auto spec = load_gamespec(corpus_path("paper_a3"));
  const auto& m = spec.model;
  auto regions = enumerate_regions(m);
  for (const Region& from : regions)
    for (const Region& to : regions)
      for (Player p : {Player::One, Player::Two})
        EXPECT_TRUE(bisimulation_check(m, from, to, p, 10, 17)) << to_string(from, m) << " -> " << to_string(to, m);
}

TEST(Region, InvariantFiltersRegions) {
  auto m = clocks_only(1, "x<=1");
  EXPECT_EQ(enumerate_regions(m).size(), 3u);
  EXPECT_THROW(region_of(m, LocId{0}, std::vector<Time>{2}), std::domain_error);
}

}  // namespace
}  // namespace tga
