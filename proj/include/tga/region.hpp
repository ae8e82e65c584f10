#pragma once

#include "tga/model.hpp"

#include <array>
#include <compare>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace tga {

inline constexpr std::size_t kMaxClocks = 8;

// Region tuple ⟨l, h, ⟨C-1, C0, C1..Cn⟩⟩. cls[x] is -1 for C-1 (value above c_x),
// 0 for C0 (zero fraction) and k >= 1 for the k-th block in increasing fraction order.
struct Region {
  LocId loc{};
  std::uint8_t n = 0;
  std::uint8_t blocks = 0;
  std::array<std::uint16_t, kMaxClocks> h{};
  std::array<std::int8_t, kMaxClocks> cls{};

  bool beyond(std::size_t x) const { return cls[x] < 0; }
  bool integral(std::size_t x) const { return cls[x] == 0; }
  bool is_zero(std::size_t x) const { return cls[x] == 0 && h[x] == 0; }

  auto operator<=>(const Region&) const = default;
};

// Clock constants used to build regions. `wrap` names a clock that is kept in
// [0,1) and wraps to 0 each time it reaches 1.
struct RegionSpace {
  std::vector<std::uint32_t> cmax;
  int wrap = -1;

  std::size_t clocks() const { return cmax.size(); }
  static RegionSpace of(const TimedGameModel& m);
  static RegionSpace with_wrap_clock(const TimedGameModel& m);
};

struct ChainEntry {
  Region region;
  bool wrapped = false;  // the wrap clock crossed 1 on the way here
  auto operator<=>(const ChainEntry&) const = default;
};

Region region_of(const RegionSpace& sp, LocId loc, std::span<const Time> v);
// Checked variant: throws std::domain_error when v violates inv(loc).
Region region_of(const TimedGameModel& m, LocId loc, std::span<const Time> v);

ClockValuation sample(const RegionSpace& sp, const Region& r);

struct TimeStep {
  Region region;
  bool wrapped = false;
};
TimeStep time_successor(const RegionSpace& sp, const Region& r);

bool is_maximal(const RegionSpace& sp, const Region& r);

// Every region visited by letting time pass, in order, first occurrences only.
std::vector<ChainEntry> time_chain(const RegionSpace& sp, const Region& r);
// The prefix of time_chain on which the source location invariant keeps holding.
std::vector<ChainEntry> admissible_chain(const TimedGameModel& m, const RegionSpace& sp, const Region& r);

bool holds(const Constraint& c, const Region& r);

Region apply_reset(const Region& r, const std::vector<ClockId>& reset);
Region normalize(Region r);

// nullopt when the guard fails on r or the target invariant fails after reset.
std::optional<Region> discrete_successor(const TimedGameModel& m, const Region& r, const Edge& e);

// All well-formed region tuples of one location, ignoring invariants.
std::vector<Region> all_regions(const RegionSpace& sp, LocId loc);
// Regions whose valuations satisfy their location invariant, sorted.
std::vector<Region> enumerate_regions(const TimedGameModel& m);
std::vector<Region> enumerate_regions(const TimedGameModel& m, const RegionSpace& sp);

// |L| * prod(c_x + 1) * |C|! * 2^(2|C|)
BigInt region_count_bound(const TimedGameModel& m);

std::string to_string(const Region& r, const TimedGameModel& m);

// Test utility: whenever one of k sampled states of `from` has a player-p move into
// `to`, every sampled state has one.
bool bisimulation_check(const TimedGameModel& m, const Region& from, const Region& to, Player p, int k,
                        std::uint64_t seed);

// A pseudo-random valuation inside r (distinct from the canonical sample).
ClockValuation random_point(const RegionSpace& sp, const Region& r, std::mt19937_64& rng);

}  // namespace tga
