#pragma once

#include "tga/concrete.hpp"
#include "tga/region.hpp"

#include <compare>
#include <optional>
#include <stdexcept>

namespace tga {

// Observations carried across a transition. Bit x of each mask is clock x.
struct PredicateState {
  bool bl1 = false;
  std::uint8_t vpos = 0;   // κ'(x) > 0 just before the reset
  std::uint8_t vge1 = 0;   // κ'(x) >= 1 just before the reset
  std::uint8_t vstar = 0;  // above c_x before and after the delay
  bool consistent() const { return (vge1 & ~vpos) == 0; }
  auto operator<=>(const PredicateState&) const = default;
};

// A state of the finite game: base region plus observations. For the tick
// encoding the base region carries the wrap clock and `tick` is meaningful.
struct EnlargedRegion {
  Region base;
  PredicateState pred;
  bool tick = false;
  auto operator<=>(const EnlargedRegion&) const = default;
};

class AbstractionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Concrete predicate update for a move of delay Δ from κ (model clocks only).
PredicateState update_predicates(const TimedGameModel& m, std::span<const Time> kappa, const Time& delay, int winner,
                                 bool tie, bool same_successor_on_tie);

// Region-level predicates for a delay from `source` into the chain entry `target`.
PredicateState region_predicates(std::size_t model_clocks, const Region& source, const Region& target, int winner,
                                 bool tie, bool same_successor_on_tie);

// Successor of an enlarged region when the winning move lets time reach
// `delay_target` (which must be on the source's chain) and then fires `action`.
EnlargedRegion lift_region_update(const TimedGameModel& m, const RegionSpace& sp, const EnlargedRegion& source,
                                  const Region& delay_target, std::optional<ActionId> action, int winner, bool tie,
                                  bool same_successor_on_tie);

// Region after firing `action` (or stuttering) at `at`; nullopt when not enabled.
std::optional<Region> fire(const TimedGameModel& m, const Region& at, std::optional<ActionId> action);

struct TickStep {
  Time z;
  bool tick = false;
};
// The wrap clock advanced by Δ; tick iff it reached or passed 1.
TickStep tick_update(const Time& z, const Time& delay);

}  // namespace tga
