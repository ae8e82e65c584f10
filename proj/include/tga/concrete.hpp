#pragma once

#include "tga/region.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tga {

struct ConcreteState {
  LocId loc{};
  ClockValuation clocks;  // model clocks, then the wrap clock when the space has one
  friend bool operator==(const ConcreteState&, const ConcreteState&) = default;
};

// Letting time pass from a valuation crosses finitely many integer boundaries.
// Between two consecutive crossings every delay lands in the same region; each
// such stretch is one piece. A point piece has lo == hi.
struct DelayPiece {
  Time lo;
  Time hi;
  bool point = false;
  bool unbounded = false;  // (lo, inf)
  bool contains(const Time& d) const;
  Time midpoint() const;
};

std::vector<DelayPiece> delay_pieces(const RegionSpace& sp, std::span<const Time> v);

// κ + Δ with the wrap clock reduced modulo 1; `wrapped` reports a crossing of 1.
ClockValuation advance(const RegionSpace& sp, std::span<const Time> v, const Time& d, bool* wrapped = nullptr);

bool invariant_throughout(const TimedGameModel& m, const RegionSpace& sp, const ConcreteState& s, const Time& d);

// The edge an action takes after delay d, if any.
std::optional<std::size_t> enabled_edge(const TimedGameModel& m, const RegionSpace& sp, const ConcreteState& s,
                                        ActionId a, const Time& d);

// Membership in Γ_p(s). On failure `why` receives the reason.
bool available(const TimedGameModel& m, const RegionSpace& sp, const ConcreteState& s, const Move& mv,
               std::string* why = nullptr);

// δ(s, m) for an available move.
ConcreteState apply_move(const TimedGameModel& m, const RegionSpace& sp, const ConcreteState& s, const Move& mv);

// Whether player p has some available move from ⟨loc,v⟩ whose successor lies in `to`.
bool has_move_into(const TimedGameModel& m, LocId loc, std::span<const Time> v, Player p, const Region& to);

// Representative delays: every piece's lower end, midpoint, and for open pieces a
// point strictly between lo and the midpoint.
std::vector<Time> representative_delays(const RegionSpace& sp, std::span<const Time> v);

}  // namespace tga
