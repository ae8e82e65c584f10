#pragma once

#include "tga/constraint.hpp"
#include "tga/ids.hpp"
#include "tga/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tga {

struct Action {
  std::string name;
  Player owner = Player::One;
  friend bool operator==(const Action&, const Action&) = default;
};

struct Location {
  std::string name;
  Constraint invariant;
  bool initial = false;
  friend bool operator==(const Location&, const Location&) = default;
};

struct Edge {
  LocId source{};
  ActionId action{};
  Constraint guard;
  LocId target{};
  std::vector<ClockId> reset;  // sorted, no duplicates
  friend bool operator==(const Edge&, const Edge&) = default;
};

using ClockValuation = std::vector<Time>;

// A player's choice: delay plus either an own action or that player's stutter.
// The stutter has no ActionId, so no user identifier can ever denote it.
struct Move {
  Time delay;
  Player player = Player::One;
  std::optional<ActionId> action;
  bool is_stutter() const { return !action.has_value(); }
  friend bool operator==(const Move&, const Move&) = default;
};

class TimedGameModel {
 public:
  std::string name;
  std::vector<std::string> clocks;
  std::vector<Action> actions;
  std::vector<Location> locations;
  std::vector<Edge> edges;

  std::size_t clock_count() const { return clocks.size(); }
  std::size_t location_count() const { return locations.size(); }

  std::optional<ClockId> find_clock(std::string_view n) const;
  std::optional<LocId> find_location(std::string_view n) const;
  std::optional<ActionId> find_action(std::string_view n) const;

  const Location& location(LocId l) const { return locations[l.v]; }
  const Action& action(ActionId a) const { return actions[a.v]; }
  std::vector<ActionId> actions_of(Player p) const;
  std::vector<std::size_t> edges_from(LocId l) const;
  std::optional<LocId> initial_location() const;

  // c_x per clock: the largest constant compared against x, or 1 when x is unconstrained.
  std::vector<std::uint32_t> max_constants() const;

  std::string action_label(Player p, std::optional<ActionId> a) const;

  friend bool operator==(const TimedGameModel&, const TimedGameModel&) = default;
};

std::vector<std::uint32_t> max_constants(const TimedGameModel& m);

// Applies λ := 0.
ClockValuation apply_reset(const ClockValuation& v, const std::vector<ClockId>& reset);

struct Diagnostic {
  std::string message;
  friend auto operator<=>(const Diagnostic&, const Diagnostic&) = default;
};

// Structural checks at region granularity: determinism per action, the progress
// requirement for both players, and clock references. Returns a sorted list.
std::vector<Diagnostic> validate_model(const TimedGameModel& m);

}  // namespace tga
