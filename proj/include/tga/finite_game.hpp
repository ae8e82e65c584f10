#pragma once

#include "tga/arena.hpp"
#include "tga/enlarged.hpp"

#include <map>
#include <optional>
#include <vector>

namespace tga {

enum class Encoding { Predicates, Tick };

// A player-1 move names a chain position and an action (nullopt = stutter).
struct P1Move {
  std::uint16_t k = 0;
  std::optional<ActionId> action;
  auto operator<=>(const P1Move&) const = default;
};
// Player 2 additionally names who the scheduler favours on a tie.
struct P2Move {
  std::uint16_t k = 0;
  std::optional<ActionId> action;
  std::uint8_t i = 2;
  auto operator<=>(const P2Move&) const = default;
};

struct BaseInfo {
  Region region;
  std::vector<ChainEntry> chain;  // admissible part of the time-successor chain
  std::vector<P1Move> m1;
  std::vector<P2Move> m2;
  std::vector<Region> succ1;  // discrete outcome per m1
  std::vector<Region> succ2;  // discrete outcome per m2
};

struct FiniteGameOptions {
  // Seed every predicate combination instead of the all-false initialisation only.
  bool all_predicates = false;
};

class FiniteGame {
 public:
  const TimedGameModel& model() const { return *model_; }
  const RegionSpace& space() const { return sp_; }
  Encoding encoding() const { return enc_; }

  std::size_t size() const { return states_.size(); }
  const EnlargedRegion& state(int s) const { return states_[s]; }
  std::optional<int> find(const EnlargedRegion& e) const;
  const BaseInfo& base(int s) const { return bases_[base_of_[s]]; }
  const std::vector<P1Move>& moves1(int s) const { return base(s).m1; }
  const std::vector<P2Move>& moves2(int s) const { return base(s).m2; }
  int succ(int s, std::size_t i1, std::size_t i2) const { return succ_[s][i1 * moves2(s).size() + i2]; }
  // δ^F computed from scratch, for cross-checking the table.
  EnlargedRegion delta(int s, const P1Move& a, const P2Move& b) const;

  // The state used to start plays from base region r (model clocks only).
  EnlargedRegion initial_for(const Region& r) const;
  // Base region over the model clocks.
  Region project(const Region& r) const;

  friend FiniteGame build_finite_game(const TimedGameModel& m, Encoding enc, const FiniteGameOptions& opt);

 private:
  const TimedGameModel* model_ = nullptr;
  RegionSpace sp_;
  Encoding enc_ = Encoding::Predicates;
  std::vector<EnlargedRegion> states_;
  std::map<EnlargedRegion, int> index_;
  std::vector<BaseInfo> bases_;
  std::map<Region, int> base_index_;
  std::vector<int> base_of_;
  std::vector<std::vector<int>> succ_;
};

// The model must outlive the game.
FiniteGame build_finite_game(const TimedGameModel& m, Encoding enc = Encoding::Predicates,
                             const FiniteGameOptions& opt = {});

using StateSet = std::vector<char>;

// {s | some player-1 move keeps every reply inside Z}.
StateSet cpre1(const FiniteGame& g, const StateSet& z);
// νZ. Y ∩ CPre1(Z).
StateSet safety_fixpoint(const FiniteGame& g, const std::vector<LocId>& safe);

// Player-1 nodes 0..n-1 are the game states; one player-2 node per (state, m1).
struct TurnArena {
  Arena arena;
  std::size_t states = 0;
  std::vector<std::pair<int, int>> pending;  // per player-2 node: (state, index into moves1)
  std::vector<std::vector<int>> p2_node;     // per state: arena node of each m1
  int node_state(int u) const { return u < static_cast<int>(states) ? u : pending[u - states].first; }
};

Label state_label(const FiniteGame& g, int s, const std::vector<LocId>& safe);
TurnArena to_turn_arena(const FiniteGame& g, const std::vector<LocId>& safe);
// Arena nodes from which player 2 cannot force a visit outside the safe locations.
NodeMask safe_subgame(const TurnArena& t);

}  // namespace tga
