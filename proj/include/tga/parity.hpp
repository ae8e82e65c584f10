#pragma once

#include "tga/arena.hpp"
#include "tga/muller.hpp"

#include <vector>

namespace tga {

// Min-parity game: player 1 wins a play iff the least priority seen infinitely
// often is even.
struct ParityGame {
  std::vector<Player> owner;
  std::vector<std::vector<int>> succ;
  std::vector<int> priority;
};

// Recursive attractor-based solver. Returns player 1's winning nodes and a
// positional strategy (successor per player-1 node in the winning set, else -1).
struct ParitySolution {
  std::vector<char> win;
  std::vector<int> strategy;
};
ParitySolution solve_parity(const ParityGame& g);

// Winning set of `player` for a Muller condition, computed through the
// deterministic parity automaton whose states are the leaves of the unfolded
// Zielonka tree. Throws CapacityError when the tree has more than `max_leaves` leaves.
NodeMask solve_muller_via_parity(const Arena& a, const MullerCondition& f, Player player = Player::One,
                                 const NodeMask& sub = {}, std::size_t max_leaves = 4096);

}  // namespace tga
