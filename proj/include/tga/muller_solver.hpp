#pragma once

#include "tga/arena.hpp"
#include "tga/muller.hpp"

#include <memory>
#include <unordered_map>
#include <vector>

namespace tga {

// Finite-memory strategy for the solving player. Memory values are 0..memory()-1
// and every value is safe to start from: the strategy wins from any of them.
// Protocol per visited node u: mu = update(mu, u), then, at own nodes, move(mu, u).
struct MullerSolution;

class MullerStrategy {
 public:
  struct Phase {
    LiteralSet label;                       // the child's label
    std::unordered_map<int, int> attract;  // attractor part: node -> successor (-1 at opponent nodes)
    int child = -1;
    int offset = 0;
    int mem = 1;
  };
  struct Part {
    enum class Kind { Leaf, Good, Bad } kind = Kind::Leaf;
    int mem = 1;
    std::unordered_map<int, int> moves;  // Leaf: any successor inside the subgame; Bad: attractor moves
    std::vector<Phase> phases;           // Good
    std::unordered_map<int, int> layer;  // Bad: node -> index into `layers`
    std::vector<std::pair<int, int>> layers;  // Bad: (child part, child memory)
  };

  int memory() const { return root_ < 0 ? 1 : parts_[root_].mem; }
  int update(int mu, int u) const { return root_ < 0 ? 0 : update_in(root_, mu, u); }
  int move(int mu, int u) const { return root_ < 0 ? -1 : move_in(root_, mu, u); }
  bool empty() const { return root_ < 0; }

 private:
  friend class MullerSolverImpl;
  friend MullerSolution solve_muller(const Arena&, const MullerCondition&, Player, const NodeMask&);
  int update_in(int part, int mu, int u) const;
  int move_in(int part, int mu, int u) const;
  bool outside(LiteralSet l, int u) const { return !colors_[u].subset_of(l); }

  std::vector<Part> parts_;
  std::vector<LiteralSet> colors_;
  int root_ = -1;
};

struct MullerSolution {
  NodeMask win;  // nodes won by the solving player
  MullerStrategy strategy;
  std::uint64_t tree_memory = 1;  // m_F of the condition's Zielonka tree
};

// Solves the Muller game for `player` on the subgame `sub` (all nodes when empty).
// `sub` must be closed: every node keeps a successor inside it, and the opponent
// cannot leave it.
MullerSolution solve_muller(const Arena& a, const MullerCondition& f, Player player = Player::One,
                            const NodeMask& sub = {});

}  // namespace tga
