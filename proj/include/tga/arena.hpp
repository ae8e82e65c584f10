#pragma once

#include "tga/formula.hpp"
#include "tga/ids.hpp"

#include <string>
#include <vector>

namespace tga {

// Turn-based game graph. Every node must have at least one successor.
struct Arena {
  std::vector<Player> owner;
  std::vector<std::vector<int>> succ;
  std::vector<Label> label;
  std::vector<std::vector<int>> pred;  // filled by finalize()

  int add_node(Player p, Label l);
  void add_edge(int from, int to) { succ[from].push_back(to); }
  // Sorts and deduplicates successor lists and builds predecessors.
  void finalize();
  std::size_t size() const { return owner.size(); }
  std::size_t edge_count() const;
  Arena swapped() const;  // same graph with the players exchanged
};

using NodeMask = std::vector<char>;

// Nodes of `sub` from which player p forces a visit to `target` without leaving `sub`.
// When `move` is given, it receives for every p-node of the attractor outside the
// target a successor that makes progress.
NodeMask attractor(const Arena& a, const NodeMask& sub, const NodeMask& target, Player p,
                   std::vector<int>* move = nullptr);

std::vector<int> mask_to_list(const NodeMask& m);
std::size_t mask_count(const NodeMask& m);

}  // namespace tga
