#include "tga/parity.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace tga {

namespace {

class ParitySolver {
 public:
  explicit ParitySolver(const ParityGame& g) : g_(g), n_(g.owner.size()), pred_(n_) {
    for (std::size_t u = 0; u < n_; ++u)
      for (int v : g.succ[u]) pred_[v].push_back(static_cast<int>(u));
  }

  // Returns the nodes of `sub` won by player 1; `move` records player-1 choices.
  std::vector<char> solve(const std::vector<char>& sub, std::vector<int>& move) {
    int lo = -1;
    for (std::size_t u = 0; u < n_; ++u)
      if (sub[u] && (lo < 0 || g_.priority[u] < lo)) lo = g_.priority[u];
    if (lo < 0) return std::vector<char>(n_, 0);
    const Player alpha = lo % 2 == 0 ? Player::One : Player::Two;
    std::vector<char> top(n_, 0);
    for (std::size_t u = 0; u < n_; ++u)
      if (sub[u] && g_.priority[u] == lo) top[u] = 1;
    std::vector<int> amove(n_, -1);
    auto a = attr(sub, top, alpha, amove);
    std::vector<char> rest = minus(sub, a);
    std::vector<int> m1(n_, -1);
    auto w1 = solve(rest, m1);
    std::vector<char> w_beta(n_, 0);  // opponent of alpha in `rest`
    bool beta_empty = true;
    for (std::size_t u = 0; u < n_; ++u) {
      if (!rest[u]) continue;
      const bool beta = alpha == Player::One ? !w1[u] : w1[u];
      if (beta) w_beta[u] = 1, beta_empty = false;
    }
    if (beta_empty) {
      // alpha wins all of sub.
      std::vector<char> win(n_, 0);
      for (std::size_t u = 0; u < n_; ++u) {
        if (!sub[u]) continue;
        if (alpha == Player::One) {
          win[u] = 1;
          if (g_.owner[u] == Player::One) {
            if (rest[u])
              move[u] = m1[u];
            else if (top[u])
              move[u] = any_inside(sub, static_cast<int>(u));
            else
              move[u] = amove[u];
          }
        }
      }
      return win;
    }
    const Player beta = opponent(alpha);
    std::vector<int> bmove(n_, -1);
    auto b = attr(sub, w_beta, beta, bmove);
    std::vector<char> rest2 = minus(sub, b);
    std::vector<int> m2(n_, -1);
    auto w2 = solve(rest2, m2);
    std::vector<char> win(n_, 0);
    for (std::size_t u = 0; u < n_; ++u) {
      if (!sub[u]) continue;
      if (rest2[u]) {
        win[u] = w2[u];
        if (w2[u] && g_.owner[u] == Player::One) move[u] = m2[u];
      } else if (beta == Player::One) {
        win[u] = 1;
        if (g_.owner[u] == Player::One) move[u] = w_beta[u] ? m1[u] : bmove[u];
      }
    }
    return win;
  }

 private:
  int any_inside(const std::vector<char>& sub, int u) const {
    for (int v : g_.succ[u])
      if (sub[v]) return v;
    return -1;
  }

  std::vector<char> minus(const std::vector<char>& a, const std::vector<char>& b) const {
    std::vector<char> r(n_, 0);
    for (std::size_t u = 0; u < n_; ++u) r[u] = a[u] && !b[u];
    return r;
  }

  std::vector<char> attr(const std::vector<char>& sub, const std::vector<char>& target, Player p,
                         std::vector<int>& move) const {
    std::vector<char> in(n_, 0);
    std::vector<int> left(n_, 0);
    std::deque<int> work;
    for (std::size_t u = 0; u < n_; ++u) {
      if (!sub[u]) continue;
      if (target[u]) {
        in[u] = 1;
        work.push_back(static_cast<int>(u));
      } else if (g_.owner[u] != p) {
        for (int v : g_.succ[u]) left[u] += sub[v] ? 1 : 0;
      }
    }
    while (!work.empty()) {
      int v = work.front();
      work.pop_front();
      for (int u : pred_[v]) {
        if (!sub[u] || in[u]) continue;
        if (g_.owner[u] == p) {
          in[u] = 1;
          move[u] = v;
          work.push_back(u);
        } else if (--left[u] == 0) {
          in[u] = 1;
          work.push_back(u);
        }
      }
    }
    return in;
  }

  const ParityGame& g_;
  std::size_t n_;
  std::vector<std::vector<int>> pred_;
};

// Leaves of the unfolded tree are paths of child indices from the root.
class TreeAutomaton {
 public:
  TreeAutomaton(const ZielonkaTree& t, std::size_t cap) : t_(t), cap_(cap) {}

  int initial() { return intern(leftmost({})); }

  // Reading a literal set: the deepest node on the current path whose label
  // contains it decides the priority; the path moves to that node's next child.
  std::pair<int, int> step(int leaf, LiteralSet c) {
    const std::vector<int> path = paths_[leaf];
    std::size_t depth = 0;
    int node = t_.root();
    std::vector<int> nodes{node};
    for (int ch : path) {
      node = t_.node(node).children[ch];
      nodes.push_back(node);
    }
    std::size_t j = 0;
    for (std::size_t d = 0; d < nodes.size(); ++d)
      if (c.subset_of(t_.node(nodes[d]).label)) j = d;
    depth = j;
    const ZielonkaNode& v = t_.node(nodes[j]);
    int prio = static_cast<int>(depth) + (t_.node(t_.root()).good ? 0 : 1);
    if (v.children.empty()) return {leaf, prio};
    std::vector<int> prefix(path.begin(), path.begin() + static_cast<long>(j));
    const int next = (path[j] + 1) % static_cast<int>(v.children.size());
    prefix.push_back(next);
    return {intern(leftmost(prefix)), prio};
  }

  std::size_t leaves() const { return paths_.size(); }

 private:
  std::vector<int> leftmost(std::vector<int> path) const {
    int node = t_.root();
    for (int ch : path) node = t_.node(node).children[ch];
    while (!t_.node(node).children.empty()) {
      path.push_back(0);
      node = t_.node(node).children[0];
    }
    return path;
  }

  int intern(const std::vector<int>& p) {
    auto [it, fresh] = ids_.try_emplace(p, static_cast<int>(paths_.size()));
    if (fresh) {
      paths_.push_back(p);
      if (paths_.size() > cap_) throw CapacityError("Zielonka tree has more than " + std::to_string(cap_) + " leaves");
    }
    return it->second;
  }

  const ZielonkaTree& t_;
  std::size_t cap_;
  std::map<std::vector<int>, int> ids_;
  std::vector<std::vector<int>> paths_;
};

}  // namespace

ParitySolution solve_parity(const ParityGame& g) {
  ParitySolver s(g);
  ParitySolution out;
  out.strategy.assign(g.owner.size(), -1);
  out.win = s.solve(std::vector<char>(g.owner.size(), 1), out.strategy);
  return out;
}

NodeMask solve_muller_via_parity(const Arena& a, const MullerCondition& f, Player player, const NodeMask& sub,
                                 std::size_t max_leaves) {
  const ZielonkaTree t = ZielonkaTree::build(f);
  if (t.leaf_count() > max_leaves)
    throw CapacityError("Zielonka tree has " + std::to_string(t.leaf_count()) + " leaves; the limit is " +
                        std::to_string(max_leaves));
  TreeAutomaton aut(t, max_leaves);
  const NodeMask in = sub.empty() ? NodeMask(a.size(), 1) : sub;
  // Product node (u, q): arena node u reached with automaton state q before reading u.
  ParityGame pg;
  std::map<std::pair<int, int>, int> id;
  std::deque<std::pair<int, int>> work;
  auto node = [&](int u, int q) {
    auto [it, fresh] = id.try_emplace({u, q}, static_cast<int>(pg.owner.size()));
    if (fresh) {
      // The solving player plays the role of player 1 in the parity game.
      pg.owner.push_back(a.owner[u] == player ? Player::One : Player::Two);
      pg.succ.emplace_back();
      pg.priority.push_back(0);
      work.emplace_back(u, q);
    }
    return it->second;
  };
  const int q0 = aut.initial();
  std::vector<int> start(a.size(), -1);
  for (std::size_t u = 0; u < a.size(); ++u)
    if (in[u]) start[u] = node(static_cast<int>(u), q0);
  while (!work.empty()) {
    auto [u, q] = work.front();
    work.pop_front();
    const int me = id[{u, q}];
    auto [q2, prio] = aut.step(q, f.literals(a.label[u]));
    pg.priority[me] = prio;
    for (int v : a.succ[u])
      if (in[v]) {
        const int w = node(v, q2);
        pg.succ[me].push_back(w);
      }
  }
  auto sol = solve_parity(pg);
  NodeMask win(a.size(), 0);
  for (std::size_t u = 0; u < a.size(); ++u)
    if (start[u] >= 0) win[u] = sol.win[start[u]];
  return win;
}

}  // namespace tga
