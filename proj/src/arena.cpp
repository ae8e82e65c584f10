#include "tga/arena.hpp"

#include <algorithm>
#include <deque>

namespace tga {

int Arena::add_node(Player p, Label l) {
  owner.push_back(p);
  label.push_back(l);
  succ.emplace_back();
  return static_cast<int>(owner.size()) - 1;
}

void Arena::finalize() {
  pred.assign(size(), {});
  for (std::size_t u = 0; u < size(); ++u) {
    auto& s = succ[u];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (int v : s) pred[v].push_back(static_cast<int>(u));
  }
}

std::size_t Arena::edge_count() const {
  std::size_t e = 0;
  for (auto& s : succ) e += s.size();
  return e;
}

Arena Arena::swapped() const {
  Arena b = *this;
  for (auto& o : b.owner) o = opponent(o);
  return b;
}

NodeMask attractor(const Arena& a, const NodeMask& sub, const NodeMask& target, Player p, std::vector<int>* move) {
  const std::size_t n = a.size();
  NodeMask in(n, 0);
  std::vector<int> left(n, 0);
  std::deque<int> work;
  for (std::size_t u = 0; u < n; ++u) {
    if (!sub[u]) continue;
    if (target[u]) {
      in[u] = 1;
      work.push_back(static_cast<int>(u));
    } else if (a.owner[u] != p) {
      for (int v : a.succ[u]) left[u] += sub[v] ? 1 : 0;
    }
  }
  while (!work.empty()) {
    const int v = work.front();
    work.pop_front();
    for (int u : a.pred[v]) {
      if (!sub[u] || in[u]) continue;
      if (a.owner[u] == p) {
        in[u] = 1;
        if (move) (*move)[u] = v;
        work.push_back(u);
      } else if (--left[u] == 0) {
        in[u] = 1;
        work.push_back(u);
      }
    }
  }
  return in;
}

std::vector<int> mask_to_list(const NodeMask& m) {
  std::vector<int> out;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) out.push_back(static_cast<int>(i));
  return out;
}

std::size_t mask_count(const NodeMask& m) { return static_cast<std::size_t>(std::count(m.begin(), m.end(), 1)); }

}  // namespace tga
