#include "tga/muller_solver.hpp"

namespace tga {

int MullerStrategy::update_in(int pi, int mu, int u) const {
  const Part& p = parts_[pi];
  switch (p.kind) {
    case Part::Kind::Leaf:
      return 0;
    case Part::Kind::Good: {
      mu %= p.mem;
      std::size_t i = 0;
      while (i + 1 < p.phases.size() && mu >= p.phases[i + 1].offset) ++i;
      const Phase& ph = p.phases[i];
      if (outside(ph.label, u)) {
        const Phase& nx = p.phases[(i + 1) % p.phases.size()];
        if (nx.child >= 0 && !nx.attract.count(u)) return nx.offset + update_in(nx.child, 0, u);
        return nx.offset;
      }
      if (ph.child >= 0 && !ph.attract.count(u)) return ph.offset + update_in(ph.child, mu - ph.offset, u);
      return mu;
    }
    case Part::Kind::Bad: {
      auto it = p.layer.find(u);
      if (it == p.layer.end()) return mu % p.mem;
      auto [child, cm] = p.layers[it->second];
      return update_in(child, mu % cm, u);
    }
  }
  return 0;
}

int MullerStrategy::move_in(int pi, int mu, int u) const {
  const Part& p = parts_[pi];
  switch (p.kind) {
    case Part::Kind::Leaf: {
      auto it = p.moves.find(u);
      return it == p.moves.end() ? -1 : it->second;
    }
    case Part::Kind::Good: {
      mu %= p.mem;
      std::size_t i = 0;
      while (i + 1 < p.phases.size() && mu >= p.phases[i + 1].offset) ++i;
      const Phase& ph = p.phases[i];
      if (auto it = ph.attract.find(u); it != ph.attract.end()) return it->second;
      if (ph.child < 0) return -1;
      return move_in(ph.child, mu - ph.offset, u);
    }
    case Part::Kind::Bad: {
      auto it = p.layer.find(u);
      if (it == p.layer.end()) {
        auto m = p.moves.find(u);
        return m == p.moves.end() ? -1 : m->second;
      }
      auto [child, cm] = p.layers[it->second];
      return move_in(child, mu % cm, u);
    }
  }
  return -1;
}

class MullerSolverImpl {
 public:
  MullerSolverImpl(const Arena& a, const ZielonkaTree& t, Player me, MullerStrategy& s)
      : a_(a), t_(t), me_(me), opp_(opponent(me)), s_(s) {}

  struct Result {
    NodeMask win;
    int part = -1;
  };

  Result solve(const NodeMask& sub, int tn) {
    const ZielonkaNode& z = t_.node(tn);
    const std::size_t n = a_.size();
    if (z.children.empty()) {
      if (!z.good) return {NodeMask(n, 0), -1};
      MullerStrategy::Part leaf;
      for (std::size_t u = 0; u < n; ++u)
        if (sub[u] && a_.owner[u] == me_) leaf.moves[static_cast<int>(u)] = inside_succ(sub, static_cast<int>(u));
      return {sub, add(std::move(leaf))};
    }
    return z.good ? solve_good(sub, z) : solve_bad(sub, z);
  }

 private:
  int inside_succ(const NodeMask& g, int u) const {
    for (int v : a_.succ[u])
      if (g[v]) return v;
    return -1;
  }

  int add(MullerStrategy::Part p) {
    s_.parts_.push_back(std::move(p));
    return static_cast<int>(s_.parts_.size()) - 1;
  }

  NodeMask outside_of(const NodeMask& g, LiteralSet l) const {
    NodeMask t(a_.size(), 0);
    for (std::size_t u = 0; u < a_.size(); ++u)
      if (g[u] && !s_.colors_[u].subset_of(l)) t[u] = 1;
    return t;
  }

  Result solve_good(NodeMask g, const ZielonkaNode& z) {
    const std::size_t n = a_.size();
    for (;;) {
      if (mask_count(g) == 0) return {g, -1};
      std::vector<MullerStrategy::Phase> phases;
      bool restart = false;
      for (int c : z.children) {
        const LiteralSet lc = t_.node(c).label;
        NodeMask target = outside_of(g, lc);
        std::vector<int> mv(n, -1);
        NodeMask attr = attractor(a_, g, target, me_, &mv);
        NodeMask h(n, 0);
        bool any = false;
        for (std::size_t u = 0; u < n; ++u)
          if (g[u] && !attr[u]) h[u] = 1, any = true;
        MullerStrategy::Phase ph;
        ph.label = lc;
        for (std::size_t u = 0; u < n; ++u) {
          if (!attr[u]) continue;
          int m = -1;
          if (a_.owner[u] == me_) m = target[u] ? inside_succ(g, static_cast<int>(u)) : mv[u];
          ph.attract[static_cast<int>(u)] = m;
        }
        if (any) {
          Result r = solve(h, c);
          NodeMask lost(n, 0);
          bool some = false;
          for (std::size_t u = 0; u < n; ++u)
            if (h[u] && !r.win[u]) lost[u] = 1, some = true;
          if (some) {
            NodeMask gone = attractor(a_, g, lost, opp_);
            for (std::size_t u = 0; u < n; ++u)
              if (gone[u]) g[u] = 0;
            restart = true;
            break;
          }
          ph.child = r.part;
          ph.mem = r.part >= 0 ? s_.parts_[r.part].mem : 1;
        }
        phases.push_back(std::move(ph));
      }
      if (restart) continue;
      MullerStrategy::Part part;
      part.kind = MullerStrategy::Part::Kind::Good;
      int off = 0;
      for (auto& ph : phases) {
        ph.offset = off;
        off += ph.mem;
      }
      part.mem = off;
      part.phases = std::move(phases);
      return {g, add(std::move(part))};
    }
  }

  Result solve_bad(NodeMask g, const ZielonkaNode& z) {
    const std::size_t n = a_.size();
    NodeMask won(n, 0);
    MullerStrategy::Part part;
    part.kind = MullerStrategy::Part::Kind::Bad;
    int mem = 1;
    for (;;) {
      bool found = false;
      for (int c : z.children) {
        if (mask_count(g) == 0) break;
        NodeMask target = outside_of(g, t_.node(c).label);
        NodeMask blocked = attractor(a_, g, target, opp_);
        NodeMask h(n, 0);
        bool any = false;
        for (std::size_t u = 0; u < n; ++u)
          if (g[u] && !blocked[u]) h[u] = 1, any = true;
        if (!any) continue;
        Result r = solve(h, c);
        if (mask_count(r.win) == 0) continue;
        std::vector<int> mv(n, -1);
        NodeMask attr = attractor(a_, g, r.win, me_, &mv);
        const int cm = r.part >= 0 ? s_.parts_[r.part].mem : 1;
        const int li = static_cast<int>(part.layers.size());
        part.layers.emplace_back(r.part, cm);
        mem = std::max(mem, cm);
        for (std::size_t u = 0; u < n; ++u) {
          if (!attr[u]) continue;
          if (r.win[u])
            part.layer[static_cast<int>(u)] = li;
          else
            part.moves[static_cast<int>(u)] = a_.owner[u] == me_ ? mv[u] : -1;
          won[u] = 1;
          g[u] = 0;
        }
        found = true;
        break;
      }
      if (!found) break;
    }
    part.mem = mem;
    if (mask_count(won) == 0) return {won, -1};
    return {won, add(std::move(part))};
  }

  const Arena& a_;
  const ZielonkaTree& t_;
  Player me_, opp_;
  MullerStrategy& s_;
};

MullerSolution solve_muller(const Arena& a, const MullerCondition& f, Player player, const NodeMask& sub) {
  ZielonkaTree t = ZielonkaTree::build(f);
  MullerSolution sol;
  sol.tree_memory = t.memory();
  sol.strategy.colors_.resize(a.size());
  for (std::size_t u = 0; u < a.size(); ++u) sol.strategy.colors_[u] = f.literals(a.label[u]);
  NodeMask g = sub.empty() ? NodeMask(a.size(), 1) : sub;
  MullerSolverImpl impl(a, t, player, sol.strategy);
  auto r = impl.solve(g, t.root());
  sol.win = std::move(r.win);
  sol.strategy.root_ = r.part;
  return sol;
}

}  // namespace tga
