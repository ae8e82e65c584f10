#include "tga/finite_game.hpp"

#include <algorithm>
#include <deque>

namespace tga {

std::optional<int> FiniteGame::find(const EnlargedRegion& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EnlargedRegion FiniteGame::initial_for(const Region& r) const {
  EnlargedRegion e;
  e.base = r;
  if (enc_ == Encoding::Tick) {
    const std::size_t z = static_cast<std::size_t>(sp_.wrap);
    e.base.n = static_cast<std::uint8_t>(z + 1);
    e.base.h[z] = 0;
    e.base.cls[z] = 0;
  }
  return e;
}

Region FiniteGame::project(const Region& r) const {
  if (enc_ != Encoding::Tick) return r;
  Region p = r;
  p.n = static_cast<std::uint8_t>(sp_.wrap);
  return normalize(p);
}

namespace {

BaseInfo make_base(const TimedGameModel& m, const RegionSpace& sp, const Region& r) {
  BaseInfo b;
  b.region = r;
  b.chain = admissible_chain(m, sp, r);
  const auto a1 = m.actions_of(Player::One);
  const auto a2 = m.actions_of(Player::Two);
  for (std::size_t k = 0; k < b.chain.size(); ++k) {
    const Region& at = b.chain[k].region;
    const auto kk = static_cast<std::uint16_t>(k);
    b.m1.push_back({kk, std::nullopt});
    b.succ1.push_back(at);
    for (ActionId a : a1)
      if (auto s = fire(m, at, a)) {
        b.m1.push_back({kk, a});
        b.succ1.push_back(*s);
      }
    for (std::uint8_t i : {1, 2}) {
      b.m2.push_back({kk, std::nullopt, i});
      b.succ2.push_back(at);
      for (ActionId a : a2)
        if (auto s = fire(m, at, a)) {
          b.m2.push_back({kk, a, i});
          b.succ2.push_back(*s);
        }
    }
  }
  return b;
}

EnlargedRegion outcome(const FiniteGame& g, const Region& source, const BaseInfo& b, std::size_t k1, std::size_t k2,
                       std::uint8_t i, const Region& s1, const Region& s2) {
  const bool tie = k1 == k2;
  const bool p1 = k1 < k2 || (tie && i == 1);
  const ChainEntry& target = b.chain[p1 ? k1 : k2];
  EnlargedRegion e;
  e.base = p1 ? s1 : s2;
  e.pred = region_predicates(g.model().clock_count(), source, target.region, p1 ? 1 : 2, tie, tie && s1 == s2);
  if (g.encoding() == Encoding::Tick) {
    e.pred.vpos = e.pred.vge1 = e.pred.vstar = 0;
    e.tick = target.wrapped;
  }
  return e;
}

}  // namespace

EnlargedRegion FiniteGame::delta(int s, const P1Move& a, const P2Move& b) const {
  const BaseInfo& bi = base(s);
  auto s1 = fire(*model_, bi.chain.at(a.k).region, a.action);
  auto s2 = fire(*model_, bi.chain.at(b.k).region, b.action);
  if (!s1 || !s2) throw AbstractionError("move not available");
  return outcome(*this, states_[s].base, bi, a.k, b.k, b.i, *s1, *s2);
}

FiniteGame build_finite_game(const TimedGameModel& m, Encoding enc, const FiniteGameOptions& opt) {
  FiniteGame g;
  g.model_ = &m;
  g.enc_ = enc;
  g.sp_ = enc == Encoding::Tick ? RegionSpace::with_wrap_clock(m) : RegionSpace::of(m);
  std::deque<int> work;
  auto intern = [&](const EnlargedRegion& e) {
    auto [it, fresh] = g.index_.try_emplace(e, static_cast<int>(g.states_.size()));
    if (fresh) {
      g.states_.push_back(e);
      auto [bt, bfresh] = g.base_index_.try_emplace(e.base, static_cast<int>(g.bases_.size()));
      if (bfresh) g.bases_.push_back(make_base(m, g.sp_, e.base));
      g.base_of_.push_back(bt->second);
      work.push_back(it->second);
    }
    return it->second;
  };
  const std::size_t n = m.clock_count();
  for (const Region& r : enumerate_regions(m)) {
    EnlargedRegion e = g.initial_for(r);
    if (!opt.all_predicates || enc == Encoding::Tick) {
      intern(e);
      continue;
    }
    const std::uint32_t masks = 1u << n;
    for (int bl = 0; bl < 2; ++bl)
      for (std::uint32_t vp = 0; vp < masks; ++vp)
        for (std::uint32_t v1 = 0; v1 < masks; ++v1)
          for (std::uint32_t vs = 0; vs < masks; ++vs) {
            if (v1 & ~vp) continue;
            e.pred = {bl == 1, static_cast<std::uint8_t>(vp), static_cast<std::uint8_t>(v1),
                      static_cast<std::uint8_t>(vs)};
            intern(e);
          }
  }
  while (!work.empty()) {
    const int s = work.front();
    work.pop_front();
    // Copy: interning may grow bases_.
    const BaseInfo b = g.bases_[g.base_of_[s]];
    const Region src = g.states_[s].base;
    std::vector<int> row;
    row.reserve(b.m1.size() * b.m2.size());
    for (std::size_t i1 = 0; i1 < b.m1.size(); ++i1)
      for (std::size_t i2 = 0; i2 < b.m2.size(); ++i2)
        row.push_back(intern(outcome(g, src, b, b.m1[i1].k, b.m2[i2].k, b.m2[i2].i, b.succ1[i1], b.succ2[i2])));
    if (g.succ_.size() <= static_cast<std::size_t>(s)) g.succ_.resize(s + 1);
    g.succ_[s] = std::move(row);
  }
  g.succ_.resize(g.states_.size());
  return g;
}

StateSet cpre1(const FiniteGame& g, const StateSet& z) {
  StateSet out(g.size(), 0);
  for (std::size_t s = 0; s < g.size(); ++s) {
    const int si = static_cast<int>(s);
    const std::size_t n1 = g.moves1(si).size(), n2 = g.moves2(si).size();
    for (std::size_t i1 = 0; i1 < n1 && !out[s]; ++i1) {
      bool all = true;
      for (std::size_t i2 = 0; i2 < n2 && all; ++i2) all = z[g.succ(si, i1, i2)] != 0;
      if (all) out[s] = 1;
    }
  }
  return out;
}

namespace {

bool in_safe(const std::vector<LocId>& safe, LocId l) { return std::binary_search(safe.begin(), safe.end(), l); }

}  // namespace

StateSet safety_fixpoint(const FiniteGame& g, const std::vector<LocId>& safe) {
  StateSet z(g.size(), 0);
  for (std::size_t s = 0; s < g.size(); ++s) z[s] = in_safe(safe, g.state(static_cast<int>(s)).base.loc);
  for (;;) {
    StateSet c = cpre1(g, z);
    bool changed = false;
    for (std::size_t s = 0; s < g.size(); ++s)
      if (z[s] && !c[s]) z[s] = 0, changed = true;
    if (!changed) return z;
  }
}

Label state_label(const FiniteGame& g, int s, const std::vector<LocId>& safe) {
  using P = PropLayout;
  const EnlargedRegion& e = g.state(s);
  Label l = 0;
  auto set = [&](int bit, bool v) {
    if (v) l |= Label{1} << bit;
  };
  set(P::kBl1, e.pred.bl1);
  set(P::kTick, e.tick);
  set(P::kSafe, in_safe(safe, e.base.loc));
  for (std::size_t x = 0; x < g.model().clock_count(); ++x) {
    set(P::zero(x), e.base.is_zero(x));
    set(P::vpos(x), e.pred.vpos >> x & 1u);
    set(P::vge1(x), e.pred.vge1 >> x & 1u);
    set(P::vstar(x), e.pred.vstar >> x & 1u);
    set(P::big(x), e.base.beyond(x));
  }
  return l;
}

TurnArena to_turn_arena(const FiniteGame& g, const std::vector<LocId>& safe) {
  TurnArena t;
  t.states = g.size();
  for (std::size_t s = 0; s < g.size(); ++s) t.arena.add_node(Player::One, state_label(g, static_cast<int>(s), safe));
  t.p2_node.resize(g.size());
  for (std::size_t s = 0; s < g.size(); ++s) {
    const int si = static_cast<int>(s);
    for (std::size_t i1 = 0; i1 < g.moves1(si).size(); ++i1) {
      const int u = t.arena.add_node(Player::Two, t.arena.label[s]);
      t.pending.emplace_back(si, static_cast<int>(i1));
      t.p2_node[s].push_back(u);
      t.arena.add_edge(si, u);
      for (std::size_t i2 = 0; i2 < g.moves2(si).size(); ++i2) t.arena.add_edge(u, g.succ(si, i1, i2));
    }
  }
  t.arena.finalize();
  return t;
}

NodeMask safe_subgame(const TurnArena& t) {
  const Arena& a = t.arena;
  NodeMask all(a.size(), 1), bad(a.size(), 0);
  for (std::size_t u = 0; u < a.size(); ++u)
    if (!(a.label[u] >> PropLayout::kSafe & 1u)) bad[u] = 1;
  NodeMask lost = attractor(a, all, bad, Player::Two);
  NodeMask keep(a.size(), 0);
  for (std::size_t u = 0; u < a.size(); ++u) keep[u] = !lost[u];
  return keep;
}

}  // namespace tga
