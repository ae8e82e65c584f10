#include "tga/concrete.hpp"

#include <algorithm>
#include <set>

namespace tga {

bool DelayPiece::contains(const Time& d) const {
  if (point) return d == lo;
  if (unbounded) return d > lo;
  return d > lo && d < hi;
}

Time DelayPiece::midpoint() const {
  if (point) return lo;
  if (unbounded) return lo + Time(3, 2);
  return (lo + hi) / 2;
}

std::vector<DelayPiece> delay_pieces(const RegionSpace& sp, std::span<const Time> v) {
  // Crossing times: a bounded clock reaching an integer up to its constant, or the
  // wrap clock reaching any integer within a horizon long enough to see every
  // region of the chain at least once after all other clocks are above constants.
  std::uint32_t horizon = 2;
  for (auto c : sp.cmax) horizon = std::max(horizon, c + 3);
  std::set<Time> cuts;
  cuts.insert(Time(0));
  for (std::size_t x = 0; x < sp.clocks(); ++x) {
    const bool wrapc = static_cast<int>(x) == sp.wrap;
    const Time c(wrapc ? horizon : sp.cmax[x]);
    if (!wrapc && v[x] > c) continue;
    BigInt k = floor_of(v[x]);
    if (Time(k) < v[x]) k += 1;
    for (; Time(k) <= c; k += 1) cuts.insert(Time(k) - v[x]);
  }
  std::vector<Time> pts(cuts.begin(), cuts.end());
  std::vector<DelayPiece> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.push_back(DelayPiece{pts[i], pts[i], true, false});
    if (i + 1 < pts.size())
      out.push_back(DelayPiece{pts[i], pts[i + 1], false, false});
    else
      out.push_back(DelayPiece{pts[i], pts[i], false, true});
  }
  return out;
}

ClockValuation advance(const RegionSpace& sp, std::span<const Time> v, const Time& d, bool* wrapped) {
  ClockValuation w(v.begin(), v.end());
  bool crossed = false;
  for (std::size_t x = 0; x < w.size(); ++x) {
    w[x] += d;
    if (static_cast<int>(x) == sp.wrap && w[x] >= 1) {
      crossed = true;
      w[x] = frac_of(w[x]);
    }
  }
  if (wrapped) *wrapped = crossed;
  return w;
}

bool invariant_throughout(const TimedGameModel& m, const RegionSpace& sp, const ConcreteState& s, const Time& d) {
  const Constraint& inv = m.location(s.loc).invariant;
  if (inv.kind() == Constraint::Kind::True) return d >= 0;
  auto ok_at = [&](const Time& t) { return inv.eval(std::span<const Time>(advance(sp, s.clocks, t)).first(m.clock_count())); };
  if (!ok_at(Time(0)) || !ok_at(d)) return false;
  for (auto& p : delay_pieces(sp, s.clocks)) {
    if (p.lo > d) break;
    if (!ok_at(p.lo)) return false;
    if (!p.point && !p.unbounded && p.hi <= d && !ok_at((p.lo + p.hi) / 2)) return false;
    if (!p.point && (p.unbounded || p.hi > d) && d > p.lo && !ok_at((p.lo + d) / 2)) return false;
  }
  return true;
}

std::optional<std::size_t> enabled_edge(const TimedGameModel& m, const RegionSpace& sp, const ConcreteState& s,
                                        ActionId a, const Time& d) {
  ClockValuation w = advance(sp, s.clocks, d);
  std::span<const Time> mc = std::span<const Time>(w).first(m.clock_count());
  for (std::size_t i = 0; i < m.edges.size(); ++i) {
    const Edge& e = m.edges[i];
    if (e.source != s.loc || e.action != a) continue;
    if (!e.guard.eval(mc)) continue;
    ClockValuation after = apply_reset(w, e.reset);
    if (!m.location(e.target).invariant.eval(std::span<const Time>(after).first(m.clock_count()))) continue;
    return i;
  }
  return std::nullopt;
}

bool available(const TimedGameModel& m, const RegionSpace& sp, const ConcreteState& s, const Move& mv,
               std::string* why) {
  auto fail = [&](std::string r) {
    if (why) *why = std::move(r);
    return false;
  };
  if (mv.delay < 0) return fail("negative delay");
  if (!invariant_throughout(m, sp, s, mv.delay))
    return fail("invariant of " + m.location(s.loc).name + " breached during delay " + to_pq(mv.delay));
  if (mv.action) {
    if (m.action(*mv.action).owner != mv.player) return fail("action " + m.action(*mv.action).name + " belongs to the other player");
    if (!enabled_edge(m, sp, s, *mv.action, mv.delay))
      return fail("no edge for " + m.action(*mv.action).name + " is enabled after delay " + to_pq(mv.delay));
  }
  return true;
}

ConcreteState apply_move(const TimedGameModel& m, const RegionSpace& sp, const ConcreteState& s, const Move& mv) {
  ConcreteState t{s.loc, advance(sp, s.clocks, mv.delay)};
  if (mv.action) {
    auto e = enabled_edge(m, sp, s, *mv.action, mv.delay);
    if (!e) return t;
    t.loc = m.edges[*e].target;
    t.clocks = apply_reset(t.clocks, m.edges[*e].reset);
  }
  return t;
}

bool has_move_into(const TimedGameModel& m, LocId loc, std::span<const Time> v, Player p, const Region& to) {
  const RegionSpace sp = RegionSpace::of(m);
  ConcreteState s{loc, ClockValuation(v.begin(), v.end())};
  auto acts = m.actions_of(p);
  for (const Time& d : representative_delays(sp, v)) {
    if (!invariant_throughout(m, sp, s, d)) continue;
    Move stut{d, p, std::nullopt};
    if (region_of(sp, loc, apply_move(m, sp, s, stut).clocks) == to && loc == to.loc) return true;
    for (ActionId a : acts) {
      Move mv{d, p, a};
      if (!available(m, sp, s, mv)) continue;
      ConcreteState t = apply_move(m, sp, s, mv);
      if (t.loc == to.loc && region_of(sp, t.loc, t.clocks) == to) return true;
    }
  }
  return false;
}

std::vector<Time> representative_delays(const RegionSpace& sp, std::span<const Time> v) {
  std::vector<Time> out;
  for (auto& p : delay_pieces(sp, v)) {
    if (p.point) {
      out.push_back(p.lo);
    } else {
      Time mid = p.midpoint();
      out.push_back((p.lo + mid) / 2);
      out.push_back(mid);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace tga
