#include "tga/model.hpp"

#include "tga/region.hpp"

#include <algorithm>
#include <set>

namespace tga {

std::optional<ClockId> TimedGameModel::find_clock(std::string_view n) const {
  for (std::uint32_t i = 0; i < clocks.size(); ++i)
    if (clocks[i] == n) return ClockId{i};
  return std::nullopt;
}

std::optional<LocId> TimedGameModel::find_location(std::string_view n) const {
  for (std::uint32_t i = 0; i < locations.size(); ++i)
    if (locations[i].name == n) return LocId{i};
  return std::nullopt;
}

std::optional<ActionId> TimedGameModel::find_action(std::string_view n) const {
  for (std::uint32_t i = 0; i < actions.size(); ++i)
    if (actions[i].name == n) return ActionId{i};
  return std::nullopt;
}

std::vector<ActionId> TimedGameModel::actions_of(Player p) const {
  std::vector<ActionId> out;
  for (std::uint32_t i = 0; i < actions.size(); ++i)
    if (actions[i].owner == p) out.push_back(ActionId{i});
  return out;
}

std::vector<std::size_t> TimedGameModel::edges_from(LocId l) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].source == l) out.push_back(i);
  return out;
}

std::optional<LocId> TimedGameModel::initial_location() const {
  for (std::uint32_t i = 0; i < locations.size(); ++i)
    if (locations[i].initial) return LocId{i};
  return std::nullopt;
}

std::vector<std::uint32_t> TimedGameModel::max_constants() const {
  std::vector<std::uint32_t> c(clocks.size(), 0);
  for (auto& l : locations) l.invariant.collect_constants(c);
  for (auto& e : edges) e.guard.collect_constants(c);
  for (auto& v : c) v = std::max<std::uint32_t>(v, 1);
  return c;
}

std::string TimedGameModel::action_label(Player p, std::optional<ActionId> a) const {
  if (!a) return p == Player::One ? "⊥1" : "⊥2";
  return action(*a).name;
}

std::vector<std::uint32_t> max_constants(const TimedGameModel& m) { return m.max_constants(); }

ClockValuation apply_reset(const ClockValuation& v, const std::vector<ClockId>& reset) {
  ClockValuation w = v;
  for (ClockId x : reset)
    if (x.v < w.size()) w[x.v] = 0;
  return w;
}

namespace {

// A positive delay keeps the state inside the invariant.
bool time_open(const TimedGameModel& m, const RegionSpace& sp, const Region& r) {
  bool pinned = false;
  for (std::size_t x = 0; x < sp.clocks(); ++x)
    if (r.cls[x] == 0) pinned = true;
  if (!pinned) return true;
  return holds(m.location(r.loc).invariant, time_successor(sp, r).region);
}

}  // namespace

std::vector<Diagnostic> validate_model(const TimedGameModel& m) {
  std::set<Diagnostic> out;
  auto add = [&](std::string s) { out.insert(Diagnostic{std::move(s)}); };

  std::set<std::string> names;
  for (auto& a : m.actions)
    if (!names.insert(a.name).second) add("action " + a.name + " is declared for both players");

  bool refs_ok = true;
  for (auto& l : m.locations)
    if (!l.invariant.references_only(m.clock_count())) {
      add("invariant of " + l.name + " references an undeclared clock");
      refs_ok = false;
    }
  for (std::size_t i = 0; i < m.edges.size(); ++i) {
    const Edge& e = m.edges[i];
    if (e.source.v >= m.location_count() || e.target.v >= m.location_count() || e.action.v >= m.actions.size()) {
      add("edge " + std::to_string(i) + " references an undeclared location or action");
      refs_ok = false;
      continue;
    }
    bool bad = !e.guard.references_only(m.clock_count());
    for (ClockId x : e.reset) bad = bad || x.v >= m.clock_count();
    if (bad) {
      add("edge " + std::to_string(i) + " from " + m.location(e.source).name + " references an undeclared clock");
      refs_ok = false;
    }
  }
  if (!refs_ok || m.clock_count() > kMaxClocks) {
    if (m.clock_count() > kMaxClocks) add("too many clocks (limit " + std::to_string(kMaxClocks) + ")");
    return {out.begin(), out.end()};
  }
  if (!m.initial_location() && !m.locations.empty()) add("no initial location");

  const RegionSpace sp = RegionSpace::of(m);
  for (const Region& r : enumerate_regions(m, sp)) {
    const Location& loc = m.location(r.loc);
    // Determinism: one target per action at every region.
    for (std::uint32_t a = 0; a < m.actions.size(); ++a) {
      std::optional<LocId> tgt;
      for (std::size_t i : m.edges_from(r.loc)) {
        const Edge& e = m.edges[i];
        if (e.action.v != a || !holds(e.guard, r)) continue;
        if (tgt && *tgt != e.target) add("nondeterministic action " + m.actions[a].name + " at " + loc.name);
        tgt = e.target;
      }
    }
    if (time_open(m, sp, r)) continue;
    for (Player p : {Player::One, Player::Two}) {
      bool escape = false;
      for (std::size_t i : m.edges_from(r.loc)) {
        const Edge& e = m.edges[i];
        if (m.action(e.action).owner == p && discrete_successor(m, r, e)) escape = true;
      }
      if (!escape)
        add("progress requirement violated for player " + std::to_string(index_of(p)) + " at " + loc.name);
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace tga
