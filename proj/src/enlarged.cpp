#include "tga/enlarged.hpp"

namespace tga {

PredicateState update_predicates(const TimedGameModel& m, std::span<const Time> kappa, const Time& delay, int winner,
                                 bool tie, bool same_successor_on_tie) {
  PredicateState p;
  const auto c = m.max_constants();
  for (std::size_t x = 0; x < m.clock_count(); ++x) {
    const Time after = kappa[x] + delay;
    const std::uint8_t bit = static_cast<std::uint8_t>(1u << x);
    if (after > 0) p.vpos |= bit;
    if (after >= 1) p.vge1 |= bit;
    if (kappa[x] > c[x] && after > c[x]) p.vstar |= bit;
  }
  p.bl1 = winner == 1 || (tie && same_successor_on_tie);
  return p;
}

PredicateState region_predicates(std::size_t model_clocks, const Region& source, const Region& target, int winner,
                                 bool tie, bool same_successor_on_tie) {
  PredicateState p;
  for (std::size_t x = 0; x < model_clocks; ++x) {
    const std::uint8_t bit = static_cast<std::uint8_t>(1u << x);
    if (!target.is_zero(x)) p.vpos |= bit;
    if (target.beyond(x) || target.h[x] >= 1) p.vge1 |= bit;
    if (source.beyond(x) && target.beyond(x)) p.vstar |= bit;
  }
  p.bl1 = winner == 1 || (tie && same_successor_on_tie);
  return p;
}

std::optional<Region> fire(const TimedGameModel& m, const Region& at, std::optional<ActionId> action) {
  if (!action) return at;
  for (std::size_t i : m.edges_from(at.loc)) {
    const Edge& e = m.edges[i];
    if (e.action != *action) continue;
    if (auto r = discrete_successor(m, at, e)) return r;
  }
  return std::nullopt;
}

EnlargedRegion lift_region_update(const TimedGameModel& m, const RegionSpace& sp, const EnlargedRegion& source,
                                  const Region& delay_target, std::optional<ActionId> action, int winner, bool tie,
                                  bool same_successor_on_tie) {
  const auto chain = time_chain(sp, source.base);
  const ChainEntry* hit = nullptr;
  for (auto& e : chain)
    if (e.region == delay_target) {
      hit = &e;
      break;
    }
  if (!hit) throw AbstractionError("delay target is not a time successor of the source region");
  auto next = fire(m, delay_target, action);
  if (!next) throw AbstractionError("action is not enabled at the delay target");
  EnlargedRegion out;
  out.base = *next;
  out.pred = region_predicates(m.clock_count(), source.base, delay_target, winner, tie, same_successor_on_tie);
  out.tick = hit->wrapped;
  return out;
}

TickStep tick_update(const Time& z, const Time& delay) {
  const Time after = z + delay;
  return {frac_of(after), after >= 1};
}

}  // namespace tga
