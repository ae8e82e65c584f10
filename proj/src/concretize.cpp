#include "tga/concretize.hpp"

namespace tga {

namespace {

bool all_beyond(const RegionSpace& sp, std::span<const Time> v) {
  for (std::size_t x = 0; x < sp.clocks(); ++x)
    if (static_cast<int>(x) != sp.wrap && v[x] <= Time(sp.cmax[x])) return false;
  return true;
}

// Open interval (lo, hi) of delays, hi absent when unbounded.
Time mid(const Time& lo, const std::optional<Time>& hi) { return hi ? (lo + *hi) / 2 : lo + Time(3, 2); }

}  // namespace

Time choose_delay(const RegionSpace& sp, LocId loc, std::span<const Time> v, const Region& target, bool wrapped,
                  Policy policy) {
  const bool has_bounded = [&] {
    for (std::size_t x = 0; x < sp.clocks(); ++x)
      if (static_cast<int>(x) != sp.wrap) return true;
    return false;
  }();
  if (policy == Policy::PushHalf && sp.wrap < 0 && has_bounded && all_beyond(sp, v)) {
    const Time d(3, 2);
    if (region_of(sp, loc, advance(sp, v, d)) == target) return d;
  }
  // Delay 0 and the open stretch after it share a region when no clock is
  // integral; except under eager the open stretch wins so time can pass.
  std::optional<DelayPiece> point;
  for (const DelayPiece& p : delay_pieces(sp, v)) {
    bool w = false;
    const Time probe = p.midpoint();
    if (region_of(sp, loc, advance(sp, v, probe, &w)) != target || w != wrapped) continue;
    if (p.point) {
      if (policy == Policy::Eager) return p.lo;
      if (!point) point = p;
      continue;
    }
    const std::optional<Time> hi = p.unbounded ? std::nullopt : std::optional<Time>(p.hi);
    switch (policy) {
      case Policy::Midpoint:
        return mid(p.lo, hi);
      case Policy::Eager:
        return hi ? p.lo + (*hi - p.lo) / 8 : p.lo + Time(1, 8);
      case Policy::PushHalf:
        for (std::size_t y = 0; y < sp.clocks(); ++y) {
          if (static_cast<int>(y) == sp.wrap || v[y] > Time(sp.cmax[y])) continue;
          // Inside one piece y's integer part is fixed, so y's fraction grows
          // from f0 with the delay; ask for it to pass 1/2.
          const Time f0 = frac_of(v[y] + p.lo);
          const Time need = p.lo + Time(1, 2) - f0;
          Time lo = need > p.lo ? need : p.lo;
          if (hi && lo >= *hi) continue;
          return mid(lo, hi);
        }
        return mid(p.lo, hi);
    }
  }
  if (point) return point->lo;
  throw ConcretizationError("prescribed region is not reachable by letting time pass");
}

Move concretize(const RegionSpace& sp, LocId loc, std::span<const Time> v, const Prescription& p, Policy policy) {
  return Move{choose_delay(sp, loc, v, p.target, p.wrapped, policy), Player::One, p.action};
}

}  // namespace tga
