#include "tga/region.hpp"

#include "tga/concrete.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace tga {

RegionSpace RegionSpace::of(const TimedGameModel& m) { return RegionSpace{m.max_constants(), -1}; }

RegionSpace RegionSpace::with_wrap_clock(const TimedGameModel& m) {
  RegionSpace sp = of(m);
  if (sp.cmax.size() >= kMaxClocks) throw std::length_error("no room for the wrap clock");
  sp.cmax.push_back(1);
  sp.wrap = static_cast<int>(sp.cmax.size()) - 1;
  return sp;
}

Region normalize(Region r) {
  std::array<int, kMaxClocks + 1> remap{};
  std::array<bool, kMaxClocks + 1> used{};
  for (std::size_t x = 0; x < r.n; ++x)
    if (r.cls[x] > 0) used[r.cls[x]] = true;
  int next = 0;
  for (std::size_t k = 1; k <= kMaxClocks; ++k)
    if (used[k]) remap[k] = ++next;
  for (std::size_t x = 0; x < r.n; ++x)
    if (r.cls[x] > 0) r.cls[x] = static_cast<std::int8_t>(remap[r.cls[x]]);
  r.blocks = static_cast<std::uint8_t>(next);
  for (std::size_t x = r.n; x < kMaxClocks; ++x) {
    r.h[x] = 0;
    r.cls[x] = 0;
  }
  return r;
}

Region region_of(const RegionSpace& sp, LocId loc, std::span<const Time> v) {
  if (v.size() != sp.clocks()) throw std::invalid_argument("valuation size does not match clock count");
  Region r;
  r.loc = loc;
  r.n = static_cast<std::uint8_t>(sp.clocks());
  std::vector<std::pair<Time, std::size_t>> fr;
  for (std::size_t x = 0; x < sp.clocks(); ++x) {
    if (v[x] < 0) throw std::invalid_argument("negative clock value");
    const Time c(sp.cmax[x]);
    if (static_cast<int>(x) != sp.wrap && v[x] > c) {
      r.h[x] = static_cast<std::uint16_t>(sp.cmax[x]);
      r.cls[x] = -1;
      continue;
    }
    BigInt fl = floor_of(v[x]);
    r.h[x] = static_cast<std::uint16_t>(fl.convert_to<unsigned>());
    Time f = v[x] - Time(fl);
    if (f == 0) {
      r.cls[x] = 0;
    } else {
      fr.emplace_back(f, x);
    }
  }
  std::sort(fr.begin(), fr.end());
  int block = 0;
  for (std::size_t i = 0; i < fr.size(); ++i) {
    if (i == 0 || fr[i].first != fr[i - 1].first) ++block;
    r.cls[fr[i].second] = static_cast<std::int8_t>(block);
  }
  r.blocks = static_cast<std::uint8_t>(block);
  return r;
}

Region region_of(const TimedGameModel& m, LocId loc, std::span<const Time> v) {
  if (!m.location(loc).invariant.eval(v))
    throw std::domain_error("valuation violates the invariant of " + m.location(loc).name);
  return region_of(RegionSpace::of(m), loc, v);
}

ClockValuation sample(const RegionSpace& sp, const Region& r) {
  ClockValuation v(sp.clocks());
  const int den = r.blocks + 1;
  for (std::size_t x = 0; x < sp.clocks(); ++x) {
    if (r.cls[x] < 0)
      v[x] = Time(sp.cmax[x] + 1);
    else
      v[x] = Time(r.h[x]) + Time(r.cls[x], den);
  }
  return v;
}

ClockValuation random_point(const RegionSpace& sp, const Region& r, std::mt19937_64& rng) {
  // Strictly increasing fractions for blocks 1..n, drawn from a fine grid.
  std::uniform_int_distribution<int> pick(1, 997);
  std::vector<int> cuts;
  while (static_cast<int>(cuts.size()) < r.blocks) {
    int c = pick(rng);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  ClockValuation v(sp.clocks());
  std::uniform_int_distribution<int> extra(1, 1000);
  for (std::size_t x = 0; x < sp.clocks(); ++x) {
    if (r.cls[x] < 0)
      v[x] = Time(sp.cmax[x]) + Time(extra(rng), 400);
    else if (r.cls[x] == 0)
      v[x] = Time(r.h[x]);
    else
      v[x] = Time(r.h[x]) + Time(cuts[r.cls[x] - 1], 998);
  }
  return v;
}

bool is_maximal(const RegionSpace& sp, const Region& r) {
  for (std::size_t x = 0; x < sp.clocks(); ++x)
    if (static_cast<int>(x) != sp.wrap && r.cls[x] >= 0) return false;
  return sp.wrap < 0;
}

TimeStep time_successor(const RegionSpace& sp, const Region& r) {
  if (is_maximal(sp, r)) return {r, false};
  Region s = r;
  bool any_integral = false;
  for (std::size_t x = 0; x < r.n; ++x)
    if (r.cls[x] == 0) any_integral = true;
  if (any_integral) {
    for (std::size_t x = 0; x < r.n; ++x) {
      if (s.cls[x] > 0) ++s.cls[x];
    }
    for (std::size_t x = 0; x < r.n; ++x) {
      if (r.cls[x] != 0) continue;
      const bool wrapc = static_cast<int>(x) == sp.wrap;
      if (!wrapc && r.h[x] == sp.cmax[x])
        s.cls[x] = -1;
      else
        s.cls[x] = 1;
    }
    return {normalize(s), false};
  }
  bool wrapped = false;
  for (std::size_t x = 0; x < r.n; ++x) {
    if (r.cls[x] != r.blocks || r.blocks == 0) continue;
    s.cls[x] = 0;
    s.h[x] = static_cast<std::uint16_t>(r.h[x] + 1);
    if (static_cast<int>(x) == sp.wrap) {
      s.h[x] = 0;
      wrapped = true;
    }
  }
  return {normalize(s), wrapped};
}

std::vector<ChainEntry> time_chain(const RegionSpace& sp, const Region& r) {
  std::vector<ChainEntry> out;
  std::set<ChainEntry> seen;
  ChainEntry cur{r, false};
  while (seen.insert(cur).second) {
    out.push_back(cur);
    TimeStep st = time_successor(sp, cur.region);
    cur = ChainEntry{st.region, cur.wrapped || st.wrapped};
  }
  return out;
}

std::vector<ChainEntry> admissible_chain(const TimedGameModel& m, const RegionSpace& sp, const Region& r) {
  std::vector<ChainEntry> out;
  const Constraint& inv = m.location(r.loc).invariant;
  for (auto& e : time_chain(sp, r)) {
    if (!holds(inv, e.region)) break;
    out.push_back(e);
  }
  return out;
}

bool holds(const Constraint& c, const Region& r) {
  return c.eval_view([&](ClockId x) {
    return Constraint::ClockView{r.h[x.v], r.cls[x.v] > 0, r.cls[x.v] < 0};
  });
}

Region apply_reset(const Region& r, const std::vector<ClockId>& reset) {
  Region s = r;
  for (ClockId x : reset) {
    s.cls[x.v] = 0;
    s.h[x.v] = 0;
  }
  return normalize(s);
}

std::optional<Region> discrete_successor(const TimedGameModel& m, const Region& r, const Edge& e) {
  if (e.source != r.loc || !holds(e.guard, r)) return std::nullopt;
  Region s = apply_reset(r, e.reset);
  s.loc = e.target;
  if (!holds(m.location(e.target).invariant, s)) return std::nullopt;
  return s;
}

namespace {

void enumerate_classes(const RegionSpace& sp, Region& r, std::size_t x, std::vector<Region>& out) {
  if (x == sp.clocks()) {
    // Blocks 1..n must all be occupied.
    int maxb = 0;
    std::array<bool, kMaxClocks + 1> used{};
    for (std::size_t y = 0; y < sp.clocks(); ++y)
      if (r.cls[y] > 0) {
        used[r.cls[y]] = true;
        maxb = std::max<int>(maxb, r.cls[y]);
      }
    for (int k = 1; k <= maxb; ++k)
      if (!used[k]) return;
    Region s = r;
    s.blocks = static_cast<std::uint8_t>(maxb);
    out.push_back(s);
    return;
  }
  const bool wrapc = static_cast<int>(x) == sp.wrap;
  const std::uint32_t top = wrapc ? 0 : sp.cmax[x];
  if (!wrapc) {
    r.h[x] = static_cast<std::uint16_t>(sp.cmax[x]);
    r.cls[x] = -1;
    enumerate_classes(sp, r, x + 1, out);
  }
  for (std::uint32_t h = 0; h <= top; ++h) {
    r.h[x] = static_cast<std::uint16_t>(h);
    r.cls[x] = 0;
    enumerate_classes(sp, r, x + 1, out);
    if (h < top || wrapc) {
      for (std::size_t k = 1; k <= sp.clocks(); ++k) {
        r.cls[x] = static_cast<std::int8_t>(k);
        enumerate_classes(sp, r, x + 1, out);
      }
    }
  }
  r.h[x] = 0;
  r.cls[x] = 0;
}

}  // namespace

std::vector<Region> all_regions(const RegionSpace& sp, LocId loc) {
  std::vector<Region> out;
  Region r;
  r.loc = loc;
  r.n = static_cast<std::uint8_t>(sp.clocks());
  enumerate_classes(sp, r, 0, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Region> enumerate_regions(const TimedGameModel& m, const RegionSpace& sp) {
  std::vector<Region> out;
  for (std::uint32_t l = 0; l < m.location_count(); ++l)
    for (auto& r : all_regions(sp, LocId{l}))
      if (holds(m.locations[l].invariant, r)) out.push_back(r);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Region> enumerate_regions(const TimedGameModel& m) { return enumerate_regions(m, RegionSpace::of(m)); }

BigInt region_count_bound(const TimedGameModel& m) {
  BigInt b = static_cast<unsigned>(m.location_count());
  auto c = m.max_constants();
  for (auto cx : c) b *= (cx + 1);
  for (std::size_t k = 2; k <= c.size(); ++k) b *= static_cast<unsigned>(k);
  for (std::size_t k = 0; k < 2 * c.size(); ++k) b *= 2;
  return b;
}

std::string to_string(const Region& r, const TimedGameModel& m) {
  auto cname = [&](std::size_t x) { return x < m.clocks.size() ? m.clocks[x] : std::string("z"); };
  std::string s = "⟨" + m.location(r.loc).name + " ; ";
  for (std::size_t x = 0; x < r.n; ++x) {
    if (x) s += ",";
    s += cname(x) + ":" + std::to_string(r.h[x]);
  }
  s += " ; ";
  auto block = [&](int k) {
    std::string b = "{";
    bool first = true;
    for (std::size_t x = 0; x < r.n; ++x)
      if (r.cls[x] == k) {
        if (!first) b += ",";
        b += cname(x);
        first = false;
      }
    return b + "}";
  };
  s += block(-1);
  for (int k = 0; k <= r.blocks; ++k) s += "|" + block(k);
  return s + "⟩";
}

bool bisimulation_check(const TimedGameModel& m, const Region& from, const Region& to, Player p, int k,
                        std::uint64_t seed) {
  const RegionSpace sp = RegionSpace::of(m);
  std::mt19937_64 rng(seed);
  int with = 0;
  for (int i = 0; i < k; ++i) {
    ClockValuation v = i == 0 ? sample(sp, from) : random_point(sp, from, rng);
    if (has_move_into(m, from.loc, v, p, to)) ++with;
  }
  return with == 0 || with == k;
}

}  // namespace tga
