#include "tga/simulator.hpp"

#include "tga/concretize.hpp"

#include <json.hpp>

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace tga {

using nlohmann::ordered_json;

StepResult step(const TimedGameModel& m, const RegionSpace& sp, PlayState& ps, const Move& m1, const Move& m2,
                Player tie_owner) {
  std::string why;
  if (m1.player != Player::One || !available(m, sp, ps.state, m1, &why)) throw RuleViolation(Player::One, why);
  if (m2.player != Player::Two || !available(m, sp, ps.state, m2, &why)) throw RuleViolation(Player::Two, why);
  const ConcreteState s1 = apply_move(m, sp, ps.state, m1);
  const ConcreteState s2 = apply_move(m, sp, ps.state, m2);
  StepResult r;
  r.tie = m1.delay == m2.delay;
  r.winner = m1.delay < m2.delay || (r.tie && tie_owner == Player::One) ? 1 : 2;
  r.delay = r.winner == 1 ? m1.delay : m2.delay;
  const ConcreteState& next = r.winner == 1 ? s1 : s2;
  r.bl1 = m1.delay <= m2.delay && s1 == next;
  r.bl2 = m2.delay <= m1.delay && s2 == next;
  const std::span<const Time> kappa = std::span<const Time>(ps.state.clocks).first(m.clock_count());
  ps.pred = update_predicates(m, kappa, r.delay, r.winner, r.tie, s1 == s2);
  const Region source = region_of(sp, ps.state.loc, ps.state.clocks);
  bool w1 = false, w2 = false;
  const Region e1 = region_of(sp, ps.state.loc, advance(sp, ps.state.clocks, m1.delay, &w1));
  const Region e2 = region_of(sp, ps.state.loc, advance(sp, ps.state.clocks, m2.delay, &w2));
  const bool same_entry = e1 == e2 && w1 == w2;
  const bool same_region = region_of(sp, s1.loc, s1.clocks) == region_of(sp, s2.loc, s2.clocks);
  ps.seen = region_predicates(m.clock_count(), source, r.winner == 1 ? e1 : e2, r.winner, same_entry, same_region);
  if (sp.wrap >= 0) ps.tick = tick_update(ps.state.clocks[sp.wrap], r.delay).tick;
  ps.state = next;
  ps.elapsed += r.delay;
  ++ps.round;
  return r;
}

EnlargedRegion observe(const RegionSpace& sp, Encoding enc, const PlayState& ps) {
  EnlargedRegion e;
  e.base = region_of(sp, ps.state.loc, ps.state.clocks);
  e.pred = ps.seen;
  if (enc == Encoding::Tick) {
    e.pred.vpos = e.pred.vge1 = e.pred.vstar = 0;
    e.tick = ps.tick;
  }
  return e;
}

namespace {

struct Candidate {
  Move move;
  ConcreteState next;
};

std::vector<Candidate> available_at(const TimedGameModel& m, const RegionSpace& sp, const ConcreteState& s,
                                    const std::vector<Time>& delays) {
  std::vector<Candidate> out;
  const auto acts = m.actions_of(Player::Two);
  for (const Time& d : delays) {
    if (d < 0 || !invariant_throughout(m, sp, s, d)) continue;
    const Move stutter{d, Player::Two, std::nullopt};
    out.push_back({stutter, apply_move(m, sp, s, stutter)});
    for (ActionId a : acts)
      if (enabled_edge(m, sp, s, a, d)) {
        const Move mv{d, Player::Two, a};
        out.push_back({mv, apply_move(m, sp, s, mv)});
      }
  }
  return out;
}

Move fallback() { return Move{Time(0), Player::Two, std::nullopt}; }

class RandomAdversary : public Adversary {
 public:
  explicit RandomAdversary(std::uint64_t seed) : rng_(seed) {}
  Move propose(const TimedGameModel& m, const RegionSpace& sp, const PlayState& ps) override {
    auto c = available_at(m, sp, ps.state, representative_delays(sp, ps.state.clocks));
    if (c.empty()) return fallback();
    return c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng_)].move;
  }

 private:
  std::mt19937_64 rng_;
};

class ZenoAdversary : public Adversary {
 public:
  explicit ZenoAdversary(std::uint64_t seed) : rng_(seed) {}
  Move propose(const TimedGameModel& m, const RegionSpace& sp, const PlayState& ps) override {
    const Region here = region_of(sp, ps.state.loc, ps.state.clocks);
    const int v = ++visits_[here];
    Time bound(1);
    for (int i = 0; i < v && i < 64; ++i) bound /= 2;
    std::vector<Time> delays;
    for (const DelayPiece& p : delay_pieces(sp, ps.state.clocks)) {
      if (p.lo >= bound) break;
      if (p.point) {
        delays.push_back(p.lo);
      } else {
        const Time hi = p.unbounded ? bound : std::min(p.hi, bound);
        delays.push_back((p.lo + hi) / 2);
      }
    }
    auto c = available_at(m, sp, ps.state, delays);
    std::erase_if(c, [](const Candidate& k) { return k.move.is_stutter(); });
    if (c.empty()) {
      RandomAdversary r(rng_());
      return r.propose(m, sp, ps);
    }
    const auto consts = m.max_constants();
    auto score = [&](const Candidate& k) {
      bool extreme = true;
      for (std::size_t x = 0; x < m.clock_count(); ++x)
        extreme = extreme && (k.next.clocks[x] < 1 || k.next.clocks[x] > Time(consts[x]));
      return extreme ? 1 : 0;
    };
    int best = -1;
    for (auto& k : c) best = std::max(best, score(k));
    std::vector<const Candidate*> top;
    for (auto& k : c)
      if (score(k) == best) top.push_back(&k);
    return top[std::uniform_int_distribution<std::size_t>(0, top.size() - 1)(rng_)]->move;
  }

 private:
  std::mt19937_64 rng_;
  std::map<Region, int> visits_;
};

std::optional<ActionId> p2_action(const TimedGameModel& m, const std::optional<std::string>& name) {
  if (!name) return std::nullopt;
  auto a = m.find_action(*name);
  if (!a || m.action(*a).owner != Player::Two) throw RuleViolation(Player::Two, "unknown player-2 action " + *name);
  return a;
}

class ScriptedAdversary : public Adversary {
 public:
  explicit ScriptedAdversary(std::vector<ScriptStep> s) : script_(std::move(s)) {}
  Move propose(const TimedGameModel& m, const RegionSpace&, const PlayState&) override {
    if (script_.empty()) return fallback();
    const ScriptStep& st = script_[next_++ % script_.size()];
    return Move{st.delay, Player::Two, p2_action(m, st.action)};
  }

 private:
  std::vector<ScriptStep> script_;
  std::size_t next_ = 0;
};

std::optional<ScriptStep> parse_step(const std::string& line) {
  std::istringstream ss(line);
  std::string d, a;
  if (!(ss >> d)) return std::nullopt;
  ScriptStep st{parse_time(d), std::nullopt};
  if (ss >> a && a != "-") st.action = a;
  return st;
}

class InteractiveAdversary : public Adversary {
 public:
  InteractiveAdversary(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  Move propose(const TimedGameModel& m, const RegionSpace& sp, const PlayState& ps) override {
    for (;;) {
      out_ << "round " << ps.round << " at " << to_string(region_of(sp, ps.state.loc, ps.state.clocks), m)
           << "; player-2 move (delay [action|-]): " << std::flush;
      std::string line;
      if (!std::getline(in_, line)) throw std::runtime_error("interactive input ended");
      try {
        auto st = parse_step(line);
        if (!st) continue;
        Move mv{st->delay, Player::Two, p2_action(m, st->action)};
        std::string why;
        if (available(m, sp, ps.state, mv, &why)) return mv;
        out_ << "not available: " << why << "\n";
      } catch (const std::exception& e) {
        out_ << "invalid move: " << e.what() << "\n";
      }
    }
  }

 private:
  std::istream& in_;
  std::ostream& out_;
};

ordered_json move_json(const TimedGameModel& m, const Move& mv) {
  ordered_json j;
  j["delay"] = to_pq(mv.delay);
  j["action"] = mv.action ? ordered_json(m.action(*mv.action).name) : ordered_json(nullptr);
  return j;
}

ordered_json clocks_json(const ConcreteState& s) {
  ordered_json j = ordered_json::array();
  for (const Time& t : s.clocks) j.push_back(to_pq(t));
  return j;
}

ordered_json mask_json(const TimedGameModel& m, std::uint8_t mask) {
  ordered_json j = ordered_json::array();
  for (std::size_t x = 0; x < m.clock_count(); ++x)
    if (mask >> x & 1) j.push_back(m.clocks[x]);
  return j;
}

// Chain index of the entry a concrete delay lands in.
std::optional<std::size_t> chain_index(const BaseInfo& b, const RegionSpace& sp, const ConcreteState& s,
                                       const Time& d) {
  bool w = false;
  const Region r = region_of(sp, s.loc, advance(sp, s.clocks, d, &w));
  for (std::size_t k = 0; k < b.chain.size(); ++k)
    if (b.chain[k].region == r && b.chain[k].wrapped == w) return k;
  return std::nullopt;
}

}  // namespace

std::unique_ptr<Adversary> make_random_adversary(std::uint64_t seed) { return std::make_unique<RandomAdversary>(seed); }
std::unique_ptr<Adversary> make_zeno_adversary(std::uint64_t seed) { return std::make_unique<ZenoAdversary>(seed); }
std::unique_ptr<Adversary> make_scripted_adversary(std::vector<ScriptStep> script) {
  return std::make_unique<ScriptedAdversary>(std::move(script));
}
std::unique_ptr<Adversary> make_interactive_adversary(std::istream& in, std::ostream& out) {
  return std::make_unique<InteractiveAdversary>(in, out);
}

std::vector<ScriptStep> parse_script(std::istream& in) {
  std::vector<ScriptStep> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (auto st = parse_step(line)) out.push_back(*st);
  }
  return out;
}

Verdict run(const GameSpec& spec, const Controller& c, Adversary& adv, const RunOptions& opt) {
  const TimedGameModel& m = spec.model;
  const RegionSpace sp = c.encoding == Encoding::Tick ? RegionSpace::with_wrap_clock(m) : RegionSpace::of(m);
  PlayState ps;
  ps.memory = c.initial_memory;
  if (opt.start) {
    ps.state = *opt.start;
  } else {
    auto init = m.initial_location();
    if (!init) throw std::invalid_argument("model has no initial location");
    ps.state.loc = *init;
    ps.state.clocks.assign(sp.clocks(), Time(0));
  }
  if (ps.state.clocks.size() != sp.clocks()) throw std::invalid_argument("start state has the wrong number of clocks");

  Verdict v;
  std::deque<bool> window;
  auto is_safe = [&](LocId l) { return std::binary_search(spec.safe.begin(), spec.safe.end(), l); };
  if (!is_safe(ps.state.loc)) {
    v.safe = false;
    v.note = "starts in an unsafe location";
  }
  while (v.safe && ps.round < opt.rounds) {
    const EnlargedRegion obs = observe(sp, c.encoding, ps);
    const ControllerEntry* e = c.lookup(ps.memory, obs);
    if (!e) {
      v.in_domain = false;
      v.note = ps.round == 0 ? "outside winning set" : "controller has no prescription for a reached observation";
      break;
    }
    const Move m1 = concretize(sp, ps.state.loc, ps.state.clocks, e->move, opt.policy);
    const Move m2 = adv.propose(m, sp, ps);
    const PlayState before = ps;
    const int memory_before = ps.memory;
    ps.memory = e->next_memory;
    const StepResult r = step(m, sp, ps, m1, m2, opt.tie_owner);
    v.p1_blamed += r.bl1;
    window.push_back(r.bl1);
    if (window.size() > opt.suffix) window.pop_front();

    if (opt.faithful) {
      const FiniteGame& g = *opt.faithful;
      auto s = g.find(obs);
      bool ok = false;
      if (s) {
        const BaseInfo& b = g.base(*s);
        auto k1 = chain_index(b, sp, before.state, m1.delay);
        auto k2 = chain_index(b, sp, before.state, m2.delay);
        if (k1 && k2) {
          // Inside one chain entry the scheduler bit decides; use the concrete winner.
          const std::uint8_t i = *k1 < *k2 ? 2 : *k1 > *k2 ? 1 : static_cast<std::uint8_t>(r.winner);
          const EnlargedRegion abs = g.delta(*s, P1Move{static_cast<std::uint16_t>(*k1), m1.action},
                                             P2Move{static_cast<std::uint16_t>(*k2), m2.action, i});
          ok = abs == observe(sp, c.encoding, ps);
        }
      }
      if (!ok && v.faithful) {
        v.faithful = false;
        v.note = "round " + std::to_string(before.round) + " left the finite game";
      }
    }

    if (opt.trace) {
      ordered_json j;
      j["round"] = before.round;
      j["loc"] = m.location(before.state.loc).name;
      j["clocks"] = clocks_json(before.state);
      j["region"] = to_string(obs.base, m);
      j["memory"] = memory_before;
      j["p1"] = move_json(m, m1);
      j["p2"] = move_json(m, m2);
      j["winner"] = r.winner;
      j["tie"] = r.tie;
      j["bl1"] = r.bl1;
      j["bl2"] = r.bl2;
      j["delay"] = to_pq(r.delay);
      j["observed_bl1"] = ps.seen.bl1;
      j["pred"] = {{"bl1", ps.pred.bl1},
                   {"vpos", mask_json(m, ps.pred.vpos)},
                   {"vge1", mask_json(m, ps.pred.vge1)},
                   {"vstar", mask_json(m, ps.pred.vstar)}};
      if (sp.wrap >= 0) j["tick"] = ps.tick;
      j["next_loc"] = m.location(ps.state.loc).name;
      j["next_clocks"] = clocks_json(ps.state);
      j["next_region"] = to_string(region_of(sp, ps.state.loc, ps.state.clocks), m);
      j["next_memory"] = ps.memory;
      j["elapsed"] = to_pq(ps.elapsed);
      *opt.trace << j.dump() << "\n";
    }
    if (!is_safe(ps.state.loc)) {
      v.safe = false;
      v.note = "reached unsafe location " + m.location(ps.state.loc).name;
    }
  }
  v.rounds_played = ps.round;
  v.elapsed = ps.elapsed;
  v.diverged = ps.elapsed >= opt.threshold;
  v.blameless_suffix = opt.suffix > 0 && window.size() == opt.suffix &&
                       std::none_of(window.begin(), window.end(), [](bool b) { return b; });
  v.receptive = v.safe && v.in_domain && (v.diverged || v.blameless_suffix);
  return v;
}

std::string verdict_summary(const Verdict& v) {
  std::ostringstream os;
  os << (v.receptive ? "PASS" : "FAIL") << " safe=" << (v.safe ? "yes" : "no") << " rounds=" << v.rounds_played
     << " elapsed=" << to_pq(v.elapsed) << " diverged=" << (v.diverged ? "yes" : "no")
     << " blameless_suffix=" << (v.blameless_suffix ? "yes" : "no") << " p1_blamed=" << v.p1_blamed;
  if (!v.note.empty()) os << " (" << v.note << ")";
  return os.str();
}

}  // namespace tga
