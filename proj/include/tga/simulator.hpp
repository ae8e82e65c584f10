#pragma once

#include "tga/concrete.hpp"
#include "tga/enlarged.hpp"
#include "tga/finite_game.hpp"
#include "tga/gamespec.hpp"
#include "tga/synthesis.hpp"

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>

namespace tga {

// A proposed move that is not in the proposer's move set.
class RuleViolation : public std::runtime_error {
 public:
  RuleViolation(Player who, const std::string& why)
      : std::runtime_error("player " + std::to_string(index_of(who)) + " proposed an unavailable move: " + why),
        offender(who) {}
  Player offender;
};

struct PlayState {
  ConcreteState state;  // model clocks, then the wrap clock for tick controllers
  PredicateState pred;  // from the concrete transition
  // The same transition read at region level: proposals landing in one chain
  // entry count as a tie, and region-equal successors as the same successor.
  // This never blames player 1 less than `pred` and is what controllers observe.
  PredicateState seen;
  bool tick = false;
  int memory = 0;
  std::uint64_t round = 0;
  Time elapsed = 0;
};

struct StepResult {
  int winner = 1;
  bool tie = false;      // equal delays
  bool bl1 = false;      // concrete blame
  bool bl2 = false;
  Time delay;  // min of both proposals
};

// One joint move. The shorter delay wins; equal delays go to `tie_owner`.
// Throws RuleViolation when a proposal is unavailable.
StepResult step(const TimedGameModel& m, const RegionSpace& sp, PlayState& ps, const Move& m1, const Move& m2,
                Player tie_owner = Player::Two);

// The observation a region controller receives.
EnlargedRegion observe(const RegionSpace& sp, Encoding enc, const PlayState& ps);

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual Move propose(const TimedGameModel& m, const RegionSpace& sp, const PlayState& ps) = 0;
};

// Uniform over available moves at representative delays.
std::unique_ptr<Adversary> make_random_adversary(std::uint64_t seed);
// On the v-th visit to a region answers with an action at a delay below
// 1/2^min(v,64), preferring actions that land where every clock is below 1 or
// above its constant. Without such an action it plays like the random adversary.
std::unique_ptr<Adversary> make_zeno_adversary(std::uint64_t seed);

struct ScriptStep {
  Time delay;
  std::optional<std::string> action;  // nullopt: stutter
};
// Replays the script cyclically; an entry that is unavailable becomes a rule violation.
std::unique_ptr<Adversary> make_scripted_adversary(std::vector<ScriptStep> script);
// Lines "delay [action]"; "-" or an empty action stutters.
std::vector<ScriptStep> parse_script(std::istream& in);
// Prompts on `out` and reads "delay [action]" lines from `in` until a move is available.
std::unique_ptr<Adversary> make_interactive_adversary(std::istream& in, std::ostream& out);

struct RunOptions {
  std::uint64_t rounds = 1000;
  Time threshold = 250;      // divergence proxy T
  std::uint64_t suffix = 250;  // blamelessness window K
  Player tie_owner = Player::Two;
  Policy policy = Policy::PushHalf;  // concretization used for player 1
  std::optional<ConcreteState> start;  // default: initial location, clocks 0
  std::ostream* trace = nullptr;       // one JSON record per round
  // When given, every round is replayed on this game and must match it exactly.
  const FiniteGame* faithful = nullptr;
};

struct Verdict {
  bool in_domain = true;  // the controller had a prescription at every observation
  bool safe = true;
  bool diverged = false;           // elapsed >= T
  bool blameless_suffix = false;   // bl1 false on each of the last K rounds
  bool receptive = false;          // safe and (diverged or blameless_suffix)
  bool faithful = true;            // rounds agree with the finite game
  Time elapsed = 0;
  std::uint64_t rounds_played = 0;
  std::uint64_t p1_blamed = 0;
  std::string note;
};

Verdict run(const GameSpec& spec, const Controller& c, Adversary& adv, const RunOptions& opt);

std::string verdict_summary(const Verdict& v);

}  // namespace tga
