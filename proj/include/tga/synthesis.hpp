#pragma once

#include "tga/finite_game.hpp"
#include "tga/gamespec.hpp"
#include "tga/muller_solver.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tga {

enum class Objective { PhiDagger, PhiStar, PhiStarPrinted, Tick };

std::string objective_name(Objective o);
std::optional<Objective> parse_objective(std::string_view s);
Encoding encoding_of(Objective o);
InfFormula objective_formula(Objective o, std::size_t clocks);

// Everything computed while solving one objective on one model. Holds a copy of
// the GameSpec so the game's model reference stays valid.
struct SolvedGame {
  std::shared_ptr<const GameSpec> spec;
  Objective objective = Objective::PhiDagger;
  FiniteGame game;
  TurnArena arena;
  NodeMask sub;  // arena nodes outside player 2's attractor to unsafe locations
  MullerCondition condition;
  MullerSolution solution;

  bool wins(int state) const { return solution.win[state] != 0; }
  // Initial states (all observations false) of every base region, sorted by region.
  std::vector<std::pair<Region, int>> initial_states() const;
};

std::unique_ptr<SolvedGame> solve_game(const GameSpec& spec, Objective o);

struct WinningCertificate {
  Objective objective = Objective::PhiDagger;
  std::vector<Region> winning;  // base regions over the model clocks, sorted
  std::size_t game_states = 0;
  std::size_t winning_states = 0;
  std::size_t arena_nodes = 0;
  std::size_t arena_edges = 0;
  std::size_t atoms = 0;
  std::uint64_t tree_memory = 1;
  std::map<Objective, std::vector<Region>> cross;  // other encodings, when requested
  bool cross_agree = true;
};

WinningCertificate certificate_of(const SolvedGame& g);
WinningCertificate sure_safe(const GameSpec& spec, Objective o = Objective::PhiDagger, bool cross_validate = false);

// ------------------------------------------------------------------ controller

enum class Policy { PushHalf, Midpoint, Eager };
std::string policy_name(Policy p);
std::optional<Policy> parse_policy(std::string_view s);

struct Prescription {
  Region target;         // a region on the time-successor chain of the observation
  bool wrapped = false;  // tick encoding: the wrap clock crosses 1 on the way
  std::optional<ActionId> action;
  auto operator<=>(const Prescription&) const = default;
};

struct ControllerEntry {
  int next_memory = 0;
  Prescription move;
  friend bool operator==(const ControllerEntry&, const ControllerEntry&) = default;
};

// Finite-memory region controller. On observing enlarged region o with memory m,
// it plays table[(m, o)].move and continues with table[(m, o)].next_memory.
struct Controller {
  std::string game;
  std::string objective;
  Encoding encoding = Encoding::Predicates;
  std::vector<std::string> clocks;
  int memory_states = 1;
  int initial_memory = 0;
  Policy policy = Policy::PushHalf;
  std::vector<EnlargedRegion> observations;  // sorted
  std::map<std::pair<int, int>, ControllerEntry> table;

  // Bits a controller needs when it tracks the observations itself.
  unsigned predicate_bits() const;
  std::optional<int> observation_index(const EnlargedRegion& e) const;
  const ControllerEntry* lookup(int memory, const EnlargedRegion& e) const;
  friend bool operator==(const Controller&, const Controller&) = default;
};

// (memory, state) -> (next memory, index into moves1(state)), or nullopt if undefined.
using ControlRule = std::function<std::optional<std::pair<int, int>>(int, int)>;

// Tabulates a rule over every (memory, state) pair reachable from `initial`.
// Memory values are renumbered in order of first use; throws if the rule is
// undefined on a reachable pair.
Controller build_controller(const FiniteGame& g, const std::string& objective, const std::vector<int>& initial,
                            int initial_memory, const ControlRule& rule, Policy policy);
// The rule followed by the solver's strategy.
ControlRule strategy_rule(const SolvedGame& g);
// Inverse view of a controller as a rule over the game's moves.
ControlRule controller_rule(const FiniteGame& g, const Controller& c);

// Greedily merges memory states, keeping a merge only when the merged
// controller is still defined everywhere it is reached and passes the
// exhaustive product check. Never increases memory.
Controller minimize_controller(const SolvedGame& g, const Controller& c, const std::vector<int>& initial);

struct SynthesisResult {
  WinningCertificate certificate;
  std::optional<Controller> controller;  // empty when nothing is winning
};
SynthesisResult synthesize(const GameSpec& spec, Objective o = Objective::PhiDagger, Policy p = Policy::PushHalf,
                           bool cross_validate = false);

// ------------------------------------------------------------ exhaustive checks

// Whether some cycle through `nodes` of the graph has a rejected literal set.
bool has_rejecting_cycle(const std::vector<std::vector<int>>& graph, const std::vector<LiteralSet>& colors,
                         const std::vector<int>& nodes, const ZielonkaTree& tree);

struct ProductCheck {
  bool ok = true;
  std::string reason;
  std::size_t product_nodes = 0;
};
// Explores the product of the game with a controller from the given initial
// states and checks that every reachable state is safe and every reachable
// lasso satisfies the condition.
ProductCheck check_controller(const FiniteGame& g, const std::vector<LocId>& safe, const MullerCondition& f,
                              const std::vector<int>& initial, int initial_memory, const ControlRule& rule);

struct MemorylessReport {
  bool winner_found = false;
  std::map<int, int> winner;       // state -> move index, when found
  std::size_t scope = 0;           // states reachable from the initial ones under any move
  BigInt candidates = 1;           // product over the scope of the move counts
  std::uint64_t nodes_explored = 0;
  std::uint64_t complete_checked = 0;
  std::uint64_t pruned = 0;
};
// Exhaustive search over memoryless controllers. Branches are cut as soon as
// the committed part already contains an unsafe state or a rejected cycle, so
// every mapping is covered without being listed. Moves are tried latest chain
// entry first, stutters before actions. Throws CapacityError past `cap` search nodes.
MemorylessReport enumerate_memoryless(const SolvedGame& g, const std::vector<int>& initial,
                                      std::uint64_t cap = 50'000'000);

}  // namespace tga
