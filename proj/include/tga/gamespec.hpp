#pragma once

#include "tga/model.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tga {

// A parsed .tg file: the automaton plus the locations that must never be left.
struct GameSpec {
  TimedGameModel model;
  std::vector<LocId> safe;  // sorted
  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

struct SourceDiagnostic {
  int line = 0;
  int column = 0;
  int length = 1;
  std::string message;
  std::string str() const;
};

struct ParseOutcome {
  std::optional<GameSpec> spec;
  std::vector<SourceDiagnostic> errors;
  std::vector<Diagnostic> warnings;  // validate_model findings on a successful parse
  bool ok() const { return spec.has_value(); }
};

class GameSpecError : public std::runtime_error {
 public:
  explicit GameSpecError(std::vector<SourceDiagnostic> errs);
  const std::vector<SourceDiagnostic>& errors() const { return errors_; }

 private:
  std::vector<SourceDiagnostic> errors_;
};

// Never throws: any byte sequence yields a spec or diagnostics.
ParseOutcome parse_gamespec(std::string_view text);
// Throws GameSpecError on failure.
GameSpec parse_gamespec_or_throw(std::string_view text);
GameSpec load_gamespec(const std::string& path);

Constraint parse_constraint(std::string_view text, const TimedGameModel& m);

std::string serialize_gamespec(const GameSpec& g);

}  // namespace tga
