#pragma once

#include "tga/model.hpp"
#include "tga/synthesis.hpp"

#include <stdexcept>
#include <string>

namespace tga {

class ControllerFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Controller files are JSON documents with a fixed key order:
//
//   format            "tga-controller/1"
//   game, objective   names
//   encoding          "predicates" | "tick"
//   clocks            model clock names; tick regions add a final wrap clock "z"
//   memory_states, initial_memory
//   predicate_bits    bits needed to track the observations concretely
//   policy            concretization policy tag
//   observation_note  reminder that predicates are computed from whole transitions
//   observations      [{id, region, bl1, vpos, vge1, vstar, tick}]
//   memory_update     [{memory, observation, next}]
//   prescriptions     [{memory, observation, target, wrapped, action, policy}]
//
// A region is {loc, h, cls, text}: integer parts, fraction classes (-1 above
// the constant, 0 integral, k>0 the k-th fraction block) and a readable form
// that is checked on input. A null action is the player's stutter.
std::string serialize_controller(const Controller& c, const TimedGameModel& m);
Controller parse_controller(const std::string& text, const TimedGameModel& m);

std::string encoding_name(Encoding e);

}  // namespace tga
