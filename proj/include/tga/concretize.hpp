#pragma once

#include "tga/concrete.hpp"
#include "tga/synthesis.hpp"

#include <stdexcept>

namespace tga {

// A prescription whose target region cannot be reached by letting time pass.
class ConcretizationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The delay that realises a prescribed target region from valuation v.
//  push-half: in the region where every non-wrap clock is above its constant,
//    wait 3/2; otherwise, if some bounded clock can pass 1/2 inside the target
//    region, take the midpoint of the delays that put it there; otherwise the
//    midpoint of all admissible delays.
//  midpoint: always the midpoint of the admissible delays.
//  eager: the earliest admissible delay, or an eighth into an open interval.
//  Only eager takes delay 0 when the open stretch after it is also admissible.
// Point intervals give their single delay under every policy.
Time choose_delay(const RegionSpace& sp, LocId loc, std::span<const Time> v, const Region& target, bool wrapped,
                  Policy policy);

Move concretize(const RegionSpace& sp, LocId loc, std::span<const Time> v, const Prescription& p, Policy policy);

}  // namespace tga
