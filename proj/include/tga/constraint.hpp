#pragma once

#include "tga/ids.hpp"
#include "tga/rational.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace tga {

// θ ::= x<=d | d<=x | !θ | θ & θ, plus the constant true.
class Constraint {
 public:
  enum class Kind : std::uint8_t { True, Upper, Lower, Not, And };

  Constraint();  // true
  static Constraint top() { return {}; }
  static Constraint upper(ClockId x, std::uint32_t d);  // x <= d
  static Constraint lower(ClockId x, std::uint32_t d);  // d <= x
  static Constraint negate(Constraint c);
  static Constraint conj(Constraint a, Constraint b);

  Kind kind() const { return node_->kind; }
  ClockId clock() const { return node_->clock; }
  std::uint32_t bound() const { return node_->bound; }
  const Constraint& lhs() const { return node_->kids[0]; }
  const Constraint& rhs() const { return node_->kids[1]; }

  bool eval(std::span<const Time> valuation) const;

  // Evaluation against a clock whose value is known only up to its region:
  // integer part h, and whether a positive fraction is present.
  // `beyond` means the value exceeds every constant of that clock.
  struct ClockView {
    std::uint32_t h = 0;
    bool fractional = false;
    bool beyond = false;
  };
  template <class ViewFn>
  bool eval_view(ViewFn&& view) const;

  // Largest constant per clock; entries for unconstrained clocks stay untouched.
  void collect_constants(std::vector<std::uint32_t>& out) const;
  bool references_only(std::size_t clock_count) const;

  friend bool operator==(const Constraint& a, const Constraint& b);

 private:
  struct Node {
    Kind kind = Kind::True;
    ClockId clock{};
    std::uint32_t bound = 0;
    std::vector<Constraint> kids;
  };
  explicit Constraint(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

template <class ViewFn>
bool Constraint::eval_view(ViewFn&& view) const {
  switch (kind()) {
    case Kind::True:
      return true;
    case Kind::Upper: {
      ClockView v = view(clock());
      if (v.beyond) return false;
      return v.fractional ? v.h < bound() : v.h <= bound();
    }
    case Kind::Lower: {
      ClockView v = view(clock());
      if (v.beyond) return true;
      return v.h >= bound();
    }
    case Kind::Not:
      return !lhs().eval_view(view);
    case Kind::And:
      return lhs().eval_view(view) && rhs().eval_view(view);
  }
  return false;
}

// DSL rendering: x<=d, d<=x, !(...), (a & b), true.
std::string to_string(const Constraint& c, std::span<const std::string> clock_names);

}  // namespace tga
