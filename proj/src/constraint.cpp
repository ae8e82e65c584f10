#include "tga/constraint.hpp"

#include <algorithm>

namespace tga {


Constraint::Constraint() : node_(std::make_shared<const Node>()) {}

Constraint Constraint::upper(ClockId x, std::uint32_t d) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Upper;
  n->clock = x;
  n->bound = d;
  return Constraint(std::move(n));
}

Constraint Constraint::lower(ClockId x, std::uint32_t d) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lower;
  n->clock = x;
  n->bound = d;
  return Constraint(std::move(n));
}

Constraint Constraint::negate(Constraint c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->kids.push_back(std::move(c));
  return Constraint(std::move(n));
}

Constraint Constraint::conj(Constraint a, Constraint b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->kids.push_back(std::move(a));
  n->kids.push_back(std::move(b));
  return Constraint(std::move(n));
}

bool Constraint::eval(std::span<const Time> valuation) const {
  switch (kind()) {
    case Kind::True:
      return true;
    case Kind::Upper:
      return valuation[clock().v] <= Time(bound());
    case Kind::Lower:
      return Time(bound()) <= valuation[clock().v];
    case Kind::Not:
      return !lhs().eval(valuation);
    case Kind::And:
      return lhs().eval(valuation) && rhs().eval(valuation);
  }
  return false;
}

void Constraint::collect_constants(std::vector<std::uint32_t>& out) const {
  switch (kind()) {
    case Kind::True:
      return;
    case Kind::Upper:
    case Kind::Lower:
      if (clock().v < out.size()) out[clock().v] = std::max(out[clock().v], bound());
      return;
    case Kind::Not:
      lhs().collect_constants(out);
      return;
    case Kind::And:
      lhs().collect_constants(out);
      rhs().collect_constants(out);
      return;
  }
}

bool Constraint::references_only(std::size_t clock_count) const {
  switch (kind()) {
    case Kind::True:
      return true;
    case Kind::Upper:
    case Kind::Lower:
      return clock().v < clock_count;
    case Kind::Not:
      return lhs().references_only(clock_count);
    case Kind::And:
      return lhs().references_only(clock_count) && rhs().references_only(clock_count);
  }
  return false;
}

bool operator==(const Constraint& a, const Constraint& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Constraint::Kind::True:
      return true;
    case Constraint::Kind::Upper:
    case Constraint::Kind::Lower:
      return a.clock() == b.clock() && a.bound() == b.bound();
    case Constraint::Kind::Not:
      return a.lhs() == b.lhs();
    case Constraint::Kind::And:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

std::string to_string(const Constraint& c, std::span<const std::string> clock_names) {
  auto name = [&](ClockId x) {
    return x.v < clock_names.size() ? clock_names[x.v] : "#" + std::to_string(x.v);
  };
  switch (c.kind()) {
    case Constraint::Kind::True:
      return "true";
    case Constraint::Kind::Upper:
      return name(c.clock()) + "<=" + std::to_string(c.bound());
    case Constraint::Kind::Lower:
      return std::to_string(c.bound()) + "<=" + name(c.clock());
    case Constraint::Kind::Not:
      return "!(" + to_string(c.lhs(), clock_names) + ")";
    case Constraint::Kind::And:
      return "(" + to_string(c.lhs(), clock_names) + " & " + to_string(c.rhs(), clock_names) + ")";
  }
  return "true";
}

}  // namespace tga
