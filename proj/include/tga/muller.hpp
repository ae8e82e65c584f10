#pragma once

#include "tga/formula.hpp"

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tga {

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A set of literals over atoms 0..n-1: bit j of `pos` is atom j, bit j of `neg` is its negation.
struct LiteralSet {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;
  bool subset_of(const LiteralSet& o) const { return (pos & ~o.pos) == 0 && (neg & ~o.neg) == 0; }
  bool consistent(std::uint32_t all) const { return (pos | neg) == all; }
  LiteralSet operator|(const LiteralSet& o) const { return {pos | o.pos, neg | o.neg}; }
  auto operator<=>(const LiteralSet&) const = default;
};

// Acceptance over the set of literals that recur along a play. Each distinct GF/FG
// argument becomes one atom, so the decision is exact: GF(a) iff a recurs,
// FG(a) iff the negation of a never recurs.
class MullerCondition {
 public:
  static constexpr std::size_t kDefaultCap = 14;
  static MullerCondition from_formula(const InfFormula& f, std::size_t cap = kDefaultCap);

  std::size_t atoms() const { return atoms_.size(); }
  std::uint32_t all() const { return atoms_.size() >= 32 ? ~0u : ((1u << atoms_.size()) - 1); }
  const std::vector<BoolExpr>& atom_exprs() const { return atoms_; }
  const InfFormula& source() const { return source_; }

  bool accepts(LiteralSet b) const;
  std::uint32_t color(Label l) const;  // atoms true at a label
  LiteralSet literals(Label l) const {
    std::uint32_t c = color(l);
    return {c, all() & ~c};
  }
  MullerCondition complement() const;
  std::string atom_name(std::size_t j, const PropNamer& name) const { return atoms_[j].str(name); }
  std::string literals_str(LiteralSet b, const PropNamer& name) const;

 private:
  InfFormula source_;
  InfFormula mapped_;  // arguments replaced by prop(j) or !prop(j)
  std::vector<BoolExpr> atoms_;
  bool negated_ = false;
};

struct ZielonkaNode {
  LiteralSet label;
  bool good = false;
  std::vector<int> children;
  std::uint64_t memory = 1;  // m^v: 1 at leaves, sum at Good nodes, max at Bad nodes
};

// Nodes with equal labels are shared, so the tree is stored as a DAG.
class ZielonkaTree {
 public:
  static ZielonkaTree build(const MullerCondition& f);

  const ZielonkaNode& node(int i) const { return nodes_[i]; }
  std::size_t size() const { return nodes_.size(); }
  int root() const { return 0; }
  std::uint64_t memory() const { return nodes_[0].memory; }
  std::uint64_t leaf_count() const;  // leaves of the unfolded tree
  std::size_t depth() const;
  // Indented rendering: one node per line, "Good|Bad {literals} m=k".
  std::string dump(const MullerCondition& f, const PropNamer& name) const;

 private:
  std::vector<ZielonkaNode> nodes_;
};

}  // namespace tga
