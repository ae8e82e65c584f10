#include "tga/muller.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace tga {

namespace {

struct AtomRef {
  int index;
  bool negated;
};

AtomRef intern(std::vector<BoolExpr>& atoms, const BoolExpr& e) {
  const bool neg = e.kind() == BoolExpr::Kind::Not;
  const BoolExpr& core = neg ? e.kids()[0] : e;
  for (std::size_t j = 0; j < atoms.size(); ++j)
    if (atoms[j] == core) return {static_cast<int>(j), neg};
  atoms.push_back(core);
  return {static_cast<int>(atoms.size()) - 1, neg};
}

InfFormula map_atoms(const InfFormula& f, std::vector<BoolExpr>& atoms) {
  using K = InfFormula::Kind;
  switch (f.kind()) {
    case K::Const: return f;
    case K::GF:
    case K::FG: {
      AtomRef a = intern(atoms, f.arg());
      BoolExpr p = BoolExpr::prop(a.index);
      if (a.negated) p = BoolExpr::lnot(p);
      return f.kind() == K::GF ? InfFormula::gf(p) : InfFormula::fg(p);
    }
    case K::And:
    case K::Or: {
      std::vector<InfFormula> ks;
      for (auto& k : f.kids()) ks.push_back(map_atoms(k, atoms));
      return f.kind() == K::And ? InfFormula::conj(std::move(ks)) : InfFormula::disj(std::move(ks));
    }
  }
  return f;
}

}  // namespace

MullerCondition MullerCondition::from_formula(const InfFormula& f, std::size_t cap) {
  MullerCondition m;
  m.source_ = f;
  m.mapped_ = map_atoms(f, m.atoms_);
  if (m.atoms_.size() > cap)
    throw CapacityError("objective has " + std::to_string(m.atoms_.size()) + " atoms; the limit is " +
                        std::to_string(cap));
  return m;
}

bool MullerCondition::accepts(LiteralSet b) const {
  auto lit = [&](const BoolExpr& p, bool* negated) {
    *negated = p.kind() == BoolExpr::Kind::Not;
    return (*negated ? p.kids()[0] : p).bit();
  };
  auto somewhere = [&](const BoolExpr& p) {
    bool n;
    int j = lit(p, &n);
    return ((n ? b.neg : b.pos) >> j & 1u) != 0;
  };
  auto everywhere = [&](const BoolExpr& p) {
    bool n;
    int j = lit(p, &n);
    return ((n ? b.pos : b.neg) >> j & 1u) == 0;
  };
  return mapped_.eval(somewhere, everywhere) != negated_;
}

std::uint32_t MullerCondition::color(Label l) const {
  std::uint32_t c = 0;
  for (std::size_t j = 0; j < atoms_.size(); ++j)
    if (atoms_[j].eval(l)) c |= 1u << j;
  return c;
}

MullerCondition MullerCondition::complement() const {
  MullerCondition m = *this;
  m.negated_ = !negated_;
  m.source_ = InfFormula::negate(source_);
  return m;
}

std::string MullerCondition::literals_str(LiteralSet b, const PropNamer& name) const {
  std::string s = "{";
  bool first = true;
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    for (int polarity = 0; polarity < 2; ++polarity) {
      const std::uint32_t mask = polarity ? b.neg : b.pos;
      if (!(mask >> j & 1u)) continue;
      if (!first) s += ", ";
      first = false;
      s += (polarity ? "!" : "") + atom_name(j, name);
    }
  }
  return s + "}";
}

// ------------------------------------------------------------ Zielonka tree

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const MullerCondition& f, std::vector<ZielonkaNode>& out) : f_(f), out_(out) {}

  int make(LiteralSet label) {
    if (auto it = memo_.find(label); it != memo_.end()) return it->second;
    const int id = static_cast<int>(out_.size());
    out_.push_back(ZielonkaNode{label, f_.accepts(label), {}, 1});
    memo_[label] = id;
    std::vector<int> kids;
    for (LiteralSet c : maximal_flipped(label, out_[id].good)) kids.push_back(make(c));
    std::uint64_t m = 1;
    if (!kids.empty()) {
      m = 0;
      for (int k : kids) m = out_[id].good ? m + out_[k].memory : std::max(m, out_[k].memory);
    }
    out_[id].children = std::move(kids);
    out_[id].memory = m;
    return id;
  }

 private:
  // Consistent subsets of `label` are indexed in base 3 over the atoms that carry
  // both literals: digit 0 keeps both, 1 keeps the positive, 2 the negative one.
  // Dropping a literal raises the index, so one ascending sweep sees every strict
  // superset before its subsets.
  std::vector<LiteralSet> maximal_flipped(LiteralSet label, bool good) const {
    std::vector<int> both;
    for (std::size_t j = 0; j < f_.atoms(); ++j)
      if ((label.pos >> j & 1u) && (label.neg >> j & 1u)) both.push_back(static_cast<int>(j));
    const std::size_t d = both.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= 3;
    std::vector<std::size_t> pow3(d + 1, 1);
    for (std::size_t i = 1; i <= d; ++i) pow3[i] = pow3[i - 1] * 3;
    // covered[idx]: some set at or above idx (strictly below the label) is flipped.
    std::vector<char> covered(total, 0);
    std::vector<LiteralSet> out;
    for (std::size_t idx = 1; idx < total; ++idx) {
      LiteralSet s = label;
      bool above = false;
      for (std::size_t i = 0; i < d; ++i) {
        const std::size_t digit = idx / pow3[i] % 3;
        if (digit == 0) continue;
        const std::uint32_t bit = 1u << both[i];
        if (digit == 1)
          s.neg &= ~bit;
        else
          s.pos &= ~bit;
        const std::size_t sup = idx - digit * pow3[i];
        if (sup != 0 && covered[sup]) above = true;
      }
      const bool flipped = f_.accepts(s) != good;
      if (flipped && !above) out.push_back(s);
      covered[idx] = flipped || above;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  const MullerCondition& f_;
  std::vector<ZielonkaNode>& out_;
  std::map<LiteralSet, int> memo_;
};

}  // namespace

ZielonkaTree ZielonkaTree::build(const MullerCondition& f) {
  ZielonkaTree t;
  TreeBuilder b(f, t.nodes_);
  b.make(LiteralSet{f.all(), f.all()});
  return t;
}

std::uint64_t ZielonkaTree::leaf_count() const {
  std::vector<std::uint64_t> memo(nodes_.size(), 0);
  std::function<std::uint64_t(int)> go = [&](int i) -> std::uint64_t {
    if (memo[i]) return memo[i];
    std::uint64_t c = nodes_[i].children.empty() ? 1 : 0;
    for (int k : nodes_[i].children) c += go(k);
    return memo[i] = c;
  };
  return go(0);
}

std::size_t ZielonkaTree::depth() const {
  std::vector<std::size_t> memo(nodes_.size(), 0);
  std::function<std::size_t(int)> go = [&](int i) -> std::size_t {
    if (memo[i]) return memo[i];
    std::size_t d = 0;
    for (int k : nodes_[i].children) d = std::max(d, go(k));
    return memo[i] = d + 1;
  };
  return go(0);
}

std::string ZielonkaTree::dump(const MullerCondition& f, const PropNamer& name) const {
  std::string out;
  std::function<void(int, int)> go = [&](int i, int indent) {
    const auto& n = nodes_[i];
    out += std::string(2 * indent, ' ') + (n.good ? "Good " : "Bad ") + f.literals_str(n.label, name) +
           " m=" + std::to_string(n.memory) + "\n";
    for (int k : n.children) go(k, indent + 1);
  };
  go(0, 0);
  return out;
}

}  // namespace tga
