#include "tga/formula.hpp"

#include <algorithm>

namespace tga {

std::string PropLayout::name(int bit, std::span<const std::string> clocks) {
  if (bit == kBl1) return "bl1";
  if (bit == kTick) return "tick";
  if (bit == kSafe) return "Y";
  const int k = (bit - 2) / 5;
  const std::string x = static_cast<std::size_t>(k) < clocks.size() ? clocks[k] : "c" + std::to_string(k);
  switch ((bit - 2) % 5) {
    case 0: return x + "=0";
    case 1: return "V>0(" + x + ")";
    case 2: return "V>=1(" + x + ")";
    case 3: return "V*(" + x + ")";
    default: return x + ">c";
  }
}

PropNamer game_prop_namer(std::vector<std::string> clocks) {
  return [clocks = std::move(clocks)](int b) { return PropLayout::name(b, clocks); };
}

PropNamer indexed_prop_namer(std::vector<std::string> names) {
  return [names = std::move(names)](int b) {
    return static_cast<std::size_t>(b) < names.size() ? names[b] : "p" + std::to_string(b);
  };
}

// ---------------------------------------------------------------- BoolExpr

BoolExpr BoolExpr::constant(bool v) {
  BoolExpr e;
  e.value_ = v;
  return e;
}

BoolExpr BoolExpr::prop(int bit) {
  BoolExpr e;
  e.kind_ = Kind::Prop;
  e.bit_ = bit;
  return e;
}

BoolExpr BoolExpr::lnot(BoolExpr e) {
  if (e.is_const()) return constant(!e.value_);
  if (e.kind_ == Kind::Not) return e.kids_[0];
  BoolExpr r;
  r.kind_ = Kind::Not;
  r.kids_.push_back(std::move(e));
  return r;
}

namespace {

template <class T, class Kind>
std::vector<T> flatten(std::vector<T> in, Kind k, bool unit, bool* absorbed) {
  std::vector<T> out;
  for (auto& e : in) {
    if (e.kind() == Kind::Const) {
      if (e.value() != unit) *absorbed = true;
      continue;
    }
    if (e.kind() == k) {
      for (auto& c : e.kids()) out.push_back(c);
    } else {
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace

BoolExpr BoolExpr::land(std::vector<BoolExpr> es) {
  bool absorbed = false;
  auto ks = flatten(std::move(es), Kind::And, true, &absorbed);
  if (absorbed) return constant(false);
  if (ks.empty()) return constant(true);
  if (ks.size() == 1) return ks[0];
  BoolExpr r;
  r.kind_ = Kind::And;
  r.kids_ = std::move(ks);
  return r;
}

BoolExpr BoolExpr::lor(std::vector<BoolExpr> es) {
  bool absorbed = false;
  auto ks = flatten(std::move(es), Kind::Or, false, &absorbed);
  if (absorbed) return constant(true);
  if (ks.empty()) return constant(false);
  if (ks.size() == 1) return ks[0];
  BoolExpr r;
  r.kind_ = Kind::Or;
  r.kids_ = std::move(ks);
  return r;
}

bool BoolExpr::eval(Label l) const {
  switch (kind_) {
    case Kind::Const: return value_;
    case Kind::Prop: return (l >> bit_) & 1u;
    case Kind::Not: return !kids_[0].eval(l);
    case Kind::And:
      return std::all_of(kids_.begin(), kids_.end(), [&](auto& k) { return k.eval(l); });
    case Kind::Or:
      return std::any_of(kids_.begin(), kids_.end(), [&](auto& k) { return k.eval(l); });
  }
  return false;
}

std::string BoolExpr::str(const PropNamer& name) const {
  switch (kind_) {
    case Kind::Const: return value_ ? "true" : "false";
    case Kind::Prop: return name(bit_);
    case Kind::Not: {
      auto s = kids_[0].str(name);
      return kids_[0].kind_ == Kind::Prop ? "!" + s : "!(" + s + ")";
    }
    case Kind::And:
    case Kind::Or: {
      std::string s = "(";
      for (std::size_t i = 0; i < kids_.size(); ++i) {
        if (i) s += kind_ == Kind::And ? " & " : " | ";
        s += kids_[i].str(name);
      }
      return s + ")";
    }
  }
  return {};
}

// -------------------------------------------------------------- InfFormula

InfFormula InfFormula::constant(bool v) {
  InfFormula f;
  f.value_ = v;
  return f;
}

InfFormula InfFormula::gf(BoolExpr p) {
  if (p.is_const()) return constant(p.value());
  InfFormula f;
  f.kind_ = Kind::GF;
  f.arg_ = std::move(p);
  return f;
}

InfFormula InfFormula::fg(BoolExpr p) {
  if (p.is_const()) return constant(p.value());
  InfFormula f;
  f.kind_ = Kind::FG;
  f.arg_ = std::move(p);
  return f;
}

InfFormula InfFormula::conj(std::vector<InfFormula> fs) {
  bool absorbed = false;
  auto ks = flatten(std::move(fs), Kind::And, true, &absorbed);
  if (absorbed) return constant(false);
  if (ks.empty()) return constant(true);
  if (ks.size() == 1) return ks[0];
  InfFormula f;
  f.kind_ = Kind::And;
  f.kids_ = std::move(ks);
  return f;
}

InfFormula InfFormula::disj(std::vector<InfFormula> fs) {
  bool absorbed = false;
  auto ks = flatten(std::move(fs), Kind::Or, false, &absorbed);
  if (absorbed) return constant(true);
  if (ks.empty()) return constant(false);
  if (ks.size() == 1) return ks[0];
  InfFormula f;
  f.kind_ = Kind::Or;
  f.kids_ = std::move(ks);
  return f;
}

InfFormula InfFormula::negate(const InfFormula& f) {
  switch (f.kind_) {
    case Kind::Const: return constant(!f.value_);
    case Kind::GF: return fg(BoolExpr::lnot(f.arg_));
    case Kind::FG: return gf(BoolExpr::lnot(f.arg_));
    case Kind::And:
    case Kind::Or: {
      std::vector<InfFormula> ks;
      for (auto& k : f.kids_) ks.push_back(negate(k));
      return f.kind_ == Kind::And ? disj(std::move(ks)) : conj(std::move(ks));
    }
  }
  return f;
}

bool InfFormula::eval(const std::function<bool(const BoolExpr&)>& somewhere,
                      const std::function<bool(const BoolExpr&)>& everywhere) const {
  switch (kind_) {
    case Kind::Const: return value_;
    case Kind::GF: return somewhere(arg_);
    case Kind::FG: return everywhere(arg_);
    case Kind::And:
      for (auto& k : kids_)
        if (!k.eval(somewhere, everywhere)) return false;
      return true;
    case Kind::Or:
      for (auto& k : kids_)
        if (k.eval(somewhere, everywhere)) return true;
      return false;
  }
  return false;
}

std::string InfFormula::str(const PropNamer& name) const {
  switch (kind_) {
    case Kind::Const: return value_ ? "true" : "false";
    case Kind::GF:
    case Kind::FG: {
      std::string a = arg_.str(name);
      if (a.front() != '(') a = "(" + a + ")";
      return (kind_ == Kind::GF ? "GF" : "FG") + a;
    }
    case Kind::And:
    case Kind::Or: {
      std::string s = "(";
      for (std::size_t i = 0; i < kids_.size(); ++i) {
        if (i) s += kind_ == Kind::And ? " & " : " | ";
        s += kids_[i].str(name);
      }
      return s + ")";
    }
  }
  return {};
}

bool eval_lasso(const InfFormula& f, std::span<const Label>, std::span<const Label> cycle) {
  // Only the cycle recurs, so the stem never affects GF/FG.
  auto somewhere = [&](const BoolExpr& p) {
    return std::any_of(cycle.begin(), cycle.end(), [&](Label l) { return p.eval(l); });
  };
  auto everywhere = [&](const BoolExpr& p) {
    return std::all_of(cycle.begin(), cycle.end(), [&](Label l) { return p.eval(l); });
  };
  return f.eval(somewhere, everywhere);
}

// -------------------------------------------------------------- objectives

namespace {

using P = PropLayout;
BoolExpr pr(int b) { return BoolExpr::prop(b); }
BoolExpr nt(BoolExpr e) { return BoolExpr::lnot(std::move(e)); }

}  // namespace

InfFormula build_phi_dagger(std::size_t n) {
  std::vector<InfFormula> reset_or_escape, all_escaped;
  std::vector<BoolExpr> all_pos, some_unescaped, some_ge1_unescaped;
  for (std::size_t x = 0; x < n; ++x) {
    reset_or_escape.push_back(InfFormula::gf(BoolExpr::lor({pr(P::zero(x)), pr(P::vstar(x))})));
    all_escaped.push_back(InfFormula::fg(pr(P::vstar(x))));
    all_pos.push_back(pr(P::vpos(x)));
    some_unescaped.push_back(nt(pr(P::vstar(x))));
    some_ge1_unescaped.push_back(BoolExpr::land({pr(P::vge1(x)), nt(pr(P::vstar(x)))}));
  }
  auto progress = InfFormula::disj({
      InfFormula::gf(BoolExpr::land({pr(P::kBl1), BoolExpr::land(all_pos), BoolExpr::lor(some_unescaped)})),
      InfFormula::gf(BoolExpr::land({nt(pr(P::kBl1)), BoolExpr::lor(some_ge1_unescaped)})),
  });
  reset_or_escape.push_back(progress);
  auto psi = InfFormula::disj({InfFormula::conj(reset_or_escape), InfFormula::conj(all_escaped)});
  return InfFormula::implies(InfFormula::gf(pr(P::kBl1)), psi);
}

InfFormula build_phi_star(std::size_t n, bool literal_as_printed) {
  std::vector<InfFormula> disjuncts;
  for (std::uint32_t X = 0; X < (1u << n); ++X) {
    std::vector<InfFormula> part;
    std::vector<BoolExpr> all_pos, some_ge1;
    for (std::size_t x = 0; x < n; ++x) {
      if (X >> x & 1u) {
        part.push_back(InfFormula::fg(pr(P::big(x))));
      } else {
        part.push_back(InfFormula::gf(pr(P::zero(x))));
        all_pos.push_back(pr(P::vpos(x)));
        some_ge1.push_back(pr(P::vge1(x)));
      }
    }
    BoolExpr second_blame = literal_as_printed ? pr(P::kBl1) : nt(pr(P::kBl1));
    part.push_back(InfFormula::disj({
        InfFormula::gf(BoolExpr::land({pr(P::kBl1), BoolExpr::land(all_pos)})),
        InfFormula::gf(BoolExpr::land({second_blame, BoolExpr::lor(some_ge1)})),
    }));
    disjuncts.push_back(InfFormula::conj(std::move(part)));
  }
  return InfFormula::implies(InfFormula::gf(pr(P::kBl1)), InfFormula::disj(std::move(disjuncts)));
}

InfFormula build_tick_objective() {
  return InfFormula::disj({InfFormula::gf(pr(P::kTick)), InfFormula::fg(nt(pr(P::kBl1)))});
}

InfFormula build_phi1(std::size_t n) {
  std::vector<InfFormula> all;
  for (std::size_t i = 0; i < n; ++i) all.push_back(InfFormula::gf(pr(2 + static_cast<int>(i))));
  return InfFormula::disj({InfFormula::fg(pr(0)), InfFormula::fg(pr(1)), InfFormula::conj(std::move(all))});
}

std::vector<std::string> phi1_prop_names(std::size_t n) {
  std::vector<std::string> v{"F1", "F2"};
  for (std::size_t i = 1; i <= n; ++i) v.push_back("I" + std::to_string(i));
  return v;
}

// Bits: F = 0; for alpha a (0-based): F_a, I_a, then I_{a,1..n}.
InfFormula build_phi2(std::size_t n, std::size_t m) {
  std::vector<InfFormula> ds{InfFormula::fg(pr(0))};
  for (std::size_t a = 0; a < m; ++a) {
    const int base = 1 + static_cast<int>(a * (n + 2));
    std::vector<InfFormula> part{InfFormula::fg(pr(base))};
    for (std::size_t i = 0; i < n; ++i) part.push_back(InfFormula::gf(pr(base + 2 + static_cast<int>(i))));
    part.push_back(InfFormula::gf(pr(base + 1)));
    ds.push_back(InfFormula::conj(std::move(part)));
  }
  return InfFormula::disj(std::move(ds));
}

std::vector<std::string> phi2_prop_names(std::size_t n, std::size_t m) {
  std::vector<std::string> v{"F"};
  for (std::size_t a = 1; a <= m; ++a) {
    v.push_back("F" + std::to_string(a));
    v.push_back("I" + std::to_string(a));
    for (std::size_t i = 1; i <= n; ++i) v.push_back("I" + std::to_string(a) + "_" + std::to_string(i));
  }
  return v;
}

std::pair<InfFormula, InfFormula> streett_elim_forms(std::size_t n) {
  std::vector<InfFormula> a, b;
  for (std::size_t x = 0; x < n; ++x) {
    a.push_back(InfFormula::disj({InfFormula::gf(pr(P::zero(x))), InfFormula::fg(pr(P::vstar(x)))}));
    b.push_back(InfFormula::gf(BoolExpr::lor({pr(P::zero(x)), pr(P::vstar(x))})));
  }
  return {InfFormula::conj(std::move(a)), InfFormula::conj(std::move(b))};
}

std::pair<bool, bool> streett_elim_check(std::size_t n, std::span<const Label> stem, std::span<const Label> cycle) {
  auto [a, b] = streett_elim_forms(n);
  return {eval_lasso(a, stem, cycle), eval_lasso(b, stem, cycle)};
}

}  // namespace tga
