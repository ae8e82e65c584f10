#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace tga {

using Label = std::uint64_t;  // one bit per atomic proposition

// Proposition bits used by the game arenas.
struct PropLayout {
  static constexpr int kBl1 = 0;
  static constexpr int kTick = 1;
  static constexpr int kSafe = 63;  // location is in the safe set
  static constexpr int zero(std::size_t x) { return 2 + 5 * static_cast<int>(x); }       // x = 0 now
  static constexpr int vpos(std::size_t x) { return 3 + 5 * static_cast<int>(x); }       // V>0(x)
  static constexpr int vge1(std::size_t x) { return 4 + 5 * static_cast<int>(x); }       // V>=1(x)
  static constexpr int vstar(std::size_t x) { return 5 + 5 * static_cast<int>(x); }      // V*>max(x)
  static constexpr int big(std::size_t x) { return 6 + 5 * static_cast<int>(x); }        // x > c_x now
  static std::string name(int bit, std::span<const std::string> clocks);
};

using PropNamer = std::function<std::string(int)>;
PropNamer game_prop_namer(std::vector<std::string> clocks);
PropNamer indexed_prop_namer(std::vector<std::string> names);

// Boolean combination of propositions, evaluated on a single label.
class BoolExpr {
 public:
  enum class Kind : std::uint8_t { Const, Prop, Not, And, Or };

  static BoolExpr constant(bool v);
  static BoolExpr prop(int bit);
  static BoolExpr lnot(BoolExpr e);
  static BoolExpr land(std::vector<BoolExpr> es);  // empty = true
  static BoolExpr lor(std::vector<BoolExpr> es);   // empty = false

  Kind kind() const { return kind_; }
  bool value() const { return value_; }
  int bit() const { return bit_; }
  const std::vector<BoolExpr>& kids() const { return kids_; }

  bool eval(Label l) const;
  bool is_const() const { return kind_ == Kind::Const; }
  std::string str(const PropNamer& name) const;

  friend bool operator==(const BoolExpr&, const BoolExpr&) = default;

 private:
  Kind kind_ = Kind::Const;
  bool value_ = true;
  int bit_ = 0;
  std::vector<BoolExpr> kids_;
};

// Positive combination of GF(p) ("infinitely often") and FG(p) ("eventually always").
class InfFormula {
 public:
  enum class Kind : std::uint8_t { Const, GF, FG, And, Or };

  static InfFormula constant(bool v);
  static InfFormula gf(BoolExpr p);
  static InfFormula fg(BoolExpr p);
  static InfFormula conj(std::vector<InfFormula> fs);
  static InfFormula disj(std::vector<InfFormula> fs);
  static InfFormula implies(InfFormula a, InfFormula b) { return disj({negate(a), std::move(b)}); }
  static InfFormula negate(const InfFormula& f);  // by duality: not GF p = FG not p

  Kind kind() const { return kind_; }
  bool value() const { return value_; }
  const BoolExpr& arg() const { return arg_; }
  const std::vector<InfFormula>& kids() const { return kids_; }

  // Decides the formula given the truth of each GF/FG argument on the recurring part.
  bool eval(const std::function<bool(const BoolExpr&)>& somewhere,
            const std::function<bool(const BoolExpr&)>& everywhere) const;
  std::string str(const PropNamer& name) const;
  std::size_t top_level_disjuncts() const { return kind_ == Kind::Or ? kids_.size() : 1; }

  friend bool operator==(const InfFormula&, const InfFormula&) = default;

 private:
  Kind kind_ = Kind::Const;
  bool value_ = true;
  BoolExpr arg_;
  std::vector<InfFormula> kids_;
};

// Ultimately periodic label sequence: stem then cycle repeated forever.
bool eval_lasso(const InfFormula& f, std::span<const Label> stem, std::span<const Label> cycle);

// Receptiveness objectives over the game proposition layout for n clocks.
InfFormula build_phi_dagger(std::size_t n);
// Disjunction over clock subsets. The second recurrence clause uses bl1 = false unless
// `literal_as_printed` asks for bl1 = true.
InfFormula build_phi_star(std::size_t n, bool literal_as_printed = false);
// GF tick or FG not bl1; staying in the safe set is enforced on the arena instead.
InfFormula build_tick_objective();

// Generic families over indexed propositions, for memory-bound checks.
// phi1(n) = FG F1 or FG F2 or AND_i GF I_i, props F1=0, F2=1, I_i=2+i.
InfFormula build_phi1(std::size_t n);
std::vector<std::string> phi1_prop_names(std::size_t n);
// phi2(n,m) = FG F or OR_a (FG F_a and AND_i GF I_{a,i} and GF I_a).
InfFormula build_phi2(std::size_t n, std::size_t m);
std::vector<std::string> phi2_prop_names(std::size_t n, std::size_t m);

// Both sides of the escape-or-reset equivalence for n clocks:
// first = AND_x (GF x=0 or FG V*(x)), second = AND_x GF (x=0 or V*(x)).
std::pair<InfFormula, InfFormula> streett_elim_forms(std::size_t n);
std::pair<bool, bool> streett_elim_check(std::size_t n, std::span<const Label> stem, std::span<const Label> cycle);

}  // namespace tga
