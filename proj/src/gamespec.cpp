#include "tga/gamespec.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tga {

std::string SourceDiagnostic::str() const {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

namespace {

std::string join_errors(const std::vector<SourceDiagnostic>& errs) {
  std::string s;
  for (auto& e : errs) s += (s.empty() ? "" : "\n") + e.str();
  return s;
}

}  // namespace

GameSpecError::GameSpecError(std::vector<SourceDiagnostic> errs)
    : std::runtime_error(join_errors(errs)), errors_(std::move(errs)) {}

namespace {

constexpr std::uint32_t kMaxConstant = 10000;

enum class Tok { Ident, Number, Arrow, Colon, Dot, LBrace, RBrace, LParen, RParen, Bang, Amp, Le, End, Bad };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int col = 0;
};

struct Failure {
  SourceDiagnostic diag;
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_'; }

std::vector<Token> lex_line(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    const int col = static_cast<int>(i) + 1;
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Number, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    auto two = s.substr(i, 2);
    if (two == "->") {
      out.push_back({Tok::Arrow, "->", col});
      i += 2;
      continue;
    }
    if (two == "<=") {
      out.push_back({Tok::Le, "<=", col});
      i += 2;
      continue;
    }
    Tok k = Tok::Bad;
    switch (c) {
      case ':': k = Tok::Colon; break;
      case '.': k = Tok::Dot; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '!': k = Tok::Bang; break;
      case '&': k = Tok::Amp; break;
      default: break;
    }
    out.push_back({k, std::string(1, static_cast<char>(c)), col});
    ++i;
  }
  out.push_back({Tok::End, "", static_cast<int>(s.size()) + 1});
  return out;
}

const char* describe(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::Arrow: return "'->'";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Le: return "'<='";
    case Tok::End: return "end of line";
    case Tok::Bad: return "invalid character";
  }
  return "token";
}

class LineParser {
 public:
  LineParser(int line, std::vector<Token> toks) : line_(line), toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }
  Token take() {
    Token t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& t, std::string msg) const {
    int len = std::max<int>(1, static_cast<int>(t.text.size()));
    throw Failure{SourceDiagnostic{line_, t.col, len, std::move(msg)}};
  }

  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(peek(), std::string("expected ") + what + ", found " + found());
    return take();
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) fail(peek(), "expected '" + std::string(w) + "', found " + found());
    take();
  }
  void expect_end() {
    if (!at(Tok::End)) fail(peek(), std::string("unexpected ") + found());
  }
  std::string found() const {
    if (at(Tok::End)) return "end of line";
    if (at(Tok::Bad)) return "invalid character '" + peek().text + "'";
    return std::string(describe(peek().kind)) + " '" + peek().text + "'";
  }

  std::uint32_t number() {
    Token t = expect(Tok::Number, "a nonnegative integer");
    if (t.text.size() > 6 || std::stoul(t.text) > kMaxConstant)
      fail(t, "constant " + t.text + " exceeds the limit " + std::to_string(kMaxConstant));
    return static_cast<std::uint32_t>(std::stoul(t.text));
  }

  Constraint constraint(const TimedGameModel& m) {
    Constraint c = unary(m);
    while (at(Tok::Amp)) {
      take();
      c = Constraint::conj(c, unary(m));
    }
    return c;
  }

  int line() const { return line_; }

 private:
  ClockId clock(const TimedGameModel& m) {
    Token t = expect(Tok::Ident, "a clock name");
    auto x = m.find_clock(t.text);
    if (!x) fail(t, "undeclared clock " + t.text);
    return *x;
  }

  Constraint unary(const TimedGameModel& m) {
    if (depth_ > 200) fail(peek(), "constraint nested too deeply");
    if (at(Tok::Bang)) {
      take();
      ++depth_;
      Constraint c = Constraint::negate(unary(m));
      --depth_;
      return c;
    }
    if (at(Tok::LParen)) {
      take();
      ++depth_;
      Constraint c = constraint(m);
      --depth_;
      expect(Tok::RParen, "')'");
      return c;
    }
    if (at_word("true")) {
      take();
      return Constraint::top();
    }
    if (at(Tok::Number)) {
      std::uint32_t d = number();
      expect(Tok::Le, "'<='");
      return Constraint::lower(clock(m), d);
    }
    if (at(Tok::Ident)) {
      ClockId x = clock(m);
      expect(Tok::Le, "'<='");
      return Constraint::upper(x, number());
    }
    fail(peek(), std::string("expected a constraint, found ") + found());
  }

  int line_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

const std::set<std::string, std::less<>> kKeywords = {"game", "clocks", "p1-actions", "p2-actions", "loc",
                                                      "edge", "safe", "initial", "inv", "when", "reset", "true"};

struct Line {
  int number;
  std::vector<Token> toks;
};

// The two action-declaration keywords contain '-', which the lexer splits.
std::string head_word(const std::vector<Token>& t) {
  if (t.size() >= 4 && t[0].kind == Tok::Ident && (t[0].text == "p1" || t[0].text == "p2") && t[1].kind == Tok::Bad &&
      t[1].text == "-" && t[2].kind == Tok::Ident && t[2].text == "actions")
    return t[0].text + "-actions";
  return t[0].kind == Tok::Ident ? t[0].text : "";
}

std::string declarable(LineParser& p, const char* what) {
  Token t = p.expect(Tok::Ident, what);
  if (kKeywords.count(t.text)) p.fail(t, "'" + t.text + "' is a reserved word");
  return t.text;
}

}  // namespace

ParseOutcome parse_gamespec(std::string_view text) {
  ParseOutcome res;
  std::vector<Line> lines;
  {
    int n = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++n;
      auto toks = lex_line(text.substr(start, end - start));
      if (toks.size() > 1) lines.push_back({n, std::move(toks)});
      start = end + 1;
    }
  }

  TimedGameModel m;
  std::vector<LocId> safe;
  bool have_game = false, have_clocks = false;
  std::map<std::string, std::pair<int, int>, std::less<>> where;  // name -> first declaration
  auto error = [&](const Failure& f) { res.errors.push_back(f.diag); };

  // Pass 1: declarations, so later lines may refer to names declared further down.
  for (auto& ln : lines) {
    LineParser p(ln.number, ln.toks);
    const std::string head = head_word(ln.toks);
    try {
      auto declare = [&](const Token& at, const std::string& name, const char* kind) {
        auto [it, fresh] = where.try_emplace(name, ln.number, at.col);
        if (!fresh)
          p.fail(at, std::string(kind) + " " + name + " redeclares a name from line " + std::to_string(it->second.first));
      };
      if (head == "game") {
        p.take();
        if (have_game) p.fail(ln.toks[0], "duplicate game header");
        m.name = declarable(p, "a game name");
        p.expect_end();
        have_game = true;
      } else if (head == "clocks") {
        p.take();
        if (have_clocks) p.fail(ln.toks[0], "duplicate clocks declaration");
        have_clocks = true;
        if (p.at(Tok::End)) p.fail(p.peek(), "expected at least one clock");
        while (!p.at(Tok::End)) {
          Token t = p.peek();
          std::string n = declarable(p, "a clock name");
          declare(t, n, "clock");
          m.clocks.push_back(n);
        }
        if (m.clocks.size() > 8) p.fail(ln.toks[0], "at most 8 clocks are supported");
      } else if (head == "p1-actions" || head == "p2-actions") {
        Player owner = head == "p1-actions" ? Player::One : Player::Two;
        p.take();
        p.take();
        p.take();
        while (!p.at(Tok::End)) {
          Token t = p.peek();
          std::string n = declarable(p, "an action name");
          declare(t, n, "action");
          m.actions.push_back(Action{n, owner});
        }
      } else if (head == "loc") {
        p.take();
        Token t = p.peek();
        std::string n = declarable(p, "a location name");
        declare(t, n, "location");
        m.locations.push_back(Location{n, Constraint::top(), false});
      } else if (head == "edge" || head == "safe") {
        // second pass
      } else {
        p.fail(ln.toks[0], "expected a statement (game, clocks, p1-actions, p2-actions, loc, edge, safe), found " +
                               p.found());
      }
    } catch (const Failure& f) {
      error(f);
    }
  }

  // Pass 2: bodies that reference declared names.
  std::uint32_t loc_index = 0;
  std::set<LocId> safe_set;
  int initial_count = 0;
  bool have_safe = false;
  for (auto& ln : lines) {
    LineParser p(ln.number, ln.toks);
    const std::string head = head_word(ln.toks);
    try {
      auto location = [&]() {
        Token t = p.expect(Tok::Ident, "a location name");
        auto l = m.find_location(t.text);
        if (!l) p.fail(t, "undeclared location " + t.text);
        return *l;
      };
      if (head == "loc") {
        p.take();
        Token name = p.take();
        auto l = m.find_location(name.text);
        // Skip locations that failed to declare in pass 1.
        if (!l || l->v != loc_index) continue;
        ++loc_index;
        Location& L = m.locations[l->v];
        if (p.at_word("initial")) {
          p.take();
          L.initial = true;
          if (++initial_count > 1) p.fail(name, "more than one initial location");
        }
        p.expect_word("inv");
        L.invariant = p.constraint(m);
        p.expect_end();
      } else if (head == "edge") {
        p.take();
        Edge e;
        e.source = location();
        p.expect(Tok::Arrow, "'->'");
        e.target = location();
        p.expect(Tok::Colon, "':'");
        Token pl = p.take();
        Player owner;
        if ((pl.kind == Tok::Number && pl.text == "1") || (pl.kind == Tok::Ident && pl.text == "p1"))
          owner = Player::One;
        else if ((pl.kind == Tok::Number && pl.text == "2") || (pl.kind == Tok::Ident && pl.text == "p2"))
          owner = Player::Two;
        else
          p.fail(pl, "expected a player (p1 or p2)");
        p.expect(Tok::Dot, "'.'");
        Token at = p.expect(Tok::Ident, "an action name");
        auto a = m.find_action(at.text);
        if (!a) p.fail(at, "undeclared action " + at.text);
        if (m.action(*a).owner != owner)
          p.fail(at, "action " + at.text + " belongs to player " + std::to_string(index_of(m.action(*a).owner)));
        e.action = *a;
        if (p.at_word("when")) {
          p.take();
          e.guard = p.constraint(m);
        }
        if (p.at_word("reset")) {
          p.take();
          p.expect(Tok::LBrace, "'{'");
          while (!p.at(Tok::RBrace)) {
            Token c = p.expect(Tok::Ident, "a clock name or '}'");
            auto x = m.find_clock(c.text);
            if (!x) p.fail(c, "undeclared clock " + c.text);
            e.reset.push_back(*x);
          }
          p.take();
          std::sort(e.reset.begin(), e.reset.end());
          e.reset.erase(std::unique(e.reset.begin(), e.reset.end()), e.reset.end());
        }
        p.expect_end();
        m.edges.push_back(std::move(e));
      } else if (head == "safe") {
        p.take();
        have_safe = true;
        while (!p.at(Tok::End)) safe_set.insert(location());
      }
    } catch (const Failure& f) {
      error(f);
    }
  }
  if (!have_game) res.errors.push_back({1, 1, 1, "missing 'game <name>' header"});
  if (!have_clocks) res.errors.push_back({1, 1, 1, "missing 'clocks' declaration"});
  if (m.locations.empty()) res.errors.push_back({1, 1, 1, "no locations declared"});
  if (!have_safe) res.errors.push_back({1, 1, 1, "missing 'safe' declaration"});
  std::stable_sort(res.errors.begin(), res.errors.end(),
                   [](auto& a, auto& b) { return std::tie(a.line, a.column) < std::tie(b.line, b.column); });
  if (!res.errors.empty()) return res;
  if (initial_count == 0) m.locations[0].initial = true;
  safe.assign(safe_set.begin(), safe_set.end());
  res.warnings = validate_model(m);
  res.spec = GameSpec{std::move(m), std::move(safe)};
  return res;
}

GameSpec parse_gamespec_or_throw(std::string_view text) {
  auto r = parse_gamespec(text);
  if (!r.ok()) throw GameSpecError(std::move(r.errors));
  return std::move(*r.spec);
}

GameSpec load_gamespec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path + ": file not found");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_gamespec_or_throw(ss.str());
}

Constraint parse_constraint(std::string_view text, const TimedGameModel& m) {
  LineParser p(1, lex_line(text));
  try {
    Constraint c = p.constraint(m);
    p.expect_end();
    return c;
  } catch (const Failure& f) {
    throw GameSpecError({f.diag});
  }
}

std::string serialize_gamespec(const GameSpec& g) {
  const TimedGameModel& m = g.model;
  std::ostringstream o;
  o << "game " << m.name << "\n";
  o << "clocks";
  for (auto& c : m.clocks) o << " " << c;
  o << "\n";
  // Consecutive runs per owner keep action ids stable across a round trip.
  for (std::size_t i = 0; i < m.actions.size();) {
    const Player p = m.actions[i].owner;
    o << (p == Player::One ? "p1-actions" : "p2-actions");
    for (; i < m.actions.size() && m.actions[i].owner == p; ++i) o << " " << m.actions[i].name;
    o << "\n";
  }
  for (auto& l : m.locations)
    o << "loc " << l.name << (l.initial ? " initial" : "") << " inv " << to_string(l.invariant, m.clocks) << "\n";
  for (auto& e : m.edges) {
    o << "edge " << m.location(e.source).name << " -> " << m.location(e.target).name << " : "
      << (m.action(e.action).owner == Player::One ? "p1." : "p2.") << m.action(e.action).name << " when "
      << to_string(e.guard, m.clocks) << " reset {";
    for (std::size_t i = 0; i < e.reset.size(); ++i) o << (i ? " " : "") << m.clocks[e.reset[i].v];
    o << "}\n";
  }
  o << "safe";
  for (LocId l : g.safe) o << " " << m.location(l).name;
  o << "\n";
  return o.str();
}

}  // namespace tga
