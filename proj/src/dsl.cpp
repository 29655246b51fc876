#include "ilconv/dsl.hpp"

#include "ilconv/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace ilconv::dsl {

namespace {

constexpr std::uint32_t kMaxCell = 65535;
constexpr std::uint32_t kMaxExtract = 100000;
constexpr std::size_t kMaxErrors = 64;

enum class Tok {
  Ident,
  Number,
  Newline,
  Arrow,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Semi,
  Slash,
  Eq,
  Bang,
  Amp,
  Pipe,
  Caret,
  Minus,
  End,
  Bad,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::uint32_t line = 0;
  std::uint32_t col = 0;
};

// Newlines are statement terminators only outside braces; inside a brace
// block they are whitespace, which is what lets cellwise and table blocks
// span physical lines.
struct LexResult {
  std::vector<Token> tokens;
  std::optional<Token> unterminated_brace;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_part(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

LexResult lex(std::string_view text) {
  LexResult out;
  std::uint32_t line = 1, col = 1;
  std::size_t i = 0;
  int depth = 0;
  std::vector<Token> open_braces;
  auto push = [&](Tok k, std::string t, std::uint32_t l, std::uint32_t c) {
    out.tokens.push_back(Token{k, std::move(t), l, c});
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      if (depth == 0) push(Tok::Newline, "\n", line, col);
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    const std::uint32_t l = line, at = col;
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (ident_part(text[j]) ||
              (text[j] == '-' && j + 1 < text.size() && ident_part(text[j + 1]))))
        ++j;
      push(Tok::Ident, std::string(text.substr(i, j - i)), l, at);
      col += static_cast<std::uint32_t>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      push(Tok::Number, std::string(text.substr(i, j - i)), l, at);
      col += static_cast<std::uint32_t>(j - i);
      i = j;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      push(Tok::Arrow, "->", l, at);
      col += 2;
      i += 2;
      continue;
    }
    Tok k = Tok::Bad;
    switch (c) {
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case ';': k = Tok::Semi; break;
      case '/': k = Tok::Slash; break;
      case '=': k = Tok::Eq; break;
      case '!': k = Tok::Bang; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Pipe; break;
      case '^': k = Tok::Caret; break;
      case '-': k = Tok::Minus; break;
      default: break;
    }
    push(k, std::string(1, c), l, at);
    if (k == Tok::LBrace) {
      ++depth;
      open_braces.push_back(out.tokens.back());
    } else if (k == Tok::RBrace && depth > 0) {
      --depth;
      open_braces.pop_back();
    }
    ++col;
    ++i;
  }
  if (depth > 0) out.unterminated_brace = open_braces.front();
  push(Tok::End, "", line, col);
  return out;
}

const std::set<std::string_view>& reserved_words() {
  static const std::set<std::string_view> words = {
      "ideal",      "space",     "set",
      "sequence",   "query",     "cellwise",
      "table",      "points",    "row",
      "default",    "const",     "approach",
      "integer-ramp", "in",      "to",
      "at",         "under",     "k",
      "level",      "int",       "rat",
      "irr",        "fin",       "density0",
      "decomposition", "example1", "harmonic",
      "all",        "empty",     "D",
      "finite",     "converges", "stat-converges",
      "i-converges", "i-star-converges", "extract",
      "refute-subsequence", "ap-promote", "isolated-promote",
      "separate",   "density",   "member",
      "axioms",     "metric",    "partial",
      "metric-like",
  };
  return words;
}

// Unwinds one statement after an error has been recorded.
struct Abort {};

struct Parser {
  const std::vector<Token>& toks;
  std::size_t pos = 0;
  std::vector<ParseError>& errors;
  Scenario& sc;
  std::set<std::string> names;    // all declared names, one namespace
  std::set<std::string> poisoned; // declarations that already failed; a
                                  // reference to one aborts its statement
                                  // without piling on a second error

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t k = pos + ahead;
    return k < toks.size() ? toks[k] : toks.back();
  }
  const Token& take() {
    const Token& t = peek();
    if (t.kind != Tok::End) ++pos;
    return t;
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const {
    return peek().kind == Tok::Ident && peek().text == w;
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos;
    return true;
  }

  [[noreturn]] void fail(const Token& t, std::string message) {
    fail(t, std::move(message), t.text);
  }
  [[noreturn]] void fail(const Token& t, std::string message,
                         std::string token) {
    if (errors.size() < kMaxErrors)
      errors.push_back(
          ParseError{t.line, t.col, std::move(message), std::move(token)});
    throw Abort{};
  }

  void sync() {
    while (!at(Tok::Newline) && !at(Tok::End)) ++pos;
  }

  const Token& expect(Tok k, std::string what) {
    if (!at(k)) fail(peek(), "expected " + std::move(what));
    return toks[pos++];
  }

  void end_of_statement() {
    if (!at(Tok::Newline) && !at(Tok::End))
      fail(peek(), "trailing tokens on the line");
  }

  std::uint64_t to_u64(const Token& t) {
    // Number tokens are digit strings; anything beyond 20 digits or above
    // the 64-bit line is refused rather than wrapped.
    if (t.text.size() > 20) fail(t, "integer literal out of range");
    std::uint64_t v = 0;
    for (char c : t.text) {
      const std::uint64_t d = static_cast<std::uint64_t>(c - '0');
      if (v > (UINT64_MAX - d) / 10) fail(t, "integer literal out of range");
      v = v * 10 + d;
    }
    return v;
  }

  std::uint32_t cell_number(const Token& t) {
    const std::uint64_t v = to_u64(t);
    if (v == 0) fail(t, "cell indices start at 1");
    if (v > kMaxCell) fail(t, "cell index too large");
    return static_cast<std::uint32_t>(v);
  }

  // Non-negative rational literal: NUMBER [ '/' NUMBER ], reduced and
  // non-integral when the slash form is used (point sort). Table entries use
  // signed_rational below instead.
  mls::PointValue point() {
    const Token& sort = peek();
    if (sort.kind == Tok::Minus) fail(sort, "points are non-negative");
    if (sort.kind != Tok::Ident) fail(sort, "expected a point");
    if (sort.text == "int") {
      ++pos;
      if (at(Tok::Minus)) fail(peek(), "points are non-negative");
      const Token& n = expect(Tok::Number, "a number");
      return mls::PointValue::integer(to_u64(n));
    }
    if (sort.text == "rat") {
      ++pos;
      if (at(Tok::Minus)) fail(peek(), "points are non-negative");
      const Token& num = expect(Tok::Number, "a number");
      expect(Tok::Slash, "'/'");
      const Token& den = expect(Tok::Number, "a number");
      const BigInt p(num.text), q(den.text);
      if (q == 0) fail(den, "zero denominator");
      if (boost::multiprecision::gcd(p, q) != 1)
        fail(num, "fraction not reduced");
      if (q == 1) fail(num, "integral value must use the integer sort");
      return mls::PointValue::rational(Rational(p, q));
    }
    if (sort.text == "irr") {
      ++pos;
      if (peek().kind != Tok::Ident) fail(peek(), "expected a symbol");
      return mls::PointValue::irrational(take().text);
    }
    fail(sort, "unknown point sort");
  }

  Rational signed_rational() {
    bool neg = accept(Tok::Minus);
    const Token& num = expect(Tok::Number, "a number");
    BigInt p(num.text);
    BigInt q(1);
    if (accept(Tok::Slash)) {
      const Token& den = expect(Tok::Number, "a number");
      q = BigInt(den.text);
      if (q == 0) fail(den, "zero denominator");
    }
    if (neg) p = -p;
    return Rational(p, q);
  }

  std::string declared_name() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail(t, "expected a name");
    if (reserved_words().count(t.text)) fail(t, "reserved name");
    if (names.count(t.text)) fail(t, "duplicate declaration");
    ++pos;
    return t.text;
  }

  // A failed declaration's name was consumed before the failure; skip any
  // statement that leans on it, without a second report.
  [[noreturn]] void abort_quietly() { throw Abort{}; }

  // Marks a declaration's name poisoned if its statement unwinds.
  struct Poison {
    Parser& p;
    std::string name;
    bool armed = true;
    Poison(Parser& parser, std::string n) : p(parser), name(std::move(n)) {}
    void disarm() { armed = false; }
    ~Poison() {
      if (armed) p.poisoned.insert(name);
    }
  };

  // ---- set expressions: ! > & > ^ > | ------------------------------------

  natset::SymbolicNatSet set_atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      ++pos;
      auto e = set_or();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (t.kind != Tok::Ident) fail(t, "expected a set expression");
    if (t.text == "all") {
      ++pos;
      return natset::SymbolicNatSet::all();
    }
    if (t.text == "empty") {
      ++pos;
      return natset::SymbolicNatSet::empty();
    }
    if (t.text == "D") {
      ++pos;
      expect(Tok::LParen, "'('");
      const Token& n = expect(Tok::Number, "a number");
      const std::uint32_t j = cell_number(n);
      expect(Tok::RParen, "')'");
      return natset::SymbolicNatSet::cell(j);
    }
    if (t.text == "finite") {
      ++pos;
      expect(Tok::LBrace, "'{'");
      std::vector<std::uint64_t> elems;
      if (!at(Tok::RBrace)) {
        do {
          const Token& n = expect(Tok::Number, "a number");
          const std::uint64_t v = to_u64(n);
          if (v == 0) fail(n, "naturals start at 1");
          elems.push_back(v);
        } while (accept(Tok::Comma));
      }
      expect(Tok::RBrace, "'}'");
      return natset::SymbolicNatSet::finite(std::move(elems));
    }
    if (const auto* named = sc.find_set(t.text)) {
      ++pos;
      return *named;
    }
    if (poisoned.count(t.text)) abort_quietly();
    fail(t, "unknown set name");
  }

  natset::SymbolicNatSet set_unary() {
    if (accept(Tok::Bang)) return set_unary().complement();
    return set_atom();
  }
  natset::SymbolicNatSet set_and() {
    auto e = set_unary();
    while (accept(Tok::Amp)) e = e.intersect(set_unary());
    return e;
  }
  natset::SymbolicNatSet set_xor() {
    auto e = set_and();
    while (accept(Tok::Caret)) e = e.symmetric_difference(set_and());
    return e;
  }
  natset::SymbolicNatSet set_or() {
    auto e = set_xor();
    while (accept(Tok::Pipe)) e = e.unite(set_xor());
    return e;
  }

  // ---- declarations -------------------------------------------------------

  void decl_ideal() {
    const std::string name = declared_name();
    Poison guard(*this, name);
    expect(Tok::Eq, "'='");
    const Token& kind = peek();
    if (kind.kind != Tok::Ident) fail(kind, "unknown ideal kind");
    ideals::Ideal ideal = ideals::Ideal::fin();
    if (kind.text == "fin")
      ideal = ideals::Ideal::fin();
    else if (kind.text == "density0")
      ideal = ideals::Ideal::density_zero();
    else if (kind.text == "decomposition")
      ideal = ideals::Ideal::decomposition();
    else
      fail(kind, "unknown ideal kind");
    ++pos;
    end_of_statement();
    guard.disarm();
    names.insert(name);
    sc.ideals.emplace_back(name, ideal);
  }

  void decl_space() {
    const std::string name = declared_name();
    Poison guard(*this, name);
    expect(Tok::Eq, "'='");
    const Token& form = peek();
    if (form.kind != Tok::Ident) fail(form, "unknown space form");
    if (form.text == "example1") {
      ++pos;
      end_of_statement();
      guard.disarm();
      names.insert(name);
      sc.spaces.emplace_back(name, mls::Space::example1());
      return;
    }
    if (form.text == "harmonic") {
      ++pos;
      end_of_statement();
      guard.disarm();
      names.insert(name);
      sc.spaces.emplace_back(name, mls::Space::harmonic());
      return;
    }
    if (form.text != "table") fail(form, "unknown space form");
    ++pos;
    expect(Tok::LBrace, "'{'");
    const Token& points_kw = peek();
    if (!at_word("points")) fail(points_kw, "expected 'points'");
    ++pos;
    std::vector<mls::PointValue> pts;
    std::vector<const Token*> pt_toks;
    do {
      pt_toks.push_back(&peek());
      pts.push_back(point());
    } while (accept(Tok::Comma));
    expect(Tok::Semi, "';'");
    if (pts.empty()) fail(points_kw, "empty table");
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = 0; b < a; ++b)
        if (pts[a] == pts[b]) fail(*pt_toks[a], "duplicate table point");
    std::vector<std::vector<Rational>> matrix;
    std::vector<const Token*> row_toks;
    while (at_word("row")) {
      row_toks.push_back(&peek());
      ++pos;
      std::vector<Rational> row;
      do row.push_back(signed_rational());
      while (accept(Tok::Comma));
      matrix.push_back(std::move(row));
      if (!accept(Tok::Semi)) break;
    }
    const Token& close = peek();
    expect(Tok::RBrace, "'}'");
    end_of_statement();
    if (matrix.size() != pts.size())
      fail(close, "table matrix is not square", close.text);
    for (std::size_t r = 0; r < matrix.size(); ++r)
      if (matrix[r].size() != pts.size())
        fail(*row_toks[r], "table matrix is not square");
    for (std::size_t r = 0; r < matrix.size(); ++r)
      for (std::size_t c = 0; c < r; ++c)
        if (matrix[r][c] != matrix[c][r])
          fail(*row_toks[r], "table is not symmetric");
    guard.disarm();
    names.insert(name);
    sc.spaces.emplace_back(name,
                           mls::Space::from_table(name, std::move(pts),
                                                  std::move(matrix)));
  }

  void decl_set() {
    const std::string name = declared_name();
    Poison guard(*this, name);
    expect(Tok::Eq, "'='");
    auto value = set_or();
    end_of_statement();
    guard.disarm();
    names.insert(name);
    sc.sets.emplace_back(name, std::move(value));
  }

  void decl_sequence() {
    const std::string name = declared_name();
    Poison guard(*this, name);
    if (!at_word("in")) fail(peek(), "expected 'in'");
    ++pos;
    const Token& space_tok = peek();
    if (space_tok.kind != Tok::Ident) fail(space_tok, "unknown space name");
    if (poisoned.count(space_tok.text)) abort_quietly();
    const auto space = sc.resolve_space(space_tok.text);
    if (!space) fail(space_tok, "unknown space name");
    ++pos;
    expect(Tok::Eq, "'='");
    if (!at_word("cellwise")) fail(peek(), "expected 'cellwise'");
    const Token& cw = peek();
    ++pos;
    expect(Tok::LBrace, "'{'");
    std::map<std::uint32_t, mls::PointValue> overrides;
    std::optional<conv::TailRule> tail;
    while (!at(Tok::RBrace)) {
      if (tail) fail(peek(), "entries after the default tail");
      if (at_word("default")) {
        ++pos;
        const Token& rule = peek();
        if (rule.kind != Tok::Ident) fail(rule, "unknown tail rule");
        if (rule.text == "const") {
          ++pos;
          const Token& pt = peek();
          auto p = point();
          if (!space->in_sort(p)) fail(pt, "point outside the space");
          tail = conv::TailRule::const_point(std::move(p));
        } else if (rule.text == "integer-ramp") {
          ++pos;
          if (!space->integer_ramp_valid())
            fail(rule, "space does not carry all integer points");
          tail = conv::TailRule::integer_ramp();
        } else if (rule.text == "approach") {
          ++pos;
          const Token& pt = peek();
          auto p = point();
          if (!space->approach_valid(p))
            fail(pt, "no approach tail around this center");
          tail = conv::TailRule::approach(std::move(p));
        } else {
          fail(rule, "unknown tail rule");
        }
      } else {
        const Token& cell_tok = expect(Tok::Number, "a cell index");
        const std::uint32_t j = cell_number(cell_tok);
        if (overrides.count(j)) fail(cell_tok, "duplicate cell override");
        expect(Tok::Arrow, "'->'");
        const Token& pt = peek();
        auto p = point();
        if (!space->in_sort(p)) fail(pt, "point outside the space");
        overrides.emplace(j, std::move(p));
      }
      if (!accept(Tok::Semi)) break;
    }
    const Token& close = peek();
    expect(Tok::RBrace, "'}'");
    end_of_statement();
    if (!tail) fail(close, "expected 'default' tail entry", close.text);
    try {
      conv::CellSequence seq(*space, std::move(overrides), std::move(*tail));
      guard.disarm();
      names.insert(name);
      sc.sequences.emplace_back(name, std::move(seq));
    } catch (const Error& e) {
      fail(cw, e.what(), cw.text);
    }
  }

  // ---- queries ------------------------------------------------------------

  std::string sequence_ref() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && poisoned.count(t.text)) abort_quietly();
    if (t.kind != Tok::Ident || !sc.find_sequence(t.text))
      fail(t, "unknown sequence name");
    ++pos;
    return t.text;
  }
  std::string ideal_ref() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && poisoned.count(t.text)) abort_quietly();
    if (t.kind != Tok::Ident || !sc.resolve_ideal(t.text))
      fail(t, "unknown ideal name");
    ++pos;
    return t.text;
  }
  std::string space_ref() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && poisoned.count(t.text)) abort_quietly();
    if (t.kind != Tok::Ident || !sc.resolve_space(t.text))
      fail(t, "unknown space name");
    ++pos;
    return t.text;
  }
  mls::PointValue point_in(const mls::Space& space) {
    const Token& pt = peek();
    auto p = point();
    if (!space.in_sort(p)) fail(pt, "point outside the space");
    return p;
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) fail(peek(), "expected '" + std::string(w) + "'");
    ++pos;
  }

  void parse_query() {
    const Token& kw = peek();
    if (kw.kind != Tok::Ident) fail(kw, "unknown query kind");
    static const std::map<std::string_view, QueryKind> kinds = {
        {"converges", QueryKind::Converges},
        {"stat-converges", QueryKind::StatConverges},
        {"i-converges", QueryKind::IConverges},
        {"i-star-converges", QueryKind::IStarConverges},
        {"extract", QueryKind::Extract},
        {"refute-subsequence", QueryKind::RefuteSubsequence},
        {"ap-promote", QueryKind::ApPromote},
        {"isolated-promote", QueryKind::IsolatedPromote},
        {"separate", QueryKind::Separate},
        {"density", QueryKind::Density},
        {"member", QueryKind::Member},
        {"axioms", QueryKind::Axioms},
    };
    const auto it = kinds.find(kw.text);
    if (it == kinds.end()) fail(kw, "unknown query kind");
    ++pos;
    Query q;
    q.kind = it->second;
    switch (q.kind) {
      case QueryKind::Converges:
      case QueryKind::StatConverges: {
        q.sequence = sequence_ref();
        expect_word("to");
        q.point = point_in(sc.find_sequence(q.sequence)->space());
        break;
      }
      case QueryKind::IConverges:
      case QueryKind::IStarConverges:
      case QueryKind::RefuteSubsequence:
      case QueryKind::ApPromote:
      case QueryKind::IsolatedPromote: {
        q.sequence = sequence_ref();
        expect_word("to");
        q.point = point_in(sc.find_sequence(q.sequence)->space());
        expect_word("under");
        q.ideal = ideal_ref();
        break;
      }
      case QueryKind::Extract: {
        q.sequence = sequence_ref();
        expect_word("to");
        q.point = point_in(sc.find_sequence(q.sequence)->space());
        expect_word("k");
        const Token& n = expect(Tok::Number, "a number");
        const std::uint64_t v = to_u64(n);
        if (v == 0 || v > kMaxExtract) fail(n, "count out of range");
        q.count = static_cast<std::uint32_t>(v);
        if (at_word("under")) {
          ++pos;
          q.ideal = ideal_ref();
        }
        break;
      }
      case QueryKind::Separate: {
        q.space = space_ref();
        expect_word("at");
        q.point = point_in(*sc.resolve_space(q.space));
        break;
      }
      case QueryKind::Density: {
        q.set = set_or();
        break;
      }
      case QueryKind::Member: {
        q.ideal = ideal_ref();
        q.set = set_or();
        break;
      }
      case QueryKind::Axioms: {
        q.space = space_ref();
        if (at_word("level")) {
          ++pos;
          const Token& lvl = peek();
          if (lvl.kind != Tok::Ident) fail(lvl, "unknown axiom level");
          if (lvl.text == "metric-like")
            q.level = AxiomLevel::MetricLike;
          else if (lvl.text == "partial")
            q.level = AxiomLevel::Partial;
          else if (lvl.text == "metric")
            q.level = AxiomLevel::Metric;
          else
            fail(lvl, "unknown axiom level");
          ++pos;
        }
        break;
      }
    }
    end_of_statement();
    sc.queries.push_back(std::move(q));
  }

  void statement() {
    const Token& kw = peek();
    if (kw.kind != Tok::Ident)
      fail(kw, "expected a declaration or query");
    if (kw.text == "ideal") {
      ++pos;
      decl_ideal();
    } else if (kw.text == "space") {
      ++pos;
      decl_space();
    } else if (kw.text == "set") {
      ++pos;
      decl_set();
    } else if (kw.text == "sequence") {
      ++pos;
      decl_sequence();
    } else if (kw.text == "query") {
      ++pos;
      parse_query();
    } else {
      fail(kw, "expected a declaration or query");
    }
  }

  void file() {
    while (true) {
      while (accept(Tok::Newline)) {
      }
      if (at(Tok::End)) break;
      try {
        statement();
      } catch (const Abort&) {
        sync();
      }
    }
  }
};

} // namespace

std::optional<ideals::Ideal> Scenario::resolve_ideal(
    std::string_view name) const {
  for (const auto& [n, v] : ideals)
    if (n == name) return v;
  if (name == "fin") return ideals::Ideal::fin();
  if (name == "density0") return ideals::Ideal::density_zero();
  if (name == "decomposition") return ideals::Ideal::decomposition();
  return std::nullopt;
}

std::optional<mls::Space> Scenario::resolve_space(std::string_view name) const {
  for (const auto& [n, v] : spaces)
    if (n == name) return v;
  if (name == "example1") return mls::Space::example1();
  if (name == "harmonic") return mls::Space::harmonic();
  return std::nullopt;
}

const natset::SymbolicNatSet* Scenario::find_set(std::string_view name) const {
  for (const auto& [n, v] : sets)
    if (n == name) return &v;
  return nullptr;
}

const conv::CellSequence* Scenario::find_sequence(std::string_view name) const {
  for (const auto& [n, v] : sequences)
    if (n == name) return &v;
  return nullptr;
}

ParseResult parse(std::string_view text) {
  ParseResult out;
  const LexResult lexed = lex(text);
  Scenario sc;
  sc.source.assign(text);
  Parser p{lexed.tokens, 0, out.errors, sc, {}, {}};
  p.file();
  if (lexed.unterminated_brace && out.errors.size() < kMaxErrors) {
    const Token& t = *lexed.unterminated_brace;
    out.errors.push_back(
        ParseError{t.line, t.col, "unterminated brace block", t.text});
  }
  if (out.errors.empty()) out.scenario = std::move(sc);
  return out;
}

SetExprResult parse_set_expr(std::string_view text) {
  SetExprResult out;
  std::vector<ParseError> errors;
  const LexResult lexed = lex(text);
  Scenario sc;
  Parser p{lexed.tokens, 0, errors, sc, {}, {}};
  try {
    auto value = p.set_or();
    while (p.accept(Tok::Newline)) {
    }
    if (!p.at(Tok::End))
      p.fail(p.peek(), "trailing tokens after the expression");
    out.set = std::move(value);
  } catch (const Abort&) {
    out.error = errors.front();
  }
  return out;
}

// ---- canonical rendering ----------------------------------------------

namespace {

std::string render_point_list(const std::vector<mls::PointValue>& pts) {
  std::ostringstream os;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) os << ", ";
    os << pts[i].to_expr();
  }
  return os.str();
}

std::string render_space_decl(const std::string& name,
                              const mls::Space& space) {
  if (space.name() == "example1") return "space " + name + " = example1";
  if (space.name() == "harmonic") return "space " + name + " = harmonic";
  // reconstruct the table from the carrier sample and the distance
  std::ostringstream os;
  os << "space " << name << " = table { points "
     << render_point_list(space.sample());
  for (const auto& x : space.sample()) {
    os << "; row ";
    bool first = true;
    for (const auto& y : space.sample()) {
      if (!first) os << ", ";
      first = false;
      os << to_string(space.delta(x, y));
    }
  }
  os << " }";
  return os.str();
}

const char* level_word(AxiomLevel level) {
  switch (level) {
    case AxiomLevel::MetricLike: return "metric-like";
    case AxiomLevel::Partial: return "partial";
    default: return "metric";
  }
}

} // namespace

std::string render_query(const Query& q) {
  std::ostringstream os;
  os << "query ";
  const auto to_clause = [&] { os << q.sequence << " to " << q.point->to_expr(); };
  switch (q.kind) {
    case QueryKind::Converges:
      os << "converges ";
      to_clause();
      break;
    case QueryKind::StatConverges:
      os << "stat-converges ";
      to_clause();
      break;
    case QueryKind::IConverges:
      os << "i-converges ";
      to_clause();
      os << " under " << q.ideal;
      break;
    case QueryKind::IStarConverges:
      os << "i-star-converges ";
      to_clause();
      os << " under " << q.ideal;
      break;
    case QueryKind::Extract:
      os << "extract ";
      to_clause();
      os << " k " << q.count;
      if (!q.ideal.empty()) os << " under " << q.ideal;
      break;
    case QueryKind::RefuteSubsequence:
      os << "refute-subsequence ";
      to_clause();
      os << " under " << q.ideal;
      break;
    case QueryKind::ApPromote:
      os << "ap-promote ";
      to_clause();
      os << " under " << q.ideal;
      break;
    case QueryKind::IsolatedPromote:
      os << "isolated-promote ";
      to_clause();
      os << " under " << q.ideal;
      break;
    case QueryKind::Separate:
      os << "separate " << q.space << " at " << q.point->to_expr();
      break;
    case QueryKind::Density:
      os << "density " << q.set->to_expr();
      break;
    case QueryKind::Member:
      os << "member " << q.ideal << " " << q.set->to_expr();
      break;
    case QueryKind::Axioms:
      os << "axioms " << q.space;
      if (q.level) os << " level " << level_word(*q.level);
      break;
  }
  return os.str();
}

std::string render(const Scenario& sc) {
  std::ostringstream os;
  for (const auto& [name, ideal] : sc.ideals)
    os << "ideal " << name << " = " << ideal.name() << "\n";
  for (const auto& [name, space] : sc.spaces)
    os << render_space_decl(name, space) << "\n";
  for (const auto& [name, set] : sc.sets)
    os << "set " << name << " = " << set.to_expr() << "\n";
  for (const auto& [name, seq] : sc.sequences)
    os << "sequence " << name << " in " << seq.space().name() << " = "
       << seq.describe() << "\n";
  if (!sc.queries.empty()) os << "\n";
  for (const auto& q : sc.queries) os << render_query(q) << "\n";
  return os.str();
}

std::string digest(std::string_view source) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : source) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4)
    os << ((h >> shift) & 0xF);
  return os.str();
}

} // namespace ilconv::dsl
