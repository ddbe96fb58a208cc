#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "rl/frontend.hpp"
#include "rl/transforms.hpp"

namespace rl {

ParseError::ParseError(const std::string& origin, int line, int col, const std::string& msg)
    : Error(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}

namespace {

bool word_byte(unsigned char c) { return std::isalnum(c) || c == '_' || c == '#' || c == '\'' || c >= 0x80; }

struct Tok {
  enum Kind { Word, Sym, LParen, RParen, Comma };
  Kind kind;
  std::string text;
  int line, col;
};

struct Source {
  std::string origin;
  std::string text;
  int line = 1, col = 1;
};

const std::vector<std::string> kFixedSymbols = {"=>*", "=>", "->", "=/=", "\\/", "/\\", "=", "~", ":", "."};

std::vector<Tok> lex(const Source& src, const std::set<std::string>& symbols) {
  std::vector<Tok> out;
  const std::string& s = src.text;
  int line = src.line, col = src.col;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    const int l0 = line, c0 = col;
    if (c == '(' || c == ')' || c == ',') {
      out.push_back({c == '(' ? Tok::LParen : c == ')' ? Tok::RParen : Tok::Comma, std::string(1, char(c)), l0, c0});
      advance(1);
      continue;
    }
    if (word_byte(c)) {
      std::size_t j = i;
      while (j < s.size()) {
        unsigned char d = static_cast<unsigned char>(s[j]);
        if (word_byte(d)) {
          ++j;
        } else if (d == ':' && j > i && j + 1 < s.size() && std::isalpha(static_cast<unsigned char>(s[j + 1]))) {
          ++j;
        } else {
          break;
        }
      }
      out.push_back({Tok::Word, s.substr(i, j - i), l0, c0});
      advance(j - i);
      continue;
    }
    std::string best;
    for (const auto& sym : symbols)
      if (sym.size() > best.size() && s.compare(i, sym.size(), sym) == 0) best = sym;
    if (best.empty()) best = std::string(1, char(c));
    out.push_back({Tok::Sym, best, l0, c0});
    advance(best.size());
  }
  return out;
}

std::set<std::string> symbol_table(const Signature& sig) {
  std::set<std::string> out(kFixedSymbols.begin(), kFixedSymbols.end());
  for (OpId i = 0; i < static_cast<OpId>(sig.op_count()); ++i) {
    const Operator& o = sig.op(i);
    for (const auto& t : o.tokens)
      if (!t.empty() && !word_byte(static_cast<unsigned char>(t[0]))) out.insert(t);
    if (o.syntax == Syntax::Functional && !o.name.empty() && !word_byte(static_cast<unsigned char>(o.name[0])))
      out.insert(o.name);
  }
  return out;
}

// Expression parser over one token range.
class Parser {
 public:
  Parser(const Signature& sig, VarTable& vars, std::string origin, std::vector<Tok> toks, int eline, int ecol)
      : sig_(sig), vars_(vars), origin_(std::move(origin)), t_(std::move(toks)), eline_(eline), ecol_(ecol) {
    for (OpId i = 0; i < static_cast<OpId>(sig_.op_count()); ++i) {
      const Operator& o = sig_.op(i);
      switch (o.syntax) {
        case Syntax::Functional:
          functional_[o.name] = i;
          break;
        case Syntax::Prefix:
          prefix_[o.tokens.front()] = i;
          break;
        case Syntax::Outfix:
          outfix_[o.tokens.front()].push_back(i);
          openers_.insert(o.tokens.front());
          closers_.insert(o.tokens.back());
          break;
        default:
          break;
      }
    }
    for (OpId i : sig_.infix_order()) {
      const std::string& sep = sig_.op(i).tokens.front();
      auto it = std::find_if(infix_.begin(), infix_.end(), [&](const auto& g) { return g.first == sep; });
      if (it == infix_.end())
        infix_.push_back({sep, {i}});
      else
        it->second.push_back(i);
    }
    declare_inline();
  }

  std::size_t size() const { return t_.size(); }
  const Tok& tok(std::size_t i) const { return t_.at(i); }

  [[noreturn]] void fail(std::size_t i, const std::string& msg) const {
    if (i < t_.size()) throw ParseError(origin_, t_[i].line, t_[i].col, msg);
    throw ParseError(origin_, eline_, ecol_, msg);
  }

  /// Token i spells `s` and is not a variable or a parenthesis.
  bool text_is(std::size_t i, const std::string& s) const {
    if (i >= t_.size() || t_[i].text != s) return false;
    if (t_[i].kind == Tok::LParen || t_[i].kind == Tok::RParen) return false;
    return !(t_[i].kind == Tok::Word && vars_.count(s));
  }

  bool is(std::size_t i, const char* text) const {
    return i < t_.size() && (t_[i].kind == Tok::Sym || t_[i].kind == Tok::Word) && t_[i].text == text &&
           !(t_[i].kind == Tok::Word && vars_.count(text));
  }

  int delta(const Tok& k) const {
    if (k.kind == Tok::LParen) return 1;
    if (k.kind == Tok::RParen) return -1;
    if (k.kind == Tok::Word && vars_.count(k.text)) return 0;
    bool o = openers_.count(k.text) > 0, c = closers_.count(k.text) > 0;
    return o == c ? 0 : o ? 1 : -1;
  }

  /// Positions in [lo, hi) at nesting depth 0 satisfying `pred`.
  std::vector<std::size_t> at_depth0(std::size_t lo, std::size_t hi,
                                     const std::function<bool(std::size_t)>& pred) const {
    std::vector<std::size_t> out;
    int d = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      if (d == 0 && pred(i)) out.push_back(i);
      d += delta(t_[i]);
      if (d < 0) fail(i, "unbalanced '" + t_[i].text + "'");
    }
    return out;
  }

  std::size_t match_paren(std::size_t i, std::size_t hi) const {
    int d = 0;
    for (std::size_t j = i; j < hi; ++j) {
      if (t_[j].kind == Tok::LParen) ++d;
      if (t_[j].kind == Tok::RParen && --d == 0) return j;
    }
    fail(i, "unclosed '('");
  }

  // ---- terms ----

  Term term(std::size_t lo, std::size_t hi) {
    if (lo >= hi) fail(lo, "expected a term");
    for (const auto& [sep, ops] : infix_) {
      auto pos = at_depth0(lo, hi, [&](std::size_t i) { return text_is(i, sep); });
      if (pos.empty()) continue;
      std::optional<OpId> pick;
      for (OpId o : ops) {
        const Operator& op = sig_.op(o);
        if (op.arity() == pos.size() + 1 || (op.assoc && op.arity() == 2)) {
          pick = o;
          break;
        }
      }
      if (!pick) {
        for (OpId o : ops)
          if (sig_.op(o).arity() == 2) pick = o;
        if (!pick) fail(pos.front(), "wrong number of '" + sep + "' separators");
        pos.resize(1);  // binary, non-associative: right-nested
      }
      std::vector<Term> parts;
      std::size_t from = lo;
      for (std::size_t p : pos) {
        if (p == from) fail(p, "missing operand before '" + sep + "'");
        parts.push_back(term(from, p));
        from = p + 1;
      }
      if (from >= hi) fail(from, "missing operand after '" + sep + "'");
      parts.push_back(term(from, hi));
      return build(*pick, parts, pos.front());
    }
    std::vector<Term> items;
    std::size_t i = lo, first_extra = hi;
    while (i < hi) {
      if (!items.empty() && first_extra == hi) first_extra = i;
      auto [t, next] = item(i, hi);
      items.push_back(std::move(t));
      i = next;
    }
    if (items.size() == 1) return items.front();
    auto j = sig_.juxtaposition();
    if (!j) fail(first_extra, "unexpected '" + t_[first_extra].text + "'");
    Term acc = items.front();
    for (std::size_t k = 1; k < items.size(); ++k) acc = build(*j, {acc, items[k]}, first_extra);
    return acc;
  }

  Term build(OpId op, std::vector<Term> args, std::size_t at) {
    const Operator& o = sig_.op(op);
    if (o.assoc && args.size() > 2) {
      Term acc = args.front();
      for (std::size_t k = 1; k < args.size(); ++k) acc = build(op, {acc, args[k]}, at);
      return acc;
    }
    if (!o.assoc && o.arity() == 2 && args.size() > 2) {
      Term acc = args.back();
      for (std::size_t k = args.size() - 1; k-- > 0;) acc = build(op, {args[k], acc}, at);
      return acc;
    }
    try {
      return sig_.make(op, std::move(args));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(at, e.what());
    }
  }

  std::pair<Term, std::size_t> item(std::size_t i, std::size_t hi) {
    const Tok& k = t_[i];
    if (k.kind == Tok::LParen) {
      std::size_t j = match_paren(i, hi);
      return {term(i + 1, j), j + 1};
    }
    if (k.kind == Tok::RParen || k.kind == Tok::Comma) fail(i, "unexpected '" + k.text + "'");
    if (k.kind == Tok::Word) {
      if (auto p = k.text.find(':'); p != std::string::npos) {
        return {Term::variable(vars_.at(k.text.substr(0, p))), i + 1};
      }
      if (auto v = vars_.find(k.text); v != vars_.end()) return {Term::variable(v->second), i + 1};
    }
    if (auto p = prefix_.find(k.text); p != prefix_.end()) {
      if (i + 1 >= hi) fail(i, "missing argument of '" + k.text + "'");
      auto [arg, next] = item(i + 1, hi);
      return {build(p->second, {arg}, i), next};
    }
    if (auto f = functional_.find(k.text); f != functional_.end()) {
      const Operator& o = sig_.op(f->second);
      if (o.arity() == 0) return {build(f->second, {}, i), i + 1};
      if (i + 1 >= hi || t_[i + 1].kind != Tok::LParen) fail(i, "'" + k.text + "' expects arguments in parentheses");
      std::size_t j = match_paren(i + 1, hi);
      std::vector<Term> args;
      std::size_t from = i + 2;
      for (std::size_t c : at_depth0(i + 2, j, [&](std::size_t x) { return t_[x].kind == Tok::Comma; })) {
        args.push_back(term(from, c));
        from = c + 1;
      }
      args.push_back(term(from, j));
      return {build(f->second, std::move(args), i), j + 1};
    }
    if (auto o = outfix_.find(k.text); o != outfix_.end()) {
      std::optional<ParseError> last;
      for (OpId op : o->second) {
        try {
          return outfix(op, i, hi);
        } catch (const ParseError& e) {
          if (!last) last = e;
        }
      }
      throw *last;
    }
    if (k.kind == Tok::Word) fail(i, "unknown identifier '" + k.text + "'");
    fail(i, "unexpected '" + k.text + "'");
  }

  std::pair<Term, std::size_t> outfix(OpId op, std::size_t i, std::size_t hi) {
    const Operator& o = sig_.op(op);
    std::vector<Term> args;
    std::size_t cur = i + 1;
    for (std::size_t k = 1; k < o.tokens.size(); ++k) {
      int d = 0;
      std::size_t j = cur;
      for (; j < hi; ++j) {
        if (d == 0 && text_is(j, o.tokens[k])) break;
        d += delta(t_[j]);
        if (d < 0) fail(j, "expected '" + o.tokens[k] + "'");
      }
      if (j >= hi) fail(i, "missing '" + o.tokens[k] + "' for '" + o.tokens.front() + "'");
      args.push_back(term(cur, j));
      cur = j + 1;
    }
    return {build(op, std::move(args), i), cur};
  }

  // ---- formulas ----

  Formula formula(std::size_t lo, std::size_t hi) {
    if (lo >= hi) fail(lo, "expected a formula");
    auto ors = at_depth0(lo, hi, [&](std::size_t i) { return is(i, "\\/"); });
    if (!ors.empty()) return Formula::disj(split(lo, hi, ors));
    auto ands = at_depth0(lo, hi, [&](std::size_t i) { return is(i, "/\\"); });
    if (!ands.empty()) return Formula::conj(split(lo, hi, ands));
    if (is(lo, "~")) return Formula::negation(formula(lo + 1, hi));
    if (hi == lo + 1 && is(lo, "true")) return Formula::truth();
    if (hi == lo + 1 && is(lo, "false")) return Formula::falsity();
    if (t_[lo].kind == Tok::LParen && match_paren(lo, hi) == hi - 1) return formula(lo + 1, hi - 1);
    auto eqs = at_depth0(lo, hi, [&](std::size_t i) { return is(i, "=") || is(i, "=/="); });
    if (eqs.size() != 1) fail(eqs.empty() ? lo : eqs[1], eqs.empty() ? "expected '=' or '=/='" : "unexpected '='");
    Term a = term(lo, eqs[0]), b = term(eqs[0] + 1, hi);
    return is(eqs[0], "=") ? Formula::eq(a, b) : Formula::neq(a, b);
  }

  std::vector<Formula> split(std::size_t lo, std::size_t hi, const std::vector<std::size_t>& at) {
    std::vector<Formula> out;
    std::size_t from = lo;
    for (std::size_t p : at) {
      out.push_back(formula(from, p));
      from = p + 1;
    }
    out.push_back(formula(from, hi));
    return out;
  }

  // ---- pattern predicates ----

  PatternPredicate pattern(std::size_t lo, std::size_t hi) {
    if (lo >= hi) fail(lo, "expected a pattern");
    auto conns = at_depth0(lo, hi, [&](std::size_t i) { return is(i, "\\/") || is(i, "/\\"); });
    struct Item {
      enum { Atom, Group, Bottom } kind;
      std::size_t lo, hi, bar;  // bar == hi when the atom has no constraint
      PatternPredicate group;
    };
    std::vector<Item> items;
    std::vector<bool> is_or;  // connective before items[k], k >= 1
    std::size_t from = lo;
    for (std::size_t k = 0; k <= conns.size(); ++k) {
      std::size_t to = k < conns.size() ? conns[k] : hi;
      if (from >= to) fail(from, "expected a pattern");
      switch (classify(from, to)) {
        case Seg::AtomStart: {
          auto bars = at_depth0(from, to, [&](std::size_t i) { return is(i, "|"); });
          items.push_back({Item::Atom, from, to, bars.empty() ? to : bars.back(), {}});
          if (k > 0) is_or.push_back(is(conns[k - 1], "\\/"));
          break;
        }
        case Seg::Group:
          items.push_back({Item::Group, from, to, to, pattern(from + 1, to - 1)});
          if (k > 0) is_or.push_back(is(conns[k - 1], "\\/"));
          break;
        case Seg::Bottom:
          items.push_back({Item::Bottom, from, to, to, {}});
          if (k > 0) is_or.push_back(is(conns[k - 1], "\\/"));
          break;
        case Seg::Continuation:
          if (items.empty() || items.back().kind != Item::Atom || items.back().bar == items.back().hi)
            fail(from, "constraint is not attached to a pattern (missing '|')");
          items.back().hi = to;
          break;
      }
      from = to + 1;
    }
    std::vector<PatternPredicate> conj_run, disjuncts;
    for (std::size_t k = 0; k < items.size(); ++k) {
      const Item& it = items[k];
      PatternPredicate p;
      if (it.kind == Item::Group) {
        p = it.group;
      } else if (it.kind == Item::Bottom) {
        p = PatternPredicate::bottom();
      } else {
        Term u = term(it.lo, it.bar);
        Formula f = it.bar == it.hi ? Formula::truth() : formula(it.bar + 1, it.hi);
        p = PatternPredicate::atom(u, f);
      }
      if (k > 0 && is_or[k - 1]) {
        disjuncts.push_back(PatternPredicate::conj(std::move(conj_run)));
        conj_run.clear();
      }
      conj_run.push_back(std::move(p));
    }
    disjuncts.push_back(PatternPredicate::conj(std::move(conj_run)));
    return PatternPredicate::disj(std::move(disjuncts));
  }

  enum class Seg { AtomStart, Group, Bottom, Continuation };

  Seg classify(std::size_t lo, std::size_t hi) const {
    if (hi == lo + 1 && is(lo, "false")) return Seg::Bottom;
    auto any = [&](std::size_t a, std::size_t b, std::initializer_list<const char*> what) {
      return !at_depth0(a, b, [&](std::size_t i) {
                for (const char* w : what)
                  if (is(i, w)) return true;
                return false;
              }).empty();
    };
    if (any(lo, hi, {"|"})) return Seg::AtomStart;
    if (t_[lo].kind == Tok::LParen && match_paren(lo, hi) == hi - 1) {
      if (any(lo + 1, hi - 1, {"|"})) return Seg::Group;
      if (any(lo + 1, hi - 1, {"=", "=/=", "~", "true", "false"})) return Seg::Continuation;
      if (any(lo + 1, hi - 1, {"\\/", "/\\"})) return Seg::Group;
      return Seg::AtomStart;
    }
    if (is(lo, "~") || (hi == lo + 1 && is(lo, "true")) || any(lo, hi, {"=", "=/="})) return Seg::Continuation;
    return Seg::AtomStart;
  }

 private:
  void declare_inline() {
    for (const auto& k : t_) {
      if (k.kind != Tok::Word) continue;
      auto p = k.text.find(':');
      if (p == std::string::npos) continue;
      std::string name = k.text.substr(0, p), sort = k.text.substr(p + 1);
      auto s = sig_.sorts().find(sort);
      if (!s) throw ParseError(origin_, k.line, k.col + static_cast<int>(p) + 1, "unknown sort '" + sort + "'");
      auto [it, fresh] = vars_.emplace(name, Var{name, *s});
      if (!fresh && it->second.sort != *s)
        throw ParseError(origin_, k.line, k.col,
                         "variable '" + name + "' declared with sorts " + sig_.sorts().name(it->second.sort) +
                             " and " + sort);
    }
  }

  const Signature& sig_;
  VarTable& vars_;
  std::string origin_;
  std::vector<Tok> t_;
  int eline_, ecol_;
  std::map<std::string, OpId> functional_, prefix_;
  std::map<std::string, std::vector<OpId>> outfix_;
  std::vector<std::pair<std::string, std::vector<OpId>>> infix_;
  std::set<std::string> openers_, closers_;
};

// ---- statements ----

struct Stmt {
  std::string text;
  int line, col;
  int end_line, end_col;
};

std::string strip_comments(const std::string& s) {
  std::string out = s;
  for (std::size_t i = 0; i < out.size(); ++i) {
    bool c3 = out.compare(i, 3, "***") == 0;
    bool c2 = out.compare(i, 2, "--") == 0 && (i == 0 || std::isspace(static_cast<unsigned char>(out[i - 1])));
    if (c3 || c2) {
      while (i < out.size() && out[i] != '\n') out[i++] = ' ';
    }
  }
  return out;
}

// Splits at '.' followed by whitespace or end of input.  `theory X`,
// `goal X`, `endtheory` and `endgoal` form statements of their own.
std::vector<Stmt> statements(const std::string& raw) {
  const std::string s = strip_comments(raw);
  std::vector<Stmt> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto step = [&]() {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
      ++col;
    }
    ++i;
  };
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) step();
    if (i >= s.size()) break;
    Stmt st{"", line, col, line, col};
    std::size_t start = i;
    std::size_t w = i;
    while (w < s.size() && word_byte(static_cast<unsigned char>(s[w]))) ++w;
    std::string first = s.substr(i, w - i);
    if (first == "endtheory" || first == "endgoal") {
      while (i < w) step();
      st.text = first;
      st.end_line = line;
      st.end_col = col;
      out.push_back(st);
      continue;
    }
    if (first == "theory" || first == "goal") {
      while (i < w) step();
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) step();
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) step();
      st.text = s.substr(start, i - start);
      st.end_line = line;
      st.end_col = col;
      out.push_back(st);
      continue;
    }
    bool done = false;
    while (i < s.size()) {
      if (s[i] == '.' && (i + 1 == s.size() || std::isspace(static_cast<unsigned char>(s[i + 1])))) {
        st.text = s.substr(start, i - start);
        st.end_line = line;
        st.end_col = col;
        step();
        done = true;
        break;
      }
      step();
    }
    if (!done) throw ParseError("", st.line, st.col, "statement is not terminated by ' .'");
    out.push_back(st);
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n"), b = s.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

class FileReader {
 public:
  explicit FileReader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const Stmt& st, const std::string& msg) const {
    throw ParseError(origin_, st.line, st.col, msg);
  }

  Parser parser(const Signature& sig, VarTable& vars, const Stmt& st) const {
    Source src{origin_, st.text, st.line, st.col};
    auto toks = lex(src, symbol_table(sig));
    return Parser(sig, vars, origin_, std::move(toks), st.end_line, st.end_col);
  }

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
};

std::string keyword(const Stmt& st) {
  std::size_t w = 0;
  while (w < st.text.size() && word_byte(static_cast<unsigned char>(st.text[w]))) ++w;
  return st.text.substr(0, w);
}

void op_decl(RewriteTheory& th, const Stmt& st, const FileReader& rd, bool many) {
  std::string body = st.text.substr(keyword(st).size());
  std::size_t colon = std::string::npos;
  for (std::size_t i = 0; i + 1 < body.size(); ++i)
    if (body[i] == ':' && std::isspace(static_cast<unsigned char>(body[i + 1])) && i > 0 &&
        std::isspace(static_cast<unsigned char>(body[i - 1]))) {
      colon = i;
      break;
    }
  if (colon == std::string::npos) rd.fail(st, "expected ' : ' in operator declaration");
  std::vector<std::string> names = many ? words(body.substr(0, colon)) : std::vector<std::string>{trim(body.substr(0, colon))};
  if (names.empty() || names.front().empty()) rd.fail(st, "missing operator name");
  std::string rest = body.substr(colon + 1);
  auto arrow = rest.find("->");
  if (arrow == std::string::npos) rd.fail(st, "expected '->' in operator declaration");
  std::vector<std::string> args = words(rest.substr(0, arrow));
  std::string tail = rest.substr(arrow + 2);
  std::string attrs;
  if (auto lb = tail.find('['); lb != std::string::npos) {
    auto rb = tail.rfind(']');
    if (rb == std::string::npos || rb < lb) rd.fail(st, "unclosed attribute list");
    attrs = tail.substr(lb + 1, rb - lb - 1);
    tail = tail.substr(0, lb);
  }
  auto res = words(tail);
  if (res.size() != 1) rd.fail(st, "expected one result sort");
  auto sort_of = [&](const std::string& n) {
    auto s = th.sig.sorts().find(n);
    if (!s) rd.fail(st, "unknown sort '" + n + "'");
    return *s;
  };
  Operator proto;
  for (const auto& a : args) proto.args.push_back(sort_of(a));
  proto.result = sort_of(res.front());
  std::string id_text;
  {
    auto ws = words(attrs);
    for (std::size_t k = 0; k < ws.size(); ++k) {
      const std::string& w = ws[k];
      if (w == "ctor") {
        proto.ctor = true;
      } else if (w == "assoc") {
        proto.assoc = true;
      } else if (w == "comm") {
        proto.comm = true;
      } else if (w == "id:" || w.rfind("id:", 0) == 0) {
        std::string t = w.size() > 3 ? w.substr(3) : "";
        for (++k; k < ws.size() && ws[k] != "ctor" && ws[k] != "assoc" && ws[k] != "comm"; ++k) t += " " + ws[k];
        --k;
        id_text = trim(t);
        if (id_text.empty()) rd.fail(st, "missing identity term after 'id:'");
      } else {
        rd.fail(st, "unknown attribute '" + w + "'");
      }
    }
  }
  for (const auto& n : names) {
    Operator o = proto;
    o.name = n;
    try {
      OpId id = th.sig.add_op(o);
      if (!id_text.empty()) th.sig.set_identity(id, parse_term(th.sig, id_text));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      rd.fail(st, e.what());
    }
  }
}

// Index of the first depth-0 token satisfying pred after `from`.
std::optional<std::size_t> find0(const Parser& p, std::size_t from, std::size_t hi,
                                 const std::function<bool(std::size_t)>& pred) {
  auto v = p.at_depth0(from, hi, pred);
  if (v.empty()) return std::nullopt;
  return v.front();
}

void rule_or_eq(RewriteTheory& th, const Stmt& st, const FileReader& rd, const std::string& kw) {
  VarTable vars;
  Parser p = rd.parser(th.sig, vars, st);
  std::size_t lo = 1, hi = p.size();
  std::string label;
  const bool is_rule = kw == "rl" || kw == "crl";
  if (is_rule) {
    if (!p.is(lo, "[")) p.fail(lo, "expected '[label]' after '" + kw + "'");
    std::size_t j = lo + 1;
    while (j < hi && !p.is(j, "]")) label += p.tok(j++).text;
    if (j >= hi || label.empty()) p.fail(lo, "malformed rule label");
    lo = j + 1;
    if (!p.is(lo, ":")) p.fail(lo, "expected ':' after the rule label");
    ++lo;
  }
  auto cond_at = find0(p, lo, hi, [&](std::size_t i) { return p.is(i, "if"); });
  std::size_t head_hi = cond_at.value_or(hi);
  Formula cond = cond_at ? p.formula(*cond_at + 1, hi) : Formula::truth();
  if (cond_at && (kw == "eq" || kw == "rl")) p.fail(*cond_at, "conditional statements use 'c" + kw + "'");
  if (!cond_at && (kw == "ceq" || kw == "crl")) p.fail(hi, "'" + kw + "' requires an 'if' condition");
  const char* arrow = is_rule ? "=>" : "=";
  auto mid = find0(p, lo, head_hi, [&](std::size_t i) { return p.is(i, arrow); });
  if (!mid) p.fail(lo, std::string("expected '") + arrow + "'");
  Term l = p.term(lo, *mid), r = p.term(*mid + 1, head_hi);
  if (is_rule)
    th.rules.push_back({label, l, r, cond});
  else if (kw == "ax")
    th.axioms.push_back({l, r});
  else
    th.equations.push_back({l, r, cond});
}

}  // namespace

RewriteTheory parse_theory_unchecked(const std::string& text, const std::string& origin) {
  FileReader rd(origin);
  RewriteTheory th;
  std::vector<Stmt> sts;
  try {
    sts = statements(text);
  } catch (const ParseError& e) {
    throw ParseError(origin, e.line(), e.col(), "statement is not terminated by ' .'");
  }
  bool open = false, closed = false;
  std::optional<std::string> state_name;
  Stmt state_at{};
  for (const auto& st : sts) {
    const std::string kw = keyword(st);
    if (closed) rd.fail(st, "text after 'endtheory'");
    if (!open) {
      if (kw != "theory") rd.fail(st, "expected 'theory <name>'");
      auto ws = words(st.text);
      if (ws.size() != 2) rd.fail(st, "expected 'theory <name>'");
      th.name = ws[1];
      open = true;
      continue;
    }
    if (kw == "endtheory") {
      closed = true;
      continue;
    }
    try {
      if (kw == "sort" || kw == "sorts") {
        for (const auto& w : words(st.text.substr(kw.size()))) th.sig.sorts().add(w);
      } else if (kw == "subsort" || kw == "subsorts") {
        // A B < C < D: every sort of a group is below every sort of the next.
        std::vector<std::vector<std::string>> groups(1);
        for (const auto& w : words(st.text.substr(kw.size()))) {
          if (w == "<")
            groups.emplace_back();
          else
            groups.back().push_back(w);
        }
        if (groups.size() < 2) rd.fail(st, "expected '<' in subsort declaration");
        for (std::size_t g = 0; g + 1 < groups.size(); ++g)
          for (const auto& a : groups[g])
            for (const auto& b : groups[g + 1]) th.sig.sorts().add_subsort(th.sig.sorts().id(a), th.sig.sorts().id(b));
      } else if (kw == "state") {
        auto ws = words(st.text.substr(kw.size()));
        if (ws.size() != 1) rd.fail(st, "expected 'state <sort>'");
        state_name = ws[0];
        state_at = st;
      } else if (kw == "op" || kw == "ops") {
        op_decl(th, st, rd, kw == "ops");
      } else if (kw == "eq" || kw == "ceq" || kw == "rl" || kw == "crl" || kw == "ax") {
        rule_or_eq(th, st, rd, kw);
      } else {
        rd.fail(st, "unknown statement '" + kw + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      rd.fail(st, e.what());
    }
  }
  if (!open) throw ParseError(origin, 1, 1, "expected 'theory <name>'");
  if (!closed) throw ParseError(origin, 1, 1, "missing 'endtheory'");
  if (state_name) {
    auto s = th.sig.sorts().find(*state_name);
    if (!s) rd.fail(state_at, "unknown sort '" + *state_name + "'");
    th.state_sort = *s;
  } else if (auto s = th.sig.sorts().find("State")) {
    th.state_sort = *s;
  }
  return th;
}

RewriteTheory parse_theory(const std::string& text, const std::string& origin) {
  RewriteTheory th = parse_theory_unchecked(text, origin);
  LintReport r = validate_theory(th);
  if (!r.ok()) throw Error(origin + ": theory '" + th.name + "' fails validation:\n" + r.text());
  return th;
}

GoalFile parse_goals(const std::string& text, const RewriteTheory& th, const std::string& origin) {
  FileReader rd(origin);
  GoalFile g;
  g.theory = th;
  std::vector<Stmt> sts;
  try {
    sts = statements(text);
  } catch (const ParseError& e) {
    throw ParseError(origin, e.line(), e.col(), "statement is not terminated by ' .'");
  }
  bool open = false, closed = false;
  for (const auto& st : sts) {
    const std::string kw = keyword(st);
    if (closed) rd.fail(st, "text after 'endgoal'");
    if (!open) {
      auto ws = words(st.text);
      if (kw != "goal" || ws.size() != 2) rd.fail(st, "expected 'goal <name>'");
      g.name = ws[1];
      open = true;
      continue;
    }
    if (kw == "endgoal") {
      closed = true;
      continue;
    }
    const Signature& sig = g.theory.sig;
    VarTable vt;
    if (kw == "transform") {
      auto ws = words(st.text.substr(kw.size()));
      if (ws.size() != 1) rd.fail(st, "expected 'transform stop' or 'transform hat'");
      try {
        if (ws[0] == "stop") {
          auto s = stop_transform(g.theory);
          g.theory = std::move(s.theory);
        } else if (ws[0] == "hat") {
          g.theory = hat_transform(g.theory);
        } else {
          rd.fail(st, "unknown transformation '" + ws[0] + "'");
        }
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        rd.fail(st, e.what());
      }
      continue;
    }
    Parser p = rd.parser(sig, vt, st);
    const std::size_t hi = p.size();
    auto check_state = [&](const Atom& a, std::size_t at) {
      if (g.theory.state_sort < 0 || !sig.leq(a.term.sort(), g.theory.state_sort))
        p.fail(at, "pattern is not of the state sort");
    };
    if (kw == "terminating") {
      if (!p.is(1, ":")) p.fail(1, "expected ':'");
      g.terminating = p.pattern(2, hi);
    } else if (kw == "claim") {
      if (hi < 3 || p.tok(1).kind != Tok::Word || !p.is(2, ":")) p.fail(1, "expected 'claim <name>:'");
      ReachFormula f;
      f.name = p.tok(1).text;
      auto arrow = find0(p, 3, hi, [&](std::size_t i) { return p.is(i, "=>*"); });
      if (!arrow) p.fail(3, "expected '=>*'");
      PatternPredicate l = p.pattern(3, *arrow);
      if (l.kind() != PatternPredicate::Kind::Atom) p.fail(3, "the left side of a claim must be a single pattern");
      f.lhs = l.get_atom();
      check_state(f.lhs, 3);
      PatternPredicate r = p.pattern(*arrow + 1, hi);
      FreshGen gen = fresh_after(vars(r));
      Disjuncts d = to_disjuncts(g.theory, r, gen);
      f.rhs = d.atoms;
      for (const auto& a : f.rhs) check_state(a, *arrow + 1);
      name_disjuncts(f);
      if (auto v = quantification_violation(f))
        p.fail(*arrow + 1, "variable '" + v->name + "' of a right-hand constraint occurs neither in its pattern "
                           "nor on the left");
      g.claims.push_back(std::move(f));
    } else if (kw == "invariant") {
      if (hi < 3 || p.tok(1).kind != Tok::Word || !p.is(2, ":") || !p.is(3, "from"))
        p.fail(1, "expected 'invariant <name>: from <pattern> always <pattern>'");
      auto always = find0(p, 4, hi, [&](std::size_t i) { return p.is(i, "always"); });
      if (!always) p.fail(4, "expected 'always'");
      InvariantSpec inv{p.tok(1).text, p.pattern(4, *always), p.pattern(*always + 1, hi)};
      g.invariants.push_back(std::move(inv));
    } else if (kw == "env") {
      auto eq = find0(p, 1, hi, [&](std::size_t i) { return p.is(i, "="); });
      if (!eq || *eq != 2 || p.tok(1).kind != Tok::Word) p.fail(1, "expected 'env <Sort> = t1, ..., tn'");
      auto s = sig.sorts().find(p.tok(1).text);
      if (!s) p.fail(1, "unknown sort '" + p.tok(1).text + "'");
      std::size_t from = 3;
      auto commas = p.at_depth0(3, hi, [&](std::size_t i) { return p.tok(i).kind == Tok::Comma; });
      commas.push_back(hi);
      for (std::size_t c : commas) {
        Term t = p.term(from, c);
        if (!t.ground()) p.fail(from, "environment terms must be ground");
        if (!sig.leq(t.sort(), *s)) p.fail(from, "term is not of sort " + sig.sorts().name(*s));
        g.env[*s].push_back(simplify(g.theory, t));
        from = c + 1;
      }
    } else {
      rd.fail(st, "unknown statement '" + kw + "'");
    }
  }
  if (!open) throw ParseError(origin, 1, 1, "expected 'goal <name>'");
  if (!closed) throw ParseError(origin, 1, 1, "missing 'endgoal'");
  if (!g.terminating && g.theory.stopped()) g.terminating = bracket_predicate(g.theory);
  return g;
}

namespace {

template <class F>
auto parse_expr(const Signature& sig, const std::string& text, VarTable* vars, F&& f) {
  VarTable local;
  VarTable& vt = vars ? *vars : local;
  Source src{"<input>", text, 1, 1};
  auto toks = lex(src, symbol_table(sig));
  Parser p(sig, vt, "<input>", std::move(toks), 1, static_cast<int>(text.size()) + 1);
  return f(p);
}

}  // namespace

Term parse_term(const Signature& sig, const std::string& text, VarTable* vars) {
  return parse_expr(sig, text, vars, [](Parser& p) { return p.term(0, p.size()); });
}

Formula parse_formula(const Signature& sig, const std::string& text, VarTable* vars) {
  return parse_expr(sig, text, vars, [](Parser& p) { return p.formula(0, p.size()); });
}

PatternPredicate parse_pattern(const Signature& sig, const std::string& text, VarTable* vars) {
  return parse_expr(sig, text, vars, [](Parser& p) { return p.pattern(0, p.size()); });
}

}  // namespace rl
