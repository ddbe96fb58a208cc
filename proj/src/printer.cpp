#include <sstream>

#include "rl/frontend.hpp"

namespace rl {

namespace {

class TermPrinter {
 public:
  TermPrinter(const Signature& sig, PrintOptions o) : sig_(sig), o_(o) {
    const auto& order = sig_.infix_order();
    for (std::size_t k = 0; k < order.size(); ++k) level_[order[k]] = static_cast<int>(k);
  }

  std::string operator()(const Term& t) const {
    std::string out;
    write(t, out);
    return out;
  }

  void write(const Term& t, std::string& out) const {
    if (t.is_var()) {
      out += t.var().name;
      if (o_.sorts) out += ":" + sig_.sorts().name(t.var().sort);
      return;
    }
    const Operator& op = sig_.op(t.op());
    switch (op.syntax) {
      case Syntax::Functional:
        out += op.name;
        if (t.arity() > 0) {
          out += '(';
          for (std::size_t i = 0; i < t.arity(); ++i) {
            if (i) out += ", ";
            write(t.arg(i), out);
          }
          out += ')';
        }
        return;
      case Syntax::Juxtaposition:
        for (std::size_t i = 0; i < t.arity(); ++i) {
          if (i) out += ' ';
          const Term& a = t.arg(i);
          bool paren = !a.is_var() && (is(a, Syntax::Prefix) || is(a, Syntax::Infix) || is(a, Syntax::Juxtaposition));
          wrap(a, paren, out);
        }
        return;
      case Syntax::Prefix: {
        out += op.tokens.front();
        out += ' ';
        const Term& a = t.arg(0);
        wrap(a, !a.is_var() && (is(a, Syntax::Infix) || is(a, Syntax::Juxtaposition)), out);
        return;
      }
      case Syntax::Outfix:
        out += op.tokens.front();
        for (std::size_t i = 0; i < t.arity(); ++i) {
          write(t.arg(i), out);
          const std::string& tok = op.tokens[i + 1];
          if (i + 1 == t.arity())
            out += tok;
          else if (tok == ",")
            out += ", ";
          else
            out += " " + tok + " ";
        }
        return;
      case Syntax::Infix: {
        const int mine = level_.at(t.op());
        for (std::size_t i = 0; i < t.arity(); ++i) {
          if (i) out += " " + op.tokens.front() + " ";
          const Term& a = t.arg(i);
          bool paren = !a.is_var() && is(a, Syntax::Infix) && level_.at(a.op()) <= mine;
          wrap(a, paren, out);
        }
        return;
      }
    }
  }

 private:
  bool is(const Term& t, Syntax s) const { return sig_.op(t.op()).syntax == s; }

  void wrap(const Term& t, bool paren, std::string& out) const {
    if (paren) out += '(';
    write(t, out);
    if (paren) out += ')';
  }

  const Signature& sig_;
  PrintOptions o_;
  std::map<OpId, int> level_;
};

// 0: disjunction, 1: conjunction, 2: negation / atomic
int prec(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Or:
      return 0;
    case Formula::Kind::And:
      return 1;
    default:
      return 2;
  }
}

void write_formula(const TermPrinter& tp, const Formula& f, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      out += "true";
      return;
    case K::False:
      out += "false";
      return;
    case K::Lit:
      out += tp(f.lit().lhs);
      out += f.lit().positive ? " = " : " =/= ";
      out += tp(f.lit().rhs);
      return;
    case K::Not: {
      out += "~ ";
      const Formula& k = f.kids().front();
      bool paren = k.kind() != K::True && k.kind() != K::False && k.kind() != K::Not;
      if (paren) out += '(';
      write_formula(tp, k, out);
      if (paren) out += ')';
      return;
    }
    case K::And:
    case K::Or: {
      const int me = prec(f);
      const char* sep = f.kind() == K::And ? " /\\ " : " \\/ ";
      for (std::size_t i = 0; i < f.kids().size(); ++i) {
        if (i) out += sep;
        const Formula& k = f.kids()[i];
        bool paren = prec(k) <= me;
        if (paren) out += '(';
        write_formula(tp, k, out);
        if (paren) out += ')';
      }
      return;
    }
  }
}

void write_atom(const TermPrinter& tp, const Atom& a, std::string& out) {
  out += tp(a.term);
  if (!a.cond.is_true()) {
    out += " | ";
    write_formula(tp, a.cond, out);
  }
}

void write_pattern(const TermPrinter& tp, const PatternPredicate& p, std::string& out, int outer) {
  using K = PatternPredicate::Kind;
  switch (p.kind()) {
    case K::Bottom:
      out += "false";
      return;
    case K::Atom: {
      // A constraint with a top-level disjunction would swallow the
      // following disjuncts, so atoms inside combinations are parenthesized.
      bool paren = outer >= 0 && !p.get_atom().cond.is_true();
      if (paren) out += '(';
      write_atom(tp, p.get_atom(), out);
      if (paren) out += ')';
      return;
    }
    case K::Or:
    case K::And: {
      const int me = p.kind() == K::Or ? 0 : 1;
      bool paren = outer >= me;
      if (paren) out += '(';
      for (std::size_t i = 0; i < p.kids().size(); ++i) {
        if (i) out += me == 0 ? " \\/ " : " /\\ ";
        write_pattern(tp, p.kids()[i], out, me);
      }
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

std::string print(const Signature& sig, const Term& t, PrintOptions o) { return TermPrinter(sig, o)(t); }

std::string print(const Signature& sig, const Formula& f, PrintOptions o) {
  std::string out;
  write_formula(TermPrinter(sig, o), f, out);
  return out;
}

std::string print(const Signature& sig, const Atom& a, PrintOptions o) {
  std::string out;
  write_atom(TermPrinter(sig, o), a, out);
  return out;
}

std::string print(const Signature& sig, const PatternPredicate& p, PrintOptions o) {
  std::string out;
  write_pattern(TermPrinter(sig, o), p, out, -1);
  return out;
}

std::string print(const Signature& sig, const ReachFormula& f, PrintOptions o) {
  TermPrinter tp(sig, o);
  std::string out;
  write_atom(tp, f.lhs, out);
  out += " =>* ";
  if (f.rhs.empty()) out += "false";
  for (std::size_t i = 0; i < f.rhs.size(); ++i) {
    if (i) out += " \\/ ";
    bool paren = f.rhs.size() > 1 && !f.rhs[i].cond.is_true();
    if (paren) out += '(';
    write_atom(tp, f.rhs[i], out);
    if (paren) out += ')';
  }
  return out;
}

std::string print(const Signature& sig, const Substitution& s, PrintOptions o) {
  TermPrinter tp(sig, o);
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s) {
    if (t.is_var() && t.var() == v) continue;
    if (!first) out += ", ";
    first = false;
    out += v.name + " |-> " + tp(t);
  }
  return out + "}";
}

std::string print_theory(const RewriteTheory& th) {
  const Signature& sig = th.sig;
  PrintOptions ann{true};
  std::ostringstream os;
  os << "theory " << th.name << "\n";
  if (sig.sorts().size()) {
    os << "  sorts";
    for (std::size_t s = 0; s < sig.sorts().size(); ++s) os << ' ' << sig.sorts().name(static_cast<SortId>(s));
    os << " .\n";
  }
  for (auto [lo, hi] : sig.sorts().subsort_pairs())
    os << "  subsort " << sig.sorts().name(lo) << " < " << sig.sorts().name(hi) << " .\n";
  if (th.state_sort >= 0) os << "  state " << sig.sorts().name(th.state_sort) << " .\n";
  for (OpId i = 0; i < static_cast<OpId>(sig.op_count()); ++i) {
    const Operator& o = sig.op(i);
    os << "  op " << o.name << " :";
    for (SortId a : o.args) os << ' ' << sig.sorts().name(a);
    os << " -> " << sig.sorts().name(o.result);
    std::string attrs;
    auto add = [&](const std::string& a) { attrs += (attrs.empty() ? "" : " ") + a; };
    if (o.ctor) add("ctor");
    if (o.assoc) add("assoc");
    if (o.comm) add("comm");
    if (o.has_identity()) add("id: " + print(sig, o.identity));
    if (!attrs.empty()) os << " [" << attrs << "]";
    os << " .\n";
  }
  for (const auto& e : th.equations) {
    os << (e.cond.is_true() ? "  eq " : "  ceq ") << print(sig, e.lhs, ann) << " = " << print(sig, e.rhs, ann);
    if (!e.cond.is_true()) os << " if " << print(sig, e.cond, ann);
    os << " .\n";
  }
  for (const auto& r : th.rules) {
    os << (r.cond.is_true() ? "  rl [" : "  crl [") << r.label << "] : " << print(sig, r.lhs, ann) << " => "
       << print(sig, r.rhs, ann);
    if (!r.cond.is_true()) os << " if " << print(sig, r.cond, ann);
    os << " .\n";
  }
  for (const auto& a : th.axioms) os << "  ax " << print(sig, a.lhs, ann) << " = " << print(sig, a.rhs, ann) << " .\n";
  os << "endtheory\n";
  return os.str();
}

}  // namespace rl
