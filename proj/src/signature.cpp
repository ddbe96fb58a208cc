#include "rl/signature.hpp"

#include <algorithm>

namespace rl {

SortId SortGraph::add(const std::string& name) {
  if (index_.count(name)) throw Error("duplicate sort '" + name + "'");
  SortId id = static_cast<SortId>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  close();
  return id;
}

std::optional<SortId> SortGraph::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SortId SortGraph::id(const std::string& name) const {
  auto s = find(name);
  if (!s) throw Error("unknown sort '" + name + "'");
  return *s;
}

void SortGraph::add_subsort(SortId lo, SortId hi) {
  if (lo == hi || leq(hi, lo))
    throw Error("subsort " + name(lo) + " < " + name(hi) + " creates a cycle");
  pairs_.emplace_back(lo, hi);
  close();
}

void SortGraph::close() {
  const std::size_t n = names_.size();
  leq_.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) leq_[i][i] = 1;
  for (auto [a, b] : pairs_) leq_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq_[k][j]) leq_[i][j] = 1;
}

bool SortGraph::leq(SortId a, SortId b) const {
  if (a < 0 || b < 0) return false;
  return leq_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0;
}

std::vector<SortId> SortGraph::maximal_lower_bounds(SortId a, SortId b) const {
  std::vector<SortId> lower;
  for (SortId s = 0; s < static_cast<SortId>(size()); ++s)
    if (leq(s, a) && leq(s, b)) lower.push_back(s);
  std::vector<SortId> out;
  for (SortId s : lower) {
    bool maximal = true;
    for (SortId t : lower)
      if (t != s && leq(s, t)) maximal = false;
    if (maximal) out.push_back(s);
  }
  return out;
}

namespace {

void classify(Operator& op) {
  const std::string& n = op.name;
  if (n.find('_') == std::string::npos) {
    op.syntax = Syntax::Functional;
    return;
  }
  std::vector<std::string> pieces;  // "" marks a hole
  std::string cur;
  for (char c : n) {
    if (c == '_') {
      if (!cur.empty()) pieces.push_back(cur);
      cur.clear();
      pieces.emplace_back();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) pieces.push_back(cur);
  std::size_t holes = 0;
  for (const auto& p : pieces) {
    if (p.empty())
      ++holes;
    else
      op.tokens.push_back(p);
  }
  if (holes != op.arity())
    throw Error("operator '" + n + "' has " + std::to_string(holes) + " argument places but " +
                std::to_string(op.arity()) + " argument sorts");
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
    if (pieces[i].empty() && pieces[i + 1].empty() && !(n == "__"))
      throw Error("operator '" + n + "': adjacent argument places are only supported as '__'");
  if (n == "__") {
    op.syntax = Syntax::Juxtaposition;
  } else if (!pieces.front().empty() && !pieces.back().empty()) {
    op.syntax = Syntax::Outfix;
  } else if (!pieces.front().empty() && pieces.back().empty()) {
    if (holes != 1 || op.tokens.size() != 1)
      throw Error("operator '" + n + "': prefix operators take exactly one argument");
    op.syntax = Syntax::Prefix;
  } else if (pieces.front().empty() && pieces.back().empty()) {
    for (const auto& t : op.tokens)
      if (t != op.tokens.front())
        throw Error("operator '" + n + "': infix operators must repeat a single separator");
    op.syntax = Syntax::Infix;
  } else {
    throw Error("operator '" + n + "': unsupported mixfix shape");
  }
}

}  // namespace

OpId Signature::add_op(Operator op) {
  if (index_.count(op.name)) throw Error("duplicate operator '" + op.name + "'");
  classify(op);
  if (op.comm && op.arity() != 2) throw Error("operator '" + op.name + "': comm requires two arguments");
  if (op.assoc) {
    if (op.arity() != 2) throw Error("operator '" + op.name + "': assoc requires two arguments");
    if (op.args[0] != op.result || op.args[1] != op.result)
      throw Error("operator '" + op.name + "': assoc requires argument sorts equal to the result sort");
  }
  if (op.comm && !op.assoc && op.args[0] != op.args[1])
    throw Error("operator '" + op.name + "': comm requires equal argument sorts");
  if (op.has_identity() && !op.assoc)
    throw Error("operator '" + op.name + "': identity is only supported together with assoc");
  OpId id = static_cast<OpId>(ops_.size());
  if (op.syntax == Syntax::Juxtaposition) {
    if (juxta_) throw Error("only one juxtaposition operator '__' may be declared");
    juxta_ = id;
  }
  index_.emplace(op.name, id);
  ops_.push_back(std::move(op));
  if (ops_.back().syntax == Syntax::Infix) {
    infix_order_.push_back(id);
    std::stable_sort(infix_order_.begin(), infix_order_.end(), [&](OpId a, OpId b) {
      return ops_[static_cast<std::size_t>(a)].arity() > ops_[static_cast<std::size_t>(b)].arity();
    });
  }
  return id;
}

void Signature::set_identity(OpId id, const Term& e) {
  auto& op = ops_.at(static_cast<std::size_t>(id));
  if (!op.assoc) throw Error("operator '" + op.name + "': identity is only supported together with assoc");
  if (!e.ground() || !is_constructor_term(e))
    throw Error("operator '" + op.name + "': identity must be a ground constructor term");
  if (!leq(e.sort(), op.args[0]))
    throw Error("operator '" + op.name + "': identity has the wrong sort");
  op.identity = e;
}

std::optional<OpId> Signature::find_op(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

OpId Signature::op_id(const std::string& name) const {
  auto o = find_op(name);
  if (!o) throw Error("unknown operator '" + name + "'");
  return *o;
}

Term Signature::make(OpId id, std::vector<Term> args) const {
  const Operator& op = this->op(id);
  // Assoc operators also accept an already flattened list of two or more.
  const bool flat_ok = op.assoc && args.size() >= 2;
  if (args.size() != op.arity() && !flat_ok)
    throw Error("operator '" + op.name + "' expects " + std::to_string(op.arity()) + " arguments, got " +
                std::to_string(args.size()));
  for (std::size_t i = 0; i < args.size(); ++i)
    if (!leq(args[i].sort(), op.args[std::min(i, op.args.size() - 1)]))
      throw Error("argument " + std::to_string(i + 1) + " of '" + op.name + "' has sort " +
                  sorts_.name(args[i].sort()) + ", expected " + sorts_.name(op.args[std::min(i, op.args.size() - 1)]));
  if (op.assoc) {
    std::vector<Term> flat;
    for (auto& a : args) {
      if (!a.is_var() && a.op() == id) {
        for (const auto& b : a.args()) flat.push_back(b);
      } else if (op.has_identity() && a == op.identity) {
        continue;
      } else {
        flat.push_back(std::move(a));
      }
    }
    if (flat.empty()) return op.identity;
    if (flat.size() == 1) return flat.front();
    if (op.comm) std::sort(flat.begin(), flat.end());
    return Term::application(id, op.result, std::move(flat), true);
  }
  if (op.comm && args[1] < args[0]) std::swap(args[0], args[1]);
  return Term::application(id, op.result, std::move(args));
}

Term Signature::apply(const Term& t, const Substitution& s) const {
  if (t.ground() || s.empty()) return t;
  if (t.is_var()) {
    auto it = s.find(t.var());
    return it == s.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(apply(a, s));
    changed = changed || !(args.back() == a);
  }
  if (!changed) return t;
  return make(t.op(), std::move(args));
}

Term Signature::normalize(const Term& t) const {
  if (t.is_var() || t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(normalize(a));
  const Operator& o = op(t.op());
  if (o.assoc && args.size() > 2) {
    // Re-nest as a right-leaning chain so make() sees the binary shape.
    Term acc = args.back();
    for (std::size_t i = args.size() - 1; i-- > 0;) acc = make(t.op(), {args[i], acc});
    return acc;
  }
  return make(t.op(), std::move(args));
}

Term Signature::replace_at(const Term& t, const Position& p, const Term& u) const {
  if (p.empty()) return u;
  if (t.is_var() || p.front() >= t.arity()) throw Error("invalid position in replace_at");
  std::vector<Term> args(t.args().begin(), t.args().end());
  Position rest(p.begin() + 1, p.end());
  args[p.front()] = replace_at(args[p.front()], rest, u);
  const Operator& o = op(t.op());
  if (o.assoc && args.size() > 2) {
    Term acc = args.back();
    for (std::size_t i = args.size() - 1; i-- > 0;) acc = make(t.op(), {args[i], acc});
    return acc;
  }
  return make(t.op(), std::move(args));
}

bool Signature::is_constructor_term(const Term& t) const {
  if (t.is_var()) return true;
  if (!op(t.op()).ctor) return false;
  for (const auto& a : t.args())
    if (!is_constructor_term(a)) return false;
  return true;
}

bool Signature::is_collection_var(const Var& v, OpId id) const {
  return leq(op(id).result, v.sort);
}

Substitution compose(const Signature& sig, const Substitution& a, const Substitution& b) {
  Substitution out;
  for (const auto& [v, t] : a) out[v] = sig.apply(t, b);
  for (const auto& [v, t] : b)
    if (!out.count(v)) out[v] = t;
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_var() && it->second.var() == it->first)
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

Substitution fresh_rename(const VarSet& xs, const VarSet& avoid, FreshGen& gen) {
  Substitution s;
  for (const auto& v : xs) {
    Var f = gen.fresh(v);
    while (avoid.count(f) || xs.count(f)) f = gen.fresh(v);
    s[v] = Term::variable(f);
  }
  return s;
}

}  // namespace rl
