#include "rl/term.hpp"

#include <functional>

namespace rl {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Term Term::variable(const Var& v) {
  auto n = std::make_shared<TermNode>();
  n->op = -1;
  n->sort = v.sort;
  n->var = v;
  n->hash = mix(std::hash<std::string>{}(v.name), static_cast<std::size_t>(v.sort) + 17);
  n->size = 1;
  n->ground = false;
  return Term(std::move(n));
}

Term Term::application(OpId op, SortId sort, std::vector<Term> args, bool flattened) {
  auto n = std::make_shared<TermNode>();
  n->op = op;
  n->sort = sort;
  std::size_t h = mix(0x51ed27, static_cast<std::size_t>(op));
  unsigned size = flattened ? 0 : 1;
  bool ground = true;
  for (const auto& a : args) {
    h = mix(h, a.hash());
    size += a.size();
    ground = ground && a.ground();
  }
  n->hash = h;
  n->size = size;
  n->ground = ground;
  n->args = std::move(args);
  return Term(std::move(n));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash() || a.op() != b.op()) return false;
  if (a.is_var()) return a.var() == b.var();
  if (a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.arg(i) == b.arg(i))) return false;
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  // Variables sort before applications.
  if (a.is_var() != b.is_var()) return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_var()) return a.var() <=> b.var();
  if (auto c = a.op() <=> b.op(); c != 0) return c;
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (auto c = a.arg(i) <=> b.arg(i); c != 0) return c;
  return std::strong_ordering::equal;
}

void collect_vars(const Term& t, VarSet& out) {
  if (t.ground()) return;
  if (t.is_var()) {
    out.insert(t.var());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}

VarSet vars(const Term& t) {
  VarSet s;
  collect_vars(t, s);
  return s;
}

bool occurs(const Var& v, const Term& t) {
  if (t.ground()) return false;
  if (t.is_var()) return t.var() == v;
  for (const auto& a : t.args())
    if (occurs(v, a)) return true;
  return false;
}

bool contains_op(const Term& t, OpId op) {
  if (t.is_var()) return false;
  if (t.op() == op) return true;
  for (const auto& a : t.args())
    if (contains_op(a, op)) return true;
  return false;
}

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (cur->is_var() || p[k] >= cur->arity())
      throw Error("invalid position: step " + std::to_string(k) + " (index " + std::to_string(p[k]) +
                  ") does not exist");
    cur = &cur->arg(p[k]);
  }
  return *cur;
}

VarSet domain(const Substitution& s) {
  VarSet d;
  for (const auto& [v, t] : s)
    if (!(t.is_var() && t.var() == v)) d.insert(v);
  return d;
}

VarSet range_vars(const Substitution& s) {
  VarSet r;
  for (const auto& [v, t] : s)
    if (!(t.is_var() && t.var() == v)) collect_vars(t, r);
  return r;
}

std::string name_stem(const std::string& name) {
  auto pos = name.find('#');
  return pos == std::string::npos ? name : name.substr(0, pos);
}

Var FreshGen::fresh(const Var& base) {
  return Var{name_stem(base.name) + "#" + std::to_string(next_++), base.sort};
}

}  // namespace rl
