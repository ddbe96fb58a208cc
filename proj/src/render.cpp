#include "rl/render.hpp"

#include <json.hpp>

#include "rl/frontend.hpp"

namespace rl {

namespace {

using nlohmann::ordered_json;

std::string annotation(const Signature& sig, const char* rule, const std::string& label, const Substitution& s) {
  return std::string(rule) + "(" + label + ", " + print(sig, s) + ")";
}

void text_node(const Signature& sig, const ProofNode& n, const std::string& prefix, int depth, std::string& out) {
  out += std::string(2 * depth, ' ');
  if (!prefix.empty()) out += prefix + " ";
  out += print(sig, n.goal);
  switch (n.rule) {
    case RuleKind::Subsume:
      out += "  " + (n.label.empty() ? std::string("sub(*)") : annotation(sig, "sub", n.label, n.subst));
      break;
    case RuleKind::Vacuous:
      out += "  vacuous";
      break;
    case RuleKind::Open:
      out += "  open";
      break;
    default:
      break;
  }
  if (n.memo) out += "  [memo]";
  if (!n.note.empty()) out += "  -- " + n.note;
  out += "\n";
  for (const auto& c : n.children) {
    std::string p = n.rule == RuleKind::Axiom ? annotation(sig, "axiom", n.label, n.subst)
                                              : annotation(sig, "step", c.via, c.via_subst);
    text_node(sig, c, p, depth + 1, out);
  }
}

const PrintOptions kSorted{true};

ordered_json subst_json(const Signature& sig, const Substitution& s) {
  ordered_json j = ordered_json::object();
  for (const auto& [v, t] : s) j[print(sig, Term::variable(v), kSorted)] = print(sig, t, kSorted);
  return j;
}

ordered_json node_json(const Signature& sig, const ProofNode& n) {
  ordered_json j;
  ordered_json g;
  g["name"] = n.goal.name;
  g["text"] = print(sig, n.goal);
  g["lhs"] = print(sig, n.goal.lhs, kSorted);
  g["rhs"] = ordered_json::array();
  for (const auto& a : n.goal.rhs) g["rhs"].push_back(print(sig, a, kSorted));
  g["rhs_names"] = n.goal.rhs_names;
  j["goal"] = std::move(g);
  j["rule"] = to_string(n.rule);
  j["label"] = n.label;
  j["substitution"] = subst_json(sig, n.subst);
  j["via"] = n.via;
  j["via_substitution"] = subst_json(sig, n.via_subst);
  j["axioms_available"] = n.axioms_available;
  j["memo"] = n.memo;
  j["note"] = n.note;
  j["children"] = ordered_json::array();
  for (const auto& c : n.children) j["children"].push_back(node_json(sig, c));
  return j;
}

Atom atom_from(const Signature& sig, const std::string& text) {
  VarTable vt;
  PatternPredicate p = parse_pattern(sig, text, &vt);
  if (p.kind() != PatternPredicate::Kind::Atom) throw Error("expected a single pattern: " + text);
  return p.get_atom();
}

Substitution subst_from(const Signature& sig, const ordered_json& j) {
  Substitution s;
  for (const auto& [k, v] : j.items()) {
    VarTable vt;
    Term x = parse_term(sig, k, &vt);
    if (!x.is_var()) throw Error("substitution key is not a variable: " + k);
    s[x.var()] = parse_term(sig, v.get<std::string>(), &vt);
  }
  return s;
}

RuleKind rule_from(const std::string& r) {
  for (RuleKind k : {RuleKind::Step, RuleKind::Axiom, RuleKind::Subsume, RuleKind::Vacuous, RuleKind::Open})
    if (r == to_string(k)) return k;
  throw Error("unknown proof rule: " + r);
}

ProofNode node_from(const Signature& sig, const ordered_json& j) {
  ProofNode n;
  const auto& g = j.at("goal");
  n.goal.name = g.at("name").get<std::string>();
  n.goal.lhs = atom_from(sig, g.at("lhs").get<std::string>());
  for (const auto& a : g.at("rhs")) n.goal.rhs.push_back(atom_from(sig, a.get<std::string>()));
  n.goal.rhs_names = g.at("rhs_names").get<std::vector<std::string>>();
  n.rule = rule_from(j.at("rule").get<std::string>());
  n.label = j.at("label").get<std::string>();
  n.subst = subst_from(sig, j.at("substitution"));
  n.via = j.at("via").get<std::string>();
  n.via_subst = subst_from(sig, j.at("via_substitution"));
  n.axioms_available = j.at("axioms_available").get<bool>();
  n.memo = j.at("memo").get<bool>();
  n.note = j.at("note").get<std::string>();
  for (const auto& c : j.at("children")) n.children.push_back(node_from(sig, c));
  return n;
}

}  // namespace

std::string render_text(const Signature& sig, const ProofNode& root) {
  std::string out;
  text_node(sig, root, root.goal.name.empty() ? "" : root.goal.name + ":", 0, out);
  return out;
}

std::string render_text(const Signature& sig, const ProofResult& r) {
  std::string out;
  for (const auto& t : r.trees) out += render_text(sig, t);
  out += std::string("verdict: ") + to_string(r.verdict) + "\n";
  if (!r.aborted.empty()) out += "aborted: " + r.aborted + "\n";
  for (const auto& w : r.warnings) out += "warning: " + w + "\n";
  return out;
}

std::string render_json(const Signature& sig, const ProofNode& root, int indent) {
  return node_json(sig, root).dump(indent);
}

std::string render_json(const Signature& sig, const ProofResult& r, int indent) {
  ordered_json j;
  j["verdict"] = to_string(r.verdict);
  j["nodes"] = r.nodes;
  j["aborted"] = r.aborted;
  j["warnings"] = r.warnings;
  j["trees"] = ordered_json::array();
  for (const auto& t : r.trees) j["trees"].push_back(node_json(sig, t));
  return j.dump(indent);
}

ProofNode proof_from_json(const Signature& sig, const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed proof document: ") + e.what());
  }
  try {
    return node_from(sig, j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed proof document: ") + e.what());
  }
}

bool same_tree(const ProofNode& a, const ProofNode& b) {
  if (!(a.goal.name == b.goal.name && a.goal.lhs == b.goal.lhs && a.goal.rhs == b.goal.rhs &&
        a.goal.rhs_names == b.goal.rhs_names && a.rule == b.rule && a.label == b.label && a.subst == b.subst &&
        a.via == b.via && a.via_subst == b.via_subst && a.axioms_available == b.axioms_available &&
        a.memo == b.memo && a.note == b.note && a.children.size() == b.children.size()))
    return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!same_tree(a.children[i], b.children[i])) return false;
  return true;
}

}  // namespace rl
