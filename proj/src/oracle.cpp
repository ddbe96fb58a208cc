#include "rl/oracle.hpp"

#include <deque>
#include <set>

#include "rl/frontend.hpp"

namespace rl {

std::optional<std::size_t> StateGraph::find(const Term& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t StateGraph::add_state(const Term& t, unsigned d, std::optional<std::size_t> parent_edge) {
  std::size_t id = states.size();
  index_.emplace(t, id);
  states.push_back(t);
  depth.push_back(d);
  expanded.push_back(false);
  out.emplace_back();
  parent.push_back(parent_edge);
  return id;
}

Trace StateGraph::trace_to(std::size_t id) const {
  Trace tr;
  std::vector<std::size_t> path{id};
  while (parent[path.back()]) path.push_back(edges[*parent[path.back()]].src);
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    tr.states.push_back(states[*it]);
    if (parent[*it]) tr.labels.push_back(edges[*parent[*it]].label);
  }
  return tr;
}

namespace {

std::vector<Term> canonical_starts(const RewriteTheory& th, const std::vector<Term>& start) {
  std::vector<Term> out;
  for (const auto& t : start) {
    if (!t.ground()) throw Error("start state is not ground");
    if (th.state_sort >= 0 && !th.sig.leq(t.sort(), th.state_sort))
      throw Error("start state does not have the state sort");
    out.push_back(simplify(th, t));
  }
  return out;
}

// Successors with duplicate (label, target) pairs removed, in a fixed order.
std::vector<std::pair<std::string, Term>> successors(const RewriteTheory& th, const Term& s, const EnvDomains& env) {
  std::set<std::pair<std::string, Term>> seen;
  std::vector<std::pair<std::string, Term>> out;
  for (auto& st : ground_step(th, s, env))
    if (seen.emplace(st.label, st.target).second) out.emplace_back(st.label, st.target);
  return out;
}

// Adds the successors of `id`; returns the ids of states not seen before.
void merge(StateGraph& g, std::size_t id, const std::vector<std::pair<std::string, Term>>& succ,
           const ExploreConfig& cfg, std::vector<std::size_t>& fresh) {
  g.expanded[id] = true;
  for (const auto& [label, target] : succ) {
    auto dst = g.find(target);
    std::size_t e = g.edges.size();
    if (!dst) {
      if (g.states.size() >= cfg.max_states) {
        // Dropped successor: the state counts as unexpanded.
        g.state_cap_hit = g.truncated = true;
        g.expanded[id] = false;
        continue;
      }
      dst = g.add_state(target, g.depth[id] + 1, e);
      fresh.push_back(*dst);
    }
    g.edges.push_back({id, label, *dst});
    g.out[id].push_back(e);
  }
}

void seed(StateGraph& g, const RewriteTheory& th, const ExploreConfig& cfg, std::vector<std::size_t>& frontier) {
  for (const auto& t : canonical_starts(th, cfg.start))
    if (!g.find(t)) frontier.push_back(g.add_state(t, 0, std::nullopt));
}

}  // namespace

StateGraph explore_serial(const RewriteTheory& th, const ExploreConfig& cfg) {
  StateGraph g;
  std::vector<std::size_t> starts;
  seed(g, th, cfg, starts);
  std::deque<std::size_t> queue(starts.begin(), starts.end());
  while (!queue.empty()) {
    std::size_t id = queue.front();
    queue.pop_front();
    if (g.depth[id] >= cfg.depth) {
      g.truncated = true;
      continue;
    }
    std::vector<std::size_t> fresh;
    merge(g, id, successors(th, g.states[id], cfg.env), cfg, fresh);
    queue.insert(queue.end(), fresh.begin(), fresh.end());
  }
  return g;
}

StateGraph explore(const RewriteTheory& th, const ExploreConfig& cfg) {
  StateGraph g;
  std::vector<std::size_t> frontier;
  seed(g, th, cfg, frontier);
  for (unsigned level = 0; !frontier.empty(); ++level) {
    if (level >= cfg.depth) {
      g.truncated = true;
      break;
    }
    std::vector<std::vector<std::pair<std::string, Term>>> succ(frontier.size());
    std::vector<std::string> errors(frontier.size());
    const long n = static_cast<long>(frontier.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) {
      try {
        succ[i] = successors(th, g.states[frontier[i]], cfg.env);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
    for (const auto& e : errors)
      if (!e.empty()) throw Error(e);
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) merge(g, frontier[i], succ[i], cfg, next);
    frontier = std::move(next);
  }
  return g;
}

std::string state_hash(const Signature& sig, const Term& t) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : print(sig, t)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string export_graph(const Signature& sig, const StateGraph& g) {
  std::vector<std::string> hs;
  hs.reserve(g.states.size());
  std::string out = "# states\n";
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    hs.push_back(state_hash(sig, g.states[i]));
    out += hs.back() + "\t" + std::to_string(g.depth[i]) + "\t" + print(sig, g.states[i]) + "\n";
  }
  out += "# edges\n";
  for (const auto& e : g.edges) out += hs[e.src] + "\t" + e.label + "\t" + hs[e.dst] + "\n";
  return out;
}

std::string print(const Signature& sig, const Trace& tr) {
  std::string out;
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    if (i) out += "  --" + tr.labels[i - 1] + "-> ";
    out += print(sig, tr.states[i]) + "\n";
  }
  return out;
}

InvariantCheck check_invariant_ground(const RewriteTheory& th, const std::vector<Term>& s0, const PatternPredicate& p,
                                      ExploreConfig cfg) {
  cfg.start = s0;
  StateGraph g = explore(th, cfg);
  const long n = static_cast<long>(g.states.size());
  std::vector<char> ok(g.states.size(), 1);
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) ok[i] = member(th, p, g.states[i]);
  InvariantCheck r;
  r.states = g.states.size();
  r.truncated = g.truncated;
  // Breadth-first ids make the first violation a shortest one.
  for (std::size_t i = 0; i < g.states.size(); ++i)
    if (!ok[i]) {
      r.holds = false;
      r.counterexample = g.trace_to(i);
      break;
    }
  return r;
}

namespace {

struct StartState {
  Term term;
  Substitution params;
};

struct StartResult {
  bool counterexample = false;
  bool cut = false;
  Trace trace;
};

// Bounded search for a run that reaches [[T]] without visiting the rhs.
class Avoider {
 public:
  Avoider(const RewriteTheory& th, const StateGraph& g, const std::vector<char>& in_t, std::vector<Atom> rhs,
          unsigned member_bound)
      : th_(th), g_(g), in_t_(in_t), rhs_(std::move(rhs)), bound_(member_bound), in_rhs_(g.states.size(), -1) {}

  bool avoid(std::size_t id, unsigned d) {
    if (in_rhs(id)) return false;
    if (in_t_[id]) return true;
    if (!g_.expanded[id] || d == 0) {
      if (!(g_.expanded[id] && g_.out[id].empty())) cut = true;
      return false;
    }
    const std::uint64_t key = (static_cast<std::uint64_t>(id) << 16) | d;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.has_value();
    memo_[key] = std::nullopt;
    for (std::size_t e : g_.out[id])
      if (avoid(g_.edges[e].dst, d - 1)) {
        memo_[key] = e;
        return true;
      }
    return false;
  }

  Trace trace(std::size_t id, unsigned d) const {
    Trace tr{{g_.states[id]}, {}};
    while (!in_t_[id]) {
      std::size_t e = *memo_.at((static_cast<std::uint64_t>(id) << 16) | d);
      id = g_.edges[e].dst;
      --d;
      tr.labels.push_back(g_.edges[e].label);
      tr.states.push_back(g_.states[id]);
    }
    return tr;
  }

  bool cut = false;

 private:
  bool in_rhs(std::size_t id) {
    if (in_rhs_[id] < 0) {
      in_rhs_[id] = 0;
      for (const auto& a : rhs_)
        if (member(th_, a, g_.states[id], bound_)) {
          in_rhs_[id] = 1;
          break;
        }
    }
    return in_rhs_[id];
  }

  const RewriteTheory& th_;
  const StateGraph& g_;
  const std::vector<char>& in_t_;
  std::vector<Atom> rhs_;
  unsigned bound_;
  std::vector<signed char> in_rhs_;
  std::unordered_map<std::uint64_t, std::optional<std::size_t>> memo_;
};

template <bool Parallel>
SemanticsCheck semantics(const RewriteTheory& th, const ReachFormula& f, const PatternPredicate& t,
                         const SemanticsConfig& cfg) {
  if (cfg.depth >= (1u << 16)) throw Error("semantic check depth too large");
  const VarSet params = f.parameters();
  std::vector<StartState> starts;
  std::set<std::pair<Term, Substitution>> seen;
  for (auto& in : instance_bindings(th, f.lhs, cfg.binding_bound)) {
    Substitution rho;
    for (const auto& v : params) rho[v] = in.binding.at(v);
    if (seen.emplace(in.term, rho).second) starts.push_back({in.term, std::move(rho)});
    if (starts.size() >= cfg.max_starts) break;
  }

  ExploreConfig ec;
  ec.depth = cfg.depth;
  ec.max_states = cfg.max_states;
  ec.env = cfg.env;
  for (const auto& s : starts) ec.start.push_back(s.term);
  StateGraph g = Parallel ? explore(th, ec) : explore_serial(th, ec);

  SemanticsCheck r;
  r.start_states = starts.size();
  r.graph_states = g.states.size();
  r.state_cap_hit = g.state_cap_hit;

  const long n = static_cast<long>(g.states.size());
  std::vector<char> in_t(g.states.size(), 0);
#pragma omp parallel for schedule(dynamic, 16) if (Parallel)
  for (long i = 0; i < n; ++i) in_t[i] = member(th, t, g.states[i], cfg.member_bound);
  r.vacuous = true;
  for (long i = 0; i < n; ++i)
    if (in_t[i]) {
      r.vacuous = false;
      if (g.expanded[i] && !g.out[i].empty()) ++r.terminating_with_successors;
    }

  std::vector<StartResult> res(starts.size());
  std::vector<std::string> errors(starts.size());
  const long m = static_cast<long>(starts.size());
#pragma omp parallel for schedule(dynamic, 4) if (Parallel)
  for (long i = 0; i < m; ++i) {
    try {
      std::vector<Atom> rhs;
      for (const auto& a : f.rhs) rhs.push_back(apply(th.sig, a, starts[i].params));
      Avoider av(th, g, in_t, std::move(rhs), cfg.member_bound);
      std::size_t id = *g.find(starts[i].term);
      if (av.avoid(id, cfg.depth)) {
        res[i].counterexample = true;
        // Report a shortest run; memo entries are valid for any order.
        for (unsigned d = 0; d <= cfg.depth; ++d)
          if (av.avoid(id, d)) {
            res[i].trace = av.trace(id, d);
            break;
          }
      }
      res[i].cut = av.cut;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw Error(e);
  for (auto& x : res) {
    if (x.cut) ++r.inconclusive_starts;
    if (x.counterexample && !r.counterexample_found) {
      r.counterexample_found = true;
      r.counterexample = std::move(x.trace);
    }
  }
  return r;
}

}  // namespace

SemanticsCheck check_formula_semantics(const RewriteTheory& th, const ReachFormula& f, const PatternPredicate& t,
                                       const SemanticsConfig& cfg) {
  return semantics<true>(th, f, t, cfg);
}

SemanticsCheck check_formula_semantics_serial(const RewriteTheory& th, const ReachFormula& f,
                                              const PatternPredicate& t, const SemanticsConfig& cfg) {
  return semantics<false>(th, f, t, cfg);
}

}  // namespace rl
