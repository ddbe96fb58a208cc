// Serial vs OpenMP timings for state exploration and the semantic check.
// Both kernels must produce identical results; the exit status is 1 when
// they do not.
#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <omp.h>

#include "rl/corpus.hpp"

using namespace rl;

namespace {

template <class F>
double best_of(unsigned repeat, F&& f) {
  double best = 1e300;
  for (unsigned i = 0; i < repeat; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

bool same(const StateGraph& a, const StateGraph& b) {
  if (a.states != b.states || a.edges.size() != b.edges.size()) return false;
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    if (a.edges[i].src != b.edges[i].src || a.edges[i].dst != b.edges[i].dst || a.edges[i].label != b.edges[i].label)
      return false;
  return true;
}

bool same(const SemanticsCheck& a, const SemanticsCheck& b) {
  return a.counterexample_found == b.counterexample_found && a.start_states == b.start_states &&
         a.graph_states == b.graph_states && a.inconclusive_starts == b.inconclusive_starts &&
         a.vacuous == b.vacuous;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs parallel oracle kernels"};
  unsigned depth = 8, repeat = 3, binding = 4, ids = 5;
  app.add_option("--depth", depth, "Exploration depth");
  app.add_option("--repeat", repeat, "Timed runs per kernel; the best is reported");
  app.add_option("--binding", binding, "Binding bound for the semantic check");
  app.add_option("--ids", ids, "Process identifiers available to join");
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d\n", omp_get_max_threads());
  bool ok = true;

  ExampleCase q = load_example("qlock");
  GoalFile g = load_goals(q);
  ExploreConfig ec;
  ec.depth = depth;
  // 0, s 0, s s 0, ... as the identifiers join may pick
  Term id = parse_term(g.theory.sig, "0");
  std::vector<Term>& dom = ec.env[g.theory.sig.sorts().id("Nat")];
  for (unsigned i = 0; i < ids; ++i, id = g.theory.sig.make(g.theory.sig.op_id("s_"), {id})) dom.push_back(id);
  ec.start = instances_bounded(g.theory, g.invariants.at(0).from.get_atom(), 3);
  StateGraph gs, gp;
  double ts = best_of(repeat, [&] { gs = explore_serial(g.theory, ec); });
  double tp = best_of(repeat, [&] { gp = explore(g.theory, ec); });
  bool eq = same(gs, gp);
  ok = ok && eq;
  std::printf("%-28s %8zu states  serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n", "explore qlock", gs.states.size(),
              ts, tp, ts / tp, eq ? "identical" : "DIFFERENT");

  ExampleCase c = load_example("qlock");
  GoalFile circ = parse_goals(read_file(c.dir + "/circularities.rl"), g.theory, "circularities.rl");
  SemanticsConfig sc;
  sc.depth = depth < 6 ? depth : 6;
  sc.binding_bound = binding;
  sc.env = g.env;
  for (const auto& f : circ.claims) {
    SemanticsCheck ss, sp;
    double s1 = best_of(repeat, [&] { ss = check_formula_semantics_serial(circ.theory, f, *circ.terminating, sc); });
    double s2 = best_of(repeat, [&] { sp = check_formula_semantics(circ.theory, f, *circ.terminating, sc); });
    bool e2 = same(ss, sp);
    ok = ok && e2;
    std::printf("%-28s %8zu starts  serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n",
                ("semantics " + f.name).c_str(), ss.start_states, s1, s2, s1 / s2, e2 ? "identical" : "DIFFERENT");
  }
  return ok ? 0 : 1;
}
