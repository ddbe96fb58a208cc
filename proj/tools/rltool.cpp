// Command line front end.  Exit codes: 0 proved/holds, 1 refuted/violated,
// 2 inconclusive, 3 input error.
#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>

#include "rl/corpus.hpp"
#include "rl/render.hpp"

using namespace rl;

namespace {

constexpr int kInputError = 3;

// Splits at commas outside brackets.
std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void add_env(const RewriteTheory& th, const std::vector<std::string>& specs, EnvDomains& env) {
  for (const auto& spec : specs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) throw Error("--env expects sort=term,term: " + spec);
    std::string sort = spec.substr(0, eq);
    sort.erase(0, sort.find_first_not_of(' '));
    sort.erase(sort.find_last_not_of(' ') + 1);
    auto id = th.sig.sorts().find(sort);
    if (!id) throw Error("--env: unknown sort " + sort);
    for (const auto& t : split_terms(spec.substr(eq + 1))) {
      Term g = simplify(th, parse_term(th.sig, t));
      if (!g.ground()) throw Error("--env: term is not ground: " + t);
      env[*id].push_back(g);
    }
  }
}

struct ProveArgs {
  std::string theory, goals;
  unsigned depth = ProverConfig{}.max_depth;
  unsigned solver_depth = SolverConfig{}.narrow_depth;
  bool trace = false, json = false, with_oracle = false;
  OracleSettings oracle;
};

int run_check(const ProveArgs& a, bool claims, bool use_oracle) {
  RewriteTheory th = parse_theory(read_file(a.theory), a.theory);
  GoalFile g = parse_goals(read_file(a.goals), th, a.goals);
  CheckOptions opt;
  opt.prover.max_depth = a.depth;
  opt.prover.solver.narrow_depth = a.solver_depth;
  opt.claims = claims;
  opt.with_oracle = use_oracle;
  opt.oracle = a.oracle;
  CheckReport rep = check_goals(g, opt);
  if (a.json) {
    nlohmann::ordered_json j;
    j["verdict"] = to_string(rep.verdict);
    j["goals"] = nlohmann::ordered_json::array();
    for (const auto& o : rep.goals) {
      auto gj = nlohmann::ordered_json::parse(render_json(o.theory.sig, o.proof));
      gj["name"] = o.name;
      gj["kind"] = o.kind == GoalOutcome::Kind::Claim ? "claims" : "invariant";
      gj["goal_verdict"] = to_string(o.verdict);
      j["goals"].push_back(std::move(gj));
    }
    std::cout << j.dump(2) << "\n";
  } else {
    if (a.trace)
      for (const auto& o : rep.goals) std::cout << render_text(o.theory.sig, o.proof) << "\n";
    std::cout << summary(rep);
  }
  return exit_code(rep.verdict);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reachability logic prover and bounded state-space oracle"};
  app.require_subcommand(1);

  ProveArgs pa;
  auto* prove = app.add_subcommand("prove", "Prove the claims and invariants of a goal file");
  prove->add_option("theory", pa.theory, "Theory file")->required()->check(CLI::ExistingFile);
  prove->add_option("goals", pa.goals, "Goal file")->required()->check(CLI::ExistingFile);
  prove->add_option("--depth", pa.depth, "Maximum Step/Axiom applications per branch");
  prove->add_option("--solver-depth", pa.solver_depth, "Nested narrowing steps in the constraint solver");
  prove->add_flag("--trace", pa.trace, "Print the proof trees");
  prove->add_flag("--json", pa.json, "Print the proof trees as JSON");

  ProveArgs ia;
  auto* inv = app.add_subcommand("check-invariant", "Prove the invariants of a goal file");
  inv->add_option("theory", ia.theory, "Theory file")->required()->check(CLI::ExistingFile);
  inv->add_option("goals", ia.goals, "Goal file")->required()->check(CLI::ExistingFile);
  inv->add_option("--depth", ia.depth, "Maximum Step/Axiom applications per branch");
  inv->add_option("--solver-depth", ia.solver_depth, "Nested narrowing steps in the constraint solver");
  inv->add_flag("--with-oracle", ia.with_oracle, "Also run the bounded ground oracle");
  inv->add_option("--oracle-depth", ia.oracle.depth, "Exploration depth of the oracle");
  inv->add_option("--oracle-size", ia.oracle.binding_bound, "Size bound on start-state bindings");
  inv->add_flag("--trace", ia.trace, "Print the proof trees");
  inv->add_flag("--json", ia.json, "Print the proof trees as JSON");

  std::string sim_theory, from;
  unsigned sim_depth = 3;
  std::size_t max_states = ExploreConfig{}.max_states;
  std::vector<std::string> env_specs;
  auto* sim = app.add_subcommand("simulate", "Explore ground states breadth first and print the graph");
  sim->add_option("theory", sim_theory, "Theory file")->required()->check(CLI::ExistingFile);
  sim->add_option("--from", from, "Initial ground state")->required();
  sim->add_option("--depth", sim_depth, "Exploration depth")->required();
  sim->add_option("--env", env_specs, "Domain for open rule variables, sort=term,term");
  sim->add_option("--max-states", max_states, "State cap");

  std::string lint_theory;
  auto* lint = app.add_subcommand("lint", "Check a theory for structural problems");
  lint->add_option("theory", lint_theory, "Theory file")->required()->check(CLI::ExistingFile);

  std::string corpus_name;
  bool corpus_oracle = false;
  auto* corpus = app.add_subcommand("corpus", "List the shipped examples or run one");
  corpus->add_option("name", corpus_name, "Example to run");
  corpus->add_flag("--with-oracle", corpus_oracle, "Also run the bounded ground oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*prove) return run_check(pa, true, false);
    if (*inv) return run_check(ia, false, ia.with_oracle);
    if (*sim) {
      RewriteTheory th = parse_theory(read_file(sim_theory), sim_theory);
      ExploreConfig cfg;
      cfg.depth = sim_depth;
      cfg.max_states = max_states;
      add_env(th, env_specs, cfg.env);
      cfg.start = {parse_term(th.sig, from)};
      StateGraph g = explore(th, cfg);
      std::cout << export_graph(th.sig, g);
      std::cerr << g.states.size() << " states, " << g.edges.size() << " edges"
                << (g.state_cap_hit ? ", state cap reached" : "") << "\n";
      return 0;
    }
    if (*lint) {
      RewriteTheory th = parse_theory_unchecked(read_file(lint_theory), lint_theory);
      LintReport r = validate_theory(th);
      std::cout << (r.issues.empty() ? std::string("no issues\n") : r.text());
      return r.ok() ? 0 : 1;
    }
    if (*corpus) {
      if (corpus_name.empty()) {
        for (const auto& n : list_examples()) {
          ExampleCase c = load_example(n);
          std::cout << n << "\t" << to_string(c.expected) << "\t" << c.description << "\n";
        }
        return 0;
      }
      ExampleCase c = load_example(corpus_name);
      CheckOptions opt;
      opt.with_oracle = corpus_oracle;
      CheckReport rep = run_example(c, opt);
      std::cout << summary(rep) << "expected: " << to_string(c.expected) << "\n";
      return exit_code(rep.verdict);
    }
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
