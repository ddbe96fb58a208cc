#include "rl/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifndef RL_CORPUS_DIR
#define RL_CORPUS_DIR "corpus"
#endif

namespace rl {

namespace fs = std::filesystem;

std::string default_corpus_dir() {
  if (const char* e = std::getenv("RL_CORPUS_DIR"); e && *e) return e;
  return RL_CORPUS_DIR;
}

std::vector<std::string> list_examples(const std::string& root) {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& d : fs::directory_iterator(root, ec))
    if (d.is_directory() && fs::exists(d.path() / "case.json")) out.push_back(d.path().filename().string());
  if (ec) throw Error("cannot list corpus directory " + root + ": " + ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ExampleCase load_example(const std::string& name, const std::string& root) {
  const fs::path dir = fs::path(root) / name;
  if (!fs::exists(dir / "case.json")) throw Error("unknown example: " + name);
  ExampleCase c;
  try {
    auto j = nlohmann::json::parse(read_file((dir / "case.json").string()));
    c.name = j.at("name").get<std::string>();
    c.title = j.value("title", c.name);
    c.description = j.value("description", "");
    c.dir = dir.string();
    c.theory_path = (dir / j.at("theory").get<std::string>()).string();
    c.goals_path = (dir / j.at("goals").get<std::string>()).string();
    auto v = case_verdict_from(j.at("expected").get<std::string>());
    if (!v) throw Error("bad expected verdict in " + name);
    c.expected = *v;
    if (j.contains("oracle")) {
      const auto& o = j["oracle"];
      c.oracle.depth = o.value("depth", c.oracle.depth);
      c.oracle.binding_bound = o.value("binding_bound", c.oracle.binding_bound);
      c.oracle.max_states = o.value("max_states", c.oracle.max_states);
    }
    c.reconstruction = j.value("reconstruction", true);
    c.notes = j.value("notes", "");
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed case.json for " + name + ": " + e.what());
  }
  return c;
}

GoalFile load_goals(const ExampleCase& c) {
  RewriteTheory th = parse_theory(read_file(c.theory_path), c.theory_path);
  return parse_goals(read_file(c.goals_path), th, c.goals_path);
}

CheckReport run_example(const ExampleCase& c, CheckOptions opt) {
  opt.oracle = c.oracle;
  return check_goals(load_goals(c), opt);
}

}  // namespace rl
