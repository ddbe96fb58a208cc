// Registry of the shipped example cases, one directory each under the
// corpus root.
#pragma once

#include <string>
#include <vector>

#include "rl/check.hpp"

namespace rl {

struct ExampleCase {
  std::string name;
  std::string title;
  std::string description;
  std::string dir;
  std::string theory_path;
  std::string goals_path;
  CaseVerdict expected = CaseVerdict::Proved;
  OracleSettings oracle;
  /// Authored here rather than taken verbatim from the source.
  bool reconstruction = true;
  std::string notes;
};

/// $RL_CORPUS_DIR if set, else the directory compiled in.
std::string default_corpus_dir();

/// Names of the subdirectories holding a case.json, sorted.
std::vector<std::string> list_examples(const std::string& root = default_corpus_dir());
/// Throws Error for an unknown name or a malformed manifest.
ExampleCase load_example(const std::string& name, const std::string& root = default_corpus_dir());

std::string read_file(const std::string& path);

/// Parses the case's theory and goal file.
GoalFile load_goals(const ExampleCase& c);

/// check_goals with the oracle settings of the case.
CheckReport run_example(const ExampleCase& c, CheckOptions opt = {});

}  // namespace rl
