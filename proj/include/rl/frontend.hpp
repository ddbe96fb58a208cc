// Text formats: theory files, goal files, and printing of terms,
// formulas, patterns and theories.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rl/pattern.hpp"

namespace rl {

/// A syntax or typing error with its source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& origin, int line, int col, const std::string& msg);
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

/// Variables declared inline as `name:Sort`, shared across a statement.
using VarTable = std::map<std::string, Var>;

/// Parses a theory file and runs the linter; lint errors throw.
RewriteTheory parse_theory(const std::string& text, const std::string& origin = "<theory>");
/// Same, without linting.
RewriteTheory parse_theory_unchecked(const std::string& text, const std::string& origin = "<theory>");

struct InvariantSpec {
  std::string name;
  PatternPredicate from;
  PatternPredicate always;
};

struct GoalFile {
  std::string name;
  /// The theory the goals were checked against, after any `transform`.
  RewriteTheory theory;
  std::optional<PatternPredicate> terminating;
  std::vector<ReachFormula> claims;
  std::vector<InvariantSpec> invariants;
  EnvDomains env;
};

GoalFile parse_goals(const std::string& text, const RewriteTheory& th, const std::string& origin = "<goals>");

/// Single expressions.  `vars` supplies and receives inline declarations.
Term parse_term(const Signature& sig, const std::string& text, VarTable* vars = nullptr);
Formula parse_formula(const Signature& sig, const std::string& text, VarTable* vars = nullptr);
PatternPredicate parse_pattern(const Signature& sig, const std::string& text, VarTable* vars = nullptr);

struct PrintOptions {
  /// Writes every variable as `name:Sort`.
  bool sorts = false;
};

std::string print(const Signature& sig, const Term& t, PrintOptions o = {});
std::string print(const Signature& sig, const Formula& f, PrintOptions o = {});
std::string print(const Signature& sig, const Atom& a, PrintOptions o = {});
std::string print(const Signature& sig, const PatternPredicate& p, PrintOptions o = {});
std::string print(const Signature& sig, const ReachFormula& f, PrintOptions o = {});
std::string print(const Signature& sig, const Substitution& s, PrintOptions o = {});
/// A theory file that parses back to the same theory.
std::string print_theory(const RewriteTheory& th);

}  // namespace rl
