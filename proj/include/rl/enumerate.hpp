// Enumeration of canonical ground constructor terms by size.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "rl/signature.hpp"

namespace rl {

/// Memoizing enumerator.  Not thread-safe; use one instance per thread.
class GroundEnumerator {
 public:
  explicit GroundEnumerator(const Signature& sig) : sig_(sig) {}

  /// Canonical ground constructor terms of sort <= s with exactly `size`
  /// (see Term::size), in a deterministic order.
  const std::vector<Term>& exact(SortId s, unsigned size);
  /// All sizes from 1 to max_size, smallest first.
  std::vector<Term> up_to(SortId s, unsigned max_size);

  /// True when s has finitely many ground constructor terms.
  bool finite(SortId s);
  /// Every ground constructor term of a finite sort.
  const std::vector<Term>& all(SortId s);
  /// A smallest ground constructor term of sort s, if any exists within
  /// the given size.
  std::optional<Term> smallest(SortId s, unsigned max_size = 8);

 private:
  void gen_op(OpId op, unsigned size, std::vector<Term>& out);
  std::vector<Term> assoc_elements(OpId op, unsigned size);

  const Signature& sig_;
  std::map<std::pair<SortId, unsigned>, std::vector<Term>> memo_;
  std::map<SortId, bool> finite_;
  std::map<SortId, std::vector<Term>> all_;
};

}  // namespace rl
