// Matching modulo free / comm / assoc(+id) / assoc+comm(+id) operators.
//
// The subject is never instantiated, so instead of going through the
// general unification machinery this works directly on argument lists:
// multiset distribution for AC operators, prefix splitting for A
// operators.

#include <algorithm>
#include <functional>

#include "rl/eq.hpp"

namespace rl {

namespace {

using Cont = std::function<void(const Substitution&)>;

class Matcher {
 public:
  Matcher(const Signature& sig, const VarSet& prot) : sig_(sig), prot_(prot) {}

  void match(const Term& p, const Term& s, const Substitution& b, const Cont& k) const {
    if (p.is_var()) {
      match_var(p, s, b, k);
      return;
    }
    const Operator& op = sig_.op(p.op());
    if (op.assoc) {
      std::vector<Term> elems = elements(p.op(), s);
      if (!elems_ok_) return;
      std::vector<Term> pats(p.args().begin(), p.args().end());
      if (op.comm)
        match_ac(p.op(), std::move(pats), std::move(elems), b, k);
      else
        match_a(p.op(), pats, 0, elems, 0, b, k);
      return;
    }
    if (s.is_var() || s.op() != p.op() || s.arity() != p.arity()) return;
    if (op.comm) {
      match_args(p, s, 0, {0, 1}, b, k);
      if (!(s.arg(0) == s.arg(1))) match_args(p, s, 0, {1, 0}, b, k);
      return;
    }
    std::vector<std::size_t> id(p.arity());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
    match_args(p, s, 0, id, b, k);
  }

 private:
  void match_var(const Term& p, const Term& s, const Substitution& b, const Cont& k) const {
    const Var& v = p.var();
    if (prot_.count(v)) {
      if (p == s) k(b);
      return;
    }
    if (auto it = b.find(v); it != b.end()) {
      if (it->second == s) k(b);
      return;
    }
    if (!sig_.leq(s.sort(), v.sort)) return;
    Substitution nb = b;
    nb.emplace(v, s);
    k(nb);
  }

  void match_args(const Term& p, const Term& s, std::size_t i, const std::vector<std::size_t>& perm,
                  const Substitution& b, const Cont& k) const {
    if (i == p.arity()) {
      k(b);
      return;
    }
    match(p.arg(i), s.arg(perm[i]), b, [&](const Substitution& nb) { match_args(p, s, i + 1, perm, nb, k); });
  }

  // The argument list that subject `s` contributes under associative `op`.
  std::vector<Term> elements(OpId op, const Term& s) const {
    elems_ok_ = true;
    const Operator& o = sig_.op(op);
    if (!s.is_var() && s.op() == op) return {s.args().begin(), s.args().end()};
    if (o.has_identity() && s == o.identity) return {};
    if (!sig_.leq(s.sort(), o.args[0])) {
      elems_ok_ = false;
      return {};
    }
    return {s};
  }

  bool unbound_collection(OpId op, const Term& t, const Substitution& b) const {
    return t.is_var() && !prot_.count(t.var()) && !b.count(t.var()) && sig_.is_collection_var(t.var(), op);
  }

  Term rebuild(OpId op, const std::vector<Term>& elems) const {
    const Operator& o = sig_.op(op);
    if (elems.empty()) return o.identity;
    if (elems.size() == 1) return elems.front();
    Term acc = elems.back();
    for (std::size_t i = elems.size() - 1; i-- > 0;) acc = sig_.make(op, {elems[i], acc});
    return acc;
  }

  // ---- associative + commutative -------------------------------------

  void match_ac(OpId op, std::vector<Term> pats, std::vector<Term> elems, const Substitution& b,
                const Cont& k) const {
    const Operator& o = sig_.op(op);
    // Consume every pattern that is not an unbound collection variable.
    for (std::size_t i = 0; i < pats.size(); ++i) {
      const Term& p = pats[i];
      if (unbound_collection(op, p, b)) continue;
      std::vector<Term> rest_p;
      for (std::size_t j = 0; j < pats.size(); ++j)
        if (j != i) rest_p.push_back(pats[j]);
      if (p.is_var() && (prot_.count(p.var()) || b.count(p.var()))) {
        // Known value: remove its elements from the subject.
        Term val = prot_.count(p.var()) ? p : b.at(p.var());
        std::vector<Term> need = elements(op, val);
        std::vector<Term> remaining = elems;
        for (const auto& n : need) {
          auto it = std::find(remaining.begin(), remaining.end(), n);
          if (it == remaining.end()) return;
          remaining.erase(it);
        }
        match_ac(op, std::move(rest_p), std::move(remaining), b, k);
        return;
      }
      // Single element: try every distinct subject element.
      for (std::size_t e = 0; e < elems.size(); ++e) {
        if (e > 0 && elems[e] == elems[e - 1]) continue;
        std::vector<Term> remaining;
        for (std::size_t j = 0; j < elems.size(); ++j)
          if (j != e) remaining.push_back(elems[j]);
        match(p, elems[e], b, [&](const Substitution& nb) { match_ac(op, rest_p, remaining, nb, k); });
      }
      return;
    }
    // Only unbound collection variables remain.
    std::vector<std::pair<Var, unsigned>> cvars;
    for (const auto& p : pats) {
      auto it = std::find_if(cvars.begin(), cvars.end(), [&](const auto& e) { return e.first == p.var(); });
      if (it == cvars.end())
        cvars.emplace_back(p.var(), 1);
      else
        ++it->second;
    }
    if (cvars.empty()) {
      if (elems.empty()) k(b);
      return;
    }
    // Group the subject into distinct values with counts.
    std::vector<std::pair<Term, unsigned>> groups;
    for (const auto& e : elems) {
      if (!groups.empty() && groups.back().first == e)
        ++groups.back().second;
      else
        groups.emplace_back(e, 1);
    }
    std::vector<std::vector<Term>> share(cvars.size());
    distribute(op, cvars, groups, 0, 0, share, b, k, o.has_identity());
  }

  void distribute(OpId op, const std::vector<std::pair<Var, unsigned>>& cvars,
                  const std::vector<std::pair<Term, unsigned>>& groups, std::size_t g, std::size_t v,
                  std::vector<std::vector<Term>>& share, const Substitution& b, const Cont& k,
                  bool has_id) const {
    if (g == groups.size()) {
      Substitution nb = b;
      for (std::size_t i = 0; i < cvars.size(); ++i) {
        if (share[i].empty() && !has_id) return;
        Term val = rebuild(op, share[i]);
        if (!sig_.leq(val.sort(), cvars[i].first.sort)) return;
        nb.emplace(cvars[i].first, val);
      }
      k(nb);
      return;
    }
    // Remaining count of group g to hand out among variables v..end.
    unsigned assigned = 0;
    for (std::size_t i = 0; i < v; ++i)
      assigned += cvars[i].second *
                  static_cast<unsigned>(std::count(share[i].begin(), share[i].end(), groups[g].first));
    unsigned left = groups[g].second - assigned;
    if (v + 1 == cvars.size()) {
      if (left % cvars[v].second != 0) return;
      unsigned c = left / cvars[v].second;
      for (unsigned r = 0; r < c; ++r) share[v].push_back(groups[g].first);
      distribute(op, cvars, groups, g + 1, 0, share, b, k, has_id);
      share[v].resize(share[v].size() - c);
      return;
    }
    for (unsigned c = 0; c * cvars[v].second <= left; ++c) {
      for (unsigned r = 0; r < c; ++r) share[v].push_back(groups[g].first);
      distribute(op, cvars, groups, g, v + 1, share, b, k, has_id);
      share[v].resize(share[v].size() - c);
    }
  }

  // ---- associative (lists) ---------------------------------------------

  void match_a(OpId op, const std::vector<Term>& pats, std::size_t i, const std::vector<Term>& elems,
               std::size_t j, const Substitution& b, const Cont& k) const {
    const Operator& o = sig_.op(op);
    if (i == pats.size()) {
      if (j == elems.size()) k(b);
      return;
    }
    const Term& p = pats[i];
    if (unbound_collection(op, p, b)) {
      std::size_t min_len = o.has_identity() ? 0 : 1;
      std::size_t rest_min = 0;
      for (std::size_t q = i + 1; q < pats.size(); ++q)
        if (!(pats[q].is_var() && sig_.is_collection_var(pats[q].var(), op) && o.has_identity())) ++rest_min;
      for (std::size_t len = min_len; j + len + rest_min <= elems.size(); ++len) {
        std::vector<Term> seg(elems.begin() + static_cast<std::ptrdiff_t>(j),
                              elems.begin() + static_cast<std::ptrdiff_t>(j + len));
        Term val = rebuild(op, seg);
        if (!sig_.leq(val.sort(), p.var().sort)) continue;
        Substitution nb = b;
        nb.emplace(p.var(), val);
        match_a(op, pats, i + 1, elems, j + len, nb, k);
      }
      return;
    }
    if (p.is_var() && (prot_.count(p.var()) || b.count(p.var()))) {
      Term val = prot_.count(p.var()) ? p : b.at(p.var());
      std::vector<Term> need = elements(op, val);
      if (j + need.size() > elems.size()) return;
      for (std::size_t q = 0; q < need.size(); ++q)
        if (!(need[q] == elems[j + q])) return;
      match_a(op, pats, i + 1, elems, j + need.size(), b, k);
      return;
    }
    if (j >= elems.size()) return;
    match(p, elems[j], b, [&](const Substitution& nb) { match_a(op, pats, i + 1, elems, j + 1, nb, k); });
  }

  const Signature& sig_;
  const VarSet& prot_;
  mutable bool elems_ok_ = true;
};

}  // namespace

bool b_equal(const Signature& sig, const Term& a, const Term& b) {
  return sig.normalize(a) == sig.normalize(b);
}

std::vector<Substitution> match_modulo(const Signature& sig, const Term& pattern, const Term& subject,
                                       const VarSet& protected_vars, const Substitution& seed) {
  std::vector<Substitution> out;
  Matcher m(sig, protected_vars);
  m.match(pattern, subject, seed, [&](const Substitution& b) { out.push_back(b); });
  sort_substitutions(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Substitution> match_modulo(const Signature& sig, const Term& pattern, const Term& subject,
                                       const VarSet& protected_vars) {
  return match_modulo(sig, pattern, subject, protected_vars, {});
}

void sort_substitutions(std::vector<Substitution>& subs) {
  std::sort(subs.begin(), subs.end(), [](const Substitution& a, const Substitution& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first < y.first;
      return x.second < y.second;
    });
  });
}

}  // namespace rl
