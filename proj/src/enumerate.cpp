#include "rl/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace rl {

namespace {

// All ways to write `total` as an ordered sum of `parts` positive integers.
void compositions(unsigned total, std::size_t parts, std::vector<unsigned>& cur,
                  const std::function<void(const std::vector<unsigned>&)>& k) {
  if (cur.size() + 1 == parts) {
    if (total >= 1) {
      cur.push_back(total);
      k(cur);
      cur.pop_back();
    }
    return;
  }
  for (unsigned first = 1; first + (parts - cur.size() - 1) <= total; ++first) {
    cur.push_back(first);
    compositions(total - first, parts, cur, k);
    cur.pop_back();
  }
}

}  // namespace

const std::vector<Term>& GroundEnumerator::exact(SortId s, unsigned size) {
  auto key = std::make_pair(s, size);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  memo_.emplace(key, std::vector<Term>{});  // guards re-entry
  std::set<Term> acc;
  if (size > 0) {
    for (OpId i = 0; i < static_cast<OpId>(sig_.op_count()); ++i) {
      const Operator& o = sig_.op(i);
      if (!o.ctor || !sig_.leq(o.result, s)) continue;
      std::vector<Term> out;
      gen_op(i, size, out);
      for (auto& t : out)
        if (t.size() == size && sig_.leq(t.sort(), s)) acc.insert(std::move(t));
    }
  }
  auto& slot = memo_[key];
  slot.assign(acc.begin(), acc.end());
  return slot;
}

std::vector<Term> GroundEnumerator::assoc_elements(OpId op, unsigned size) {
  const Operator& o = sig_.op(op);
  std::vector<Term> out;
  for (const auto& t : exact(o.args[0], size)) {
    if (t.op() == op) continue;
    if (o.has_identity() && t == o.identity) continue;
    out.push_back(t);
  }
  return out;
}

void GroundEnumerator::gen_op(OpId op, unsigned size, std::vector<Term>& out) {
  const Operator& o = sig_.op(op);
  if (o.arity() == 0) {
    if (size == 1) out.push_back(sig_.make(op, {}));
    return;
  }
  if (o.assoc) {
    // Flattened: size is the sum of at least two element sizes.
    struct Elem {
      unsigned size;
      Term t;
    };
    std::vector<Elem> pool;
    for (unsigned k = 1; k < size; ++k)
      for (auto& t : assoc_elements(op, k)) pool.push_back({k, t});
    std::vector<Term> cur;
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t from, unsigned left) {
      if (left == 0) {
        if (cur.size() >= 2) out.push_back(Term::application(op, o.result, cur, true));
        return;
      }
      for (std::size_t i = o.comm ? from : 0; i < pool.size(); ++i) {
        if (pool[i].size > left) continue;
        cur.push_back(pool[i].t);
        rec(i, left - pool[i].size);
        cur.pop_back();
      }
    };
    rec(0, size);
    if (o.comm)
      for (auto& t : out) {
        std::vector<Term> args(t.args().begin(), t.args().end());
        std::sort(args.begin(), args.end());
        t = Term::application(op, o.result, std::move(args), true);
      }
    return;
  }
  if (size < 1 + o.arity()) return;
  std::vector<unsigned> cur;
  compositions(size - 1, o.arity(), cur, [&](const std::vector<unsigned>& sizes) {
    std::vector<const std::vector<Term>*> doms;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      doms.push_back(&exact(o.args[i], sizes[i]));
      if (doms.back()->empty()) return;
    }
    std::vector<std::size_t> idx(sizes.size(), 0);
    while (true) {
      std::vector<Term> args;
      for (std::size_t i = 0; i < idx.size(); ++i) args.push_back((*doms[i])[idx[i]]);
      out.push_back(sig_.make(op, std::move(args)));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == doms[k]->size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  });
}

std::vector<Term> GroundEnumerator::up_to(SortId s, unsigned max_size) {
  std::vector<Term> out;
  for (unsigned k = 1; k <= max_size; ++k) {
    const auto& e = exact(s, k);
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

bool GroundEnumerator::finite(SortId s) {
  if (auto it = finite_.find(s); it != finite_.end()) return it->second;
  // Depth-first search over the constructor dependency graph; reaching a
  // sort already on the stack means terms can nest without bound.
  std::set<SortId> stack;
  std::function<bool(SortId)> fin = [&](SortId x) -> bool {
    if (auto it = finite_.find(x); it != finite_.end()) return it->second;
    if (stack.count(x)) return false;
    stack.insert(x);
    bool ok = true;
    for (OpId i = 0; i < static_cast<OpId>(sig_.op_count()) && ok; ++i) {
      const Operator& o = sig_.op(i);
      if (!o.ctor || !sig_.leq(o.result, x)) continue;
      if (o.assoc) {
        ok = false;
        break;
      }
      for (SortId a : o.args) ok = ok && fin(a);
    }
    stack.erase(x);
    if (stack.empty() || !ok) finite_[x] = ok;
    return ok;
  };
  bool r = fin(s);
  finite_[s] = r;
  return r;
}

const std::vector<Term>& GroundEnumerator::all(SortId s) {
  if (auto it = all_.find(s); it != all_.end()) return it->second;
  if (!finite(s)) throw Error("sort " + sig_.sorts().name(s) + " is not finite");
  // Largest term size reachable in an acyclic, non-associative sort.
  std::function<unsigned(SortId)> max_size = [&](SortId x) -> unsigned {
    unsigned best = 0;
    for (OpId i = 0; i < static_cast<OpId>(sig_.op_count()); ++i) {
      const Operator& o = sig_.op(i);
      if (!o.ctor || !sig_.leq(o.result, x)) continue;
      unsigned sz = 1;
      for (SortId a : o.args) sz += max_size(a);
      best = std::max(best, sz);
    }
    return best;
  };
  std::vector<Term> out;
  const unsigned top = max_size(s);
  for (unsigned k = 1; k <= top; ++k) {
    const auto& e = exact(s, k);
    out.insert(out.end(), e.begin(), e.end());
  }
  return all_[s] = std::move(out);
}

std::optional<Term> GroundEnumerator::smallest(SortId s, unsigned max_size) {
  for (unsigned k = 1; k <= max_size; ++k) {
    const auto& e = exact(s, k);
    if (!e.empty()) return e.front();
  }
  return std::nullopt;
}

}  // namespace rl
