#include <algorithm>
#include <numeric>

#include "rl/eq.hpp"

namespace rl {

namespace {

// Enumerates y in [0, bound]^n with sum(coef[j]*y[j]) == target.
void solve_rhs(const std::vector<unsigned>& coef, unsigned bound, std::size_t j, unsigned target,
               std::vector<unsigned>& y, std::vector<std::vector<unsigned>>& out) {
  if (j == coef.size()) {
    if (target == 0) out.push_back(y);
    return;
  }
  for (unsigned v = 0; v <= bound; ++v) {
    unsigned used = v * coef[j];
    if (used > target) break;
    y[j] = v;
    solve_rhs(coef, bound, j + 1, target - used, y, out);
  }
  y[j] = 0;
}

}  // namespace

std::vector<std::vector<unsigned>> diophantine_basis(const std::vector<unsigned>& lhs,
                                                     const std::vector<unsigned>& rhs) {
  const std::size_t m = lhs.size(), n = rhs.size();
  std::vector<std::vector<unsigned>> sols;

  // Unknowns with a zero coefficient are unconstrained: their unit vector is
  // minimal and they never appear in another minimal solution.
  std::vector<unsigned> a, b;
  std::vector<std::size_t> ai, bi;
  for (std::size_t i = 0; i < m; ++i) {
    if (lhs[i] == 0) {
      std::vector<unsigned> e(m + n, 0);
      e[i] = 1;
      sols.push_back(e);
    } else {
      a.push_back(lhs[i]);
      ai.push_back(i);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (rhs[j] == 0) {
      std::vector<unsigned> e(m + n, 0);
      e[m + j] = 1;
      sols.push_back(e);
    } else {
      b.push_back(rhs[j]);
      bi.push_back(j);
    }
  }

  if (!a.empty() && !b.empty()) {
    // Minimal solutions satisfy x_i <= max(b) and y_j <= max(a).
    const unsigned xbound = *std::max_element(b.begin(), b.end());
    const unsigned ybound = *std::max_element(a.begin(), a.end());
    std::vector<std::vector<unsigned>> candidates;
    std::vector<unsigned> x(a.size(), 0), y(b.size(), 0);
    while (true) {
      std::size_t k = 0;
      while (k < x.size() && x[k] == xbound) x[k++] = 0;
      if (k == x.size()) break;
      ++x[k];
      unsigned target = 0;
      for (std::size_t i = 0; i < x.size(); ++i) target += a[i] * x[i];
      std::vector<std::vector<unsigned>> ys;
      solve_rhs(b, ybound, 0, target, y, ys);
      for (auto& yy : ys) {
        std::vector<unsigned> full(m + n, 0);
        for (std::size_t i = 0; i < x.size(); ++i) full[ai[i]] = x[i];
        for (std::size_t j = 0; j < yy.size(); ++j) full[m + bi[j]] = yy[j];
        candidates.push_back(std::move(full));
      }
    }
    auto total = [](const std::vector<unsigned>& v) { return std::accumulate(v.begin(), v.end(), 0u); };
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](const auto& p, const auto& q) { return total(p) < total(q); });
    std::vector<std::vector<unsigned>> minimal;
    for (const auto& c : candidates) {
      bool dominated = false;
      for (const auto& mm : minimal) {
        bool le = true;
        for (std::size_t k = 0; k < c.size() && le; ++k) le = mm[k] <= c[k];
        if (le) {
          dominated = true;
          break;
        }
      }
      if (!dominated) minimal.push_back(c);
    }
    sols.insert(sols.end(), minimal.begin(), minimal.end());
  }
  std::sort(sols.begin(), sols.end(), std::greater<>());
  return sols;
}

}  // namespace rl
