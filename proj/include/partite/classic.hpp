#pragma once
// Classical realizability checks and the exact-degree bipartite constructor.

#include <algorithm>
#include <string>
#include <vector>

#include "partite/core.hpp"

namespace partite {

/// Erdős–Gallai check: parity of the degree sum plus the prefix inequality
/// for every prefix length 0..n. Failures are reported as data, never thrown.
inline CheckReport eg_check(const DegreeSeq& seq) {
  CheckReport report;
  const auto& v = seq.values();
  long long total = seq.sum();
  report.record("eg_parity", 0, total % 2, 0, total % 2 == 0);

  std::vector<long long> prefix(v.size() + 1, 0);
  for (size_t i = 0; i < v.size(); ++i) prefix[i + 1] = prefix[i] + v[i];

  long long n = seq.size();
  for (long long mu = 0; mu <= n; ++mu) {
    long long lhs = prefix[static_cast<size_t>(mu)];
    // Past position mu, entries exceeding mu each contribute the cap; the
    // nonincreasing order makes them a contiguous block ending at the first
    // position with value <= mu. The rest contribute their own value.
    auto it = std::lower_bound(v.begin(), v.end(), mu, std::greater<long long>());
    long long first_below = static_cast<long long>(it - v.begin());
    long long saturated = std::max(0LL, first_below - mu);
    long long tail_from = std::max(first_below, mu);
    long long suffix_capped =
        mu * saturated + prefix[static_cast<size_t>(n)] - prefix[static_cast<size_t>(tail_from)];
    report.record("eg_prefix", mu, lhs, mu * (mu - 1) + suffix_capped,
                  lhs <= mu * (mu - 1) + suffix_capped);
  }
  return report;
}

/// Gale–Ryser check for a bipartite pair: equal degree sums plus the prefix
/// inequality of the right side against the left side's caps.
inline CheckReport gr_check(const DegreeSeq& left, const DegreeSeq& right) {
  CheckReport report;
  report.record("gr_sum", 0, left.sum(), right.sum(), left.sum() == right.sum());

  detail::CappedSum caps(left.values());
  long long lhs = 0;
  for (int t = 1; t <= right.size(); ++t) {
    lhs += right.at(t - 1);
    long long rhs = caps.at(t);
    report.record("gr_prefix", t, lhs, rhs, lhs <= rhs);
  }
  return report;
}

/// Builds a bipartite graph whose degree profiles equal the two sequences
/// exactly. Greedy and deterministic: each left vertex, in order, connects to
/// the right vertices with the largest remaining demand, ties by index.
inline MultipartiteGraph build_bipartite_exact(const DegreeSeq& left,
                                               const DegreeSeq& right) {
  CheckReport feasible = gr_check(left, right);
  if (!feasible.passed)
    throw InfeasibleInput("bipartite pair is not realizable: " +
                          describe(*feasible.first_failure()));

  int m = left.size();
  int n = right.size();
  MultipartiteGraph g({m, n});
  std::vector<long long> remaining(right.values());
  std::vector<int> order(static_cast<size_t>(n));

  for (int i = 0; i < m; ++i) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return remaining[static_cast<size_t>(a)] > remaining[static_cast<size_t>(b)];
    });
    long long want = left.at(i);
    for (int pick = 0; pick < want; ++pick) {
      if (pick >= n || remaining[static_cast<size_t>(order[static_cast<size_t>(pick)])] <= 0)
        throw InternalError("greedy ran out of right-side demand");
      int j = order[static_cast<size_t>(pick)];
      g.add_edge({0, i}, {1, j});
      --remaining[static_cast<size_t>(j)];
    }
  }

  if (degree_profile(g, 0) != left.values() ||
      degree_profile(g, 1) != right.values())
    throw InternalError("greedy produced a profile mismatch");
  return g;
}

}  // namespace partite
