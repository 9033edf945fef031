#pragma once
// Tripartite and n-partite realizability: sufficient and necessary prefix
// conditions on divided degree bounds, exact-sequence corollaries, the
// cross-edge-count strengthened necessary check, and the constructions that
// assemble a realization from pairwise bipartite layers.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "partite/core.hpp"
#include "partite/interval_bipartite.hpp"

namespace partite {
namespace detail {

inline std::string part_tag(int p) { return "p" + std::to_string(p + 1); }

// Prefix sums of ceil(lo/divisor) over `need` against capped sums of
// floor(hi/divisor) over `cap`.
inline void directed_family(CheckReport& report, const std::string& id,
                            const IntervalSeq& need, const IntervalSeq& cap,
                            long long divisor) {
  std::vector<long long> caps;
  caps.reserve(static_cast<size_t>(cap.size()));
  for (const Interval& e : cap.entries()) caps.push_back(halved_hi(e, divisor));
  CappedSum capped(std::move(caps));
  long long lhs = 0;
  for (int p = 1; p <= need.size(); ++p) {
    lhs += halved_lo(need.at(p - 1), divisor);
    report.record(id, p, lhs, capped.at(p), lhs <= capped.at(p));
  }
}

}  // namespace detail

/// Sufficient condition for an n-partite realization: for every ordered pair
/// of distinct parts (P, Q), the prefix sums of ceil(lo_P/(n-1)) stay within
/// the capped sums of floor(hi_Q/(n-1)). All n(n-1) directed families are
/// evaluated and reported.
inline CheckReport np_sufficient_check(const PartiteSpec& spec) {
  CheckReport report;
  long long divisor = spec.divisor();
  for (int p = 0; p < spec.part_count(); ++p)
    for (int q = 0; q < spec.part_count(); ++q) {
      if (p == q) continue;
      detail::directed_family(
          report, detail::part_tag(p) + "_lo_vs_" + detail::part_tag(q) + "_hi",
          spec.part(p), spec.part(q), divisor);
    }
  return report;
}

/// Necessary condition: each part's prefix demand cannot exceed what the
/// other parts can offer, Gale–Ryser style with undivided bounds.
inline CheckReport np_necessary_check(const PartiteSpec& spec) {
  CheckReport report;
  for (int p = 0; p < spec.part_count(); ++p) {
    std::vector<detail::CappedSum> caps;
    caps.reserve(static_cast<size_t>(spec.part_count()) - 1);
    for (int q = 0; q < spec.part_count(); ++q) {
      if (q == p) continue;
      std::vector<long long> his;
      his.reserve(static_cast<size_t>(spec.part(q).size()));
      for (const Interval& e : spec.part(q).entries()) his.push_back(e.hi);
      caps.emplace_back(std::move(his));
    }
    const std::string id = detail::part_tag(p) + "_lo_vs_rest_hi";
    long long lhs = 0;
    for (int t = 1; t <= spec.part(p).size(); ++t) {
      lhs += spec.part(p).lo(t - 1);
      long long rhs = 0;
      for (const auto& c : caps) rhs += c.at(t);
      report.record(id, t, lhs, rhs, lhs <= rhs);
    }
  }
  return report;
}

/// First violation of per-vertex divided nonemptiness, as (part, position in
/// the caller's original order), or nullopt when ceil(lo/d) <= floor(hi/d)
/// holds everywhere. The constructions require this: each of the n-1
/// pairwise layers must be able to place its share of every vertex's bounds.
inline std::optional<std::pair<int, int>> divided_empty_at(const PartiteSpec& spec) {
  long long divisor = spec.divisor();
  for (int p = 0; p < spec.part_count(); ++p)
    for (int i = 0; i < spec.part(p).size(); ++i) {
      const Interval& e = spec.part(p).at(i);
      if (halved_lo(e, divisor) > halved_hi(e, divisor))
        return std::make_pair(p, spec.part(p).perm()[i]);
    }
  return std::nullopt;
}

/// Builds an n-partite realization as the union of one bipartite layer per
/// unordered pair of parts, each layer constructed from the bounds divided
/// by (n-1). In the layer for {P_i, P_j} with i < j, P_i takes the
/// interval role and P_j the lower-target role.
inline MultipartiteGraph realize_npartite(const PartiteSpec& spec) {
  CheckReport sufficient = np_sufficient_check(spec);
  if (!sufficient.passed)
    throw PreconditionViolated("sufficient condition fails: " +
                               describe(*sufficient.first_failure()));
  if (auto bad = divided_empty_at(spec)) {
    throw PreconditionViolated(
        "divided interval is empty at part " + std::to_string(bad->first + 1) +
        " vertex " + std::to_string(bad->second + 1) + " (divisor " +
        std::to_string(spec.divisor()) + ")");
  }

  long long divisor = spec.divisor();
  std::vector<IntervalSeq> divided;
  divided.reserve(static_cast<size_t>(spec.part_count()));
  for (const IntervalSeq& part : spec.parts())
    divided.push_back(part.divided(divisor));

  MultipartiteGraph g(spec.part_sizes());
  for (int i = 0; i < spec.part_count(); ++i)
    for (int j = i + 1; j < spec.part_count(); ++j) {
      MultipartiteGraph layer = realize_bipartite_interval(divided[static_cast<size_t>(i)],
                                                           divided[static_cast<size_t>(j)]);
      for (const auto& [a, b] : layer.edges_sorted())
        g.add_edge({i, a.index}, {j, b.index});
    }

  if (auto violation = verify_against(g, spec))
    throw InternalError("assembled graph misses its bounds: " + *violation);
  return g;
}

namespace detail {

inline void require_parts(const PartiteSpec& spec, int n, const char* what) {
  if (spec.part_count() != n)
    throw PartOutOfRange(std::string(what) + " expects exactly " +
                         std::to_string(n) + " parts");
}

}  // namespace detail

/// Three-part specialization of the sufficient check: the six directed
/// families over halved bounds.
inline CheckReport tri_sufficient_check(const PartiteSpec& spec) {
  detail::require_parts(spec, 3, "tri_sufficient_check");
  return np_sufficient_check(spec);
}

/// Three-part specialization of the necessary check.
inline CheckReport tri_necessary_check(const PartiteSpec& spec) {
  detail::require_parts(spec, 3, "tri_necessary_check");
  return np_necessary_check(spec);
}

/// Three-part construction.
inline MultipartiteGraph realize_tripartite(const PartiteSpec& spec) {
  detail::require_parts(spec, 3, "realize_tripartite");
  return realize_npartite(spec);
}

inline PartiteSpec make_exact_spec(const std::vector<DegreeSeq>& seqs) {
  std::vector<IntervalSeq> parts;
  parts.reserve(seqs.size());
  for (const DegreeSeq& s : seqs) parts.push_back(s.to_intervals());
  return PartiteSpec(std::move(parts));
}

/// Strengthened necessary condition for exact triples. For each rotation of
/// the distinguished part, the cross-edge count mu between the two other
/// parts is forced to half of (their degree total minus the distinguished
/// total); a realizable triple needs mu nonnegative and integral, and every
/// prefix of the distinguished part bounded by the mu-discounted totals.
/// The reported mu is the first rotation's.
inline CheckReport tri_strong_necessary_check(const DegreeSeq& s1,
                                              const DegreeSeq& s2,
                                              const DegreeSeq& s3) {
  CheckReport report;
  const std::array<const DegreeSeq*, 3> seqs{&s1, &s2, &s3};
  for (int rot = 0; rot < 3; ++rot) {
    const DegreeSeq& a = *seqs[static_cast<size_t>(rot)];
    const DegreeSeq& b = *seqs[static_cast<size_t>((rot + 1) % 3)];
    const DegreeSeq& c = *seqs[static_cast<size_t>((rot + 2) % 3)];
    const std::string id = "strong_d" + std::to_string(rot + 1);

    long long doubled_mu = b.sum() + c.sum() - a.sum();
    bool mu_ok = doubled_mu >= 0 && doubled_mu % 2 == 0;
    report.record(id + "_mu", 0, doubled_mu, 0, mu_ok);
    if (rot == 0 && doubled_mu % 2 == 0) report.mu = doubled_mu / 2;
    if (!mu_ok) continue;

    long long mu = doubled_mu / 2;
    long long lhs = 0;
    for (int d = 1; d <= a.size(); ++d) {
      lhs += a.at(d - 1);
      long long rhs = std::min(b.sum() - mu, static_cast<long long>(b.size()) * d) +
                      std::min(c.sum() - mu, static_cast<long long>(c.size()) * d);
      report.record(id, d, lhs, rhs, lhs <= rhs);
    }
  }
  return report;
}

/// Exact-sequence sufficient condition. The default evaluates all six
/// directed families of the interval condition specialized to exact
/// sequences. `strict_paper` restricts to the two families with the first
/// part on the demand side; that weaker form admits unrealizable triples
/// (e.g. an odd degree total) and is kept for comparison only.
inline CheckReport cor23_check(const DegreeSeq& s1, const DegreeSeq& s2,
                               const DegreeSeq& s3, bool strict_paper = false) {
  PartiteSpec spec = make_exact_spec({s1, s2, s3});
  if (!strict_paper) return np_sufficient_check(spec);
  CheckReport report;
  detail::directed_family(report, "p1_lo_vs_p2_hi", spec.part(0), spec.part(1), 2);
  detail::directed_family(report, "p1_lo_vs_p3_hi", spec.part(0), spec.part(2), 2);
  return report;
}

/// Exact-sequence necessary condition: prefixes of the first sequence
/// against the capped totals of the other two.
inline CheckReport cor24_check(const DegreeSeq& s1, const DegreeSeq& s2,
                               const DegreeSeq& s3) {
  CheckReport report;
  detail::CappedSum cap_b(s2.values());
  detail::CappedSum cap_c(s3.values());
  long long lhs = 0;
  for (int s = 1; s <= s1.size(); ++s) {
    lhs += s1.at(s - 1);
    long long rhs = cap_b.at(s) + cap_c.at(s);
    report.record("cor24_d1", s, lhs, rhs, lhs <= rhs);
  }
  return report;
}

}  // namespace partite
