#pragma once
// Domain types shared by every module: degree intervals in canonical order,
// partite specifications, simple multipartite graphs, and check reports.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace partite {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInterval : Error { using Error::Error; };
struct NegativeValue : Error { using Error::Error; };
struct PartOutOfRange : Error { using Error::Error; };
struct InfeasibleInput : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct FuelExhausted : Error { using Error::Error; };
struct StalemateContradiction : Error { using Error::Error; };
struct InstanceTooLarge : Error { using Error::Error; };

// Broken internal invariant; never expected on inputs satisfying the
// documented preconditions.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// Inputs are capped so that every sum and product appearing in the checks
// fits comfortably in 64 bits.
inline constexpr long long kMaxTotalDegree = 1'000'000;

inline long long ceil_div(long long value, long long divisor) {
  return (value + divisor - 1) / divisor;
}

inline long long floor_div(long long value, long long divisor) {
  return value / divisor;
}

struct Interval {
  long long lo = 0;
  long long hi = 0;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// Rounded-up lower bound after dividing the interval by `divisor`.
inline long long halved_lo(Interval x, long long divisor) {
  return ceil_div(x.lo, divisor);
}

/// Rounded-down upper bound after dividing the interval by `divisor`.
inline long long halved_hi(Interval x, long long divisor) {
  return floor_div(x.hi, divisor);
}

namespace detail {

// Answers sum_i min(values[i], cap) in O(log n) per query after O(n log n)
// setup. Values may arrive in any order.
class CappedSum {
 public:
  explicit CappedSum(std::vector<long long> values) : sorted_(std::move(values)) {
    std::sort(sorted_.begin(), sorted_.end());
    prefix_.resize(sorted_.size() + 1, 0);
    for (size_t i = 0; i < sorted_.size(); ++i)
      prefix_[i + 1] = prefix_[i] + sorted_[i];
  }

  long long at(long long cap) const {
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), cap);
    size_t below = static_cast<size_t>(it - sorted_.begin());
    long long at_least = static_cast<long long>(sorted_.size() - below);
    return prefix_[below] + cap * at_least;
  }

 private:
  std::vector<long long> sorted_;
  std::vector<long long> prefix_;
};

inline void check_interval_values(const std::vector<Interval>& entries) {
  long long total_hi = 0;
  for (const Interval& e : entries) {
    if (e.lo < 0 || e.hi < 0)
      throw NegativeValue("interval bounds must be nonnegative");
    if (e.lo > e.hi)
      throw InvalidInterval("interval lower bound exceeds upper bound");
    total_hi += e.hi;
    if (total_hi > kMaxTotalDegree)
      throw InstanceTooLarge("total degree bound exceeds supported limit");
  }
}

}  // namespace detail

/// A part's per-vertex degree intervals, stored sorted by lo nonincreasing.
/// `perm` maps each stored position back to the caller's original position,
/// so reports and emitted graphs can use the caller's indexing.
class IntervalSeq {
 public:
  IntervalSeq() = default;

  // Sorts by lo nonincreasing, ties by hi nonincreasing, then by original
  // position; the recorded permutation undoes the sort.
  static IntervalSeq canonicalize(const std::vector<Interval>& raw) {
    detail::check_interval_values(raw);
    std::vector<int> order(raw.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (raw[a].lo != raw[b].lo) return raw[a].lo > raw[b].lo;
      return raw[a].hi > raw[b].hi;
    });
    IntervalSeq seq;
    seq.entries_.reserve(raw.size());
    seq.perm_ = order;
    for (int idx : order) seq.entries_.push_back(raw[idx]);
    return seq;
  }

  // Accepts entries already sorted by lo nonincreasing and keeps positions
  // as given (identity permutation). Used for derived sequences, e.g. bounds
  // divided by the part count, where the position alignment matters.
  static IntervalSeq from_sorted(std::vector<Interval> entries) {
    detail::check_interval_values(entries);
    for (size_t i = 1; i < entries.size(); ++i) {
      if (entries[i - 1].lo < entries[i].lo)
        throw InvalidInterval("entries are not sorted by lo nonincreasing");
    }
    IntervalSeq seq;
    seq.perm_.resize(entries.size());
    std::iota(seq.perm_.begin(), seq.perm_.end(), 0);
    seq.entries_ = std::move(entries);
    return seq;
  }

  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }

  const Interval& at(int i) const { return entries_.at(i); }
  long long lo(int i) const { return entries_[i].lo; }
  long long hi(int i) const { return entries_[i].hi; }

  const std::vector<Interval>& entries() const { return entries_; }

  /// Stored position -> caller's original position.
  const std::vector<int>& perm() const { return perm_; }

  bool exact() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Interval& e) { return e.lo == e.hi; });
  }

  long long sum_lo() const {
    long long s = 0;
    for (const Interval& e : entries_) s += e.lo;
    return s;
  }

  long long sum_hi() const {
    long long s = 0;
    for (const Interval& e : entries_) s += e.hi;
    return s;
  }

  /// Bounds divided by `divisor`: lo rounded up, hi rounded down. Positions
  /// are preserved. Throws InvalidInterval if some divided interval is empty.
  IntervalSeq divided(long long divisor) const {
    std::vector<Interval> out;
    out.reserve(entries_.size());
    for (const Interval& e : entries_)
      out.push_back({halved_lo(e, divisor), halved_hi(e, divisor)});
    return from_sorted(std::move(out));
  }

  friend bool operator==(const IntervalSeq& a, const IntervalSeq& b) {
    return a.entries_ == b.entries_ && a.perm_ == b.perm_;
  }

 private:
  std::vector<Interval> entries_;
  std::vector<int> perm_;
};

/// A nonincreasing sequence of nonnegative integers.
class DegreeSeq {
 public:
  DegreeSeq() = default;

  /// Sorts the values nonincreasing.
  static DegreeSeq canonicalize(std::vector<long long> values) {
    for (long long v : values)
      if (v < 0) throw NegativeValue("degrees must be nonnegative");
    long long total = std::accumulate(values.begin(), values.end(), 0LL);
    if (total > kMaxTotalDegree)
      throw InstanceTooLarge("total degree exceeds supported limit");
    std::sort(values.begin(), values.end(), std::greater<long long>());
    DegreeSeq seq;
    seq.values_ = std::move(values);
    return seq;
  }

  int size() const { return static_cast<int>(values_.size()); }
  bool empty() const { return values_.empty(); }
  long long at(int i) const { return values_.at(i); }
  const std::vector<long long>& values() const { return values_; }

  long long sum() const {
    return std::accumulate(values_.begin(), values_.end(), 0LL);
  }

  IntervalSeq to_intervals() const {
    std::vector<Interval> entries;
    entries.reserve(values_.size());
    for (long long v : values_) entries.push_back({v, v});
    return IntervalSeq::from_sorted(std::move(entries));
  }

  friend bool operator==(const DegreeSeq&, const DegreeSeq&) = default;

 private:
  std::vector<long long> values_;
};

/// An ordered list of 2..n interval sequences, one per part. The divisor,
/// used when splitting per-vertex bounds across the pairwise layers, is
/// always (number of parts - 1).
class PartiteSpec {
 public:
  PartiteSpec() = default;

  explicit PartiteSpec(std::vector<IntervalSeq> parts) : parts_(std::move(parts)) {
    if (parts_.size() < 2)
      throw PartOutOfRange("a partite specification needs at least 2 parts");
    long long total_hi = 0;
    for (const IntervalSeq& p : parts_) total_hi += p.sum_hi();
    if (total_hi > kMaxTotalDegree)
      throw InstanceTooLarge("total degree bound exceeds supported limit");
  }

  int part_count() const { return static_cast<int>(parts_.size()); }
  long long divisor() const { return static_cast<long long>(parts_.size()) - 1; }
  const IntervalSeq& part(int p) const { return parts_.at(p); }
  const std::vector<IntervalSeq>& parts() const { return parts_; }

  std::vector<int> part_sizes() const {
    std::vector<int> sizes;
    sizes.reserve(parts_.size());
    for (const IntervalSeq& p : parts_) sizes.push_back(p.size());
    return sizes;
  }

  int total_vertices() const {
    int n = 0;
    for (const IntervalSeq& p : parts_) n += p.size();
    return n;
  }

  bool exact() const {
    return std::all_of(parts_.begin(), parts_.end(),
                       [](const IntervalSeq& p) { return p.exact(); });
  }

  friend bool operator==(const PartiteSpec&, const PartiteSpec&) = default;

 private:
  std::vector<IntervalSeq> parts_;
};

struct VertexRef {
  int part = 0;
  int index = 0;
  friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

/// Simple graph on labeled parts; edges join distinct parts only.
class MultipartiteGraph {
 public:
  MultipartiteGraph() = default;

  explicit MultipartiteGraph(std::vector<int> part_sizes) {
    adj_.reserve(part_sizes.size());
    for (int s : part_sizes) {
      if (s < 0) throw NegativeValue("part sizes must be nonnegative");
      adj_.emplace_back(static_cast<size_t>(s));
    }
  }

  int parts() const { return static_cast<int>(adj_.size()); }

  int part_size(int p) const {
    check_part(p);
    return static_cast<int>(adj_[p].size());
  }

  std::vector<int> part_sizes() const {
    std::vector<int> sizes;
    sizes.reserve(adj_.size());
    for (const auto& part : adj_) sizes.push_back(static_cast<int>(part.size()));
    return sizes;
  }

  bool has_edge(VertexRef a, VertexRef b) const {
    check_vertex(a);
    check_vertex(b);
    return neighbors_of(a).count(b) > 0;
  }

  void add_edge(VertexRef a, VertexRef b) {
    check_vertex(a);
    check_vertex(b);
    if (a.part == b.part)
      throw InvalidInterval("edges may not join vertices of the same part");
    if (!neighbors_mut(a).insert(b).second)
      throw InternalError("duplicate edge");
    neighbors_mut(b).insert(a);
    ++edge_count_;
  }

  void remove_edge(VertexRef a, VertexRef b) {
    check_vertex(a);
    check_vertex(b);
    if (neighbors_mut(a).erase(b) == 0)
      throw InternalError("removing a missing edge");
    neighbors_mut(b).erase(a);
    --edge_count_;
  }

  long long degree(VertexRef v) const {
    check_vertex(v);
    return static_cast<long long>(neighbors_of(v).size());
  }

  /// Neighbors in ascending (part, index) order.
  const std::set<VertexRef>& neighbors(VertexRef v) const {
    check_vertex(v);
    return neighbors_of(v);
  }

  long long edge_count() const { return edge_count_; }

  /// Edges with endpoints normalized (lower part first), sorted.
  std::vector<std::pair<VertexRef, VertexRef>> edges_sorted() const {
    std::vector<std::pair<VertexRef, VertexRef>> out;
    out.reserve(static_cast<size_t>(edge_count_));
    for (int p = 0; p < parts(); ++p) {
      for (int i = 0; i < static_cast<int>(adj_[p].size()); ++i) {
        for (const VertexRef& w : adj_[p][i]) {
          VertexRef v{p, i};
          if (v < w) out.emplace_back(v, w);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Checks structural invariants: no intra-part edges, symmetric adjacency,
  /// in-range endpoints, and the handshake identity.
  void validate() const {
    long long degree_total = 0;
    long long seen = 0;
    for (int p = 0; p < parts(); ++p) {
      for (int i = 0; i < static_cast<int>(adj_[p].size()); ++i) {
        VertexRef v{p, i};
        degree_total += static_cast<long long>(adj_[p][i].size());
        for (const VertexRef& w : adj_[p][i]) {
          if (w.part == p) throw InternalError("intra-part edge");
          if (w.part < 0 || w.part >= parts() || w.index < 0 ||
              w.index >= static_cast<int>(adj_[w.part].size()))
            throw InternalError("edge endpoint out of range");
          if (neighbors_of(w).count(v) == 0)
            throw InternalError("asymmetric adjacency");
          ++seen;
        }
      }
    }
    if (seen != 2 * edge_count_)
      throw InternalError("edge count does not match adjacency");
    if (degree_total != 2 * edge_count_)
      throw InternalError("handshake identity violated");
  }

  friend bool operator==(const MultipartiteGraph& a, const MultipartiteGraph& b) {
    return a.adj_ == b.adj_;
  }

 private:
  void check_part(int p) const {
    if (p < 0 || p >= parts()) throw PartOutOfRange("part index out of range");
  }
  void check_vertex(VertexRef v) const {
    check_part(v.part);
    if (v.index < 0 || v.index >= static_cast<int>(adj_[v.part].size()))
      throw PartOutOfRange("vertex index out of range");
  }
  const std::set<VertexRef>& neighbors_of(VertexRef v) const {
    return adj_[v.part][v.index];
  }
  std::set<VertexRef>& neighbors_mut(VertexRef v) {
    return adj_[v.part][v.index];
  }

  std::vector<std::vector<std::set<VertexRef>>> adj_;
  long long edge_count_ = 0;
};

/// Per-vertex degrees of one part, in stored vertex order.
inline std::vector<long long> degree_profile(const MultipartiteGraph& g, int part) {
  if (part < 0 || part >= g.parts())
    throw PartOutOfRange("part index out of range");
  std::vector<long long> profile(static_cast<size_t>(g.part_size(part)));
  for (int i = 0; i < g.part_size(part); ++i)
    profile[i] = g.degree({part, i});
  return profile;
}

struct FamilyRow {
  std::string family;
  long long prefix = 0;
  long long lhs = 0;
  long long rhs = 0;
  bool ok = true;
  friend bool operator==(const FamilyRow&, const FamilyRow&) = default;
};

/// Outcome of an inequality-family check: one row per evaluated prefix,
/// overall verdict, and the cross-edge count when the check defines one.
struct CheckReport {
  std::vector<FamilyRow> families;
  bool passed = true;
  std::optional<long long> mu;

  void record(std::string family, long long prefix, long long lhs, long long rhs,
              bool ok) {
    families.push_back({std::move(family), prefix, lhs, rhs, ok});
    passed = passed && ok;
  }

  // Rows are appended with ascending prefixes, so the first failing row of a
  // family carries its smallest failing prefix.
  const FamilyRow* first_failure() const {
    for (const FamilyRow& row : families)
      if (!row.ok) return &row;
    return nullptr;
  }

  const FamilyRow* first_failure(const std::string& family) const {
    for (const FamilyRow& row : families)
      if (!row.ok && row.family == family) return &row;
    return nullptr;
  }

  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

inline std::string describe(const FamilyRow& row) {
  return row.family + " at prefix " + std::to_string(row.prefix) + " (lhs " +
         std::to_string(row.lhs) + ", rhs " + std::to_string(row.rhs) + ")";
}

/// Relabels a graph built against canonical vertex order back to the
/// caller's original per-part order, using each part's permutation.
inline MultipartiteGraph to_original_order(const MultipartiteGraph& g,
                                           const PartiteSpec& spec) {
  if (g.parts() != spec.part_count())
    throw PartOutOfRange("graph and specification part counts differ");
  MultipartiteGraph out(g.part_sizes());
  for (const auto& [a, b] : g.edges_sorted()) {
    VertexRef oa{a.part, spec.part(a.part).perm().at(a.index)};
    VertexRef ob{b.part, spec.part(b.part).perm().at(b.index)};
    out.add_edge(oa, ob);
  }
  return out;
}

/// Checks every vertex degree against its interval (canonical positions).
/// Returns an explanation for the first violation, or nullopt when all hold.
inline std::optional<std::string> verify_against(const MultipartiteGraph& g,
                                                 const PartiteSpec& spec) {
  if (g.parts() != spec.part_count())
    return "graph and specification part counts differ";
  for (int p = 0; p < spec.part_count(); ++p) {
    if (g.part_size(p) != spec.part(p).size())
      return "part " + std::to_string(p + 1) + " size mismatch";
    for (int i = 0; i < spec.part(p).size(); ++i) {
      long long d = g.degree({p, i});
      const Interval& box = spec.part(p).at(i);
      if (d < box.lo || d > box.hi)
        return "degree " + std::to_string(d) + " of part " +
               std::to_string(p + 1) + " vertex " + std::to_string(i + 1) +
               " outside [" + std::to_string(box.lo) + ", " +
               std::to_string(box.hi) + "]";
    }
  }
  return std::nullopt;
}

}  // namespace partite
