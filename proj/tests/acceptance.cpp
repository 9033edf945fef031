// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each criterion is self-contained and timed.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "partite/classic.hpp"
#include "partite/io.hpp"
#include "partite/multipartite.hpp"
#include "partite/oracle.hpp"
#include "testutil.hpp"

using namespace partite;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  double seconds;
  std::string detail;
};

std::vector<Outcome> g_results;

void run_criterion(int id, const std::string& label,
                   const std::function<std::optional<std::string>()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::optional<std::string> failure;
  try {
    failure = body();
  } catch (const std::exception& e) {
    failure = std::string("exception: ") + e.what();
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                  .count();
  g_results.push_back({!failure.has_value(), dt, failure.value_or("")});
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (failure ? "FAIL" : "PASS") << " criterion " << id << ": " << label
       << " (" << dt << "s)";
  if (failure) line << "\n     " << *failure;
  std::cout << line.str() << std::endl;
}

PartiteSpec gap_triple() {
  return PartiteSpec({IntervalSeq::canonicalize({{2, 3}, {0, 2}}),
                      IntervalSeq::canonicalize({{2, 4}, {1, 2}}),
                      IntervalSeq::canonicalize({{1, 2}, {0, 1}})});
}

// Exhaustive exact triples (part sizes <= 2, degrees <= 3) plus 1000 seeded
// random interval triples (sizes <= 3, bounds <= 5).
std::vector<PartiteSpec> sweep_universe() {
  std::vector<PartiteSpec> universe;
  auto seqs = testutil::nonincreasing_sequences(2, 3);
  for (const auto& a : seqs)
    for (const auto& b : seqs)
      for (const auto& c : seqs)
        universe.push_back(make_exact_spec({DegreeSeq::canonicalize(a),
                                            DegreeSeq::canonicalize(b),
                                            DegreeSeq::canonicalize(c)}));
  std::mt19937_64 gen(20260810);
  for (int i = 0; i < 1000; ++i)
    universe.push_back(testutil::random_spec(gen, 3, 3, 5));
  return universe;
}

std::string show(const PartiteSpec& spec) {
  std::string out = "[";
  for (int p = 0; p < spec.part_count(); ++p) {
    if (p) out += ";";
    for (int i = 0; i < spec.part(p).size(); ++i) {
      const Interval& e = spec.part(p).at(i);
      out += "[" + std::to_string(e.lo) + "," + std::to_string(e.hi) + "]";
    }
  }
  return out + "]";
}

std::optional<std::string> criterion_gap_triple() {
  auto t0 = std::chrono::steady_clock::now();
  PartiteSpec spec = gap_triple();

  auto oracle = oracle_is_realizable(spec);
  if (oracle.verdict != OracleVerdict::realizable)
    return "oracle did not report realizable";
  if (auto bad = verify_against(*oracle.witness, spec))
    return "witness fails verification: " + *bad;

  auto sufficient = tri_sufficient_check(spec);
  if (sufficient.passed) return "sufficient check unexpectedly passed";
  const FamilyRow* row = sufficient.first_failure();
  if (row->prefix != 2)
    return "violated family at prefix " + std::to_string(row->prefix) +
           ", expected 2";
  if (row->family != "p2_lo_vs_p3_hi" || row->lhs != 2 || row->rhs != 1)
    return "unexpected failing family " + describe(*row);

  if (!tri_necessary_check(spec).passed) return "necessary check failed";

  double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt >= 1.0) return "runtime " + std::to_string(dt) + "s >= 1s";
  return std::nullopt;
}

std::optional<std::string> criterion_sufficiency_sweep() {
  auto t0 = std::chrono::steady_clock::now();
  long long constructed = 0;
  for (const PartiteSpec& spec : sweep_universe()) {
    if (!tri_sufficient_check(spec).passed) continue;
    if (divided_empty_at(spec)) continue;
    MultipartiteGraph g = realize_tripartite(spec);
    if (auto bad = verify_against(g, spec))
      return "construction missed bounds on " + show(spec) + ": " + *bad;
    g.validate();
    ++constructed;
  }
  if (constructed == 0) return "no spec qualified for construction";
  double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt >= 60.0) return "runtime " + std::to_string(dt) + "s >= 60s";
  return std::nullopt;
}

std::optional<std::string> criterion_necessity_sweep() {
  auto t0 = std::chrono::steady_clock::now();
  long long realizable_count = 0;
  for (const PartiteSpec& spec : sweep_universe()) {
    auto oracle = oracle_is_realizable(spec);
    if (oracle.verdict == OracleVerdict::unknown)
      return "oracle budget exhausted on " + show(spec);
    if (oracle.verdict != OracleVerdict::realizable) continue;
    ++realizable_count;
    if (!tri_necessary_check(spec).passed)
      return "necessary check rejected the realizable " + show(spec);
    if (spec.exact()) {
      std::vector<DegreeSeq> seqs;
      for (const IntervalSeq& part : spec.parts()) {
        std::vector<long long> values;
        for (const Interval& e : part.entries()) values.push_back(e.lo);
        seqs.push_back(DegreeSeq::canonicalize(std::move(values)));
      }
      if (!tri_strong_necessary_check(seqs[0], seqs[1], seqs[2]).passed)
        return "strengthened check rejected the realizable " + show(spec);
    }
  }
  if (realizable_count == 0) return "no realizable spec in the universe";
  double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt >= 60.0) return "runtime " + std::to_string(dt) + "s >= 60s";
  return std::nullopt;
}

std::optional<std::string> criterion_strictness() {
  GapUniverse universe;
  universe.max_part_size = 2;
  universe.max_hi = 4;
  universe.exact_only = true;
  auto outcome = gap_search(universe, {GapKind::strictness});
  if (outcome.unknown > 0) return "oracle budget exhausted during the sweep";

  PartiteSpec stored = make_exact_spec(
      {DegreeSeq::canonicalize({2, 2}), DegreeSeq::canonicalize({4}),
       DegreeSeq::canonicalize({2})});
  long long confirmed = 0;
  bool stored_found = false;
  for (const GapWitness& w : outcome.witnesses) {
    if (!is_strictness_gap(w) || w.oracle_realizable) continue;
    ++confirmed;
    if (w.spec == stored) stored_found = true;
  }
  if (confirmed == 0) return "no oracle-confirmed strictness witness";
  if (!stored_found) return "the stored instance is missing from the witnesses";

  auto report = tri_strong_necessary_check(DegreeSeq::canonicalize({2, 2}),
                                           DegreeSeq::canonicalize({4}),
                                           DegreeSeq::canonicalize({2}));
  if (report.mu != 1) return "stored instance mu differs from 1";
  const FamilyRow* row = report.first_failure("strong_d1");
  if (!row || row->prefix != 2 || row->lhs != 4 || row->rhs != 3)
    return "stored instance failure row differs from prefix 2 (4 > 3)";
  return std::nullopt;
}

std::optional<std::string> criterion_classic_equivalence() {
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& values : testutil::nonincreasing_sequences(6, 5)) {
    bool check = eg_check(DegreeSeq::canonicalize(values)).passed;
    std::vector<int> ints(values.begin(), values.end());
    if (check != testutil::realizable_simple_graph(ints)) {
      std::string s;
      for (long long v : values) s += std::to_string(v) + " ";
      return "eg mismatch on " + s;
    }
  }
  auto sides = testutil::nonincreasing_sequences(4, 4);
  for (const auto& left : sides)
    for (const auto& right : sides) {
      bool check = gr_check(DegreeSeq::canonicalize(left),
                            DegreeSeq::canonicalize(right))
                       .passed;
      std::vector<int> l(left.begin(), left.end());
      std::vector<int> r(right.begin(), right.end());
      if (check != testutil::realizable_bipartite(l, r))
        return "gr mismatch";
    }
  double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt >= 120.0) return "runtime " + std::to_string(dt) + "s >= 120s";
  return std::nullopt;
}

std::optional<std::string> criterion_npartite_coherence() {
  for (const PartiteSpec& spec : sweep_universe()) {
    if (!(np_sufficient_check(spec) == tri_sufficient_check(spec)))
      return "sufficient reports differ at n = 3 on " + show(spec);
    if (!(np_necessary_check(spec) == tri_necessary_check(spec)))
      return "necessary reports differ at n = 3 on " + show(spec);
  }

  auto singleton = IntervalSeq::canonicalize({{3, 3}});
  PartiteSpec quad({singleton, singleton, singleton, singleton});
  MultipartiteGraph g = realize_npartite(quad);
  if (g.edge_count() != 6) return "quad instance is not complete 4-partite";
  for (int p = 0; p < 4; ++p)
    if (degree_profile(g, p) != std::vector<long long>{3})
      return "quad instance degree differs from 3";

  std::mt19937_64 gen(424242);
  int built = 0;
  long long attempts = 0;
  while (built < 200) {
    if (++attempts > 2'000'000) return "sampler failed to find 200 instances";
    PartiteSpec spec = testutil::random_spec(gen, 4, 3, 7);
    if (!np_sufficient_check(spec).passed || divided_empty_at(spec)) continue;
    MultipartiteGraph h = realize_npartite(spec);
    if (auto bad = verify_against(h, spec))
      return "n = 4 construction missed bounds on " + show(spec) + ": " + *bad;
    ++built;
  }
  return std::nullopt;
}

std::optional<std::string> criterion_engine_invariants() {
  auto shapes = detail::enumerate_part_shapes(3, 4, false);
  std::vector<IntervalSeq> sides;
  sides.reserve(shapes.size());
  for (const auto& shape : shapes)
    sides.push_back(IntervalSeq::from_sorted(shape));

  long long steps = 0;
  for (const auto& left : sides) {
    for (const auto& right : sides) {
      if (!bipartite_interval_feasibility(left, right).passed) continue;
      try {
        long long fuel = fuel_limit(left, right);
        RepairState st = begin_phase(MultipartiteGraph({left.size(), right.size()}),
                                     left, right, RepairPhase::meet_left, fuel);
        for (RepairPhase phase :
             {RepairPhase::meet_left, RepairPhase::raise_right}) {
          if (phase == RepairPhase::raise_right)
            st = begin_phase(std::move(st.graph), left, right, phase, st.fuel);
          int len = phase == RepairPhase::meet_left ? left.size() : right.size();
          auto measure = std::make_pair(st.critical, -st.deficiency);
          while (st.critical < len) {
            st = repair_step(std::move(st), left, right, phase);
            ++steps;
            auto next = std::make_pair(st.critical, -st.deficiency);
            if (next <= measure) return "repair measure failed to increase";
            measure = next;
          }
        }
      } catch (const FuelExhausted& e) {
        return std::string("fuel exhausted: ") + e.what();
      } catch (const StalemateContradiction& e) {
        return std::string("stalemate: ") + e.what();
      }
    }
  }
  if (steps == 0) return "no repair steps were exercised";
  return std::nullopt;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct CliRun {
  int code;
  std::string out;
};

CliRun run_cli(const std::string& args, const fs::path& dir) {
  static int counter = 0;
  fs::path out = dir / ("stdout." + std::to_string(counter++));
  std::string cmd = std::string(PARTITE_CLI_BIN) + " " + args + " > " +
                    out.string() + " 2> /dev/null";
  int raw = std::system(cmd.c_str());
  return {raw == -1 ? -1 : WEXITSTATUS(raw), slurp(out)};
}

std::optional<std::string> criterion_cli_round_trip() {
  fs::path dir = fs::temp_directory_path() /
                 ("partite_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::string fixtures = PARTITE_FIXTURES;

  struct Case {
    const char* args;
    int expected;
  };
  const Case verdicts[] = {
      {"check tri-sufficient %/counterexample.txt", 1},
      {"check tri-necessary %/counterexample.txt", 0},
      {"check tri-strong %/strong_gap.txt", 1},
      {"check cor24 %/strong_gap.txt", 0},
      {"check eg %/eg_pass.txt", 0},
      {"check eg %/eg_parity.txt", 1},
      {"check gr %/gr_star.txt", 0},
      {"oracle %/counterexample.txt", 0},
      {"oracle %/strong_gap.txt", 1},
      {"oracle %/counterexample.txt --budget 1", 3},
      {"realize %/counterexample.txt", 1},
      {"realize %/zeros.txt", 0},
      {"check eg %/gr_star.txt", 2},
  };
  for (const Case& c : verdicts) {
    std::string args(c.args);
    args.replace(args.find('%'), 1, fixtures);
    CliRun run = run_cli(args, dir);
    if (run.code != c.expected)
      return std::string("exit code for '") + c.args + "' was " +
             std::to_string(run.code) + ", expected " +
             std::to_string(c.expected);
  }

  for (std::string format : {"json", "dot"}) {
    fs::path out = dir / ("hexagon." + format);
    std::string cmd = "realize " + fixtures + "/hexagon.txt --format " + format +
                      " --out " + out.string();
    if (run_cli(cmd, dir).code != 0) return "realize failed for " + format;
    std::string first = slurp(out);
    if (run_cli(cmd, dir).code != 0) return "realize rerun failed";
    if (slurp(out) != first) return format + " output is not byte-identical";

    MultipartiteGraph g = format == "json"
                              ? graph_from_json(nlohmann::json::parse(first))
                              : graph_from_dot(first);
    g.validate();
    InstanceFile file = parse_instance(slurp(fixtures + "/hexagon.txt"));
    for (size_t p = 0; p < file.parts.size(); ++p) {
      auto profile = degree_profile(g, static_cast<int>(p));
      for (size_t i = 0; i < file.parts[p].size(); ++i)
        if (profile[i] < file.parts[p][i].lo || profile[i] > file.parts[p][i].hi)
          return format + " graph fails degree verification";
    }
  }

  CliRun first = run_cli("check tri-sufficient " + fixtures + "/counterexample.txt",
                         dir);
  CliRun second = run_cli(
      "check tri-sufficient " + fixtures + "/counterexample.txt", dir);
  if (first.out != second.out) return "check reports are not byte-identical";
  return std::nullopt;
}

}  // namespace

int main() {
  run_criterion(1, "gap triple: realizable, sufficient fails at prefix 2, necessary passes",
                criterion_gap_triple);
  run_criterion(2, "sufficiency sweep: qualifying specs construct and verify",
                criterion_sufficiency_sweep);
  run_criterion(3, "necessity sweep: realizable specs pass the necessary checks",
                criterion_necessity_sweep);
  run_criterion(4, "strengthened-check strictness witnesses, stored instance included",
                criterion_strictness);
  run_criterion(5, "classic checks equal brute force over their sweeps",
                criterion_classic_equivalence);
  run_criterion(6, "n-partite checks cohere with tripartite; n = 4 constructions verify",
                criterion_npartite_coherence);
  run_criterion(7, "engine invariants: measure increases, no fuel or stalemate errors",
                criterion_engine_invariants);
  run_criterion(8, "CLI round trip: formats re-parse, reruns identical, exit codes match",
                criterion_cli_round_trip);

  int failed = 0;
  for (const Outcome& r : g_results)
    if (!r.pass) ++failed;
  if (failed == 0) {
    std::cout << "all criteria passed" << std::endl;
    return 0;
  }
  std::cout << failed << " criteria failed" << std::endl;
  return 1;
}
