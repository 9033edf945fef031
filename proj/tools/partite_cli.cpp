// Command-line driver: realizability checks, witness construction, the
// exhaustive oracle, and gap mining over small universes.
//
// Exit codes: 0 pass/realizable, 1 fail/not realizable, 2 input error,
// 3 verdict unknown within budget.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "partite/classic.hpp"
#include "partite/core.hpp"
#include "partite/io.hpp"
#include "partite/multipartite.hpp"
#include "partite/oracle.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitUnknown = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw partite::Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw partite::Error("cannot write " + path);
  out << content;
}

void require_parts(const partite::InstanceFile& file, size_t lo, size_t hi,
                   const std::string& kind) {
  if (file.parts.size() < lo || file.parts.size() > hi)
    throw partite::InfeasibleInput(
        kind + " expects " +
        (lo == hi ? std::to_string(lo) : std::to_string(lo) + " or more") +
        " parts, file has " + std::to_string(file.parts.size()));
}

partite::CheckReport dispatch_check(const std::string& kind,
                                    const partite::InstanceFile& file,
                                    bool strict_paper) {
  using namespace partite;
  if (kind == "eg") {
    require_parts(file, 1, 1, kind);
    return eg_check(to_degree_seq(file, 0));
  }
  if (kind == "gr") {
    require_parts(file, 2, 2, kind);
    return gr_check(to_degree_seq(file, 0), to_degree_seq(file, 1));
  }
  if (kind == "tri-sufficient") {
    require_parts(file, 3, 3, kind);
    return tri_sufficient_check(to_spec(file));
  }
  if (kind == "tri-necessary") {
    require_parts(file, 3, 3, kind);
    return tri_necessary_check(to_spec(file));
  }
  if (kind == "tri-strong") {
    require_parts(file, 3, 3, kind);
    return tri_strong_necessary_check(to_degree_seq(file, 0),
                                      to_degree_seq(file, 1),
                                      to_degree_seq(file, 2));
  }
  if (kind == "cor23") {
    require_parts(file, 3, 3, kind);
    return cor23_check(to_degree_seq(file, 0), to_degree_seq(file, 1),
                       to_degree_seq(file, 2), strict_paper);
  }
  if (kind == "cor24") {
    require_parts(file, 3, 3, kind);
    return cor24_check(to_degree_seq(file, 0), to_degree_seq(file, 1),
                       to_degree_seq(file, 2));
  }
  if (kind == "np-sufficient") {
    require_parts(file, 2, SIZE_MAX, kind);
    return np_sufficient_check(to_spec(file));
  }
  if (kind == "np-necessary") {
    require_parts(file, 2, SIZE_MAX, kind);
    return np_necessary_check(to_spec(file));
  }
  throw partite::InfeasibleInput("unknown check kind: " + kind);
}

// Degrees of the relabeled graph against the file's original intervals.
void verify_original_order(const partite::MultipartiteGraph& g,
                           const partite::InstanceFile& file) {
  for (size_t p = 0; p < file.parts.size(); ++p) {
    auto profile = partite::degree_profile(g, static_cast<int>(p));
    for (size_t i = 0; i < file.parts[p].size(); ++i) {
      const partite::Interval& box = file.parts[p][i];
      if (profile[i] < box.lo || profile[i] > box.hi)
        throw partite::InternalError("emitted graph misses its bounds");
    }
  }
}

std::string render_graph(const partite::MultipartiteGraph& g,
                         const std::string& format) {
  if (format == "dot") return partite::graph_to_dot(g);
  return partite::graph_to_json(g).dump(2) + "\n";
}

std::vector<std::string> witness_classes(const partite::GapWitness& w) {
  std::vector<std::string> classes;
  if (partite::is_sufficiency_gap(w)) classes.push_back("sufficiency");
  if (partite::is_necessity_gap(w)) classes.push_back("necessity");
  if (partite::is_strictness_gap(w)) classes.push_back("strictness");
  return classes;
}

nlohmann::json spec_to_json(const partite::PartiteSpec& spec) {
  nlohmann::json parts = nlohmann::json::array();
  for (const partite::IntervalSeq& part : spec.parts()) {
    nlohmann::json entries = nlohmann::json::array();
    for (const partite::Interval& e : part.entries())
      entries.push_back(nlohmann::json::array({e.lo, e.hi}));
    parts.push_back(std::move(entries));
  }
  return parts;
}

int run_check(const std::string& kind, const std::string& path,
              bool strict_paper) {
  partite::InstanceFile file = partite::parse_instance(read_file(path));
  partite::CheckReport report = dispatch_check(kind, file, strict_paper);
  nlohmann::json out;
  out["kind"] = kind;
  out["report"] = partite::report_to_json(report);
  std::cout << out.dump(2) << "\n";
  return report.passed ? kExitPass : kExitFail;
}

int run_realize(const std::string& path, const std::string& out_path,
                const std::string& format) {
  using namespace partite;
  InstanceFile file = parse_instance(read_file(path));
  if (file.parts.size() < 2)
    throw InfeasibleInput("realize expects at least 2 parts");
  PartiteSpec spec = to_spec(file);

  MultipartiteGraph canonical(spec.part_sizes());
  try {
    if (spec.part_count() == 2 && spec.exact()) {
      canonical = build_bipartite_exact(to_degree_seq(file, 0),
                                        to_degree_seq(file, 1));
    } else if (spec.part_count() == 3) {
      canonical = realize_tripartite(spec);
    } else {
      canonical = realize_npartite(spec);
    }
  } catch (const PreconditionViolated& e) {
    std::cerr << "not constructible: " << e.what() << "\n";
    return kExitFail;
  } catch (const InfeasibleInput& e) {
    std::cerr << "not constructible: " << e.what() << "\n";
    return kExitFail;
  }

  MultipartiteGraph g = to_original_order(canonical, spec);
  verify_original_order(g, file);
  std::string rendered = render_graph(g, format);
  if (out_path.empty())
    std::cout << rendered;
  else
    write_file(out_path, rendered);
  return kExitPass;
}

int run_oracle(const std::string& path, long long budget,
               const std::string& out_path, const std::string& format) {
  using namespace partite;
  InstanceFile file = parse_instance(read_file(path));
  PartiteSpec spec = to_spec(file);
  OracleResult result = oracle_is_realizable(spec, budget);

  nlohmann::json out;
  out["nodes_visited"] = result.nodes_visited;
  switch (result.verdict) {
    case OracleVerdict::realizable: out["verdict"] = "realizable"; break;
    case OracleVerdict::not_realizable: out["verdict"] = "not_realizable"; break;
    case OracleVerdict::unknown: out["verdict"] = "unknown"; break;
  }
  std::cout << out.dump(2) << "\n";

  if (result.verdict == OracleVerdict::realizable) {
    MultipartiteGraph g = to_original_order(*result.witness, spec);
    verify_original_order(g, file);
    std::string rendered = render_graph(g, format);
    if (!out_path.empty()) write_file(out_path, rendered);
    return kExitPass;
  }
  return result.verdict == OracleVerdict::not_realizable ? kExitFail
                                                         : kExitUnknown;
}

int run_gap_search(int max_size, long long max_hi, bool exact_only,
                   std::optional<std::uint64_t> seed, std::optional<int> samples,
                   long long budget, const std::string& out_dir) {
  using namespace partite;
  if (3 * max_size > kOracleMaxVertices)
    throw InfeasibleInput("--sizes too large for the oracle guard (max " +
                          std::to_string(kOracleMaxVertices / 3) + ")");
  GapUniverse universe;
  universe.max_part_size = max_size;
  universe.max_hi = max_hi;
  universe.exact_only = exact_only;
  if (samples) universe.sample = {seed.value_or(0), *samples};

  GapSearchOutcome outcome = gap_search(universe, {GapKind::sufficiency,
                                                   GapKind::necessity,
                                                   GapKind::strictness},
                                        budget);

  std::ostringstream summary;
  summary << "candidates: " << outcome.candidates << "\n";
  summary << "unknown: " << outcome.unknown << "\n";
  summary << "witnesses: " << outcome.witnesses.size() << "\n";
  for (size_t i = 0; i < outcome.witnesses.size(); ++i) {
    const GapWitness& w = outcome.witnesses[i];
    std::string classes;
    for (const std::string& c : witness_classes(w))
      classes += (classes.empty() ? "" : "+") + c;
    summary << i + 1 << "  " << classes << "  vertices="
            << w.spec.total_vertices() << "  parts=" << spec_to_json(w.spec).dump()
            << "  oracle=" << (w.oracle_realizable ? "realizable" : "not_realizable")
            << "\n";
  }
  std::cout << summary.str();

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (size_t i = 0; i < outcome.witnesses.size(); ++i) {
      const GapWitness& w = outcome.witnesses[i];
      nlohmann::json j;
      j["spec"] = {{"parts", spec_to_json(w.spec)}};
      j["oracle_realizable"] = w.oracle_realizable;
      j["classes"] = witness_classes(w);
      j["verdicts"] = w.verdicts;
      if (w.witness_graph)
        j["witness_graph"] = graph_to_json(*w.witness_graph);
      else
        j["witness_graph"] = nullptr;
      char ordinal[16];
      std::snprintf(ordinal, sizeof ordinal, "%04zu", i + 1);
      write_file(out_dir + "/witness_" + ordinal + ".json", j.dump(2) + "\n");
    }
    write_file(out_dir + "/summary.txt", summary.str());
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"degree-interval realizability for multipartite graphs"};
  app.require_subcommand(1);

  std::string check_kind;
  std::string check_file;
  bool strict_paper = false;
  CLI::App* check = app.add_subcommand("check", "run a realizability check");
  check->add_option("kind", check_kind, "one of: eg gr tri-sufficient tri-necessary tri-strong cor23 cor24 np-sufficient np-necessary")
      ->required();
  check->add_option("file", check_file, "instance file")->required();
  check->add_flag("--strict-paper", strict_paper,
                  "cor23 only: evaluate just the two printed families");

  std::string realize_file;
  std::string realize_out;
  std::string realize_format = "json";
  CLI::App* realize = app.add_subcommand("realize", "construct a witness graph");
  realize->add_option("file", realize_file, "instance file")->required();
  realize->add_option("--out", realize_out, "output path (default stdout)");
  realize->add_option("--format", realize_format, "dot or json")
      ->check(CLI::IsMember({"dot", "json"}));

  std::string oracle_file;
  std::string oracle_out;
  std::string oracle_format = "json";
  long long oracle_budget = partite::kOracleDefaultBudget;
  CLI::App* oracle = app.add_subcommand("oracle", "decide realizability exactly");
  oracle->add_option("file", oracle_file, "instance file")->required();
  oracle->add_option("--budget", oracle_budget, "search node budget");
  oracle->add_option("--out", oracle_out, "witness output path");
  oracle->add_option("--format", oracle_format, "dot or json")
      ->check(CLI::IsMember({"dot", "json"}));

  int gap_sizes = 2;
  long long gap_max_hi = 4;
  bool gap_exact_only = false;
  std::optional<std::uint64_t> gap_seed;
  std::optional<int> gap_samples;
  long long gap_budget = 1'000'000;
  std::string gap_out;
  CLI::App* gap = app.add_subcommand("gap-search", "mine separating witnesses");
  gap->add_option("--sizes", gap_sizes, "max part size (default 2)");
  gap->add_option("--max-hi", gap_max_hi, "max interval bound (default 4)");
  gap->add_flag("--exact-only", gap_exact_only, "enumerate exact sequences only");
  gap->add_option("--seed", gap_seed, "sampling seed");
  gap->add_option("--samples", gap_samples,
                  "sample this many specs instead of enumerating");
  gap->add_option("--budget", gap_budget, "oracle node budget per candidate");
  gap->add_option("--out", gap_out, "directory for witness files and summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  const std::string active_file =
      *check ? check_file : *realize ? realize_file : *oracle ? oracle_file : "";
  try {
    if (*check) return run_check(check_kind, check_file, strict_paper);
    if (*realize) return run_realize(realize_file, realize_out, realize_format);
    if (*oracle) return run_oracle(oracle_file, oracle_budget, oracle_out,
                                   oracle_format);
    if (*gap) return run_gap_search(gap_sizes, gap_max_hi, gap_exact_only,
                                    gap_seed, gap_samples, gap_budget, gap_out);
  } catch (const partite::ParseError& e) {
    std::cerr << active_file << ":" << e.what() << "\n";
    return kExitInput;
  } catch (const partite::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
