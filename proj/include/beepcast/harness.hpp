#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beepcast/codec.hpp"
#include "beepcast/engine.hpp"
#include "beepcast/graph.hpp"
#include "beepcast/protocols.hpp"

namespace beepcast {

// Topology descriptors: single | path:D | star:n | E:D | random:n:density[:seed].
// The seed argument applies to random topologies that do not name their own.
Graph make_topology(std::string_view descriptor, std::uint64_t seed = 1);

// Expands `kind:a..b` ranges in the last numeric field, e.g. path:1..3.
std::vector<std::string> expand_topologies(std::string_view descriptor);

// Everything needed to reproduce one simulation (or a set of them, mu = all).
struct RunSpec {
  std::string topology = "single";
  std::optional<std::string> graph_file;
  ChannelModel model = ChannelModel::beeping;
  ProtocolName protocol = ProtocolName::optimal;
  CodebookKind codebook = CodebookKind::narayana;
  std::uint64_t m = 2;
  std::optional<std::uint64_t> mu;  // nullopt means every message 1..m
  std::optional<unsigned> max_rounds;
  std::uint64_t seed = 1;
  bool strengthened_model = false;
  RelayOptions relay;
};

Graph load_graph(const RunSpec& spec);
std::string topology_label(const RunSpec& spec);

unsigned max_rounds_for(ProtocolName protocol, unsigned eccentricity, std::uint64_t m, std::uint64_t mu);

struct RunSummary {
  std::string topology;
  unsigned D = 0;
  ChannelModel model = ChannelModel::beeping;
  ProtocolName protocol = ProtocolName::optimal;
  std::uint64_t m = 0;
  std::uint64_t mu = 0;
  long completion_round = -1;  // -1 when some node never terminated
  long completion_nonsource = -1;
  unsigned bound = 0;          // D + min_r(m)
  long slack = 0;              // bound - completion_round
  unsigned max_energy = 0;
  bool decode_ok = false;
  TraceStatus status = TraceStatus::complete;
  std::string error;
};

struct RunResult {
  Trace trace;
  RunSummary summary;
};

RunResult run_one(const Graph& g, const RunSpec& spec, std::uint64_t mu);

// `completion=.. energy=.. decoded=..` one-liner.
std::string format_summary(const RunResult& result);

inline constexpr std::string_view kCsvHeader =
    "topology,D,model,protocol,m,mu,completion_round,bound,slack,max_energy,decode_ok";

void write_csv_row(std::ostream& os, const RunSummary& row);

struct SweepSpec {
  std::vector<std::string> topologies;  // each may contain a range
  std::vector<ChannelModel> models{ChannelModel::beeping};
  std::vector<ProtocolName> protocols{ProtocolName::optimal};
  std::vector<std::uint64_t> ms{2};
  std::optional<std::vector<std::uint64_t>> mus;  // nullopt: every mu in 1..m
  std::optional<unsigned> max_rounds;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Rows come back in cross-product order regardless of thread scheduling.
// When `stop` is raised mid-sweep, the finished rows are returned.
std::vector<RunSummary> sweep(const SweepSpec& spec, const volatile bool* stop = nullptr);
void write_sweep_csv(std::ostream& os, const std::vector<RunSummary>& rows);

struct CompareRow {
  std::string topology;
  unsigned D = 0;
  std::uint64_t m = 0;
  std::uint64_t mu = 0;
  long optimal = -1;
  long beepwaves = -1;
};

std::vector<CompareRow> compare(const SweepSpec& spec);
void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows);

struct Corpus {
  unsigned path_max_D = 20;
  unsigned e_max_D = 20;
  std::size_t star_max_n = 20;
  unsigned random_count = 10;
  std::size_t random_max_n = 40;
  double random_density = 0.15;
  std::vector<std::uint64_t> ms{2, 3, 4, 5, 8, 16, 33, 64};
  unsigned codec_max_index = 25;
  std::uint64_t roundtrip_max_m = 200;
  std::uint64_t self_delimiting_max_mu = 1000;
  bool codec_checks = true;
  RelayOptions relay;  // fault injection hook

  static Corpus empty();
  bool is_empty() const;
};

// (descriptor, graph) pairs of the corpus, in a fixed order.
std::vector<std::pair<std::string, Graph>> corpus_graphs(const Corpus& corpus);

struct CheckResult {
  std::string id;
  std::string description;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string counterexample;  // first failing case

  bool passed() const noexcept { return failures == 0; }
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> warnings;

  bool passed() const;
  const CheckResult* find(std::string_view id) const;
};

VerifyReport verify(const Corpus& corpus);
void write_report(std::ostream& os, const VerifyReport& report);

}  // namespace beepcast
