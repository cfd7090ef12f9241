// beepcast: simulate and verify deterministic broadcast in beeping networks.
//
// Exit status: 0 success, 1 failed run or invariant, 2 usage error.

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "beepcast/codec.hpp"
#include "beepcast/error.hpp"
#include "beepcast/harness.hpp"

namespace {

using namespace beepcast;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

volatile bool g_interrupted = false;

extern "C" void on_interrupt(int) { g_interrupted = true; }

// "all", "7", "2..33" or "1,4,9".
std::optional<std::vector<std::uint64_t>> parse_mu_list(const std::string& text) {
  if (text == "all") return std::nullopt;
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoull(item));
      } else {
        const auto lo = std::stoull(item.substr(0, dots));
        const auto hi = std::stoull(item.substr(dots + 2));
        for (auto v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::parse_error, "bad message list '" + text + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::parse_error, "empty message list");
  return out;
}

std::vector<std::uint64_t> parse_m_list(const std::string& text) {
  auto list = parse_mu_list(text);
  if (!list) throw Error(ErrorCode::parse_error, "--m does not accept 'all'");
  return *list;
}

template <class T, class Parse>
std::vector<T> parse_names(const std::string& text, Parse parse) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse(item));
  return out;
}

// Writes to the file if a path is given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(ErrorCode::invalid_argument, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct RunArgs {
  std::string topology = "single";
  std::string graph_file;
  std::string model = "beeping";
  std::string protocol = "optimal";
  std::string codebook = "narayana";
  std::uint64_t m = 2;
  std::string mu = "all";
  unsigned max_rounds = 0;
  std::string out;
  std::uint64_t seed = 1;
  bool strengthened = false;
  bool inject_fault = false;
};

int cmd_run(const RunArgs& args) {
  RunSpec spec;
  spec.topology = args.topology;
  if (!args.graph_file.empty()) spec.graph_file = args.graph_file;
  spec.model = parse_channel_model(args.model);
  spec.protocol = parse_protocol_name(args.protocol);
  spec.codebook = parse_codebook_kind(args.codebook);
  spec.m = args.m;
  if (args.max_rounds > 0) spec.max_rounds = args.max_rounds;
  spec.seed = args.seed;
  spec.strengthened_model = args.strengthened;
  spec.relay.skip_idle_after_relay = args.inject_fault;

  const Graph g = load_graph(spec);
  const MessageSpace space(spec.m, spec.codebook);  // validates m before any run
  std::vector<std::uint64_t> mus;
  if (auto list = parse_mu_list(args.mu)) {
    mus = *list;
  } else {
    for (std::uint64_t mu = 1; mu <= space.m(); ++mu) mus.push_back(mu);
  }

  std::unique_ptr<std::ofstream> trace_out;
  if (!args.out.empty()) {
    trace_out = std::make_unique<std::ofstream>(args.out, std::ios::binary);
    if (!*trace_out) throw Error(ErrorCode::invalid_argument, "cannot write " + args.out);
  }

  bool ok = true;
  for (auto mu : mus) {
    const auto result = run_one(g, spec, mu);
    std::cout << format_summary(result) << '\n';
    if (trace_out) write_trace(*trace_out, result.trace);
    ok = ok && result.summary.decode_ok;
  }
  return ok ? 0 : kExitFailure;
}

struct VerifyArgs {
  Corpus corpus;
  std::string ms = "2,3,4,5,8,16,33,64";
  bool empty = false;
  bool inject_fault = false;
  std::string out;
};

int cmd_verify(VerifyArgs args) {
  Corpus corpus = args.empty ? Corpus::empty() : args.corpus;
  if (!args.empty) corpus.ms = parse_m_list(args.ms);
  corpus.relay.skip_idle_after_relay = args.inject_fault;
  const auto report = verify(corpus);
  Output out(args.out);
  write_report(out.stream(), report);
  if (!args.out.empty()) write_report(std::cout, report);
  return report.passed() ? 0 : kExitFailure;
}

struct SweepArgs {
  std::vector<std::string> topologies;
  std::string models = "beeping";
  std::string protocols = "optimal";
  std::string ms = "2";
  std::string mu = "all";
  unsigned max_rounds = 0;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
};

SweepSpec to_sweep_spec(const SweepArgs& args) {
  SweepSpec spec;
  spec.topologies = args.topologies;
  spec.models = parse_names<ChannelModel>(args.models, [](const std::string& s) { return parse_channel_model(s); });
  spec.protocols = parse_names<ProtocolName>(args.protocols, [](const std::string& s) { return parse_protocol_name(s); });
  spec.ms = parse_m_list(args.ms);
  for (auto m : spec.ms) min_r(m);  // rejects m < 2 up front
  spec.mus = parse_mu_list(args.mu);
  if (args.max_rounds > 0) spec.max_rounds = args.max_rounds;
  spec.seed = args.seed;
  spec.threads = args.threads;
  return spec;
}

int cmd_sweep(const SweepArgs& args) {
  const auto spec = to_sweep_spec(args);
  std::signal(SIGINT, on_interrupt);
  const auto rows = sweep(spec, &g_interrupted);
  Output out(args.out);
  write_sweep_csv(out.stream(), rows);
  if (g_interrupted) {
    std::cerr << "interrupted: wrote " << rows.size() << " completed rows\n";
    return kExitFailure;
  }
  for (const auto& row : rows) {
    if (!row.decode_ok) return kExitFailure;
  }
  return 0;
}

int cmd_compare(const SweepArgs& args) {
  const auto rows = compare(to_sweep_spec(args));
  Output out(args.out);
  write_compare_csv(out.stream(), rows);
  return 0;
}

struct CodebookArgs {
  std::string kind;
  int index = -1;
  std::uint64_t for_m = 0;
  std::string out;
};

int cmd_codebook(const CodebookArgs& args) {
  const auto kind = parse_codebook_kind(args.kind);
  if ((args.index < 0) == (args.for_m == 0)) {
    throw Error(ErrorCode::invalid_argument, "give exactly one of INDEX or --for-m");
  }
  const unsigned index = args.index >= 0 ? static_cast<unsigned>(args.index) : min_r(args.for_m, kind);
  Output out(args.out);
  write_codebook(out.stream(), build_codebook(kind, index));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic broadcast in synchronous beeping networks"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "simulate one topology for one or all messages");
  auto* topo = run->add_option("--topology", run_args.topology, "single | path:D | star:n | E:D | random:n:density[:seed]");
  run->add_option("--graph-file", run_args.graph_file, "edge-list graph file")->excludes(topo);
  run->add_option("--model", run_args.model, "beeping | radio-cd | radio-no-cd");
  run->add_option("--protocol", run_args.protocol, "optimal | beepwaves | acked-optimal");
  run->add_option("--codebook", run_args.codebook, "narayana | fibonacci");
  run->add_option("--m", run_args.m, "size of the message space");
  run->add_option("--mu", run_args.mu, "message, list, range, or 'all'");
  run->add_option("--max-rounds", run_args.max_rounds, "round limit (default depends on protocol)");
  run->add_option("--out", run_args.out, "trace file (JSON lines)");
  run->add_option("--seed", run_args.seed, "seed for random topologies");
  run->add_flag("--strengthened", run_args.strengthened, "tell nodes their level and whether it is the last");
  run->add_flag("--inject-fault", run_args.inject_fault, "drop the idle round after each relay (testing)")->group("");

  VerifyArgs verify_args;
  auto* ver = app.add_subcommand("verify", "check every invariant over a corpus of runs");
  ver->add_option("--paths", verify_args.corpus.path_max_D, "paths of eccentricity 1..D");
  ver->add_option("--e", verify_args.corpus.e_max_D, "E_D graphs for D in 2..D");
  ver->add_option("--stars", verify_args.corpus.star_max_n, "stars of 1..n nodes");
  ver->add_option("--randoms", verify_args.corpus.random_count, "number of seeded random graphs");
  ver->add_option("--random-n", verify_args.corpus.random_max_n, "largest random graph");
  ver->add_option("--m", verify_args.ms, "message-space sizes");
  ver->add_flag("--empty", verify_args.empty, "verify an empty corpus");
  ver->add_option("--out", verify_args.out, "report file");
  ver->add_flag("--inject-fault", verify_args.inject_fault, "drop the idle round after each relay (testing)")->group("");

  SweepArgs sweep_args;
  auto add_sweep_options = [](CLI::App* cmd, SweepArgs& a) {
    cmd->add_option("--topology", a.topologies, "topology, last field may be a range a..b")->required();
    cmd->add_option("--m", a.ms, "message-space sizes, e.g. 2,33 or 2..8");
    cmd->add_option("--mu", a.mu, "messages: all, list, or range");
    cmd->add_option("--max-rounds", a.max_rounds, "round limit");
    cmd->add_option("--seed", a.seed, "seed for random topologies");
    cmd->add_option("--threads", a.threads, "worker threads (0: all cores)");
    cmd->add_option("--out", a.out, "CSV output (stdout if omitted)");
  };
  auto* swp = app.add_subcommand("sweep", "cross-product of runs as CSV");
  add_sweep_options(swp, sweep_args);
  swp->add_option("--model", sweep_args.models, "comma-separated channel models");
  swp->add_option("--protocol", sweep_args.protocols, "comma-separated protocols");

  SweepArgs compare_args;
  auto* cmp = app.add_subcommand("compare", "optimal vs Beep Waves completion rounds");
  add_sweep_options(cmp, compare_args);

  CodebookArgs book_args;
  auto* book = app.add_subcommand("codebook", "print a codebook in canonical order");
  book->add_option("kind", book_args.kind, "narayana | fibonacci")->required();
  book->add_option("index", book_args.index, "codebook index");
  book->add_option("--for-m", book_args.for_m, "smallest codebook holding m messages");
  book->add_option("--out", book_args.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*ver) return cmd_verify(verify_args);
    if (*swp) return cmd_sweep(sweep_args);
    if (*cmp) return cmd_compare(compare_args);
    if (*book) return cmd_codebook(book_args);
  } catch (const Error& e) {
    std::cerr << "beepcast: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
