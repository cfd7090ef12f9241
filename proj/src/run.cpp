#include <algorithm>
#include <atomic>
#include <bit>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include "beepcast/error.hpp"
#include "beepcast/harness.hpp"

namespace beepcast {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (true) {
    const auto end = text.find(sep, begin);
    out.emplace_back(text.substr(begin, end == std::string_view::npos ? std::string_view::npos : end - begin));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return out;
}

std::uint64_t parse_uint(const std::string& text, std::string_view what) {
  try {
    std::size_t used = 0;
    const auto value = std::stoull(text, &used);
    if (used != text.size() || text.front() == '-') throw std::invalid_argument(text);
    return value;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::parse_error, "bad " + std::string(what) + " '" + text + "'");
  }
}

double parse_double(const std::string& text, std::string_view what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::parse_error, "bad " + std::string(what) + " '" + text + "'");
  }
}

}  // namespace

Graph make_topology(std::string_view descriptor, std::uint64_t seed) {
  const auto parts = split(descriptor, ':');
  const std::string& kind = parts[0];
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() - 1 < lo || parts.size() - 1 > hi) {
      throw Error(ErrorCode::parse_error, "topology '" + std::string(descriptor) + "' has the wrong number of parameters");
    }
  };
  if (kind == "single") {
    arity(0, 0);
    return make_single();
  }
  if (kind == "path") {
    arity(1, 1);
    return make_path(static_cast<unsigned>(parse_uint(parts[1], "path length")));
  }
  if (kind == "star") {
    arity(1, 1);
    return make_star(parse_uint(parts[1], "star size"));
  }
  if (kind == "E") {
    arity(1, 1);
    return make_E(static_cast<unsigned>(parse_uint(parts[1], "eccentricity")));
  }
  if (kind == "random") {
    arity(2, 3);
    const auto n = parse_uint(parts[1], "node count");
    const double density = parse_double(parts[2], "edge density");
    const auto own_seed = parts.size() == 4 ? parse_uint(parts[3], "seed") : seed;
    return make_random_connected(n, density, own_seed);
  }
  throw Error(ErrorCode::parse_error, "unknown topology kind '" + kind + "'");
}

std::vector<std::string> expand_topologies(std::string_view descriptor) {
  const auto cut = descriptor.rfind(':');
  const auto dots = descriptor.find("..");
  if (cut == std::string_view::npos || dots == std::string_view::npos || dots < cut) {
    return {std::string(descriptor)};
  }
  const std::string head(descriptor.substr(0, cut + 1));
  const std::string range(descriptor.substr(cut + 1));
  const auto bounds = range.find("..");
  const auto lo = parse_uint(range.substr(0, bounds), "range start");
  const auto hi = parse_uint(range.substr(bounds + 2), "range end");
  if (lo > hi) throw Error(ErrorCode::parse_error, "empty range '" + range + "'");
  std::vector<std::string> out;
  for (auto k = lo; k <= hi; ++k) out.push_back(head + std::to_string(k));
  return out;
}

Graph load_graph(const RunSpec& spec) {
  if (spec.graph_file) {
    std::ifstream in(*spec.graph_file);
    if (!in) throw Error(ErrorCode::parse_error, "cannot open graph file " + *spec.graph_file);
    return read_graph(in);
  }
  return make_topology(spec.topology, spec.seed);
}

std::string topology_label(const RunSpec& spec) {
  if (spec.graph_file) return "file:" + *spec.graph_file;
  if (spec.topology.rfind("random:", 0) == 0 && split(spec.topology, ':').size() == 3) {
    return spec.topology + ":" + std::to_string(spec.seed);
  }
  return spec.topology;
}

unsigned max_rounds_for(ProtocolName protocol, unsigned eccentricity, std::uint64_t m, std::uint64_t mu) {
  switch (protocol) {
    case ProtocolName::optimal:
      return default_max_rounds(eccentricity, m);
    case ProtocolName::beepwaves:
      // Self-delimiting words have 2*bit_width(mu) + 4 bits, three rounds each.
      return std::max(default_max_rounds(eccentricity, m),
                      eccentricity + 6 * static_cast<unsigned>(std::bit_width(mu)) + 32);
    case ProtocolName::acked_optimal:
      // Acknowledgements walk back one level per three-round phase.
      return default_max_rounds(eccentricity, m) + 3 * eccentricity;
  }
  return default_max_rounds(eccentricity, m);
}

RunResult run_one(const Graph& g, const RunSpec& spec, std::uint64_t mu) {
  const LevelMap levels = compute_levels(g);
  auto space = std::make_shared<const MessageSpace>(spec.m, spec.codebook);
  const auto programs = make_protocol(spec.protocol, space, mu, spec.relay);

  SimulationOptions options;
  options.max_rounds = spec.max_rounds.value_or(max_rounds_for(spec.protocol, levels.eccentricity, spec.m, mu));
  options.strengthened_model = spec.strengthened_model;

  RunResult result{simulate(g, spec.model, *programs.source, *programs.nonsource, options), {}};
  const Trace& trace = result.trace;

  RunSummary& s = result.summary;
  s.topology = topology_label(spec);
  s.D = levels.eccentricity;
  s.model = spec.model;
  s.protocol = spec.protocol;
  s.m = spec.m;
  s.mu = mu;
  s.bound = levels.eccentricity + space->r();
  s.status = trace.status;
  s.error = trace.error;
  s.max_energy = energy_of(trace).max;
  try {
    s.completion_round = completion_round(trace);
    s.completion_nonsource = completion_round_nonsource(trace);
    s.slack = static_cast<long>(s.bound) - s.completion_round;
  } catch (const Error&) {
    s.completion_round = s.completion_nonsource = -1;
    s.slack = 0;
  }
  s.decode_ok = trace.status == TraceStatus::complete;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v != g.source() && trace.nodes[v].decoded != mu) s.decode_ok = false;
  }
  return result;
}

std::string format_summary(const RunResult& result) {
  const auto& s = result.summary;
  std::ostringstream os;
  os << "topology=" << s.topology << " D=" << s.D << " model=" << to_string(s.model)
     << " protocol=" << to_string(s.protocol) << " m=" << s.m << " mu=" << s.mu
     << " status=" << to_string(s.status) << " completion=" << s.completion_round
     << " completion_nonsource=" << s.completion_nonsource << " bound=" << s.bound
     << " max_energy=" << s.max_energy << " decoded=";
  bool first = true;
  for (NodeId v = 0; v < result.trace.nodes.size(); ++v) {
    if (v == result.trace.source) continue;
    os << (first ? "" : ",");
    first = false;
    const auto& d = result.trace.nodes[v].decoded;
    if (d) {
      os << *d;
    } else {
      os << '-';
    }
  }
  if (first) os << "none";
  os << " decode_ok=" << (s.decode_ok ? 1 : 0);
  if (!s.error.empty()) os << " error=\"" << s.error << '"';
  return os.str();
}

void write_csv_row(std::ostream& os, const RunSummary& row) {
  os << row.topology << ',' << row.D << ',' << to_string(row.model) << ',' << to_string(row.protocol) << ','
     << row.m << ',' << row.mu << ',' << row.completion_round << ',' << row.bound << ',' << row.slack << ','
     << row.max_energy << ',' << (row.decode_ok ? 1 : 0) << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<RunSummary>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& row : rows) write_csv_row(os, row);
}

namespace {

struct Job {
  std::size_t graph = 0;
  RunSpec spec;
  std::uint64_t mu = 0;
};

template <class Fn>
void run_parallel(std::size_t count, unsigned threads, const volatile bool* stop, Fn&& fn) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      if (stop != nullptr && *stop) return;
      fn(k);
    }
  };
  if (threads == 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
}

std::vector<std::uint64_t> mus_for(const SweepSpec& spec, std::uint64_t m) {
  if (spec.mus) {
    std::vector<std::uint64_t> out;
    for (auto mu : *spec.mus) {
      if (mu >= 1 && mu <= m) out.push_back(mu);
    }
    return out;
  }
  std::vector<std::uint64_t> out(m);
  for (std::uint64_t mu = 1; mu <= m; ++mu) out[mu - 1] = mu;
  return out;
}

std::vector<std::pair<std::string, Graph>> sweep_graphs(const SweepSpec& spec) {
  std::vector<std::pair<std::string, Graph>> out;
  for (const auto& pattern : spec.topologies) {
    for (auto& descriptor : expand_topologies(pattern)) {
      RunSpec probe;
      probe.topology = descriptor;
      probe.seed = spec.seed;
      Graph g = make_topology(descriptor, spec.seed);
      out.emplace_back(topology_label(probe), std::move(g));
    }
  }
  return out;
}

}  // namespace

std::vector<RunSummary> sweep(const SweepSpec& spec, const volatile bool* stop) {
  const auto graphs = sweep_graphs(spec);
  std::vector<Job> jobs;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    for (auto model : spec.models) {
      for (auto protocol : spec.protocols) {
        for (auto m : spec.ms) {
          for (auto mu : mus_for(spec, m)) {
            Job job;
            job.graph = gi;
            job.spec.topology = graphs[gi].first;
            job.spec.model = model;
            job.spec.protocol = protocol;
            job.spec.m = m;
            job.spec.max_rounds = spec.max_rounds;
            job.spec.seed = spec.seed;
            job.mu = mu;
            jobs.push_back(std::move(job));
          }
        }
      }
    }
  }

  std::vector<std::optional<RunSummary>> slots(jobs.size());
  run_parallel(jobs.size(), spec.threads, stop, [&](std::size_t k) {
    slots[k] = run_one(graphs[jobs[k].graph].second, jobs[k].spec, jobs[k].mu).summary;
  });

  std::vector<RunSummary> rows;
  for (auto& slot : slots) {
    if (slot) rows.push_back(std::move(*slot));
  }
  return rows;
}

std::vector<CompareRow> compare(const SweepSpec& spec) {
  SweepSpec both = spec;
  both.models = {ChannelModel::beeping};
  both.protocols = {ProtocolName::optimal, ProtocolName::beepwaves};
  const auto rows = sweep(both);

  std::map<std::tuple<std::string, std::uint64_t, std::uint64_t>, std::size_t> index;
  std::vector<CompareRow> out;
  for (const auto& row : rows) {
    auto key = std::make_tuple(row.topology, row.m, row.mu);
    auto [it, inserted] = index.try_emplace(key, out.size());
    if (inserted) out.push_back({row.topology, row.D, row.m, row.mu, -1, -1});
    auto& target = out[it->second];
    (row.protocol == ProtocolName::optimal ? target.optimal : target.beepwaves) = row.completion_round;
  }
  return out;
}

void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows) {
  os << "topology,D,m,mu,optimal,beepwaves,delta\n";
  for (const auto& r : rows) {
    os << r.topology << ',' << r.D << ',' << r.m << ',' << r.mu << ',' << r.optimal << ',' << r.beepwaves << ','
       << (r.beepwaves - r.optimal) << '\n';
  }
}

}  // namespace beepcast
