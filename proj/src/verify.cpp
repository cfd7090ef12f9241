#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>
#include <atomic>

#include "beepcast/error.hpp"
#include "beepcast/harness.hpp"

namespace beepcast {

namespace {

struct CheckInfo {
  const char* id;
  const char* description;
};

constexpr CheckInfo kChecks[] = {
    {"codec.prefix-free", "every codebook W_i and W'_i is prefix-free"},
    {"codec.size", "|W_i| follows Narayana's cows, |W'_i| follows Fibonacci"},
    {"codec.cost-bound", "C(prefix(w, |w|-1)) <= i - 3 for every w in W_i, i >= 3"},
    {"codec.closed-form", "closed form round(d c^i) equals the recurrence"},
    {"codec.min-r", "w_{r-1} < m <= w_r and r <= 2 ceil(log2 m) + 2"},
    {"codec.roundtrip", "decode(encode(mu)) = mu, proper prefixes are incomplete"},
    {"codec.self-delimiting", "self-delimiting encode/decode round-trips"},
    {"engine.wake-after-level", "no node at level l wakes before round l"},
    {"engine.wake-monotone", "earliest wake-up grows by at least one round per level"},
    {"engine.symmetry", "on E_D both nodes of a level share every state label"},
    {"engine.e-feedback", "on E_D listeners at level >= 2 only hear beep or nothing"},
    {"engine.determinism", "re-simulating a run yields a byte-identical trace"},
    {"protocols.correctness", "every non-source node decodes mu (optimal)"},
    {"protocols.wake-round", "level-l nodes wake at round l (optimal)"},
    {"protocols.schedule", "j-th append at round l + C(prefix(s, j-1)) + 3"},
    {"protocols.termination", "termination at l + C(prefix(s,|s|-1)) + 3 (+ last bit if inner)"},
    {"protocols.bound", "completion <= D + r(m) <= D + 2 ceil(log2 m) + 2"},
    {"protocols.baseline-dominance", "optimal completion <= Beep Waves completion for mu >= 2"},
    {"protocols.beepwaves-schedule", "Beep Waves delivers bit i to level l at round l + 3(i-1) and decodes mu"},
    {"protocols.acked-desk", "acknowledged variant: all decode, source terminates last"},
};

using Partial = std::map<std::string, CheckResult>;

void record(Partial& p, const std::string& id, bool ok, const std::string& detail) {
  auto& c = p[id];
  ++c.cases;
  if (!ok) {
    if (c.failures == 0) c.counterexample = detail;
    ++c.failures;
  }
}

unsigned ceil_log2(std::uint64_t x) { return x <= 1 ? 0 : static_cast<unsigned>(std::bit_width(x - 1)); }

std::string describe(const std::string& topology, ProtocolName protocol, std::uint64_t m, std::uint64_t mu) {
  return "topology=" + topology + " protocol=" + std::string(to_string(protocol)) + " m=" + std::to_string(m) +
         " mu=" + std::to_string(mu);
}

std::string serialize(const Trace& trace) {
  std::ostringstream os;
  write_trace(os, trace);
  return os.str();
}

void codec_checks(const Corpus& corpus, Partial& p) {
  for (unsigned i = 0; i <= corpus.codec_max_index; ++i) {
    const auto book = build_codebook(CodebookKind::narayana, i);
    const std::string where = "narayana index=" + std::to_string(i);
    record(p, "codec.prefix-free", is_prefix_free(book.words), where);
    record(p, "codec.size", book.words.size() == narayana(i), where);
    if (i >= 3) {
      for (const auto& w : book.words) {
        record(p, "codec.cost-bound", cost(w.prefix(w.size() - 1)) <= i - 3, where + " word=" + w.str());
      }
    }
    if (i >= 1) {
      const auto fib = build_codebook(CodebookKind::fibonacci, i);
      const std::string fwhere = "fibonacci index=" + std::to_string(i);
      record(p, "codec.prefix-free", is_prefix_free(fib.words), fwhere);
      const std::uint64_t expected = i <= 2 ? 1 : fibonacci(i - 1) + fibonacci(i - 2);
      record(p, "codec.size", fib.words.size() == expected && expected == fibonacci(i), fwhere);
    }
  }
  for (unsigned i = 0; i <= std::min(40U, 15 + corpus.codec_max_index); ++i) {
    record(p, "codec.closed-form", narayana_closed_form(i) == narayana(i), "index=" + std::to_string(i));
  }
  for (std::uint64_t m = 2; m <= std::max<std::uint64_t>(corpus.roundtrip_max_m, 1024); ++m) {
    const unsigned r = min_r(m);
    const bool ok = narayana(r) >= m && narayana(r - 1) < m && r >= 3 && r <= 2 * ceil_log2(m) + 2;
    record(p, "codec.min-r", ok, "m=" + std::to_string(m) + " r=" + std::to_string(r));
  }
  for (std::uint64_t m = 2; m <= corpus.roundtrip_max_m; ++m) {
    const MessageSpace space(m);
    for (std::uint64_t mu = 1; mu <= m; ++mu) {
      const auto& word = space.encode(mu);
      bool ok = space.decode(word) == Decoded::done(mu, word.size());
      for (std::size_t j = 0; j < word.size(); ++j) ok = ok && !space.decode(word.prefix(j)).complete;
      record(p, "codec.roundtrip", ok, "m=" + std::to_string(m) + " mu=" + std::to_string(mu));
    }
  }
  for (std::uint64_t mu = 1; mu <= corpus.self_delimiting_max_mu; ++mu) {
    const auto word = self_delimiting_encode(mu);
    bool ok = self_delimiting_decode(word) == Decoded::done(mu, word.size());
    for (std::size_t j = 0; j < word.size(); ++j) ok = ok && !self_delimiting_decode(word.prefix(j)).complete;
    record(p, "codec.self-delimiting", ok, "mu=" + std::to_string(mu));
  }
}

void wake_checks(const Trace& trace, const LevelMap& levels, const std::string& where, Partial& p) {
  std::vector<unsigned> earliest(levels.eccentricity + 1, ~0U);
  bool ok = true;
  for (NodeId v = 0; v < trace.nodes.size(); ++v) {
    const auto& wake = trace.nodes[v].wake_round;
    if (!wake) continue;
    ok = ok && *wake >= levels.level[v];
    earliest[levels.level[v]] = std::min(earliest[levels.level[v]], *wake);
  }
  record(p, "engine.wake-after-level", ok, where);
  bool monotone = true;
  for (unsigned l = 0; l + 1 <= levels.eccentricity; ++l) {
    if (earliest[l] == ~0U) continue;
    monotone = monotone && (earliest[l + 1] == ~0U || earliest[l + 1] >= earliest[l] + 1);
  }
  record(p, "engine.wake-monotone", monotone, where);
}

void symmetry_checks(const Trace& trace, const LevelMap& levels, bool beeping, const std::string& where,
                     Partial& p) {
  const auto groups = levels.by_level();
  bool same = true;
  bool feedback_ok = true;
  for (unsigned t = 1; t <= trace.round_count(); ++t) {
    for (unsigned l = 1; l < groups.size(); ++l) {
      const auto& a = trace.at(t, groups[l][0]);
      const auto& b = trace.at(t, groups[l][1]);
      same = same && a.state_label == b.state_label;
      if (beeping && l >= 2) {
        for (const auto* rec : {&a, &b}) {
          if (rec->status == NodeStatus::active && rec->action.kind == ActionKind::listen) {
            feedback_ok = feedback_ok && (rec->feedback.kind == FeedbackKind::beep ||
                                          rec->feedback.kind == FeedbackKind::nothing);
          }
        }
      }
    }
  }
  record(p, "engine.symmetry", same, where);
  if (beeping) record(p, "engine.e-feedback", feedback_ok, where);
}

// Checks derived from the exact round formulas of the optimal protocol.
void optimal_checks(const Graph& g, const LevelMap& levels, const MessageSpace& space, std::uint64_t mu,
                    const RunResult& run, const std::string& where, Partial& p) {
  const Trace& trace = run.trace;
  const BitString& s = space.encode(mu);
  const std::uint64_t last_cost = cost(s.prefix(s.size() - 1));

  record(p, "protocols.correctness", run.summary.decode_ok, where);

  bool wake_ok = true, schedule_ok = true, termination_ok = true;
  std::string detail;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == g.source()) continue;
    const unsigned l = levels.level[v];
    const auto& node = trace.nodes[v];
    wake_ok = wake_ok && node.wake_round == l;

    bool sched = node.learn_rounds.size() == s.size();
    for (std::size_t j = 0; sched && j < s.size(); ++j) {
      sched = node.learn_rounds[j] == l + cost(s.prefix(j)) + 3;
    }
    if (!sched && schedule_ok) detail = " node=" + std::to_string(v) + " level=" + std::to_string(l);
    schedule_ok = schedule_ok && sched;

    bool inner = std::any_of(g.neighbors(v).begin(), g.neighbors(v).end(),
                             [&](NodeId u) { return levels.level[u] == l + 1; });
    const std::uint64_t expected = l + last_cost + 3 + (inner ? static_cast<unsigned>(s.back()) : 0);
    termination_ok = termination_ok && node.termination_round == expected;
  }
  record(p, "protocols.wake-round", wake_ok, where);
  record(p, "protocols.schedule", schedule_ok, where + detail);
  record(p, "protocols.termination", termination_ok, where);

  const unsigned r = space.r();
  const bool bound_ok = run.summary.completion_round >= 0 &&
                        run.summary.completion_round <= static_cast<long>(levels.eccentricity + r) &&
                        r <= 2 * ceil_log2(space.m()) + 2;
  record(p, "protocols.bound", bound_ok, where + " completion=" + std::to_string(run.summary.completion_round));
}

void beepwaves_schedule_check(const Graph& g, const LevelMap& levels, std::uint64_t mu, const RunResult& run,
                              const std::string& where, Partial& p) {
  const auto word = self_delimiting_encode(mu);
  bool ok = run.summary.decode_ok;
  for (NodeId v = 0; ok && v < g.node_count(); ++v) {
    if (v == g.source()) continue;
    const auto& rounds = run.trace.nodes[v].learn_rounds;
    ok = rounds.size() == word.size();
    for (std::size_t i = 0; ok && i < rounds.size(); ++i) ok = rounds[i] == levels.level[v] + 3 * i;
  }
  record(p, "protocols.beepwaves-schedule", ok, where);
}

Partial check_graph(const Corpus& corpus, const std::string& name, const Graph& g) {
  Partial p;
  const LevelMap levels = compute_levels(g);
  const bool is_E = name.rfind("E:", 0) == 0;
  if (corpus.ms.empty()) return p;
  const std::uint64_t max_m = *std::max_element(corpus.ms.begin(), corpus.ms.end());

  RunSpec base;
  base.topology = name;
  base.relay = corpus.relay;

  // Beep Waves once per mu; it does not depend on m.
  std::vector<long> baseline(max_m + 1, -1);
  RunSpec bw = base;
  bw.protocol = ProtocolName::beepwaves;
  bw.m = std::max<std::uint64_t>(max_m, 2);
  for (std::uint64_t mu = 1; mu <= max_m; ++mu) {
    const auto run = run_one(g, bw, mu);
    const auto where = describe(name, bw.protocol, bw.m, mu);
    baseline[mu] = run.summary.completion_round;
    wake_checks(run.trace, levels, where, p);
    beepwaves_schedule_check(g, levels, mu, run, where, p);
    if (is_E) symmetry_checks(run.trace, levels, true, where, p);
  }

  bool determinism_done = false;
  for (auto m : corpus.ms) {
    const MessageSpace space(m);
    RunSpec spec = base;
    spec.protocol = ProtocolName::optimal;
    spec.m = m;
    for (std::uint64_t mu = 1; mu <= m; ++mu) {
      const auto run = run_one(g, spec, mu);
      const auto where = describe(name, spec.protocol, m, mu);
      optimal_checks(g, levels, space, mu, run, where, p);
      wake_checks(run.trace, levels, where, p);
      if (is_E) symmetry_checks(run.trace, levels, true, where, p);
      if (mu >= 2) {
        record(p, "protocols.baseline-dominance",
               run.summary.completion_round >= 0 && run.summary.completion_round <= baseline[mu],
               where + " optimal=" + std::to_string(run.summary.completion_round) +
                   " beepwaves=" + std::to_string(baseline[mu]));
      }
      if (!determinism_done) {
        const auto again = run_one(g, spec, mu);
        record(p, "engine.determinism", serialize(run.trace) == serialize(again.trace), where);
        determinism_done = true;
      }
    }
  }
  return p;
}

Partial acked_checks(const Corpus& corpus) {
  Partial p;
  if (corpus.ms.empty()) return p;
  std::vector<std::string> small;
  for (unsigned D = 1; D <= std::min(5U, corpus.path_max_D); ++D) small.push_back("path:" + std::to_string(D));
  for (std::size_t n = 2; n <= std::min<std::size_t>(5, corpus.star_max_n); ++n) small.push_back("star:" + std::to_string(n));
  for (unsigned D = 2; D <= std::min(4U, corpus.e_max_D); ++D) small.push_back("E:" + std::to_string(D));
  for (const auto& name : small) {
    const Graph g = make_topology(name);
    for (std::uint64_t m : {2, 3, 5}) {
      RunSpec spec;
      spec.topology = name;
      spec.protocol = ProtocolName::acked_optimal;
      spec.m = m;
      for (std::uint64_t mu = 1; mu <= m; ++mu) {
        const auto run = run_one(g, spec, mu);
        bool ok = run.summary.decode_ok;
        if (ok) {
          const unsigned source_end = *run.trace.nodes[g.source()].termination_round;
          ok = source_end == static_cast<unsigned>(run.summary.completion_round);
        }
        record(p, "protocols.acked-desk", ok, describe(name, spec.protocol, m, mu));
      }
    }
  }
  return p;
}

}  // namespace

Corpus Corpus::empty() {
  Corpus c;
  c.path_max_D = 0;
  c.e_max_D = 0;
  c.star_max_n = 0;
  c.random_count = 0;
  c.random_max_n = 0;
  c.ms.clear();
  c.codec_max_index = 0;
  c.roundtrip_max_m = 0;
  c.self_delimiting_max_mu = 0;
  c.codec_checks = false;
  return c;
}

bool Corpus::is_empty() const { return !codec_checks && (ms.empty() || corpus_graphs(*this).empty()); }

std::vector<std::pair<std::string, Graph>> corpus_graphs(const Corpus& corpus) {
  std::vector<std::pair<std::string, Graph>> out;
  auto add = [&](const std::string& name) { out.emplace_back(name, make_topology(name)); };
  for (unsigned D = 1; D <= corpus.path_max_D; ++D) add("path:" + std::to_string(D));
  for (unsigned D = 2; D <= corpus.e_max_D; ++D) add("E:" + std::to_string(D));
  for (std::size_t n = 1; n <= corpus.star_max_n; ++n) add(n == 1 ? "single" : "star:" + std::to_string(n));
  for (unsigned k = 1; k <= corpus.random_count; ++k) {
    const std::size_t n = std::max<std::size_t>(2, corpus.random_max_n * k / corpus.random_count);
    std::ostringstream name;
    name << "random:" << n << ':' << corpus.random_density << ':' << k;
    add(name.str());
  }
  return out;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

const CheckResult* VerifyReport::find(std::string_view id) const {
  for (const auto& c : checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

VerifyReport verify(const Corpus& corpus) {
  VerifyReport report;
  if (corpus.is_empty()) {
    report.warnings.push_back("empty corpus: nothing to verify");
    return report;
  }

  const auto graphs = corpus_graphs(corpus);
  std::vector<Partial> partials(graphs.size() + 2);
  if (corpus.codec_checks) codec_checks(corpus, partials[0]);
  partials[1] = acked_checks(corpus);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < graphs.size(); k = next++) {
      partials[k + 2] = check_graph(corpus, graphs[k].first, graphs[k].second);
    }
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(std::thread::hardware_concurrency(), graphs.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (const auto& info : kChecks) {
    CheckResult merged;
    merged.id = info.id;
    merged.description = info.description;
    for (const auto& part : partials) {
      auto it = part.find(info.id);
      if (it == part.end()) continue;
      merged.cases += it->second.cases;
      if (it->second.failures > 0 && merged.failures == 0) merged.counterexample = it->second.counterexample;
      merged.failures += it->second.failures;
    }
    if (merged.cases == 0) {
      report.warnings.push_back(std::string(info.id) + ": no cases in this corpus");
      continue;
    }
    report.checks.push_back(std::move(merged));
  }
  return report;
}

void write_report(std::ostream& os, const VerifyReport& report) {
  for (const auto& w : report.warnings) os << "warning: " << w << '\n';
  for (const auto& c : report.checks) {
    os << (c.passed() ? "PASS " : "FAIL ") << c.id << "  cases=" << c.cases << " failures=" << c.failures << "  ("
       << c.description << ")\n";
    if (!c.passed()) os << "     first counterexample: " << c.counterexample << '\n';
  }
  os << (report.passed() ? "verification passed" : "verification FAILED") << '\n';
}

}  // namespace beepcast
