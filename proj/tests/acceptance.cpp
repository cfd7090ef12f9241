// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "beepcast/codec.hpp"
#include "beepcast/harness.hpp"
#include "oracles.hpp"

using namespace beepcast;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::uint64_t cases = 0;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string where(const std::string& topo, std::uint64_t m, std::uint64_t mu) {
  return topo + " m=" + std::to_string(m) + " mu=" + std::to_string(mu);
}

Outcome codebook_lemmas() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto w = oracle::narayana_table(25);
  for (unsigned i = 0; i <= 25; ++i) {
    const auto book = build_codebook(CodebookKind::narayana, i);
    std::vector<std::string> words;
    for (const auto& b : book.words) words.push_back(b.str());
    ++o.cases;
    if (words.size() != w[i]) o.fail("|W_" + std::to_string(i) + "| = " + std::to_string(words.size()));
    if (!oracle::pairwise_prefix_free(words)) o.fail("W_" + std::to_string(i) + " not prefix-free");
    if (i < 3) continue;
    for (const auto& word : words) {
      if (oracle::cost(word.substr(0, word.size() - 1)) > i - 3) o.fail("cost of prefix of " + word + " in W_" + std::to_string(i));
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 1.0) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = "i=0..25, " + std::to_string(secs) + " s";
  return o;
}

Outcome closed_form() {
  Outcome o;
  const auto w = oracle::narayana_table(40);
  for (unsigned i = 0; i <= 40; ++i) {
    ++o.cases;
    if (narayana_closed_form(i) != w[i] || narayana(i) != w[i]) {
      o.fail("i=" + std::to_string(i) + " closed form " + std::to_string(narayana_closed_form(i)) + " vs " +
             std::to_string(w[i]));
    }
  }
  if (o.pass) o.detail = "i=0..40";
  return o;
}

// Criteria 3 and 4 share one pass over the default corpus.
void corpus_runs(Outcome& bound, Outcome& schedule) {
  const auto t0 = std::chrono::steady_clock::now();
  const Corpus corpus;
  for (const auto& [topo, g] : corpus_graphs(corpus)) {
    const auto lv = oracle::levels(g);
    const unsigned D = *std::max_element(lv.begin(), lv.end());
    std::vector<bool> inner(g.node_count(), false);
    for (const auto& [u, v] : g.edges()) {
      if (lv[v] == lv[u] + 1) inner[u] = true;
      if (lv[u] == lv[v] + 1) inner[v] = true;
    }
    for (auto m : corpus.ms) {
      RunSpec spec;
      spec.topology = topo;
      spec.m = m;
      const unsigned r = min_r(m);
      const MessageSpace space(m);
      for (std::uint64_t mu = 1; mu <= m; ++mu) {
        const auto run = run_one(g, spec, mu);
        const std::string s = space.encode(mu).str();
        const auto at = where(topo, m, mu);
        ++bound.cases;
        ++schedule.cases;
        if (run.trace.status != TraceStatus::complete) {
          bound.fail(at + " " + run.trace.error);
          continue;
        }
        const long c = run.summary.completion_round;
        if (c > long(D + r) || D + r > D + 2 * oracle::ceil_log2(m) + 2) {
          bound.fail(at + " completion=" + std::to_string(c) + " > " + std::to_string(D + r));
        }
        for (NodeId v = 0; v < g.node_count(); ++v) {
          if (v == g.source()) continue;
          const auto& node = run.trace.nodes[v];
          if (node.decoded != mu) bound.fail(at + " node " + std::to_string(v) + " decoded wrong");
          if (node.learn_rounds.size() != s.size()) {
            schedule.fail(at + " node " + std::to_string(v) + " learned " + std::to_string(node.learn_rounds.size()) +
                          " bits");
            continue;
          }
          for (std::size_t j = 0; j < s.size(); ++j) {
            if (node.learn_rounds[j] != oracle::append_round(lv[v], s, j)) {
              schedule.fail(at + " node " + std::to_string(v) + " bit " + std::to_string(j + 1) + " at round " +
                            std::to_string(node.learn_rounds[j]));
            }
          }
          if (node.termination_round != oracle::termination_round(lv[v], s, inner[v])) {
            schedule.fail(at + " node " + std::to_string(v) + " terminated at " +
                          std::to_string(node.termination_round.value_or(0)));
          }
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 60.0) bound.fail("took " + std::to_string(secs) + " s");
  if (bound.pass) bound.detail = std::to_string(bound.cases) + " runs, " + std::to_string(secs) + " s";
  if (schedule.pass) schedule.detail = std::to_string(schedule.cases) + " runs";
}

Outcome tightness_witness() {
  Outcome o;
  const auto w = oracle::narayana_table(8);
  for (unsigned D = 2; D <= 12; ++D) {
    const Graph g = make_E(D);
    for (unsigned r = 3; r <= 8; ++r) {
      RunSpec spec;
      spec.topology = "E:" + std::to_string(D);
      spec.m = w[r];
      long worst = -1;
      for (std::uint64_t mu = 1; mu <= spec.m; ++mu) {
        worst = std::max(worst, run_one(g, spec, mu).summary.completion_round);
        ++o.cases;
      }
      if (worst != long(D + r)) {
        o.fail(spec.topology + " r=" + std::to_string(r) + " worst=" + std::to_string(worst) + " expected " +
               std::to_string(D + r));
      }
    }
  }
  if (o.pass) o.detail = "D=2..12, r=3..8";
  return o;
}

Outcome baseline_schedule() {
  Outcome o;
  std::vector<std::string> over;
  for (unsigned D = 1; D <= 10; ++D) {
    const Graph g = make_path(D);
    RunSpec spec;
    spec.topology = "path:" + std::to_string(D);
    spec.protocol = ProtocolName::beepwaves;
    spec.m = 64;
    for (std::uint64_t mu = 2; mu <= 64; ++mu) {
      ++o.cases;
      const auto run = run_one(g, spec, mu);
      const std::string s = oracle::framed(mu);
      for (NodeId v = 1; v < g.node_count(); ++v) {
        const auto& lr = run.trace.nodes[v].learn_rounds;
        bool ok = lr.size() == s.size() && run.trace.nodes[v].decoded == mu;
        for (std::size_t i = 0; ok && i < s.size(); ++i) ok = lr[i] == v + 3 * i;
        if (!ok) o.fail(where(spec.topology, 64, mu) + " node " + std::to_string(v) + " off schedule");
      }
      const long bound = D + 6 * oracle::ceil_log2(mu) + 11;
      if (run.summary.completion_round < 0 || run.summary.completion_round > bound) {
        if (D == 1) over.push_back(std::to_string(mu));
        o.fail(where(spec.topology, 64, mu) + " completion=" + std::to_string(run.summary.completion_round) +
               " > " + std::to_string(bound));
      }
    }
  }
  if (!over.empty()) {
    std::string list;
    for (const auto& x : over) list += (list.empty() ? "" : ",") + x;
    o.detail += " (completion bound exceeded for mu in {" + list + "} on every path)";
  }
  if (o.pass) o.detail = "paths D=1..10, mu=2..64";
  return o;
}

Outcome symmetry() {
  Outcome o;
  for (unsigned D = 2; D <= 12; ++D) {
    const Graph g = make_E(D);
    for (auto protocol : {ProtocolName::optimal, ProtocolName::beepwaves}) {
      RunSpec spec;
      spec.topology = "E:" + std::to_string(D);
      spec.protocol = protocol;
      spec.m = protocol == ProtocolName::optimal ? 19 : 64;
      for (std::uint64_t mu = 1; mu <= spec.m; ++mu) {
        ++o.cases;
        const auto run = run_one(g, spec, mu);
        for (unsigned t = 1; t <= run.trace.round_count(); ++t) {
          for (unsigned l = 1; l <= D; ++l) {
            const auto& a = run.trace.at(t, 2 * l - 1);
            const auto& b = run.trace.at(t, 2 * l);
            if (a.status != b.status || a.state_label != b.state_label) {
              o.fail(where(spec.topology, spec.m, mu) + " " + std::string(to_string(protocol)) + " level " +
                     std::to_string(l) + " round " + std::to_string(t));
            }
          }
        }
      }
    }
  }
  if (o.pass) o.detail = "E_D D=2..12, optimal and beepwaves";
  return o;
}

Outcome determinism() {
  Outcome o;
  const auto text = [](const RunResult& r) {
    std::ostringstream os;
    write_trace(os, r.trace);
    write_csv_row(os, r.summary);
    return os.str();
  };
  const std::vector<std::string> topologies{"single", "path:7", "star:9", "E:6", "random:30:0.15:2", "random:40:0.1:9"};
  for (const auto& topo : topologies) {
    for (auto protocol : {ProtocolName::optimal, ProtocolName::beepwaves, ProtocolName::acked_optimal}) {
      for (auto model : {ChannelModel::beeping, ChannelModel::radio_cd}) {
        RunSpec spec;
        spec.topology = topo;
        spec.protocol = protocol;
        spec.model = model;
        spec.m = 33;
        for (std::uint64_t mu : {1, 2, 17, 33}) {
          ++o.cases;
          if (text(run_one(load_graph(spec), spec, mu)) != text(run_one(load_graph(spec), spec, mu))) {
            o.fail(where(topo, 33, mu) + " " + std::string(to_string(protocol)) + " trace differs");
          }
        }
      }
    }
  }
  SweepSpec sw;
  sw.topologies = {"path:1..8", "E:2..8", "random:20:0.2:1..4"};
  sw.protocols = {ProtocolName::optimal, ProtocolName::beepwaves};
  sw.ms = {2, 9, 33};
  const auto csv = [&](unsigned threads) {
    sw.threads = threads;
    std::ostringstream os;
    write_sweep_csv(os, sweep(sw));
    return os.str();
  };
  const auto one = csv(1);
  ++o.cases;
  if (one != csv(1) || one != csv(4)) o.fail("sweep CSV differs between runs");
  if (o.pass) o.detail = std::to_string(o.cases) + " replays";
  return o;
}

}  // namespace

int main() {
  std::map<int, std::pair<std::string, Outcome>> results;
  results[1] = {"codebook lemmas", codebook_lemmas()};
  results[2] = {"closed form", closed_form()};
  Outcome bound;
  Outcome schedule;
  corpus_runs(bound, schedule);
  results[3] = {"upper bound over default corpus", bound};
  results[4] = {"schedule lemmas", schedule};
  results[5] = {"lower-bound tightness on E_D", tightness_witness()};
  results[6] = {"baseline schedule", baseline_schedule()};
  results[7] = {"symmetry on E_D", symmetry()};
  results[8] = {"determinism", determinism()};

  bool all = true;
  for (const auto& [id, entry] : results) {
    const auto& [name, o] = entry;
    std::printf("criterion %d %s: %s  %s\n", id, name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
