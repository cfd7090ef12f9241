#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "beepcast/codec.hpp"
#include "beepcast/error.hpp"
#include "beepcast/harness.hpp"

namespace py = pybind11;
using namespace beepcast;

namespace {

py::dict summary_dict(const RunSummary& s) {
  py::dict d;
  d["topology"] = s.topology;
  d["D"] = s.D;
  d["model"] = std::string(to_string(s.model));
  d["protocol"] = std::string(to_string(s.protocol));
  d["m"] = s.m;
  d["mu"] = s.mu;
  d["completion_round"] = s.completion_round;
  d["bound"] = s.bound;
  d["slack"] = s.slack;
  d["max_energy"] = s.max_energy;
  d["decode_ok"] = s.decode_ok;
  d["status"] = std::string(to_string(s.status));
  if (!s.error.empty()) d["error"] = s.error;
  return d;
}

template <class T, class F>
std::vector<T> parse_all(const std::vector<std::string>& names, F parse) {
  std::vector<T> out;
  for (const auto& n : names) out.push_back(parse(n));
  return out;
}

SweepSpec sweep_spec(const std::vector<std::string>& topologies, const std::vector<std::string>& models,
                     const std::vector<std::string>& protocols, const std::vector<std::uint64_t>& ms,
                     std::optional<std::vector<std::uint64_t>> mus, std::uint64_t seed, unsigned threads) {
  SweepSpec spec;
  spec.topologies = topologies;
  spec.models = parse_all<ChannelModel>(models, parse_channel_model);
  spec.protocols = parse_all<ProtocolName>(protocols, parse_protocol_name);
  spec.ms = ms;
  spec.mus = std::move(mus);
  spec.seed = seed;
  spec.threads = threads;
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "deterministic broadcast in beeping networks";

  static py::exception<Error> error_type(mod, "BeepcastError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, e.what());
    }
  });

  mod.def("cost", [](const std::string& word) { return cost(BitString::parse(word)); }, py::arg("word"));
  mod.def("narayana", &narayana, py::arg("i"));
  mod.def("fibonacci", &fibonacci, py::arg("i"));
  mod.def("narayana_closed_form", &narayana_closed_form, py::arg("i"));
  mod.def(
      "min_r", [](std::uint64_t m, const std::string& kind) { return min_r(m, parse_codebook_kind(kind)); },
      py::arg("m"), py::arg("kind") = "narayana");
  mod.def(
      "codebook",
      [](const std::string& kind, unsigned i) {
        std::vector<std::string> out;
        for (const auto& w : build_codebook(parse_codebook_kind(kind), i).words) out.push_back(w.str());
        return out;
      },
      py::arg("kind"), py::arg("index"));
  mod.def(
      "encode",
      [](std::uint64_t m, std::uint64_t mu, const std::string& kind) {
        return MessageSpace(m, parse_codebook_kind(kind)).encode(mu).str();
      },
      py::arg("m"), py::arg("mu"), py::arg("kind") = "narayana");
  mod.def(
      "decode",
      [](std::uint64_t m, const std::string& bits, const std::string& kind) -> std::optional<std::uint64_t> {
        const auto d = MessageSpace(m, parse_codebook_kind(kind)).decode(BitString::parse(bits));
        if (!d.complete) return std::nullopt;
        return d.value;
      },
      py::arg("m"), py::arg("bits"), py::arg("kind") = "narayana");
  mod.def("self_delimiting_encode", [](std::uint64_t mu) { return self_delimiting_encode(mu).str(); });
  mod.def("self_delimiting_decode", [](const std::string& bits) -> std::optional<std::uint64_t> {
    const auto d = self_delimiting_decode(BitString::parse(bits));
    if (!d.complete) return std::nullopt;
    return d.value;
  });

  mod.def(
      "levels",
      [](const std::string& topology, std::uint64_t seed) { return compute_levels(make_topology(topology, seed)).level; },
      py::arg("topology"), py::arg("seed") = 1);

  mod.def(
      "run",
      [](const std::string& topology, std::uint64_t m, std::uint64_t mu, const std::string& protocol,
         const std::string& model, const std::string& codebook, std::uint64_t seed, bool trace) {
        RunSpec spec;
        spec.topology = topology;
        spec.m = m;
        spec.protocol = parse_protocol_name(protocol);
        spec.model = parse_channel_model(model);
        spec.codebook = parse_codebook_kind(codebook);
        spec.seed = seed;
        const auto result = run_one(load_graph(spec), spec, mu);
        py::dict d = summary_dict(result.summary);
        if (trace) {
          std::ostringstream os;
          write_trace(os, result.trace);
          d["trace"] = os.str();
        }
        return d;
      },
      py::arg("topology"), py::arg("m"), py::arg("mu"), py::arg("protocol") = "optimal", py::arg("model") = "beeping",
      py::arg("codebook") = "narayana", py::arg("seed") = 1, py::arg("trace") = false);

  mod.def(
      "sweep",
      [](const std::vector<std::string>& topologies, const std::vector<std::string>& models,
         const std::vector<std::string>& protocols, const std::vector<std::uint64_t>& ms,
         std::optional<std::vector<std::uint64_t>> mus, std::uint64_t seed, unsigned threads) {
        const auto spec = sweep_spec(topologies, models, protocols, ms, std::move(mus), seed, threads);
        std::vector<RunSummary> rows;
        {
          py::gil_scoped_release release;
          rows = sweep(spec);
        }
        std::ostringstream os;
        write_sweep_csv(os, rows);
        return os.str();
      },
      py::arg("topologies"), py::arg("models") = std::vector<std::string>{"beeping"},
      py::arg("protocols") = std::vector<std::string>{"optimal"}, py::arg("ms") = std::vector<std::uint64_t>{2},
      py::arg("mus") = py::none(), py::arg("seed") = 1, py::arg("threads") = 0);

  mod.def(
      "compare",
      [](const std::vector<std::string>& topologies, const std::vector<std::uint64_t>& ms,
         std::optional<std::vector<std::uint64_t>> mus, std::uint64_t seed, unsigned threads) {
        const auto spec = sweep_spec(topologies, {"beeping"}, {"optimal"}, ms, std::move(mus), seed, threads);
        std::vector<CompareRow> rows;
        {
          py::gil_scoped_release release;
          rows = compare(spec);
        }
        std::ostringstream os;
        write_compare_csv(os, rows);
        return os.str();
      },
      py::arg("topologies"), py::arg("ms") = std::vector<std::uint64_t>{2}, py::arg("mus") = py::none(),
      py::arg("seed") = 1, py::arg("threads") = 0);

  mod.def(
      "verify",
      [](unsigned paths, unsigned e, std::size_t stars, unsigned randoms, std::vector<std::uint64_t> ms,
         bool inject_fault) {
        Corpus corpus;
        corpus.path_max_D = paths;
        corpus.e_max_D = e;
        corpus.star_max_n = stars;
        corpus.random_count = randoms;
        corpus.ms = std::move(ms);
        corpus.relay.skip_idle_after_relay = inject_fault;
        VerifyReport report;
        {
          py::gil_scoped_release release;
          report = verify(corpus);
        }
        py::dict checks;
        for (const auto& c : report.checks) {
          py::dict d;
          d["cases"] = c.cases;
          d["failures"] = c.failures;
          d["counterexample"] = c.counterexample;
          checks[py::str(c.id)] = d;
        }
        py::dict out;
        out["passed"] = report.passed();
        out["checks"] = checks;
        out["warnings"] = report.warnings;
        return out;
      },
      py::arg("paths") = 20, py::arg("e") = 20, py::arg("stars") = 20, py::arg("randoms") = 10,
      py::arg("ms") = Corpus{}.ms, py::arg("inject_fault") = false);
}
