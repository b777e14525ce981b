#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <chrono>
#include <sstream>

#include "multicat/check_suite.hpp"
#include "multicat/cli.hpp"
#include "multicat/fingroup.hpp"
#include "multicat/finset.hpp"
#include "multicat/graph_circle.hpp"
#include "multicat/json_io.hpp"
#include "multicat/knot_bounds.hpp"
#include "multicat/pidmodule.hpp"

namespace py = pybind11;
using namespace multicat;

namespace {

py::object to_python(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(j.get<bool>());
    case Json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case Json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case Json::value_t::number_float: return py::float_(j.get<double>());
    case Json::value_t::string: return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(to_python(v));
      return std::move(out);
    }
    case Json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return std::move(out);
    }
    default: throw std::runtime_error("unsupported JSON value");
  }
}

Json from_python(const py::handle& obj) {
  const py::module_ json = py::module_::import("json");
  return Json::parse(json.attr("dumps")(obj).cast<std::string>());
}

Json distance_json(const MultValue& a, const MultValue& b, Certificate ca, Certificate cb) {
  return to_json(DistValue::from_product(mult_product(a, b), weaker(ca, cb)));
}

py::dict finset(std::uint64_t x, std::uint64_t y) {
  const auto xy = finset_multiplicity(x, y);
  const auto yx = finset_multiplicity(y, x);
  Json out = to_json(xy);
  out["distance"] = distance_json(xy.value, yx.value, xy.certificate, yx.certificate);
  return to_python(out);
}

py::dict group(const std::string& g_spec, const std::string& h_spec) {
  const GroupRef g = group_from_spec(g_spec), h = group_from_spec(h_spec);
  const auto gh = group_multiplicities(g, h);
  const auto hg = group_multiplicities(h, g);
  Json out;
  out["m_ker"] = to_json(gh.m_ker);
  out["m_coker"] = to_json(gh.m_coker);
  out["d_ker"] = distance_json(gh.m_ker.value, hg.m_ker.value, Certificate::Exact, Certificate::Exact);
  out["d_coker"] =
      distance_json(gh.m_coker.value, hg.m_coker.value, Certificate::Exact, Certificate::Exact);
  out["isomorphic"] = is_isomorphic(g, h);
  out["hom_count"] = enumerate_homs(g, h).size();
  return to_python(out);
}

py::dict graph_circle(std::uint32_t vertices,
                      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                      const std::string& strategy, std::optional<double> time_limit,
                      unsigned threads) {
  const SimpleGraph g = SimpleGraph::from_multigraph(vertices, edges);
  SolveOptions options;
  if (strategy == "exhaustive")
    options.strategy = Strategy::Exhaustive;
  else if (strategy != "bnb")
    throw py::value_error("strategy must be 'exhaustive' or 'bnb'");
  options.threads = threads;
  if (time_limit) options.time_limit = std::chrono::duration<double>(*time_limit);
  WitnessedMultiplicity<CircleWitness> w;
  {
    py::gil_scoped_release release;
    w = solve_exact(g, options);
  }
  Json out = to_json(w);
  out["lower_bound"] = pigeonhole_lower_bound(g);
  const Betti b = betti_numbers(g);
  out["betti"] = Json{{"b0", b.b0}, {"b1", b.b1}};
  return to_python(out);
}

py::dict module_pair(const std::string& m_text, const std::string& n_text,
                     std::optional<std::uint64_t> bound, unsigned threads) {
  const FgZModule m = parse_module(m_text), n = parse_module(n_text);
  RankSearchOptions options;
  options.bound = bound;
  options.threads = threads;
  RankMultiplicities mn, nm;
  {
    py::gil_scoped_release release;
    mn = rank_multiplicities(m, n, options);
    nm = rank_multiplicities(n, m, options);
  }
  Json out;
  out["m_rker"] = to_json(mn.m_rker);
  out["m_rcoker"] = to_json(mn.m_rcoker);
  out["reverse"] = Json{{"m_rker", to_json(nm.m_rker)}, {"m_rcoker", to_json(nm.m_rcoker)}};
  out["d_rker"] = distance_json(mn.m_rker.value, nm.m_rker.value, mn.m_rker.certificate,
                                nm.m_rker.certificate);
  out["d_rcoker"] = distance_json(mn.m_rcoker.value, nm.m_rcoker.value, mn.m_rcoker.certificate,
                                  nm.m_rcoker.certificate);
  return to_python(out);
}

py::dict knot_bounds(const py::dict& record) {
  const KnotRecord rec = knot_record_from_json(from_python(record));
  Json out;
  out["bounds"] = to_json(multiplicity_index_bounds(rec));
  const auto d = distance_lower_bound_to_unknot(rec);
  out["unknot_distance"] = Json{{"status", d.status},
                                {"lower_bound", d.lower_bound ? to_json(*d.lower_bound) : Json(nullptr)}};
  return to_python(out);
}

py::dict knot_pair(const py::dict& k1, const py::dict& k2, const py::dict& relation) {
  const KnotRecord a = knot_record_from_json(from_python(k1));
  const KnotRecord b = knot_record_from_json(from_python(k2));
  return to_python(to_json(pair_multiplicity_facts(a, b, pair_relation_from_json(from_python(relation)))));
}

py::dict check(const std::string& scope, std::size_t max_order, unsigned threads) {
  CheckOptions options;
  options.scope = scope;
  options.max_group_order = max_order;
  options.threads = threads;
  std::vector<SuiteResult> suites;
  {
    py::gil_scoped_release release;
    suites = run_checks(options);
  }
  Json out;
  bool pass = true;
  out["suites"] = Json::array();
  for (const auto& s : suites) {
    Json entry = to_json(s.report);
    entry["suite"] = s.name;
    entry["pairs"] = s.pairs;
    out["suites"].push_back(std::move(entry));
    pass = pass && s.report.ok();
  }
  out["pass"] = pass;
  return to_python(out);
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_multicat, m) {
  m.doc() = "Multiplicities and multiplicity distances on finite sets, graphs, groups, "
            "Z-modules and knot records";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("finset", &finset, py::arg("x"), py::arg("y"),
        "m(X:Y) for finite sets of the given sizes, with witness and distance.");
  m.def("group", &group, py::arg("g"), py::arg("h"),
        "Kernel and cokernel multiplicities between two catalog groups (e.g. 'cyclic:4').");
  m.def("graph_circle", &graph_circle, py::arg("vertices"), py::arg("edges"),
        py::arg("strategy") = "bnb", py::arg("time_limit") = py::none(), py::arg("threads") = 1,
        "Least map-multiplicity of a graph over the circle.");
  m.def("module", &module_pair, py::arg("m"), py::arg("n"), py::arg("bound") = py::none(),
        py::arg("threads") = 1, "Rank multiplicities in both directions and both distances.");
  m.def("knot_bounds", &knot_bounds, py::arg("record"),
        "Interval for the multiplicity index of a knot record.");
  m.def("knot_pair", &knot_pair, py::arg("k1"), py::arg("k2"), py::arg("relation") = py::dict(),
        "Interval for m(K1:K2).");
  m.def("check", &check, py::arg("scope") = "all", py::arg("max_order") = 12, py::arg("threads") = 1,
        "Runs the invariant suites.");
  m.def("run_cli", &run_cli, py::arg("args"),
        "Runs the command-line front end; returns (exit_code, stdout, stderr).");
}
