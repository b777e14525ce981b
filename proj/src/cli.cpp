#include "multicat/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "multicat/check_suite.hpp"
#include "multicat/json_io.hpp"

namespace multicat::cli {

namespace {

struct GlobalFlags {
  std::string format = "json";
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool timing = false;
};

GroupRef load_group(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    if (!in) throw DomainError("cannot open group file '" + arg + "'");
    return parse_group(in, std::filesystem::path(arg).stem().string());
  }
  return group_from_spec(arg);
}

SimpleGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open graph file '" + path + "'");
  try {
    return parse_graph(in);
  } catch (const ParseError& e) {
    throw DomainError("graph file '" + path + "': " + e.what());
  }
}

Strategy parse_strategy(const std::string& s) {
  return s == "exhaustive" ? Strategy::Exhaustive : Strategy::BranchAndBound;
}

// ---- text rendering -------------------------------------------------------

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object() && j.size() == 1 && j.contains("count")) return j["count"].dump();
  if (j.is_object() && j.size() == 1 && j.contains("exp")) return "e^" + j["exp"].dump();
  return j.dump();
}

bool is_leaf(const Json& j) {
  if (!j.is_structured()) return true;
  if (j.is_object() && j.size() == 1 && (j.contains("count") || j.contains("exp"))) return true;
  return j.is_array() && std::none_of(j.begin(), j.end(), [](const Json& x) {
           return x.is_structured() && !is_leaf(x);
         });
}

void render_text(const Json& j, const std::string& prefix, std::ostream& out) {
  if (is_leaf(j)) {
    out << prefix << ": " << scalar_text(j) << "\n";
    return;
  }
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      render_text(value, prefix.empty() ? key : prefix + "." + key, out);
  } else {
    for (std::size_t i = 0; i < j.size(); ++i)
      render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
  }
}

// ---- matrix ---------------------------------------------------------------

struct Cell {
  std::optional<DistValue> dist;
  std::string error;
};

Json matrix_report(const std::vector<std::string>& names, const std::vector<std::vector<Cell>>& cells,
                   const std::function<bool(std::size_t, std::size_t)>& isomorphic) {
  const std::size_t n = names.size();
  Json out;
  out["objects"] = names;
  Json rows = Json::array(), ln_rows = Json::array();
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array(), ln_row = Json::array();
    for (std::size_t j = 0; j < n; ++j) {
      const Cell& c = cells[i][j];
      if (c.dist) {
        Json cell = to_json(*c.dist);
        if (c.dist->certificate != Certificate::Exact) {
          cell["flag"] = "inexact";
          ++flagged;
        }
        row.push_back(std::move(cell));
        ln_row.push_back(display_ln(c.dist->display_ln));
      } else {
        ++flagged;
        row.push_back(Json{{"flag", "error"}, {"error", c.error}});
        ln_row.push_back(nullptr);
      }
    }
    rows.push_back(std::move(row));
    ln_rows.push_back(std::move(ln_row));
  }
  out["cells"] = std::move(rows);
  out["ln"] = std::move(ln_rows);

  auto exact = [&](std::size_t i, std::size_t j) -> const MultValue* {
    const Cell& c = cells[i][j];
    return (c.dist && c.dist->certificate == Certificate::Exact) ? &c.dist->product : nullptr;
  };
  Json violations = Json::array();
  bool symmetric = true, zero_diagonal = true, zero_iff_iso = true, triangle = true;
  bool inconclusive = false;
  for (std::size_t i = 0; i < n; ++i) {
    const MultValue* d = exact(i, i);
    if (!d) {
      inconclusive = true;
    } else if (!d->is_one()) {
      zero_diagonal = false;
      violations.push_back("d(" + names[i] + ", " + names[i] + ") is nonzero");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const MultValue* a = exact(i, j);
      const MultValue* b = exact(j, i);
      if (!a || !b) {
        inconclusive = true;
        continue;
      }
      if (*a != *b) {
        symmetric = false;
        violations.push_back("d(" + names[i] + ", " + names[j] + ") is not symmetric");
      }
      if (isomorphic && a->is_one() != isomorphic(i, j)) {
        zero_iff_iso = false;
        violations.push_back("d(" + names[i] + ", " + names[j] + ") = 0 disagrees with isomorphism");
      }
      for (std::size_t k = 0; k < n; ++k) {
        const MultValue* ik = exact(i, k);
        const MultValue* jk = exact(j, k);
        if (!ik || !jk) {
          inconclusive = true;
          continue;
        }
        if (*ik > mult_product(*a, *jk)) {
          triangle = false;
          violations.push_back("triangle fails for " + names[i] + ", " + names[j] + ", " +
                               names[k]);
        }
      }
    }
  }
  Json audit;
  audit["symmetric"] = symmetric;
  audit["zero_diagonal"] = zero_diagonal;
  audit["triangle"] = !triangle ? "fail" : (inconclusive ? "inconclusive" : "pass");
  if (isomorphic) {
    audit["zero_iff_isomorphic"] = zero_iff_iso;
  } else {
    audit["zero_iff_isomorphic"] = nullptr;
  }
  audit["flagged_cells"] = flagged;
  audit["violations"] = std::move(violations);
  out["audit"] = std::move(audit);
  return out;
}

template <class Compute>
std::vector<std::vector<Cell>> fill_cells(std::size_t n, Compute&& compute) {
  std::vector<std::vector<Cell>> cells(n, std::vector<Cell>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      try {
        cells[i][j].dist = compute(i, j);
      } catch (const std::exception& e) {
        cells[i][j].error = e.what();
      }
    }
  return cells;
}

std::vector<std::string> split_corpus(const std::string& corpus, std::vector<std::string> objects) {
  if (corpus.empty()) return objects;
  const auto colon = corpus.find(':');
  if (corpus.substr(0, colon) != "groups" || colon == std::string::npos)
    throw DomainError("corpus '" + corpus + "' is not of the form groups:N");
  const std::size_t max_order = std::stoul(corpus.substr(colon + 1));
  for (const auto& g : small_group_corpus(max_order)) objects.push_back(g->name());
  return objects;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact multiplicities and multiplicity distances", "multicat"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags flags;
  app.add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--threads", flags.threads, "Worker threads for the solvers")
      ->envname("MULTICAT_THREADS")
      ->check(CLI::Range(1u, 1024u));
  app.add_flag("--timing", flags.timing, "Add wall-clock timing to the output");

  Json result;
  std::function<void()> action;

  // finset
  auto* finset = app.add_subcommand("finset", "m(X:Y) for finite sets of the given sizes");
  std::uint64_t fx = 0, fy = 0;
  finset->add_option("x", fx, "|X|")->required();
  finset->add_option("y", fy, "|Y|")->required();
  finset->callback([&] {
    action = [&] {
      const auto m = finset_multiplicity(fx, fy);
      const auto back = finset_multiplicity(fy, fx);
      result["inputs"] = Json{{"x", fx}, {"y", fy}};
      result["value"] = to_json(m.value);
      result["ln"] = display_ln(m.value.log_value());
      result["certificate"] = to_json(m.certificate);
      Json witness;
      witness["block_size"] = m.value.count_value();
      if (fx <= 1024) witness["images"] = m.witness->images;
      result["witness"] = std::move(witness);
      result["distance"] = to_json(DistValue::from_product(mult_product(m.value, back.value)));
    };
  });

  // group
  auto* group = app.add_subcommand("group", "Kernel and cokernel multiplicities of finite groups");
  std::string g_arg, h_arg;
  group->add_option("G", g_arg, "Group spec (cyclic:n, dihedral:n, ...) or table file")->required();
  group->add_option("H", h_arg, "Group spec or table file")->required();
  group->callback([&] {
    action = [&] {
      const GroupRef g = load_group(g_arg), h = load_group(h_arg);
      const auto gh = group_multiplicities(g, h);
      const auto hg = group_multiplicities(h, g);
      result["inputs"] = Json{{"G", g->name()}, {"H", h->name()}, {"G_order", g->order()},
                              {"H_order", h->order()}};
      result["m_ker"] = to_json(gh.m_ker);
      result["m_coker"] = to_json(gh.m_coker);
      result["reverse"] = Json{{"m_ker", to_json(hg.m_ker)}, {"m_coker", to_json(hg.m_coker)}};
      result["d_ker"] = to_json(DistValue::from_product(mult_product(gh.m_ker.value, hg.m_ker.value)));
      result["d_coker"] =
          to_json(DistValue::from_product(mult_product(gh.m_coker.value, hg.m_coker.value)));
      result["isomorphic"] = is_isomorphic(g, h);
      result["hom_count"] = enumerate_homs(g, h).size();
    };
  });

  // graph-circle
  auto* graph = app.add_subcommand("graph-circle", "Minimal map-multiplicity of a graph over the circle");
  std::string graph_file;
  std::uint32_t complete_n = 0, cycle_n = 0;
  std::string strategy = "bnb";
  double time_limit = 0;
  auto* file_opt = graph->add_option("file", graph_file, "Graph file: 'V E' then E lines 'u v'");
  auto* complete_opt = graph->add_option("--complete", complete_n, "Use the complete graph K_n")
                           ->check(CLI::Range(1u, 20u));
  auto* cycle_opt = graph->add_option("--cycle", cycle_n, "Use the cycle C_n")->check(CLI::Range(3u, 20u));
  file_opt->excludes(complete_opt)->excludes(cycle_opt);
  complete_opt->excludes(cycle_opt);
  graph->add_option("--strategy", strategy, "Search strategy")
      ->check(CLI::IsMember({"exhaustive", "bnb"}));
  graph->add_option("--time-limit", time_limit, "Seconds before returning an upper bound")
      ->check(CLI::PositiveNumber);
  graph->callback([&] {
    if (graph_file.empty() && complete_n == 0 && cycle_n == 0)
      throw CLI::ValidationError("graph-circle", "give a graph file, --complete or --cycle");
    action = [&] {
      const SimpleGraph g = complete_n   ? SimpleGraph::complete(complete_n)
                            : cycle_n    ? SimpleGraph::cycle(cycle_n)
                                         : load_graph(graph_file);
      SolveOptions options;
      options.strategy = parse_strategy(strategy);
      options.threads = flags.threads;
      if (time_limit > 0) options.time_limit = std::chrono::duration<double>(time_limit);
      const auto w = solve_exact(g, options);
      const Betti betti = betti_numbers(g);
      Json edges = Json::array();
      for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
      result["inputs"] = Json{{"vertices", g.vertex_count()},
                              {"edges", std::move(edges)},
                              {"betti", Json{{"b0", betti.b0}, {"b1", betti.b1}}}};
      result["strategy"] = strategy;
      result["value"] = to_json(w.value);
      result["ln"] = display_ln(w.value.log_value());
      result["certificate"] = to_json(w.certificate);
      result["lower_bound"] = pigeonhole_lower_bound(g);
      if (w.witness) {
        Json witness = to_json(*w.witness);
        const FiberProfile fibers = evaluate(g, w.witness->layout, w.witness->arcs);
        witness["gap_fibers"] = fibers.gap_counts;
        witness["vertex_fibers"] = fibers.vertex_counts;
        result["witness"] = std::move(witness);
      } else {
        result["witness"] = nullptr;
      }
    };
  });

  // module
  auto* module = app.add_subcommand("module", "Rank multiplicities of finitely generated Z-modules");
  std::string m_arg, n_arg;
  bool pair = false;
  std::uint64_t bound = 0;
  module->add_option("M", m_arg, "Module, e.g. 'Z^2 + Z/4'")->required();
  module->add_option("N", n_arg, "Module")->required();
  module->add_flag("--pair", pair, "Also compute N:M and both distances");
  module->add_option("--bound", bound, "Free-block search radius for mixed modules")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 20));
  module->callback([&] {
    action = [&] {
      const FgZModule m = parse_module(m_arg), n = parse_module(n_arg);
      RankSearchOptions options;
      options.threads = flags.threads;
      if (bound > 0) options.bound = bound;
      const auto mn = rank_multiplicities(m, n, options);
      result["inputs"] = Json{{"M", to_json(m)}, {"N", to_json(n)}};
      result["search_bound"] = options.bound.value_or(default_search_bound(m, n));
      result["m_rker"] = to_json(mn.m_rker);
      result["m_rcoker"] = to_json(mn.m_rcoker);
      if (pair) {
        const auto nm = rank_multiplicities(n, m, options);
        result["reverse"] = Json{{"m_rker", to_json(nm.m_rker)}, {"m_rcoker", to_json(nm.m_rcoker)}};
        auto dist = [](const auto& a, const auto& b) {
          return to_json(DistValue::from_product(mult_product(a.value, b.value),
                                                 weaker(a.certificate, b.certificate)));
        };
        result["d_rker"] = dist(mn.m_rker, nm.m_rker);
        result["d_rcoker"] = dist(mn.m_rcoker, nm.m_rcoker);
      }
    };
  });

  // knot
  auto* knot = app.add_subcommand("knot", "Bounds on knot multiplicities from asserted invariants");
  std::string knot_file;
  std::vector<std::string> records;
  std::string relation_text;
  bool knot_pair = false;
  knot->add_option("file", knot_file, "JSON-lines file of knot records ('-' for stdin)");
  knot->add_option("--record", records, "Inline JSON knot record (repeatable)");
  knot->add_flag("--pair", knot_pair, "Bound m(K1:K2) for exactly two records");
  knot->add_option("--relation", relation_text, "JSON object of pair assertions");
  knot->callback([&] {
    action = [&] {
      std::vector<KnotRecord> recs;
      auto parse_line = [&](const std::string& text, const std::string& where) {
        try {
          recs.push_back(knot_record_from_json(Json::parse(text)));
        } catch (const Json::parse_error& e) {
          throw DomainError(where + ": invalid JSON: " + e.what());
        } catch (const DomainError& e) {
          throw DomainError(where + ": " + e.what());
        }
      };
      if (!knot_file.empty()) {
        std::ifstream file;
        std::istream* in = &std::cin;
        if (knot_file != "-") {
          file.open(knot_file);
          if (!file) throw DomainError("cannot open knot file '" + knot_file + "'");
          in = &file;
        }
        std::string line;
        for (std::size_t no = 1; std::getline(*in, line); ++no)
          if (line.find_first_not_of(" \t\r") != std::string::npos)
            parse_line(line, knot_file + " line " + std::to_string(no));
      }
      for (std::size_t i = 0; i < records.size(); ++i)
        parse_line(records[i], "--record " + std::to_string(i + 1));
      if (recs.empty()) throw DomainError("no knot records given");
      for (std::size_t i = 0; i < recs.size(); ++i)
        if (recs[i].name.empty()) recs[i].name = "K" + std::to_string(i + 1);

      if (knot_pair) {
        if (recs.size() != 2) throw DomainError("--pair needs exactly two records");
        PairRelation rel;
        if (!relation_text.empty()) {
          try {
            rel = pair_relation_from_json(Json::parse(relation_text));
          } catch (const Json::parse_error& e) {
            throw DomainError(std::string("--relation: invalid JSON: ") + e.what());
          }
        }
        result["inputs"] = Json{{"K1", to_json(recs[0])}, {"K2", to_json(recs[1])}};
        result["bounds"] = to_json(pair_multiplicity_facts(recs[0], recs[1], rel));
        return;
      }
      Json items = Json::array();
      for (const KnotRecord& rec : recs) {
        Json item;
        item["record"] = to_json(rec);
        item["bounds"] = to_json(multiplicity_index_bounds(rec));
        const auto d = distance_lower_bound_to_unknot(rec);
        item["unknot_distance"] =
            Json{{"status", d.status},
                 {"lower_bound", d.lower_bound ? to_json(*d.lower_bound) : Json(nullptr)}};
        items.push_back(std::move(item));
      }
      result["results"] = std::move(items);
    };
  });

  // matrix
  auto* matrix = app.add_subcommand("matrix", "Pairwise distance matrix with a metric audit");
  std::string category, kind = "kernel", corpus;
  std::vector<std::string> objects;
  matrix->add_option("--category", category, "Object category")
      ->required()
      ->check(CLI::IsMember({"group", "module", "finset"}));
  matrix->add_option("--kind", kind, "Multiplicity kind")->check(CLI::IsMember({"kernel", "cokernel"}));
  matrix->add_option("--corpus", corpus, "Built-in corpus, e.g. groups:8");
  matrix->add_option("--bound", bound, "Free-block search radius for modules")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 20));
  matrix->add_option("objects", objects, "Objects (group specs, modules or set sizes)");
  matrix->callback([&] {
    action = [&] {
      const std::vector<std::string> names = split_corpus(corpus, objects);
      if (names.empty()) throw DomainError("matrix needs at least one object");
      result["inputs"] = Json{{"category", category}, {"kind", kind}};
      Json report;
      if (category == "group") {
        std::vector<GroupRef> gs;
        for (const auto& s : names) gs.push_back(load_group(s));
        const GroupInstance inst(kind == "kernel" ? GroupMultKind::Kernel : GroupMultKind::Cokernel);
        auto cells = fill_cells(gs.size(), [&](std::size_t i, std::size_t j) {
          return multiplicity_distance(inst, gs[i], gs[j]);
        });
        report = matrix_report(names, cells, [&](std::size_t i, std::size_t j) {
          return is_isomorphic(gs[i], gs[j]);
        });
      } else if (category == "module") {
        std::vector<FgZModule> ms;
        for (const auto& s : names) ms.push_back(parse_module(s));
        RankSearchOptions options;
        options.threads = flags.threads;
        if (bound > 0) options.bound = bound;
        auto cells = fill_cells(ms.size(), [&](std::size_t i, std::size_t j) {
          const auto d = rank_distances(ms[i], ms[j], options);
          return kind == "kernel" ? d.d_rker : d.d_rcoker;
        });
        report = matrix_report(names, cells,
                               [&](std::size_t i, std::size_t j) { return ms[i] == ms[j]; });
      } else {
        std::vector<std::uint64_t> sizes;
        for (const auto& s : names) {
          std::size_t used = 0;
          std::uint64_t v = 0;
          try {
            v = std::stoull(s, &used);
          } catch (const std::exception&) {
            used = 0;
          }
          if (used != s.size() || v == 0) throw DomainError("'" + s + "' is not a positive set size");
          sizes.push_back(v);
        }
        auto cells = fill_cells(sizes.size(), [&](std::size_t i, std::size_t j) {
          return DistValue::from_product(mult_product(finset_multiplicity(sizes[i], sizes[j]).value,
                                                      finset_multiplicity(sizes[j], sizes[i]).value));
        });
        report = matrix_report(names, cells, [&](std::size_t i, std::size_t j) {
          return sizes[i] == sizes[j];
        });
      }
      for (auto& [key, value] : report.items()) result[key] = value;
    };
  });

  // check
  auto* check = app.add_subcommand("check", "Run the axiom and property suites");
  CheckOptions check_options;
  std::vector<std::string> scope_names{"all"};
  for (const auto& s : check_scopes()) scope_names.push_back(s);
  check->add_option("--scope", check_options.scope, "Suite to run")->check(CLI::IsMember(scope_names));
  check->add_option("--max-order", check_options.max_group_order, "Largest group order in the corpus")
      ->check(CLI::Range(1, 12));
  check->add_flag("--inject-fault", check_options.inject_fault)->group("");
  bool check_failed = false;
  check->callback([&] {
    action = [&] {
      check_options.threads = flags.threads;
      Json suites = Json::array();
      bool ok = true;
      for (const SuiteResult& s : run_checks(check_options)) {
        Json item = to_json(s.report);
        item = Json{{"suite", s.name}, {"pairs", s.pairs}, {"checks", item["checks"]},
                    {"ok", item["ok"]}, {"violations", item["violations"]}};
        ok = ok && s.report.ok();
        suites.push_back(std::move(item));
      }
      result["inputs"] = Json{{"scope", check_options.scope},
                              {"max_order", check_options.max_group_order}};
      result["suites"] = std::move(suites);
      result["pass"] = ok;
      check_failed = !ok;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, help_err;
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? kOk : kUsageError;
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    result["subcommand"] = subcommand;
    action();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const InconclusiveError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  if (flags.timing)
    result["timing"] = Json{
        {"seconds", display_ln(std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                                   .count())}};

  if (flags.format == "json") {
    out << result.dump() << "\n";
  } else {
    render_text(result, "", out);
  }
  return check_failed ? kDomainError : kOk;
}

}  // namespace multicat::cli
