#include "multicat/check_suite.hpp"

#include <algorithm>
#include <random>

#include "multicat/fingroup.hpp"
#include "multicat/finset.hpp"
#include "multicat/graph_circle.hpp"
#include "multicat/knot_bounds.hpp"
#include "multicat/pidmodule.hpp"

namespace multicat {

const std::vector<std::string>& check_scopes() {
  static const std::vector<std::string> scopes = {"core",  "finset", "group",
                                                  "graph", "module", "knot"};
  return scopes;
}

namespace {

// Finite sets measured by one more than the largest fiber. Identity maps get
// multiplicity 2, so the identity axiom must fail.
class OffByOneFinSet : public FinSetInstance {
 public:
  MultValue multiplicity(const FinMap& f) const {
    return MultValue::count(map_multiplicity(f).count_value() + 1);
  }
};

FinMap random_map(std::mt19937_64& rng, std::uint64_t domain, std::uint64_t codomain) {
  FinMap f{domain, codomain, std::vector<std::uint64_t>(domain)};
  std::uniform_int_distribution<std::uint64_t> pick(0, codomain - 1);
  for (auto& y : f.images) y = pick(rng);
  return f;
}

template <class Instance>
Report finset_axioms(const Instance& inst) {
  std::mt19937_64 rng(20240917);
  std::vector<std::uint64_t> objects{1, 2, 3, 4, 5, 6};
  std::vector<std::pair<FinMap, FinMap>> pairs;
  for (std::uint64_t a : objects)
    for (std::uint64_t b : objects)
      for (std::uint64_t c : objects)
        pairs.emplace_back(random_map(rng, a, b), random_map(rng, b, c));
  return check_multiplicity_axioms(inst, std::span<const std::uint64_t>(objects),
                                   std::span<const std::pair<FinMap, FinMap>>(pairs));
}

SuiteResult core_suite() {
  SuiteResult out{"core", {}, 0};
  Report& r = out.report;
  const std::vector<MultValue> counts{MultValue::count(1), MultValue::count(2),
                                      MultValue::count(7), MultValue::infinity()};
  const std::vector<MultValue> exps{MultValue::exp(0), MultValue::exp(3), MultValue::infinity()};
  auto laws = [&](const std::vector<MultValue>& vals, Family family) {
    const MultValue one = MultValue::one(family);
    for (const auto& a : vals) {
      ++r.checks;
      if (mult_product(a, one) != a) r.add("unit", to_string(a) + " * 1 != " + to_string(a));
      for (const auto& b : vals) {
        ++r.checks;
        if (mult_product(a, b) != mult_product(b, a))
          r.add("commutativity", to_string(a) + " * " + to_string(b));
        if (!a.is_infinite() && !b.is_infinite() && mult_product(a, b) < a)
          r.add("monotonicity", to_string(a) + " * " + to_string(b) + " < " + to_string(a));
        for (const auto& c : vals) {
          ++r.checks;
          if (mult_product(mult_product(a, b), c) != mult_product(a, mult_product(b, c)))
            r.add("associativity", to_string(a) + ", " + to_string(b) + ", " + to_string(c));
        }
      }
    }
  };
  laws(counts, Family::Count);
  laws(exps, Family::Exp);
  return out;
}

SuiteResult finset_suite(bool inject_fault) {
  SuiteResult out{"finset", {}, 0};
  if (inject_fault) {
    const OffByOneFinSet faulty;
    out.report.merge(finset_axioms(faulty));
  } else {
    out.report.merge(finset_axioms(FinSetInstance()));
  }
  const FinSetInstance inst;
  std::vector<std::uint64_t> objects{1, 2, 3, 4, 5, 6};
  const auto triples = all_triples(objects.size());
  out.report.merge(check_pseudo_distance(inst, std::span<const std::uint64_t>(objects),
                                         std::span<const std::array<std::size_t, 3>>(triples)));
  for (std::uint64_t x : objects)
    for (std::uint64_t y : objects) {
      ++out.pairs;
      ++out.report.checks;
      const auto searched = object_multiplicity(inst, x, y);
      const auto closed = finset_multiplicity(x, y);
      if (searched.value != closed.value)
        out.report.add("ceiling_division", "m(" + std::to_string(x) + ":" + std::to_string(y) +
                                               ") searched " + to_string(searched.value) +
                                               ", closed form " + to_string(closed.value));
    }
  return out;
}

SuiteResult group_suite(std::size_t max_order) {
  SuiteResult out{"group", {}, 0};
  Report& r = out.report;
  const auto corpus = small_group_corpus(max_order);
  const GroupInstance ker(GroupMultKind::Kernel), coker(GroupMultKind::Cokernel);
  const auto triples = all_triples(corpus.size());
  const std::span<const GroupRef> objects(corpus);
  const std::span<const std::array<std::size_t, 3>> triple_span(triples);
  r.merge(check_pseudo_distance(ker, objects, triple_span));
  r.merge(check_pseudo_distance(coker, objects, triple_span));

  std::vector<std::pair<GroupHom, GroupHom>> pairs;
  for (const auto& g : corpus)
    for (const auto& h : corpus) {
      ++out.pairs;
      const auto name = g->name() + " -> " + h->name();
      const bool iso = is_isomorphic(g, h);
      const DistValue dk = multiplicity_distance(ker, g, h);
      const DistValue dc = multiplicity_distance(coker, g, h);
      r.checks += 3;
      if (dk.product != dc.product)
        r.add("kernel_cokernel_distance", name + ": " + to_string(dk.product) + " vs " +
                                              to_string(dc.product));
      if (dk.is_zero() != iso)
        r.add("zero_iff_isomorphic", name + ": d_ker product " + to_string(dk.product) +
                                         (iso ? ", isomorphic" : ", not isomorphic"));
      if ((weakly_isomorphic(g, h) || co_weakly_isomorphic(g, h)) && !iso)
        r.add("classed", name + " are weakly isomorphic but not isomorphic");
      for_each_hom(g, h, [&](const GroupHom& f) {
        ++r.checks;
        const std::size_t k = f.kernel().order(), im = f.image_subgroup().order();
        const std::size_t cok = h->order() / im;
        if (k * im != g->order() || k * h->order() != g->order() * cok)
          r.add("order_identity", name + ": |Ker| = " + std::to_string(k) + ", |Im| = " +
                                      std::to_string(im));
        return true;
      });
    }
  // Submultiplicativity on composable pairs among the small groups.
  for (const auto& a : corpus)
    for (const auto& b : corpus)
      for (const auto& c : corpus) {
        if (a->order() * b->order() * c->order() > 216) continue;
        const auto fs = enumerate_homs(a, b);
        const auto gs = enumerate_homs(b, c);
        for (std::size_t i = 0; i < std::min<std::size_t>(fs.size(), 4); ++i)
          for (std::size_t j = 0; j < std::min<std::size_t>(gs.size(), 4); ++j)
            pairs.emplace_back(fs[i], gs[j]);
      }
  const std::span<const std::pair<GroupHom, GroupHom>> pair_span(pairs);
  r.merge(check_multiplicity_axioms(ker, objects, pair_span));
  r.merge(check_multiplicity_axioms(coker, objects, pair_span));
  return out;
}

std::vector<SimpleGraph> connected_graphs(std::uint32_t max_vertices) {
  std::vector<SimpleGraph> out;
  for (std::uint32_t n = 1; n <= max_vertices; ++n) {
    std::vector<Edge> all;
    for (std::uint32_t u = 0; u < n; ++u)
      for (std::uint32_t v = u + 1; v < n; ++v) all.push_back({u, v});
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < all.size(); ++i)
        if (mask >> i & 1) edges.push_back(all[i]);
      SimpleGraph g(n, edges);
      if (betti_numbers(g).b0 == 1) out.push_back(std::move(g));
    }
  }
  return out;
}

SuiteResult graph_suite(unsigned threads) {
  SuiteResult out{"graph", {}, 0};
  Report& r = out.report;
  auto describe = [](const SimpleGraph& g) {
    std::string s = std::to_string(g.vertex_count()) + " vertices {";
    for (const Edge& e : g.edges()) s += " " + std::to_string(e.u) + "-" + std::to_string(e.v);
    return s + " }";
  };
  for (const SimpleGraph& g : connected_graphs(4)) {
    ++out.pairs;
    SolveOptions ex{Strategy::Exhaustive, std::nullopt, 1};
    SolveOptions bnb{Strategy::BranchAndBound, std::nullopt, threads};
    const auto a = solve_exact(g, ex);
    const auto b = solve_exact(g, bnb);
    r.checks += 3;
    if (a.value != b.value || a.witness != b.witness)
      r.add("strategy_agreement", describe(g) + ": exhaustive " + to_string(a.value) + ", bnb " +
                                      to_string(b.value));
    if (a.value < MultValue::count(pigeonhole_lower_bound(g)))
      r.add("pigeonhole", describe(g) + " beats the edge-count bound");
    if (a.witness &&
        MultValue::count(evaluate(g, a.witness->layout, a.witness->arcs).max_fiber) != a.value)
      r.add("witness", describe(g) + ": witness fiber differs from the reported value");
  }
  const std::vector<std::pair<std::uint32_t, std::uint64_t>> complete{{3, 1}, {5, 3}};
  for (auto [n, expected] : complete) {
    ++r.checks;
    const auto v = solve_exact(SimpleGraph::complete(n), {Strategy::BranchAndBound, std::nullopt, threads});
    if (v.value != MultValue::count(expected))
      r.add("complete_graph", "K_" + std::to_string(n) + " gave " + to_string(v.value));
  }
  return out;
}

SuiteResult module_suite(unsigned threads) {
  SuiteResult out{"module", {}, 0};
  Report& r = out.report;
  std::vector<FgZModule> objects;
  for (const char* s : {"0", "Z", "Z^2", "Z/2", "Z/3", "Z/4", "Z/2 + Z/2"})
    objects.push_back(parse_module(s));
  const auto triples = all_triples(objects.size());
  const std::span<const FgZModule> obj_span(objects);
  const std::span<const std::array<std::size_t, 3>> triple_span(triples);
  const ModuleInstance rker(RankMultKind::Kernel, 1), rcoker(RankMultKind::Cokernel, 1);
  r.merge(check_pseudo_distance(rker, obj_span, triple_span));
  r.merge(check_pseudo_distance(rcoker, obj_span, triple_span));

  std::vector<std::pair<ZModuleHom, ZModuleHom>> pairs;
  for (const auto& a : objects)
    for (const auto& b : objects) {
      ++out.pairs;
      const HomCandidateSpace ab(a, b, 1);
      const RankLowerBounds floors = rank_lower_bounds(a, b);
      const std::uint64_t count = std::min<std::uint64_t>(ab.size().value_or(64), 64);
      for (std::uint64_t i = 0; i < count; ++i) {
        const ZModuleHom f = ab.at(i);
        const FgZModule k = hom_kernel(f), c = hom_cokernel(f);
        r.checks += 2;
        if (min_generators(k) < floors.kernel || min_generators(c) < floors.cokernel)
          r.add("rank_lower_bound", rker.describe(f) + " has Ker " + k.to_string() + ", Coker " +
                                        c.to_string());
        if (a.is_torsion() && b.is_torsion() && k.is_torsion() && c.is_torsion() &&
            k.order() * b.order() != a.order() * c.order())
          r.add("order_identity", rker.describe(f));
      }
      for (const auto& c : objects) {
        const HomCandidateSpace bc(b, c, 1);
        for (std::uint64_t i = 0; i < std::min<std::uint64_t>(count, 3); ++i)
          for (std::uint64_t j = 0; j < std::min<std::uint64_t>(bc.size().value_or(3), 3); ++j)
            pairs.emplace_back(ab.at(i * 7 % count), bc.at(j));
      }
    }
  const std::span<const std::pair<ZModuleHom, ZModuleHom>> pair_span(pairs);
  r.merge(check_multiplicity_axioms(rker, obj_span, pair_span));
  r.merge(check_multiplicity_axioms(rcoker, obj_span, pair_span));

  RankSearchOptions options;
  options.threads = threads;
  for (std::size_t n = 0; n <= 3; ++n)
    for (std::size_t m = 0; m <= 3; ++m) {
      ++r.checks;
      const auto d = rank_distances(FgZModule(n, {}), FgZModule(m, {}), options);
      const auto expected = MultValue::exp(n > m ? n - m : m - n);
      if (d.d_rker.product != expected || d.d_rcoker.product != expected)
        r.add("free_closed_form", "Z^" + std::to_string(n) + " vs Z^" + std::to_string(m));
    }
  return out;
}

SuiteResult knot_suite() {
  SuiteResult out{"knot", {}, 0};
  Report& r = out.report;
  auto expect_exact = [&](const KnotRecord& rec, std::uint64_t v, const char* label) {
    ++r.checks;
    const auto b = multiplicity_index_bounds(rec);
    if (b.exact() != v) r.add("knot_example", std::string(label) + " did not give " + std::to_string(v));
  };
  KnotRecord trivial;
  trivial.is_trivial = true;
  expect_exact(trivial, 1, "trivial knot");
  KnotRecord trefoil;
  trefoil.torus_p = 3;
  expect_exact(trefoil, 2, "(2,3)-torus knot");
  KnotRecord braid3;
  braid3.braid_index = 3;
  braid3.is_torus_2p = false;
  braid3.is_trivial = false;
  expect_exact(braid3, 3, "braid index 3");
  KnotRecord montesinos;
  montesinos.is_montesinos = true;
  montesinos.trunk = 8;
  expect_exact(montesinos, 4, "Montesinos with trunk 8");

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> field(0, 7);
  std::uniform_int_distribution<std::uint64_t> small(1, 9);
  std::bernoulli_distribution flip(0.5);
  // Sets field k if it is absent; returns false when it was already set.
  auto assert_field = [&](KnotRecord& rec, int k) {
    switch (k) {
      case 0: if (rec.is_trivial) return false; rec.is_trivial = flip(rng); return true;
      case 1:
        if (rec.is_torus_2p || rec.torus_p) return false;
        if (flip(rng)) rec.is_torus_2p = false; else rec.torus_p = 2 * static_cast<std::int64_t>(small(rng)) + 1;
        return true;
      case 2: if (rec.braid_index) return false; rec.braid_index = small(rng); return true;
      case 3: if (rec.bridge_index) return false; rec.bridge_index = small(rng); return true;
      case 4: if (rec.trunk) return false; rec.trunk = small(rng) + 1; return true;
      case 5: if (rec.is_montesinos) return false; rec.is_montesinos = flip(rng); return true;
      default:
        if (rec.is_connected_sum_of_2bridge) return false;
        rec.is_connected_sum_of_2bridge = flip(rng);
        return true;
    }
  };
  for (int i = 0; i < 300; ++i) {
    KnotRecord base;
    for (int k = 0; k < 7; ++k)
      if (field(rng) < 2) assert_field(base, k);
    KnotRecord extended = base;
    if (!assert_field(extended, field(rng) % 7)) continue;
    BoundsResult a, b;
    try {
      a = multiplicity_index_bounds(base);
      b = multiplicity_index_bounds(extended);
    } catch (const InconsistentKnotError&) {
      continue;
    }
    ++r.checks;
    const bool nested = b.lower >= a.lower && (!a.upper || (b.upper && *b.upper <= *a.upper));
    if (!nested) r.add("monotonicity", "adding an assertion widened the interval");
  }
  for (std::uint64_t t : {2, 4, 8, 16, 32}) {
    ++r.checks;
    KnotRecord k;
    k.is_trivial = false;
    k.trunk = t;
    const auto d = distance_lower_bound_to_unknot(k);
    if (!d.lower_bound || d.lower_bound->product != MultValue::count(t))
      r.add("unknot_distance", "trunk " + std::to_string(t));
  }
  return out;
}

}  // namespace

std::vector<SuiteResult> run_checks(const CheckOptions& options) {
  const auto& scopes = check_scopes();
  if (options.scope != "all" &&
      std::find(scopes.begin(), scopes.end(), options.scope) == scopes.end())
    throw DomainError("unknown check scope '" + options.scope + "'");
  auto want = [&](const char* s) { return options.scope == "all" || options.scope == s; };
  std::vector<SuiteResult> out;
  if (want("core")) out.push_back(core_suite());
  if (want("finset")) out.push_back(finset_suite(options.inject_fault));
  if (want("group")) out.push_back(group_suite(options.max_group_order));
  if (want("graph")) out.push_back(graph_suite(options.threads));
  if (want("module")) out.push_back(module_suite(options.threads));
  if (want("knot")) out.push_back(knot_suite());
  return out;
}

}  // namespace multicat
