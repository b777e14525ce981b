// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "multicat/cli.hpp"
#include "multicat/fingroup.hpp"
#include "multicat/finset.hpp"
#include "multicat/graph_circle.hpp"
#include "multicat/json_io.hpp"
#include "multicat/knot_bounds.hpp"
#include "multicat/pidmodule.hpp"
#include "oracles/oracles.hpp"

using namespace multicat;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
  void within(double seconds, double limit, const std::string& what) {
    std::ostringstream s;
    s << what << " took " << seconds << " s, limit " << limit << " s";
    require(seconds < limit, s.str());
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

unsigned desk_threads() {
  return std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
}

Outcome ceiling_division() {
  Outcome o;
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> size(1, 1000);
  const auto start = Clock::now();
  for (int i = 0; i < 200; ++i) {
    std::uint64_t x = size(rng), y = size(rng);
    if (y > x) std::swap(x, y);
    const std::uint64_t expect = x / y + (x % y != 0);
    std::ostringstream out, err;
    const int code = cli::run({"finset", std::to_string(x), std::to_string(y)}, out, err);
    const Json j = Json::parse(out.str());
    o.require(code == 0 && j["value"]["count"] == expect && j["certificate"] == "exact",
              "finset " + std::to_string(x) + " " + std::to_string(y));
    o.require(finset_multiplicity(x, y).value == MultValue::count(expect), "library value");
  }
  const double t = seconds_since(start);
  o.within(t, 1.0, "200 pairs");
  o.detail = "200 random pairs, " + std::to_string(t) + " s";
  return o;
}

Outcome complete_graphs() {
  Outcome o;
  SolveOptions ex;
  ex.strategy = Strategy::Exhaustive;
  SolveOptions bnb;
  bnb.threads = desk_threads();

  const auto k3 = solve_exact(SimpleGraph::complete(3), ex);
  o.require(k3.value == MultValue::count(1) && k3.certificate == Certificate::Exact, "K3 != 1");

  auto start = Clock::now();
  const auto k5 = solve_exact(SimpleGraph::complete(5), ex);
  const double t5 = seconds_since(start);
  o.require(k5.value == MultValue::count(3) && k5.certificate == Certificate::Exact, "K5 != 3");
  o.within(t5, 1.0, "K5");

  start = Clock::now();
  const auto k7 = solve_exact(SimpleGraph::complete(7), bnb);
  const double t7 = seconds_since(start);
  o.require(k7.value == MultValue::count(6) && k7.certificate == Certificate::Exact, "K7 != 6");
  o.within(t7, 120.0, "K7");
  for (const auto* w : {&k5, &k7}) {
    const auto n = w == &k5 ? 5u : 7u;
    o.require(w->witness &&
                  MultValue::count(evaluate(SimpleGraph::complete(n), w->witness->layout,
                                            w->witness->arcs).max_fiber) == w->value,
              "witness fibers for K" + std::to_string(n));
  }
  o.detail = "K3=" + to_string(k3.value) + " K5=" + to_string(k5.value) + " (" +
             std::to_string(t5) + " s) K7=" + to_string(k7.value) + " (" + std::to_string(t7) +
             " s, " + std::to_string(bnb.threads) + " threads)";
  return o;
}

Outcome graph_oracle() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t graphs = 0;
  for (std::uint32_t n = 1; n <= 5; ++n)
    for (const auto& g : oracle::connected_graphs(n)) {
      ++graphs;
      SolveOptions ex;
      ex.strategy = Strategy::Exhaustive;
      const auto a = solve_exact(g, ex);
      const auto b = solve_exact(g, {});
      const auto brute = oracle::circle_map_min_fiber(g);
      const std::string tag = "graph #" + std::to_string(graphs) + " on " + std::to_string(n) + " vertices";
      o.require(a.value == b.value, tag + ": strategies disagree");
      o.require(a.value == MultValue::count(brute), tag + ": oracle gives " + std::to_string(brute));
      o.require(a.certificate == Certificate::Exact && b.certificate == Certificate::Exact,
                tag + ": not exact");
    }
  const double t = seconds_since(start);
  o.require(graphs == 1 + 1 + 2 + 6 + 21, "expected 31 isomorphism classes");
  o.within(t, 60.0, "graph oracle");
  o.detail = std::to_string(graphs) + " connected graphs, " + std::to_string(t) + " s";
  return o;
}

Outcome group_metric() {
  Outcome o;
  const auto start = Clock::now();
  const auto corpus = small_group_corpus(12);
  const std::size_t n = corpus.size();
  o.require(n == 24, "corpus size " + std::to_string(n));
  const GroupInstance ker(GroupMultKind::Kernel), coker(GroupMultKind::Cokernel);

  std::size_t homs = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& g = corpus[i];
      const auto& h = corpus[j];
      const auto dk = multiplicity_distance(ker, g, h);
      const auto dc = multiplicity_distance(coker, g, h);
      const std::string tag = g->name() + " / " + h->name();
      o.require(dk.certificate == Certificate::Exact && dc.certificate == Certificate::Exact,
                tag + ": inexact");
      o.require(dk.product == dc.product, tag + ": d_ker != d_coker");                      // (a)
      o.require(dk.is_zero() == (i == j), tag + ": zero distance vs isomorphism");          // (b)
      o.require(is_isomorphic(g, h) == (i == j), tag + ": isomorphism test");
      for_each_hom(g, h, [&](const GroupHom& f) {                                           // (d)
        ++homs;
        const std::uint64_t k = f.kernel().order(), im = f.image_subgroup().order();
        const std::uint64_t c = cokernel_multiplicity(f).count_value();
        o.require(k * im == g->order(), tag + ": |Ker f||f(G)| != |G|");
        o.require(k * h->order() == g->order() * c, tag + ": |Ker f| != (|G|/|H|)|Coker f|");
        return true;
      });
    }
  const auto triples = all_triples(n);                                                       // (c)
  for (const auto* inst : {&ker, &coker}) {
    const Report r = check_pseudo_distance(*inst, std::span<const GroupRef>(corpus),
                                           std::span<const std::array<std::size_t, 3>>(triples));
    for (const auto& v : r.violations) o.require(false, v.kind + ": " + v.detail);
  }
  const double t = seconds_since(start);
  o.within(t, 600.0, "group metric");
  o.detail = std::to_string(n) + " groups, " + std::to_string(triples.size()) + " triples, " +
             std::to_string(homs) + " homs, " + std::to_string(t) + " s";
  return o;
}

Outcome hom_enumeration() {
  Outcome o;
  const auto start = Clock::now();
  const auto corpus = small_group_corpus(6);
  std::size_t pairs = 0;
  for (const auto& g : corpus)
    for (const auto& h : corpus) {
      ++pairs;
      const auto listed = enumerate_homs(g, h).size();
      const auto filtered = oracle::count_homs_by_filter(*g, *h);
      o.require(listed == filtered, g->name() + " -> " + h->name() + ": " + std::to_string(listed) +
                                        " vs " + std::to_string(filtered));
    }
  const double t = seconds_since(start);
  o.within(t, 30.0, "hom enumeration");
  o.detail = std::to_string(pairs) + " pairs, " + std::to_string(t) + " s";
  return o;
}

Outcome module_closed_forms() {
  Outcome o;
  const auto start = Clock::now();
  for (std::size_t a = 0; a <= 4; ++a)
    for (std::size_t b = 0; b <= 4; ++b) {
      const auto d = rank_distances(FgZModule(a, {}), FgZModule(b, {}));
      const auto gap = MultValue::exp(a > b ? a - b : b - a);
      const std::string tag = "Z^" + std::to_string(a) + ", Z^" + std::to_string(b);
      o.require(d.d_rker.product == gap && d.d_rcoker.product == gap, tag);
      o.require(d.d_rker.certificate == Certificate::Exact &&
                    d.d_rcoker.certificate == Certificate::Exact,
                tag + ": inexact");
    }
  const auto d = rank_distances(parse_module("Z"), parse_module("Z/2"));
  o.require(d.d_rker.product == MultValue::exp(2), "d_rker(Z, Z/2) = " + to_string(d.d_rker.product));
  o.require(d.d_rcoker.product == MultValue::exp(1),
            "d_rcoker(Z, Z/2) = " + to_string(d.d_rcoker.product));
  o.require(d.d_rker.certificate == Certificate::Exact && d.d_rcoker.certificate == Certificate::Exact,
            "Z, Z/2 not exact");
  const double t = seconds_since(start);
  o.within(t, 5.0, "module closed forms");
  o.detail = "25 free pairs plus Z, Z/2 (d_rker=" + to_string(d.d_rker.product) +
             ", d_rcoker=" + to_string(d.d_rcoker.product) + "), " + std::to_string(t) + " s";
  return o;
}

bool valid_snf(const IntMatrix& a) {
  const SnfResult s = smith_normal_form(a);
  if (!(s.U * a * s.V == s.S)) return false;
  if (abs(determinant(s.U)) != 1 || abs(determinant(s.V)) != 1) return false;
  for (std::size_t i = 0; i < s.S.rows(); ++i)
    for (std::size_t j = 0; j < s.S.cols(); ++j)
      if (i != j && s.S(i, j) != 0) return false;
  const auto diag = s.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] < 0) return false;
    if (i + 1 < diag.size()) {
      if (diag[i] == 0 && diag[i + 1] != 0) return false;
      if (diag[i] != 0 && diag[i + 1] % diag[i] != 0) return false;
    }
  }
  return true;
}

ZModuleHom random_hom(const FgZModule& m, const FgZModule& n, std::mt19937_64& rng) {
  const HomCandidateSpace space(m, n, 0);
  return space.at(std::uniform_int_distribution<std::uint64_t>(0, *space.size() - 1)(rng));
}

Outcome module_properties() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);

  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::uniform_int_distribution<long> entry(-50, 50);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t r = dim(rng), c = dim(rng);
    IntMatrix a(r, c);
    for (std::size_t x = 0; x < r; ++x)
      for (std::size_t y = 0; y < c; ++y) a(x, y) = entry(rng);
    // every fourth matrix gets a dependent last row
    if (i % 4 == 0 && r >= 3)
      for (std::size_t y = 0; y < c; ++y) a(r - 1, y) = 3 * a(0, y) - 2 * a(1, y);
    o.require(valid_snf(a), "SNF of " + a.to_string());
  }

  const auto mods = oracle::torsion_modules(16);
  std::uniform_int_distribution<std::size_t> pick(0, mods.size() - 1);
  for (int i = 0; i < 500; ++i) {
    const auto& m = mods[pick(rng)];
    const auto& n = mods[pick(rng)];
    const auto& l = mods[pick(rng)];
    const auto f = random_hom(m, n, rng), g = random_hom(n, l, rng);
    const auto gf = compose(f, g);
    const std::string tag = m.to_string() + " -> " + n.to_string() + " -> " + l.to_string();
    o.require(gf.has_value(), tag + ": not composable");
    if (!gf) continue;
    auto rk = [](const ZModuleHom& h) { return min_generators(hom_kernel(h)); };
    auto rc = [](const ZModuleHom& h) { return min_generators(hom_cokernel(h)); };
    o.require(rk(*gf) <= rk(f) + rk(g), tag + ": r(Ker) not subadditive");
    o.require(rc(*gf) <= rc(f) + rc(g), tag + ": r(Coker) not subadditive");
    for (const auto* h : {&f, &g}) {
      const auto e = oracle::enumerate_map(*h, 16);
      const auto& src = h->source();
      const auto& tgt = h->target();
      // Ker -> M -> Im and Im -> N -> Coker are short exact.
      o.require(min_generators(src) <= e.r_kernel + e.r_image, tag + ": r(M) > r(Ker) + r(Im)");
      o.require(min_generators(tgt) <= e.r_image + e.r_cokernel, tag + ": r(N) > r(Im) + r(Coker)");
      o.require(e.r_kernel == rk(*h) && e.r_cokernel == rc(*h), tag + ": rank mismatch with oracle");
      o.require(e.r_kernel <= min_generators(src), tag + ": r(Ker) > r(M)");
      o.require(e.r_image <= min_generators(src) && e.r_image <= min_generators(tgt),
                tag + ": r(Im) exceeds r(M) or r(N)");
      const auto floors = rank_lower_bounds(src, tgt);
      o.require(rk(*h) >= floors.kernel && rc(*h) >= floors.cokernel, tag + ": below rank floor");
    }
  }

  std::size_t maps = 0;
  for (const auto& m : mods)
    for (const auto& n : mods)
      oracle::for_each_torsion_hom(m, n, [&](const ZModuleHom& f) {
        ++maps;
        const auto e = oracle::enumerate_map(f, 16);
        const auto k = hom_kernel(f), c = hom_cokernel(f);
        const std::string tag = m.to_string() + " -> " + n.to_string();
        o.require(k.is_torsion() && oracle::profile_of(k, 16) == e.kernel, tag + ": kernel " + k.to_string());
        o.require(c.is_torsion() && oracle::profile_of(c, 16) == e.cokernel,
                  tag + ": cokernel " + c.to_string());
      });

  const double t = seconds_since(start);
  o.within(t, 120.0, "module properties");
  o.detail = "1000 SNFs, 500 composable pairs, " + std::to_string(mods.size()) + " modules / " +
             std::to_string(maps) + " maps vs oracle, " + std::to_string(t) + " s";
  return o;
}

Outcome weak_isomorphism() {
  Outcome o;
  const auto start = Clock::now();
  const auto mods = oracle::torsion_modules(16);
  const std::size_t n = mods.size();
  // injective[i][j]: some map mods[i] -> mods[j] is injective
  std::vector<std::vector<bool>> inj(n, std::vector<bool>(n)), surj = inj, surj_not_inj = inj;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t target_order = mods[j].order().get_ui();
      const auto src = oracle::elements(mods[i]);
      oracle::for_each_torsion_hom(mods[i], mods[j], [&](const ZModuleHom& f) {
        std::set<std::vector<std::int64_t>> image;
        for (const auto& x : src) image.insert(oracle::apply(f, x));
        if (image.size() == src.size()) {
          inj[i][j] = true;
          o.require(hom_kernel(f).is_zero(), "kernel of an injective map is not zero");
        }
        if (image.size() == target_order) {
          surj[i][j] = true;
          if (image.size() != src.size()) surj_not_inj[i][j] = true;
          o.require(hom_cokernel(f).is_zero(), "cokernel of a surjective map is not zero");
        }
      });
    }
  std::size_t module_pairs = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ++module_pairs;
      const bool iso = mods[i] == mods[j];
      const std::string tag = mods[i].to_string() + ", " + mods[j].to_string();
      o.require(!(inj[i][j] && inj[j][i]) || iso, tag + ": two-way injective");
      o.require(!(surj[i][j] && surj[j][i]) || iso, tag + ": two-way surjective");
      o.require(!(surj[i][j] && surj[j][i]) || !surj_not_inj[i][j],
                tag + ": a surjection is not injective despite surjections both ways");
    }

  const auto groups = small_group_corpus(10);
  std::size_t group_pairs = 0;
  for (const auto& g : groups)
    for (const auto& h : groups) {
      ++group_pairs;
      bool gi = false, gs = false, hi = false, hs = false;
      for_each_hom(g, h, [&](const GroupHom& f) {
        gi = gi || f.is_injective();
        gs = gs || f.is_surjective();
        return !(gi && gs);
      });
      for_each_hom(h, g, [&](const GroupHom& f) {
        hi = hi || f.is_injective();
        hs = hs || f.is_surjective();
        return !(hi && hs);
      });
      const bool iso = is_isomorphic(g, h);
      const std::string tag = g->name() + ", " + h->name();
      o.require(!(gi && hi) || iso, tag + ": two-way injective");
      o.require(!(gs && hs) || iso, tag + ": two-way surjective");
      o.require(weakly_isomorphic(g, h) == (gi && hi), tag + ": weakly_isomorphic disagrees");
      o.require(co_weakly_isomorphic(g, h) == (gs && hs), tag + ": co_weakly_isomorphic disagrees");
    }
  const double t = seconds_since(start);
  o.within(t, 300.0, "weak isomorphism");
  o.detail = std::to_string(module_pairs) + " module pairs, " + std::to_string(group_pairs) +
             " group pairs, " + std::to_string(t) + " s";
  return o;
}

Outcome knot_engine() {
  Outcome o;
  const auto start = Clock::now();
  auto exact_of = [](const KnotRecord& r) { return multiplicity_index_bounds(r).exact(); };
  KnotRecord trivial;
  trivial.is_trivial = true;
  o.require(exact_of(trivial) == 1u, "trivial knot");
  KnotRecord torus;
  torus.torus_p = 3;
  o.require(exact_of(torus) == 2u, "(2,3)-torus knot");
  KnotRecord braid3;
  braid3.braid_index = 3;
  braid3.is_torus_2p = false;
  braid3.is_trivial = false;
  o.require(exact_of(braid3) == 3u, "braid index 3");
  KnotRecord sum;
  sum.is_connected_sum_of_2bridge = true;
  sum.is_trivial = false;
  sum.is_torus_2p = false;
  o.require(exact_of(sum) == 3u, "connected sum of 2-bridge knots");
  KnotRecord mont;
  mont.is_montesinos = true;
  const auto mb = multiplicity_index_bounds(mont);
  o.require(mb.upper == 4u && mb.lower == 1, "Montesinos upper bound");
  mont.trunk = 8;
  o.require(exact_of(mont) == 4u, "Montesinos with trunk 8");

  std::mt19937_64 rng(99);
  std::size_t compared = 0, inconsistent = 0;
  for (int i = 0; i < 1000; ++i) {
    KnotRecord base;
    for (int k = 0; k < oracle::kKnotFieldCount; ++k)
      if (rng() % 3 == 0) oracle::assert_absent_field(base, k, rng);
    KnotRecord extended = base;
    const int first = static_cast<int>(rng() % oracle::kKnotFieldCount);
    bool added = false;
    for (int step = 0; step < oracle::kKnotFieldCount && !added; ++step)
      added = oracle::assert_absent_field(extended, (first + step) % oracle::kKnotFieldCount, rng);
    if (!added) continue;
    try {
      const auto a = multiplicity_index_bounds(base);
      const auto b = multiplicity_index_bounds(extended);
      ++compared;
      o.require(oracle::nested(a, b), "extension widened the interval");
    } catch (const InconsistentKnotError&) {
      ++inconsistent;
    }
  }
  o.require(compared >= 500, "only " + std::to_string(compared) + " consistent extensions");

  double last = 0;
  for (std::uint64_t trunk : {2, 4, 8, 16, 32}) {
    KnotRecord k;
    k.is_trivial = false;
    k.trunk = trunk;
    const auto d = distance_lower_bound_to_unknot(k);
    o.require(d.lower_bound && d.lower_bound->product == MultValue::count(trunk),
              "trunk " + std::to_string(trunk));
    if (!d.lower_bound) continue;
    const double ln = d.lower_bound->product.log_value();
    o.require(std::abs(ln - std::log(static_cast<double>(trunk))) < 1e-12 && ln > last,
              "ln bound not increasing at trunk " + std::to_string(trunk));
    last = ln;
  }
  const double t = seconds_since(start);
  o.within(t, 5.0, "knot engine");
  o.detail = std::to_string(compared) + " extensions compared (" + std::to_string(inconsistent) +
             " inconsistent skipped), " + std::to_string(t) + " s";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "ceiling-division law", ceiling_division},
      {2, "complete-graph values", complete_graphs},
      {3, "graph solver oracle equivalence", graph_oracle},
      {4, "finite-group metric", group_metric},
      {5, "hom-enumeration oracle", hom_enumeration},
      {6, "module closed forms", module_closed_forms},
      {7, "module property suite", module_properties},
      {8, "weak-isomorphism theorems", weak_isomorphism},
      {9, "knot rule engine", knot_engine},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  bool all = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::printf("%s  %d  %-34s %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    for (const auto& f : o.failures) std::printf("        %s\n", f.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
