#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "multicat/int_matrix.hpp"
#include "multicat/pidmodule.hpp"
#include "oracles/oracles.hpp"

using namespace multicat;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long range) {
  std::uniform_int_distribution<long> entry(-range, range);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
  return m;
}

void check_snf(const IntMatrix& a) {
  const SnfResult s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.S);
  CHECK(abs(determinant(s.U)) == 1);
  CHECK(abs(determinant(s.V)) == 1);
  const auto diag = s.diagonal();
  for (std::size_t i = 0; i < s.S.rows(); ++i)
    for (std::size_t j = 0; j < s.S.cols(); ++j)
      if (i != j) CHECK(s.S(i, j) == 0);
  for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
    CHECK(diag[i] >= 0);
    if (diag[i] == 0)
      CHECK(diag[i + 1] == 0);
    else
      CHECK(diag[i + 1] % diag[i] == 0);
  }
}

}  // namespace

TEST_CASE("determinant") {
  CHECK(determinant(IntMatrix{{2, 0}, {0, 3}}) == 6);
  CHECK(determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
  CHECK(determinant(IntMatrix{{0, 1, 2}, {1, 0, 3}, {4, -3, 8}}) == -2);
  CHECK(determinant(IntMatrix(0, 0)) == 1);
}

TEST_CASE("Smith normal form on fixed and random matrices") {
  const IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  CHECK(smith_normal_form(a).diagonal() == std::vector<BigInt>{2, 6, 12});
  check_snf(a);
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).diagonal() == std::vector<BigInt>{1, 6});
  CHECK(smith_normal_form(IntMatrix::identity(3)).S == IntMatrix::identity(3));
  check_snf(IntMatrix(0, 3));
  check_snf(IntMatrix(2, 0));
  check_snf(IntMatrix{{0, 0}, {0, 0}});
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int i = 0; i < 100; ++i) check_snf(random_matrix(rng, dim(rng), dim(rng), 9));
  for (int i = 0; i < 100; ++i) check_snf(random_matrix(rng, dim(rng) + 1, dim(rng) + 1, 50));
}

TEST_CASE("module parsing and normalization") {
  CHECK(parse_module("Z^2 + Z/4").to_string() == "Z^2 + Z/4");
  CHECK(parse_module("Z/2+Z/3").to_string() == "Z/6");
  CHECK(parse_module(" Z / 4 + Z / 6 ") == FgZModule(0, {2, 12}));
  CHECK(parse_module("0").is_zero());
  CHECK(parse_module("Z + Z").free_rank() == 2);
  CHECK_THROWS_AS(parse_module("Z/1"), ParseError);
  CHECK_THROWS_AS(parse_module("Q"), ParseError);
  CHECK_THROWS_AS(parse_module("Z^0"), ParseError);
  CHECK_THROWS_AS(FgZModule(0, {4, 2}), DomainError);
  CHECK(FgZModule::from_cyclic_summands(1, {0, 1, 4}) == FgZModule(2, {4}));
  CHECK(min_generators(parse_module("Z + Z/2 + Z/2")) == 3);
  CHECK(torsion_submodule(parse_module("Z^3 + Z/5")) == FgZModule(0, {5}));
  CHECK(parse_module("Z/2 + Z/8").order() == 16);
}

TEST_CASE("hom validation reduces residues and rejects bad torsion entries") {
  const auto z4 = parse_module("Z/4"), z2 = parse_module("Z/2");
  CHECK_THROWS_AS(ZModuleHom(z2, z4, IntMatrix(0, 0), IntMatrix(0, 1), IntMatrix{{1}}), DomainError);
  const ZModuleHom f(z2, z4, IntMatrix(0, 0), IntMatrix(0, 1), IntMatrix{{6}});
  CHECK(f.torsion_block()(0, 0) == 2);
  CHECK_THROWS_AS(ZModuleHom(z2, z4, IntMatrix(1, 0), IntMatrix(0, 1), IntMatrix{{2}}), DomainError);
}

TEST_CASE("kernels and cokernels") {
  const auto z = parse_module("Z"), z2 = parse_module("Z/2");
  const ZModuleHom doubling(z, z, IntMatrix{{2}}, IntMatrix(1, 0), IntMatrix(0, 0));
  CHECK(hom_kernel(doubling).is_zero());
  CHECK(hom_cokernel(doubling) == z2);
  const ZModuleHom reduce(z, z2, IntMatrix(1, 0), IntMatrix{{1}}, IntMatrix(0, 1));
  CHECK(hom_kernel(reduce) == z);
  CHECK(hom_cokernel(reduce).is_zero());
  const auto m = parse_module("Z/4 + Z/2"), n = parse_module("Z/8");
  const ZModuleHom f(FgZModule(0, {2, 4}), n, IntMatrix(0, 0), IntMatrix(0, 1), IntMatrix{{4}, {2}});
  CHECK(f.source() == m);
  CHECK(hom_kernel(f) == FgZModule(0, {2}));
  CHECK(hom_cokernel(f) == FgZModule(0, {2}));
  CHECK(hom_kernel(ZModuleHom::identity(m)).is_zero());
  const auto z4 = parse_module("Z/4");
  const ZModuleHom twice(z4, z4, IntMatrix(0, 0), IntMatrix(0, 1), IntMatrix{{2}});
  CHECK(hom_kernel(twice) == FgZModule(0, {2}));
  CHECK(hom_cokernel(twice) == FgZModule(0, {2}));
  CHECK(min_generators(parse_module("Z/2 + Z/4")) == 2);
  CHECK(min_generators(FgZModule()) == 0);
  CHECK(hom_cokernel(ZModuleHom::zero(m, n)) == n);
}

TEST_CASE("kernel and cokernel agree with element enumeration") {
  const auto mods = oracle::torsion_modules(8);
  for (const auto& m : mods)
    for (const auto& n : mods)
      oracle::for_each_torsion_hom(m, n, [&](const ZModuleHom& f) {
        const auto e = oracle::enumerate_map(f, 8);
        CHECK(oracle::profile_of(hom_kernel(f), 8) == e.kernel);
        CHECK(oracle::profile_of(hom_cokernel(f), 8) == e.cokernel);
      });
}

TEST_CASE("candidate space covers the finite hom set exactly once") {
  const auto m = parse_module("Z/2 + Z/4"), n = parse_module("Z/4");
  const HomCandidateSpace space(m, n, 1);
  REQUIRE(space.size());
  CHECK(*space.size() == 8);
  CHECK(space.covers_all_homs());
  std::vector<ZModuleHom> seen;
  for (std::uint64_t i = 0; i < *space.size(); ++i) {
    const auto f = space.at(i);
    for (const auto& g : seen) CHECK_FALSE(f == g);
    seen.push_back(f);
  }
  CHECK_FALSE(HomCandidateSpace(parse_module("Z"), parse_module("Z^2"), 2).covers_all_homs());
}

TEST_CASE("free closed forms") {
  for (std::size_t a = 0; a <= 3; ++a)
    for (std::size_t b = 0; b <= 3; ++b) {
      const auto d = rank_distances(FgZModule(a, {}), FgZModule(b, {}));
      const std::uint64_t gap = a > b ? a - b : b - a;
      CHECK(d.d_rker.product == MultValue::exp(gap));
      CHECK(d.d_rcoker.product == MultValue::exp(gap));
      CHECK(d.d_rker.certificate == Certificate::Exact);
    }
}

TEST_CASE("Z against Z/2") {
  const auto d = rank_distances(parse_module("Z"), parse_module("Z/2"));
  CHECK(d.d_rker.product == MultValue::exp(2));
  CHECK(d.d_rcoker.product == MultValue::exp(1));
  CHECK(d.d_rker.certificate == Certificate::Exact);
  CHECK(d.d_rcoker.certificate == Certificate::Exact);
}

TEST_CASE("thread count does not change results") {
  const auto m = parse_module("Z + Z/2"), n = parse_module("Z/2 + Z/4");
  RankSearchOptions one, four;
  four.threads = 4;
  const auto a = rank_multiplicities(m, n, one), b = rank_multiplicities(m, n, four);
  CHECK(a.m_rker.value == b.m_rker.value);
  CHECK(a.m_rker.witness == b.m_rker.witness);
  CHECK(a.m_rcoker.witness == b.m_rcoker.witness);
}

TEST_CASE("a tiny candidate budget yields upper bounds") {
  RankSearchOptions opts;
  opts.max_candidates = 1;
  // The first candidate is the zero map.
  const auto v = parse_module("Z/2 + Z/2");
  const auto r = rank_multiplicities(v, v, opts);
  CHECK(r.m_rker.value == MultValue::exp(2));
  CHECK(r.m_rker.certificate == Certificate::UpperBound);
  const auto full = rank_multiplicities(v, v);
  CHECK(full.m_rker.value == MultValue::exp(0));
  CHECK(full.m_rker.certificate == Certificate::Exact);
  const auto s = rank_multiplicities(parse_module("Z/4"), parse_module("Z/2 + Z/2"), opts);
  CHECK(s.m_rker.certificate == Certificate::UpperBound);
}

TEST_CASE("composition of maps") {
  const auto z = parse_module("Z"), z6 = parse_module("Z/6");
  const ZModuleHom f(z, z, IntMatrix{{3}}, IntMatrix(1, 0), IntMatrix(0, 0));
  const ZModuleHom g(z, z6, IntMatrix(1, 0), IntMatrix{{2}}, IntMatrix(0, 1));
  const auto gf = compose(f, g);
  REQUIRE(gf);
  CHECK(gf->free_to_torsion_block()(0, 0) == 0);
  CHECK_FALSE(compose(g, f));
}

TEST_CASE("rank distances satisfy the pseudo-distance laws on an exact corpus") {
  const std::vector<FgZModule> corpus{parse_module("0"), parse_module("Z"), parse_module("Z^2"),
                                      parse_module("Z/2"), parse_module("Z/4"),
                                      parse_module("Z/2 + Z/2"), parse_module("Z + Z/2")};
  const auto triples = all_triples(corpus.size());
  for (auto kind : {RankMultKind::Kernel, RankMultKind::Cokernel}) {
    const ModuleInstance inst(kind);
    const Report r = check_pseudo_distance(inst, std::span<const FgZModule>(corpus),
                                           std::span<const std::array<std::size_t, 3>>(triples));
    CHECK(r.ok());
  }
}
