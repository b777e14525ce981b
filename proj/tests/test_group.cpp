#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "multicat/fingroup.hpp"
#include "oracles/oracles.hpp"

using namespace multicat;

TEST_CASE("table validation names the failed axiom") {
  CHECK_NOTHROW(validate_group(2, {{0, 1}, {1, 0}}));
  CHECK_THROWS_AS(validate_group(2, {{0, 1}, {1, 1}}), GroupAxiomError);
  CHECK_THROWS_AS(validate_group(2, {{0, 2}, {1, 0}}), GroupAxiomError);
  // Identity at index 1 is renumbered to 0.
  const FiniteGroup g = validate_group(2, {{1, 0}, {0, 1}});
  CHECK(g.mul(0, 1) == 1);
  CHECK(g.mul(1, 1) == 0);
  // A Latin square that is not associative.
  const std::vector<std::vector<Element>> loop{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_WITH_AS(validate_group(5, loop), doctest::Contains("associativ"), GroupAxiomError);
}

TEST_CASE("catalog orders and parsing") {
  CHECK(cyclic_group(6)->order() == 6);
  CHECK(dihedral_group(4)->order() == 8);
  CHECK(dicyclic_group(3)->order() == 12);
  CHECK(quaternion_group()->order() == 8);
  CHECK(alternating_group_4()->order() == 12);
  CHECK(group_from_spec("product:cyclic:2,cyclic:3")->order() == 6);
  CHECK(is_isomorphic(group_from_spec("product:cyclic:2,cyclic:3"), cyclic_group(6)));
  CHECK_FALSE(is_isomorphic(klein_four_group(), cyclic_group(4)));
  CHECK_FALSE(is_isomorphic(quaternion_group(), dihedral_group(4)));
  CHECK_THROWS_AS(group_from_spec("cyclic:"), DomainError);
  CHECK_THROWS_AS(group_from_spec("mystery"), DomainError);
  std::istringstream in("2\n0 1\n1 0\n");
  CHECK(is_isomorphic(parse_group(in), cyclic_group(2)));
}

TEST_CASE("corpus of orders up to 12 has the known census") {
  const auto corpus = small_group_corpus(12);
  CHECK(corpus.size() == 24);
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = i + 1; j < corpus.size(); ++j)
      CHECK_FALSE(is_isomorphic(corpus[i], corpus[j]));
}

TEST_CASE("hom enumeration agrees with the all-functions filter") {
  const auto corpus = small_group_corpus(4);
  for (const auto& g : corpus)
    for (const auto& h : corpus)
      CHECK(enumerate_homs(g, h).size() == oracle::count_homs_by_filter(*g, *h));
  CHECK(enumerate_homs(klein_four_group(), klein_four_group()).size() == 16);
}

TEST_CASE("homomorphism checks and subgroups") {
  const auto c4 = cyclic_group(4);
  const auto c2 = cyclic_group(2);
  CHECK_THROWS_AS(GroupHom(c2, c4, {0, 1}), DomainError);
  const GroupHom f(c4, c2, {0, 1, 0, 1});
  CHECK(f.kernel().order() == 2);
  CHECK(f.image_subgroup().order() == 2);
  CHECK(f.is_surjective());
  CHECK_FALSE(f.is_injective());
  CHECK(kernel_multiplicity(f) == MultValue::count(2));
  CHECK(cokernel_multiplicity(f) == MultValue::count(1));
  CHECK_THROWS_AS(Subgroup(c4, {0, 1}), DomainError);
  CHECK(generated_closure(*c4, {2}) == std::vector<Element>{0, 2});
  CHECK_FALSE(compose(f, f));
}

TEST_CASE("kernel and cokernel counts on every hom of the order-8 corpus") {
  const auto corpus = small_group_corpus(8);
  for (const auto& g : corpus)
    for (const auto& h : corpus)
      for_each_hom(g, h, [&](const GroupHom& f) {
        const auto k = f.kernel().order();
        const auto im = f.image_subgroup().order();
        CHECK(k * im == g->order());
        CHECK(k * h->order() == g->order() * cokernel_multiplicity(f).count_value());
        return true;
      });
}

TEST_CASE("kernel and cokernel distances coincide") {
  const auto corpus = small_group_corpus(8);
  const GroupInstance ker(GroupMultKind::Kernel), coker(GroupMultKind::Cokernel);
  for (const auto& g : corpus)
    for (const auto& h : corpus) {
      const auto a = multiplicity_distance(ker, g, h);
      const auto b = multiplicity_distance(coker, g, h);
      CHECK(a.product == b.product);
      CHECK(a.certificate == Certificate::Exact);
      CHECK(a.is_zero() == is_isomorphic(g, h));
    }
}

TEST_CASE("two-way injections only between isomorphic groups") {
  const auto corpus = small_group_corpus(8);
  for (const auto& g : corpus)
    for (const auto& h : corpus) {
      if (weakly_isomorphic(g, h)) CHECK(is_isomorphic(g, h));
      if (co_weakly_isomorphic(g, h)) CHECK(is_isomorphic(g, h));
    }
}

TEST_CASE("generating sets generate") {
  for (const auto& g : small_group_corpus(12))
    CHECK(generated_closure(*g, generating_set(*g)).size() == g->order());
}

TEST_CASE("both multiplicities are submultiplicative on every composable pair") {
  const auto corpus = small_group_corpus(6);
  std::vector<std::vector<std::vector<GroupHom>>> homs(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = 0; j < corpus.size(); ++j) homs[i].push_back(enumerate_homs(corpus[i], corpus[j]));
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = 0; j < corpus.size(); ++j)
      for (std::size_t k = 0; k < corpus.size(); ++k)
        for (const auto& f : homs[i][j])
          for (const auto& g : homs[j][k]) {
            ++pairs;
            const auto gf = compose(f, g);
            REQUIRE(gf);
            const bool ker_ok = kernel_multiplicity(*gf) <=
                                mult_product(kernel_multiplicity(f), kernel_multiplicity(g));
            const bool coker_ok = cokernel_multiplicity(*gf) <=
                                  mult_product(cokernel_multiplicity(f), cokernel_multiplicity(g));
            if (!ker_ok || !coker_ok) FAIL("submultiplicativity fails");
          }
  CHECK(pairs == 3811);
}
