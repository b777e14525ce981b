#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "multicat/finset.hpp"
#include "oracles/oracles.hpp"

using namespace multicat;

TEST_CASE("closed form matches the brute-force minimum") {
  for (std::uint64_t x = 1; x <= 7; ++x)
    for (std::uint64_t y = 1; y <= 6; ++y) {
      CAPTURE(x);
      CAPTURE(y);
      const auto w = finset_multiplicity(x, y);
      CHECK(w.value == MultValue::count(oracle::finset_min_fiber(x, y)));
      REQUIRE(w.witness);
      CHECK(map_multiplicity(*w.witness) == w.value);
    }
}

TEST_CASE("block witness") {
  const auto w = finset_multiplicity(7, 3);
  CHECK(w.value == MultValue::count(3));
  CHECK(w.witness->images == std::vector<std::uint64_t>{0, 0, 0, 1, 1, 1, 2});
  CHECK(finset_multiplicity(3, 7).value == MultValue::count(1));
  CHECK(finset_multiplicity(1000, 1).value == MultValue::count(1000));
  CHECK_THROWS_AS(finset_multiplicity(0, 3), DomainError);
  CHECK_THROWS_AS(finset_multiplicity(3, 0), DomainError);
}

TEST_CASE("searched value equals the closed form on both sides of the search limit") {
  const FinSetInstance small_limit(10);
  const FinSetInstance full;
  for (std::uint64_t x = 1; x <= 6; ++x)
    for (std::uint64_t y = 1; y <= 6; ++y) {
      const auto expect = finset_multiplicity(x, y).value;
      const auto a = object_multiplicity(small_limit, x, y);
      const auto b = object_multiplicity(full, x, y);
      CHECK(a.value == expect);
      CHECK(b.value == expect);
      CHECK(a.certificate == Certificate::Exact);
      CHECK(b.certificate == Certificate::Exact);
    }
}

TEST_CASE("composition and identities") {
  const FinSetInstance sets;
  const FinMap f{4, 3, {0, 0, 1, 2}};
  const FinMap g{3, 2, {1, 1, 0}};
  const auto gf = sets.compose(f, g);
  REQUIRE(gf);
  CHECK(gf->images == std::vector<std::uint64_t>{1, 1, 1, 0});
  CHECK_FALSE(sets.compose(g, f));
  CHECK(sets.multiplicity(sets.identity(5)).is_one());
  CHECK(map_multiplicity(*gf) <= mult_product(map_multiplicity(f), map_multiplicity(g)));
}

TEST_CASE("distance is ceil(x/y) when x >= y") {
  const FinSetInstance sets;
  CHECK(multiplicity_distance(sets, 7u, 3u).product == MultValue::count(3));
  CHECK(multiplicity_distance(sets, 3u, 7u).product == MultValue::count(3));
  CHECK(multiplicity_distance(sets, 4u, 4u).is_zero());
}
