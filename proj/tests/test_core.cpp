#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "multicat/category.hpp"
#include "multicat/fingroup.hpp"
#include "multicat/finset.hpp"
#include "multicat/pidmodule.hpp"
#include "multicat/mult_value.hpp"

using namespace multicat;

TEST_CASE("MultValue construction and rendering") {
  CHECK(to_string(MultValue::count(3)) == "3");
  CHECK(to_string(MultValue::exp(2)) == "e^2");
  CHECK(to_string(MultValue::infinity()) == "inf");
  CHECK_THROWS_AS(MultValue::count(0), std::invalid_argument);
  CHECK(MultValue::one(Family::Count) == MultValue::count(1));
  CHECK(MultValue::one(Family::Exp) == MultValue::exp(0));
  CHECK(MultValue::exp(0).is_one());
  CHECK_FALSE(MultValue::infinity().is_one());
  CHECK_THROWS_AS((void)MultValue::exp(1).count_value(), std::logic_error);
}

TEST_CASE("MultValue order and products") {
  CHECK(MultValue::count(2) < MultValue::count(3));
  CHECK(MultValue::exp(5) < MultValue::infinity());
  CHECK(MultValue::count(1000) < MultValue::infinity());
  CHECK_THROWS_AS((void)(MultValue::count(2) < MultValue::exp(1)), FamilyMismatchError);

  CHECK(mult_product(MultValue::count(3), MultValue::count(4)) == MultValue::count(12));
  CHECK(mult_product(MultValue::exp(3), MultValue::exp(4)) == MultValue::exp(7));
  CHECK(mult_product(MultValue::infinity(), MultValue::count(2)).is_infinite());
  CHECK_THROWS_AS(mult_product(MultValue::count(2), MultValue::exp(2)), FamilyMismatchError);
  CHECK_THROWS_AS(mult_product(MultValue::count(1ull << 40), MultValue::count(1ull << 40)),
                  std::overflow_error);
}

TEST_CASE("log values") {
  CHECK(MultValue::count(1).log_value() == 0.0);
  CHECK(MultValue::exp(3).log_value() == 3.0);
  CHECK(MultValue::count(4).log_value() == doctest::Approx(std::log(4.0)));
  CHECK(std::isinf(MultValue::infinity().log_value()));
  const DistValue d = DistValue::from_product(MultValue::count(4));
  CHECK(d.display_ln == doctest::Approx(1.386294).epsilon(1e-6));
  CHECK_FALSE(d.is_zero());
  CHECK(DistValue::from_product(MultValue::exp(0)).is_zero());
}

TEST_CASE("certificates combine to the weaker one") {
  CHECK(weaker(Certificate::Exact, Certificate::Exact) == Certificate::Exact);
  CHECK(weaker(Certificate::Exact, Certificate::UpperBound) == Certificate::UpperBound);
  CHECK(weaker(Certificate::UpperBound, Certificate::Exact) == Certificate::UpperBound);
  CHECK(to_string(Certificate::Exact) == "exact");
  CHECK(to_string(Certificate::UpperBound) == "upper_bound");
}

TEST_CASE("product laws on random values") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> pick(1, 1000);
  for (int i = 0; i < 500; ++i) {
    const auto a = MultValue::count(pick(rng)), b = MultValue::count(pick(rng)),
               c = MultValue::count(pick(rng));
    CHECK(mult_product(a, b) == mult_product(b, a));
    CHECK(mult_product(mult_product(a, b), c) == mult_product(a, mult_product(b, c)));
    CHECK(mult_product(a, MultValue::count(1)) == a);
    CHECK(a <= mult_product(a, b));
  }
}

namespace {

// Counts every call so the early-exit contract can be observed.
struct CountingInstance {
  using Object = int;
  using Morphism = int;
  mutable int yielded = 0;
  bool exhaustive = true;
  std::optional<MultValue> bound;

  Family family() const { return Family::Count; }
  int identity(int) const { return 1; }
  std::optional<int> compose(const int& f, const int& g) const { return f * g; }
  MultValue multiplicity(const int& f) const { return MultValue::count(static_cast<std::uint64_t>(f)); }
  SearchInfo search_info(int, int) const { return {exhaustive, bound}; }
  void search(int, int, const MorphismSink<int>& sink) const {
    for (int v : {5, 3, 2, 3, 2, 4}) {
      ++yielded;
      if (!sink(v, multiplicity(v))) return;
    }
  }
  std::string describe(const int& f) const { return std::to_string(f); }
};

struct BrokenIdentity : CountingInstance {
  int identity(int) const { return 2; }
};

}  // namespace

TEST_CASE("object_multiplicity keeps the first minimum and stops at the lower bound") {
  CountingInstance inst;
  auto w = object_multiplicity(inst, 0, 0);
  CHECK(w.value == MultValue::count(2));
  CHECK(w.witness == 2);
  CHECK(w.certificate == Certificate::Exact);
  CHECK(inst.yielded == 6);

  inst.yielded = 0;
  inst.bound = MultValue::count(3);
  w = object_multiplicity(inst, 0, 0);
  CHECK(w.value == MultValue::count(3));
  CHECK(inst.yielded == 2);

  inst.exhaustive = false;
  inst.bound = std::nullopt;
  CHECK(object_multiplicity(inst, 0, 0).certificate == Certificate::UpperBound);
  inst.bound = MultValue::count(2);
  CHECK(object_multiplicity(inst, 0, 0).certificate == Certificate::Exact);
}

TEST_CASE("axiom audits report violations as data") {
  BrokenIdentity bad;
  const std::vector<int> objects{0};
  const std::vector<std::pair<int, int>> pairs{{2, 3}};
  const Report r = check_multiplicity_axioms(bad, std::span<const int>(objects),
                                             std::span<const std::pair<int, int>>(pairs));
  CHECK_FALSE(r.ok());
  CHECK(r.checks == 2);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].kind == "identity");

  const FinSetInstance sets;
  const std::vector<std::uint64_t> sizes{1, 2, 3, 5};
  const auto triples = all_triples(sizes.size());
  const Report d = check_pseudo_distance(sets, std::span<const std::uint64_t>(sizes),
                                         std::span<const std::array<std::size_t, 3>>(triples));
  CHECK(d.ok());
  CHECK(d.checks == triples.size() * 7);
}

TEST_CASE("pseudo-distance audit refuses upper bounds") {
  CountingInstance inst;
  inst.exhaustive = false;
  const std::vector<int> objects{0, 1};
  const auto triples = all_triples(2);
  CHECK_THROWS_AS(check_pseudo_distance(inst, std::span<const int>(objects),
                                        std::span<const std::array<std::size_t, 3>>(triples)),
                  InconclusiveError);
}

TEST_CASE("every shipped instance has m(X:X) = 1") {
  const FinSetInstance sets;
  for (std::uint64_t x : {1, 2, 5, 40}) CHECK(object_multiplicity(sets, x, x).value.is_one());
  for (auto kind : {GroupMultKind::Kernel, GroupMultKind::Cokernel}) {
    const GroupInstance groups(kind);
    for (const auto& g : small_group_corpus(8)) CHECK(object_multiplicity(groups, g, g).value.is_one());
  }
  for (auto kind : {RankMultKind::Kernel, RankMultKind::Cokernel}) {
    const ModuleInstance modules(kind);
    for (const char* m : {"0", "Z", "Z^2 + Z/6", "Z/2 + Z/4"}) {
      const auto w = object_multiplicity(modules, parse_module(m), parse_module(m));
      CHECK(w.value.is_one());
      CHECK(w.certificate == Certificate::Exact);
    }
  }
}

TEST_CASE("object multiplicities compose: m(X:Z) <= m(X:Y) m(Y:Z)") {
  const FinSetInstance sets;
  for (std::uint64_t x = 1; x <= 6; ++x)
    for (std::uint64_t y = 1; y <= 6; ++y)
      for (std::uint64_t z = 1; z <= 6; ++z)
        CHECK(object_multiplicity(sets, x, z).value <=
              mult_product(object_multiplicity(sets, x, y).value, object_multiplicity(sets, y, z).value));
  const GroupInstance groups(GroupMultKind::Kernel);
  const auto corpus = small_group_corpus(6);
  for (const auto& x : corpus)
    for (const auto& y : corpus)
      for (const auto& z : corpus)
        CHECK(object_multiplicity(groups, x, z).value <=
              mult_product(object_multiplicity(groups, x, y).value, object_multiplicity(groups, y, z).value));
}
