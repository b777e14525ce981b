#pragma once

// Generic multiplicity framework: any type modelling CategoryInstance gets
// minimized multiplicities, multiplicity distances and axiom audits.

#include <array>
#include <concepts>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "multicat/errors.hpp"
#include "multicat/mult_value.hpp"

namespace multicat {

/// What an instance promises about morphism_search(X, Y).
struct SearchInfo {
  /// Every morphism X -> Y is (up to multiplicity-preserving equivalence)
  /// yielded, so the minimum over the stream is exact.
  bool exhaustive = true;
  /// A value no morphism X -> Y can beat. Reaching it ends the search and
  /// proves optimality even for heuristic searches.
  std::optional<MultValue> lower_bound;
};

template <class Morphism>
struct WitnessedMultiplicity {
  MultValue value = MultValue::infinity();
  std::optional<Morphism> witness;
  Certificate certificate = Certificate::Exact;
};

/// Called once per morphism found; return false to stop the search.
template <class Morphism>
using MorphismSink = std::function<bool(const Morphism&, const MultValue&)>;

/// compose(f, g) is g after f and returns nullopt when the codomain of f is
/// not the domain of g.
template <class I>
concept CategoryInstance = requires(const I& inst, const typename I::Object& x,
                                    const typename I::Morphism& f,
                                    const MorphismSink<typename I::Morphism>& sink) {
  typename I::Object;
  typename I::Morphism;
  { inst.family() } -> std::same_as<Family>;
  { inst.identity(x) } -> std::convertible_to<typename I::Morphism>;
  { inst.compose(f, f) } -> std::convertible_to<std::optional<typename I::Morphism>>;
  { inst.multiplicity(f) } -> std::convertible_to<MultValue>;
  { inst.search_info(x, x) } -> std::convertible_to<SearchInfo>;
  inst.search(x, x, sink);
  { inst.describe(f) } -> std::convertible_to<std::string>;
};

/// m(X:Y): the least multiplicity over the instance's morphism search.
/// Infinity without witness when nothing is found. Ties keep the first
/// morphism yielded, so deterministic searches give deterministic witnesses.
template <CategoryInstance I>
WitnessedMultiplicity<typename I::Morphism> object_multiplicity(const I& inst,
                                                                const typename I::Object& x,
                                                                const typename I::Object& y) {
  const SearchInfo info = inst.search_info(x, y);
  WitnessedMultiplicity<typename I::Morphism> best;
  bool hit_lower_bound = false;
  inst.search(x, y, [&](const typename I::Morphism& f, const MultValue& v) {
    if (v < best.value) {
      best.value = v;
      best.witness = f;
    }
    if (info.lower_bound && best.value == *info.lower_bound) {
      hit_lower_bound = true;
      return false;
    }
    return true;
  });
  best.certificate =
      (info.exhaustive || hit_lower_bound) ? Certificate::Exact : Certificate::UpperBound;
  return best;
}

/// d_m(X, Y) as the exact product m(X:Y) * m(Y:X) with the weaker of the two
/// certificates.
template <CategoryInstance I>
DistValue multiplicity_distance(const I& inst, const typename I::Object& x,
                                const typename I::Object& y) {
  const auto xy = object_multiplicity(inst, x, y);
  const auto yx = object_multiplicity(inst, y, x);
  return DistValue::from_product(mult_product(xy.value, yx.value),
                                 weaker(xy.certificate, yx.certificate));
}

/// Translation of objects and morphisms of a source category into a base
/// instance, i.e. the object and morphism parts of a functor.
template <class F, class Source, class Base>
concept FunctorInto = requires(const F& fn, const typename Source::Object& x,
                               const typename Source::Morphism& f) {
  { fn.map_object(x) } -> std::convertible_to<typename Base::Object>;
  { fn.map_morphism(f) } -> std::convertible_to<typename Base::Morphism>;
};

/// Pull-back multiplicity: the source category's objects, morphisms and
/// search, measured by the base multiplicity of the translated morphism.
template <CategoryInstance Source, CategoryInstance Base, FunctorInto<Source, Base> Functor>
class PullbackInstance {
 public:
  using Object = typename Source::Object;
  using Morphism = typename Source::Morphism;

  PullbackInstance(Source source, Base base, Functor functor)
      : source_(std::move(source)), base_(std::move(base)), functor_(std::move(functor)) {}

  Family family() const { return base_.family(); }
  Morphism identity(const Object& x) const { return source_.identity(x); }
  std::optional<Morphism> compose(const Morphism& f, const Morphism& g) const {
    return source_.compose(f, g);
  }
  MultValue multiplicity(const Morphism& f) const {
    return base_.multiplicity(functor_.map_morphism(f));
  }
  SearchInfo search_info(const Object& x, const Object& y) const {
    // The source's lower bound speaks about the source multiplicity.
    return SearchInfo{source_.search_info(x, y).exhaustive, std::nullopt};
  }
  void search(const Object& x, const Object& y, const MorphismSink<Morphism>& sink) const {
    source_.search(x, y, [&](const Morphism& f, const MultValue&) {
      return sink(f, multiplicity(f));
    });
  }
  std::string describe(const Morphism& f) const { return source_.describe(f); }

  const Functor& functor() const { return functor_; }

 private:
  Source source_;
  Base base_;
  Functor functor_;
};

template <CategoryInstance Source, CategoryInstance Base, FunctorInto<Source, Base> Functor>
PullbackInstance<Source, Base, Functor> pullback_instance(Source source, Base base,
                                                          Functor functor) {
  return PullbackInstance<Source, Base, Functor>(std::move(source), std::move(base),
                                                 std::move(functor));
}

struct Violation {
  std::string kind;
  std::string detail;
};

struct Report {
  std::vector<Violation> violations;
  std::size_t checks = 0;

  bool ok() const noexcept { return violations.empty(); }
  void add(std::string kind, std::string detail) {
    violations.push_back({std::move(kind), std::move(detail)});
  }
  void merge(const Report& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    checks += other.checks;
  }
};

/// Audits m(id) = 1 on `objects` and m(g o f) <= m(f) m(g) on `pairs`
/// (f first). Violations are data, not errors.
template <CategoryInstance I>
Report check_multiplicity_axioms(
    const I& inst, std::span<const typename I::Object> objects,
    std::span<const std::pair<typename I::Morphism, typename I::Morphism>> pairs) {
  Report report;
  for (const auto& x : objects) {
    ++report.checks;
    const auto id = inst.identity(x);
    const MultValue m = inst.multiplicity(id);
    if (!m.is_one()) report.add("identity", "m(" + inst.describe(id) + ") = " + to_string(m));
  }
  for (const auto& [f, g] : pairs) {
    ++report.checks;
    const auto gf = inst.compose(f, g);
    if (!gf) {
      report.add("not_composable", inst.describe(f) + " then " + inst.describe(g));
      continue;
    }
    const MultValue lhs = inst.multiplicity(*gf);
    const MultValue rhs = mult_product(inst.multiplicity(f), inst.multiplicity(g));
    if (lhs > rhs) {
      report.add("submultiplicativity", "m(" + inst.describe(*gf) + ") = " + to_string(lhs) +
                                            " > " + to_string(rhs) + " for f = " +
                                            inst.describe(f) + ", g = " + inst.describe(g));
    }
  }
  return report;
}

/// Audits the pseudo-distance laws on every index triple (x, y, z) into
/// `objects`, comparing exact products. Throws InconclusiveError if any
/// needed multiplicity is only an upper bound.
template <CategoryInstance I>
Report check_pseudo_distance(const I& inst, std::span<const typename I::Object> objects,
                             std::span<const std::array<std::size_t, 3>> triples) {
  std::map<std::pair<std::size_t, std::size_t>, MultValue> cache;
  auto mult = [&](std::size_t a, std::size_t b) -> MultValue {
    const auto key = std::make_pair(a, b);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const auto w = object_multiplicity(inst, objects[a], objects[b]);
    if (w.certificate != Certificate::Exact)
      throw InconclusiveError("m(" + std::to_string(a) + ":" + std::to_string(b) +
                              ") is only an upper bound");
    cache.emplace(key, w.value);
    return w.value;
  };
  auto product = [&](std::size_t a, std::size_t b) { return mult_product(mult(a, b), mult(b, a)); };
  auto name = [](std::size_t a, std::size_t b) {
    return "d(" + std::to_string(a) + "," + std::to_string(b) + ")";
  };

  Report report;
  const MultValue one = MultValue::one(inst.family());
  for (const auto& [x, y, z] : triples) {
    for (std::size_t o : {x, y, z}) {
      ++report.checks;
      if (const MultValue p = product(o, o); !p.is_one())
        report.add("zero_self_distance", name(o, o) + " has product " + to_string(p));
    }
    for (auto [a, b] : {std::pair{x, y}, std::pair{y, z}, std::pair{x, z}}) {
      ++report.checks;
      const MultValue ab = product(a, b);
      const MultValue ba = mult_product(mult(b, a), mult(a, b));
      if (ab < one) report.add("nonnegativity", name(a, b) + " has product " + to_string(ab));
      if (ab != ba)
        report.add("symmetry", name(a, b) + " = " + to_string(ab) + " but " + name(b, a) +
                                   " = " + to_string(ba));
    }
    ++report.checks;
    const MultValue lhs = product(x, z);
    const MultValue rhs = mult_product(product(x, y), product(y, z));
    if (lhs > rhs)
      report.add("triangle", name(x, z) + " product " + to_string(lhs) + " exceeds " +
                                 to_string(rhs) + " via " + std::to_string(y));
  }
  return report;
}

/// Every ordered triple over `count` objects.
inline std::vector<std::array<std::size_t, 3>> all_triples(std::size_t count) {
  std::vector<std::array<std::size_t, 3>> out;
  out.reserve(count * count * count);
  for (std::size_t x = 0; x < count; ++x)
    for (std::size_t y = 0; y < count; ++y)
      for (std::size_t z = 0; z < count; ++z) out.push_back({x, y, z});
  return out;
}

}  // namespace multicat
