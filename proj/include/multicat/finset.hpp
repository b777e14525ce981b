#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multicat/category.hpp"

namespace multicat {

/// A map between finite sets {0..domain-1} -> {0..codomain-1}.
struct FinMap {
  std::uint64_t domain = 0;
  std::uint64_t codomain = 0;
  std::vector<std::uint64_t> images;

  bool operator==(const FinMap&) const = default;
};

/// Largest fiber size of a map (the map-multiplicity).
MultValue map_multiplicity(const FinMap& f);

/// m_map(X:Y) for |X| = x_size, |Y| = y_size: Count(ceil(x/y)) with the
/// block map i -> floor(i / ceil(x/y)) as witness. Throws DomainError for
/// empty sets.
WitnessedMultiplicity<FinMap> finset_multiplicity(std::uint64_t x_size, std::uint64_t y_size);

/// Non-empty finite sets (identified by cardinality) and all maps, measured
/// by map-multiplicity.
class FinSetInstance {
 public:
  using Object = std::uint64_t;
  using Morphism = FinMap;

  /// Searches enumerate every map while codomain^domain stays within
  /// `exhaustive_limit`; beyond that only the balanced block map is yielded
  /// and exactness rests on the pigeonhole lower bound.
  explicit FinSetInstance(std::uint64_t exhaustive_limit = 1'000'000)
      : exhaustive_limit_(exhaustive_limit) {}

  Family family() const { return Family::Count; }
  FinMap identity(std::uint64_t x) const;
  std::optional<FinMap> compose(const FinMap& f, const FinMap& g) const;
  MultValue multiplicity(const FinMap& f) const { return map_multiplicity(f); }
  SearchInfo search_info(std::uint64_t x, std::uint64_t y) const;
  void search(std::uint64_t x, std::uint64_t y, const MorphismSink<FinMap>& sink) const;
  std::string describe(const FinMap& f) const;

 private:
  std::uint64_t exhaustive_limit_;
};

}  // namespace multicat
