#include "multicat/finset.hpp"

#include <algorithm>

namespace multicat {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0); }

void require_nonempty(std::uint64_t x_size, std::uint64_t y_size) {
  if (x_size == 0 || y_size == 0)
    throw DomainError("finite sets must be non-empty (got sizes " + std::to_string(x_size) +
                      " and " + std::to_string(y_size) + ")");
}

// codomain^domain, or nullopt once it passes `limit`.
std::optional<std::uint64_t> bounded_power(std::uint64_t base, std::uint64_t exp,
                                           std::uint64_t limit) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > limit / base) return std::nullopt;
    out *= base;
  }
  return out;
}

}  // namespace

MultValue map_multiplicity(const FinMap& f) {
  if (f.domain == 0) return MultValue::count(1);
  std::vector<std::uint64_t> fiber(f.codomain, 0);
  std::uint64_t worst = 0;
  for (std::uint64_t y : f.images) worst = std::max(worst, ++fiber.at(y));
  return MultValue::count(worst);
}

WitnessedMultiplicity<FinMap> finset_multiplicity(std::uint64_t x_size, std::uint64_t y_size) {
  require_nonempty(x_size, y_size);
  const std::uint64_t block = ceil_div(x_size, y_size);
  FinMap witness{x_size, y_size, std::vector<std::uint64_t>(x_size)};
  for (std::uint64_t i = 0; i < x_size; ++i) witness.images[i] = i / block;
  return {MultValue::count(block), std::move(witness), Certificate::Exact};
}

FinMap FinSetInstance::identity(std::uint64_t x) const {
  FinMap id{x, x, std::vector<std::uint64_t>(x)};
  for (std::uint64_t i = 0; i < x; ++i) id.images[i] = i;
  return id;
}

std::optional<FinMap> FinSetInstance::compose(const FinMap& f, const FinMap& g) const {
  if (f.codomain != g.domain) return std::nullopt;
  FinMap gf{f.domain, g.codomain, std::vector<std::uint64_t>(f.domain)};
  for (std::uint64_t i = 0; i < f.domain; ++i) gf.images[i] = g.images[f.images[i]];
  return gf;
}

SearchInfo FinSetInstance::search_info(std::uint64_t x, std::uint64_t y) const {
  require_nonempty(x, y);
  // Pigeonhole: some fiber holds at least ceil(x/y) elements.
  return SearchInfo{bounded_power(y, x, exhaustive_limit_).has_value(),
                    MultValue::count(ceil_div(x, y))};
}

void FinSetInstance::search(std::uint64_t x, std::uint64_t y,
                            const MorphismSink<FinMap>& sink) const {
  require_nonempty(x, y);
  if (!bounded_power(y, x, exhaustive_limit_)) {
    auto w = finset_multiplicity(x, y);
    sink(*w.witness, w.value);
    return;
  }
  // Odometer over all y^x maps in lexicographic order.
  FinMap f{x, y, std::vector<std::uint64_t>(x, 0)};
  while (true) {
    if (!sink(f, map_multiplicity(f))) return;
    std::uint64_t pos = x;
    while (pos > 0) {
      --pos;
      if (++f.images[pos] < y) break;
      f.images[pos] = 0;
      if (pos == 0) return;
    }
  }
}

std::string FinSetInstance::describe(const FinMap& f) const {
  std::string out = "[" + std::to_string(f.domain) + "->" + std::to_string(f.codomain) + ":";
  for (std::size_t i = 0; i < f.images.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(f.images[i]);
  }
  return out + "]";
}

}  // namespace multicat
