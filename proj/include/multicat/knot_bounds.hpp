#pragma once

// Bound inference for the knot multiplicity index m(K) = m(K:T) and for
// m(K1:K2), driven entirely by invariants the caller asserts. Nothing here
// looks at a knot diagram.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multicat/errors.hpp"
#include "multicat/mult_value.hpp"

namespace multicat {

/// Every field is an optional assertion; an empty optional means unknown.
struct KnotRecord {
  std::string name;
  std::optional<bool> is_trivial;
  /// K is a (2,p)-torus knot for some odd p != +-1. torus_p may carry the
  /// actual p; p = +-1 describes the trivial knot.
  std::optional<bool> is_torus_2p;
  std::optional<std::int64_t> torus_p;
  std::optional<std::uint64_t> braid_index;
  std::optional<std::uint64_t> bridge_index;
  std::optional<std::uint64_t> trunk;
  std::optional<bool> is_montesinos;
  std::optional<bool> is_connected_sum_of_2bridge;

  bool operator==(const KnotRecord&) const = default;
};

class InconsistentKnotError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Throws InconsistentKnotError when the record contradicts itself at the
/// field level (even p, trivial knot with braid index 3, ...).
void validate_record(const KnotRecord& rec);

enum class KnotRule {
  TrivialIffIndexOne,
  Torus2pIffIndexTwo,
  BraidThreeOr2BridgeSum,
  MontesinosAtMostFour,
  BraidIndexUpper,
  BridgeIndexUpper,
  TrunkHalfLower,
  EqualIffOne,
  TrivialIntoNontrivialOrCableIsTwo,
  TrunkRatioLower,
  TrunkUpper,
  ExactTrunk,
  ReducesToMultiplicityIndex,
};

/// Stable identifier, e.g. "braid-index-upper".
std::string rule_id(KnotRule rule);
/// The inequality or equivalence the rule applies, in plain notation.
std::string rule_statement(KnotRule rule);

struct RuleFiring {
  KnotRule rule;
  std::string effect;  ///< what changed, e.g. "upper <- 3"
};

struct BoundsResult {
  std::uint64_t lower = 1;
  std::optional<std::uint64_t> upper;  ///< nullopt: unbounded
  std::vector<RuleFiring> rules_applied;

  std::optional<std::uint64_t> exact() const {
    return (upper && *upper == lower) ? upper : std::nullopt;
  }
  bool contains(std::uint64_t v) const { return v >= lower && (!upper || v <= *upper); }
};

/// Tightest interval for m(K) reachable by chaining every rule whose
/// hypotheses are asserted. Throws InconsistentKnotError naming the rules
/// whose conclusions clash.
BoundsResult multiplicity_index_bounds(const KnotRecord& rec);

struct PairRelation {
  std::optional<bool> equal_up_to_reversal;
  std::optional<bool> k2_nontrivial;
  std::optional<bool> k2_is_companion_of_k1;
  std::optional<bool> k1_is_2cable_of_k2;

  bool operator==(const PairRelation&) const = default;
};

/// Bounds for m(K1:K2).
BoundsResult pair_multiplicity_facts(const KnotRecord& k1, const KnotRecord& k2,
                                     const PairRelation& relation);

struct UnknotDistanceBound {
  /// Lower bound on the product m(K:T) * m(T:K); empty when the record
  /// lacks the needed facts.
  std::optional<DistValue> lower_bound;
  std::string status;  ///< "ok", "trivial" or "insufficient data: ..."
};

/// For a nontrivial K with known trunk: m(K:T) * m(T:K) >= (trunk/2) * 2,
/// so the bound is Count(trunk). A trivial K is at distance 0.
UnknotDistanceBound distance_lower_bound_to_unknot(const KnotRecord& rec);

}  // namespace multicat
