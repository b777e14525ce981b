#include "multicat/knot_bounds.hpp"

#include <cstdlib>

namespace multicat {

std::string rule_id(KnotRule rule) {
  switch (rule) {
    case KnotRule::TrivialIffIndexOne: return "trivial-iff-index-one";
    case KnotRule::Torus2pIffIndexTwo: return "torus-2p-iff-index-two";
    case KnotRule::BraidThreeOr2BridgeSum: return "braid-three-or-2bridge-sum";
    case KnotRule::MontesinosAtMostFour: return "montesinos-at-most-four";
    case KnotRule::BraidIndexUpper: return "braid-index-upper";
    case KnotRule::BridgeIndexUpper: return "bridge-index-upper";
    case KnotRule::TrunkHalfLower: return "trunk-half-lower";
    case KnotRule::EqualIffOne: return "equal-iff-one";
    case KnotRule::TrivialIntoNontrivialOrCableIsTwo: return "trivial-source-or-2cable-is-two";
    case KnotRule::TrunkRatioLower: return "trunk-ratio-lower";
    case KnotRule::TrunkUpper: return "trunk-upper";
    case KnotRule::ExactTrunk: return "exact-trunk";
    case KnotRule::ReducesToMultiplicityIndex: return "reduces-to-multiplicity-index";
  }
  return "unknown";
}

std::string rule_statement(KnotRule rule) {
  switch (rule) {
    case KnotRule::TrivialIffIndexOne: return "m(K) = 1 <=> K trivial";
    case KnotRule::Torus2pIffIndexTwo: return "m(K) = 2 <=> K is a (2,p)-torus knot, p odd, p != +-1";
    case KnotRule::BraidThreeOr2BridgeSum:
      return "m(K) = 3 <=> braid(K) = 3 or K is a connected sum of 2-bridge knots";
    case KnotRule::MontesinosAtMostFour: return "K Montesinos => m(K) <= 4";
    case KnotRule::BraidIndexUpper: return "m(K) <= braid(K)";
    case KnotRule::BridgeIndexUpper: return "m(K) <= 2 bridge(K) - 1";
    case KnotRule::TrunkHalfLower: return "m(K) >= ceil(trunk(K) / 2)";
    case KnotRule::EqualIffOne: return "m(K1:K2) = 1 <=> K1 = K2 or K1 = -K2";
    case KnotRule::TrivialIntoNontrivialOrCableIsTwo:
      return "m(K1:K2) = 2 <=> K1 trivial and K2 nontrivial, or K1 nontrivial and a (2,p)-cable "
             "of K2 or -K2";
    case KnotRule::TrunkRatioLower: return "m(K1:K2) >= ceil(trunk(K1) / trunk(K2))";
    case KnotRule::TrunkUpper: return "m(K1:K2) <= trunk(K1)";
    case KnotRule::ExactTrunk:
      return "K2 nontrivial, K2 != +-K1, K2 not a companion of K1 => m(K1:K2) = trunk(K1)";
    case KnotRule::ReducesToMultiplicityIndex: return "K2 trivial => m(K1:K2) = m(K1)";
  }
  return "";
}

void validate_record(const KnotRecord& rec) {
  auto fail = [&](const std::string& what) {
    throw InconsistentKnotError("knot record '" + rec.name + "': " + what);
  };
  if (rec.torus_p) {
    const std::int64_t p = *rec.torus_p;
    if (p % 2 == 0) fail("torus_2p must be odd, got " + std::to_string(p));
    const bool nontrivial_torus = p != 1 && p != -1;
    if (rec.is_torus_2p && *rec.is_torus_2p != nontrivial_torus)
      fail("torus_2p value " + std::to_string(p) + " contradicts the torus assertion");
    if (rec.is_trivial && *rec.is_trivial == nontrivial_torus)
      fail("is_trivial contradicts torus_2p = " + std::to_string(p));
  }
  if (rec.braid_index && *rec.braid_index == 0) fail("braid_index must be at least 1");
  if (rec.bridge_index && *rec.bridge_index == 0) fail("bridge_index must be at least 1");
  if (rec.trunk && *rec.trunk < 2) fail("trunk must be at least 2");
  if (rec.is_trivial == true && rec.is_torus_2p == true)
    fail("a trivial knot is not a (2,p)-torus knot with p != +-1");
  const bool index_one = rec.braid_index == 1u || rec.bridge_index == 1u;
  if (index_one && rec.is_trivial == false)
    fail("braid or bridge index 1 forces the trivial knot");
  if (rec.is_trivial == true) {
    if (rec.braid_index && *rec.braid_index > 1)
      fail("trivial knot with braid_index " + std::to_string(*rec.braid_index));
    if (rec.bridge_index && *rec.bridge_index > 1)
      fail("trivial knot with bridge_index " + std::to_string(*rec.bridge_index));
  }
}

namespace {

std::string bound_text(std::uint64_t v) { return std::to_string(v); }

class Interval {
 public:
  explicit Interval(std::string subject) : subject_(std::move(subject)) {}

  void raise_lower(std::uint64_t v, KnotRule rule) {
    if (v <= r_.lower) return;
    r_.lower = v;
    lower_by_ = rule;
    r_.rules_applied.push_back({rule, "lower <- " + bound_text(v)});
    changed_ = true;
    check();
  }

  void cut_upper(std::uint64_t v, KnotRule rule) {
    if (r_.upper && v >= *r_.upper) return;
    r_.upper = v;
    upper_by_ = rule;
    r_.rules_applied.push_back({rule, "upper <- " + bound_text(v)});
    changed_ = true;
    check();
  }

  void fix(std::uint64_t v, KnotRule rule) {
    raise_lower(v, rule);
    cut_upper(v, rule);
  }

  // Removes v when it sits at an end of the interval.
  void exclude(std::uint64_t v, KnotRule rule) {
    if (r_.lower == v) raise_lower(v + 1, rule);
    if (r_.upper && *r_.upper == v) {
      if (v <= 1) conflict(rule, rule, "excludes the only remaining value");
      cut_upper(v - 1, rule);
    }
  }

  bool excludes(std::uint64_t v) const { return !r_.contains(v); }
  const BoundsResult& result() const { return r_; }
  BoundsResult take() { return std::move(r_); }

  bool take_changed() {
    const bool c = changed_;
    changed_ = false;
    return c;
  }

  [[noreturn]] void conflict(KnotRule a, KnotRule b, const std::string& detail) const {
    throw InconsistentKnotError(subject_ + ": rules " + rule_id(a) + " and " + rule_id(b) +
                                " conflict (" + detail + ")");
  }

  void set_fact(std::optional<bool>& fact, bool value, KnotRule rule, const char* name) {
    if (fact && *fact != value)
      throw InconsistentKnotError(subject_ + ": rule " + rule_id(rule) + " derives " + name +
                                  " = " + (value ? "true" : "false") +
                                  ", contradicting the record");
    if (!fact) {
      fact = value;
      changed_ = true;
    }
  }

 private:
  void check() const {
    if (r_.upper && r_.lower > *r_.upper)
      conflict(*lower_by_, *upper_by_,
               "lower " + bound_text(r_.lower) + " exceeds upper " + bound_text(*r_.upper));
  }

  std::string subject_;
  BoundsResult r_;
  std::optional<KnotRule> lower_by_;
  std::optional<KnotRule> upper_by_;
  bool changed_ = false;
};

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

}  // namespace

BoundsResult multiplicity_index_bounds(const KnotRecord& rec) {
  validate_record(rec);
  Interval m("knot '" + rec.name + "'");

  std::optional<bool> trivial = rec.is_trivial;
  std::optional<bool> torus = rec.is_torus_2p;
  std::optional<bool> sum_2bridge = rec.is_connected_sum_of_2bridge;
  if (rec.torus_p) {
    const bool nontrivial_torus = std::llabs(*rec.torus_p) != 1;
    torus = nontrivial_torus;
    if (!nontrivial_torus) trivial = true;
  }
  if (rec.braid_index == 1u || rec.bridge_index == 1u) trivial = true;

  if (rec.braid_index) m.cut_upper(*rec.braid_index, KnotRule::BraidIndexUpper);
  if (rec.bridge_index) m.cut_upper(2 * *rec.bridge_index - 1, KnotRule::BridgeIndexUpper);
  if (rec.trunk) m.raise_lower(ceil_div(*rec.trunk, 2), KnotRule::TrunkHalfLower);
  if (rec.is_montesinos == true) m.cut_upper(4, KnotRule::MontesinosAtMostFour);

  do {
    if (trivial == true) {
      m.cut_upper(1, KnotRule::TrivialIffIndexOne);
      m.set_fact(torus, false, KnotRule::TrivialIffIndexOne, "torus_2p");
    }
    if (trivial == false) m.exclude(1, KnotRule::TrivialIffIndexOne);
    if (m.result().upper == 1u) m.set_fact(trivial, true, KnotRule::TrivialIffIndexOne, "is_trivial");
    if (m.excludes(1)) m.set_fact(trivial, false, KnotRule::TrivialIffIndexOne, "is_trivial");

    if (torus == true) m.fix(2, KnotRule::Torus2pIffIndexTwo);
    if (torus == false) m.exclude(2, KnotRule::Torus2pIffIndexTwo);
    if (m.result().exact() == 2u) m.set_fact(torus, true, KnotRule::Torus2pIffIndexTwo, "torus_2p");
    if (m.excludes(2)) m.set_fact(torus, false, KnotRule::Torus2pIffIndexTwo, "torus_2p");

    if (rec.braid_index == 3u || sum_2bridge == true) m.fix(3, KnotRule::BraidThreeOr2BridgeSum);
    if (rec.braid_index && *rec.braid_index != 3 && sum_2bridge == false)
      m.exclude(3, KnotRule::BraidThreeOr2BridgeSum);
    if (m.excludes(3))
      m.set_fact(sum_2bridge, false, KnotRule::BraidThreeOr2BridgeSum,
                 "is_connected_sum_of_2bridge");
  } while (m.take_changed());
  return m.take();
}

BoundsResult pair_multiplicity_facts(const KnotRecord& k1, const KnotRecord& k2,
                                     const PairRelation& relation) {
  const BoundsResult b1 = multiplicity_index_bounds(k1);
  const BoundsResult b2 = multiplicity_index_bounds(k2);
  Interval m("pair '" + k1.name + "' over '" + k2.name + "'");

  auto triviality = [](const BoundsResult& b) -> std::optional<bool> {
    if (b.exact() == 1u) return true;
    if (b.lower >= 2) return false;
    return std::nullopt;
  };
  const std::optional<bool> k1_trivial = triviality(b1);
  std::optional<bool> k2_trivial = triviality(b2);
  if (relation.k2_nontrivial)
    m.set_fact(k2_trivial, !*relation.k2_nontrivial, KnotRule::TrivialIffIndexOne, "k2 trivial");

  std::optional<bool> equal = relation.equal_up_to_reversal;
  if (k1_trivial && k2_trivial && (*k1_trivial || *k2_trivial))
    m.set_fact(equal, *k1_trivial == *k2_trivial, KnotRule::EqualIffOne, "equal_up_to_reversal");
  if (equal == true && relation.k1_is_2cable_of_k2 == true && k2_trivial == false)
    m.conflict(KnotRule::EqualIffOne, KnotRule::TrivialIntoNontrivialOrCableIsTwo,
               "a knot is not a 2-cable of itself");

  if (equal == true) m.cut_upper(1, KnotRule::EqualIffOne);
  if (equal == false) m.raise_lower(2, KnotRule::EqualIffOne);

  if (k1_trivial == true && k2_trivial == false)
    m.fix(2, KnotRule::TrivialIntoNontrivialOrCableIsTwo);
  if (relation.k1_is_2cable_of_k2 == true && (k1_trivial == false || k2_trivial == false))
    m.fix(2, KnotRule::TrivialIntoNontrivialOrCableIsTwo);

  if (k2_trivial == true) {
    m.raise_lower(b1.lower, KnotRule::ReducesToMultiplicityIndex);
    if (b1.upper) m.cut_upper(*b1.upper, KnotRule::ReducesToMultiplicityIndex);
  }

  std::uint64_t t2 = k2.trunk.value_or(0);
  if (t2 == 0 && k2_trivial == true) t2 = 2;
  if (k1.trunk) {
    m.cut_upper(*k1.trunk, KnotRule::TrunkUpper);
    if (t2 > 0) m.raise_lower(ceil_div(*k1.trunk, t2), KnotRule::TrunkRatioLower);
    if (k2_trivial == false && equal == false && relation.k2_is_companion_of_k1 == false)
      m.fix(*k1.trunk, KnotRule::ExactTrunk);
  }
  return m.take();
}

UnknotDistanceBound distance_lower_bound_to_unknot(const KnotRecord& rec) {
  const BoundsResult b = multiplicity_index_bounds(rec);
  if (b.exact() == 1u) return {DistValue::from_product(MultValue::count(1)), "trivial"};
  if (b.lower < 2) return {std::nullopt, "insufficient data: non-triviality is not established"};
  if (!rec.trunk) return {std::nullopt, "insufficient data: trunk is unknown"};
  return {DistValue::from_product(MultValue::count(*rec.trunk)), "ok"};
}

}  // namespace multicat
