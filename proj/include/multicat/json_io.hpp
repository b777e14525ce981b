#pragma once

// JSON renderings shared by the CLI and the Python bindings. Numbers that
// might exceed 64 bits are emitted as decimal strings.

#include <json.hpp>

#include "multicat/category.hpp"
#include "multicat/fingroup.hpp"
#include "multicat/finset.hpp"
#include "multicat/graph_circle.hpp"
#include "multicat/knot_bounds.hpp"
#include "multicat/pidmodule.hpp"

namespace multicat {

using Json = nlohmann::ordered_json;

/// ln values rounded to 6 decimals so that output is byte-stable.
Json display_ln(double ln);

Json to_json(const MultValue& v);
Json to_json(Certificate c);
Json to_json(const DistValue& d);
Json to_json(const BigInt& n);
Json to_json(const FinMap& f);
Json to_json(const GroupHom& f);
Json to_json(const FgZModule& m);
Json to_json(const IntMatrix& m);
Json to_json(const ZModuleHom& f);
Json to_json(const CircleWitness& w);
Json to_json(const BoundsResult& b);
Json to_json(const KnotRecord& rec);
Json to_json(const Report& r);

/// value / certificate / witness triple.
template <class M>
Json to_json(const WitnessedMultiplicity<M>& w) {
  Json out;
  out["value"] = to_json(w.value);
  out["ln"] = display_ln(w.value.log_value());
  out["certificate"] = to_json(w.certificate);
  out["witness"] = w.witness ? to_json(*w.witness) : Json(nullptr);
  return out;
}

/// Fields as in KnotRecord; "torus_2p" is either an odd integer p or false.
/// Unknown keys and mistyped values raise DomainError naming the key.
KnotRecord knot_record_from_json(const Json& j);
PairRelation pair_relation_from_json(const Json& j);

}  // namespace multicat
